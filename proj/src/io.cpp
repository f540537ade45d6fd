#include "hallbase/io.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace hallbase {

Json to_json(const Laurent& p) {
    Json j = Json::object();
    for (auto& [e, c] : p.terms()) j[std::to_string(e)] = c.get_str();
    return j;
}

Json to_json(const RatFunc& f) {
    Json j = Json::object();
    j["num"] = to_json(f.num());
    j["den"] = to_json(f.den());
    return j;
}

Json to_json(const PBWIndex& c) { return Json::parse(c.serialize()); }

Json to_json(const AlgebraElement& x) {
    Json terms = Json::array();
    for (auto& [c, f] : x.sorted_terms()) {
        Json t = Json::object();
        t["index"] = to_json(c);
        t["coeff"] = to_json(f);
        terms.push_back(std::move(t));
    }
    Json j = Json::object();
    j["terms"] = std::move(terms);
    return j;
}

Json to_json(const Multipartition& m) { return Json::parse(m.serialize()); }

Json to_json(const TubeElement& x) {
    Json terms = Json::array();
    for (auto& [p, f] : x.terms()) {
        Json t = Json::object();
        t["index"] = to_json(p);
        t["coeff"] = to_json(f);
        terms.push_back(std::move(t));
    }
    Json j = Json::object();
    j["terms"] = std::move(terms);
    return j;
}

Json to_json(const Matrix& m) {
    Json j = Json::array();
    for (auto& row : m) {
        Json r = Json::array();
        for (auto& x : row) r.push_back(to_json(x));
        j.push_back(std::move(r));
    }
    return j;
}

Laurent laurent_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("Laurent polynomial must be a JSON object");
    Laurent p;
    for (auto& [k, v] : j.items()) {
        size_t used = 0;
        int e = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument("bad exponent key '" + k + "'");
        Rat c;
        if (c.set_str(v.get<std::string>(), 10) != 0) throw std::invalid_argument("bad coefficient '" + v.dump() + "'");
        c.canonicalize();
        p += Laurent::monomial(e, c);
    }
    return p;
}

RatFunc ratfunc_from_json(const Json& j) {
    return RatFunc(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

PBWIndex index_from_json(const Json& j) {
    PBWIndex c;
    auto read_map = [](const Json& m, std::map<int, int>& out) {
        for (auto& [k, v] : m.items()) {
            int n = std::stoi(k), e = v.get<int>();
            if (n < 0 || e < 1) throw std::invalid_argument("bad real-root multiplicity");
            out[n] = e;
        }
    };
    read_map(j.at("prep"), c.prep);
    read_map(j.at("prei"), c.prei);
    for (auto& x : j.at("im")) c.im.push_back(x.get<int>());
    for (size_t i = 0; i < c.im.size(); ++i)
        if (c.im[i] < 1 || (i && c.im[i] > c.im[i - 1])) throw std::invalid_argument("imaginary part must be a partition");
    return c;
}

AlgebraElement element_from_json(const Json& j) {
    AlgebraElement x;
    for (auto& t : j.at("terms")) x.add_term(index_from_json(t.at("index")), ratfunc_from_json(t.at("coeff")));
    return x;
}

Multipartition multipartition_from_json(const Json& j) {
    int rank = j.at("rank").get<int>();
    std::vector<Partition> parts;
    for (auto& p : j.at("parts")) {
        parts.push_back(p.get<Partition>());
        if (!std::is_sorted(parts.back().begin(), parts.back().end(), std::greater<int>()))
            throw std::invalid_argument("multipartition parts must be weakly decreasing");
    }
    return make_multipartition(rank, std::move(parts));
}

TubeElement tube_element_from_json(const Json& j) {
    const Json& terms = j.at("terms");
    int rank = terms.empty() ? 2 : terms.at(0).at("index").at("rank").get<int>();
    TubeElement x(rank);
    for (auto& t : terms) x.add_term(multipartition_from_json(t.at("index")), ratfunc_from_json(t.at("coeff")));
    return x;
}

// ---------------------------------------------------------------- shorthand

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    void skip() {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    int number() {
        size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) throw ParseError("expected a number", i);
        if (i - st > 6) throw ParseError("number too large", st);
        return std::stoi(s.substr(st, i - st));
    }
    void expect(char c) {
        if (i >= s.size() || s[i] != c) throw ParseError(std::string("expected '") + c + "'", i);
        ++i;
    }
    int power() {
        if (i < s.size() && s[i] == '^') {
            ++i;
            int k = number();
            if (k < 1) throw ParseError("exponent must be positive", i);
            return k;
        }
        return 1;
    }
};

}  // namespace

AlgebraElement parse_shorthand(const std::string& s) {
    Lexer lx{s};
    AlgebraElement acc = AlgebraElement::one();
    bool any = false;
    while (!lx.done()) {
        size_t start = lx.i;
        char c = s[lx.i++];
        PBWIndex idx;
        if (c == 'P' || c == 'I') {
            int n = lx.number();
            int k = lx.power();
            (c == 'P' ? idx.prep : idx.prei)[n] = k;
        } else if (c == 'D') {
            lx.expect('(');
            while (true) {
                idx.im.push_back(lx.number());
                if (lx.i < s.size() && s[lx.i] == ',') {
                    ++lx.i;
                    continue;
                }
                break;
            }
            lx.expect(')');
            for (size_t t = 0; t < idx.im.size(); ++t)
                if (idx.im[t] < 1) throw ParseError("imaginary parts must be positive", start);
            std::sort(idx.im.begin(), idx.im.end(), std::greater<int>());
        } else if (c == '1') {
            if (lx.i < s.size() && std::isdigit(static_cast<unsigned char>(s[lx.i]))) throw ParseError("unexpected number", start);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        if (lx.i < s.size() && !std::isspace(static_cast<unsigned char>(s[lx.i])) && s[lx.i] != '*')
            throw ParseError("unexpected character '" + std::string(1, s[lx.i]) + "'", lx.i);
        acc = multiply(acc, basis_element(idx));
        any = true;
    }
    if (!any) throw ParseError("empty operand", 0);
    return acc;
}

AlgebraElement parse_operand(const std::string& s) {
    size_t k = s.find_first_not_of(" \t\n");
    if (k != std::string::npos && s[k] == '{') {
        Json j;
        try {
            j = Json::parse(s);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("invalid JSON", e.byte);
        }
        return element_from_json(j);
    }
    return parse_shorthand(s);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    size_t i = 0;
    while (i <= s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        std::string tok = s.substr(i, j - i);
        size_t used = 0;
        int x = 0;
        try {
            x = std::stoi(tok, &used);
        } catch (const std::logic_error&) {
            throw ParseError("expected an integer", i);
        }
        if (used != tok.size()) throw ParseError("expected an integer", i + used);
        out.push_back(x);
        i = j + 1;
    }
    return out;
}

}  // namespace hallbase
