#include "hallbase/straighten.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace hallbase {

bool IndexLess::operator()(const PBWIndex& a, const PBWIndex& b) const {
    return std::tie(a.prep, a.im, a.prei) < std::tie(b.prep, b.im, b.prei);
}

AlgebraElement AlgebraElement::one() { return basis(PBWIndex{}); }

AlgebraElement AlgebraElement::basis(const PBWIndex& c, const RatFunc& coeff) {
    AlgebraElement e;
    e.add_term(c, coeff);
    return e;
}

RatFunc AlgebraElement::coeff(const PBWIndex& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? RatFunc() : it->second;
}

void AlgebraElement::add_term(const PBWIndex& c, const RatFunc& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = terms_.emplace(c, f);
    if (!fresh) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (auto& [c, f] : o.terms_) add_term(c, f);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (auto& [c, f] : o.terms_) add_term(c, -f);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const RatFunc& f) {
    if (f.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [c, g] : terms_) g *= f;
    return *this;
}

DimVector AlgebraElement::weight() const {
    if (terms_.empty()) return {};
    DimVector w = hallbase::weight(terms_.begin()->first);
    for (auto& [c, f] : terms_)
        if (!(hallbase::weight(c) == w)) throw std::logic_error("inhomogeneous element");
    return w;
}

std::vector<std::pair<PBWIndex, RatFunc>> AlgebraElement::sorted_terms() const {
    std::vector<std::pair<std::string, std::pair<PBWIndex, RatFunc>>> v;
    for (auto& [c, f] : terms_) v.push_back({c.serialize(), {c, f}});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<PBWIndex, RatFunc>> out;
    for (auto& x : v) out.push_back(std::move(x.second));
    return out;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [c, f] : sorted_terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + f.str() + ")*[" + c.shorthand() + "]";
    }
    return s;
}

Laurent prep_swap_coeff(int r, int h) {
    if (r < 1 || h < 0 || 2 * h > r) throw std::invalid_argument("prep_swap_coeff: bad (r,h)");
    if (h == 0) return Laurent::monomial(2);
    if (2 * h == r) return Laurent::monomial(r) - Laurent::monomial(r - 2);
    return Laurent::monomial(2 * h + 2) - Laurent::monomial(2 * h - 2);
}

namespace {

using LMap = std::map<PBWIndex, Laurent, IndexLess>;

void acc(LMap& m, const PBWIndex& c, const Laurent& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = m.emplace(c, f);
    if (!fresh) {
        it->second += f;
        if (it->second.is_zero()) m.erase(it);
    }
}

// position in the normal order
std::tuple<int, int> pos(const Letter& z) {
    switch (z.kind) {
        case Root::Prep: return {0, z.n};
        case Root::Imag: return {1, 0};
        default: return {2, -z.n};
    }
}

PBWIndex index_of(const Letter& z) {
    PBWIndex c;
    if (z.kind == Root::Prep) c.prep[z.n] = 1;
    else if (z.kind == Root::Prei) c.prei[z.n] = 1;
    else c.im = {z.n};
    return c;
}

PBWIndex pair_index(const Letter& a, const Letter& b) {
    PBWIndex c = index_of(a);
    if (b.kind == Root::Prep) c.prep[b.n] += 1;
    else if (b.kind == Root::Prei) c.prei[b.n] += 1;
    else {
        c.im.push_back(b.n);
        std::sort(c.im.rbegin(), c.im.rend());
    }
    return c;
}

void insert_part(Partition& p, int k) {
    p.push_back(k);
    std::sort(p.rbegin(), p.rend());
}

void remove_part(Partition& p, int k) {
    auto it = std::find(p.begin(), p.end(), k);
    p.erase(it);
}

class Engine {
public:
    static Engine& get() {
        static Engine e;
        return e;
    }

    LMap times_letter(const PBWIndex& c, const Letter& z) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto key = std::make_pair(c, z);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        if (!active_.insert(key).second) throw std::logic_error("straightening cycle at " + c.shorthand());
        LMap r = compute(c, z);
        active_.erase(key);
        memo_.emplace(key, r);
        return r;
    }

    LMap times_map(const LMap& x, const Letter& z) {
        LMap out;
        for (auto& [c, f] : x)
            for (auto& [d, g] : times_letter(c, z)) acc(out, d, f * g);
        return out;
    }

    LMap times_index(const LMap& x, const PBWIndex& d) {
        LMap cur = x;
        auto divided = [&](Root::Kind kind, int n, int k) {
            for (int i = 0; i < k; ++i) cur = times_map(cur, {kind, n});
            if (k > 1) {
                Laurent f = qfactorial(k);
                for (auto& [c, g] : cur) g = exact_div(g, f);
            }
        };
        for (auto [n, k] : d.prep) divided(Root::Prep, n, k);
        for (int w : d.im) cur = times_map(cur, {Root::Imag, w});
        for (auto it = d.prei.rbegin(); it != d.prei.rend(); ++it) divided(Root::Prei, it->first, it->second);
        return cur;
    }

    LMap times_expansion(const PBWIndex& c, const LMap& e) {
        LMap out;
        LMap base{{c, Laurent(1)}};
        for (auto& [d, f] : e)
            for (auto& [x, g] : times_index(base, d)) acc(out, x, f * g);
        return out;
    }

    const LMap& tilde(int n) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto it = tilde_.find(n);
        if (it != tilde_.end()) return it->second;
        LMap r;
        PBWIndex en;
        en.im = {n};
        acc(r, en, qint(n));
        for (int s = 1; s < n; ++s) {
            LMap t = tilde(s);
            for (auto& [c, f] : t) {
                PBWIndex d = c;
                insert_part(d.im, n - s);
                acc(r, d, -(f * Laurent::monomial(s - n)));
            }
        }
        return tilde_.emplace(n, std::move(r)).first->second;
    }

    // x * z with x > z in the normal order
    LMap rule(const Letter& x, const Letter& z) {
        LMap r;
        if (x.kind == Root::Prep && z.kind == Root::Prep) {
            int n = x.n, m = z.n, rr = n - m;
            for (int h = 0; 2 * h <= rr; ++h) {
                Letter a{Root::Prep, m + h}, b{Root::Prep, n - h};
                Laurent f = prep_swap_coeff(rr, h);
                if (a == b) f *= qint(2);
                acc(r, pair_index(a, b), f);
            }
        } else if (x.kind == Root::Prei && z.kind == Root::Prei) {
            int m = x.n, n = z.n, rr = n - m;
            for (int h = 0; 2 * h <= rr; ++h) {
                Letter a{Root::Prei, n - h}, b{Root::Prei, m + h};
                Laurent f = prep_swap_coeff(rr, h);
                if (a == b) f *= qint(2);
                acc(r, pair_index(a, b), f);
            }
        } else if (x.kind == Root::Imag && z.kind == Root::Prep) {
            int k = x.n, m = z.n;
            for (int j = 0; j <= k; ++j) {
                Letter p{Root::Prep, m + k - j};
                PBWIndex c = index_of(p);
                if (j > 0) c.im = {j};
                acc(r, c, qint(k + 1 - j));
            }
        } else if (x.kind == Root::Prei && z.kind == Root::Imag) {
            int m = x.n, k = z.n;
            for (int j = 0; j <= k; ++j) {
                Letter p{Root::Prei, m + k - j};
                PBWIndex c = index_of(p);
                if (j > 0) c.im = {j};
                acc(r, c, qint(k + 1 - j));
            }
        } else if (x.kind == Root::Prei && z.kind == Root::Prep) {
            acc(r, pair_index(z, x), Laurent::monomial(-2));
            for (auto& [c, f] : tilde(x.n + z.n + 1)) acc(r, c, f);
        } else {
            throw std::logic_error("rule: pair already ordered");
        }
        return r;
    }

    size_t size() {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        return memo_.size();
    }

private:
    LMap compute(const PBWIndex& c, const Letter& z) {
        LMap out;
        if (c.empty()) {
            acc(out, index_of(z), Laurent(1));
            return out;
        }
        if (!c.prei.empty() || c.im.empty()) {
            Letter last = !c.prei.empty() ? Letter{Root::Prei, c.prei.begin()->first}
                                          : Letter{Root::Prep, c.prep.rbegin()->first};
            int b = !c.prei.empty() ? c.prei.begin()->second : c.prep.rbegin()->second;
            if (z == last) {
                PBWIndex d = c;
                (z.kind == Root::Prep ? d.prep : d.prei)[z.n] += 1;
                acc(out, d, qint(b + 1));
                return out;
            }
            if (pos(last) < pos(z)) {
                PBWIndex d = c;
                if (z.kind == Root::Imag) insert_part(d.im, z.n);
                else (z.kind == Root::Prep ? d.prep : d.prei)[z.n] += 1;
                acc(out, d, Laurent(1));
                return out;
            }
            PBWIndex rest = c;
            auto& blk = last.kind == Root::Prep ? rest.prep : rest.prei;
            if (--blk[last.n] == 0) blk.erase(last.n);
            out = times_expansion(rest, rule(last, z));
            if (b > 1) {
                Laurent f = qint(b);
                for (auto& [d, g] : out) g = exact_div(g, f);
            }
            return out;
        }
        // last block imaginary
        if (z.kind != Root::Prep) {
            PBWIndex d = c;
            if (z.kind == Root::Imag) insert_part(d.im, z.n);
            else d.prei[z.n] += 1;
            acc(out, d, Laurent(1));
            return out;
        }
        int k = c.im.back();
        PBWIndex rest = c;
        remove_part(rest.im, k);
        return times_expansion(rest, rule({Root::Imag, k}, z));
    }

    struct KeyLess {
        bool operator()(const std::pair<PBWIndex, Letter>& a, const std::pair<PBWIndex, Letter>& b) const {
            if (IndexLess{}(a.first, b.first)) return true;
            if (IndexLess{}(b.first, a.first)) return false;
            return a.second < b.second;
        }
    };
    std::recursive_mutex mu_;
    std::map<std::pair<PBWIndex, Letter>, LMap, KeyLess> memo_;
    std::set<std::pair<PBWIndex, Letter>, KeyLess> active_;
    std::map<int, LMap> tilde_;
};

AlgebraElement to_element(const LMap& m) {
    AlgebraElement e;
    for (auto& [c, f] : m) e.add_term(c, RatFunc(f));
    return e;
}

}  // namespace

AlgebraElement basis_element(const PBWIndex& c) { return AlgebraElement::basis(c); }

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
    Engine& E = Engine::get();
    AlgebraElement out;
    for (auto& [d, g] : y.terms()) {
        for (auto& [c, f] : x.terms()) {
            LMap prod = E.times_index(LMap{{c, Laurent(1)}}, d);
            for (auto& [e, h] : prod) out.add_term(e, f * g * RatFunc(h));
        }
    }
    return out;
}

AlgebraElement letter_product(const Letter& x, const Letter& y) {
    return multiply(basis_element(index_of(x)), basis_element(index_of(y)));
}

AlgebraElement e_tilde(int n) {
    if (n < 1) throw std::invalid_argument("e_tilde: n >= 1");
    return to_element(Engine::get().tilde(n));
}

AlgebraElement monomial_E(const DimVector& d) {
    if (!d.nonneg()) throw std::invalid_argument("monomial_E: negative dimension");
    PBWIndex c;
    if (d.d2 > 0) c.prei[0] = d.d2;
    AlgebraElement x = basis_element(c);
    if (d.d1 == 0) return x;
    PBWIndex e;
    e.prep[0] = d.d1;
    return multiply(x, basis_element(e));
}

AlgebraElement monomial_of_index(const PBWIndex& c) {
    AlgebraElement x = AlgebraElement::one();
    for (auto [n, k] : c.prep) x = multiply(x, monomial_E(DimVector{n + 1, n} * k));
    for (int w : c.im) x = multiply(x, monomial_E({w, w}));
    for (auto it = c.prei.rbegin(); it != c.prei.rend(); ++it)
        x = multiply(x, monomial_E(DimVector{it->first, it->first + 1} * it->second));
    return x;
}

size_t straighten_cache_size() { return Engine::get().size(); }

}  // namespace hallbase
