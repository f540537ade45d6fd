#include "hallbase/tube.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hallbase {

bool Word::tight() const {
    for (size_t r = 0; r < letters.size(); ++r) {
        if (letters[r].second < 1) return false;
        if (r && letters[r - 1].first == letters[r].first) return false;
    }
    return true;
}

std::string Word::str() const {
    std::string s;
    for (auto [j, e] : letters) {
        if (!s.empty()) s += ' ';
        s += std::to_string(j + 1);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

Word Word::parse(const std::string& s) {
    Word w;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        size_t caret = tok.find('^');
        try {
            size_t used = 0;
            int j = std::stoi(tok.substr(0, caret), &used);
            if (used != (caret == std::string::npos ? tok.size() : caret)) throw std::invalid_argument(tok);
            int e = 1;
            if (caret != std::string::npos) {
                e = std::stoi(tok.substr(caret + 1), &used);
                if (used != tok.size() - caret - 1) throw std::invalid_argument(tok);
            }
            if (j < 1 || e < 1) throw std::invalid_argument(tok);
            w.letters.emplace_back(j - 1, e);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad word letter '" + tok + "'");
        }
    }
    return w;
}

// ---------------------------------------------------------------- elements

TubeElement TubeElement::basis(const Multipartition& p, const RatFunc& c) {
    TubeElement x(p.rank);
    x.add_term(p, c);
    return x;
}

RatFunc TubeElement::coeff(const Multipartition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? RatFunc() : it->second;
}

void TubeElement::add_term(const Multipartition& p, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TubeElement& TubeElement::operator+=(const TubeElement& o) {
    for (auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
}

TubeElement& TubeElement::operator-=(const TubeElement& o) {
    for (auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
}

TubeElement& TubeElement::operator*=(const RatFunc& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, x] : terms_) x *= c;
    return *this;
}

std::string TubeElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [p, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")<" + p.str() + ">";
    }
    return s;
}

Multipartition simple_multiple(int rank, int vertex, int e) {
    Multipartition m = Multipartition::zero(rank);
    m.parts[vertex].assign(e, 1);
    return m;
}

Multipartition make_multipartition(int rank, std::vector<Partition> parts) {
    if (static_cast<int>(parts.size()) != rank) throw std::invalid_argument("multipartition needs one partition per vertex");
    Multipartition m;
    m.rank = rank;
    for (auto& p : parts) {
        for (int x : p)
            if (x < 1) throw std::invalid_argument("multipartition parts must be positive");
        std::sort(p.begin(), p.end(), std::greater<int>());
    }
    m.parts = std::move(parts);
    return m;
}

// ---------------------------------------------------------------- Hom over Q

namespace {

using IMat = std::vector<std::vector<int>>;

struct IntModel {
    std::vector<int> dims;
    std::vector<IMat> mats;  // arrow i -> i+1, shape dims[i+1] x dims[i]
};

IntModel int_model(const Multipartition& p) {
    int n = p.rank;
    IntModel m;
    m.dims.assign(n, 0);
    std::vector<std::vector<std::pair<int, int>>> chains;  // (vertex, slot) along each summand
    for (int i = 0; i < n; ++i)
        for (int l : p.parts[i]) {
            std::vector<std::pair<int, int>> ch;
            for (int k = 0; k < l; ++k) {
                int v = (i + k) % n;
                ch.emplace_back(v, m.dims[v]++);
            }
            chains.push_back(std::move(ch));
        }
    for (int a = 0; a < n; ++a) m.mats.emplace_back(m.dims[(a + 1) % n], std::vector<int>(m.dims[a], 0));
    for (auto& ch : chains)
        for (size_t k = 0; k + 1 < ch.size(); ++k) m.mats[ch[k].first][ch[k + 1].second][ch[k].second] = 1;
    return m;
}

int rank_q(std::vector<std::vector<Rat>> rows, int ncols) {
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
            if (rows[i][c] == 0) continue;
            Rat f = rows[i][c] / rows[r][c];
            for (int k = c; k < ncols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

int hom_dim_q(const IntModel& A, const IntModel& B) {
    int n = static_cast<int>(A.dims.size());
    std::vector<int> off(n + 1, 0);
    for (int i = 0; i < n; ++i) off[i + 1] = off[i] + A.dims[i] * B.dims[i];
    int unknowns = off[n];
    auto var = [&](int i, int r, int c) { return off[i] + r * A.dims[i] + c; };  // f_i[r][c], f_i: A_i -> B_i
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < n; ++i) {
        int t = (i + 1) % n;
        // f_t * A_i - B_i * f_i = 0, shape B_t x A_i
        for (int r = 0; r < B.dims[t]; ++r)
            for (int c = 0; c < A.dims[i]; ++c) {
                std::vector<Rat> row(unknowns);
                for (int k = 0; k < A.dims[t]; ++k)
                    if (A.mats[i][k][c]) row[var(t, r, k)] += A.mats[i][k][c];
                for (int k = 0; k < B.dims[i]; ++k)
                    if (B.mats[i][r][k]) row[var(i, k, c)] -= B.mats[i][r][k];
                rows.push_back(std::move(row));
            }
    }
    return unknowns - rank_q(std::move(rows), unknowns);
}

std::mutex g_mu;
std::map<std::pair<std::string, std::string>, int> g_hom;
std::map<std::pair<std::string, std::string>, Multipartition> g_ext;
std::map<std::string, Word> g_words;
std::map<std::string, TubeElement> g_pbw;

}  // namespace

int dim_hom(const Multipartition& mu, const Multipartition& lambda) {
    if (mu.rank != lambda.rank) throw std::invalid_argument("dim_hom: rank mismatch");
    auto key = std::make_pair(mu.serialize(), lambda.serialize());
    {
        std::lock_guard<std::mutex> lock(g_mu);
        auto it = g_hom.find(key);
        if (it != g_hom.end()) return it->second;
    }
    int d = hom_dim_q(int_model(mu), int_model(lambda));
    std::lock_guard<std::mutex> lock(g_mu);
    g_hom.emplace(key, d);
    return d;
}

int tube_end_dim(const Multipartition& p) { return dim_hom(p, p); }

bool aperiodic(const Multipartition& p) {
    int maxl = 0;
    for (auto& part : p.parts)
        for (int l : part) maxl = std::max(maxl, l);
    for (int l = 1; l <= maxl; ++l) {
        bool everywhere = true;
        for (auto& part : p.parts)
            if (std::find(part.begin(), part.end(), l) == part.end()) {
                everywhere = false;
                break;
            }
        if (everywhere) return false;
    }
    return true;
}

std::vector<Multipartition> aperiodic_of(int rank, const std::vector<int>& dims) {
    std::vector<Multipartition> out;
    for (auto& m : multipartitions_of(rank, dims))
        if (aperiodic(m)) out.push_back(m);
    // larger End (smaller orbit) first
    std::stable_sort(out.begin(), out.end(), [](const Multipartition& a, const Multipartition& b) {
        int ea = tube_end_dim(a), eb = tube_end_dim(b);
        if (ea != eb) return ea > eb;
        return a.serialize() < b.serialize();
    });
    return out;
}

// ---------------------------------------------------------------- generic extensions

Multipartition generic_ext(const Multipartition& a, const Multipartition& b) {
    if (a.rank != b.rank) throw std::invalid_argument("generic_ext: rank mismatch");
    if (a.empty()) return b;
    if (b.empty()) return a;
    auto key = std::make_pair(a.serialize(), b.serialize());
    {
        std::lock_guard<std::mutex> lock(g_mu);
        auto it = g_ext.find(key);
        if (it != g_ext.end()) return it->second;
    }
    TubeOracle& T = TubeOracle::get(a.rank, 2);
    std::vector<int> ld = a.dims(), bd = b.dims();
    for (size_t i = 0; i < ld.size(); ++i) ld[i] += bd[i];
    ClassRef ra = T.ref(a), rb = T.ref(b);
    const ClassTable& tab = T.table(ld);
    int best = -1, best_end = 0, ties = 0;
    for (int idx = 0; idx < static_cast<int>(tab.labels.size()); ++idx) {
        ClassRef rl{ld, idx};
        if (T.hall_number(rl, ra, rb) == 0) continue;
        int e = tube_end_dim(T.multipartition(rl));
        if (best < 0 || e < best_end) {
            best = idx;
            best_end = e;
            ties = 1;
        } else if (e == best_end) {
            ++ties;
        }
    }
    if (best < 0) throw std::runtime_error("generic_ext: no extension found");
    if (ties != 1) throw std::runtime_error("generic_ext: minimal extension not unique for " + a.str() + ", " + b.str());
    Multipartition r = T.multipartition({ld, best});
    std::lock_guard<std::mutex> lock(g_mu);
    g_ext.emplace(key, r);
    return r;
}

Multipartition wp(int rank, const Word& w) {
    Multipartition acc = Multipartition::zero(rank);
    for (auto [j, e] : w.letters) {
        if (j < 0 || j >= rank) throw std::invalid_argument("word letter outside the quiver");
        acc = generic_ext(acc, simple_multiple(rank, j, e));
    }
    return acc;
}

// ---------------------------------------------------------------- filtrations

int filtration_degree_bound(const Multipartition& lambda, const Word& w) {
    std::vector<int> d = lambda.dims();
    int b = 0;
    for (auto [j, e] : w.letters) {
        if (d[j] < e) return 0;
        b += e * (d[j] - e);
        d[j] -= e;
    }
    return b;
}

namespace {

Int count_filtrations(TubeOracle& T, const ClassRef& L, const Word& w, size_t r, std::map<std::pair<ClassRef, size_t>, Int>& memo) {
    int total = 0;
    for (int x : L.dims) total += x;
    if (r == w.letters.size()) return total == 0 ? Int(1) : Int(0);
    auto key = std::make_pair(L, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto [j, e] = w.letters[r];
    std::vector<int> sub = L.dims;
    sub[j] -= e;
    Int c = 0;
    if (sub[j] >= 0) {
        FFRep Lr = T.rep(L);
        for_each_submodule(T.quiver(), T.field(), Lr, sub, [&](const SubBasis& W) {
            FFRep s, qt;
            sub_and_quotient(T.quiver(), T.field(), Lr, W, s, qt);
            c += count_filtrations(T, T.identify(s), w, r + 1, memo);
        });
    }
    memo.emplace(key, c);
    return c;
}

}  // namespace

QPoly filtration_polynomial(const Multipartition& lambda, const Word& w) {
    std::vector<int> d = lambda.dims(), s(lambda.rank, 0);
    for (auto [j, e] : w.letters) s[j] += e;
    if (d != s) return QPoly();
    int bound = filtration_degree_bound(lambda, w);
    return interpolate_counts(
        [&](int q) {
            TubeOracle& T = TubeOracle::get(lambda.rank, q);
            std::map<std::pair<ClassRef, size_t>, Int> memo;
            return Rat(count_filtrations(T, T.ref(lambda), w, 0, memo));
        },
        bound, 1);
}

// ---------------------------------------------------------------- distinguished words

namespace {

constexpr int kWordBudget = 20000;

// all ways to pick e entries (as a multiset of lengths) from a descending partition, longest first
void length_choices(const Partition& tops, int e, size_t from, Partition& cur, std::vector<Partition>& out) {
    if (static_cast<int>(cur.size()) == e) {
        out.push_back(cur);
        return;
    }
    for (size_t k = from; k < tops.size(); ++k) {
        if (k > from && tops[k] == tops[k - 1]) continue;
        cur.push_back(tops[k]);
        length_choices(tops, e, k + 1, cur, out);
        cur.pop_back();
    }
}

Multipartition peel(const Multipartition& p, int j, const Partition& lengths) {
    int n = p.rank;
    std::vector<Partition> parts = p.parts;
    for (int l : lengths) {
        auto it = std::find(parts[j].begin(), parts[j].end(), l);
        parts[j].erase(it);
        if (l > 1) parts[(j + 1) % n].push_back(l - 1);
    }
    return make_multipartition(n, std::move(parts));
}

bool search_word(const Multipartition& target, const Multipartition& cur, int prev, Word& acc, int& budget) {
    if (cur.empty()) return filtration_polynomial(target, acc).is_one();
    int n = cur.rank;
    for (int j = 0; j < n; ++j) {
        if (j == prev) continue;
        const Partition& tops = cur.parts[j];
        for (int e = static_cast<int>(tops.size()); e >= 1; --e) {
            std::vector<Partition> choices;
            Partition tmp;
            length_choices(tops, e, 0, tmp, choices);
            for (auto& ls : choices) {
                Multipartition rest = peel(cur, j, ls);
                if (!aperiodic(rest)) continue;
                if (generic_ext(simple_multiple(n, j, e), rest) != cur) continue;
                if (--budget < 0) throw std::runtime_error("distinguished word search exhausted for " + target.str());
                acc.letters.emplace_back(j, e);
                if (search_word(target, rest, j, acc, budget)) return true;
                acc.letters.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

Word distinguished_word(const Multipartition& pi) {
    if (!aperiodic(pi)) throw std::invalid_argument("distinguished_word: " + pi.str() + " is not aperiodic");
    std::string key = pi.serialize();
    {
        std::lock_guard<std::mutex> lock(g_mu);
        auto it = g_words.find(key);
        if (it != g_words.end()) return it->second;
    }
    Word w;
    int budget = kWordBudget;
    if (!search_word(pi, pi, -1, w, budget))
        throw std::runtime_error("no distinguished word found for " + pi.str());
    std::lock_guard<std::mutex> lock(g_mu);
    return g_words.emplace(key, w).first->second;
}

// ---------------------------------------------------------------- monomials

std::map<Multipartition, QPoly, MultipartitionLess> right_simple_hall(const Multipartition& M, int j) {
    int n = M.rank;
    std::map<Multipartition, QPoly, MultipartitionLess> out;
    // lengthen a summand with socle j-1 to length l, or add S_j (l = 1)
    std::vector<int> lengths = {1};
    for (int l = 2;; ++l) {
        bool any = false;
        for (int i = 0; i < n; ++i)
            for (int x : M.parts[i])
                if (x >= l - 1) any = true;
        if (!any) break;
        int top = ((j - l + 1) % n + n) % n;
        if (std::find(M.parts[top].begin(), M.parts[top].end(), l - 1) != M.parts[top].end()) lengths.push_back(l);
    }
    for (int l : lengths) {
        int top = ((j - l + 1) % n + n) % n;
        std::vector<Partition> parts = M.parts;
        if (l > 1) parts[top].erase(std::find(parts[top].begin(), parts[top].end(), l - 1));
        parts[top].push_back(l);
        Multipartition L = make_multipartition(n, std::move(parts));
        // m_k = summands of L with socle j and length k
        auto mult = [&](int k) {
            int t = ((j - k + 1) % n + n) % n;
            return static_cast<int>(std::count(L.parts[t].begin(), L.parts[t].end(), k));
        };
        int longer = 0, maxl = 0;
        for (auto& part : L.parts)
            for (int x : part) maxl = std::max(maxl, x);
        for (int k = l + 1; k <= maxl; ++k) longer += mult(k);
        QPoly g;
        for (int s = 0; s < mult(l); ++s) g += QPoly::monomial(longer + s);
        out.emplace(std::move(L), g);
    }
    return out;
}

TubeElement times_simple(const TubeElement& x, int j) {
    int n = x.rank();
    Quiver Q = Quiver::cyclic_quiver(n);
    std::vector<int> ej(n, 0);
    ej[j] = 1;
    TubeElement r(n);
    for (auto& [M, c] : x.terms()) {
        int tw = Q.euler(M.dims(), ej);
        int em = tube_end_dim(M);
        for (auto& [L, g] : right_simple_hall(M, j)) {
            // <M> * <S_j> = v^{<M,S_j>} v^{-dim M + End M} u_M u_{S_j}, u_L = v^{dim L - End L} <L>
            Laurent k = q_to_v(g).shift(tw + 1 + em - tube_end_dim(L));
            r.add_term(L, c * RatFunc(k));
        }
    }
    return r;
}

TubeElement monomial_m(int rank, const Word& w) {
    TubeElement x = TubeElement::basis(Multipartition::zero(rank));
    for (auto [j, e] : w.letters) {
        if (j < 0 || j >= rank) throw std::invalid_argument("word letter outside the quiver");
        for (int k = 0; k < e; ++k) x = times_simple(x, j);
        x *= RatFunc(qfactorial(e)).inverse();
    }
    return x;
}

TubeElement pbw_E(const Multipartition& pi) {
    std::string key = pi.serialize();
    {
        std::lock_guard<std::mutex> lock(g_mu);
        auto it = g_pbw.find(key);
        if (it != g_pbw.end()) return it->second;
    }
    TubeElement m = monomial_m(pi.rank, distinguished_word(pi));
    TubeElement e = m;
    for (auto& lam : aperiodic_of(pi.rank, pi.dims())) {
        if (lam == pi) continue;
        RatFunc c = m.coeff(lam);
        if (c.is_zero()) continue;
        if (!deg_leq(lam, pi))
            throw InvariantError("monomial for " + pi.str() + " has a term at " + lam.str() + " outside the order");
        TubeElement sub = pbw_E(lam);
        sub *= c;
        e -= sub;
    }
    for (auto& [lam, c] : e.terms())
        if (aperiodic(lam) && !(lam == pi ? c.is_one() : c.is_zero()))
            throw InvariantError("PBW element for " + pi.str() + " keeps an aperiodic term at " + lam.str());
    std::lock_guard<std::mutex> lock(g_mu);
    return g_pbw.emplace(key, e).first->second;
}

// ---------------------------------------------------------------- order

bool deg_leq_with_cutoff(const Multipartition& mu, const Multipartition& lambda, int max_len) {
    if (mu.rank != lambda.rank || mu.dims() != lambda.dims())
        throw std::invalid_argument("deg_leq: dimension vectors differ");
    int n = mu.rank;
    for (int i = 0; i < n; ++i)
        for (int l = 1; l <= max_len; ++l) {
            Multipartition s = Multipartition::zero(n);
            s.parts[i] = {l};
            if (dim_hom(s, mu) < dim_hom(s, lambda)) return false;
        }
    return true;
}

bool deg_leq(const Multipartition& mu, const Multipartition& lambda) {
    return deg_leq_with_cutoff(mu, lambda, mu.total());
}

bool deg_leq_dual(const Multipartition& mu, const Multipartition& lambda, int max_len) {
    if (mu.rank != lambda.rank || mu.dims() != lambda.dims())
        throw std::invalid_argument("deg_leq: dimension vectors differ");
    int n = mu.rank;
    for (int i = 0; i < n; ++i)
        for (int l = 1; l <= max_len; ++l) {
            Multipartition s = Multipartition::zero(n);
            s.parts[i] = {l};
            if (dim_hom(mu, s) < dim_hom(lambda, s)) return false;
        }
    return true;
}

// ---------------------------------------------------------------- canonical family

TubeCanonical tube_canonical(int rank, const std::vector<int>& dims) {
    if (rank < 2) throw std::invalid_argument("tube rank must be at least 2");
    if (static_cast<int>(dims.size()) != rank) throw std::invalid_argument("dimension vector length must equal the rank");
    TubeCanonical t;
    t.rank = rank;
    t.dims = dims;
    t.indices = aperiodic_of(rank, dims);
    size_t n = t.indices.size();
    std::vector<std::string> labels;
    for (auto& p : t.indices) {
        labels.push_back(p.serialize());
        t.words.push_back(distinguished_word(p));
        t.pbw.push_back(pbw_E(p));
    }
    Matrix H(n, std::vector<RatFunc>(n));
    for (size_t i = 0; i < n; ++i) {
        TubeElement m = monomial_m(rank, t.words[i]);
        TubeElement rest = m;
        for (size_t k = 0; k < n; ++k) {
            H[i][k] = m.coeff(t.indices[k]);
            TubeElement s = t.pbw[k];
            s *= H[i][k];
            rest -= s;
        }
        if (!rest.is_zero()) throw InvariantError("monomial for " + labels[i] + " is not in the span of the PBW elements");
    }
    const auto& idx = t.indices;
    Below below = [&idx](int a, int b) { return a != b && deg_leq(idx[a], idx[b]); };
    t.data = solve_family(labels, below, H);
    for (size_t i = 0; i < n; ++i) {
        TubeElement e(rank);
        for (size_t k = 0; k < n; ++k) {
            TubeElement s = t.pbw[k];
            s *= t.data.Zeta[i][k];
            e += s;
        }
        t.elements.push_back(std::move(e));
    }
    return t;
}

}  // namespace hallbase
