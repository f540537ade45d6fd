#include "hallbase/symfunc.hpp"

#include "hallbase/oracle.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hallbase {

namespace {

Partition sorted_desc(Partition p) {
    std::sort(p.begin(), p.end(), std::greater<int>());
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

void add_h(HExpr& x, const Partition& p, const Rat& c) {
    if (c == 0) return;
    Rat& slot = x[p];
    slot += c;
    if (slot == 0) x.erase(p);
}

Partition conjugate(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    for (int i = 1; i <= p[0]; ++i) {
        int k = 0;
        for (int x : p)
            if (x >= i) ++k;
        c.push_back(k);
    }
    return c;
}

int part_at(const Partition& p, size_t i) { return i < p.size() ? p[i] : 0; }

QPoly gl_poly(int k) {
    QPoly r(1);
    for (int i = 0; i < k; ++i) r *= QPoly::monomial(k) - QPoly::monomial(i);
    return r;
}

std::mutex g_mu;

}  // namespace

// ---------------------------------------------------------------- symmetric functions

HExpr h_mul(const HExpr& a, const HExpr& b) {
    HExpr r;
    for (auto& [p, x] : a)
        for (auto& [q, y] : b) {
            Partition s = p;
            s.insert(s.end(), q.begin(), q.end());
            add_h(r, sorted_desc(s), x * y);
        }
    return r;
}

HExpr schur_in_h(const Partition& lambda) {
    Partition lam = sorted_desc(lambda);
    size_t l = lam.size();
    HExpr r;
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int sign = 1;
        for (size_t i = 0; i < l; ++i)
            for (size_t j = i + 1; j < l; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Partition term;
        bool zero = false;
        for (size_t i = 0; i < l; ++i) {
            int k = lam[i] - static_cast<int>(i) + perm[i];
            if (k < 0) {
                zero = true;
                break;
            }
            if (k > 0) term.push_back(k);
        }
        if (!zero) add_h(r, sorted_desc(term), Rat(sign));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return r;
}

HExpr newton_p_in_h(int n) {
    if (n < 1) throw std::invalid_argument("power sum degree must be positive");
    static std::map<int, HExpr> memo;
    std::lock_guard<std::mutex> lock(g_mu);
    std::vector<HExpr> p(n + 1);
    for (int m = 1; m <= n; ++m) {
        auto it = memo.find(m);
        if (it != memo.end()) {
            p[m] = it->second;
            continue;
        }
        HExpr x{{Partition{m}, Rat(m)}};
        for (int k = 1; k < m; ++k)
            for (auto& [part, c] : h_mul({{Partition{k}, Rat(1)}}, p[m - k])) add_h(x, part, -c);
        p[m] = memo[m] = x;
    }
    return p[n];
}

HExpr power_sum_in_h(const Partition& w) {
    HExpr r{{Partition{}, Rat(1)}};
    for (int k : w) r = h_mul(r, newton_p_in_h(k));
    return r;
}

Rat z_value(const Partition& w) {
    std::map<int, int> mult;
    for (int x : w) ++mult[x];
    Int z = 1;
    for (auto [i, r] : mult) {
        for (int k = 0; k < r; ++k) z *= i;
        for (int k = 2; k <= r; ++k) z *= k;
    }
    return Rat(z);
}

std::map<Partition, Rat> kostka_column(const Partition& mu) {
    int n = partition_size(mu);
    auto parts = partitions_of(n);
    size_t m = parts.size();
    std::map<Partition, size_t> pos;
    for (size_t i = 0; i < m; ++i) pos[parts[i]] = i;
    // A[lambda][nu]: coefficient of h_nu in s_lambda
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m));
    for (size_t i = 0; i < m; ++i)
        for (auto& [nu, c] : schur_in_h(parts[i])) A[i][pos.at(nu)] = c;
    // solve sum_lambda K_lambda A[lambda][nu] = delta_{nu, mu}
    std::vector<std::vector<Rat>> M(m, std::vector<Rat>(m + 1));
    for (size_t nu = 0; nu < m; ++nu) {
        for (size_t l = 0; l < m; ++l) M[nu][l] = A[l][nu];
        M[nu][m] = parts[nu] == sorted_desc(mu) ? 1 : 0;
    }
    for (size_t c = 0; c < m; ++c) {
        size_t piv = c;
        while (piv < m && M[piv][c] == 0) ++piv;
        if (piv == m) throw std::runtime_error("Jacobi-Trudi matrix is singular");
        std::swap(M[c], M[piv]);
        for (size_t r = 0; r < m; ++r) {
            if (r == c || M[r][c] == 0) continue;
            Rat f = M[r][c] / M[c][c];
            for (size_t k = c; k <= m; ++k) M[r][k] -= f * M[c][k];
        }
    }
    std::map<Partition, Rat> out;
    for (size_t l = 0; l < m; ++l) {
        Rat k = M[l][m] / M[l][l];
        if (k != 0) out[parts[l]] = k;
    }
    return out;
}

AlgebraElement h_image(const HExpr& x) {
    AlgebraElement r;
    for (auto& [p, c] : x) {
        PBWIndex idx;
        idx.im = p;
        r.add_term(idx, RatFunc(Laurent::monomial(0, c)));
    }
    return r;
}

// ---------------------------------------------------------------- strata

QPoly closed_points(int e) {
    if (e < 1) throw std::invalid_argument("point degree must be positive");
    if (e == 1) return QPoly::monomial(1) + QPoly(1);
    auto mobius = [](int n) {
        int r = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                r = -r;
            }
        return n > 1 ? -r : r;
    };
    QPoly s;
    for (int d = 1; d <= e; ++d)
        if (e % d == 0) s += QPoly::monomial(d, Rat(mobius(e / d)));
    return s * QPoly::monomial(0, Rat(1, e));
}

QPoly gauss_binomial_q(int a, int b) {
    if (b < 0 || a < 0 || b > a) return QPoly();
    if (b == 0 || b == a) return QPoly(1);
    static std::map<std::pair<int, int>, QPoly> memo;
    {
        std::lock_guard<std::mutex> lock(g_mu);
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
    }
    QPoly r = gauss_binomial_q(a - 1, b - 1) + QPoly::monomial(b) * gauss_binomial_q(a - 1, b);
    std::lock_guard<std::mutex> lock(g_mu);
    memo.emplace(std::make_pair(a, b), r);
    return r;
}

int partition_end_dim(const Partition& lambda) {
    int s = 0;
    for (int c : conjugate(sorted_desc(lambda))) s += c * c;
    return s;
}

QPoly partition_aut(const Partition& lambda) {
    Partition lam = sorted_desc(lambda);
    std::map<int, int> mult;
    for (int x : lam) ++mult[x];
    // q^{|lambda| + 2n(lambda)} prod_i prod_{k <= m_i} (1 - q^{-k})
    QPoly r = QPoly::monomial(partition_end_dim(lam));
    for (auto [i, m] : mult)
        for (int k = 1; k <= m; ++k) r *= QPoly(1) - QPoly::monomial(-k);
    return r;
}

QPoly submodule_count(const Partition& lambda, const Partition& mu) {
    Partition lc = conjugate(sorted_desc(lambda)), mc = conjugate(sorted_desc(mu));
    if (mc.size() > lc.size()) return QPoly();
    QPoly r(1);
    for (size_t i = 0; i < lc.size(); ++i) {
        int l = lc[i], m = part_at(mc, i), m1 = part_at(mc, i + 1);
        QPoly g = gauss_binomial_q(l - m1, m - m1);
        if (g.is_zero()) return g;
        r *= QPoly::monomial(m1 * (l - m)) * g;
    }
    return r;
}

namespace {

void sub_partitions(const Partition& lam, size_t i, int left, Partition& cur, std::vector<Partition>& out) {
    if (i == lam.size()) {
        if (left == 0) out.push_back(sorted_desc(cur));
        return;
    }
    int hi = std::min(lam[i], i ? cur[i - 1] : lam[i]);
    for (int x = std::min(hi, left); x >= 0; --x) {
        cur.push_back(x);
        sub_partitions(lam, i + 1, left - x, cur, out);
        cur.pop_back();
    }
}

}  // namespace

QPoly chain_count(const Partition& lambda, const std::vector<int>& k) {
    Partition lam = sorted_desc(lambda);
    if (k.empty()) return lam.empty() ? QPoly(1) : QPoly();
    int target = partition_size(lam) - k[0];
    if (target < 0) return QPoly();
    std::vector<Partition> subs;
    Partition cur;
    sub_partitions(lam, 0, target, cur, subs);
    std::vector<int> rest(k.begin() + 1, k.end());
    QPoly r;
    for (auto& mu : subs) r += submodule_count(lam, mu) * chain_count(mu, rest);
    return r;
}

std::vector<Stratum> regular_strata(int n) {
    if (n < 1) throw std::invalid_argument("stratum degree must be positive");
    std::vector<StratumPoint> items;
    for (int e = 1; e <= n; ++e)
        for (int s = 1; e * s <= n; ++s)
            for (auto& p : partitions_of(s)) items.push_back({e, p});
    std::vector<Stratum> out;
    std::vector<StratumPoint> cur;
    auto rec = [&](auto&& self, size_t from, int left) -> void {
        if (left == 0) {
            Stratum s;
            s.points = cur;
            std::map<int, int> per_deg;
            std::map<StratumPoint, int> same;
            s.count = QPoly(1);
            s.aut = QPoly(1);
            for (auto& pt : cur) {
                int k = per_deg[pt.deg]++;
                s.count *= closed_points(pt.deg) - QPoly(k);
                int m = ++same[pt];
                s.count *= QPoly::monomial(0, Rat(1, m));
                s.end_dim += pt.deg * partition_end_dim(pt.lambda);
                s.aut *= partition_aut(pt.lambda).subst_power(pt.deg);
            }
            out.push_back(std::move(s));
            return;
        }
        for (size_t i = from; i < items.size(); ++i) {
            int sz = items[i].deg * partition_size(items[i].lambda);
            if (sz > left) continue;
            cur.push_back(items[i]);
            self(self, i, left - sz);
            cur.pop_back();
        }
    };
    rec(rec, 0, n);
    return out;
}

QPoly stratum_filtrations(const Stratum& s, const Partition& w) {
    size_t np = s.points.size(), t = w.size();
    std::vector<std::vector<int>> k(np, std::vector<int>(t, 0));
    std::vector<int> left(np);
    for (size_t i = 0; i < np; ++i) left[i] = partition_size(s.points[i].lambda);
    QPoly total;
    // fill step r point by point
    auto rec = [&](auto&& self, size_t r, size_t i, int need) -> void {
        if (r == t) {
            for (int x : left)
                if (x) return;
            QPoly prod(1);
            for (size_t p = 0; p < np; ++p) {
                prod *= chain_count(s.points[p].lambda, k[p]).subst_power(s.points[p].deg);
                if (prod.is_zero()) return;
            }
            total += prod;
            return;
        }
        if (i == np) {
            if (need == 0) self(self, r + 1, 0, r + 1 < t ? w[r + 1] : 0);
            return;
        }
        int e = s.points[i].deg;
        for (int x = 0; x <= left[i] && x * e <= need; ++x) {
            k[i][r] = x;
            left[i] -= x;
            self(self, r, i + 1, need - x * e);
            left[i] += x;
        }
        k[i][r] = 0;
    };
    rec(rec, 0, 0, t ? w[0] : 0);
    return total;
}

// ---------------------------------------------------------------- inner products

RatFunc imag_inner(const Partition& w, const Partition& w2) {
    int n = partition_size(w);
    if (n != partition_size(w2)) return RatFunc();
    if (n == 0) return RatFunc(1);
    if (n > 6) throw BudgetError("imaginary degree " + std::to_string(n) + " exceeds the Gram budget");
    Partition a = sorted_desc(w), b = sorted_desc(w2);
    if (b < a) std::swap(a, b);
    static std::map<std::pair<Partition, Partition>, RatFunc> memo;
    {
        std::lock_guard<std::mutex> lock(g_mu);
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
    }
    RatFunc r;
    for (auto& s : regular_strata(n)) {
        QPoly num = s.count * stratum_filtrations(s, a) * stratum_filtrations(s, b);
        if (num.is_zero()) continue;
        r += RatFunc(q_to_v(num), q_to_v(s.aut));
    }
    std::lock_guard<std::mutex> lock(g_mu);
    memo.emplace(std::make_pair(a, b), r);
    return r;
}

Matrix imag_gram(int n) {
    auto parts = partitions_of(n);
    Matrix g(parts.size(), std::vector<RatFunc>(parts.size()));
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = 0; j < parts.size(); ++j) g[i][j] = imag_inner(parts[i], parts[j]);
    return g;
}

RatFunc real_inner(const std::map<int, int>& x, const std::map<int, int>& y) {
    if (x != y) return RatFunc();
    int end = 0;
    QPoly aut(1);
    for (auto [n, k] : x) {
        end += k * k;
        aut *= gl_poly(k);
        for (auto [m, l] : x)
            if (n < m) end += k * l * (m - n + 1);
    }
    int sq = 0;
    for (auto [n, k] : x) sq += k * k;
    aut *= QPoly::monomial(end - sq);
    return RatFunc(Laurent::monomial(2 * end), q_to_v(aut));
}

RatFunc pbw_inner(const PBWIndex& c, const PBWIndex& c2) {
    if (c.prep != c2.prep || c.prei != c2.prei) return RatFunc();
    RatFunc im = imag_inner(c.im, c2.im);
    if (im.is_zero()) return im;
    return real_inner(c.prep, c2.prep) * real_inner(c.prei, c2.prei) * im;
}

Matrix pbw_gram(const DimVector& d) {
    auto idx = ordered_indices(d);
    Matrix g(idx.size(), std::vector<RatFunc>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) g[i][j] = pbw_inner(idx[i], idx[j]);
    return g;
}

RatFunc inner(const AlgebraElement& x, const AlgebraElement& y) {
    RatFunc r;
    for (auto& [c, f] : x.terms())
        for (auto& [c2, g] : y.terms()) {
            RatFunc p = pbw_inner(c, c2);
            if (!p.is_zero()) r += f * g * p;
        }
    return r;
}

// ---------------------------------------------------------------- orthogonal elements

namespace {

std::vector<RatFunc> solve_linear(Matrix A, std::vector<RatFunc> b) {
    size_t n = A.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && A[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::runtime_error("Gram matrix is singular");
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        RatFunc inv = A[c][c].inverse();
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c].is_zero()) continue;
            RatFunc f = A[r][c] * inv;
            for (size_t k = c; k < n; ++k)
                if (!A[c][k].is_zero()) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<RatFunc> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] * A[i][i].inverse();
    return x;
}

}  // namespace

AlgebraElement e_prime(int n) {
    if (n < 1) throw std::invalid_argument("imaginary degree must be positive");
    std::vector<Partition> others;
    for (auto& p : partitions_of(n))
        if (p.size() > 1) others.push_back(p);
    PBWIndex top;
    top.im = {n};
    AlgebraElement r = AlgebraElement::basis(top);
    if (others.empty()) return r;
    Matrix G(others.size(), std::vector<RatFunc>(others.size()));
    std::vector<RatFunc> b(others.size());
    for (size_t i = 0; i < others.size(); ++i) {
        for (size_t j = 0; j < others.size(); ++j) G[i][j] = imag_inner(others[i], others[j]);
        b[i] = imag_inner(others[i], top.im);
    }
    auto a = solve_linear(G, b);
    for (size_t i = 0; i < others.size(); ++i) {
        PBWIndex c;
        c.im = others[i];
        r.add_term(c, -a[i]);
    }
    return r;
}

AlgebraElement e_prime_newton(int n) {
    AlgebraElement r = h_image(newton_p_in_h(n));
    return r *= RatFunc(Laurent::monomial(0, Rat(1, n)));
}

AlgebraElement p_element(const Partition& w) { return h_image(power_sum_in_h(w)); }

AlgebraElement schur_pbw_e(const PBWIndex& c) {
    if (c.im.empty()) return AlgebraElement::basis(c);
    AlgebraElement r;
    for (auto& [mu, k] : schur_in_h(c.im)) {
        PBWIndex x = c;
        x.im = mu;
        r.add_term(x, RatFunc(Laurent::monomial(0, k)));
    }
    return r;
}

PrimeCanonical canonical_prime(const DimVector& d) {
    PrimeCanonical pc;
    pc.weight = d;
    pc.indices = ordered_indices(d);
    size_t n = pc.indices.size();
    std::map<PBWIndex, size_t, IndexLess> pos;
    for (size_t i = 0; i < n; ++i) pos[pc.indices[i]] = i;
    Matrix T(n, std::vector<RatFunc>(n));
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i) {
        labels.push_back(pc.indices[i].shorthand());
        pc.e_basis.push_back(schur_pbw_e(pc.indices[i]));
        for (auto& [c, f] : pc.e_basis.back().terms()) T[i][pos.at(c)] = f;
    }
    Below below = kronecker_below(pc.indices);
    check_unitriangular(T, below, labels, "Schur transition");
    Matrix He = mat_mul(kronecker_H(pc.indices), unitriangular_inverse(T));
    pc.data = solve_family(labels, below, He);
    Matrix P = pbw_gram(d);
    Matrix ZT = mat_mul(pc.data.Zeta, T);  // canonical elements in PBW coordinates
    for (size_t i = 0; i < n; ++i) {
        AlgebraElement e;
        for (size_t j = 0; j < n; ++j) e.add_term(pc.indices[j], ZT[i][j]);
        pc.elements.push_back(std::move(e));
    }
    Matrix ZTt(n, std::vector<RatFunc>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) ZTt[i][j] = ZT[j][i];
    pc.gram = mat_mul(mat_mul(ZT, P), ZTt);
    return pc;
}

}  // namespace hallbase
