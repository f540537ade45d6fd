#include "hallbase/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hallbase {

// ---------------------------------------------------------------- quivers and representations

Quiver Quiver::kronecker() {
    Quiver Q;
    Q.nv = 2;
    Q.arrows = {{1, 0}, {1, 0}};
    return Q;
}

Quiver Quiver::cyclic_quiver(int n) {
    Quiver Q;
    Q.nv = n;
    Q.cyclic = true;
    for (int i = 0; i < n; ++i) Q.arrows.emplace_back(i, (i + 1) % n);
    return Q;
}

int Quiver::euler(const std::vector<int>& a, const std::vector<int>& b) const {
    int e = 0;
    for (int v = 0; v < nv; ++v) e += a[v] * b[v];
    for (auto [s, t] : arrows) e -= a[s] * b[t];
    return e;
}

int FFRep::total() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
}

FFRep zero_rep(const Quiver& Q, int q) {
    FFRep r;
    r.q = q;
    r.dims.assign(Q.nv, 0);
    r.mats.assign(Q.arrows.size(), Mat(0, 0));
    return r;
}

FFRep direct_sum(const FFRep& a, const FFRep& b) {
    FFRep r;
    r.q = a.q;
    r.dims.resize(a.dims.size());
    for (size_t v = 0; v < a.dims.size(); ++v) r.dims[v] = a.dims[v] + b.dims[v];
    for (size_t k = 0; k < a.mats.size(); ++k) {
        const Mat& A = a.mats[k];
        const Mat& B = b.mats[k];
        Mat M(A.rows + B.rows, A.cols + B.cols);
        for (int i = 0; i < A.rows; ++i)
            for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        for (int i = 0; i < B.rows; ++i)
            for (int j = 0; j < B.cols; ++j) M.at(A.rows + i, A.cols + j) = B.at(i, j);
        r.mats.push_back(std::move(M));
    }
    return r;
}

bool valid_rep(const Quiver& Q, const FFRep& r) {
    if (static_cast<int>(r.dims.size()) != Q.nv || r.mats.size() != Q.arrows.size()) return false;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        auto [s, t] = Q.arrows[a];
        if (r.mats[a].rows != r.dims[t] || r.mats[a].cols != r.dims[s]) return false;
    }
    return true;
}

namespace {

Mat hom_system(const Quiver& Q, const Field& F, const FFRep& A, const FFRep& B, std::vector<int>& off) {
    off.assign(Q.nv + 1, 0);
    for (int v = 0; v < Q.nv; ++v) off[v + 1] = off[v] + B.dims[v] * A.dims[v];
    int rows = 0;
    for (auto [s, t] : Q.arrows) rows += B.dims[t] * A.dims[s];
    Mat S(rows, off[Q.nv]);
    int row = 0;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        auto [s, t] = Q.arrows[a];
        const Mat& Ba = B.mats[a];
        const Mat& Aa = A.mats[a];
        for (int i = 0; i < B.dims[t]; ++i)
            for (int j = 0; j < A.dims[s]; ++j, ++row) {
                for (int k = 0; k < B.dims[s]; ++k) {
                    Elt x = Ba.at(i, k);
                    if (x) {
                        Elt& e = S.at(row, off[s] + k * A.dims[s] + j);
                        e = F.add(e, x);
                    }
                }
                for (int k = 0; k < A.dims[t]; ++k) {
                    Elt x = Aa.at(k, j);
                    if (x) {
                        Elt& e = S.at(row, off[t] + i * A.dims[t] + k);
                        e = F.sub(e, x);
                    }
                }
            }
    }
    return S;
}

}  // namespace

int hom_dim(const Quiver& Q, const Field& F, const FFRep& A, const FFRep& B) {
    std::vector<int> off;
    Mat S = hom_system(Q, F, A, B, off);
    if (S.cols == 0) return 0;
    return S.cols - rank(F, std::move(S));
}

Mat hom_space(const Quiver& Q, const Field& F, const FFRep& A, const FFRep& B) {
    std::vector<int> off;
    Mat S = hom_system(Q, F, A, B, off);
    return kernel(F, S);
}

unsigned long long aut_count_bruteforce(const Quiver& Q, const Field& F, const FFRep& M) {
    Mat K = hom_space(Q, F, M, M);
    int dim = K.cols;
    unsigned long long total = 1;
    for (int i = 0; i < dim; ++i) total *= F.q();
    if (total > (1ULL << 24)) throw BudgetError("aut_count_bruteforce: endomorphism space too large");
    std::vector<int> coef(dim, 0);
    unsigned long long count = 0;
    std::vector<int> off(Q.nv + 1, 0);
    for (int v = 0; v < Q.nv; ++v) off[v + 1] = off[v] + M.dims[v] * M.dims[v];
    for (unsigned long long it = 0; it < total; ++it) {
        std::vector<Elt> x(K.rows, 0);
        for (int c = 0; c < dim; ++c)
            if (coef[c])
                for (int r = 0; r < K.rows; ++r) x[r] = F.add(x[r], F.mul(static_cast<Elt>(coef[c]), K.at(r, c)));
        bool inv = true;
        for (int v = 0; v < Q.nv && inv; ++v) {
            int n = M.dims[v];
            Mat f(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) f.at(i, j) = x[off[v] + i * n + j];
            if (rank(F, f) < n) inv = false;
        }
        if (inv) ++count;
        for (int c = 0; c < dim; ++c) {
            if (++coef[c] < F.q()) break;
            coef[c] = 0;
        }
    }
    return count;
}

void for_each_submodule(const Quiver& Q, const Field& F, const FFRep& L, const std::vector<int>& subdims,
                        const std::function<void(const SubBasis&)>& fn) {
    for (int v = 0; v < Q.nv; ++v)
        if (subdims[v] < 0 || subdims[v] > L.dims[v]) return;
    std::vector<int> order;
    if (Q.cyclic) {
        for (int v = 0; v < Q.nv; ++v) order.push_back(v);
    } else {
        // sources before targets
        std::vector<int> indeg(Q.nv, 0);
        for (auto [s, t] : Q.arrows) ++indeg[t];
        std::vector<char> used(Q.nv, 0);
        while (static_cast<int>(order.size()) < Q.nv) {
            for (int v = 0; v < Q.nv; ++v)
                if (!used[v] && indeg[v] == 0) {
                    used[v] = 1;
                    order.push_back(v);
                    for (auto [s, t] : Q.arrows)
                        if (s == v) --indeg[t];
                    break;
                }
        }
    }
    std::vector<int> pos(Q.nv);
    for (int i = 0; i < Q.nv; ++i) pos[order[i]] = i;
    SubBasis W(Q.nv);
    auto rec = [&](auto&& self, int p) -> void {
        if (p == Q.nv) {
            for (size_t a = 0; a < Q.arrows.size(); ++a) {
                auto [s, t] = Q.arrows[a];
                if (pos[t] >= pos[s]) continue;
                Mat img = mat_mul(F, L.mats[a], W[s]);
                if (rank(F, hconcat(W[t], img)) != W[t].cols) return;
            }
            fn(W);
            return;
        }
        int v = order[p];
        int n = L.dims[v], k = subdims[v];
        Mat U(n, 0);
        for (size_t a = 0; a < Q.arrows.size(); ++a) {
            auto [s, t] = Q.arrows[a];
            if (t == v && pos[s] < p) U = hconcat(U, mat_mul(F, L.mats[a], W[s]));
        }
        Mat Ub = column_basis(F, U);
        int r = Ub.cols;
        if (r > k) return;
        std::vector<int> C = complement_coords(F, Ub);
        for_each_subspace(F, n - r, k - r, [&](const Mat& X) {
            Mat ext(n, k - r);
            for (int i = 0; i < X.rows; ++i)
                for (int j = 0; j < X.cols; ++j) ext.at(C[i], j) = X.at(i, j);
            W[v] = hconcat(Ub, ext);
            self(self, p + 1);
        });
    };
    rec(rec, 0);
}

void sub_and_quotient(const Quiver& Q, const Field& F, const FFRep& L, const SubBasis& W, FFRep& sub, FFRep& quot) {
    int nv = Q.nv;
    std::vector<Mat> T(nv), Tinv(nv);
    sub.q = quot.q = L.q;
    sub.dims.assign(nv, 0);
    quot.dims.assign(nv, 0);
    for (int v = 0; v < nv; ++v) {
        std::vector<int> C = complement_coords(F, W[v]);
        Mat E(L.dims[v], static_cast<int>(C.size()));
        for (size_t j = 0; j < C.size(); ++j) E.at(C[j], static_cast<int>(j)) = 1;
        T[v] = hconcat(W[v], E);
        Tinv[v] = inverse(F, T[v]);
        sub.dims[v] = W[v].cols;
        quot.dims[v] = L.dims[v] - W[v].cols;
    }
    sub.mats.clear();
    quot.mats.clear();
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        auto [s, t] = Q.arrows[a];
        Mat Y = mat_mul(F, Tinv[t], mat_mul(F, L.mats[a], T[s]));
        int kt = sub.dims[t], ks = sub.dims[s];
        Mat S(kt, ks), R(quot.dims[t], quot.dims[s]);
        for (int i = 0; i < kt; ++i)
            for (int j = 0; j < ks; ++j) S.at(i, j) = Y.at(i, j);
        for (int i = 0; i < quot.dims[t]; ++i)
            for (int j = 0; j < quot.dims[s]; ++j) R.at(i, j) = Y.at(kt + i, ks + j);
        sub.mats.push_back(std::move(S));
        quot.mats.push_back(std::move(R));
    }
}

FFRep randomize_basis(const Quiver& Q, const Field& F, const FFRep& M, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<Mat> g(Q.nv), gi(Q.nv);
    for (int v = 0; v < Q.nv; ++v) {
        int n = M.dims[v];
        while (true) {
            Mat A(n, n);
            for (auto& x : A.a) x = static_cast<Elt>(rng() % F.q());
            if (rank(F, A) == n) {
                g[v] = A;
                gi[v] = inverse(F, A);
                break;
            }
        }
    }
    FFRep r = M;
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
        auto [s, t] = Q.arrows[a];
        r.mats[a] = mat_mul(F, g[t], mat_mul(F, M.mats[a], gi[s]));
    }
    return r;
}

// ---------------------------------------------------------------- polynomials in q

Rat gl_order(int s, const Rat& Qv) {
    Rat r = 1;
    Rat qs = 1;
    for (int i = 0; i < s; ++i) qs *= Qv;
    Rat qi = 1;
    for (int i = 0; i < s; ++i) {
        r *= qs - qi;
        qi *= Qv;
    }
    return r;
}

QPoly gl_order_poly(int s, int e) {
    QPoly r(1);
    for (int i = 0; i < s; ++i) r *= QPoly::monomial(e * s) - QPoly::monomial(e * i);
    return r;
}

QPoly interpolate_counts(const std::function<Rat(int)>& value_at, int bound, int extra_checks) {
    const auto& sizes = Field::supported_sizes();
    int need = bound + 1 + extra_checks;
    if (need > static_cast<int>(sizes.size()))
        throw BudgetError("interpolation needs " + std::to_string(need) + " field sizes, only " +
                          std::to_string(sizes.size()) + " available");
    std::vector<std::pair<Rat, Rat>> pts;
    for (int i = 0; i <= bound; ++i) pts.emplace_back(Rat(sizes[i]), value_at(sizes[i]));
    QPoly p = lagrange_interpolate(pts);
    for (int i = bound + 1; i < need; ++i)
        if (p.eval(Rat(sizes[i])) != value_at(sizes[i]))
            throw std::runtime_error("Hall polynomial fit failure at q=" + std::to_string(sizes[i]));
    return p;
}

// ---------------------------------------------------------------- generic oracle

int ClassTable::find(const std::string& label) const {
    auto it = index.find(label);
    return it == index.end() ? -1 : it->second;
}

HallOracle::HallOracle(Quiver Q, int q) : Q_(std::move(Q)), q_(q), F_(Field::get(q)) {}

const ClassTable& HallOracle::table(const std::vector<int>& dims) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = tables_.find(dims);
    if (it != tables_.end()) return *it->second;
    auto t = std::make_unique<ClassTable>();
    t->dims = dims;
    t->q = q_;
    build_classes(*t);
    for (size_t i = 0; i < t->labels.size(); ++i) t->index[t->labels[i]] = static_cast<int>(i);
    auto& ref = *t;
    tables_.emplace(dims, std::move(t));
    return ref;
}

void HallOracle::build_tree(ClassTable& t) {
    if (t.tree_built) return;
    t.tests = test_modules(t.dims);
    int nt = static_cast<int>(t.tests.size());
    int nc = static_cast<int>(t.reps.size());
    t.fingerprints.assign(nc, std::vector<int>(2 * nt, 0));
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < nt; ++i) {
            t.fingerprints[c][i] = hom_dim(Q_, F_, t.tests[i], t.reps[c]);
            t.fingerprints[c][nt + i] = hom_dim(Q_, F_, t.reps[c], t.tests[i]);
        }
    std::set<std::vector<int>> seen(t.fingerprints.begin(), t.fingerprints.end());
    if (static_cast<int>(seen.size()) != nc) throw std::runtime_error("fingerprints do not separate classes");
    t.tree.clear();
    auto build = [&](auto&& self, std::vector<int> cls) -> int {
        int id = static_cast<int>(t.tree.size());
        t.tree.emplace_back();
        if (cls.size() == 1) {
            t.tree[id].leaf = cls[0];
            return id;
        }
        int best = -1;
        size_t best_parts = 0, best_max = 0;
        for (int c = 0; c < 2 * nt; ++c) {
            std::map<int, size_t> cnt;
            for (int k : cls) ++cnt[t.fingerprints[k][c]];
            size_t mx = 0;
            for (auto& [val, n] : cnt) mx = std::max(mx, n);
            if (cnt.size() > 1 && (best < 0 || mx < best_max || (mx == best_max && cnt.size() > best_parts))) {
                best = c;
                best_parts = cnt.size();
                best_max = mx;
            }
        }
        t.tree[id].test = best;
        std::map<int, std::vector<int>> split;
        for (int k : cls) split[t.fingerprints[k][best]].push_back(k);
        for (auto& [val, sub] : split) {
            int child = self(self, sub);
            t.tree[id].child[val] = child;
        }
        return id;
    };
    std::vector<int> all(nc);
    for (int i = 0; i < nc; ++i) all[i] = i;
    if (nc > 0) build(build, all);
    t.tree_built = true;
}

int HallOracle::identify_in(ClassTable& t, const FFRep& X) {
    if (t.reps.size() == 1) return 0;
    build_tree(t);
    int nt = static_cast<int>(t.tests.size());
    int node = 0;
    while (t.tree[node].leaf < 0) {
        int c = t.tree[node].test;
        int val = c < nt ? hom_dim(Q_, F_, t.tests[c], X) : hom_dim(Q_, F_, X, t.tests[c - nt]);
        auto it = t.tree[node].child.find(val);
        if (it == t.tree[node].child.end()) throw std::runtime_error("identify: module outside the class table");
        node = it->second;
    }
    return t.tree[node].leaf;
}

ClassRef HallOracle::identify(const FFRep& X) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    table(X.dims);
    ClassTable& t = *tables_.at(X.dims);
    return {X.dims, identify_in(t, X)};
}

const std::string& HallOracle::label(const ClassRef& c) { return table(c.dims).labels.at(c.idx); }
const FFRep& HallOracle::rep(const ClassRef& c) { return table(c.dims).reps.at(c.idx); }
int HallOracle::end_dim(const ClassRef& c) { return table(c.dims).end_dims.at(c.idx); }
Rat HallOracle::aut_order(const ClassRef& c) { return table(c.dims).aut.at(c.idx); }

const std::map<std::pair<int, int>, Int>& HallOracle::hall_row(const ClassRef& L, const std::vector<int>& ndims) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(L, ndims);
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
    std::vector<int> mdims(Q_.nv);
    for (int v = 0; v < Q_.nv; ++v) mdims[v] = L.dims[v] - ndims[v];
    std::map<std::pair<int, int>, Int> row;
    const FFRep& Lr = rep(L);
    for_each_submodule(Q_, F_, Lr, ndims, [&](const SubBasis& W) {
        FFRep s, qt;
        sub_and_quotient(Q_, F_, Lr, W, s, qt);
        int n = identify(s).idx;
        int m = identify(qt).idx;
        row[{m, n}] += 1;
    });
    return rows_.emplace(key, std::move(row)).first->second;
}

Int HallOracle::hall_number(const ClassRef& L, const ClassRef& M, const ClassRef& N) {
    for (int v = 0; v < Q_.nv; ++v)
        if (M.dims[v] + N.dims[v] != L.dims[v]) throw std::invalid_argument("hall_number: dimension mismatch");
    const auto& row = hall_row(L, N.dims);
    auto it = row.find({M.idx, N.idx});
    return it == row.end() ? Int(0) : it->second;
}

HallVec HallOracle::u(const ClassRef& c) { return {{c, QuadSqrt(q_, 1, 0)}}; }

HallVec HallOracle::bracket(const ClassRef& c) {
    int dimM = 0;
    for (int d : c.dims) dimM += d;
    return {{c, vpow(q_, -dimM + end_dim(c))}};
}

HallVec HallOracle::scale(const HallVec& x, const QuadSqrt& c) {
    HallVec r;
    if (c.is_zero()) return r;
    for (auto& [k, v] : x) r.emplace(k, v * c);
    return r;
}

namespace {

void add_into(HallVec& r, const ClassRef& k, const QuadSqrt& v) {
    if (v.is_zero()) return;
    auto it = r.find(k);
    if (it == r.end()) r.emplace(k, v);
    else {
        it->second += v;
        if (it->second.is_zero()) r.erase(it);
    }
}

}  // namespace

HallVec HallOracle::add(const HallVec& x, const HallVec& y) {
    HallVec r = x;
    for (auto& [k, v] : y) add_into(r, k, v);
    return r;
}

HallVec HallOracle::sub(const HallVec& x, const HallVec& y) { return add(x, scale(y, QuadSqrt(q_, -1, 0))); }

HallVec HallOracle::mul(const HallVec& x, const HallVec& y) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    std::map<std::vector<int>, std::map<int, QuadSqrt>> xs, ys;
    for (auto& [k, v] : x) xs[k.dims].emplace(k.idx, v);
    for (auto& [k, v] : y) ys[k.dims].emplace(k.idx, v);
    HallVec r;
    for (auto& [a, xa] : xs)
        for (auto& [b, yb] : ys) {
            std::vector<int> ld(Q_.nv);
            for (int v = 0; v < Q_.nv; ++v) ld[v] = a[v] + b[v];
            const ClassTable& tl = table(ld);
            // filtered enumeration: identify the submodule first, the quotient only when needed
            table(a);
            table(b);
            ClassTable& ta = *tables_.at(a);
            ClassTable& tb = *tables_.at(b);
            for (int li = 0; li < static_cast<int>(tl.reps.size()); ++li) {
                ClassRef L{ld, li};
                auto key = std::make_pair(L, b);
                QuadSqrt acc(q_);
                auto cached = rows_.find(key);
                if (cached != rows_.end()) {
                    for (auto& [mn, g] : cached->second) {
                        auto ix = xa.find(mn.first);
                        auto iy = yb.find(mn.second);
                        if (ix != xa.end() && iy != yb.end()) acc += ix->second * iy->second * QuadSqrt(q_, Rat(g), 0);
                    }
                    add_into(r, L, acc);
                    continue;
                }
                const FFRep& Lr = tl.reps[li];
                for_each_submodule(Q_, F_, Lr, b, [&](const SubBasis& W) {
                    FFRep s, qt;
                    sub_and_quotient(Q_, F_, Lr, W, s, qt);
                    int n = identify_in(tb, s);
                    auto iy = yb.find(n);
                    if (iy == yb.end()) return;
                    int m = identify_in(ta, qt);
                    auto ix = xa.find(m);
                    if (ix == xa.end()) return;
                    acc += ix->second * iy->second;
                });
                add_into(r, L, acc);
            }
        }
    return r;
}

HallVec HallOracle::mul_twisted(const HallVec& x, const HallVec& y) {
    std::map<std::vector<int>, HallVec> xs, ys;
    for (auto& [k, v] : x) xs[k.dims].emplace(k, v);
    for (auto& [k, v] : y) ys[k.dims].emplace(k, v);
    HallVec r;
    for (auto& [a, xa] : xs)
        for (auto& [b, yb] : ys) {
            QuadSqrt t = vpow(q_, Q_.euler(a, b));
            for (auto& [k, v] : mul(xa, yb)) add_into(r, k, v * t);
        }
    return r;
}

Rat HallOracle::mass(const std::vector<int>& dims) {
    const ClassTable& t = table(dims);
    Rat gl = 1;
    for (int d : dims) gl *= gl_order(d, Rat(q_));
    Rat s = 0;
    for (const Rat& a : t.aut) s += gl / a;
    return s;
}

Rat HallOracle::expected_mass(const std::vector<int>& dims) const {
    Rat r = 1;
    for (auto [s, t] : Q_.arrows)
        for (int i = 0; i < dims[s] * dims[t]; ++i) r *= q_;
    return r;
}

}  // namespace hallbase
