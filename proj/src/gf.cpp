#include "hallbase/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace hallbase {

namespace {

struct FieldSpec {
    int q, p, k;
    std::vector<int> modulus;  // lower coefficients of the defining polynomial
};

const std::vector<FieldSpec>& specs() {
    static const std::vector<FieldSpec> s = {
        {2, 2, 1, {}},        {3, 3, 1, {}},        {4, 2, 2, {1, 1}},       {5, 5, 1, {}},
        {7, 7, 1, {}},        {8, 2, 3, {1, 1, 0}}, {9, 3, 2, {1, 0}},       {11, 11, 1, {}},
        {13, 13, 1, {}},      {16, 2, 4, {1, 1, 0, 0}},
    };
    return s;
}

std::vector<int> digits(int x, int p, int k) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int x = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
    return x;
}

}  // namespace

const std::vector<int>& Field::supported_sizes() {
    static const std::vector<int> v = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
    return v;
}

bool Field::supported(int q) {
    for (int x : supported_sizes())
        if (x == q) return true;
    return false;
}

const Field& Field::get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;
    if (!supported(q)) throw std::invalid_argument("unsupported field size " + std::to_string(q));
    auto* f = new Field(q);
    cache.emplace(q, std::unique_ptr<Field>(f));
    return *f;
}

Field::Field(int q) : q_(q) {
    const FieldSpec* spec = nullptr;
    for (const auto& s : specs())
        if (s.q == q) spec = &s;
    p_ = spec->p;
    k_ = spec->k;
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a, p_, k_);
        std::vector<int> dn(k_);
        for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<Elt>(undigits(dn, p_));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, p_, k_);
            std::vector<int> ds(k_);
            for (int i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = static_cast<Elt>(undigits(ds, p_));
            std::vector<int> prod(2 * k_ - 1, 0);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int d = 2 * k_ - 2; d >= k_; --d) {
                int c = prod[d];
                if (!c) continue;
                prod[d] = 0;
                for (int i = 0; i < k_; ++i)
                    prod[d - k_ + i] = ((prod[d - k_ + i] - c * spec->modulus[i]) % p_ + p_) % p_;
            }
            prod.resize(k_);
            mul_[a * q + b] = static_cast<Elt>(undigits(prod, p_));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) inv_[a] = static_cast<Elt>(b);
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul shape");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            Elt a = A.at(i, k);
            if (!a) continue;
            const Elt* mr = F.mul_row(a);
            for (int j = 0; j < B.cols; ++j) {
                Elt b = B.at(k, j);
                if (b) C.at(i, j) = F.add(C.at(i, j), mr[b]);
            }
        }
    return C;
}

Mat mat_add(const Field& F, const Mat& A, const Mat& B) {
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

Mat mat_scale(const Field& F, const Mat& A, Elt s) {
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.mul(A.a[i], s);
    return C;
}

Mat hconcat(const Mat& A, const Mat& B) {
    if (A.rows != B.rows) throw std::invalid_argument("hconcat shape");
    Mat C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Mat columns(const Mat& A, const std::vector<int>& cols) {
    Mat C(A.rows, static_cast<int>(cols.size()));
    for (int i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < cols.size(); ++j) C.at(i, static_cast<int>(j)) = A.at(i, cols[j]);
    return C;
}

std::vector<int> rref(const Field& F, Mat& A) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int s = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, c)) {
                s = i;
                break;
            }
        if (s < 0) continue;
        if (s != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(s, j), A.at(r, j));
        Elt iv = F.inv(A.at(r, c));
        if (iv != 1) {
            const Elt* mr = F.mul_row(iv);
            for (int j = c; j < A.cols; ++j) A.at(r, j) = mr[A.at(r, j)];
        }
        for (int i = 0; i < A.rows; ++i) {
            if (i == r) continue;
            Elt f = A.at(i, c);
            if (!f) continue;
            const Elt* mr = F.mul_row(F.neg(f));
            for (int j = c; j < A.cols; ++j) {
                Elt x = A.at(r, j);
                if (x) A.at(i, j) = F.add(A.at(i, j), mr[x]);
            }
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(const Field& F, Mat A) {
    // forward elimination only
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int s = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, c)) {
                s = i;
                break;
            }
        if (s < 0) continue;
        if (s != r)
            for (int j = c; j < A.cols; ++j) std::swap(A.at(s, j), A.at(r, j));
        Elt iv = F.inv(A.at(r, c));
        for (int i = r + 1; i < A.rows; ++i) {
            Elt f = A.at(i, c);
            if (!f) continue;
            const Elt* mr = F.mul_row(F.neg(F.mul(f, iv)));
            for (int j = c; j < A.cols; ++j) {
                Elt x = A.at(r, j);
                if (x) A.at(i, j) = F.add(A.at(i, j), mr[x]);
            }
        }
        ++r;
    }
    return r;
}

Mat kernel(const Field& F, const Mat& A) {
    Mat R = A;
    auto piv = rref(F, R);
    std::vector<char> is_piv(A.cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> free;
    for (int c = 0; c < A.cols; ++c)
        if (!is_piv[c]) free.push_back(c);
    Mat K(A.cols, static_cast<int>(free.size()));
    for (size_t t = 0; t < free.size(); ++t) {
        int f = free[t];
        K.at(f, static_cast<int>(t)) = 1;
        for (size_t i = 0; i < piv.size(); ++i) K.at(piv[i], static_cast<int>(t)) = F.neg(R.at(static_cast<int>(i), f));
    }
    return K;
}

Mat column_basis(const Field& F, const Mat& A) {
    Mat R = A;
    auto piv = rref(F, R);
    return columns(A, piv);
}

Mat inverse(const Field& F, const Mat& A) {
    int n = A.rows;
    Mat M = hconcat(A, Mat::identity(n));
    auto piv = rref(F, M);
    if (static_cast<int>(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1)) throw std::runtime_error("singular matrix");
    Mat I(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) I.at(i, j) = M.at(i, n + j);
    return I;
}

Mat solve_in_basis(const Field& F, const Mat& B, const Mat& C) {
    int k = B.cols;
    Mat M = hconcat(B, C);
    auto piv = rref(F, M);
    if (static_cast<int>(piv.size()) != k || (k > 0 && piv[k - 1] != k - 1))
        throw std::runtime_error("solve_in_basis: target outside span");
    Mat X(k, C.cols);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < C.cols; ++j) X.at(i, j) = M.at(i, k + j);
    return X;
}

std::vector<int> complement_coords(const Field& F, const Mat& B) {
    Mat T(B.cols, B.rows);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) T.at(j, i) = B.at(i, j);
    auto piv = rref(F, T);
    std::vector<char> is_piv(B.rows, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> out;
    for (int c = 0; c < B.rows; ++c)
        if (!is_piv[c]) out.push_back(c);
    return out;
}

void for_each_subspace(const Field& F, int n, int k, const std::function<void(const Mat&)>& fn) {
    if (k < 0 || k > n) return;
    int q = F.q();
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        std::vector<char> is_piv(n, 0);
        for (int c : piv) is_piv[c] = 1;
        std::vector<std::pair<int, int>> slots;  // (row, col) free entries of the RREF
        for (int i = 0; i < k; ++i)
            for (int c = piv[i] + 1; c < n; ++c)
                if (!is_piv[c]) slots.emplace_back(i, c);
        Mat basis(n, k);
        for (int i = 0; i < k; ++i) basis.at(piv[i], i) = 1;
        std::vector<int> ctr(slots.size(), 0);
        while (true) {
            fn(basis);
            size_t t = 0;
            for (; t < slots.size(); ++t) {
                if (++ctr[t] < q) {
                    basis.at(slots[t].second, slots[t].first) = static_cast<Elt>(ctr[t]);
                    break;
                }
                ctr[t] = 0;
                basis.at(slots[t].second, slots[t].first) = 0;
            }
            if (t == slots.size()) break;
        }
        int i = k - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

unsigned long long gaussian_binomial_count(int q, int n, int k) {
    if (k < 0 || k > n) return 0;
    // [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q
    std::vector<std::vector<unsigned long long>> t(n + 1, std::vector<unsigned long long>(n + 1, 0));
    for (int m = 0; m <= n; ++m) {
        t[m][0] = 1;
        unsigned long long qk = 1;
        for (int j = 1; j <= m; ++j) {
            qk *= static_cast<unsigned long long>(q);
            t[m][j] = t[m - 1][j - 1] + (j <= m - 1 ? qk * t[m - 1][j] : 0);
        }
    }
    return t[n][k];
}

namespace {

// polynomials as full coefficient vectors, low degree first
using Poly = std::vector<Elt>;

void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(const Field& F, Poly a, const Poly& m) {
    ptrim(a);
    int dm = static_cast<int>(m.size()) - 1;
    Elt li = F.inv(m.back());
    while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
        int da = static_cast<int>(a.size()) - 1;
        Elt f = F.mul(a.back(), li);
        for (int i = 0; i <= dm; ++i) a[da - dm + i] = F.sub(a[da - dm + i], F.mul(f, m[i]));
        ptrim(a);
    }
    return a;
}

Poly pmul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return r;
}

void for_each_monic(const Field& F, int e, const std::function<void(const Poly&)>& fn) {
    Poly p(e + 1, 0);
    p[e] = 1;
    int q = F.q();
    while (true) {
        fn(p);
        int t = 0;
        for (; t < e; ++t) {
            if (++p[t] < q) break;
            p[t] = 0;
        }
        if (t == e) break;
    }
}

}  // namespace

std::vector<std::vector<Elt>> monic_irreducibles(const Field& F, int e) {
    std::vector<std::vector<Elt>> out;
    for_each_monic(F, e, [&](const Poly& p) {
        bool irr = true;
        for (int d = 1; d <= e / 2 && irr; ++d)
            for_each_monic(F, d, [&](const Poly& g) {
                if (irr && pmod(F, p, g).empty()) irr = false;
            });
        if (irr) out.emplace_back(p.begin(), p.end() - 1);
    });
    return out;
}

Mat companion(const Field& F, const std::vector<Elt>& c) {
    int n = static_cast<int>(c.size());
    Mat m(n, n);
    for (int i = 1; i < n; ++i) m.at(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) m.at(i, n - 1) = F.neg(c[i]);
    return m;
}

std::vector<Elt> poly_power(const Field& F, const std::vector<Elt>& c, int l) {
    Poly base(c.begin(), c.end());
    base.push_back(1);
    Poly r{1};
    for (int i = 0; i < l; ++i) r = pmul(F, r, base);
    r.pop_back();
    return r;
}

}  // namespace hallbase
