#include "hallbase/arith.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace hallbase {

int checked_add(int a, int b) {
    int r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithError("exponent overflow");
    return r;
}

int checked_mul(int a, int b) {
    int r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithError("exponent overflow");
    return r;
}

// ---------------------------------------------------------------- Laurent

Laurent::Laurent(long c) {
    if (c != 0) c_.push_back(Rat(c));
}

Laurent::Laurent(const Rat& c) {
    if (c != 0) {
        c_.push_back(c);
        c_.back().canonicalize();
    }
}

Laurent Laurent::monomial(int exp, const Rat& c) {
    Laurent p;
    if (c != 0) {
        p.lo_ = exp;
        p.c_.push_back(c);
        p.c_.back().canonicalize();
    }
    return p;
}

Laurent Laurent::from_raw(int lo, std::vector<Rat> c) {
    Laurent p;
    p.lo_ = lo;
    p.c_ = std::move(c);
    for (auto& x : p.c_) x.canonicalize();
    p.trim();
    return p;
}

void Laurent::trim() {
    size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    if (b == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    size_t e = c_.size();
    while (c_[e - 1] == 0) --e;
    if (b > 0 || e < c_.size()) {
        std::vector<Rat> n(c_.begin() + b, c_.begin() + e);
        c_.swap(n);
        lo_ = checked_add(lo_, static_cast<int>(b));
    }
}

int Laurent::min_exp() const {
    if (c_.empty()) throw ArithError("min_exp of zero");
    return lo_;
}

int Laurent::max_exp() const {
    if (c_.empty()) throw ArithError("max_exp of zero");
    return lo_ + static_cast<int>(c_.size()) - 1;
}

Rat Laurent::coeff(int e) const {
    if (c_.empty()) return 0;
    long i = static_cast<long>(e) - lo_;
    if (i < 0 || i >= static_cast<long>(c_.size())) return 0;
    return c_[i];
}

std::map<int, Rat> Laurent::terms() const {
    std::map<int, Rat> m;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) m[lo_ + static_cast<int>(i)] = c_[i];
    return m;
}

bool Laurent::integral() const {
    for (const auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(max_exp(), o.max_exp());
    if (nlo < lo_ || nhi > max_exp()) {
        std::vector<Rat> n(static_cast<size_t>(nhi - nlo + 1));
        for (size_t i = 0; i < c_.size(); ++i) n[lo_ - nlo + i] = c_[i];
        c_.swap(n);
        lo_ = nlo;
    }
    for (size_t i = 0; i < o.c_.size(); ++i) c_[o.lo_ - lo_ + i] += o.c_[i];
    trim();
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.c_.empty() || b.c_.empty()) return Laurent();
    Laurent r;
    r.lo_ = checked_add(a.lo_, b.lo_);
    checked_add(a.max_exp(), b.max_exp());
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    Rat t;
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            t = a.c_[i] * b.c_[j];
            r.c_[i + j] += t;
        }
    }
    r.trim();
    return r;
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

Laurent& Laurent::operator*=(const Rat& r) {
    if (r == 0) {
        c_.clear();
        lo_ = 0;
        return *this;
    }
    for (auto& x : c_) x *= r;
    return *this;
}

bool operator<(const Laurent& a, const Laurent& b) {
    if (a.lo_ != b.lo_) return a.lo_ < b.lo_;
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

Laurent Laurent::shift(int k) const {
    Laurent r = *this;
    if (!r.c_.empty()) {
        r.lo_ = checked_add(r.lo_, k);
        checked_add(r.max_exp(), 0);
        checked_add(max_exp(), k);
    }
    return r;
}

Laurent Laurent::bar() const { return subst_power(-1); }

Laurent Laurent::subst_power(int k) const {
    if (c_.empty()) return Laurent();
    if (k == 1) return *this;
    if (k == 0) {
        Rat s = 0;
        for (const auto& x : c_) s += x;
        return Laurent(s);
    }
    int e0 = checked_mul(lo_, k), e1 = checked_mul(max_exp(), k);
    int nlo = std::min(e0, e1), nhi = std::max(e0, e1);
    std::vector<Rat> n(static_cast<size_t>(nhi - nlo + 1));
    for (size_t i = 0; i < c_.size(); ++i) n[(lo_ + static_cast<int>(i)) * k - nlo] = c_[i];
    return from_raw(nlo, std::move(n));
}

Rat Laurent::eval(const Rat& x) const {
    if (c_.empty()) return 0;
    if (x == 0) throw ArithError("evaluation at zero");
    Rat acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    Rat p = 1;
    int e = lo_;
    Rat base = e >= 0 ? x : Rat(1) / x;
    for (int k = 0; k < std::abs(e); ++k) p *= base;
    return acc * p;
}

std::string Laurent::str(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rat& c = c_[i];
        if (c == 0) continue;
        int e = lo_ + static_cast<int>(i);
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (a == 1);
        if (!unit || e == 0) os << a.get_str();
        if (e != 0) {
            if (!unit) os << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

Laurent qint(int n) {
    if (n < 0) throw ArithError("qint of negative");
    Laurent p;
    for (int k = n - 1; k >= 1 - n; k -= 2) p += Laurent::monomial(k);
    return p;
}

Laurent qfactorial(int n) {
    Laurent p(1);
    for (int r = 1; r <= n; ++r) p *= qint(r);
    return p;
}

Laurent qbinom(int n, int k) {
    if (k < 0 || k > n) throw ArithError("qbinom requires 0 <= k <= n");
    // Pascal rule: [n,k] = v^{-k}[n-1,k] + v^{n-k}[n-1,k-1]
    std::vector<Laurent> row{Laurent(1)};
    for (int m = 1; m <= n; ++m) {
        std::vector<Laurent> nr(m + 1);
        for (int j = 0; j <= m; ++j) {
            Laurent t;
            if (j <= m - 1) t += row[j].shift(-j);
            if (j >= 1) t += row[j - 1].shift(m - j);
            nr[j] = t;
        }
        row.swap(nr);
    }
    return row[k];
}

// ---------------------------------------------------------------- polynomials over Q (index = degree)

namespace {

using Poly = std::vector<Rat>;

void ptrim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly pmod(Poly a, const Poly& b) {
    ptrim(a);
    const Rat& lb = b.back();
    while (a.size() >= b.size()) {
        Rat f = a.back() / lb;
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        ptrim(a);
    }
    return a;
}

Poly pdiv(Poly a, const Poly& b) {
    ptrim(a);
    if (a.size() < b.size()) return {};
    Poly q(a.size() - b.size() + 1);
    const Rat& lb = b.back();
    while (a.size() >= b.size()) {
        Rat f = a.back() / lb;
        size_t off = a.size() - b.size();
        q[off] = f;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        ptrim(a);
    }
    return q;
}

void pmonic(Poly& p) {
    Rat l = p.back();
    for (auto& x : p) x /= l;
}

Poly pgcd(Poly a, Poly b) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        Poly r = pmod(a, b);
        a.swap(b);
        b.swap(r);
        if (!b.empty()) pmonic(b);
    }
    if (!a.empty()) pmonic(a);
    return a;
}

}  // namespace

Laurent exact_div(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw ArithError("division by zero");
    if (a.is_zero()) return Laurent();
    Poly A(a.raw()), B(b.raw());
    Poly r = pmod(A, B);
    if (!r.empty()) throw ArithError("inexact division: " + a.str() + " / " + b.str());
    return Laurent::from_raw(a.lo() - b.lo(), pdiv(A, B));
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Laurent& n, const Laurent& d) : num_(n), den_(d) {
    if (den_.is_zero()) throw ArithError("zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Laurent(1);
        return;
    }
    int shift = num_.lo() - den_.lo();
    Poly N(num_.raw()), D(den_.raw());
    if (D.size() > 1) {
        Poly g = pgcd(N, D);
        if (g.size() > 1) {
            N = pdiv(N, g);
            D = pdiv(D, g);
        }
    }
    Rat l = D.back();
    if (l != 1) {
        for (auto& x : N) x /= l;
        for (auto& x : D) x /= l;
    }
    num_ = Laurent::from_raw(shift, std::move(N));
    den_ = Laurent::from_raw(0, std::move(D));
}

Laurent RatFunc::as_laurent() const {
    if (!den_.is_one()) throw ArithError("not a Laurent polynomial: " + str());
    return num_;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (!den_.is_one()) normalize();
        else if (num_.is_zero()) den_ = Laurent(1);
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RatFunc();
    num_ *= o.num_;
    if (den_.is_one() && o.den_.is_one()) return *this;
    den_ *= o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw ArithError("division by zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::bar() const { return RatFunc(num_.bar(), den_.bar()); }

int RatFunc::degree() const { return num_.max_exp() - den_.max_exp(); }

std::string RatFunc::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc bar(const RatFunc& f) { return f.bar(); }

bool in_vinv_power_series(const RatFunc& f) { return f.is_zero() || f.degree() <= 0; }

bool congruent_mod_vinv(const RatFunc& f, const RatFunc& g) {
    RatFunc h = f - g;
    return h.is_zero() || h.degree() < 0;
}

// ---------------------------------------------------------------- QuadSqrt

int perfect_sqrt(int q) {
    if (q < 0) return -1;
    int s = 0;
    while ((s + 1) * (s + 1) <= q) ++s;
    return s * s == q ? s : -1;
}

QuadSqrt::QuadSqrt(int q_, Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)), q(q_) {
    int s = perfect_sqrt(q);
    if (s >= 0 && b != 0) {
        a += b * s;
        b = 0;
    }
}

QuadSqrt& QuadSqrt::operator+=(const QuadSqrt& o) {
    a += o.a;
    b += o.b;
    return *this;
}

QuadSqrt& QuadSqrt::operator-=(const QuadSqrt& o) {
    a -= o.a;
    b -= o.b;
    return *this;
}

QuadSqrt& QuadSqrt::operator*=(const QuadSqrt& o) {
    Rat na = a * o.a + b * o.b * q;
    Rat nb = a * o.b + b * o.a;
    a = na;
    b = nb;
    return *this;
}

QuadSqrt QuadSqrt::inverse() const {
    Rat n = a * a - b * b * q;
    if (n == 0) throw ArithError("division by zero at v=sqrt(q)");
    return QuadSqrt(q, a / n, -b / n);
}

std::string QuadSqrt::str() const {
    if (b == 0) return a.get_str();
    return a.get_str() + " + " + b.get_str() + "*sqrt(" + std::to_string(q) + ")";
}

QuadSqrt vpow(int q, int k) {
    int s = perfect_sqrt(q);
    if (s >= 0) {
        Rat r = 1;
        for (int i = 0; i < std::abs(k); ++i) r *= s;
        if (k < 0) r = Rat(1) / r;
        return QuadSqrt(q, r, 0);
    }
    int h = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k/2)
    int odd = k - 2 * h;
    Rat r = 1;
    for (int i = 0; i < std::abs(h); ++i) r *= q;
    if (h < 0) r = Rat(1) / r;
    return odd ? QuadSqrt(q, 0, r) : QuadSqrt(q, r, 0);
}

QuadSqrt specialize_sqrt(const Laurent& f, int q) {
    QuadSqrt acc(q);
    if (f.is_zero()) return acc;
    for (auto& [e, c] : f.terms()) acc += vpow(q, e) * QuadSqrt(q, c, 0);
    return acc;
}

QuadSqrt specialize_sqrt(const RatFunc& f, int q) {
    QuadSqrt n = specialize_sqrt(f.num(), q);
    QuadSqrt d = specialize_sqrt(f.den(), q);
    return n * d.inverse();
}

Laurent lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& pts) {
    Laurent result;
    for (size_t i = 0; i < pts.size(); ++i) {
        Laurent basis(1);
        Rat denom = 1;
        for (size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            basis *= Laurent::monomial(1) - Laurent(pts[j].first);
            denom *= pts[i].first - pts[j].first;
        }
        result += basis * (pts[i].second / denom);
    }
    return result;
}

}  // namespace hallbase
