#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hallbase {

using Int = mpz_class;
using Rat = mpq_class;

struct ArithError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int checked_add(int a, int b);
int checked_mul(int a, int b);

// Laurent polynomial in v with rational coefficients, dense between lo and lo+size-1.
class Laurent {
public:
    Laurent() = default;
    Laurent(long c);
    Laurent(const Rat& c);
    static Laurent monomial(int exp, const Rat& c = 1);
    static Laurent v() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (lo_ == 0 && c_.size() == 1); }
    bool is_one() const { return lo_ == 0 && c_.size() == 1 && c_[0] == 1; }
    int min_exp() const;
    int max_exp() const;
    Rat coeff(int e) const;
    size_t length() const { return c_.size(); }
    std::map<int, Rat> terms() const;
    bool integral() const;

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    Laurent& operator*=(const Rat& r);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend Laurent operator*(Laurent a, const Rat& r) { return a *= r; }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
    friend bool operator<(const Laurent& a, const Laurent& b);

    Laurent shift(int k) const;
    Laurent bar() const;
    // v -> v^k (k may be negative)
    Laurent subst_power(int k) const;
    Rat eval(const Rat& x) const;
    std::string str(const char* var = "v") const;

    // raw access used by the rational-function code
    int lo() const { return lo_; }
    const std::vector<Rat>& raw() const { return c_; }
    static Laurent from_raw(int lo, std::vector<Rat> c);

private:
    void trim();
    int lo_ = 0;
    std::vector<Rat> c_;
};

Laurent qint(int n);
Laurent qfactorial(int n);
Laurent qbinom(int n, int k);
// a / b, throwing unless b divides a in Q[v,v^-1]
Laurent exact_div(const Laurent& a, const Laurent& b);

// Element of Q(v) stored as num/den, den a polynomial with nonzero constant term and leading coefficient 1.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(const Rat& c) : num_(c), den_(1) {}
    RatFunc(const Laurent& p) : num_(p), den_(1) {}
    RatFunc(const Laurent& n, const Laurent& d);

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_one(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    Laurent as_laurent() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc bar() const;
    RatFunc inverse() const;
    std::string str() const;
    // degree in v of the value (max exp of num minus deg den); meaningless for zero
    int degree() const;

private:
    void normalize();
    Laurent num_, den_;
};

RatFunc bar(const RatFunc& f);
bool congruent_mod_vinv(const RatFunc& f, const RatFunc& g);
// f in Q[[v^-1]] (no positive powers in the expansion at infinity)
bool in_vinv_power_series(const RatFunc& f);

// a + b*sqrt(q); when q is a perfect square b stays 0
struct QuadSqrt {
    Rat a, b;
    int q = 0;
    QuadSqrt() = default;
    QuadSqrt(int q_, Rat a_ = 0, Rat b_ = 0);
    bool is_zero() const { return a == 0 && b == 0; }
    QuadSqrt& operator+=(const QuadSqrt& o);
    QuadSqrt& operator-=(const QuadSqrt& o);
    QuadSqrt& operator*=(const QuadSqrt& o);
    friend QuadSqrt operator+(QuadSqrt x, const QuadSqrt& y) { return x += y; }
    friend QuadSqrt operator-(QuadSqrt x, const QuadSqrt& y) { return x -= y; }
    friend QuadSqrt operator*(QuadSqrt x, const QuadSqrt& y) { return x *= y; }
    QuadSqrt inverse() const;
    friend bool operator==(const QuadSqrt& x, const QuadSqrt& y) { return x.q == y.q && x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QuadSqrt& x, const QuadSqrt& y) { return !(x == y); }
    std::string str() const;
};

int perfect_sqrt(int q);  // -1 if not a square
QuadSqrt vpow(int q, int k);
QuadSqrt specialize_sqrt(const Laurent& f, int q);
QuadSqrt specialize_sqrt(const RatFunc& f, int q);

// polynomials in q (used for Hall polynomials); stored as Laurent in the variable q
using QPoly = Laurent;
inline Laurent q_to_v(const QPoly& p) { return p.subst_power(2); }
Laurent lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& pts);

}  // namespace hallbase
