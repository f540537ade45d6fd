#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hallbase/arith.hpp"
#include "hallbase/canonical.hpp"
#include "hallbase/oracle.hpp"

namespace hallbase {

// tight word j1^e1 ... jt^et, vertices 0-based internally, printed 1-based
struct Word {
    std::vector<std::pair<int, int>> letters;  // (vertex, exponent)
    friend auto operator<=>(const Word&, const Word&) = default;
    bool tight() const;
    std::string str() const;  // "1^2 2 1"
    static Word parse(const std::string& s);  // inverse of str(); throws std::invalid_argument
};

struct MultipartitionLess {
    bool operator()(const Multipartition& a, const Multipartition& b) const { return a.serialize() < b.serialize(); }
};

// a vector of H*(T) in the <M(lambda)> basis
class TubeElement {
public:
    using Terms = std::map<Multipartition, RatFunc, MultipartitionLess>;

    explicit TubeElement(int rank = 2) : rank_(rank) {}
    static TubeElement basis(const Multipartition& p, const RatFunc& c = RatFunc(1));

    int rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    RatFunc coeff(const Multipartition& p) const;
    void add_term(const Multipartition& p, const RatFunc& c);
    bool is_zero() const { return terms_.empty(); }

    TubeElement& operator+=(const TubeElement& o);
    TubeElement& operator-=(const TubeElement& o);
    TubeElement& operator*=(const RatFunc& c);
    friend bool operator==(const TubeElement& a, const TubeElement& b) { return a.terms_ == b.terms_; }
    std::string str() const;

private:
    int rank_;
    Terms terms_;
};

Multipartition simple_multiple(int rank, int vertex, int e);  // e S_j
Multipartition make_multipartition(int rank, std::vector<Partition> parts);  // sorts parts

// dim Hom(M(mu), M(lambda)) from the intertwiner system over Q
int dim_hom(const Multipartition& mu, const Multipartition& lambda);
int tube_end_dim(const Multipartition& p);
bool aperiodic(const Multipartition& p);
std::vector<Multipartition> aperiodic_of(int rank, const std::vector<int>& dims);

// oracle at q=2: the extension class of a by b with minimal dim End
Multipartition generic_ext(const Multipartition& a, const Multipartition& b);
Multipartition wp(int rank, const Word& w);

// g^lambda_w as a polynomial in q, by counting filtrations at several q and interpolating
QPoly filtration_polynomial(const Multipartition& lambda, const Word& w);
// degree bound used for the interpolation above
int filtration_degree_bound(const Multipartition& lambda, const Word& w);

// cached section of distinguished words; throws std::runtime_error on search exhaustion
Word distinguished_word(const Multipartition& pi);

// g^L_{M,S_j} as a polynomial in q, keyed by L: lines in the socle at j with quotient M
std::map<Multipartition, QPoly, MultipartitionLess> right_simple_hall(const Multipartition& M, int j);
// x * <S_j> in the twisted algebra
TubeElement times_simple(const TubeElement& x, int j);
TubeElement monomial_m(int rank, const Word& w);
TubeElement pbw_E(const Multipartition& pi);

// the order on multipartitions of the same dimension, via Hom(S_i[l], -) for l <= total
bool deg_leq(const Multipartition& mu, const Multipartition& lambda);
// same comparison with test modules mapped out of M(.) instead
bool deg_leq_dual(const Multipartition& mu, const Multipartition& lambda, int max_len);
bool deg_leq_with_cutoff(const Multipartition& mu, const Multipartition& lambda, int max_len);

struct TubeCanonical {
    int rank = 2;
    std::vector<int> dims;
    std::vector<Multipartition> indices;  // aperiodic, linear extension of the order
    std::vector<Word> words;
    TransitionData data;
    std::vector<TubeElement> pbw;       // E_pi
    std::vector<TubeElement> elements;  // canonical basis
};

TubeCanonical tube_canonical(int rank, const std::vector<int>& dims);

}  // namespace hallbase
