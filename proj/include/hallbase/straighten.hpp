#pragma once

#include <map>
#include <string>
#include <vector>

#include "hallbase/arith.hpp"
#include "hallbase/kronecker.hpp"

namespace hallbase {

struct IndexLess {
    bool operator()(const PBWIndex& a, const PBWIndex& b) const;
};

// sparse element of the composition algebra in PBW coordinates
class AlgebraElement {
public:
    using Terms = std::map<PBWIndex, RatFunc, IndexLess>;

    AlgebraElement() = default;
    static AlgebraElement one();
    static AlgebraElement basis(const PBWIndex& c, const RatFunc& coeff = RatFunc(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    RatFunc coeff(const PBWIndex& c) const;
    void add_term(const PBWIndex& c, const RatFunc& f);

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const RatFunc& f);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, const RatFunc& f) { return a *= f; }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

    // every index has this weight; throws when inhomogeneous, (0,0) when zero
    DimVector weight() const;
    // terms sorted by serialized index
    std::vector<std::pair<PBWIndex, RatFunc>> sorted_terms() const;
    std::string str() const;

private:
    Terms terms_;
};

// a single PBW generator: E_{(n+1,n)}, E_{k delta} or E_{(n,n+1)}, never divided
struct Letter {
    Root::Kind kind;
    int n;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

AlgebraElement basis_element(const PBWIndex& c);
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement e_tilde(int n);
AlgebraElement monomial_E(const DimVector& d);
AlgebraElement monomial_of_index(const PBWIndex& c);

// coefficient of E_{(m+h+1,m+h)} * E_{(n-h+1,n-h)} in E_{(n+1,n)} * E_{(m+1,m)}, r = n - m
Laurent prep_swap_coeff(int r, int h);

// E_x * E_y written as a PBW expansion, both sides single generators in any order
AlgebraElement letter_product(const Letter& x, const Letter& y);

// number of memoized (index, generator) products
size_t straighten_cache_size();

}  // namespace hallbase
