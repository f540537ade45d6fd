#include "doctest.h"
#include "hallbase/canonical.hpp"
#include "hallbase/tube.hpp"

using namespace hallbase;

namespace {

RatFunc v(int e, long c = 1) { return RatFunc(Laurent::monomial(e, Rat(c))); }

Below total_order() {
    return [](int i, int j) { return i < j; };
}

}  // namespace

TEST_CASE("weight (1,1) transition data") {
    KroneckerCanonical kc = kronecker_canonical({1, 1});
    REQUIRE(kc.indices.size() == 2);
    CHECK(kc.indices[0].shorthand() == "P0 I0");
    CHECK(kc.indices[1].shorthand() == "D(1)");
    const auto& d = kc.data;
    CHECK(d.H == Matrix{{RatFunc(1), RatFunc()}, {v(-2), RatFunc(1)}});
    CHECK(d.Omega == Matrix{{RatFunc(1), RatFunc()}, {v(-2) - v(2), RatFunc(1)}});
    CHECK(d.Zeta == Matrix{{RatFunc(1), RatFunc()}, {v(-2), RatFunc(1)}});
    CHECK(kc.elements[0] == monomial_of_index(kc.indices[0]));
    CHECK(kc.elements[1] == monomial_E({1, 1}));
}

TEST_CASE("trivial weights") {
    auto one = kronecker_canonical({0, 0});
    REQUIRE(one.elements.size() == 1);
    CHECK(one.elements[0] == AlgebraElement::one());
    auto s1 = kronecker_canonical({1, 0});
    CHECK(s1.data.H == Matrix{{RatFunc(1)}});
    CHECK(s1.data.Zeta == Matrix{{RatFunc(1)}});
    CHECK(bar_matrix(identity_matrix(3)) == identity_matrix(3));
}

TEST_CASE("bar matrix and zeta for a hand example") {
    Matrix H = {{RatFunc(1), RatFunc()}, {v(-2), RatFunc(1)}};
    Matrix Om = bar_matrix(H);
    CHECK(Om == Matrix{{RatFunc(1), RatFunc()}, {v(-2) - v(2), RatFunc(1)}});
    CHECK(is_identity(mat_mul(Om, mat_bar(Om))));
    Matrix Z = solve_zeta(Om, total_order(), {"a", "b"});
    CHECK(Z[1][0] == v(-2));
}

TEST_CASE("bar difference equation") {
    CHECK(solve_bar_difference(Laurent::monomial(-2) - Laurent::monomial(2)) == Laurent::monomial(-2));
    Laurent r = Laurent::monomial(-3, 2) - Laurent::monomial(3, 2) + Laurent::monomial(-1) - Laurent::monomial(1);
    Laurent x = solve_bar_difference(r);
    CHECK(x - x.bar() == r);
    CHECK(x.max_exp() < 0);
    CHECK_THROWS_AS(solve_bar_difference(Laurent(1)), InvariantError);
    CHECK_THROWS_AS(solve_bar_difference(Laurent::monomial(2)), InvariantError);
}

TEST_CASE("order violations are reported") {
    Matrix H = {{RatFunc(1), RatFunc()}, {v(-2), RatFunc(1)}};
    Below none = [](int, int) { return false; };
    CHECK_THROWS_AS(check_unitriangular(H, none, {"a", "b"}, "H"), InvariantError);
    CHECK_THROWS_AS(solve_family({"a", "b"}, none, H), InvariantError);
    Matrix bad = {{RatFunc(1), RatFunc()}, {v(-2), v(1)}};
    CHECK_THROWS_AS(check_unitriangular(bad, total_order(), {"a", "b"}, "H"), InvariantError);
}

TEST_CASE("transition data invariants up to d1+d2<=6") {
    for (int s = 1; s <= 6; ++s)
        for (int a = 0; a <= s; ++a) {
            DimVector d{a, s - a};
            auto kc = kronecker_canonical(d);
            const auto& t = kc.data;
            auto below = kronecker_below(kc.indices);
            CHECK_NOTHROW(check_unitriangular(t.H, below, t.labels, "H"));
            CHECK_NOTHROW(check_unitriangular(t.Omega, below, t.labels, "Omega"));
            CHECK_NOTHROW(check_unitriangular(t.Zeta, below, t.labels, "Zeta"));
            CHECK(is_identity(mat_mul(t.Omega, mat_bar(t.Omega))));
            CHECK(bar_invariant(t.Zeta, t.Omega));
            for (size_t i = 0; i < t.Zeta.size(); ++i)
                for (size_t j = 0; j < t.Zeta.size(); ++j) {
                    CHECK(integral_laurent(t.H[i][j]));
                    if (i != j) CHECK(in_vinv_integral(t.Zeta[i][j]));
                }
        }
}

TEST_CASE("canonical elements are bar invariant") {
    // monomials are bar invariant, so coordinates in the monomial basis must be too
    for (auto d : {DimVector{2, 2}, DimVector{3, 2}, DimVector{2, 3}, DimVector{3, 3}}) {
        auto kc = kronecker_canonical(d);
        Matrix Hinv = unitriangular_inverse(kc.data.H);
        Matrix z = mat_mul(kc.data.Zeta, Hinv);
        CHECK(z == mat_bar(z));
    }
}

TEST_CASE("idempotence") {
    auto kc = kronecker_canonical({2, 2});
    auto below = kronecker_below(kc.indices);
    size_t n = kc.indices.size();
    TransitionData self = solve_family(kc.data.labels, below, identity_matrix(n));
    CHECK(is_identity(self.Omega));
    CHECK(is_identity(self.Zeta));
    // canonical elements used as monomials reproduce themselves
    TransitionData again = solve_family(kc.data.labels, below, kc.data.Zeta);
    CHECK(again.Zeta == kc.data.Zeta);
}

TEST_CASE("uniqueness: perturbing zeta breaks bar invariance") {
    for (auto d : {DimVector{1, 1}, DimVector{2, 2}, DimVector{3, 2}}) {
        auto kc = kronecker_canonical(d);
        const Matrix& Z = kc.data.Zeta;
        for (size_t i = 0; i < Z.size(); ++i)
            for (size_t j = 0; j < i; ++j) {
                if (!kronecker_below(kc.indices)(static_cast<int>(j), static_cast<int>(i))) continue;
                for (auto eps : {v(-1), v(-2, 3), v(-1) - v(-3)}) {
                    Matrix P = Z;
                    P[i][j] += eps;
                    CHECK_FALSE(bar_invariant(P, kc.data.Omega));
                }
            }
    }
}

TEST_CASE("tube weight (1,1): antichain gives trivial zeta") {
    TubeCanonical tc = tube_canonical(2, {1, 1});
    REQUIRE(tc.indices.size() == 2);
    CHECK(is_identity(tc.data.Zeta));
    for (size_t i = 0; i < 2; ++i) CHECK(tc.elements[i] == tc.pbw[i]);
}
