#pragma once

#include <map>
#include <vector>

#include "hallbase/arith.hpp"
#include "hallbase/canonical.hpp"
#include "hallbase/kronecker.hpp"
#include "hallbase/straighten.hpp"

namespace hallbase {

// linear combination of h_lambda = h_{lambda_1} h_{lambda_2} ...
using HExpr = std::map<Partition, Rat>;

HExpr h_mul(const HExpr& a, const HExpr& b);
HExpr schur_in_h(const Partition& lambda);  // Jacobi-Trudi
HExpr newton_p_in_h(int n);
HExpr power_sum_in_h(const Partition& w);
Rat z_value(const Partition& w);
// Kostka numbers K_{lambda mu} with h_mu = sum_lambda K_{lambda mu} s_lambda
std::map<Partition, Rat> kostka_column(const Partition& mu);

// h_lambda -> E_{lambda delta}
AlgebraElement h_image(const HExpr& x);

// ------------------------------------------------ regular strata

struct StratumPoint {
    int deg = 1;
    Partition lambda;
    friend auto operator<=>(const StratumPoint&, const StratumPoint&) = default;
};

struct Stratum {
    std::vector<StratumPoint> points;  // sorted
    QPoly count;                       // number of iso classes, polynomial in q
    int end_dim = 0;
    QPoly aut;  // |Aut M| in q
};

QPoly closed_points(int e);                          // degree-e points of P^1
QPoly gauss_binomial_q(int a, int b);                // [a choose b] in q, not symmetric
QPoly partition_aut(const Partition& lambda);        // a_lambda(q)
int partition_end_dim(const Partition& lambda);      // |lambda| + 2 n(lambda)
QPoly submodule_count(const Partition& lambda, const Partition& mu);  // submodules of type mu
// chains with successive quotient lengths k_1, k_2, ... read from the top
QPoly chain_count(const Partition& lambda, const std::vector<int>& k);

std::vector<Stratum> regular_strata(int n);
// number of filtrations of a module in the stratum with regular factors of dimension w_1 delta, w_2 delta, ...
QPoly stratum_filtrations(const Stratum& s, const Partition& w);

// ------------------------------------------------ inner products

RatFunc imag_inner(const Partition& w, const Partition& w2);
Matrix imag_gram(int n);  // rows and columns follow partitions_of(n)
RatFunc real_inner(const std::map<int, int>& x, const std::map<int, int>& y);
RatFunc pbw_inner(const PBWIndex& c, const PBWIndex& c2);
Matrix pbw_gram(const DimVector& d);  // order of ordered_indices(d)
RatFunc inner(const AlgebraElement& x, const AlgebraElement& y);

// ------------------------------------------------ orthogonal and Schur elements

AlgebraElement e_prime(int n);              // Gram-Schmidt route
AlgebraElement e_prime_newton(int n);       // p_n / n under h_k -> E_{k delta}
AlgebraElement p_element(const Partition& w);  // P_{w delta} = prod n E'_{n delta}
AlgebraElement schur_pbw_e(const PBWIndex& c);

struct PrimeCanonical {
    DimVector weight;
    std::vector<PBWIndex> indices;
    TransitionData data;                  // in e-coordinates
    std::vector<AlgebraElement> e_basis;  // e^c in PBW coordinates
    std::vector<AlgebraElement> elements; // canonical elements in PBW coordinates
    Matrix gram;                          // Gram matrix of the canonical elements
};

PrimeCanonical canonical_prime(const DimVector& d);

}  // namespace hallbase
