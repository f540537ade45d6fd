#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hallbase/arith.hpp"
#include "hallbase/kronecker.hpp"
#include "hallbase/straighten.hpp"

namespace hallbase {

using Matrix = std::vector<std::vector<RatFunc>>;

// raised when a matrix is not triangular for the declared order (exit code 3 in the CLI)
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// below(i, j): index i lies strictly below index j
using Below = std::function<bool(int, int)>;

Matrix identity_matrix(size_t n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_bar(const Matrix& a);
bool is_identity(const Matrix& a);

// rows are monomials in PBW coordinates; throws InvariantError naming the pair
void check_unitriangular(const Matrix& H, const Below& below, const std::vector<std::string>& labels, const char* what);
// inverse of a unitriangular matrix (entries below the diagonal in the list order)
Matrix unitriangular_inverse(const Matrix& H);
// Omega = bar(H)^{-1} H
Matrix bar_matrix(const Matrix& H);
// x in v^{-1}Q[v^{-1}] with x - bar(x) = r
Laurent solve_bar_difference(const Laurent& r);
// rows: zeta^c_{c'}, unitriangular, off-diagonal in v^{-1}Q[v^{-1}], zeta = bar(zeta) Omega
Matrix solve_zeta(const Matrix& Omega, const Below& below, const std::vector<std::string>& labels);
// zeta == bar(zeta) * Omega
bool bar_invariant(const Matrix& zeta, const Matrix& Omega);

struct TransitionData {
    std::vector<std::string> labels;
    Matrix H, Omega, Zeta;
};

TransitionData solve_family(const std::vector<std::string>& labels, const Below& below, const Matrix& H);

struct KroneckerCanonical {
    DimVector weight;
    std::vector<PBWIndex> indices;  // linear extension of the geometric order
    TransitionData data;
    std::vector<AlgebraElement> elements;  // canonical basis element per index
};

// H row c = PBW coordinates of monomial_of_index(c)
Matrix kronecker_H(const std::vector<PBWIndex>& indices);
Below kronecker_below(const std::vector<PBWIndex>& indices);
KroneckerCanonical kronecker_canonical(const DimVector& d);

// coefficients lie in Z[v,v^-1], respectively v^{-1}Z[v^{-1}]
bool integral_laurent(const RatFunc& f);
bool in_vinv_integral(const RatFunc& f);

}  // namespace hallbase
