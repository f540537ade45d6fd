#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hallbase {

using Elt = std::uint8_t;

// GF(q) for q in {2,3,4,5,7,8,9,11,13,16}; elements are 0..q-1, 0 and 1 are the field's 0 and 1.
class Field {
public:
    static const Field& get(int q);
    static bool supported(int q);
    static const std::vector<int>& supported_sizes();

    int q() const { return q_; }
    int p() const { return p_; }
    int degree() const { return k_; }
    Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
    Elt sub(Elt a, Elt b) const { return add_[a * q_ + neg_[b]]; }
    Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }
    Elt neg(Elt a) const { return neg_[a]; }
    Elt inv(Elt a) const { return inv_[a]; }
    const Elt* mul_row(Elt a) const { return &mul_[a * q_]; }
    const Elt* add_row(Elt a) const { return &add_[a * q_]; }

private:
    explicit Field(int q);
    int q_, p_, k_;
    std::vector<Elt> add_, mul_, neg_, inv_;
};

struct Mat {
    int rows = 0, cols = 0;
    std::vector<Elt> a;
    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    Elt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    Elt at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static Mat identity(int n);
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
Mat mat_add(const Field& F, const Mat& A, const Mat& B);
Mat mat_scale(const Field& F, const Mat& A, Elt s);
Mat hconcat(const Mat& A, const Mat& B);
Mat columns(const Mat& A, const std::vector<int>& cols);
int rank(const Field& F, Mat A);
// basis of the right kernel {x : A x = 0}, as columns of the returned matrix
Mat kernel(const Field& F, const Mat& A);
// reduced row echelon in place; returns pivot columns
std::vector<int> rref(const Field& F, Mat& A);
// column space basis (columns of the result), rank many
Mat column_basis(const Field& F, const Mat& A);
Mat inverse(const Field& F, const Mat& A);
// solves B X = C for X when the columns of C lie in the span of the (independent) columns of B
Mat solve_in_basis(const Field& F, const Mat& B, const Mat& C);
// columns completing the independent columns of B to a basis of F^n (standard basis vectors)
std::vector<int> complement_coords(const Field& F, const Mat& B);

// Enumerates all k-dimensional subspaces of F_q^n; each is passed as an n x k matrix of basis columns.
void for_each_subspace(const Field& F, int n, int k, const std::function<void(const Mat&)>& fn);
// number of subspaces as an exact integer string-free count (fits 64 bits at desk scale)
unsigned long long gaussian_binomial_count(int q, int n, int k);

// Monic irreducible polynomials over GF(q) of degree e, coefficient vectors c_0..c_{e-1} (leading 1 implied).
std::vector<std::vector<Elt>> monic_irreducibles(const Field& F, int e);
// companion matrix of the monic polynomial with lower coefficients c (size deg x deg)
Mat companion(const Field& F, const std::vector<Elt>& c);
std::vector<Elt> poly_power(const Field& F, const std::vector<Elt>& c, int l);

}  // namespace hallbase
