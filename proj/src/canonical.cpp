#include "hallbase/canonical.hpp"

namespace hallbase {

Matrix identity_matrix(size_t n) {
    Matrix m(n, std::vector<RatFunc>(n));
    for (size_t i = 0; i < n; ++i) m[i][i] = RatFunc(1);
    return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Matrix c(n, std::vector<RatFunc>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

Matrix mat_bar(const Matrix& a) {
    Matrix b = a;
    for (auto& row : b)
        for (auto& x : row) x = x.bar();
    return b;
}

bool is_identity(const Matrix& a) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != RatFunc(i == j ? 1 : 0)) return false;
    return true;
}

void check_unitriangular(const Matrix& H, const Below& below, const std::vector<std::string>& labels, const char* what) {
    for (size_t i = 0; i < H.size(); ++i)
        for (size_t j = 0; j < H.size(); ++j) {
            const RatFunc& x = H[i][j];
            if (i == j) {
                if (!x.is_one()) throw InvariantError(std::string(what) + ": diagonal entry at " + labels[i] + " is " + x.str());
            } else if (!x.is_zero() && !below(static_cast<int>(j), static_cast<int>(i))) {
                throw InvariantError(std::string(what) + ": entry (" + labels[i] + ", " + labels[j] + ") = " + x.str() +
                                     " outside the order");
            }
        }
}

Matrix unitriangular_inverse(const Matrix& H) {
    size_t n = H.size();
    Matrix X = identity_matrix(n);
    // X H = I, rows from the top; H[i][j] = 0 for j > i
    for (size_t i = 0; i < n; ++i)
        for (size_t jj = i; jj-- > 0;) {
            RatFunc s;
            for (size_t k = jj + 1; k <= i; ++k)
                if (!X[i][k].is_zero() && !H[k][jj].is_zero()) s += X[i][k] * H[k][jj];
            X[i][jj] = -s;
        }
    return X;
}

Matrix bar_matrix(const Matrix& H) {
    for (size_t i = 0; i < H.size(); ++i)
        for (size_t j = i + 1; j < H.size(); ++j)
            if (!H[i][j].is_zero()) throw InvariantError("bar_matrix: H is not lower triangular in the list order");
    return mat_mul(unitriangular_inverse(mat_bar(H)), H);
}

Laurent solve_bar_difference(const Laurent& r) {
    if (r.coeff(0) != 0) throw InvariantError("zeta system: constant term " + r.coeff(0).get_str());
    Laurent x;
    for (auto& [e, c] : r.terms()) {
        if (r.coeff(-e) != -c) throw InvariantError("zeta system: right side not bar-antisymmetric: " + r.str());
        if (e < 0) x += Laurent::monomial(e, c);
    }
    return x;
}

Matrix solve_zeta(const Matrix& Omega, const Below& below, const std::vector<std::string>& labels) {
    size_t n = Omega.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j && !Omega[i][j].is_zero() && !below(static_cast<int>(j), static_cast<int>(i)))
                throw InvariantError("bar matrix entry at incomparable pair (" + labels[i] + ", " + labels[j] + ")");
    Matrix Z(n, std::vector<RatFunc>(n));
    for (size_t c = 0; c < n; ++c) {
        Z[c][c] = RatFunc(1);
        for (size_t t = c; t-- > 0;) {
            if (!below(static_cast<int>(t), static_cast<int>(c))) continue;
            // zeta_t - bar(zeta_t) = sum_{t < s <= c} bar(zeta_s) omega^s_t
            RatFunc r;
            for (size_t s = t + 1; s <= c; ++s)
                if (!Z[c][s].is_zero() && !Omega[s][t].is_zero()) r += Z[c][s].bar() * Omega[s][t];
            if (r.is_zero()) continue;
            if (!r.is_laurent()) throw InvariantError("zeta system: non-Laurent right side " + r.str());
            Z[c][t] = RatFunc(solve_bar_difference(r.as_laurent()));
        }
    }
    return Z;
}

bool bar_invariant(const Matrix& zeta, const Matrix& Omega) { return mat_mul(mat_bar(zeta), Omega) == zeta; }

TransitionData solve_family(const std::vector<std::string>& labels, const Below& below, const Matrix& H) {
    check_unitriangular(H, below, labels, "monomial transition");
    TransitionData t;
    t.labels = labels;
    t.H = H;
    t.Omega = bar_matrix(H);
    check_unitriangular(t.Omega, below, labels, "bar matrix");
    if (!is_identity(mat_mul(t.Omega, mat_bar(t.Omega)))) throw InvariantError("bar matrix is not an involution");
    t.Zeta = solve_zeta(t.Omega, below, labels);
    if (!bar_invariant(t.Zeta, t.Omega)) throw InvariantError("canonical coefficients are not bar-invariant");
    return t;
}

Matrix kronecker_H(const std::vector<PBWIndex>& indices) {
    size_t n = indices.size();
    std::map<PBWIndex, size_t, IndexLess> pos;
    for (size_t i = 0; i < n; ++i) pos[indices[i]] = i;
    Matrix H(n, std::vector<RatFunc>(n));
    for (size_t i = 0; i < n; ++i) {
        AlgebraElement m = monomial_of_index(indices[i]);
        for (auto& [c, f] : m.terms()) {
            auto it = pos.find(c);
            if (it == pos.end()) throw InvariantError("monomial leaves its weight space: " + c.shorthand());
            H[i][it->second] = f;
        }
    }
    return H;
}

Below kronecker_below(const std::vector<PBWIndex>& indices) {
    return [indices](int i, int j) { return geometric_less(indices[i], indices[j]) == Cmp::Less; };
}

KroneckerCanonical kronecker_canonical(const DimVector& d) {
    KroneckerCanonical k;
    k.weight = d;
    k.indices = ordered_indices(d);
    std::vector<std::string> labels;
    for (auto& c : k.indices) labels.push_back(c.shorthand());
    k.data = solve_family(labels, kronecker_below(k.indices), kronecker_H(k.indices));
    for (size_t i = 0; i < k.indices.size(); ++i) {
        AlgebraElement e;
        for (size_t j = 0; j < k.indices.size(); ++j) e.add_term(k.indices[j], k.data.Zeta[i][j]);
        k.elements.push_back(std::move(e));
    }
    return k;
}

bool integral_laurent(const RatFunc& f) { return f.is_laurent() && f.num().integral(); }

bool in_vinv_integral(const RatFunc& f) {
    return f.is_zero() || (integral_laurent(f) && f.num().max_exp() < 0);
}

}  // namespace hallbase
