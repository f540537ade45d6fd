#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hallbase/arith.hpp"
#include "hallbase/gf.hpp"
#include "hallbase/kronecker.hpp"

namespace hallbase {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Quiver {
    int nv = 0;
    std::vector<std::pair<int, int>> arrows;  // (source, target)
    bool cyclic = false;
    // vertex 0 is the sink (dimension d1), vertex 1 the source (d2)
    static Quiver kronecker();
    static Quiver cyclic_quiver(int n);
    int euler(const std::vector<int>& a, const std::vector<int>& b) const;
};

struct FFRep {
    int q = 0;
    std::vector<int> dims;
    std::vector<Mat> mats;  // mats[a] has shape dims[target] x dims[source]
    int total() const;
};

FFRep zero_rep(const Quiver& Q, int q);
FFRep direct_sum(const FFRep& a, const FFRep& b);
bool valid_rep(const Quiver& Q, const FFRep& r);
int hom_dim(const Quiver& Q, const Field& F, const FFRep& A, const FFRep& B);
// basis of Hom(A,B) as flattened coordinate vectors (columns)
Mat hom_space(const Quiver& Q, const Field& F, const FFRep& A, const FFRep& B);
// brute-force count of invertible endomorphisms (small cases only)
unsigned long long aut_count_bruteforce(const Quiver& Q, const Field& F, const FFRep& M);

// submodule given by per-vertex basis columns
using SubBasis = std::vector<Mat>;
void for_each_submodule(const Quiver& Q, const Field& F, const FFRep& L, const std::vector<int>& subdims,
                        const std::function<void(const SubBasis&)>& fn);
void sub_and_quotient(const Quiver& Q, const Field& F, const FFRep& L, const SubBasis& W, FFRep& sub, FFRep& quot);
// conjugate by random base changes (deterministic seed)
FFRep randomize_basis(const Quiver& Q, const Field& F, const FFRep& M, unsigned seed);

struct ClassRef {
    std::vector<int> dims;
    int idx = -1;
    friend auto operator<=>(const ClassRef&, const ClassRef&) = default;
};

struct ClassTable {
    std::vector<int> dims;
    int q = 0;
    std::vector<std::string> labels;
    std::vector<FFRep> reps;
    std::vector<int> end_dims;
    std::vector<Rat> aut;  // |Aut M|
    std::map<std::string, int> index;
    // identification data (built lazily)
    bool tree_built = false;
    std::vector<FFRep> tests;
    std::vector<std::vector<int>> fingerprints;  // per class, 2 * tests.size() entries
    struct Node {
        int test = -1;  // fingerprint coordinate; -1 at a leaf
        int leaf = -1;
        std::map<int, int> child;
    };
    std::vector<Node> tree;
    int find(const std::string& label) const;
};

// a vector of H_q in the u_[M] basis, coefficients in Q(sqrt q)
using HallVec = std::map<ClassRef, QuadSqrt>;

class HallOracle {
public:
    HallOracle(Quiver Q, int q);
    virtual ~HallOracle() = default;

    const Quiver& quiver() const { return Q_; }
    const Field& field() const { return F_; }
    int q() const { return q_; }

    const ClassTable& table(const std::vector<int>& dims);
    ClassRef identify(const FFRep& X);
    const std::string& label(const ClassRef& c);
    const FFRep& rep(const ClassRef& c);
    int end_dim(const ClassRef& c);
    Rat aut_order(const ClassRef& c);

    // g^L_{M,N}: submodules W of L with W ~ N and L/W ~ M
    Int hall_number(const ClassRef& L, const ClassRef& M, const ClassRef& N);
    // all g^L_{M,N} for fixed L and dim N
    const std::map<std::pair<int, int>, Int>& hall_row(const ClassRef& L, const std::vector<int>& ndims);

    HallVec u(const ClassRef& c);
    HallVec bracket(const ClassRef& c);  // v^{-dim M + dim End M} u_M
    HallVec mul(const HallVec& x, const HallVec& y);          // untwisted
    HallVec mul_twisted(const HallVec& x, const HallVec& y);  // v^{<dim x, dim y>} twist
    HallVec scale(const HallVec& x, const QuadSqrt& c);
    HallVec add(const HallVec& x, const HallVec& y);
    HallVec sub(const HallVec& x, const HallVec& y);
    QuadSqrt v_pow(int k) const { return vpow(q_, k); }
    QuadSqrt scalar(const Laurent& f) const { return specialize_sqrt(f, q_); }
    QuadSqrt scalar(const RatFunc& f) const { return specialize_sqrt(f, q_); }

    // sum over classes of |GL_d|/|Aut M|; equals the number of points of the representation space
    Rat mass(const std::vector<int>& dims);
    Rat expected_mass(const std::vector<int>& dims) const;

protected:
    virtual void build_classes(ClassTable& t) = 0;
    virtual int identify_in(ClassTable& t, const FFRep& X);
    void build_tree(ClassTable& t);
    virtual std::vector<FFRep> test_modules(const std::vector<int>& dims) = 0;

    Quiver Q_;
    int q_;
    const Field& F_;
    std::recursive_mutex mu_;
    std::map<std::vector<int>, std::unique_ptr<ClassTable>> tables_;
    std::map<std::pair<ClassRef, std::vector<int>>, std::map<std::pair<int, int>, Int>> rows_;
};

// closed points of P^1 over F_q, degree e; the point at infinity is listed first in degree 1
struct KPoint {
    int deg = 1;
    bool inf = false;
    std::vector<Elt> poly;  // lower coefficients of the monic irreducible
    std::string name;
};

// a Kronecker module by its indecomposable summands
struct KModule {
    std::map<int, int> prep;                // n -> multiplicity of P_n = V_(n+1,n)
    std::map<int, Partition> reg;           // point id -> partition of lengths
    std::map<int, int> prei;                // n -> multiplicity of I_n = V_(n,n+1)
};

class KroneckerOracle : public HallOracle {
public:
    explicit KroneckerOracle(int q);
    static KroneckerOracle& get(int q);

    const std::vector<KPoint>& points(int deg);
    const KPoint& point(int id);
    std::vector<int> point_ids(int max_deg);

    FFRep prep_rep(int n);
    FFRep prei_rep(int n);
    FFRep reg_rep(int point_id, int l);
    FFRep module_rep(const KModule& m);
    std::string module_label(const KModule& m);
    DimVector dim_of(const KModule& m);
    ClassRef ref(const KModule& m);
    const KModule& module(const ClassRef& c);
    bool is_regular(const ClassRef& c);
    // combinatorial End dimension and Aut polynomial in q
    int module_end_dim(const KModule& m);
    QPoly aut_poly(const KModule& m);

    static std::vector<int> dv(const DimVector& d) { return {d.d1, d.d2}; }

    // sums over classes
    HallVec regular_sum(int k);  // R_{k delta}
    HallVec all_sum(const DimVector& d);
    HallVec prep_sum(const DimVector& d, bool nonzero_only = true);  // all preprojective classes of dimension d
    HallVec prei_sum(const DimVector& d);

protected:
    void build_classes(ClassTable& t) override;
    std::vector<FFRep> test_modules(const std::vector<int>& dims) override;

private:
    std::map<int, std::vector<KPoint>> pts_;
    std::vector<std::pair<int, int>> id_to_pt_;  // id -> (deg, position)
    std::map<std::pair<int, int>, int> pt_to_id_;
    std::map<std::vector<int>, std::vector<KModule>> modules_;
};

// nilpotent representations of the cyclic quiver i -> i+1; vertices 0..n-1 stand for 1..n
struct Multipartition {
    int rank = 0;
    std::vector<Partition> parts;
    friend auto operator<=>(const Multipartition&, const Multipartition&) = default;
    std::vector<int> dims() const;
    int total() const;
    bool empty() const;
    std::string serialize() const;
    std::string str() const;
    static Multipartition zero(int rank);
};

class TubeOracle : public HallOracle {
public:
    TubeOracle(int rank, int q);
    static TubeOracle& get(int rank, int q);
    int rank() const { return n_; }

    FFRep indec_rep(int top, int len);
    FFRep module_rep(const Multipartition& p);
    ClassRef ref(const Multipartition& p);
    const Multipartition& multipartition(const ClassRef& c);
    Multipartition classify_by_ranks(const FFRep& X);

protected:
    void build_classes(ClassTable& t) override;
    int identify_in(ClassTable& t, const FFRep& X) override;
    std::vector<FFRep> test_modules(const std::vector<int>& dims) override;

private:
    int n_;
    std::map<std::vector<int>, std::vector<Multipartition>> mps_;
};

std::vector<Multipartition> multipartitions_of(int rank, const std::vector<int>& dims);

// the polynomial through (q_i, values(q_i)) for the first bound+1 supported field sizes; throws on a fit failure
QPoly interpolate_counts(const std::function<Rat(int q)>& value_at, int bound, int extra_checks = 1);

Rat gl_order(int s, const Rat& Q);
QPoly gl_order_poly(int s, int e);  // |GL_s(F_{q^e})| as a polynomial in q

}  // namespace hallbase
