#pragma once

#include <string>
#include <vector>

#include "hallbase/oracle.hpp"
#include "hallbase/straighten.hpp"

namespace hallbase {

// E^c evaluated in H*_q: ordered twisted product of <kP_n>, v^{-2k} R_{k delta}, <kI_n>
HallVec specialize_index(KroneckerOracle& K, const PBWIndex& c);
HallVec specialize_element(KroneckerOracle& K, const AlgebraElement& x);
// empty when equal, else the first differing u_[M] coefficient
std::string first_difference(KroneckerOracle& K, const HallVec& a, const HallVec& b);

struct RelationReport {
    std::string relation;
    int q = 0;
    bool equal = false;
    int instances = 0;
    std::string detail;
};

// L3.3 L3.8 L3.9 L3.11 L3.12, L3.13 as printed, L3.13-corrected (non-leading exponents of the first two expansions raised by one,
// sign of (t+l)(p-1) in the second flipped),
// L3.13-engine (straightened monomials)
const std::vector<std::string>& relation_ids();
bool known_relation(const std::string& id);
RelationReport verify_relation(const std::string& id, int q);

// every ordered pair of generators (real divided powers included) of total weight <= max
struct EquivalenceReport {
    int q = 0;
    int pairs = 0;
    int failures = 0;
    std::string first_failure;
};
EquivalenceReport product_equivalence(int q, const DimVector& max);

// the generators used by product_equivalence
std::vector<PBWIndex> generator_indices(const DimVector& max);

}  // namespace hallbase
