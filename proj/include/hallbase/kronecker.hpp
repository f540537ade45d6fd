#pragma once

#include <map>
#include <string>
#include <vector>

namespace hallbase {

// d1 at the sink vertex 1, d2 at the source vertex 2
struct DimVector {
    int d1 = 0, d2 = 0;
    friend bool operator==(const DimVector&, const DimVector&) = default;
    friend auto operator<=>(const DimVector&, const DimVector&) = default;
    DimVector operator+(const DimVector& o) const { return {d1 + o.d1, d2 + o.d2}; }
    DimVector operator-(const DimVector& o) const { return {d1 - o.d1, d2 - o.d2}; }
    DimVector operator*(int k) const { return {d1 * k, d2 * k}; }
    bool leq(const DimVector& o) const { return d1 <= o.d1 && d2 <= o.d2; }
    bool nonneg() const { return d1 >= 0 && d2 >= 0; }
    std::string str() const;
};

int euler_form(const DimVector& a, const DimVector& b);

struct Root {
    enum Kind { Prep, Imag, Prei } kind;
    int n;  // n of (n+1,n) / (n,n+1), or m of m*delta
    DimVector dim() const;
    friend bool operator==(const Root&, const Root&) = default;
};

// strict total order on real roots; two imaginary roots compare false both ways
bool root_less(const Root& a, const Root& b);

using Partition = std::vector<int>;

struct PBWIndex {
    std::map<int, int> prep;
    Partition im;  // weakly decreasing
    std::map<int, int> prei;

    friend bool operator==(const PBWIndex&, const PBWIndex&) = default;
    bool empty() const { return prep.empty() && im.empty() && prei.empty(); }
    std::string serialize() const;  // canonical JSON text
    std::string shorthand() const;  // P0^2 D(2,1) I1
    friend bool operator<(const PBWIndex& a, const PBWIndex& b) { return a.serialize() < b.serialize(); }
};

DimVector weight(const PBWIndex& c);
std::vector<PBWIndex> enumerate_indices(const DimVector& d);
int end_dim(const PBWIndex& c);
int orbit_dim(const PBWIndex& c);

enum class Cmp { Less, Greater, EqualIndex, Incomparable };
// Less means c precedes c2 in the geometric order
Cmp geometric_less(const PBWIndex& c, const PBWIndex& c2);
// enumerate_indices(d) sorted into a linear extension of geometric_less
std::vector<PBWIndex> ordered_indices(const DimVector& d);

bool dominates(const Partition& a, const Partition& b);  // a >= b in dominance, same size
std::vector<Partition> partitions_of(int n);            // lex descending
int partition_size(const Partition& p);

}  // namespace hallbase
