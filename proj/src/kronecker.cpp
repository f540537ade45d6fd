#include "hallbase/kronecker.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace hallbase {

std::string DimVector::str() const { return "(" + std::to_string(d1) + "," + std::to_string(d2) + ")"; }

int euler_form(const DimVector& a, const DimVector& b) { return a.d1 * b.d1 + a.d2 * b.d2 - 2 * a.d2 * b.d1; }

DimVector Root::dim() const {
    switch (kind) {
        case Prep: return {n + 1, n};
        case Imag: return {n, n};
        default: return {n, n + 1};
    }
}

bool root_less(const Root& a, const Root& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    switch (a.kind) {
        case Root::Prep: return a.n < b.n;
        case Root::Prei: return a.n > b.n;
        default: return false;
    }
}

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

namespace {

std::string map_json(const std::map<int, int>& m) {
    std::string s = "{";
    bool first = true;
    for (auto [k, v] : m) {
        if (!first) s += ",";
        first = false;
        s += "\"" + std::to_string(k) + "\":" + std::to_string(v);
    }
    return s + "}";
}

}  // namespace

std::string PBWIndex::serialize() const {
    std::string s = "{\"prep\":" + map_json(prep) + ",\"im\":[";
    for (size_t i = 0; i < im.size(); ++i) s += (i ? "," : "") + std::to_string(im[i]);
    return s + "],\"prei\":" + map_json(prei) + "}";
}

std::string PBWIndex::shorthand() const {
    std::vector<std::string> parts;
    for (auto [n, k] : prep) parts.push_back("P" + std::to_string(n) + (k > 1 ? "^" + std::to_string(k) : ""));
    if (!im.empty()) {
        std::string s = "D(";
        for (size_t i = 0; i < im.size(); ++i) s += (i ? "," : "") + std::to_string(im[i]);
        parts.push_back(s + ")");
    }
    for (auto it = prei.rbegin(); it != prei.rend(); ++it)
        parts.push_back("I" + std::to_string(it->first) + (it->second > 1 ? "^" + std::to_string(it->second) : ""));
    if (parts.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
    return s;
}

DimVector weight(const PBWIndex& c) {
    DimVector d;
    for (auto [n, k] : c.prep) d = d + DimVector{n + 1, n} * k;
    for (int w : c.im) d = d + DimVector{w, w};
    for (auto [n, k] : c.prei) d = d + DimVector{n, n + 1} * k;
    return d;
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rem, int maxp) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxp); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

std::vector<PBWIndex> enumerate_indices(const DimVector& d) {
    std::vector<PBWIndex> out;
    if (!d.nonneg()) return out;
    // roots ordered: Prep(0..), Imag(1..), Prei(...)
    std::vector<Root> roots;
    for (int n = 0; n + 1 <= d.d1 && n <= d.d2; ++n) roots.push_back({Root::Prep, n});
    for (int m = std::min(d.d1, d.d2); m >= 1; --m) roots.push_back({Root::Imag, m});
    for (int n = 0; n <= d.d1 && n + 1 <= d.d2; ++n) roots.push_back({Root::Prei, n});
    PBWIndex cur;
    auto rec = [&](auto&& self, size_t i, DimVector rem) -> void {
        if (rem.d1 == 0 && rem.d2 == 0) {
            out.push_back(cur);
            return;
        }
        if (i == roots.size()) return;
        const Root& r = roots[i];
        DimVector rd = r.dim();
        int maxk = 0;
        while (rd.d1 * (maxk + 1) <= rem.d1 && rd.d2 * (maxk + 1) <= rem.d2) ++maxk;
        for (int k = 0; k <= maxk; ++k) {
            if (k > 0) {
                if (r.kind == Root::Prep) cur.prep[r.n] = k;
                else if (r.kind == Root::Prei) cur.prei[r.n] = k;
                else cur.im.push_back(r.n);
            }
            self(self, i + 1, rem - rd * k);
        }
        if (maxk > 0) {
            if (r.kind == Root::Prep) cur.prep.erase(r.n);
            else if (r.kind == Root::Prei) cur.prei.erase(r.n);
            else cur.im.resize(cur.im.size() - maxk);
        }
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), [](const PBWIndex& a, const PBWIndex& b) { return a.serialize() < b.serialize(); });
    return out;
}

int end_dim(const PBWIndex& c) {
    int e = 0;
    for (auto [a, x] : c.prep)
        for (auto [b, y] : c.prep) e += x * y * std::max(0, b - a + 1);
    for (auto [a, x] : c.prei)
        for (auto [b, y] : c.prei) e += x * y * std::max(0, a - b + 1);
    int w = partition_size(c.im);
    e += w;
    DimVector dp, di;
    for (auto [n, k] : c.prep) dp = dp + DimVector{n + 1, n} * k;
    for (auto [n, k] : c.prei) di = di + DimVector{n, n + 1} * k;
    DimVector dw{w, w};
    e += euler_form(dp, dw) + euler_form(dw, di) + euler_form(dp, di);
    return e;
}

int orbit_dim(const PBWIndex& c) {
    DimVector d = weight(c);
    return 2 * d.d1 * d.d2 - end_dim(c) + euler_form(d, d);
}

bool dominates(const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return sa == sb;
}

Cmp geometric_less(const PBWIndex& c, const PBWIndex& c2) {
    if (!(weight(c) == weight(c2))) throw std::invalid_argument("geometric_less: weight mismatch");
    if (c == c2) return Cmp::EqualIndex;
    int o1 = orbit_dim(c), o2 = orbit_dim(c2);
    if (o1 < o2) return Cmp::Less;
    if (o1 > o2) return Cmp::Greater;
    if (partition_size(c.im) != partition_size(c2.im) || c.im == c2.im) return Cmp::Incomparable;
    if (dominates(c.im, c2.im)) return Cmp::Less;
    if (dominates(c2.im, c.im)) return Cmp::Greater;
    return Cmp::Incomparable;
}

std::vector<PBWIndex> ordered_indices(const DimVector& d) {
    auto v = enumerate_indices(d);
    auto key = [](const PBWIndex& c) {
        Partition neg;
        for (int x : c.im) neg.push_back(-x);
        return std::make_tuple(orbit_dim(c), partition_size(c.im), neg, c.serialize());
    };
    std::stable_sort(v.begin(), v.end(), [&](const PBWIndex& a, const PBWIndex& b) { return key(a) < key(b); });
    return v;
}

}  // namespace hallbase
