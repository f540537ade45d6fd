#include <algorithm>
#include <stdexcept>

#include "hallbase/oracle.hpp"

namespace hallbase {

namespace {

struct Indec {
    int kind;  // 0 prep, 1 regular, 2 prei
    int n;     // n for P/I, point id for R
    int len;   // length for R
    DimVector dim;
};

}  // namespace

KroneckerOracle::KroneckerOracle(int q) : HallOracle(Quiver::kronecker(), q) {}

KroneckerOracle& KroneckerOracle::get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<KroneckerOracle>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, std::make_unique<KroneckerOracle>(q)).first;
    return *it->second;
}

const std::vector<KPoint>& KroneckerOracle::points(int deg) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    for (int e = 1; e <= deg; ++e) {
        if (pts_.count(e)) continue;
        std::vector<KPoint> v;
        if (e == 1) {
            KPoint inf;
            inf.inf = true;
            inf.name = "inf";
            v.push_back(inf);
        }
        for (auto& p : monic_irreducibles(F_, e)) {
            KPoint k;
            k.deg = e;
            k.poly = p;
            k.name = "x^" + std::to_string(e);
            for (int i = e - 1; i >= 0; --i)
                if (p[i]) k.name += "+" + std::to_string(p[i]) + (i ? "x^" + std::to_string(i) : "");
            v.push_back(k);
        }
        for (size_t i = 0; i < v.size(); ++i) {
            pt_to_id_[{e, static_cast<int>(i)}] = static_cast<int>(id_to_pt_.size());
            id_to_pt_.emplace_back(e, static_cast<int>(i));
        }
        pts_[e] = std::move(v);
    }
    return pts_.at(deg);
}

const KPoint& KroneckerOracle::point(int id) {
    auto [e, i] = id_to_pt_.at(id);
    return pts_.at(e).at(i);
}

std::vector<int> KroneckerOracle::point_ids(int max_deg) {
    std::vector<int> ids;
    for (int e = 1; e <= max_deg; ++e) {
        const auto& v = points(e);
        for (size_t i = 0; i < v.size(); ++i) ids.push_back(pt_to_id_.at({e, static_cast<int>(i)}));
    }
    return ids;
}

FFRep KroneckerOracle::prep_rep(int n) {
    FFRep r;
    r.q = q_;
    r.dims = {n + 1, n};
    Mat s(n + 1, n), t(n + 1, n);
    for (int i = 0; i < n; ++i) {
        s.at(i, i) = 1;
        t.at(i + 1, i) = 1;
    }
    r.mats = {s, t};
    return r;
}

FFRep KroneckerOracle::prei_rep(int n) {
    FFRep r;
    r.q = q_;
    r.dims = {n, n + 1};
    Mat s(n, n + 1), t(n, n + 1);
    for (int i = 0; i < n; ++i) {
        s.at(i, i) = 1;
        t.at(i, i + 1) = 1;
    }
    r.mats = {s, t};
    return r;
}

FFRep KroneckerOracle::reg_rep(int point_id, int l) {
    const KPoint& p = point(point_id);
    FFRep r;
    r.q = q_;
    int n = p.deg * l;
    r.dims = {n, n};
    if (p.inf) {
        r.mats = {companion(F_, std::vector<Elt>(l, 0)), Mat::identity(l)};
    } else {
        r.mats = {Mat::identity(n), companion(F_, poly_power(F_, p.poly, l))};
    }
    return r;
}

DimVector KroneckerOracle::dim_of(const KModule& m) {
    DimVector d;
    for (auto [n, k] : m.prep) d = d + DimVector{n + 1, n} * k;
    for (auto& [id, part] : m.reg) d = d + DimVector{1, 1} * (point(id).deg * partition_size(part));
    for (auto [n, k] : m.prei) d = d + DimVector{n, n + 1} * k;
    return d;
}

FFRep KroneckerOracle::module_rep(const KModule& m) {
    FFRep r = zero_rep(Q_, q_);
    for (auto [n, k] : m.prep)
        for (int i = 0; i < k; ++i) r = direct_sum(r, prep_rep(n));
    for (auto& [id, part] : m.reg)
        for (int l : part) r = direct_sum(r, reg_rep(id, l));
    for (auto [n, k] : m.prei)
        for (int i = 0; i < k; ++i) r = direct_sum(r, prei_rep(n));
    return r;
}

std::string KroneckerOracle::module_label(const KModule& m) {
    std::vector<std::string> parts;
    for (auto [n, k] : m.prep) parts.push_back("P" + std::to_string(n) + (k > 1 ? "^" + std::to_string(k) : ""));
    for (auto& [id, part] : m.reg) {
        std::string s = "R[" + point(id).name + "](";
        for (size_t i = 0; i < part.size(); ++i) s += (i ? "," : "") + std::to_string(part[i]);
        parts.push_back(s + ")");
    }
    for (auto it = m.prei.rbegin(); it != m.prei.rend(); ++it)
        parts.push_back("I" + std::to_string(it->first) + (it->second > 1 ? "^" + std::to_string(it->second) : ""));
    if (parts.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
    return s;
}

int KroneckerOracle::module_end_dim(const KModule& m) {
    std::vector<Indec> sum;
    for (auto [n, k] : m.prep)
        for (int i = 0; i < k; ++i) sum.push_back({0, n, 0, {}});
    for (auto& [id, part] : m.reg)
        for (int l : part) sum.push_back({1, id, l, {}});
    for (auto [n, k] : m.prei)
        for (int i = 0; i < k; ++i) sum.push_back({2, n, 0, {}});
    int e = 0;
    for (auto& x : sum)
        for (auto& y : sum) {
            if (x.kind == 0 && y.kind == 0) e += std::max(0, y.n - x.n + 1);
            else if (x.kind == 0 && y.kind == 1) e += point(y.n).deg * y.len;
            else if (x.kind == 0 && y.kind == 2) e += x.n + y.n;
            else if (x.kind == 1 && y.kind == 1) e += x.n == y.n ? point(x.n).deg * std::min(x.len, y.len) : 0;
            else if (x.kind == 1 && y.kind == 2) e += point(x.n).deg * x.len;
            else if (x.kind == 2 && y.kind == 2) e += std::max(0, x.n - y.n + 1);
        }
    return e;
}

QPoly KroneckerOracle::aut_poly(const KModule& m) {
    int dim_end = module_end_dim(m);
    int sub = 0;
    QPoly r(1);
    for (auto [n, k] : m.prep) {
        sub += k * k;
        r *= gl_order_poly(k, 1);
    }
    for (auto [n, k] : m.prei) {
        sub += k * k;
        r *= gl_order_poly(k, 1);
    }
    for (auto& [id, part] : m.reg) {
        int e = point(id).deg;
        std::map<int, int> mult;
        for (int l : part) ++mult[l];
        for (auto [l, s] : mult) {
            sub += s * s * e;
            r *= gl_order_poly(s, e);
        }
    }
    return r * QPoly::monomial(dim_end - sub);
}

void KroneckerOracle::build_classes(ClassTable& t) {
    DimVector d{t.dims[0], t.dims[1]};
    std::vector<Indec> ind;
    for (int n = 0; n + 1 <= d.d1 && n <= d.d2; ++n) ind.push_back({0, n, 0, {n + 1, n}});
    int mr = std::min(d.d1, d.d2);
    for (int id : point_ids(mr)) {
        int e = point(id).deg;
        for (int l = 1; e * l <= mr; ++l) ind.push_back({1, id, l, {e * l, e * l}});
    }
    for (int n = 0; n <= d.d1 && n + 1 <= d.d2; ++n) ind.push_back({2, n, 0, {n, n + 1}});
    std::vector<KModule> mods;
    KModule cur;
    auto rec = [&](auto&& self, size_t i, DimVector rem) -> void {
        if (rem.d1 == 0 && rem.d2 == 0) {
            mods.push_back(cur);
            return;
        }
        if (i == ind.size()) return;
        const Indec& x = ind[i];
        int k = 0;
        self(self, i + 1, rem);
        while (true) {
            rem = rem - x.dim;
            if (!rem.nonneg()) break;
            ++k;
            if (x.kind == 0) cur.prep[x.n] = k;
            else if (x.kind == 2) cur.prei[x.n] = k;
            else cur.reg[x.n].push_back(x.len);
            self(self, i + 1, rem);
        }
        if (k > 0) {
            if (x.kind == 0) cur.prep.erase(x.n);
            else if (x.kind == 2) cur.prei.erase(x.n);
            else {
                auto& p = cur.reg[x.n];
                p.resize(p.size() - k);
                if (p.empty()) cur.reg.erase(x.n);
            }
        }
    };
    rec(rec, 0, d);
    // partitions were built in increasing-length order of the indecomposable list; store them decreasing
    for (auto& m : mods)
        for (auto& [id, p] : m.reg) std::sort(p.rbegin(), p.rend());
    for (auto& m : mods) {
        t.labels.push_back(module_label(m));
        FFRep r = module_rep(m);
        int ed = hom_dim(Q_, F_, r, r);
        t.end_dims.push_back(ed);
        t.aut.push_back(aut_poly(m).eval(Rat(q_)));
        t.reps.push_back(std::move(r));
    }
    modules_[t.dims] = std::move(mods);
}

std::vector<FFRep> KroneckerOracle::test_modules(const std::vector<int>& dims) {
    DimVector d{dims[0], dims[1]};
    std::vector<FFRep> out;
    for (int n = 0; n + 1 <= d.d1 && n <= d.d2; ++n) out.push_back(prep_rep(n));
    int mr = std::min(d.d1, d.d2);
    for (int id : point_ids(mr)) {
        int e = point(id).deg;
        for (int l = 1; e * l <= mr; ++l) out.push_back(reg_rep(id, l));
    }
    for (int n = 0; n <= d.d1 && n + 1 <= d.d2; ++n) out.push_back(prei_rep(n));
    return out;
}

ClassRef KroneckerOracle::ref(const KModule& m) {
    DimVector d = dim_of(m);
    std::vector<int> dims = dv(d);
    const ClassTable& t = table(dims);
    int i = t.find(module_label(m));
    if (i < 0) throw std::runtime_error("unknown Kronecker module " + module_label(m));
    return {dims, i};
}

const KModule& KroneckerOracle::module(const ClassRef& c) {
    table(c.dims);
    return modules_.at(c.dims).at(c.idx);
}

bool KroneckerOracle::is_regular(const ClassRef& c) {
    const KModule& m = module(c);
    return m.prep.empty() && m.prei.empty();
}

HallVec KroneckerOracle::regular_sum(int k) {
    std::vector<int> dims{k, k};
    const ClassTable& t = table(dims);
    HallVec r;
    for (int i = 0; i < static_cast<int>(t.reps.size()); ++i)
        if (is_regular({dims, i}) && k > 0) r.emplace(ClassRef{dims, i}, QuadSqrt(q_, 1, 0));
    if (k == 0) r.emplace(ClassRef{dims, 0}, QuadSqrt(q_, 1, 0));
    return r;
}

HallVec KroneckerOracle::all_sum(const DimVector& d) {
    std::vector<int> dims = dv(d);
    const ClassTable& t = table(dims);
    HallVec r;
    for (int i = 0; i < static_cast<int>(t.reps.size()); ++i) r.emplace(ClassRef{dims, i}, QuadSqrt(q_, 1, 0));
    return r;
}

HallVec KroneckerOracle::prep_sum(const DimVector& d, bool nonzero_only) {
    std::vector<int> dims = dv(d);
    HallVec r;
    if (!d.nonneg()) return r;
    const ClassTable& t = table(dims);
    for (int i = 0; i < static_cast<int>(t.reps.size()); ++i) {
        const KModule& m = module({dims, i});
        if (m.reg.empty() && m.prei.empty() && (!nonzero_only || !m.prep.empty()))
            r.emplace(ClassRef{dims, i}, QuadSqrt(q_, 1, 0));
    }
    return r;
}

HallVec KroneckerOracle::prei_sum(const DimVector& d) {
    std::vector<int> dims = dv(d);
    HallVec r;
    if (!d.nonneg()) return r;
    const ClassTable& t = table(dims);
    for (int i = 0; i < static_cast<int>(t.reps.size()); ++i) {
        const KModule& m = module({dims, i});
        if (m.reg.empty() && m.prep.empty() && !m.prei.empty()) r.emplace(ClassRef{dims, i}, QuadSqrt(q_, 1, 0));
    }
    return r;
}

}  // namespace hallbase
