#include <algorithm>
#include <stdexcept>

#include "hallbase/oracle.hpp"

namespace hallbase {

std::vector<int> Multipartition::dims() const {
    std::vector<int> d(rank, 0);
    for (int i = 0; i < rank; ++i)
        for (int l : parts[i])
            for (int k = 0; k < l; ++k) ++d[(i + k) % rank];
    return d;
}

int Multipartition::total() const {
    int t = 0;
    for (auto& p : parts) t += partition_size(p);
    return t;
}

bool Multipartition::empty() const {
    for (auto& p : parts)
        if (!p.empty()) return false;
    return true;
}

std::string Multipartition::serialize() const {
    std::string s = "{\"rank\":" + std::to_string(rank) + ",\"parts\":[";
    for (int i = 0; i < rank; ++i) {
        s += i ? ",[" : "[";
        for (size_t j = 0; j < parts[i].size(); ++j) s += (j ? "," : "") + std::to_string(parts[i][j]);
        s += "]";
    }
    return s + "]}";
}

std::string Multipartition::str() const {
    std::string s = "(";
    for (int i = 0; i < rank; ++i) {
        s += i ? ",(" : "(";
        for (size_t j = 0; j < parts[i].size(); ++j) s += (j ? "," : "") + std::to_string(parts[i][j]);
        s += ")";
    }
    return s + ")";
}

Multipartition Multipartition::zero(int rank) {
    Multipartition m;
    m.rank = rank;
    m.parts.assign(rank, {});
    return m;
}

std::vector<Multipartition> multipartitions_of(int rank, const std::vector<int>& dims) {
    int total = 0;
    for (int d : dims) total += d;
    std::vector<std::pair<int, int>> types;  // (top, length)
    for (int l = total; l >= 1; --l)
        for (int i = 0; i < rank; ++i) types.emplace_back(i, l);
    std::vector<Multipartition> out;
    Multipartition cur = Multipartition::zero(rank);
    auto sub_dims = [&](std::vector<int>& rem, int top, int len, int sign) {
        for (int k = 0; k < len; ++k) rem[(top + k) % rank] -= sign;
    };
    auto rec = [&](auto&& self, size_t t, std::vector<int>& rem) -> void {
        bool done = std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; });
        if (done) {
            out.push_back(cur);
            return;
        }
        if (t == types.size()) return;
        auto [top, len] = types[t];
        self(self, t + 1, rem);
        int k = 0;
        while (true) {
            sub_dims(rem, top, len, 1);
            if (std::any_of(rem.begin(), rem.end(), [](int x) { return x < 0; })) {
                sub_dims(rem, top, len, -1);
                break;
            }
            ++k;
            cur.parts[top].push_back(len);
            self(self, t + 1, rem);
        }
        for (int i = 0; i < k; ++i) {
            sub_dims(rem, top, len, -1);
            cur.parts[top].pop_back();
        }
    };
    std::vector<int> rem = dims;
    rec(rec, 0, rem);
    std::sort(out.begin(), out.end(), [](const Multipartition& a, const Multipartition& b) {
        return a.serialize() < b.serialize();
    });
    return out;
}

TubeOracle::TubeOracle(int rank, int q) : HallOracle(Quiver::cyclic_quiver(rank), q), n_(rank) {
    if (rank < 2) throw std::invalid_argument("tube rank must be at least 2");
}

TubeOracle& TubeOracle::get(int rank, int q) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<TubeOracle>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(rank, q);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<TubeOracle>(rank, q)).first;
    return *it->second;
}

FFRep TubeOracle::indec_rep(int top, int len) {
    FFRep r;
    r.q = q_;
    r.dims.assign(n_, 0);
    std::vector<int> slot(len);
    for (int k = 0; k < len; ++k) slot[k] = r.dims[(top + k) % n_]++;
    for (int a = 0; a < n_; ++a) r.mats.emplace_back(r.dims[(a + 1) % n_], r.dims[a]);
    for (int k = 0; k + 1 < len; ++k) {
        int v = (top + k) % n_;
        r.mats[v].at(slot[k + 1], slot[k]) = 1;
    }
    return r;
}

FFRep TubeOracle::module_rep(const Multipartition& p) {
    FFRep r = zero_rep(Q_, q_);
    for (int i = 0; i < n_; ++i)
        for (int l : p.parts[i]) r = direct_sum(r, indec_rep(i, l));
    return r;
}

Multipartition TubeOracle::classify_by_ranks(const FFRep& X) {
    int total = X.total();
    // rk[i][l] = rank of the path of length l starting at vertex i
    std::vector<std::vector<int>> rk(n_, std::vector<int>(total + 2, 0));
    for (int i = 0; i < n_; ++i) {
        Mat P = Mat::identity(X.dims[i]);
        rk[i][0] = X.dims[i];
        for (int l = 1; l <= total + 1; ++l) {
            int v = (i + l - 1) % n_;
            P = mat_mul(F_, X.mats[v], P);
            rk[i][l] = hallbase::rank(F_, P);
        }
    }
    Multipartition m = Multipartition::zero(n_);
    for (int i = 0; i < n_; ++i) {
        int prev = (i + n_ - 1) % n_;
        auto longer = [&](int l) { return rk[i][l] - rk[prev][l + 1]; };  // summands with top i, length > l
        for (int l = total; l >= 1; --l) {
            int c = longer(l - 1) - longer(l);
            for (int k = 0; k < c; ++k) m.parts[i].push_back(l);
        }
    }
    return m;
}

void TubeOracle::build_classes(ClassTable& t) {
    auto mps = multipartitions_of(n_, t.dims);
    for (auto& m : mps) {
        t.labels.push_back(m.serialize());
        FFRep r = module_rep(m);
        int ed = hom_dim(Q_, F_, r, r);
        t.end_dims.push_back(ed);
        // |Aut| = q^{dim End - sum s^2} prod |GL_s(F_q)|
        int sub = 0;
        Rat a = 1;
        for (int i = 0; i < n_; ++i) {
            std::map<int, int> mult;
            for (int l : m.parts[i]) ++mult[l];
            for (auto [l, s] : mult) {
                sub += s * s;
                a *= gl_order(s, Rat(q_));
            }
        }
        for (int k = 0; k < ed - sub; ++k) a *= q_;
        t.aut.push_back(a);
        t.reps.push_back(std::move(r));
    }
    mps_[t.dims] = std::move(mps);
}

int TubeOracle::identify_in(ClassTable& t, const FFRep& X) {
    int i = t.find(classify_by_ranks(X).serialize());
    if (i < 0) throw std::runtime_error("tube identify: class not found");
    return i;
}

std::vector<FFRep> TubeOracle::test_modules(const std::vector<int>&) { return {}; }

ClassRef TubeOracle::ref(const Multipartition& p) {
    std::vector<int> d = p.dims();
    const ClassTable& t = table(d);
    int i = t.find(p.serialize());
    if (i < 0) throw std::runtime_error("tube ref: class not found");
    return {d, i};
}

const Multipartition& TubeOracle::multipartition(const ClassRef& c) {
    table(c.dims);
    return mps_.at(c.dims).at(c.idx);
}

}  // namespace hallbase
