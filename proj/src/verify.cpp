#include "hallbase/verify.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

namespace hallbase {

namespace {

std::mutex spec_mu;
std::map<std::pair<int, std::string>, HallVec> spec_cache;

KModule prep_module(int n, int k) {
    KModule m;
    m.prep[n] = k;
    return m;
}

KModule prei_module(int n, int k) {
    KModule m;
    m.prei[n] = k;
    return m;
}

HallVec one(KroneckerOracle& K) { return K.u(K.ref(KModule{})); }

HallVec E_imag(KroneckerOracle& K, int k) { return K.scale(K.regular_sum(k), K.v_pow(-2 * k)); }

HallVec E_P(KroneckerOracle& K, int n) { return K.bracket(K.ref(prep_module(n, 1))); }
HallVec E_I(KroneckerOracle& K, int n) { return K.bracket(K.ref(prei_module(n, 1))); }

HallVec mul(KroneckerOracle& K, std::initializer_list<HallVec> xs) {
    HallVec r = one(K);
    for (auto& x : xs) r = K.mul_twisted(r, x);
    return r;
}

// n-th divided power computed from plain products
HallVec divided_power(KroneckerOracle& K, const HallVec& x, int n) {
    HallVec r = one(K);
    for (int i = 0; i < n; ++i) r = K.mul_twisted(r, x);
    return K.scale(r, K.scalar(qfactorial(n)).inverse());
}

// sum of <M> over nonzero preprojective (or preinjective) classes of dimension d, times v^{-dim End M} when asked
HallVec bracket_sum(KroneckerOracle& K, const DimVector& d, bool prep, int end_weight) {
    HallVec r;
    if (d.d1 < 0 || d.d2 < 0) return r;
    auto dims = KroneckerOracle::dv(d);
    const ClassTable& t = K.table(dims);
    for (int i = 0; i < static_cast<int>(t.labels.size()); ++i) {
        ClassRef c{dims, i};
        const KModule& m = K.module(c);
        if (!m.reg.empty()) continue;
        if (prep ? (!m.prei.empty() || m.prep.empty()) : (!m.prep.empty() || m.prei.empty())) continue;
        r = K.add(r, K.scale(K.bracket(c), K.v_pow(end_weight * K.end_dim(c))));
    }
    return r;
}

struct Checker {
    KroneckerOracle& K;
    RelationReport rep;
    void check(const std::string& what, const HallVec& a, const HallVec& b) {
        ++rep.instances;
        std::string d = first_difference(K, a, b);
        if (d.empty()) return;
        rep.equal = false;
        rep.detail += (rep.detail.empty() ? "" : "; ") + what + ": " + d;
    }
};

void regular_recursion(Checker& c) {
    auto& K = c.K;
    HallVec u1 = K.u(K.ref(prep_module(0, 1))), u2 = K.u(K.ref(prei_module(0, 1)));
    HallVec R = K.regular_sum(1);
    c.check("R_delta", R, K.sub(K.mul(u2, u1), K.mul(u1, u2)));
    QuadSqrt inv = QuadSqrt(K.q(), Rat(1, K.q() + 1), 0);
    QuadSqrt qq(K.q(), K.q(), 0);
    for (int n = 1; n <= 2; ++n) {
        HallVec p = K.u(K.ref(prep_module(n - 1, 1)));
        HallVec lhs = K.u(K.ref(prep_module(n, 1)));
        HallVec rhs = K.scale(K.sub(K.mul(R, p), K.scale(K.mul(p, R), qq)), inv);
        c.check("u_(" + std::to_string(n + 1) + "," + std::to_string(n) + ")", lhs, rhs);
        HallVec i = K.u(K.ref(prei_module(n - 1, 1)));
        lhs = K.u(K.ref(prei_module(n, 1)));
        rhs = K.scale(K.sub(K.mul(i, R), K.scale(K.mul(R, i), qq)), inv);
        c.check("u_(" + std::to_string(n) + "," + std::to_string(n + 1) + ")", lhs, rhs);
    }
}

void real_commutation(Checker& c) {
    auto& K = c.K;
    QuadSqrt v2 = K.v_pow(2);
    c.check("E(2,1)*E1", mul(K, {E_P(K, 1), E_P(K, 0)}), K.scale(mul(K, {E_P(K, 0), E_P(K, 1)}), v2));
    c.check("E2*E(1,2)", mul(K, {E_I(K, 0), E_I(K, 1)}), K.scale(mul(K, {E_I(K, 1), E_I(K, 0)}), v2));
}

void real_pair_commutator(Checker& c) {
    auto& K = c.K;
    for (int n = 1; n <= 3; ++n) {
        HallVec sym = specialize_element(K, e_tilde(n));
        for (int r = 0; r < n; ++r) {
            int s = n - 1 - r;
            HallVec lhs = K.sub(mul(K, {E_I(K, r), E_P(K, s)}), K.scale(mul(K, {E_P(K, s), E_I(K, r)}), K.v_pow(-2)));
            c.check("r=" + std::to_string(r) + ",s=" + std::to_string(s), lhs, sym);
        }
    }
}

void imaginary_recursion(Checker& c) {
    auto& K = c.K;
    std::map<int, HallVec> tilde, E;
    E[0] = one(K);
    for (int k = 1; k <= 3; ++k) {
        tilde[k] = K.sub(mul(K, {E_I(K, k - 1), E_P(K, 0)}), K.scale(mul(K, {E_P(K, 0), E_I(K, k - 1)}), K.v_pow(-2)));
        HallVec s;
        for (int j = 1; j <= k; ++j) s = K.add(s, K.scale(K.mul_twisted(tilde[j], E[k - j]), K.v_pow(j - k)));
        E[k] = K.scale(s, K.scalar(qint(k)).inverse());
        c.check("k=" + std::to_string(k), E[k], E_imag(K, k));
    }
}

void imaginary_real_relations(Checker& c) {
    auto& K = c.K;
    for (int n = 1; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m) {
            std::string tag = "n=" + std::to_string(n) + ",m=" + std::to_string(m);
            HallVec rhs;
            for (int k = 0; k <= n; ++k)
                rhs = K.add(rhs, K.scale(mul(K, {E_P(K, m + n - k), k ? E_imag(K, k) : one(K)}), K.scalar(qint(n + 1 - k))));
            c.check(tag + " first", mul(K, {E_imag(K, n), E_P(K, m)}), rhs);
            if (m == 0) continue;
            rhs.clear();
            for (int k = 0; k <= n; ++k)
                rhs = K.add(rhs, K.scale(mul(K, {k ? E_imag(K, k) : one(K), E_I(K, m + n - k)}), K.scalar(qint(n + 1 - k))));
            c.check(tag + " second", mul(K, {E_I(K, m), E_imag(K, n)}), rhs);
        }
}

HallVec chevalley_monomial(KroneckerOracle& K, int a, int b) {
    return K.mul_twisted(divided_power(K, E_I(K, 0), b), divided_power(K, E_P(K, 0), a));
}

// the three expansions; shift = 0 keeps the printed exponents, shift = 1 raises every
// non-leading exponent of the first two by one and reads (t+l)(p-1) in the second with a minus sign
void chevalley_expansion(Checker& c, int shift) {
    auto& K = c.K;
    for (int n = 1; n <= 2; ++n) {
        // E_{(n+1,n)}
        HallVec rhs = E_P(K, n);
        for (int l = 1; l <= n; ++l)
            rhs = K.add(rhs, K.scale(mul(K, {E_P(K, n - l), E_imag(K, l)}), K.v_pow(-l - 1 + shift)));
        for (int l = 0; l <= n - 1; ++l)
            for (int p = 1; p <= n + 1; ++p)
                for (int s = 0; s <= n; ++s) {
                    int t = n - s - l - (p - 1);
                    if (t < 0) continue;
                    HallVec P = bracket_sum(K, {s + p, s}, true, -1), I = bracket_sum(K, {t, t + p - 1}, false, -1);
                    if (P.empty() || I.empty()) continue;
                    rhs = K.add(rhs, K.scale(mul(K, {P, l ? E_imag(K, l) : one(K), I}), K.v_pow(-p * (l + t) - (s + l) * (p - 1) + shift)));
                }
        c.check("first n=" + std::to_string(n), chevalley_monomial(K, n + 1, n), rhs);
        // E_{(n,n+1)}
        rhs = E_I(K, n);
        for (int l = 1; l <= n; ++l)
            rhs = K.add(rhs, K.scale(mul(K, {E_imag(K, l), E_I(K, n - l)}), K.v_pow(-l - 1 + shift)));
        for (int l = 0; l <= n - 1; ++l)
            for (int p = 1; p <= n + 1; ++p)
                for (int s = 0; s <= n; ++s) {
                    int t = n - s - l - (p - 1);
                    if (t < 0) continue;
                    HallVec P = bracket_sum(K, {s + p - 1, s}, true, -1), I = bracket_sum(K, {t, t + p}, false, -1);
                    if (P.empty() || I.empty()) continue;
                    rhs = K.add(rhs, K.scale(mul(K, {P, l ? E_imag(K, l) : one(K), I}), K.v_pow(-p * (l + s) + (shift ? -1 : 1) * (t + l) * (p - 1) + shift)));
                }
        c.check("second n=" + std::to_string(n), chevalley_monomial(K, n, n + 1), rhs);
        // E_{(n,n)}
        rhs = E_imag(K, n);
        for (int l = 0; l <= n - 1; ++l)
            for (int p = 1; p <= n; ++p)
                for (int s = 0; s <= n; ++s) {
                    int t = n - s - l - p;
                    if (t < 0) continue;
                    HallVec P = bracket_sum(K, {s + p, s}, true, -1), I = bracket_sum(K, {t, t + p}, false, -1);
                    if (P.empty() || I.empty()) continue;
                    rhs = K.add(rhs, K.scale(mul(K, {P, l ? E_imag(K, l) : one(K), I}), K.v_pow(-p * (s + 2 * l + t))));
                }
        c.check("third n=" + std::to_string(n), chevalley_monomial(K, n, n), rhs);
    }
}

// the same left sides against the straightened monomials
void chevalley_engine(Checker& c) {
    auto& K = c.K;
    for (int n = 1; n <= 2; ++n) {
        for (auto [a, b] : {std::pair{n + 1, n}, std::pair{n, n + 1}, std::pair{n, n}}) {
            std::string tag = "E(" + std::to_string(a) + "," + std::to_string(b) + ")";
            c.check(tag, chevalley_monomial(K, a, b), specialize_element(K, monomial_E({a, b})));
        }
    }
}

const std::map<std::string, std::function<void(Checker&)>>& registry() {
    static const std::map<std::string, std::function<void(Checker&)>> r = {
        {"L3.3", regular_recursion},   {"L3.8", real_commutation},   {"L3.9", real_pair_commutator},
        {"L3.11", imaginary_recursion}, {"L3.12", imaginary_real_relations}, {"L3.13", [](Checker& c) { chevalley_expansion(c, 0); }},
        {"L3.13-corrected", [](Checker& c) { chevalley_expansion(c, 1); }},
        {"L3.13-engine", chevalley_engine},
    };
    return r;
}

}  // namespace

HallVec specialize_index(KroneckerOracle& K, const PBWIndex& c) {
    auto key = std::make_pair(K.q(), c.serialize());
    {
        std::lock_guard<std::mutex> lock(spec_mu);
        auto it = spec_cache.find(key);
        if (it != spec_cache.end()) return it->second;
    }
    HallVec r = one(K);
    for (auto [n, k] : c.prep) r = K.mul_twisted(r, K.bracket(K.ref(prep_module(n, k))));
    for (int w : c.im) r = K.mul_twisted(r, E_imag(K, w));
    for (auto it = c.prei.rbegin(); it != c.prei.rend(); ++it)
        r = K.mul_twisted(r, K.bracket(K.ref(prei_module(it->first, it->second))));
    std::lock_guard<std::mutex> lock(spec_mu);
    return spec_cache.emplace(key, r).first->second;
}

HallVec specialize_element(KroneckerOracle& K, const AlgebraElement& x) {
    HallVec r;
    for (auto& [c, f] : x.terms()) r = K.add(r, K.scale(specialize_index(K, c), K.scalar(f)));
    return r;
}

std::string first_difference(KroneckerOracle& K, const HallVec& a, const HallVec& b) {
    HallVec d = K.sub(a, b);
    if (d.empty()) return "";
    auto& [c, v] = *d.begin();
    auto ia = a.find(c), ib = b.find(c);
    std::string sa = ia == a.end() ? "0" : ia->second.str();
    std::string sb = ib == b.end() ? "0" : ib->second.str();
    return "u_[" + K.label(c) + "]: " + sa + " vs " + sb;
}

const std::vector<std::string>& relation_ids() {
    static const std::vector<std::string> ids = {"L3.3", "L3.8", "L3.9", "L3.11", "L3.12", "L3.13", "L3.13-corrected", "L3.13-engine"};
    return ids;
}

bool known_relation(const std::string& id) { return registry().count(id) > 0; }

RelationReport verify_relation(const std::string& id, int q) {
    auto it = registry().find(id);
    if (it == registry().end()) throw std::invalid_argument("unknown relation id: " + id);
    Checker c{KroneckerOracle::get(q), {id, q, true, 0, ""}};
    it->second(c);
    return c.rep;
}

std::vector<PBWIndex> generator_indices(const DimVector& max) {
    std::vector<PBWIndex> out;
    for (int n = 0; n + 1 <= max.d1 && n <= max.d2; ++n)
        for (int k = 1; (n + 1) * k <= max.d1 && n * k <= max.d2; ++k) {
            PBWIndex c;
            c.prep[n] = k;
            out.push_back(c);
        }
    for (int k = 1; k <= std::min(max.d1, max.d2); ++k) {
        PBWIndex c;
        c.im = {k};
        out.push_back(c);
    }
    for (int n = 0; n <= max.d1 && n + 1 <= max.d2; ++n)
        for (int k = 1; n * k <= max.d1 && (n + 1) * k <= max.d2; ++k) {
            PBWIndex c;
            c.prei[n] = k;
            out.push_back(c);
        }
    return out;
}

EquivalenceReport product_equivalence(int q, const DimVector& max) {
    KroneckerOracle& K = KroneckerOracle::get(q);
    EquivalenceReport rep;
    rep.q = q;
    auto gens = generator_indices(max);
    for (auto& x : gens)
        for (auto& y : gens) {
            if (!(weight(x) + weight(y)).leq(max)) continue;
            ++rep.pairs;
            AlgebraElement prod = multiply(basis_element(x), basis_element(y));
            HallVec sym = specialize_element(K, prod);
            HallVec ora = K.mul_twisted(specialize_index(K, x), specialize_index(K, y));
            std::string d = first_difference(K, sym, ora);
            if (!d.empty()) {
                if (rep.failures == 0) rep.first_failure = "[" + x.shorthand() + "]*[" + y.shorthand() + "]: " + d;
                ++rep.failures;
            }
        }
    return rep;
}

}  // namespace hallbase
