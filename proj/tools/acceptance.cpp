// Acceptance run: one PASS/FAIL line per criterion. All algebraic comparisons are exact.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "hallbase/canonical.hpp"
#include "hallbase/symfunc.hpp"
#include "hallbase/tube.hpp"
#include "hallbase/verify.hpp"

using namespace hallbase;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << s;
    return os.str();
}

std::vector<DimVector> weights_up_to(int total) {
    std::vector<DimVector> out;
    for (int s = 1; s <= total; ++s)
        for (int a = 0; a <= s; ++a) out.push_back({a, s - a});
    return out;
}

std::vector<std::vector<int>> tube_dims(int rank, int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> d(rank, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == rank) {
            int t = 0;
            for (int x : d) t += x;
            if (t) out.push_back(d);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            d[i] = x;
            rec(i + 1, left - x);
        }
    };
    rec(0, total);
    return out;
}

Outcome product_equivalence_suite() {
    Outcome o;
    int pairs = 0;
    for (int q : {2, 3, 4}) {
        EquivalenceReport r = product_equivalence(q, {3, 3});
        pairs += r.pairs;
        if (r.failures) o.fail("q=" + std::to_string(q) + ": " + std::to_string(r.failures) + " failures, first " + r.first_failure);
    }
    if (o.pass) o.detail = std::to_string(pairs) + " ordered generator pairs over F2, F3, F4 equal";
    return o;
}

Outcome relation_suite(bool& corrected_ok) {
    Outcome o;
    std::vector<std::string> failed;
    for (const char* id : {"L3.3", "L3.8", "L3.11", "L3.12", "L3.13"})
        for (int q : {2, 3}) {
            RelationReport r = verify_relation(id, q);
            if (!r.equal) {
                failed.push_back(std::string(id) + "@F" + std::to_string(q));
                o.pass = false;
            }
        }
    corrected_ok = true;
    for (int q : {2, 3}) corrected_ok = corrected_ok && verify_relation("L3.13-corrected", q).equal;
    std::string list;
    for (auto& f : failed) list += (list.empty() ? "" : " ") + f;
    o.detail = o.pass ? "L3.3 L3.8 L3.11 L3.12 L3.13 equal over F2 and F3"
                      : "differ: " + list + "; L3.13-corrected " + (corrected_ok ? "equal" : "differs") + " over F2 and F3";
    return o;
}

Outcome triangularity_suite() {
    Outcome o;
    int n = 0;
    for (auto& d : weights_up_to(8)) {
        auto idx = ordered_indices(d);
        Matrix H = kronecker_H(idx);
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) {
                const RatFunc& x = H[i][j];
                if (!integral_laurent(x)) o.fail(d.str() + ": non-integral entry " + x.str());
                if (i == j && !x.is_one()) o.fail(d.str() + ": diagonal " + x.str());
                if (i != j && !x.is_zero() && geometric_less(idx[j], idx[i]) != Cmp::Less)
                    o.fail(d.str() + ": entry outside the order at [" + idx[i].shorthand() + "], [" + idx[j].shorthand() + "]");
            }
        n += static_cast<int>(idx.size());
    }
    if (o.pass) o.detail = std::to_string(n) + " monomial rows over all weights with d1+d2<=8";
    return o;
}

Outcome weight_delta_suite() {
    Outcome o;
    KroneckerCanonical kc = kronecker_canonical({1, 1});
    PBWIndex p0, i0;
    p0.prep[0] = 1;
    i0.prei[0] = 1;
    // E_1 = E_{P0} (simple at the sink), E_2 = E_{I0}
    AlgebraElement e12 = multiply(basis_element(p0), basis_element(i0));
    AlgebraElement e21 = multiply(basis_element(i0), basis_element(p0));
    std::set<std::string> want = {e12.str(), e21.str()}, got;
    for (auto& e : kc.elements) got.insert(e.str());
    if (kc.elements.size() != 2 || got != want) o.fail("canonical set differs from {E1*E2, E2*E1}");
    int delta = -1, pair = -1;
    for (size_t i = 0; i < kc.indices.size(); ++i) (kc.indices[i].im.empty() ? pair : delta) = static_cast<int>(i);
    if (delta < 0 || pair < 0 || kc.data.Zeta[delta][pair] != RatFunc(Laurent::monomial(-2, 1)))
        o.fail("zeta entry at (delta, real pair) is not v^-2");
    if (o.pass) o.detail = "{E1*E2, E2*E1}, zeta = v^-2";
    return o;
}

Outcome canonical_suite() {
    Outcome o;
    int n = 0;
    for (auto& d : weights_up_to(8)) {
        KroneckerCanonical kc = kronecker_canonical(d);
        const Matrix& Z = kc.data.Zeta;
        if (!bar_invariant(Z, kc.data.Omega)) o.fail(d.str() + ": zeta is not bar invariant");
        for (size_t i = 0; i < Z.size(); ++i) {
            if (!(kc.elements[i].coeff(kc.indices[i]) == RatFunc(1))) o.fail(d.str() + ": leading coefficient");
            for (auto& [c, f] : kc.elements[i].terms())
                if (!(c == kc.indices[i]) && !in_vinv_integral(f))
                    o.fail(d.str() + ": coefficient " + f.str() + " not in v^-1 Z[v^-1]");
        }
        n += static_cast<int>(Z.size());
    }
    if (o.pass) o.detail = std::to_string(n) + " canonical elements over all weights with d1+d2<=8";
    return o;
}

Outcome tube_suite() {
    Outcome o;
    int words = 0, weights = 0;
    for (int rank : {2, 3})
        for (auto& dims : tube_dims(rank, 6)) {
            TubeCanonical tc = tube_canonical(rank, dims);
            ++weights;
            for (size_t i = 0; i < tc.indices.size(); ++i) {
                ++words;
                if (!(filtration_polynomial(tc.indices[i], tc.words[i]) == QPoly(1)))
                    o.fail(tc.indices[i].str() + ": g along " + tc.words[i].str() + " is not 1");
                for (size_t j = 0; j < tc.indices.size(); ++j) {
                    if (!integral_laurent(tc.data.H[i][j])) o.fail(tc.indices[i].str() + ": H entry not in Z[v,v^-1]");
                    if (i != j && !in_vinv_integral(tc.data.Zeta[i][j]))
                        o.fail(tc.indices[i].str() + ": zeta entry " + tc.data.Zeta[i][j].str() + " not in v^-1 Z[v^-1]");
                }
            }
        }
    if (o.pass) o.detail = std::to_string(words) + " distinguished words, " + std::to_string(weights) + " dimension vectors";
    return o;
}

Outcome inner_product_suite() {
    Outcome o;
    RatFunc ee = imag_inner({1}, {1});
    RatFunc want(Laurent::monomial(2, 1) + Laurent(1), Laurent::monomial(2, 1) - Laurent(1));
    if (!(ee == want)) o.fail("(E_delta, E_delta) = " + ee.str());
    auto at_q2 = [](const Laurent& p) {
        Rat s = 0;
        for (auto& [e, c] : p.terms()) {
            if (e % 2) return Rat(-1000);
            s += c * (e >= 0 ? Rat(1 << (e / 2)) : Rat(1, 1 << (-e / 2)));
        }
        return s;
    };
    if (at_q2(ee.num()) != 3 * at_q2(ee.den())) o.fail("(E_delta, E_delta) at q=2 is not 3");
    for (int n = 1; n <= 4; ++n) {
        if (!congruent_mod_vinv(imag_inner({n}, {n}), RatFunc(1))) o.fail("(E_n, E_n) not 1 for n=" + std::to_string(n));
        AlgebraElement e = e_prime(n);
        if (!congruent_mod_vinv(inner(e, e), RatFunc(Laurent(Rat(1, n))))) o.fail("(E'_n, E'_n) not 1/n for n=" + std::to_string(n));
        for (auto& w : partitions_of(n))
            for (auto& w2 : partitions_of(n)) {
                RatFunc t = w == w2 ? RatFunc(Laurent(z_value(w))) : RatFunc();
                if (!congruent_mod_vinv(inner(p_element(w), p_element(w2)), t)) o.fail("(P_w, P_w') for |w|=" + std::to_string(n));
            }
    }
    if (o.pass) o.detail = "(E_delta,E_delta) = " + ee.str() + "; congruences hold for n,|w|<=4";
    return o;
}

Outcome newton_suite() {
    Outcome o;
    for (int n = 1; n <= 4; ++n)
        if (!(e_prime(n) == e_prime_newton(n))) o.fail("n=" + std::to_string(n));
    if (o.pass) o.detail = "Gram-Schmidt and power-sum images agree for n<=4";
    return o;
}

Outcome prime_suite() {
    Outcome o;
    int n = 0;
    for (auto& d : weights_up_to(6)) {
        PrimeCanonical pc = canonical_prime(d);
        for (size_t i = 0; i < pc.gram.size(); ++i)
            for (size_t j = 0; j < pc.gram.size(); ++j)
                if (!congruent_mod_vinv(pc.gram[i][j], RatFunc(i == j ? 1 : 0))) o.fail(d.str() + ": Gram entry " + pc.gram[i][j].str());
        n += static_cast<int>(pc.gram.size());
    }
    if (o.pass) o.detail = std::to_string(n) + " elements over all weights with d1+d2<=6";
    return o;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Outcome determinism_suite(const std::string& exe) {
    Outcome o;
    if (exe.empty() || !fs::exists(exe)) {
        o.fail("hallbase executable not found (pass --hallbase)");
        return o;
    }
    fs::path root = fs::temp_directory_path() / ("hallbase-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(root);
    const std::vector<std::pair<std::string, std::string>> jobs = {
        {"kronecker-1-1", "kronecker canonical --dim 1,1 --emit-transitions"},
        {"kronecker-3-2", "kronecker canonical --dim 3,2 --emit-transitions"},
        {"kronecker-3-3", "kronecker canonical --dim 3,3 --emit-transitions --format csv"},
        {"tube-3", "tube canonical --rank 3 --dim 2,1,1 --emit-transitions"},
        {"gram-2-2", "gram --dim 2,2"},
        {"prime-2-2", "canonical-prime --dim 2,2 --format pretty"},
        {"verify-2", "verify --q 2 --max-dim 2,2"},
        {"multiply", "multiply --lhs I1 --rhs P0^2"},
    };
    // runs 1 and 2 are cold with separate caches, run 3 reuses the cache of run 1
    for (int run : {1, 2, 3}) {
        fs::path cache = root / ("cache" + std::to_string(run == 3 ? 1 : run));
        fs::path dir = root / ("run" + std::to_string(run));
        fs::create_directories(dir);
        for (auto& [name, args] : jobs) {
            std::string cmd = quote(exe) + " " + args + " --cache-dir " + quote(cache.string()) + " --out " +
                              quote((dir / name).string()) + " 2>/dev/null";
            if (std::system(cmd.c_str()) != 0) o.fail("run " + std::to_string(run) + ": " + name + " exited nonzero");
        }
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    for (auto& [name, args] : jobs) {
        std::string a = slurp(root / "run1" / name);
        if (a.empty()) o.fail(name + ": empty artifact");
        if (a != slurp(root / "run2" / name)) o.fail(name + ": cold runs differ");
        if (a != slurp(root / "run3" / name)) o.fail(name + ": warm cache differs from cold run");
    }
    fs::remove_all(root);
    if (o.pass) o.detail = std::to_string(jobs.size()) + " artifacts byte-identical across two cold runs and a warm-cache run";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria", "acceptance"};
    std::string exe;
    std::vector<int> expect_fail, only;
    app.add_option("--hallbase", exe, "path of the hallbase executable");
    app.add_option("--expect-fail", expect_fail, "criteria documented as failing; exit 0 only if exactly these fail")->delimiter(',');
    app.add_option("--only", only, "run only these criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    bool corrected_ok = false;
    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds, 0 = none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "oracle product equivalence, weight<=(3,3), q in {2,3,4}", 600, product_equivalence_suite},
        {2, "relation checks over F2 and F3", 0, [&] { return relation_suite(corrected_ok); }},
        {3, "monomial-to-PBW unitriangularity, d1+d2<=8", 300, triangularity_suite},
        {4, "canonical basis at weight (1,1)", 0, weight_delta_suite},
        {5, "bar invariance and lattice property, d1+d2<=8", 0, canonical_suite},
        {6, "tube words, triangularity and lattice, rank 2,3, total<=6", 900, tube_suite},
        {7, "inner products, n,|w|<=4", 0, inner_product_suite},
        {8, "Gram-Schmidt equals Newton image, n<=4", 0, newton_suite},
        {9, "almost orthonormality of the primed canonical basis, d1+d2<=6", 600, prime_suite},
        {10, "byte determinism of CLI artifacts", 0, [&] { return determinism_suite(exe); }},
    };

    std::set<int> failed;
    for (auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double t = seconds_since(t0);
        if (c.budget > 0 && t > c.budget) o.fail("runtime " + fmt_seconds(t) + "s over budget " + fmt_seconds(c.budget) + "s");
        if (!o.pass) failed.insert(c.id);
        std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " [" << c.name << "] tolerance=exact "
                  << "time=" << fmt_seconds(t) << "s" << (c.budget > 0 ? " budget=" + fmt_seconds(c.budget) + "s" : "") << ": "
                  << o.detail << std::endl;
    }
    std::set<int> expected(expect_fail.begin(), expect_fail.end());
    if (!only.empty()) {
        std::set<int> sel(only.begin(), only.end());
        std::erase_if(expected, [&](int x) { return !sel.count(x); });
    }
    std::cout << "summary: " << failed.size() << " failing";
    for (int x : failed) std::cout << " " << x;
    if (!expected.empty()) {
        std::cout << "; documented failures";
        for (int x : expected) std::cout << " " << x;
    }
    std::cout << std::endl;
    return failed == expected ? 0 : 1;
}
