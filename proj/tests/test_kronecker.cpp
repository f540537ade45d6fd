#include <map>
#include <set>

#include "doctest.h"
#include "hallbase/io.hpp"
#include "hallbase/kronecker.hpp"
#include "hallbase/oracle.hpp"

using namespace hallbase;

namespace {

PBWIndex idx(std::map<int, int> prep, Partition im, std::map<int, int> prei) { return PBWIndex{prep, im, prei}; }

// coefficient table of prod (1-x^{n+1}y^n)^-1 (1-x^n y^{n+1})^-1 prod (1-x^m y^m)^-1 up to total degree N
std::map<std::pair<int, int>, long> generating_counts(int N) {
    std::map<std::pair<int, int>, long> c;
    c[{0, 0}] = 1;
    auto factor = [&](int a, int b) {
        // multiply by 1/(1 - x^a y^b)
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j)
                if (i >= a && j >= b && c.count({i - a, j - b})) c[{i, j}] += c[{i - a, j - b}];
    };
    for (int n = 0; 2 * n + 1 <= N; ++n) {
        factor(n + 1, n);
        factor(n, n + 1);
    }
    for (int m = 1; 2 * m <= N; ++m) factor(m, m);
    return c;
}

}  // namespace

TEST_CASE("euler form") {
    CHECK(euler_form({1, 0}, {0, 1}) == 0);
    CHECK(euler_form({0, 1}, {1, 0}) == -2);
    CHECK(euler_form({1, 1}, {1, 0}) == -1);
    CHECK(euler_form({1, 0}, {1, 1}) == 1);
}

TEST_CASE("root order") {
    CHECK(root_less({Root::Prep, 0}, {Root::Prep, 1}));
    CHECK(root_less({Root::Prep, 5}, {Root::Prei, 0}));
    CHECK(root_less({Root::Prei, 3}, {Root::Prei, 1}));
    CHECK_FALSE(root_less({Root::Imag, 1}, {Root::Imag, 2}));
    CHECK_FALSE(root_less({Root::Imag, 2}, {Root::Imag, 1}));
    CHECK(root_less({Root::Prep, 7}, {Root::Imag, 1}));
    CHECK(root_less({Root::Imag, 4}, {Root::Prei, 9}));
}

TEST_CASE("weight") {
    CHECK(weight(idx({{0, 1}}, {}, {{0, 1}})) == DimVector{1, 1});
    CHECK(weight(idx({}, {2}, {})) == DimVector{2, 2});
    CHECK(weight(idx({{1, 1}}, {1}, {})) == DimVector{3, 2});
}

TEST_CASE("enumerate indices") {
    CHECK(enumerate_indices({1, 1}).size() == 2);
    auto e21 = enumerate_indices({2, 1});
    CHECK(e21.size() == 3);
    std::set<std::string> got, want = {idx({{1, 1}}, {}, {}).serialize(), idx({{0, 1}}, {1}, {}).serialize(),
                                        idx({{0, 2}}, {}, {{0, 1}}).serialize()};
    for (auto& c : e21) got.insert(c.serialize());
    CHECK(got == want);
    CHECK(enumerate_indices({2, 2}).size() == 6);
}

TEST_CASE("index counts match the generating function") {
    auto g = generating_counts(10);
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; a + b <= 10; ++b) {
            CAPTURE(a);
            CAPTURE(b);
            auto e = enumerate_indices({a, b});
            CHECK(static_cast<long>(e.size()) == g[{a, b}]);
            std::set<std::string> seen;
            for (auto& c : e) {
                CHECK(weight(c) == DimVector{a, b});
                seen.insert(c.serialize());
            }
            CHECK(seen.size() == e.size());
            for (size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1].serialize() < e[i].serialize());
        }
}

TEST_CASE("end and orbit dimensions") {
    CHECK(end_dim(idx({}, {1}, {})) == 1);
    CHECK(end_dim(idx({{0, 1}}, {}, {{0, 1}})) == 2);
    CHECK(end_dim(idx({{0, 1}}, {1}, {})) == 3);
    CHECK(orbit_dim(idx({}, {1}, {})) == 1);
    CHECK(orbit_dim(idx({{0, 1}}, {}, {{0, 1}})) == 0);
    CHECK(orbit_dim(idx({{0, 2}}, {}, {})) == 0);
}

TEST_CASE("end_dim agrees with the oracle") {
    // V_{w delta}: parts in distinct homogeneous tubes, one rational point per part
    for (int q : {2, 3}) {
        auto& K = KroneckerOracle::get(q);
        auto pts = K.point_ids(1);
        for (int s = 1; s <= 6; ++s)
            for (int a = 0; a <= s; ++a)
                for (auto& c : enumerate_indices({a, s - a})) {
                    if (c.im.size() > pts.size()) continue;
                    KModule m;
                    m.prep = c.prep;
                    m.prei = c.prei;
                    for (size_t i = 0; i < c.im.size(); ++i) m.reg[pts[i]] = {c.im[i]};
                    FFRep r = K.module_rep(m);
                    CAPTURE(q);
                    CAPTURE(c.shorthand());
                    CHECK(hom_dim(K.quiver(), K.field(), r, r) == end_dim(c));
                }
    }
}

TEST_CASE("geometric order examples") {
    PBWIndex pair = idx({{0, 1}}, {}, {{0, 1}}), d = idx({}, {1}, {});
    CHECK(geometric_less(pair, d) == Cmp::Less);
    CHECK(geometric_less(d, pair) == Cmp::Greater);
    CHECK(geometric_less(idx({}, {2}, {}), idx({}, {1, 1}, {})) == Cmp::Less);
    CHECK(geometric_less(d, d) == Cmp::EqualIndex);
    CHECK_THROWS(geometric_less(d, idx({{0, 1}}, {}, {})));
}

TEST_CASE("geometric order is a strict partial order") {
    for (int s = 1; s <= 7; ++s)
        for (int a = 0; a <= s; ++a) {
            auto e = enumerate_indices({a, s - a});
            auto lt = [&](size_t i, size_t j) { return geometric_less(e[i], e[j]) == Cmp::Less; };
            for (size_t i = 0; i < e.size(); ++i) {
                CHECK_FALSE(lt(i, i));
                for (size_t j = 0; j < e.size(); ++j) {
                    if (lt(i, j)) CHECK(geometric_less(e[j], e[i]) == Cmp::Greater);
                    for (size_t k = 0; k < e.size(); ++k)
                        if (lt(i, j) && lt(j, k)) CHECK(lt(i, k));
                }
            }
            auto o = ordered_indices({a, s - a});
            for (size_t i = 0; i < o.size(); ++i)
                for (size_t j = i + 1; j < o.size(); ++j) CHECK(geometric_less(o[j], o[i]) != Cmp::Less);
        }
}

TEST_CASE("index json and shorthand") {
    PBWIndex c = idx({{0, 2}, {3, 1}}, {2, 1}, {{1, 1}});
    CHECK(c.serialize() == R"({"prep":{"0":2,"3":1},"im":[2,1],"prei":{"1":1}})");
    CHECK(c.shorthand() == "P0^2 P3 D(2,1) I1");
    CHECK(index_from_json(Json::parse(c.serialize())) == c);
    CHECK(PBWIndex{}.shorthand() == "1");
    CHECK_THROWS(index_from_json(Json::parse(R"({"prep":{},"im":[1,2],"prei":{}})")));
}
