#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "hallbase/cli.hpp"
#include "hallbase/io.hpp"

using namespace hallbase;
namespace fs = std::filesystem;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("hallbase-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("kronecker canonical") {
    Run r = run({"kronecker", "canonical", "--dim", "1,1"});
    REQUIRE(r.rc == kOk);
    Json j = Json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "kronecker canonical");
    REQUIRE(j["canonical"].size() == 2);
    CHECK(element_from_json(j["canonical"][1]["element"]) == parse_shorthand("I0 P0"));
    CHECK_FALSE(j.contains("transitions"));
    Run t = run({"--emit-transitions", "kronecker", "canonical", "--dim", "1,1"});
    Json jt = Json::parse(t.out);
    CHECK(jt["transitions"]["H"].size() == 2);
    CHECK(ratfunc_from_json(jt["transitions"]["Omega"][1][0]) == RatFunc(Laurent::monomial(-2) - Laurent::monomial(2)));
    Run unit = run({"kronecker", "canonical", "--dim", "0,0"});
    CHECK(Json::parse(unit.out)["canonical"].size() == 1);
}

TEST_CASE("output formats") {
    Run csv = run({"--format", "csv", "kronecker", "canonical", "--dim", "1,1"});
    CHECK(csv.out == "section,row,column,coeff\nelement,P0 I0,P0 I0,1\nelement,D(1),P0 I0,v^-2\nelement,D(1),D(1),1\n");
    Run pretty = run({"--format", "pretty", "kronecker", "canonical", "--dim", "1,1"});
    CHECK(pretty.out.find("B[D(1)] = (v^-2)*[P0 I0] + (1)*[D(1)]") != std::string::npos);
    CHECK(run({"--format", "xml", "kronecker", "canonical", "--dim", "1,1"}).rc == kUsage);
}

TEST_CASE("tube canonical") {
    Run r = run({"tube", "canonical", "--rank", "2", "--dim", "1,1"});
    REQUIRE(r.rc == kOk);
    Json j = Json::parse(r.out);
    REQUIRE(j["canonical"].size() == 2);
    std::set<std::string> words;
    for (auto& c : j["canonical"]) words.insert(c["word"].get<std::string>());
    CHECK(words == std::set<std::string>{"1 2", "2 1"});
    CHECK(run({"tube", "canonical", "--rank", "2", "--dim", "1"}).rc == kUsage);
}

TEST_CASE("multiply") {
    Run r = run({"--format", "csv", "multiply", "--lhs", "I0", "--rhs", "P0"});
    CHECK(r.out == "index,coeff\nP0 I0,v^-2\nD(1),1\n");
    Run one = run({"multiply", "--lhs", "1", "--rhs", "P0^2"});
    CHECK(element_from_json(Json::parse(one.out)) == parse_shorthand("P0^2"));
    CHECK(run({"multiply", "--lhs", one.out, "--rhs", "1"}).out == one.out);
    Json lhs = to_json(parse_shorthand("D(1)"));
    Run js = run({"multiply", "--lhs", lhs.dump(), "--rhs", "P0"});
    CHECK(js.rc == kOk);
    Run bad = run({"multiply", "--lhs", "P0 * X1", "--rhs", "P0"});
    CHECK(bad.rc == kUsage);
    CHECK(bad.err.find("position 5") != std::string::npos);
}

TEST_CASE("gram") {
    Run r = run({"gram", "--dim", "1,1"});
    REQUIRE(r.rc == kOk);
    Json j = Json::parse(r.out);
    CHECK(j["leading"][1][1] == "1");
    Run csv = run({"--format", "csv", "gram", "--dim", "1,1"});
    CHECK(csv.out.find("D(1),D(1),(v^2 + 1)/(v^2 - 1)") != std::string::npos);
}

TEST_CASE("canonical-prime") {
    Run r = run({"canonical-prime", "--dim", "2,2"});
    REQUIRE(r.rc == kOk);
    CHECK(Json::parse(r.out)["canonical"].size() == 6);
}

TEST_CASE("verify") {
    Run r = run({"verify", "--q", "2", "--max-dim", "1,1", "L3.3", "L3.13-corrected"});
    CHECK(r.rc == kOk);
    Json j = Json::parse(r.out);
    CHECK(j["status"] == "pass");
    CHECK(j["relations"].size() == 2);
    Run printed = run({"verify", "--q", "2", "--max-dim", "1,1", "L3.13"});
    CHECK(printed.rc == kInternal);
    CHECK(Json::parse(printed.out)["status"] == "fail");
    CHECK(run({"verify", "L9.9"}).rc == kUsage);
    CHECK(run({"verify", "--q", "11", "L3.3"}).rc == kUsage);
}

TEST_CASE("usage and budget errors") {
    CHECK(run({}).rc == kUsage);
    CHECK(run({"frobnicate"}).rc == kUsage);
    CHECK(run({"kronecker", "canonical"}).rc == kUsage);
    CHECK(run({"kronecker", "canonical", "--dim", "-1,1"}).rc == kUsage);
    CHECK(run({"kronecker", "canonical", "--dim", "9,9"}).rc == kBudget);
    CHECK(run({"--budget", "1", "kronecker", "canonical", "--dim", "1,1"}).rc == kBudget);
    CHECK(run({"tube", "canonical", "--rank", "2", "--dim", "5,5"}).rc == kBudget);
}

TEST_CASE("config hash") {
    CHECK(config_hash("").size() == 16);
    CHECK(config_hash("") == "cbf29ce484222325");
    CHECK(config_hash("a") == "af63dc4c8601ec8c");
    CHECK(config_hash("x") != config_hash("y"));
    CHECK(cli_fields() == std::vector<int>{2, 3, 4, 5, 7, 8, 9});
}

TEST_CASE("cache and output file") {
    fs::path dir = fresh_dir("cache");
    std::vector<std::string> args = {"--cache-dir", dir.string(), "kronecker", "canonical", "--dim", "2,1"};
    Run cold = run(args);
    REQUIRE(cold.rc == kOk);
    int files = 0;
    for (auto& e : fs::directory_iterator(dir)) {
        ++files;
        CHECK(e.path().filename().string().rfind("v1-kronecker-", 0) == 0);
        Json c = Json::parse(slurp(e.path()));
        CHECK(c["status"] == 0);
    }
    CHECK(files == 1);
    Run warm = run(args);
    CHECK(warm.out == cold.out);
    CHECK(run({"kronecker", "canonical", "--dim", "2,1"}).out == cold.out);

    fs::path out = dir / "artifact.json";
    Run w = run({"--out", out.string(), "kronecker", "canonical", "--dim", "2,1"});
    CHECK(w.rc == kOk);
    CHECK(w.out.empty());
    CHECK(slurp(out) == cold.out);
    for (auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
    fs::remove_all(dir);
}

TEST_CASE("output is deterministic") {
    std::vector<std::string> args = {"--emit-transitions", "kronecker", "canonical", "--dim", "2,2"};
    CHECK(run(args).out == run(args).out);
    std::vector<std::string> t = {"tube", "canonical", "--rank", "3", "--dim", "1,1,1"};
    CHECK(run(t).out == run(t).out);
}
