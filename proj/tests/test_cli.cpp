#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = fuzzchain::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("fuzzchain_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

const std::vector<std::string> kSigma{"--set", "x=0.3", "--set", "y=0.7", "--set", "w=0.6",
                                      "--set", "z=0.8", "--set", "xbar=0.5"};

std::vector<std::string> with_sigma(std::vector<std::string> args) {
    args.insert(args.end(), kSigma.begin(), kSigma.end());
    return args;
}

}  // namespace

TEST_CASE("ftf with juxtaposed atoms") {
    auto r = run({"ftf", "--fixtures", "--system", "psi1", "--mode", "paper"});
    CHECK(r.code == 0);
    CHECK(r.out == "xz + x*xbar*w + yw + y*xbar*z\n");
}

TEST_CASE("eval") {
    auto r = run(with_sigma({"eval", "--fixtures", "--system", "psi1"}));
    CHECK(r.code == 0);
    CHECK(r.out == "0.6\n");
    auto assign = temp_file("sigma.txt", "x = 0.3\ny = 0.7\nw = 0.6\nz = 0.8\nxbar = 0.5\n");
    CHECK(run({"eval", "--fixtures", "--system", "phi", "--assign", assign}).out == "0.5\n");
}

TEST_CASE("expand") {
    CHECK(run({"expand", "--fixtures", "--system", "psi1_rec", "--rec-count", "0"}).out == "xz + yw\n");
    CHECK(run({"expand", "--fixtures", "--system", "psi1_rec", "--simplify", "--mode", "paper"}).out == "xz + yw\n");
}

TEST_CASE("json output parses") {
    auto r = run(with_sigma({"closure", "--fixtures", "--system", "psi1", "--json"}));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["transmission"] == 0.6);
    CHECK(j["closure"][0][2] == 0.7);
    auto f = nlohmann::json::parse(run({"ftf", "--fixtures", "--system", "psi4", "--json"}).out);
    CHECK(f["terms"].size() == 4);
    auto t = nlohmann::json::parse(run(with_sigma({"trace", "--fixtures", "--system", "psi1_rec", "--json"})).out);
    CHECK(t["events"][0]["kind"] == "enter");
    CHECK(t["value"] == 0.6);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"eval", "--fixtures", "--system", "psi1", "--nope"}).code == 1);
    CHECK(run({"eval", "--system", "psi1"}).code == 1);
    CHECK(run({"power", "--expr", "x", "--k", "0"}).code == 1);
    auto bad = temp_file("bad.fz", "system s {\n  terminals A -> B\n  edge A B x y\n}\n");
    auto parse = run({"ftf", "--file", bad, "--system", "s"});
    CHECK(parse.code == 2);
    CHECK(parse.err.find(":3:") != std::string::npos);
    CHECK(run({"power", "--expr", "x +", "--k", "2"}).code == 2);
    CHECK(run({"eval", "--fixtures", "--system", "psi1", "--set", "x=1.5"}).code == 3);
    CHECK(run({"eval", "--fixtures", "--system", "psi1"}).code == 3);
    CHECK(run(with_sigma({"eval", "--fixtures", "--system", "nope"})).code == 3);
    auto unknown = temp_file("unknown.fz", "system s {\n  terminals A -> B\n  edge A B call t 1\n}\n");
    CHECK(run({"validate", "--file", unknown}).code == 3);
    CHECK(run(with_sigma({"eval", "--file", unknown, "--system", "s"})).code == 3);
    CHECK(run({"validate", "--fixtures"}).code == 0);
}

TEST_CASE("file and fixtures combine") {
    auto extra = temp_file("extra.fz", "system wrap {\n  terminals A -> B\n  edge A B call phi 2\n}\n");
    auto r = run(with_sigma({"eval", "--fixtures", "--file", extra, "--system", "wrap"}));
    CHECK(r.code == 0);
    CHECK(r.out == "0.5\n");
}

TEST_CASE("fixtures round trip through a file") {
    auto text = run({"fixtures"}).out;
    auto path = temp_file("fixtures.fz", text);
    CHECK(run({"ftf", "--file", path, "--system", "psi5", "--mode", "paper"}).out ==
          run({"ftf", "--fixtures", "--system", "psi5", "--mode", "paper"}).out);
}

TEST_CASE("power report") {
    auto r = run({"power", "--expr", "x1 + x2", "--k", "2", "--set", "x1=0.3", "--set", "x2=0.8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("coefficient 2") != std::string::npos);
    CHECK(r.out.find("value: 0.8\n") != std::string::npos);
}

TEST_CASE("check is deterministic") {
    auto a = run({"check", "--seed", "5", "--trials", "20"});
    auto b = run({"check", "--seed", "5", "--trials", "20"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
