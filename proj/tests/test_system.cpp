#include "doctest.h"

#include "fuzzchain/error.hpp"
#include "fuzzchain/fixtures.hpp"
#include "fuzzchain/system.hpp"

using namespace fuzzchain;

namespace {

const char* kTriangle = R"(# a small system
system tri {
  terminals A -> B
  edge A C p; edge C B q
  edge A B r
}
)";

std::vector<std::string> matrix_rows(const ConnectionMatrix& m) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < m.size(); ++j) row += (j ? " " : "") + to_string(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("parse a definition") {
    SystemRegistry r = parse_registry(kTriangle);
    const FuzzySystem& s = r.at("tri");
    CHECK(s.vertices() == std::vector<std::string>{"A", "B", "C"});
    CHECK(s.input() == 0);
    CHECK(s.output() == 1);
    CHECK(s.edges().size() == 3);
    REQUIRE(s.edge(0, 2));
    CHECK(*s.edge(2, 0) == Atom::var("p"));
    CHECK(s.neighbours(0) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("definition round trip") {
    SystemRegistry fixtures = builtin_fixtures();
    CHECK(parse_registry(format_registry(fixtures)) == fixtures);
    CHECK(parse_registry(fixtures_text()) == fixtures);
    SystemRegistry tri = parse_registry(kTriangle);
    CHECK(parse_registry(format_registry(tri)) == tri);
}

TEST_CASE("parse errors carry positions") {
    auto position = [](const std::string& text) {
        try {
            parse_registry(text);
        } catch (const ParseError& e) {
            return std::make_pair(e.line(), e.column());
        }
        return std::make_pair(std::size_t{0}, std::size_t{0});
    };
    CHECK(position("system s {\n  edge A B x\n}") == std::make_pair(std::size_t{2}, std::size_t{3}));
    CHECK(position("system s {\n  terminals A -> B\n  edge A A x\n}").first == 3);
    CHECK(position("system s {\n  terminals A -> B\n  edge A B x\n  edge B A y\n}").first == 4);
    CHECK(position("system s {\n  terminals A -> B\n  edge A B call t x\n}").first == 3);
    CHECK(position("system s {\n  terminals A -> B\n  bogus\n}").first == 3);
    CHECK(position("system s { terminals A -> B }\nsystem s { terminals A -> B }").first == 2);
    CHECK(position("system s { terminals A -> B $ }").first == 1);
    CHECK_THROWS_AS(parse_registry("system s {"), ParseError);
}

TEST_CASE("validation diagnostics") {
    SystemRegistry r = parse_registry("system s {\n terminals A -> B\n edge A B call missing 1\n}\n"
                                      "system t {\n vertices A B C\n terminals A -> B\n edge A C x\n}\n");
    auto diags = validate_registry(r);
    CHECK(has_errors(diags));
    bool unknown = false;
    bool disconnected = false;
    for (const auto& d : diags) {
        if (d.severity == Diagnostic::Severity::Error && d.system == "s") unknown = true;
        if (d.severity == Diagnostic::Severity::Warning && d.system == "t") disconnected = true;
    }
    CHECK(unknown);
    CHECK(disconnected);
    CHECK_FALSE(has_errors(validate_registry(builtin_fixtures())));
    CHECK_THROWS_AS(r.at("nope"), ValidationError);
}

TEST_CASE("connection matrix of psi1") {
    SystemRegistry r = builtin_fixtures();
    CHECK(matrix_rows(connection_matrix(r.at("psi1"))) ==
          std::vector<std::string>{"1 0 y x", "0 1 w z", "y w 1 xbar", "x z xbar 1"});
    CHECK(render_matrix(connection_matrix(r.at("psi1"))) ==
          "   A     B     C     D\n"
          "A  1     0     y     x\n"
          "B  0     1     w     z\n"
          "C  y     w     1     xbar\n"
          "D  x     z     xbar  1\n");
}

TEST_CASE("connection matrix of the self-calling system") {
    SystemRegistry r = builtin_fixtures();
    ConnectionMatrix m = connection_matrix(r.at("psi1_rec"));
    ConnectionMatrix base = connection_matrix(r.at("psi1"));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            bool cd = (i == 2 && j == 3) || (i == 3 && j == 2);
            if (cd) {
                CHECK(to_string(m.at(i, j)) == "psi1_rec^2");
            } else {
                CHECK(m.at(i, j) == base.at(i, j));
            }
        }
    }
}

TEST_CASE("fixture options") {
    FixtureOptions opts;
    opts.phi_counts = {1, 2, 3, 4, 5};
    opts.rec_count = 0;
    SystemRegistry r = builtin_fixtures(opts);
    const FuzzySystem& phi = r.at("phi");
    CHECK(*phi.edge(2, 3) == Atom::call("psi1", 1));
    CHECK(*phi.edge(0, 2) == Atom::call("psi2", 2));
    CHECK(*phi.edge(0, 3) == Atom::call("psi3", 3));
    CHECK(*phi.edge(1, 2) == Atom::call("psi4", 4));
    CHECK(*phi.edge(1, 3) == Atom::call("psi5", 5));
    CHECK(*r.at("psi1_rec").edge(2, 3) == Atom::call("psi1_rec", 0));
    CHECK(r.max_declared_count() == 5);
}
