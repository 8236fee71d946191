#include "doctest.h"

#include <algorithm>

#include "fuzzchain/error.hpp"
#include "fuzzchain/fixtures.hpp"
#include "fuzzchain/oracle.hpp"
#include "fuzzchain/recursion.hpp"

using namespace fuzzchain;

namespace {

Assignment sigma() {
    return parse_assignment("x = 0.3\ny = 0.7\nw = 0.6\nz = 0.8\nxbar = 0.5\n");
}

Assignment sigma_high() {
    return parse_assignment("x = 0.9\ny = 0.2\nw = 0.8\nz = 0.1\nxbar = 0.95\n");
}

SystemRegistry rec_registry(unsigned count) {
    FixtureOptions opts;
    opts.rec_count = count;
    return builtin_fixtures(opts);
}

// psi1 with its C-D edge calling plain psi1.
SystemRegistry call_registry(unsigned count) {
    SystemRegistry r = parse_registry("system psi1_call {\n"
                                      "  vertices A B C D\n"
                                      "  terminals A -> B\n"
                                      "  edge A C y\n  edge A D x\n  edge B C w\n  edge B D z\n"
                                      "  edge C D call psi1 " + std::to_string(count) + "\n"
                                      "}\n");
    r.add(builtin_fixtures().at("psi1"));
    return r;
}

std::vector<std::string> stack_events(const EvalTrace& trace) {
    std::vector<std::string> out;
    for (const auto& e : trace.events()) {
        if (e.kind == TraceEvent::Kind::PushReturn) out.push_back("push " + e.label);
        if (e.kind == TraceEvent::Kind::PopReturn) out.push_back("pop " + e.label);
    }
    return out;
}

bool has_subsequence(const std::vector<std::string>& seq, const std::vector<std::string>& sub) {
    auto it = seq.begin();
    for (const auto& s : sub) {
        it = std::find(it, seq.end(), s);
        if (it == seq.end()) return false;
        ++it;
    }
    return true;
}

}  // namespace

TEST_CASE("call budgets") {
    CHECK(CallBudget::unbounded().is_unbounded());
    CHECK(CallBudget(3).effective(5) == 3);
    CHECK(CallBudget(3).effective(1) == 1);
    CHECK(CallBudget::unbounded().effective(4) == 4);
    CHECK(CallBudget(2) < CallBudget::unbounded());
    CHECK(CallBudget(2).to_string() == "2");
    CHECK(CallBudget::unbounded().to_string() == "unbounded");
}

TEST_CASE("resolve_call") {
    SystemRegistry rec = rec_registry(2);
    CHECK(resolve_call(rec, "psi1_rec", CallBudget(0), sigma_high()) == Membership(0.2));
    SystemRegistry plain = builtin_fixtures();
    for (unsigned k = 0; k < 4; ++k) CHECK(resolve_call(plain, "psi1", CallBudget(k), sigma_high()) == Membership(0.8));
    SystemRegistry r = call_registry(1);
    CHECK(resolve_call(r, "psi1_call", CallBudget(1), sigma_high()) == Membership(0.8));
    CHECK(resolve_call(r, "psi1_call", CallBudget(0), sigma_high()) == Membership(0.2));
    CHECK(eval_system(r, "psi1_call", sigma_high()) == Membership(0.8));
    CHECK(call_value(r, "psi1", 1, sigma_high()) == Membership(0.8));
    CHECK(call_value(r, "psi1", 0, sigma_high()) == Membership::zero());
    CHECK(eval_system(call_registry(0), "psi1_call", sigma_high()) == Membership(0.2));
}

TEST_CASE("eval_system on the fixtures") {
    SystemRegistry r = builtin_fixtures();
    CHECK(eval_system(r, "psi1", sigma()) == Membership(0.6));
    CHECK(eval_system(r, "psi2", sigma()) == Membership(0.6));
    CHECK(eval_system(r, "psi3", sigma()) == Membership(0.6));
    CHECK(eval_system(r, "psi4", sigma()) == Membership(0.5));
    CHECK(eval_system(r, "psi5", sigma()) == Membership(0.5));
    CHECK(eval_system(r, "phi", sigma()) == Membership(0.5));
    CHECK(oracle_unroll_eval(r, "phi", sigma()) == Membership(0.5));
    CHECK(eval_system(r, "psi1_rec", sigma()) == Membership(0.6));
    CHECK_THROWS_AS(eval_system(r, "psi1", Assignment{}), BindingError);
    CHECK_THROWS_AS(eval_system(r, "nope", sigma()), ValidationError);
}

TEST_CASE("self-call collapse on psi1_rec") {
    for (unsigned k = 0; k <= 4; ++k) {
        CAPTURE(k);
        CHECK(eval_system(rec_registry(k), "psi1_rec", sigma()) == Membership(0.6));
        CHECK(eval_system(rec_registry(k), "psi1_rec", sigma_high()) == Membership(0.2));
    }
}

TEST_CASE("symbolic expansion of psi1_rec") {
    auto tree = expansion_tree(rec_registry(2), "psi1_rec");
    CHECK(render_expansion(*tree) ==
          "xz + x(xz + x(xz + yw)w + yw + y(xz + yw)z)w + yw + y(xz + x(xz + yw)w + yw + y(xz + yw)z)z");
    CHECK(render_expansion(*expansion_tree(rec_registry(0), "psi1_rec")) == "xz + yw");
    CHECK(format_expr(symbolic_expand(rec_registry(0), "psi1_rec"), FormatMode::Paper) == "xz + yw");
    for (unsigned k = 0; k <= 3; ++k) {
        CAPTURE(k);
        FtfExpr e = symbolic_expand(rec_registry(k), "psi1_rec");
        CHECK(canonicalize(e, Simplify::Yes) == canonicalize(parse_expr("x*z + y*w")));
        CHECK(eval_expr(e, sigma()) == eval_system(rec_registry(k), "psi1_rec", sigma()));
    }
    FtfExpr two = symbolic_expand(rec_registry(2), "psi1_rec");
    CHECK(flat_term_count(*tree) == two.terms().size());
    CHECK(two.terms().size() == 2 + 2 * (2 + 2 * 2));
    CHECK_THROWS_AS(flatten(*tree, 3), DomainError);
}

TEST_CASE("symbolic expansion of phi") {
    SystemRegistry r = builtin_fixtures();
    FtfExpr e = symbolic_expand(r, "phi");
    for (const Term& t : e.terms()) {
        for (const Atom& a : t.atoms) CHECK(a.is_var());
    }
    CHECK(eval_expr(e, sigma()) == eval_system(r, "phi", sigma()));
    FixtureOptions none;
    none.phi_counts = {0, 0, 0, 0, 0};
    CHECK(symbolic_expand(builtin_fixtures(none), "phi") == FtfExpr::zero());
}

TEST_CASE("trace of psi1_rec") {
    auto [value, trace] = trace_eval(rec_registry(2), "psi1_rec", sigma());
    CHECK(value == Membership(0.6));
    CHECK(trace.well_formed());
    CHECK(has_subsequence(stack_events(trace), {"push z", "push w", "pop w", "pop z"}));
    std::string text = trace.render();
    CHECK(text.find("expr=y(xxzw + xyww)z") != std::string::npos);
    const std::string last = "EXIT system=psi1_rec value=0.6\n";
    CHECK(text.rfind(last) == text.size() - last.size());
    CHECK(text.substr(0, 41) == "ENTER system=psi1_rec budget=unbounded\n  ");
}

TEST_CASE("trace of a call-free system and caps") {
    SystemRegistry r = builtin_fixtures();
    auto [value, trace] = trace_eval(r, "psi1", sigma());
    CHECK(value == Membership(0.6));
    CHECK(trace.render() ==
          "ENTER system=psi1 budget=unbounded\n"
          "  BRANCH chain=A-C-B expr=yw value=0.6\n"
          "  BRANCH chain=A-C-D-B expr=y*xbar*z value=0.5\n"
          "  BRANCH chain=A-D-B expr=xz value=0.3\n"
          "  BRANCH chain=A-D-C-B expr=x*xbar*w value=0.3\n"
          "EXIT system=psi1 value=0.6\n");
    TraceOptions small;
    small.max_terms = 2;
    small.max_combinations = 1;
    auto [v2, capped] = trace_eval(rec_registry(2), "psi1_rec", sigma(), small);
    CHECK(v2 == Membership(0.6));
    CHECK(capped.well_formed());
    CHECK(capped.render().find("terms>") != std::string::npos);
}

TEST_CASE("trace value matches eval on phi") {
    SystemRegistry r = builtin_fixtures();
    auto [value, trace] = trace_eval(r, "phi", sigma());
    CHECK(value == eval_system(r, "phi", sigma()));
    CHECK(trace.well_formed());
}
