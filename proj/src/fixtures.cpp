#include "fuzzchain/fixtures.hpp"

#include <sstream>

namespace fuzzchain {

// All fixtures share one topology: terminals A and B, inner vertices C and D,
// edges A-C, A-D, B-C, B-D, C-D. Its four simple A->B chains are
//   A-D-B, A-D-C-B, A-C-B, A-C-D-B
// and each reference transmission function lists exactly one term per chain,
// atoms in traversal order. Reading the terms in that order fixes every label:
//
//   psi1 = xz + x xbar w + yw + y xbar z   AD=x    DB=z  DC=xbar  CB=w  AC=y
//   psi2 = xbar z + xbar x w + yw + yxz    AD=xbar DB=z  DC=x     CB=w  AC=y
//   psi3 = xbar z + xbar w x + yx + ywz    AD=xbar DB=z  DC=w     CB=x  AC=y
//   psi4 = xbar w + xbar y z + xz + xyw    AD=xbar DB=w  DC=y     CB=z  AC=x
//   psi5 = xbar y + xbar w z + xz + xwy    AD=xbar DB=y  DC=w     CB=z  AC=x
//
// The deep system phi takes its chains psi2 psi4, psi2 psi1 psi5, psi3 psi1 psi4
// and psi3 psi5, which forces AC=psi2, CB=psi4, AD=psi3, DB=psi5, CD=psi1.
// psi1_rec is psi1 with the C-D edge replaced by a call to itself.

namespace {

struct Labels {
    const char* name;
    const char* ac;
    const char* ad;
    const char* bc;
    const char* bd;
    const char* cd;
};

constexpr Labels kPsi[] = {
    {"psi1", "y", "x", "w", "z", "xbar"},
    {"psi2", "y", "xbar", "w", "z", "x"},
    {"psi3", "y", "xbar", "x", "z", "w"},
    {"psi4", "x", "xbar", "z", "w", "y"},
    {"psi5", "x", "xbar", "z", "y", "w"},
};

void emit(std::ostringstream& out, const std::string& name, const std::string& ac, const std::string& ad,
          const std::string& bc, const std::string& bd, const std::string& cd) {
    out << "system " << name << " {\n"
        << "  vertices A B C D\n"
        << "  terminals A -> B\n"
        << "  edge A C " << ac << "\n"
        << "  edge A D " << ad << "\n"
        << "  edge B C " << bc << "\n"
        << "  edge B D " << bd << "\n"
        << "  edge C D " << cd << "\n"
        << "}\n";
}

std::string call(const char* target, unsigned k) { return std::string("call ") + target + " " + std::to_string(k); }

}  // namespace

std::string fixtures_text(const FixtureOptions& options) {
    std::ostringstream out;
    for (const Labels& l : kPsi) {
        emit(out, l.name, l.ac, l.ad, l.bc, l.bd, l.cd);
        out << '\n';
    }
    const auto& k = options.phi_counts;
    emit(out, "phi", call("psi2", k[1]), call("psi3", k[2]), call("psi4", k[3]), call("psi5", k[4]),
         call("psi1", k[0]));
    out << '\n';
    emit(out, "psi1_rec", "y", "x", "w", "z", call("psi1_rec", options.rec_count));
    return out.str();
}

SystemRegistry builtin_fixtures(const FixtureOptions& options) { return parse_registry(fixtures_text(options)); }

}  // namespace fuzzchain
