#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrep/io.hpp"

namespace qrep {

struct VertexAnalysis {
    std::size_t vertex = 0;
    bool phi_injective = true;
    FiniteModule c;  // C_i = coker phi_i
    // Nonzero element of ker phi_i, one component per incoming arrow.
    std::optional<std::vector<std::pair<std::string, Element>>> kernel_witness;
    bool psi_surjective = true;
    FiniteModule k;  // K_i = ker psi_i
};

struct FlagWitness {
    std::size_t vertex = 0;
    std::string reason;
};

struct FlagVerdict {
    std::string name;
    bool value = true;
    std::vector<FlagWitness> witnesses;  // every vertex where the condition fails
};

struct Analysis {
    Representation rep;
    std::vector<VertexAnalysis> vertices;
    std::vector<FlagVerdict> flags;  // flat, gorenstein-flat, pgf, projective, hovey-*
};

// Requires a left rooted quiver.
Analysis analyze(const Representation& x, OracleFault fault = OracleFault::none);
Json analysis_to_json(const Analysis& a);
std::string analysis_text(const Analysis& a);

std::string element_text(const Element& e);

}  // namespace qrep
