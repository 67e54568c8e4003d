#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrep/io.hpp"
#include "qrep/representation.hpp"

namespace qrep {

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// How a short exact sequence 0 -> M -> A -> B -> 0 is produced for a module M.
//   identity: 0 -> M -> M -> 0 -> 0
//   hull:     M into its injective hull
//   padded:   M -> M + Z/n -> Z/n
//   search:   first mono M -> A over all A with |A| <= cap (hom order)
enum class Strategy { identity, hull, padded, search };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

// First strategy whose output has middle term in `middle` and right term in `quotient`.
std::optional<ModuleSES> approximate(const FiniteModule& m, const ModuleClass& middle, const ModuleClass& quotient,
                                     const std::vector<Strategy>& strategies, std::uint64_t search_cap = 16);

// Completion 0 -> M -> U -> C -> 0 with U in the right class and C in the left class.
class CotorsionPairOracle {
public:
    CotorsionPairOracle(ModuleClass left, ModuleClass right, std::vector<Strategy> strategies = {Strategy::identity});

    const ModuleClass& left() const { return left_; }
    const ModuleClass& right() const { return right_; }
    const std::vector<Strategy>& strategies() const { return strategies_; }
    ModuleSES complete(const FiniteModule& m) const;

private:
    ModuleClass left_;
    ModuleClass right_;
    std::vector<Strategy> strategies_;
};

// 0 -> M -> W -> M' -> 0 with W in the cogenerating class and M' in the ambient class.
class CogeneratorOracle {
public:
    CogeneratorOracle(ModuleClass ambient, ModuleClass cogenerating, std::vector<Strategy> strategies = {Strategy::hull});

    const ModuleClass& ambient() const { return ambient_; }
    const ModuleClass& cogenerating() const { return cogenerating_; }
    const std::vector<Strategy>& strategies() const { return strategies_; }
    ModuleSES cogenerate(const FiniteModule& m) const;

private:
    ModuleClass ambient_;
    ModuleClass cogenerating_;
    std::vector<Strategy> strategies_;
};

// 0 -> m -> A -> B -> 0 with A in W and F, B in C and W. Bounded: an empty result proves nothing.
std::optional<ModuleSES> w_witness(const FiniteModule& m, const HoveyTripleSpec& triple,
                                   const std::vector<Strategy>& strategies = {Strategy::identity, Strategy::hull,
                                                                              Strategy::search},
                                   std::uint64_t search_cap = 16);

// Rows and columns are indexed top to bottom and left to right.
struct NineLemmaDiagram {
    ModuleSES top, middle, bottom;
    ModuleSES left, center, right;

    bool verify() const;
};

// Needs Ext^1(X3, W1) = 0; throws ConstructionError otherwise.
NineLemmaDiagram nine_lemma(const ModuleSES& row, const ModuleSES& approx1, const ModuleSES& approx3);

// Rows A -f-> B -g-> C and A' -f2-> B' -g2-> C' joined by alpha, beta, gamma.
struct SnakeSequence {
    KernelResult ker_alpha, ker_beta, ker_gamma;
    CokernelResult coker_alpha, coker_beta, coker_gamma;
    ModuleMap ker_f, ker_g, delta, coker_f, coker_g;

    // ker alpha -> ker beta -> ker gamma -> coker alpha -> coker beta -> coker gamma.
    bool is_exact() const;
};

SnakeSequence snake_lemma(const ModuleMap& f, const ModuleMap& g, const ModuleMap& f2, const ModuleMap& g2,
                          const ModuleMap& alpha, const ModuleMap& beta, const ModuleMap& gamma);

// Kernel of g equals image of f.
bool exact_at(const ModuleMap& f, const ModuleMap& g);

struct TraceStage {
    std::size_t alpha = 0;
    std::vector<std::size_t> vertices;  // V_alpha
    Representation left, middle, right;
    std::vector<ModuleMap> k, h;
};

// Vertexwise maps between consecutive stages (from -> to).
struct TraceLadder {
    std::size_t from = 0, to = 0;
    std::vector<ModuleMap> left, middle, right;
};

// Completion used at a new vertex: epsilon : sum -> D, quotient : D -> D/sum, link ties D to the stage value.
//   cogenerator: link = U -> W(i), phi_i^W = link o epsilon
//   trivial:     link = B(i) + D -> D, link o phi_i^B = epsilon
struct CompletionRecord {
    std::size_t alpha = 0;
    std::size_t vertex = 0;
    ModuleMap epsilon, quotient, link;
};

struct ConstructionTrace {
    std::string kind;  // "cogenerator" or "trivial"
    Representation input;
    // cogenerator: ambient, cogenerating, cogenerating_perp; trivial: cofibrant, trivial, fibrant
    std::vector<std::pair<std::string, std::string>> classes;
    OracleFault fault = OracleFault::none;
    std::vector<TraceStage> stages;
    std::vector<TraceLadder> ladders;
    std::vector<CompletionRecord> completions;
    std::vector<std::string> notes;

    const TraceStage& final_stage() const { return stages.back(); }
};

struct ConstructionResult {
    RepSES sequence;
    ConstructionTrace trace;
};

struct HypothesisSample {
    bool ok = true;
    std::vector<std::string> notes;
    std::optional<std::string> violation;
};

// Extension closure of the ambient class, cogenerating inside ambient, and Ext^1(ambient, W and W-perp) = 0,
// each on all modules of order <= max_order.
HypothesisSample sample_cogenerator_hypotheses(const ModuleClass& ambient, const ModuleClass& cogenerating,
                                               const ModuleClass& cogenerating_perp, std::uint64_t max_order = 16);

ConstructionResult cogenerator_construct(const Representation& x, const CotorsionPairOracle& pair,
                                         const CogeneratorOracle& cog, std::uint64_t hypothesis_order = 16);

struct TrivialOptions {
    std::vector<Strategy> witness = {Strategy::identity, Strategy::hull, Strategy::search};
    std::vector<Strategy> completion = {Strategy::identity, Strategy::hull};
    std::uint64_t search_cap = 16;
};

ConstructionResult trivial_objects_construct(const Representation& x, const HoveyTripleSpec& triple,
                                             const TrivialOptions& options = {});

// Value of a limit stage from stages that have already stabilized vertexwise.
TraceStage stabilized_colimit(const std::vector<TraceStage>& chain, std::size_t alpha);

struct TraceVerdict {
    bool ok = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    // Informational facts that are not conditions (e.g. naturality of ladder maps).
    std::vector<std::string> remarks;
};

TraceVerdict verify_trace(const ConstructionTrace& trace);

Json trace_to_json(const ConstructionTrace& trace);
ConstructionTrace trace_from_json(const Json& j);

struct CoreEqualityReport {
    std::uint64_t enumerated = 0;
    std::uint64_t side_a = 0;  // Phi(C) with F-tilde vertexwise
    std::uint64_t side_b = 0;  // Phi(C-tilde) with F vertexwise
    std::uint64_t projective = 0;
    bool equal = true;
    bool equals_projective = true;
    std::optional<Representation> counterexample;
    std::string detail;
};

// Compares Phi(C) with Rep(F-tilde) against Phi(C-tilde) with Rep(F) on every rep of vertex order <= bound,
// and both against the projective reps.
CoreEqualityReport core_equality_check(const Quiver& q, const HoveyTripleSpec& triple, std::uint64_t bound);

}  // namespace qrep
