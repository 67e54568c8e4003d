#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrep/io.hpp"

namespace qrep {

inline constexpr const char* kReportSchema = "qrep-report/1";
inline constexpr const char* kCounterexampleSchema = "qrep-counterexample/1";

// Unset fields fall back to per-suite defaults.
struct SuiteOptions {
    std::uint64_t seed = 1;
    std::optional<Residue> ring;
    std::optional<std::string> quiver;  // fork (alias appendix), a2, or a quiver file
    std::optional<std::uint64_t> max_order;
    std::optional<std::size_t> trials;
    OracleFault fault = OracleFault::none;
};

struct CheckRecord {
    std::string name;   // check plus configuration, e.g. flat-projective/Z4/fork
    std::string check;  // registry name used for replay
    std::string property;
    std::uint64_t instances = 0;
    bool passed = true;
    std::string detail;
    std::optional<Json> counterexample;
    double seconds = 0;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    OracleFault fault = OracleFault::none;
    Json params = Json::object();
    std::vector<CheckRecord> records;  // sorted by name

    bool passed() const;
    Json to_json(bool timings = false) const;
    std::string to_text(bool timings = false) const;
};

// Canonical suite names, "all" last.
const std::vector<std::string>& suite_names();
// Resolves aliases (theorem-a, orthogonality, ...); nullopt for unknown names.
std::optional<std::string> resolve_suite(const std::string& name);
VerificationReport run_suite(const std::string& name, const SuiteOptions& options);

// fork / appendix, a2, loop, two-cycle, otherwise a quiver file path.
Quiver named_quiver(const std::string& name);

struct CheckOutcome {
    bool passed = true;
    std::string detail;
};

const std::vector<std::string>& check_names();
std::string check_property(const std::string& check);
// Re-evaluates one instance of a registered check.
CheckOutcome evaluate_check(const std::string& check, const Json& instance, OracleFault fault = OracleFault::none);

Json make_counterexample(const std::string& check, const Json& instance, OracleFault fault, const std::string& detail);

struct ReplayResult {
    std::string check;
    CheckOutcome outcome;
};
ReplayResult replay_counterexample(const Json& counterexample);

// Local verdicts of the duality chain at vertex v, computed on the in-star of v (v and the sources of its
// incoming arrows). Bits: 1 phi_v-class GF, 2 phi_v injective, 4 psi_v of the dual surjective, 8 psi_v-class GI.
std::uint8_t duality_chain_local_bits(const Representation& x, std::size_t v, OracleFault fault = OracleFault::none);

}  // namespace qrep
