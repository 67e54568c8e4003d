#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qrep/module.hpp"

namespace qrep {

enum class ClassTag { Prj, Inj, Flat, Cot, GF, GI, PGF, GFperp, PGFperp };

std::string to_string(ClassTag tag);
ClassTag parse_class_tag(const std::string& name);
const std::vector<ClassTag>& all_class_tags();

// Deliberate oracle corruption, used to check that the verification suites can fail.
enum class OracleFault { none, flat_accepts_all };

OracleFault parse_fault(const std::string& name);
std::string to_string(OracleFault fault);

class ClassOracle {
public:
    ClassOracle(ClassTag tag, RingSpec ring, OracleFault fault = OracleFault::none);

    ClassTag tag() const { return tag_; }
    const RingSpec& ring() const { return ring_; }
    bool contains(const FiniteModule& m) const;

private:
    ClassTag tag_;
    RingSpec ring_;
    OracleFault fault_;
};

bool class_membership(const ClassOracle& oracle, const FiniteModule& m);

// Every invariant factor carries the full p-part of n for each of its primes.
bool has_full_prime_parts(const FiniteModule& m);
// Ext^1(R/(d), m) = 0 for every divisor d of n.
bool is_injective_baer(const FiniteModule& m);

using ModulePredicate = std::function<bool(const FiniteModule&)>;

// Intersection of tagged classes (no tags: every module).
class ModuleClass {
public:
    ModuleClass(RingSpec ring, std::vector<ClassTag> tags, OracleFault fault = OracleFault::none);

    static ModuleClass all(const RingSpec& ring) { return ModuleClass(ring, {}); }
    // "All", "Flat", "GF&PGFperp", ...
    static ModuleClass parse(const RingSpec& ring, const std::string& name, OracleFault fault = OracleFault::none);

    bool contains(const FiniteModule& m) const;
    ModulePredicate predicate() const;
    ModuleClass intersect(const ModuleClass& other) const;
    std::string name() const;
    const std::vector<ClassTag>& tags() const { return tags_; }
    const RingSpec& ring() const { return ring_; }
    OracleFault fault() const { return fault_; }

private:
    RingSpec ring_;
    std::vector<ClassTag> tags_;
    OracleFault fault_;
};

}  // namespace qrep
