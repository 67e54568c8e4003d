#include "qrep/classes.hpp"

#include <algorithm>
#include <stdexcept>

#include "qrep/module_ops.hpp"

namespace qrep {

namespace {

const std::vector<std::pair<ClassTag, std::string>>& tag_names() {
    static const std::vector<std::pair<ClassTag, std::string>> names{
        {ClassTag::Prj, "Prj"}, {ClassTag::Inj, "Inj"}, {ClassTag::Flat, "Flat"},
        {ClassTag::Cot, "Cot"}, {ClassTag::GF, "GF"},   {ClassTag::GI, "GI"},
        {ClassTag::PGF, "PGF"}, {ClassTag::GFperp, "GFperp"}, {ClassTag::PGFperp, "PGFperp"}};
    return names;
}

}  // namespace

std::string to_string(ClassTag tag) {
    for (const auto& [t, name] : tag_names())
        if (t == tag) return name;
    return "?";
}

ClassTag parse_class_tag(const std::string& name) {
    for (const auto& [t, n] : tag_names())
        if (n == name) return t;
    throw std::invalid_argument("unknown module class '" + name + "'");
}

const std::vector<ClassTag>& all_class_tags() {
    static const std::vector<ClassTag> tags = [] {
        std::vector<ClassTag> out;
        for (const auto& entry : tag_names()) out.push_back(entry.first);
        return out;
    }();
    return tags;
}

OracleFault parse_fault(const std::string& name) {
    if (name.empty() || name == "none") return OracleFault::none;
    if (name == "flat-accepts-all") return OracleFault::flat_accepts_all;
    throw std::invalid_argument("unknown fault '" + name + "'");
}

std::string to_string(OracleFault fault) {
    return fault == OracleFault::flat_accepts_all ? "flat-accepts-all" : "none";
}

ClassOracle::ClassOracle(ClassTag tag, RingSpec ring, OracleFault fault)
    : tag_(tag), ring_(std::move(ring)), fault_(fault) {}

bool has_full_prime_parts(const FiniteModule& m) {
    for (auto d : m.invariants())
        for (const auto& pp : m.ring().factorization())
            if (d % pp.prime == 0 && valuation(pp.prime, d) != pp.exponent) return false;
    return true;
}

bool is_injective_baer(const FiniteModule& m) {
    for (auto d : divisors(m.modulus()))
        if (!ext1(FiniteModule::cyclic(m.ring(), d), m).is_zero()) return false;
    return true;
}

// Theory table. Semisimple Z/n: every class is everything. Not squarefree (quasi-Frobenius):
// Prj = Inj = Flat = full prime parts (finite flat modules over an artinian ring are projective),
// Cot = all (finite modules are pure-injective), GF = GI = PGF = all, GFperp = PGFperp = Inj.
bool ClassOracle::contains(const FiniteModule& m) const {
    if (fault_ == OracleFault::flat_accepts_all && tag_ == ClassTag::Flat) return true;
    if (ring_.is_semisimple()) return true;
    switch (tag_) {
        case ClassTag::Prj:
        case ClassTag::Inj:
        case ClassTag::Flat:
        case ClassTag::GFperp:
        case ClassTag::PGFperp:
            return has_full_prime_parts(m);
        case ClassTag::Cot:
        case ClassTag::GF:
        case ClassTag::GI:
        case ClassTag::PGF:
            return true;
    }
    return false;
}

bool class_membership(const ClassOracle& oracle, const FiniteModule& m) {
    if (!(oracle.ring() == m.ring()))
        throw std::invalid_argument("class oracle over " + oracle.ring().name() + " applied to a module over " +
                                    m.ring().name());
    return oracle.contains(m);
}

ModuleClass::ModuleClass(RingSpec ring, std::vector<ClassTag> tags, OracleFault fault)
    : ring_(std::move(ring)), tags_(std::move(tags)), fault_(fault) {
    std::sort(tags_.begin(), tags_.end());
    tags_.erase(std::unique(tags_.begin(), tags_.end()), tags_.end());
}

ModuleClass ModuleClass::parse(const RingSpec& ring, const std::string& name, OracleFault fault) {
    std::vector<ClassTag> tags;
    if (name != "All") {
        std::size_t pos = 0;
        while (true) {
            std::size_t amp = name.find('&', pos);
            tags.push_back(parse_class_tag(name.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos)));
            if (amp == std::string::npos) break;
            pos = amp + 1;
        }
    }
    return ModuleClass(ring, tags, fault);
}

bool ModuleClass::contains(const FiniteModule& m) const {
    for (auto t : tags_)
        if (!class_membership(ClassOracle(t, ring_, fault_), m)) return false;
    return true;
}

ModulePredicate ModuleClass::predicate() const {
    ModuleClass self = *this;
    return [self](const FiniteModule& m) { return self.contains(m); };
}

ModuleClass ModuleClass::intersect(const ModuleClass& other) const {
    std::vector<ClassTag> tags = tags_;
    tags.insert(tags.end(), other.tags_.begin(), other.tags_.end());
    return ModuleClass(ring_, tags, fault_ == OracleFault::none ? other.fault_ : fault_);
}

std::string ModuleClass::name() const {
    if (tags_.empty()) return "All";
    std::string out;
    for (std::size_t i = 0; i < tags_.size(); ++i) {
        if (i) out += '&';
        out += to_string(tags_[i]);
    }
    return out;
}

}  // namespace qrep
