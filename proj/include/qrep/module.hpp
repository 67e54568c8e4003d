#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qrep/matrix.hpp"

namespace qrep {

enum class RingFamily { semisimple, quasi_frobenius };

class RingSpec {
public:
    explicit RingSpec(Residue modulus);

    Residue modulus() const { return modulus_; }
    RingFamily family() const { return family_; }
    bool is_semisimple() const { return family_ == RingFamily::semisimple; }
    const std::vector<PrimePower>& factorization() const { return *factors_; }
    std::string name() const;

    bool operator==(const RingSpec& other) const { return modulus_ == other.modulus_; }

private:
    Residue modulus_;
    RingFamily family_;
    std::shared_ptr<const std::vector<PrimePower>> factors_;
};

using Element = std::vector<Residue>;

// A direct sum of cyclic modules Z/d_1 + ... + Z/d_k with d_1 | ... | d_k | n.
class FiniteModule {
public:
    FiniteModule(RingSpec ring, std::vector<Residue> invariants);

    static FiniteModule zero(const RingSpec& ring) { return FiniteModule(ring, {}); }
    static FiniteModule free(const RingSpec& ring, std::size_t rank);
    static FiniteModule cyclic(const RingSpec& ring, Residue d);

    const RingSpec& ring() const { return ring_; }
    Residue modulus() const { return ring_.modulus(); }
    const std::vector<Residue>& invariants() const { return invariants_; }
    std::size_t rank() const { return invariants_.size(); }
    Residue factor(std::size_t i) const { return invariants_[i]; }
    bool is_zero() const { return invariants_.empty(); }
    std::uint64_t order() const;
    Residue exponent() const { return invariants_.empty() ? 1 : invariants_.back(); }

    Element zero_element() const { return Element(rank(), 0); }
    Element reduce(const Element& x) const;
    Element generator(std::size_t i) const;
    bool is_element(const Element& x) const;
    Element add(const Element& x, const Element& y) const;
    Element sub(const Element& x, const Element& y) const;
    Element scale(Residue k, const Element& x) const;
    // Elements in mixed radix order; index < order().
    Element element_at(std::uint64_t index) const;
    std::uint64_t index_of(const Element& x) const;

    std::string to_string() const;

    bool operator==(const FiniteModule& other) const = default;

private:
    RingSpec ring_;
    std::vector<Residue> invariants_;
};

// Matrix column j is the image of generator j; entries reduced modulo the target factors.
class ModuleMap {
public:
    ModuleMap(FiniteModule source, FiniteModule target, ModularMatrix matrix);

    static ModuleMap zero(const FiniteModule& source, const FiniteModule& target);
    static ModuleMap identity(const FiniteModule& m);
    // Map determined by generator images (one target element per source generator).
    static ModuleMap from_images(const FiniteModule& source, const FiniteModule& target,
                                 const std::vector<Element>& images);

    const FiniteModule& source() const { return source_; }
    const FiniteModule& target() const { return target_; }
    const ModularMatrix& matrix() const { return matrix_; }
    Residue entry(std::size_t i, std::size_t j) const { return matrix_(i, j); }

    Element apply(const Element& x) const;
    Element image_of_generator(std::size_t j) const;
    bool is_zero() const { return matrix_.is_zero(); }

    ModuleMap operator+(const ModuleMap& other) const;
    ModuleMap operator-(const ModuleMap& other) const;
    ModuleMap operator-() const;
    ModuleMap scaled(Residue k) const;

    // Matrix over Z/n whose kernel (mod n) cut out by source relations gives ker f:
    // row i scaled by n / e_i.
    ModularMatrix lifted_matrix() const;

    bool operator==(const ModuleMap& other) const = default;

private:
    FiniteModule source_;
    FiniteModule target_;
    ModularMatrix matrix_;
};

// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

// 0 -> A -f-> B -g-> C -> 0, verified on construction.
class ModuleSES {
public:
    ModuleSES(ModuleMap f, ModuleMap g);

    const ModuleMap& f() const { return f_; }
    const ModuleMap& g() const { return g_; }
    const FiniteModule& left() const { return f_.source(); }
    const FiniteModule& middle() const { return f_.target(); }
    const FiniteModule& right() const { return g_.target(); }

    static bool is_exact(const ModuleMap& f, const ModuleMap& g);

private:
    ModuleMap f_;
    ModuleMap g_;
};

// Parses "Z/4 + Z/2", "0", "Z/4^2"; the result is a presentation, not yet normalized.
std::vector<Residue> parse_cyclic_literal(const std::string& text);

}  // namespace qrep
