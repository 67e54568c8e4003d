#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qrep/linalg.hpp"
#include "qrep/module.hpp"

namespace qrep {

// Module presented by `gens` generators and relation rows, brought to invariant-factor form.
struct NormalizedPresentation {
    FiniteModule module;
    ModularMatrix to_module;    // rank x gens: image of each presentation generator
    ModularMatrix from_module;  // gens x rank: lift of each module generator
};

NormalizedPresentation normalize_presentation(const RingSpec& ring, std::size_t gens, const ModularMatrix& relations);

// Z/d_1 + ... + Z/d_k in arbitrary order (d_i | n after gcd with n).
NormalizedPresentation normalize_cyclic_sum(const RingSpec& ring, const std::vector<Residue>& orders);

// (span S + span T) / span T inside (Z/n)^k, S and T given as rows.
class Subquotient {
public:
    Subquotient(const RingSpec& ring, const ModularMatrix& s, const ModularMatrix& t);

    const FiniteModule& module() const { return module_; }
    // Ambient lift of each generator, as columns (k x rank).
    const ModularMatrix& embedding() const { return embed_; }
    // Coordinates of the generator s_j of S.
    const ModularMatrix& to_module() const { return to_module_; }
    std::optional<Element> coordinates(std::span<const Residue> ambient) const;

private:
    FiniteModule module_;
    ModularMatrix embed_;
    ModularMatrix to_module_;
    std::size_t s_rows_;
    std::shared_ptr<LinearSystem> system_;
};

struct KernelResult {
    FiniteModule module;
    ModuleMap inclusion;
};

struct CokernelResult {
    FiniteModule module;
    ModuleMap projection;
};

struct ImageResult {
    FiniteModule module;
    ModuleMap inclusion;
    ModuleMap corestriction;
};

KernelResult kernel(const ModuleMap& f);
CokernelResult cokernel(const ModuleMap& f);
ImageResult image(const ModuleMap& f);

bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_isomorphism(const ModuleMap& f);

// Reusable solver for f(x) = y.
class Preimager {
public:
    explicit Preimager(const ModuleMap& f);
    std::optional<Element> operator()(const Element& y) const;

private:
    FiniteModule source_;
    FiniteModule target_;
    LinearSystem system_;
};

std::optional<Element> preimage(const ModuleMap& f, const Element& y);

// h with mono o h = g (requires mono injective for well-definedness).
std::optional<ModuleMap> lift_through_mono(const ModuleMap& mono, const ModuleMap& g);
// h with h o epi = g.
std::optional<ModuleMap> descend_through_epi(const ModuleMap& epi, const ModuleMap& g);
// h : target(mono) -> target(g) with h o mono = g.
std::optional<ModuleMap> extend_along_mono(const ModuleMap& mono, const ModuleMap& g);

struct Homology {
    FiniteModule module;
    KernelResult cycles;
    ModuleMap projection;  // cycles -> homology
};

// Homology at the middle of A -alpha-> B -beta-> C (beta o alpha = 0).
Homology homology(const ModuleMap& alpha, const ModuleMap& beta);

struct DirectSum {
    FiniteModule module;
    std::vector<FiniteModule> summands;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};

DirectSum direct_sum(const RingSpec& ring, const std::vector<FiniteModule>& summands);
// Sum of maps[k] o projection_k.
ModuleMap copair(const DirectSum& source, const std::vector<ModuleMap>& maps, const FiniteModule& target);
// Sum of injection_k o maps[k].
ModuleMap pair(const FiniteModule& source, const std::vector<ModuleMap>& maps, const DirectSum& target);
ModuleMap direct_sum_map(const DirectSum& source, const DirectSum& target, const std::vector<ModuleMap>& diagonal);

struct HomSlot {
    std::size_t row;  // target generator
    std::size_t col;  // source generator
    Residue order;
    Residue step;  // matrix entry = coefficient * step
};

std::vector<HomSlot> hom_slots(const FiniteModule& source, const FiniteModule& target);
std::uint64_t hom_count(const FiniteModule& source, const FiniteModule& target);
// All maps source -> target in a fixed mixed-radix order; fn returns false to stop.
void for_each_hom(const FiniteModule& source, const FiniteModule& target,
                  const std::function<bool(const ModuleMap&)>& fn);
ModuleMap hom_at(const FiniteModule& source, const FiniteModule& target, std::uint64_t index);

class HomModule {
public:
    HomModule(const FiniteModule& source, const FiniteModule& target);

    const FiniteModule& source() const { return source_; }
    const FiniteModule& target() const { return target_; }
    const FiniteModule& module() const { return presentation_.module; }
    const std::vector<HomSlot>& slots() const { return slots_; }

    ModuleMap map_of(const Element& h) const;
    Element element_of(const ModuleMap& f) const;
    std::vector<ModuleMap> basis() const;

private:
    FiniteModule source_;
    FiniteModule target_;
    std::vector<HomSlot> slots_;
    NormalizedPresentation presentation_;
};

inline HomModule hom_module(const FiniteModule& m, const FiniteModule& n) { return HomModule(m, n); }

// Hom(f, T) : Hom(B, T) -> Hom(A, T) for f : A -> B.
ModuleMap precompose_map(const HomModule& from, const HomModule& to, const ModuleMap& f);
// Hom(S, g) : Hom(S, A) -> Hom(S, B) for g : A -> B.
ModuleMap postcompose_map(const HomModule& from, const HomModule& to, const ModuleMap& g);

class TensorModule {
public:
    struct Slot {
        std::size_t left;
        std::size_t right;
        Residue order;
    };

    TensorModule(const FiniteModule& left, const FiniteModule& right);

    const FiniteModule& left() const { return left_; }
    const FiniteModule& right() const { return right_; }
    const FiniteModule& module() const { return presentation_.module; }
    const std::vector<Slot>& slots() const { return slots_; }

    Element pure(const Element& x, const Element& y) const;
    Element from_slots(const Vector& coefficients) const;
    // Slot coefficients of generator t.
    Vector generator_lift(std::size_t t) const { return presentation_.from_module.column(t); }

private:
    FiniteModule left_;
    FiniteModule right_;
    std::vector<Slot> slots_;
    NormalizedPresentation presentation_;
};

inline TensorModule tensor_module(const FiniteModule& m, const FiniteModule& n) { return TensorModule(m, n); }

// f (x) g between tensor modules.
ModuleMap tensor_maps(const TensorModule& source, const TensorModule& target, const ModuleMap& f,
                      const ModuleMap& g);

FiniteModule ext1(const FiniteModule& m, const FiniteModule& n);

// Character dual, realized in the basis of coordinate characters x -> x_j / d_j.
FiniteModule dual_plus(const FiniteModule& m);
ModuleMap dual_plus_map(const ModuleMap& f);
ModuleSES dual_plus_ses(const ModuleSES& ses);
// Evaluation M -> M++ in the coordinate-character bases.
ModuleMap double_dual_evaluation(const FiniteModule& m);

ModuleSES injective_hull(const FiniteModule& m);

struct Pushout {
    FiniteModule module;
    ModuleMap from_a;
    ModuleMap from_b;
};

Pushout pushout(const ModuleMap& f, const ModuleMap& g);

// Every module of order <= max_order, sorted by order then invariants.
std::vector<FiniteModule> modules_up_to(const RingSpec& ring, std::uint64_t max_order);

// All submodules of a small module (closure enumeration), each as an inclusion.
std::vector<ModuleMap> submodules(const FiniteModule& m);

}  // namespace qrep
