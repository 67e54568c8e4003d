#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qrep/classes.hpp"
#include "qrep/module_ops.hpp"
#include "qrep/quiver.hpp"

namespace qrep {

class Representation {
public:
    Representation(Quiver quiver, RingSpec ring, std::vector<FiniteModule> modules, std::vector<ModuleMap> maps);

    static Representation zero(const Quiver& q, const RingSpec& ring);
    // Module m at vertex i, zero elsewhere.
    static Representation stalk(const Quiver& q, const FiniteModule& m, std::size_t vertex);

    const Quiver& quiver() const { return *quiver_; }
    const RingSpec& ring() const { return ring_; }
    const FiniteModule& module(std::size_t i) const { return modules_.at(i); }
    const ModuleMap& map(std::size_t a) const { return maps_.at(a); }
    const std::vector<FiniteModule>& modules() const { return modules_; }
    const std::vector<ModuleMap>& maps() const { return maps_; }

    bool is_zero() const;
    std::uint64_t total_order() const;
    std::string to_string() const;

    bool operator==(const Representation& other) const {
        return quiver() == other.quiver() && ring_ == other.ring_ && modules_ == other.modules_ && maps_ == other.maps_;
    }

private:
    std::shared_ptr<const Quiver> quiver_;
    RingSpec ring_;
    std::vector<FiniteModule> modules_;
    std::vector<ModuleMap> maps_;
};

class RepMorphism {
public:
    RepMorphism(Representation source, Representation target, std::vector<ModuleMap> components);

    static RepMorphism identity(const Representation& x);
    static RepMorphism zero(const Representation& x, const Representation& y);
    static bool is_natural(const Representation& source, const Representation& target,
                           const std::vector<ModuleMap>& components);

    const Representation& source() const { return source_; }
    const Representation& target() const { return target_; }
    const ModuleMap& component(std::size_t i) const { return components_.at(i); }
    const std::vector<ModuleMap>& components() const { return components_; }
    bool is_zero() const;

    bool operator==(const RepMorphism& other) const { return components_ == other.components_; }

private:
    Representation source_;
    Representation target_;
    std::vector<ModuleMap> components_;
};

RepMorphism compose(const RepMorphism& g, const RepMorphism& f);

// Vertexwise short exact.
class RepSES {
public:
    RepSES(RepMorphism f, RepMorphism g);

    const RepMorphism& f() const { return f_; }
    const RepMorphism& g() const { return g_; }
    const Representation& left() const { return f_.source(); }
    const Representation& middle() const { return f_.target(); }
    const Representation& right() const { return g_.target(); }

    static bool is_exact(const RepMorphism& f, const RepMorphism& g);

private:
    RepMorphism f_;
    RepMorphism g_;
};

// phi_i : sum over arrows a into i of X(s(a)) -> X(i); psi_i : X(i) -> sum over arrows out of i of X(t(a)).
// Summands follow arrow declaration order.
struct CanonicalMap {
    std::vector<std::size_t> arrows;
    DirectSum sum;
    ModuleMap map;
};

CanonicalMap phi(const Representation& x, std::size_t i);
CanonicalMap psi(const Representation& x, std::size_t i);
CokernelResult coker_c(const Representation& x, std::size_t i);
KernelResult ker_k(const Representation& x, std::size_t i);

bool in_phi_class(const Representation& x, const ModulePredicate& pred);
bool in_psi_class(const Representation& x, const ModulePredicate& pred);
bool in_rep_class(const Representation& x, const ModulePredicate& pred);

bool is_flat_rep(const Representation& x, OracleFault fault = OracleFault::none);
bool is_gorenstein_flat_rep(const Representation& x, OracleFault fault = OracleFault::none);
bool is_pgf_rep(const Representation& x, OracleFault fault = OracleFault::none);
bool is_projective_rep(const Representation& x, OracleFault fault = OracleFault::none);

struct RepKernel {
    Representation rep;
    RepMorphism inclusion;
};

struct RepCokernel {
    Representation rep;
    RepMorphism projection;
};

RepKernel rep_kernel(const RepMorphism& f);
RepCokernel rep_cokernel(const RepMorphism& f);

struct RepDirectSum {
    Representation rep;
    std::vector<RepMorphism> injections;
    std::vector<RepMorphism> projections;
};

RepDirectSum rep_direct_sum(const std::vector<Representation>& parts);

// Subrepresentation with given vertexwise submodule inclusions (must be arrow-stable).
RepKernel subrepresentation(const Representation& x, const std::vector<ModuleMap>& inclusions);

// Hom_Q(X, Y) as a finite module.
class RepHom {
public:
    RepHom(const Representation& x, const Representation& y);

    const FiniteModule& module() const { return module_; }
    std::uint64_t count() const { return module_.order(); }
    RepMorphism morphism_of(const Element& h) const;
    Element element_of(const RepMorphism& f) const;
    void for_each(const std::function<bool(const RepMorphism&)>& fn) const;

private:
    Representation x_;
    Representation y_;
    std::vector<HomModule> vertex_homs_;
    DirectSum total_;
    FiniteModule module_;
    std::shared_ptr<ModuleMap> inclusion_;
    std::shared_ptr<Preimager> lift_;
};

struct HoveyFlags {
    bool cofibrant;
    bool trivial;
    bool fibrant;
};

struct HoveyTripleSpec {
    ModuleClass cofibrant;  // C, tested through Phi
    ModuleClass trivial;    // W, tested vertexwise
    ModuleClass fibrant;    // F, tested vertexwise

    ModuleClass trivially_cofibrant() const { return cofibrant.intersect(trivial); }
    ModuleClass trivially_fibrant() const { return trivial.intersect(fibrant); }
};

// (GF, PGFperp, Cot).
HoveyTripleSpec gorenstein_flat_triple(const RingSpec& ring, OracleFault fault = OracleFault::none);
HoveyFlags hovey_membership(const Representation& x, const HoveyTripleSpec& spec);

}  // namespace qrep
