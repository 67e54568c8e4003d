#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrep/path_module.hpp"
#include "qrep/representation.hpp"

namespace qrep {

// Representations over opposite(Q) are ordinary Representation values; arrow a of opposite(Q)
// keeps the index and name of a and runs t(a) -> s(a).

struct HomRep {
    Representation rep;           // over opposite(quiver of x)
    std::vector<HomModule> homs;  // Hom(X(i), G) per vertex
};

// Vertexwise Hom(X(i), G); arrow a acts by precomposition with X(a).
HomRep hom_rep(const Representation& x, const FiniteModule& g);

// coker( sum over a: i -> j of Y(j) (x) X(i) -> sum over i of Y(i) (x) X(i) ),
// y (x) x in the a-summand goes to Y(a)(y) (x) x at i minus y (x) X(a)(x) at j.
class TensorResult {
public:
    TensorResult(const Representation& y, const Representation& x);

    const FiniteModule& value() const { return value_; }
    const Representation& left() const { return y_; }
    const Representation& right() const { return x_; }
    const TensorModule& slot(std::size_t i) const { return slots_.at(i); }
    const DirectSum& sum() const { return sum_; }
    const ModuleMap& projection() const { return projection_; }
    // Class of y (x) x placed at vertex i.
    Element pure(std::size_t i, const Element& y, const Element& x) const;

private:
    Representation y_;
    Representation x_;
    std::vector<TensorModule> slots_;
    DirectSum sum_;
    FiniteModule value_;
    ModuleMap projection_;
};

// f (x) X : Y (x) X -> Y' (x) X and Y (x) g.
ModuleMap tensor_map_left(const TensorResult& from, const TensorResult& to, const RepMorphism& f);
ModuleMap tensor_map_right(const TensorResult& from, const TensorResult& to, const RepMorphism& g);

struct AdjunctionCheck {
    std::uint64_t tensor_side = 0;  // |Hom_Z(Y (x) X, G)|
    std::uint64_t hom_side = 0;     // |Hom(Y, Hom(X, G))|
    bool bijective = false;
    bool ok() const { return tensor_side == hom_side && bijective; }
};

// Sends h : Y (x) X -> G to the family y -> (x -> h(y (x) x)) and checks it is a bijection element by element.
AdjunctionCheck verify_adjunction(const Representation& y, const Representation& x, const FiniteModule& g);

// The family induced by h, as a morphism Y -> Hom(X, G).
RepMorphism adjunct(const TensorResult& t, const HomRep& h, const ModuleMap& map);

// Naturality in G: adjunct(u o h) = Hom(X, u) o adjunct(h) for every h.
bool adjunction_natural_in_g(const Representation& y, const Representation& x, const ModuleMap& u);

// zeta : Hom(Y, Hom(X, G)) -> Hom(X, Hom(Y, G)), checked as an elementwise bijection.
AdjunctionCheck verify_swap(const Representation& y, const Representation& x, const FiniteModule& g);

// Y (x) X -> X (x) Y induced by the slotwise swap; an isomorphism.
ModuleMap tensor_commutativity_map(const TensorResult& yx, const TensorResult& xy);

// Character dual over opposite(Q): X+(i) = X(i)+, arrows dualized.
Representation char_dual_rep(const Representation& x);
// psi_i of X+ equals the dual of phi_i of X after identifying (sum M_k)+ with sum M_k+.
bool psi_of_dual_matches(const Representation& x, std::size_t i);
// (X+)+ has the same modules and arrow matrices as X, and evaluation is a natural isomorphism.
bool double_dual_matches(const Representation& x);

// Generating family of short exact sequences over opposite(Q): 0 -> J -> P_i -> P_i/J -> 0 for all
// subrepresentations J of each indecomposable projective, plus stalk sequences 0 -> N -> M -> M/N -> 0
// for vertex modules M of order <= stalk_bound.
std::vector<RepSES> opposite_test_family(const Quiver& q, const RingSpec& ring, std::uint64_t stalk_bound = 4);

// All subrepresentations of x (vertexwise submodules stable under arrows).
std::vector<RepKernel> subrepresentations(const Representation& x);

struct TensorExactness {
    bool flat = false;          // Phi(Flat)
    bool tensor_exact = false;  // every family sequence stays short exact after (-) (x) X
    bool dual_injective = false;  // Ext^1(C, X+) = 0 for the cokernels C of the family
    std::optional<std::size_t> witness;  // index into the family of the first failing sequence
    bool agree() const { return flat == tensor_exact && tensor_exact == dual_injective; }
};

// Precomputed family with cached free resolutions of the cokernel terms.
class TensorExactnessChecker {
public:
    TensorExactnessChecker(const Quiver& q, const RingSpec& ring, std::uint64_t stalk_bound = 4);

    const std::vector<RepSES>& family() const { return family_; }
    TensorExactness check(const Representation& x, OracleFault fault = OracleFault::none) const;

private:
    Quiver quiver_;
    RingSpec ring_;
    std::vector<RepSES> family_;
    std::vector<FreeResolution> resolutions_;
};

TensorExactness flat_iff_tensor_exact(const Representation& x, OracleFault fault = OracleFault::none);

}  // namespace qrep
