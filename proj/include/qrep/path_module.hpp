#pragma once

#include <vector>

#include "qrep/representation.hpp"

namespace qrep {

// X(p) for a path p (identity on trivial paths).
ModuleMap path_map(const Representation& x, const Path& p);

// Left module over the path ring: underlying module plus the action of each basis path.
struct PathModule {
    PathRing ring;
    FiniteModule module;
    std::vector<ModuleMap> action;
};

// M = sum of the X(i); e_i projects onto X(i), a path acts by its composite map.
PathModule to_path_module(const Representation& x);
// Ring-module axioms on basis paths: p.(q.m) = (pq).m, sum of e_i = identity.
bool satisfies_module_axioms(const PathModule& m);

struct RepFromModule {
    Representation rep;
    std::vector<ModuleMap> embeddings;  // X(i) -> M, image e_i M
};
RepFromModule from_path_module(const PathModule& m);

// Direct sum of projectives P_{v} = RQ e_v, one per generator; P_v(j) has the paths v -> j as basis.
class FreeRep {
public:
    FreeRep(const Quiver& q, const RingSpec& ring, std::vector<std::size_t> generator_vertices);

    const Representation& rep() const { return rep_; }
    const PathRing& path_ring() const { return paths_; }
    const std::vector<std::size_t>& generators() const { return gens_; }
    // Coordinates of F(j): (generator, path) pairs in order.
    const std::vector<std::pair<std::size_t, std::size_t>>& coordinates(std::size_t j) const { return coords_.at(j); }
    // The generator g as an element of F(v_g).
    Element generator_element(std::size_t g) const;
    // Unique morphism sending generator g to images[g] in target(v_g).
    RepMorphism map_to(const Representation& target, const std::vector<Element>& images) const;

private:
    PathRing paths_;
    std::vector<std::size_t> gens_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> coords_;
    Representation rep_;
};

FreeRep projective_rep(const Quiver& q, const RingSpec& ring, std::size_t vertex);

struct FreeCover {
    FreeRep free;
    RepMorphism cover;  // onto x, generators go to the module generators of each X(i)
    RepKernel kernel;
};
FreeCover free_cover(const Representation& x);

// Hom(mu, Y) : Hom(F, Y) -> Hom(F', Y) for mu : F' -> F between free representations, with
// Hom(F, Y) identified with the sum over generators g of Y(v_g).
ModuleMap free_hom_map(const FreeRep& from, const FreeRep& to, const RepMorphism& mu, const Representation& y);

// F2 -> F1 -> F0 -> X -> 0, each F_k the free cover of the previous kernel.
struct FreeResolution {
    FreeCover c0;
    FreeCover c1;
    FreeCover c2;
    RepMorphism mu1;  // F1 -> F0
    RepMorphism mu2;  // F2 -> F1
};
FreeResolution free_resolution(const Representation& x);
// Homology of Hom(F0, Y) -> Hom(F1, Y) -> Hom(F2, Y).
FiniteModule ext1_from_resolution(const FreeResolution& r, const Representation& y);

// Ext^1 over the path ring from a free resolution F2 -> F1 -> F0 -> X.
FiniteModule ext1_rep(const Representation& x, const Representation& y);

// Ext^1(X, K) = 0 for the kernel K of the free cover.
bool is_projective_by_splitting(const Representation& x);

}  // namespace qrep
