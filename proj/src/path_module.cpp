#include "qrep/path_module.hpp"

#include <stdexcept>

namespace qrep {

ModuleMap path_map(const Representation& x, const Path& p) {
    ModuleMap m = ModuleMap::identity(x.module(p.source));
    for (auto a : p.arrows) m = compose(x.map(a), m);
    return m;
}

PathModule to_path_module(const Representation& x) {
    PathRing ring(x.quiver(), x.ring());
    DirectSum sum = direct_sum(x.ring(), x.modules());
    std::vector<ModuleMap> action;
    for (const auto& p : ring.basis())
        action.push_back(compose(sum.injections[p.target], compose(path_map(x, p), sum.projections[p.source])));
    return {std::move(ring), sum.module, std::move(action)};
}

bool satisfies_module_axioms(const PathModule& m) {
    const auto n = m.ring.size();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            auto lhs = compose(m.action[p], m.action[q]);
            auto pq = m.ring.product(p, q);
            if (pq ? !(lhs == m.action[*pq]) : !lhs.is_zero()) return false;
        }
    ModuleMap total = ModuleMap::zero(m.module, m.module);
    for (std::size_t v = 0; v < m.ring.quiver().vertex_count(); ++v) total = total + m.action[m.ring.trivial(v)];
    return total == ModuleMap::identity(m.module);
}

RepFromModule from_path_module(const PathModule& m) {
    const Quiver& q = m.ring.quiver();
    std::vector<FiniteModule> mods;
    std::vector<ModuleMap> emb;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        auto im = image(m.action[m.ring.trivial(v)]);
        mods.push_back(im.module);
        emb.push_back(im.inclusion);
    }
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        auto f = lift_through_mono(emb[ar.target], compose(m.action[m.ring.arrow_path(a)], emb[ar.source]));
        if (!f) throw std::invalid_argument("from_path_module: arrow action leaves e_j M");
        maps.push_back(*f);
    }
    return {Representation(q, m.ring.ring(), mods, maps), emb};
}

namespace {

Representation build_free(const Quiver& q, const RingSpec& ring, const PathRing& paths,
                          const std::vector<std::size_t>& gens,
                          std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& coords) {
    coords.assign(q.vertex_count(), {});
    for (std::size_t j = 0; j < q.vertex_count(); ++j)
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (auto p : paths.paths_between(gens[g], j)) coords[j].emplace_back(g, p);
    std::vector<FiniteModule> mods;
    for (std::size_t j = 0; j < q.vertex_count(); ++j) mods.push_back(FiniteModule::free(ring, coords[j].size()));
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        const auto& src = coords[ar.source];
        const auto& dst = coords[ar.target];
        ModularMatrix mat(ring.modulus(), dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            auto longer = paths.product(paths.arrow_path(a), src[c].second);
            std::pair<std::size_t, std::size_t> key{src[c].first, *longer};
            for (std::size_t r = 0; r < dst.size(); ++r)
                if (dst[r] == key) mat.set(r, c, 1);
        }
        maps.emplace_back(mods[ar.source], mods[ar.target], mat);
    }
    return Representation(q, ring, mods, maps);
}

}  // namespace

FreeRep::FreeRep(const Quiver& q, const RingSpec& ring, std::vector<std::size_t> generator_vertices)
    : paths_(q, ring),
      gens_(std::move(generator_vertices)),
      rep_(build_free(q, ring, paths_, gens_, coords_)) {}

Element FreeRep::generator_element(std::size_t g) const {
    const auto v = gens_.at(g);
    Element e(coords_[v].size(), 0);
    for (std::size_t r = 0; r < e.size(); ++r)
        if (coords_[v][r] == std::make_pair(g, paths_.trivial(v))) e[r] = 1;
    return e;
}

RepMorphism FreeRep::map_to(const Representation& target, const std::vector<Element>& images) const {
    if (images.size() != gens_.size()) throw std::invalid_argument("map_to: one image per generator required");
    std::vector<ModuleMap> comps;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        std::vector<Element> cols;
        for (const auto& [g, p] : coords_[j]) cols.push_back(path_map(target, paths_.basis()[p]).apply(images[g]));
        comps.push_back(ModuleMap::from_images(rep_.module(j), target.module(j), cols));
    }
    return RepMorphism(rep_, target, comps);
}

FreeRep projective_rep(const Quiver& q, const RingSpec& ring, std::size_t vertex) {
    return FreeRep(q, ring, {vertex});
}

FreeCover free_cover(const Representation& x) {
    // Lifts of generators of each C_v generate X on an acyclic quiver; all generators otherwise.
    std::vector<std::size_t> gens;
    std::vector<Element> images;
    for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v) {
        CokernelResult c = coker_c(x, v);
        Preimager lift(c.projection);
        for (std::size_t t = 0; t < c.module.rank(); ++t) {
            gens.push_back(v);
            images.push_back(*lift(c.module.generator(t)));
        }
    }
    FreeRep small(x.quiver(), x.ring(), gens);
    RepMorphism cover = small.map_to(x, images);
    bool onto = true;
    for (const auto& f : cover.components()) onto = onto && is_surjective(f);
    if (onto) {
        RepKernel k = rep_kernel(cover);
        return {std::move(small), std::move(cover), std::move(k)};
    }
    gens.clear();
    images.clear();
    for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v)
        for (std::size_t t = 0; t < x.module(v).rank(); ++t) {
            gens.push_back(v);
            images.push_back(x.module(v).generator(t));
        }
    FreeRep free(x.quiver(), x.ring(), gens);
    RepMorphism full = free.map_to(x, images);
    RepKernel k = rep_kernel(full);
    return {std::move(free), std::move(full), std::move(k)};
}

ModuleMap free_hom_map(const FreeRep& from, const FreeRep& to, const RepMorphism& mu, const Representation& y) {
    // mu : to -> from.
    std::vector<FiniteModule> src_parts, dst_parts;
    for (auto v : from.generators()) src_parts.push_back(y.module(v));
    for (auto v : to.generators()) dst_parts.push_back(y.module(v));
    DirectSum src = direct_sum(y.ring(), src_parts), dst = direct_sum(y.ring(), dst_parts);
    std::vector<ModuleMap> parts;
    for (std::size_t g = 0; g < from.generators().size(); ++g) {
        std::vector<Element> cols;
        for (std::size_t t = 0; t < src_parts[g].rank(); ++t) {
            Element yg = src_parts[g].generator(t);
            Element out = dst.module.zero_element();
            for (std::size_t h = 0; h < to.generators().size(); ++h) {
                const auto w = to.generators()[h];
                Element muh = mu.component(w).apply(to.generator_element(h));
                Element acc = dst_parts[h].zero_element();
                const auto& coords = from.coordinates(w);
                for (std::size_t r = 0; r < coords.size(); ++r) {
                    if (coords[r].first != g || muh[r] == 0) continue;
                    Element v = path_map(y, from.path_ring().basis()[coords[r].second]).apply(yg);
                    acc = dst_parts[h].add(acc, dst_parts[h].scale(muh[r], v));
                }
                out = dst.module.add(out, dst.injections[h].apply(acc));
            }
            cols.push_back(out);
        }
        parts.push_back(ModuleMap::from_images(src_parts[g], dst.module, cols));
    }
    return copair(src, parts, dst.module);
}

FreeResolution free_resolution(const Representation& x) {
    if (has_directed_cycle(x.quiver())) throw std::invalid_argument("free_resolution: quiver has a directed cycle");
    FreeCover c0 = free_cover(x);
    FreeCover c1 = free_cover(c0.kernel.rep);
    FreeCover c2 = free_cover(c1.kernel.rep);
    RepMorphism mu1 = compose(c0.kernel.inclusion, c1.cover);
    RepMorphism mu2 = compose(c1.kernel.inclusion, c2.cover);
    return {std::move(c0), std::move(c1), std::move(c2), std::move(mu1), std::move(mu2)};
}

FiniteModule ext1_from_resolution(const FreeResolution& r, const Representation& y) {
    if (!(r.c0.cover.target().quiver() == y.quiver())) throw std::invalid_argument("ext1: quivers differ");
    if (!(r.c0.cover.target().ring() == y.ring())) throw std::invalid_argument("ext1: rings differ");
    ModuleMap alpha = free_hom_map(r.c0.free, r.c1.free, r.mu1, y);
    ModuleMap beta = free_hom_map(r.c1.free, r.c2.free, r.mu2, y);
    return homology(alpha, beta).module;
}

FiniteModule ext1_rep(const Representation& x, const Representation& y) {
    if (!(x.quiver() == y.quiver())) throw std::invalid_argument("ext1_rep: quivers differ");
    if (!(x.ring() == y.ring())) throw std::invalid_argument("ext1_rep: rings differ");
    if (has_directed_cycle(x.quiver())) throw std::invalid_argument("ext1_rep: quiver has a directed cycle");
    return ext1_from_resolution(free_resolution(x), y);
}

bool is_projective_by_splitting(const Representation& x) {
    return ext1_rep(x, free_cover(x).kernel.rep).is_zero();
}

}  // namespace qrep
