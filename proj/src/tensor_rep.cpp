#include "qrep/tensor_rep.hpp"

#include <set>
#include <stdexcept>

namespace qrep {

HomRep hom_rep(const Representation& x, const FiniteModule& g) {
    const Quiver& q = x.quiver();
    if (!(g.ring() == x.ring())) throw std::invalid_argument("hom_rep: rings differ");
    std::vector<HomModule> homs;
    std::vector<FiniteModule> mods;
    for (const auto& m : x.modules()) {
        homs.emplace_back(m, g);
        mods.push_back(homs.back().module());
    }
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        maps.push_back(precompose_map(homs[ar.target], homs[ar.source], x.map(a)));
    }
    return {Representation(opposite(q), x.ring(), mods, maps), std::move(homs)};
}

TensorResult::TensorResult(const Representation& y, const Representation& x)
    : y_(y),
      x_(x),
      sum_{FiniteModule::zero(x.ring()), {}, {}, {}},
      value_(FiniteModule::zero(x.ring())),
      projection_(ModuleMap::zero(value_, value_)) {
    const Quiver& q = x.quiver();
    if (!(y.quiver() == opposite(q))) throw std::invalid_argument("tensor_rep: left factor must live on the opposite quiver");
    if (!(y.ring() == x.ring())) throw std::invalid_argument("tensor_rep: rings differ");
    std::vector<FiniteModule> parts;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        slots_.emplace_back(y.module(i), x.module(i));
        parts.push_back(slots_.back().module());
    }
    sum_ = direct_sum(x.ring(), parts);
    std::vector<TensorModule> rel;
    std::vector<FiniteModule> rel_parts;
    for (const auto& ar : q.arrows()) {
        rel.emplace_back(y.module(ar.target), x.module(ar.source));
        rel_parts.push_back(rel.back().module());
    }
    DirectSum rs = direct_sum(x.ring(), rel_parts);
    std::vector<ModuleMap> comps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        auto left = tensor_maps(rel[a], slots_[ar.source], y.map(a), ModuleMap::identity(x.module(ar.source)));
        auto right = tensor_maps(rel[a], slots_[ar.target], ModuleMap::identity(y.module(ar.target)), x.map(a));
        comps.push_back(compose(sum_.injections[ar.source], left) - compose(sum_.injections[ar.target], right));
    }
    auto c = cokernel(copair(rs, comps, sum_.module));
    value_ = c.module;
    projection_ = c.projection;
}

Element TensorResult::pure(std::size_t i, const Element& y, const Element& x) const {
    return projection_.apply(sum_.injections.at(i).apply(slots_.at(i).pure(y, x)));
}

namespace {

ModuleMap induced(const TensorResult& from, const TensorResult& to, const std::vector<ModuleMap>& slot_maps) {
    auto m = direct_sum_map(from.sum(), to.sum(), slot_maps);
    auto d = descend_through_epi(from.projection(), compose(to.projection(), m));
    if (!d) throw std::logic_error("tensor map does not respect the relations");
    return *d;
}

}  // namespace

ModuleMap tensor_map_left(const TensorResult& from, const TensorResult& to, const RepMorphism& f) {
    std::vector<ModuleMap> s;
    for (std::size_t i = 0; i < f.components().size(); ++i)
        s.push_back(tensor_maps(from.slot(i), to.slot(i), f.component(i), ModuleMap::identity(from.right().module(i))));
    return induced(from, to, s);
}

ModuleMap tensor_map_right(const TensorResult& from, const TensorResult& to, const RepMorphism& g) {
    std::vector<ModuleMap> s;
    for (std::size_t i = 0; i < g.components().size(); ++i)
        s.push_back(tensor_maps(from.slot(i), to.slot(i), ModuleMap::identity(from.left().module(i)), g.component(i)));
    return induced(from, to, s);
}

RepMorphism adjunct(const TensorResult& t, const HomRep& h, const ModuleMap& map) {
    const Representation& y = t.left();
    const Representation& x = t.right();
    const FiniteModule& g = map.target();
    std::vector<ModuleMap> comps;
    for (std::size_t i = 0; i < y.modules().size(); ++i) {
        std::vector<Element> cols;
        for (std::size_t s = 0; s < y.module(i).rank(); ++s) {
            std::vector<Element> images;
            for (std::size_t r = 0; r < x.module(i).rank(); ++r)
                images.push_back(map.apply(t.pure(i, y.module(i).generator(s), x.module(i).generator(r))));
            cols.push_back(h.homs[i].element_of(ModuleMap::from_images(x.module(i), g, images)));
        }
        comps.push_back(ModuleMap::from_images(y.module(i), h.rep.module(i), cols));
    }
    return RepMorphism(y, h.rep, comps);
}

AdjunctionCheck verify_adjunction(const Representation& y, const Representation& x, const FiniteModule& g) {
    TensorResult t(y, x);
    HomRep h = hom_rep(x, g);
    RepHom rh(y, h.rep);
    AdjunctionCheck out;
    out.tensor_side = hom_count(t.value(), g);
    out.hom_side = rh.count();
    std::set<std::uint64_t> seen;
    bool ok = true;
    for_each_hom(t.value(), g, [&](const ModuleMap& f) {
        auto idx = rh.module().index_of(rh.element_of(adjunct(t, h, f)));
        ok = seen.insert(idx).second;
        return ok;
    });
    out.bijective = ok && seen.size() == out.hom_side;
    return out;
}

bool adjunction_natural_in_g(const Representation& y, const Representation& x, const ModuleMap& u) {
    TensorResult t(y, x);
    HomRep h1 = hom_rep(x, u.source()), h2 = hom_rep(x, u.target());
    std::vector<ModuleMap> post;
    for (std::size_t i = 0; i < x.modules().size(); ++i) post.push_back(postcompose_map(h1.homs[i], h2.homs[i], u));
    bool ok = true;
    for_each_hom(t.value(), u.source(), [&](const ModuleMap& f) {
        auto lhs = adjunct(t, h2, compose(u, f));
        auto rhs = adjunct(t, h1, f);
        for (std::size_t i = 0; i < post.size() && ok; ++i) ok = lhs.component(i) == compose(post[i], rhs.component(i));
        return ok;
    });
    return ok;
}

AdjunctionCheck verify_swap(const Representation& y, const Representation& x, const FiniteModule& g) {
    HomRep hx = hom_rep(x, g), hy = hom_rep(y, g);
    RepHom a(y, hx.rep), b(x, hy.rep);
    AdjunctionCheck out;
    out.tensor_side = a.count();
    out.hom_side = b.count();
    std::set<std::uint64_t> seen;
    bool ok = true;
    a.for_each([&](const RepMorphism& f) {
        std::vector<ModuleMap> comps;
        for (std::size_t i = 0; i < x.modules().size(); ++i) {
            std::vector<Element> cols;
            for (std::size_t r = 0; r < x.module(i).rank(); ++r) {
                std::vector<Element> images;
                for (std::size_t s = 0; s < y.module(i).rank(); ++s)
                    images.push_back(
                        hx.homs[i].map_of(f.component(i).apply(y.module(i).generator(s))).apply(x.module(i).generator(r)));
                cols.push_back(hy.homs[i].element_of(ModuleMap::from_images(y.module(i), g, images)));
            }
            comps.push_back(ModuleMap::from_images(x.module(i), hy.rep.module(i), cols));
        }
        auto idx = b.module().index_of(b.element_of(RepMorphism(x, hy.rep, comps)));
        ok = seen.insert(idx).second;
        return ok;
    });
    out.bijective = ok && seen.size() == out.hom_side;
    return out;
}

ModuleMap tensor_commutativity_map(const TensorResult& yx, const TensorResult& xy) {
    std::vector<ModuleMap> s;
    for (std::size_t i = 0; i < yx.left().modules().size(); ++i) {
        const auto& src = yx.slot(i);
        const auto& dst = xy.slot(i);
        std::vector<Element> cols;
        for (std::size_t t = 0; t < src.module().rank(); ++t) {
            auto lift = src.generator_lift(t);
            Element acc = dst.module().zero_element();
            for (std::size_t k = 0; k < src.slots().size(); ++k) {
                if (lift[k] == 0) continue;
                const auto& sl = src.slots()[k];
                auto e = dst.pure(src.right().generator(sl.right), src.left().generator(sl.left));
                acc = dst.module().add(acc, dst.module().scale(lift[k], e));
            }
            cols.push_back(acc);
        }
        s.push_back(ModuleMap::from_images(src.module(), dst.module(), cols));
    }
    return induced(yx, xy, s);
}

Representation char_dual_rep(const Representation& x) {
    std::vector<FiniteModule> mods;
    for (const auto& m : x.modules()) mods.push_back(dual_plus(m));
    std::vector<ModuleMap> maps;
    for (const auto& f : x.maps()) maps.push_back(dual_plus_map(f));
    return Representation(opposite(x.quiver()), x.ring(), mods, maps);
}

bool psi_of_dual_matches(const Representation& x, std::size_t i) {
    auto xp = char_dual_rep(x);
    auto p = phi(x, i);
    auto s = psi(xp, i);
    if (p.arrows != s.arrows) return false;
    std::vector<ModuleMap> duals;
    for (const auto& inj : p.sum.injections) duals.push_back(dual_plus_map(inj));
    auto iota = pair(dual_plus(p.sum.module), duals, s.sum);
    return s.map == compose(iota, dual_plus_map(p.map));
}

bool double_dual_matches(const Representation& x) {
    auto xpp = char_dual_rep(char_dual_rep(x));
    if (!(xpp.quiver() == x.quiver())) return false;
    if (xpp.modules() != x.modules()) return false;
    for (std::size_t a = 0; a < x.maps().size(); ++a)
        if (!(xpp.map(a).matrix() == x.map(a).matrix())) return false;
    std::vector<ModuleMap> ev;
    for (const auto& m : x.modules()) {
        ev.push_back(double_dual_evaluation(m));
        if (!is_isomorphism(ev.back())) return false;
    }
    return RepMorphism::is_natural(x, xpp, ev);
}

std::vector<RepKernel> subrepresentations(const Representation& x) {
    const Quiver& q = x.quiver();
    std::vector<std::vector<ModuleMap>> subs;
    for (const auto& m : x.modules()) subs.push_back(submodules(m));
    std::vector<RepKernel> out;
    std::vector<std::size_t> idx(q.vertex_count(), 0);
    while (true) {
        bool stable = true;
        for (std::size_t a = 0; a < q.arrow_count() && stable; ++a) {
            const auto& ar = q.arrow(a);
            stable = lift_through_mono(subs[ar.target][idx[ar.target]],
                                       compose(x.map(a), subs[ar.source][idx[ar.source]])).has_value();
        }
        if (stable) {
            std::vector<ModuleMap> inc;
            for (std::size_t i = 0; i < idx.size(); ++i) inc.push_back(subs[i][idx[i]]);
            out.push_back(subrepresentation(x, inc));
        }
        std::size_t k = idx.size();
        while (k-- > 0) {
            if (++idx[k] < subs[k].size()) break;
            idx[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

std::vector<RepSES> opposite_test_family(const Quiver& q, const RingSpec& ring, std::uint64_t stalk_bound) {
    Quiver op = opposite(q);
    std::vector<RepSES> out;
    for (std::size_t v = 0; v < op.vertex_count(); ++v) {
        auto p = projective_rep(op, ring, v).rep();
        for (auto& j : subrepresentations(p)) {
            auto c = rep_cokernel(j.inclusion);
            out.emplace_back(j.inclusion, c.projection);
        }
    }
    auto mods = modules_up_to(ring, stalk_bound);
    for (std::size_t v = 0; v < op.vertex_count(); ++v)
        for (const auto& m : mods) {
            if (m.is_zero()) continue;
            auto s = Representation::stalk(op, m, v);
            for (const auto& inc : submodules(m)) {
                std::vector<ModuleMap> incs;
                for (std::size_t i = 0; i < op.vertex_count(); ++i)
                    incs.push_back(i == v ? inc : ModuleMap::zero(s.module(i), s.module(i)));
                auto j = subrepresentation(s, incs);
                auto c = rep_cokernel(j.inclusion);
                out.emplace_back(j.inclusion, c.projection);
            }
        }
    return out;
}

TensorExactnessChecker::TensorExactnessChecker(const Quiver& q, const RingSpec& ring, std::uint64_t stalk_bound)
    : quiver_(q), ring_(ring), family_(opposite_test_family(q, ring, stalk_bound)) {
    if (!is_left_rooted(q)) throw std::invalid_argument("flat_iff_tensor_exact: quiver is not left rooted");
    for (const auto& s : family_) resolutions_.push_back(free_resolution(s.right()));
}

TensorExactness TensorExactnessChecker::check(const Representation& x, OracleFault fault) const {
    if (!(x.quiver() == quiver_) || !(x.ring() == ring_))
        throw std::invalid_argument("flat_iff_tensor_exact: representation does not match the checker");
    TensorExactness out;
    out.flat = is_flat_rep(x, fault);
    out.tensor_exact = true;
    for (std::size_t k = 0; k < family_.size(); ++k) {
        const auto& s = family_[k];
        TensorResult tl(s.left(), x), tm(s.middle(), x), tr(s.right(), x);
        if (!ModuleSES::is_exact(tensor_map_left(tl, tm, s.f()), tensor_map_left(tm, tr, s.g()))) {
            out.tensor_exact = false;
            out.witness = k;
            break;
        }
    }
    auto xp = char_dual_rep(x);
    out.dual_injective = true;
    for (const auto& r : resolutions_)
        if (!ext1_from_resolution(r, xp).is_zero()) {
            out.dual_injective = false;
            break;
        }
    return out;
}

TensorExactness flat_iff_tensor_exact(const Representation& x, OracleFault fault) {
    return TensorExactnessChecker(x.quiver(), x.ring()).check(x, fault);
}

}  // namespace qrep
