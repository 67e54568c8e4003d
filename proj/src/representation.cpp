#include "qrep/representation.hpp"

#include <sstream>
#include <stdexcept>

namespace qrep {

Representation::Representation(Quiver quiver, RingSpec ring, std::vector<FiniteModule> modules,
                               std::vector<ModuleMap> maps)
    : quiver_(std::make_shared<const Quiver>(std::move(quiver))),
      ring_(std::move(ring)),
      modules_(std::move(modules)),
      maps_(std::move(maps)) {
    const Quiver& q = *quiver_;
    if (modules_.size() != q.vertex_count()) throw std::invalid_argument("representation: wrong number of modules");
    if (maps_.size() != q.arrow_count()) throw std::invalid_argument("representation: wrong number of maps");
    for (const auto& m : modules_)
        if (!(m.ring() == ring_)) throw std::invalid_argument("representation: module over the wrong ring");
    for (std::size_t a = 0; a < maps_.size(); ++a) {
        const auto& ar = q.arrow(a);
        if (!(maps_[a].source() == modules_[ar.source]) || !(maps_[a].target() == modules_[ar.target]))
            throw std::invalid_argument("representation: map for arrow '" + ar.name +
                                        "' does not match the vertex modules");
    }
}

Representation Representation::zero(const Quiver& q, const RingSpec& ring) {
    auto z = FiniteModule::zero(ring);
    std::vector<FiniteModule> mods(q.vertex_count(), z);
    std::vector<ModuleMap> maps(q.arrow_count(), ModuleMap::zero(z, z));
    return Representation(q, ring, mods, maps);
}

Representation Representation::stalk(const Quiver& q, const FiniteModule& m, std::size_t vertex) {
    const RingSpec& ring = m.ring();
    std::vector<FiniteModule> mods(q.vertex_count(), FiniteModule::zero(ring));
    mods.at(vertex) = m;
    std::vector<ModuleMap> maps;
    for (const auto& a : q.arrows()) maps.push_back(ModuleMap::zero(mods[a.source], mods[a.target]));
    return Representation(q, ring, mods, maps);
}

bool Representation::is_zero() const {
    for (const auto& m : modules_)
        if (!m.is_zero()) return false;
    return true;
}

std::uint64_t Representation::total_order() const {
    std::uint64_t o = 1;
    for (const auto& m : modules_) o *= m.order();
    return o;
}

std::string Representation::to_string() const {
    std::ostringstream os;
    const Quiver& q = *quiver_;
    for (std::size_t i = 0; i < modules_.size(); ++i)
        os << (i ? ", " : "") << q.vertex_name(i) << ": " << modules_[i].to_string();
    for (std::size_t a = 0; a < maps_.size(); ++a) os << "; " << q.arrow(a).name << " = " << maps_[a].matrix().to_string();
    return os.str();
}

bool RepMorphism::is_natural(const Representation& source, const Representation& target,
                             const std::vector<ModuleMap>& components) {
    const Quiver& q = source.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        if (!(compose(target.map(a), components[ar.source]) == compose(components[ar.target], source.map(a))))
            return false;
    }
    return true;
}

RepMorphism::RepMorphism(Representation source, Representation target, std::vector<ModuleMap> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (!(source_.quiver() == target_.quiver())) throw std::invalid_argument("morphism: quivers differ");
    if (components_.size() != source_.quiver().vertex_count())
        throw std::invalid_argument("morphism: wrong number of components");
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (!(components_[i].source() == source_.module(i)) || !(components_[i].target() == target_.module(i)))
            throw std::invalid_argument("morphism: component at vertex '" + source_.quiver().vertex_name(i) +
                                        "' has the wrong modules");
    if (!is_natural(source_, target_, components_)) throw std::invalid_argument("morphism: not natural");
}

RepMorphism RepMorphism::identity(const Representation& x) {
    std::vector<ModuleMap> c;
    for (const auto& m : x.modules()) c.push_back(ModuleMap::identity(m));
    return RepMorphism(x, x, c);
}

RepMorphism RepMorphism::zero(const Representation& x, const Representation& y) {
    std::vector<ModuleMap> c;
    for (std::size_t i = 0; i < x.modules().size(); ++i) c.push_back(ModuleMap::zero(x.module(i), y.module(i)));
    return RepMorphism(x, y, c);
}

bool RepMorphism::is_zero() const {
    for (const auto& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
    std::vector<ModuleMap> c;
    for (std::size_t i = 0; i < f.components().size(); ++i) c.push_back(compose(g.component(i), f.component(i)));
    return RepMorphism(f.source(), g.target(), c);
}

bool RepSES::is_exact(const RepMorphism& f, const RepMorphism& g) {
    if (!(f.target() == g.source())) return false;
    for (std::size_t i = 0; i < f.components().size(); ++i)
        if (!ModuleSES::is_exact(f.component(i), g.component(i))) return false;
    return true;
}

RepSES::RepSES(RepMorphism f, RepMorphism g) : f_(std::move(f)), g_(std::move(g)) {
    if (!is_exact(f_, g_)) throw std::invalid_argument("sequence of representations is not short exact");
}

CanonicalMap phi(const Representation& x, std::size_t i) {
    const Quiver& q = x.quiver();
    if (i >= q.vertex_count()) throw std::invalid_argument("phi: unknown vertex");
    const auto& arrows = q.arrows_into(i);
    std::vector<FiniteModule> parts;
    std::vector<ModuleMap> maps;
    for (auto a : arrows) {
        parts.push_back(x.module(q.arrow(a).source));
        maps.push_back(x.map(a));
    }
    DirectSum sum = direct_sum(x.ring(), parts);
    ModuleMap m = copair(sum, maps, x.module(i));
    return {arrows, std::move(sum), std::move(m)};
}

CanonicalMap psi(const Representation& x, std::size_t i) {
    const Quiver& q = x.quiver();
    if (i >= q.vertex_count()) throw std::invalid_argument("psi: unknown vertex");
    const auto& arrows = q.arrows_out_of(i);
    std::vector<FiniteModule> parts;
    std::vector<ModuleMap> maps;
    for (auto a : arrows) {
        parts.push_back(x.module(q.arrow(a).target));
        maps.push_back(x.map(a));
    }
    DirectSum sum = direct_sum(x.ring(), parts);
    ModuleMap m = pair(x.module(i), maps, sum);
    return {arrows, std::move(sum), std::move(m)};
}

CokernelResult coker_c(const Representation& x, std::size_t i) { return cokernel(phi(x, i).map); }
KernelResult ker_k(const Representation& x, std::size_t i) { return kernel(psi(x, i).map); }

bool in_phi_class(const Representation& x, const ModulePredicate& pred) {
    for (std::size_t i = 0; i < x.quiver().vertex_count(); ++i) {
        auto p = phi(x, i);
        if (!is_injective(p.map)) return false;
        if (!pred(x.module(i))) return false;
        if (!pred(cokernel(p.map).module)) return false;
    }
    return true;
}

bool in_psi_class(const Representation& x, const ModulePredicate& pred) {
    for (std::size_t i = 0; i < x.quiver().vertex_count(); ++i) {
        auto p = psi(x, i);
        if (!is_surjective(p.map)) return false;
        if (!pred(x.module(i))) return false;
        if (!pred(kernel(p.map).module)) return false;
    }
    return true;
}

bool in_rep_class(const Representation& x, const ModulePredicate& pred) {
    for (const auto& m : x.modules())
        if (!pred(m)) return false;
    return true;
}

namespace {

void require_left_rooted(const Representation& x) {
    if (!is_left_rooted(x.quiver())) throw std::invalid_argument("quiver is not left rooted");
}

bool in_phi_tag(const Representation& x, ClassTag tag, OracleFault fault) {
    require_left_rooted(x);
    return in_phi_class(x, ModuleClass(x.ring(), {tag}, fault).predicate());
}

}  // namespace

bool is_flat_rep(const Representation& x, OracleFault fault) { return in_phi_tag(x, ClassTag::Flat, fault); }
bool is_gorenstein_flat_rep(const Representation& x, OracleFault fault) { return in_phi_tag(x, ClassTag::GF, fault); }
bool is_pgf_rep(const Representation& x, OracleFault fault) { return in_phi_tag(x, ClassTag::PGF, fault); }
bool is_projective_rep(const Representation& x, OracleFault fault) { return in_phi_tag(x, ClassTag::Prj, fault); }

RepKernel rep_kernel(const RepMorphism& f) {
    const Representation& x = f.source();
    const Quiver& q = x.quiver();
    std::vector<KernelResult> ks;
    for (const auto& c : f.components()) ks.push_back(kernel(c));
    std::vector<FiniteModule> mods;
    std::vector<ModuleMap> incl;
    for (auto& k : ks) {
        mods.push_back(k.module);
        incl.push_back(k.inclusion);
    }
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        auto m = lift_through_mono(incl[ar.target], compose(x.map(a), incl[ar.source]));
        if (!m) throw std::logic_error("rep_kernel: arrow does not restrict");
        maps.push_back(*m);
    }
    Representation k(q, x.ring(), mods, maps);
    return {k, RepMorphism(k, x, incl)};
}

RepCokernel rep_cokernel(const RepMorphism& f) {
    const Representation& y = f.target();
    const Quiver& q = y.quiver();
    std::vector<FiniteModule> mods;
    std::vector<ModuleMap> proj;
    for (const auto& c : f.components()) {
        auto ck = cokernel(c);
        mods.push_back(ck.module);
        proj.push_back(ck.projection);
    }
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        auto m = descend_through_epi(proj[ar.source], compose(proj[ar.target], y.map(a)));
        if (!m) throw std::logic_error("rep_cokernel: arrow does not descend");
        maps.push_back(*m);
    }
    Representation c(q, y.ring(), mods, maps);
    return {c, RepMorphism(y, c, proj)};
}

RepDirectSum rep_direct_sum(const std::vector<Representation>& parts) {
    if (parts.empty()) throw std::invalid_argument("rep_direct_sum: no summands");
    const Quiver& q = parts.front().quiver();
    const RingSpec& ring = parts.front().ring();
    std::vector<DirectSum> sums;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        std::vector<FiniteModule> ms;
        for (const auto& p : parts) ms.push_back(p.module(i));
        sums.push_back(direct_sum(ring, ms));
    }
    std::vector<FiniteModule> mods;
    for (const auto& s : sums) mods.push_back(s.module);
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        std::vector<ModuleMap> diag;
        for (const auto& p : parts) diag.push_back(p.map(a));
        maps.push_back(direct_sum_map(sums[ar.source], sums[ar.target], diag));
    }
    Representation total(q, ring, mods, maps);
    RepDirectSum out{total, {}, {}};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        std::vector<ModuleMap> inj, proj;
        for (std::size_t i = 0; i < q.vertex_count(); ++i) {
            inj.push_back(sums[i].injections[k]);
            proj.push_back(sums[i].projections[k]);
        }
        out.injections.emplace_back(parts[k], total, inj);
        out.projections.emplace_back(total, parts[k], proj);
    }
    return out;
}

RepKernel subrepresentation(const Representation& x, const std::vector<ModuleMap>& inclusions) {
    const Quiver& q = x.quiver();
    std::vector<FiniteModule> mods;
    for (const auto& inc : inclusions) mods.push_back(inc.source());
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        auto m = lift_through_mono(inclusions[ar.target], compose(x.map(a), inclusions[ar.source]));
        if (!m) throw std::invalid_argument("subrepresentation: not stable under arrow '" + ar.name + "'");
        maps.push_back(*m);
    }
    Representation sub(q, x.ring(), mods, maps);
    return {sub, RepMorphism(sub, x, inclusions)};
}

RepHom::RepHom(const Representation& x, const Representation& y)
    : x_(x), y_(y), total_{FiniteModule::zero(x.ring()), {}, {}, {}}, module_(FiniteModule::zero(x.ring())) {
    const Quiver& q = x.quiver();
    if (!(q == y.quiver())) throw std::invalid_argument("rep hom: quivers differ");
    std::vector<FiniteModule> parts;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        vertex_homs_.emplace_back(x.module(i), y.module(i));
        parts.push_back(vertex_homs_.back().module());
    }
    total_ = direct_sum(x.ring(), parts);
    std::vector<HomModule> arrow_homs;
    std::vector<FiniteModule> arrow_parts;
    for (const auto& ar : q.arrows()) {
        arrow_homs.emplace_back(x.module(ar.source), y.module(ar.target));
        arrow_parts.push_back(arrow_homs.back().module());
    }
    DirectSum constraints = direct_sum(x.ring(), arrow_parts);
    // D(f)_a = Y(a) f_s - f_t X(a)
    std::vector<Element> images;
    for (std::size_t g = 0; g < total_.module.rank(); ++g) {
        Element gen = total_.module.generator(g);
        std::vector<ModuleMap> comps;
        for (std::size_t i = 0; i < q.vertex_count(); ++i)
            comps.push_back(vertex_homs_[i].map_of(total_.projections[i].apply(gen)));
        Element acc = constraints.module.zero_element();
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const auto& ar = q.arrow(a);
            ModuleMap d = compose(y.map(a), comps[ar.source]) - compose(comps[ar.target], x.map(a));
            acc = constraints.module.add(acc, constraints.injections[a].apply(arrow_homs[a].element_of(d)));
        }
        images.push_back(acc);
    }
    ModuleMap dmap = ModuleMap::from_images(total_.module, constraints.module, images);
    KernelResult k = kernel(dmap);
    module_ = k.module;
    inclusion_ = std::make_shared<ModuleMap>(k.inclusion);
    lift_ = std::make_shared<Preimager>(k.inclusion);
}

RepMorphism RepHom::morphism_of(const Element& h) const {
    Element t = inclusion_->apply(h);
    std::vector<ModuleMap> comps;
    for (std::size_t i = 0; i < vertex_homs_.size(); ++i)
        comps.push_back(vertex_homs_[i].map_of(total_.projections[i].apply(t)));
    return RepMorphism(x_, y_, comps);
}

Element RepHom::element_of(const RepMorphism& f) const {
    Element t = total_.module.zero_element();
    for (std::size_t i = 0; i < vertex_homs_.size(); ++i)
        t = total_.module.add(t, total_.injections[i].apply(vertex_homs_[i].element_of(f.component(i))));
    auto h = (*lift_)(t);
    if (!h) throw std::invalid_argument("element_of: not a morphism of these representations");
    return *h;
}

void RepHom::for_each(const std::function<bool(const RepMorphism&)>& fn) const {
    for (std::uint64_t k = 0; k < module_.order(); ++k)
        if (!fn(morphism_of(module_.element_at(k)))) return;
}

HoveyTripleSpec gorenstein_flat_triple(const RingSpec& ring, OracleFault fault) {
    return {ModuleClass(ring, {ClassTag::GF}, fault), ModuleClass(ring, {ClassTag::PGFperp}, fault),
            ModuleClass(ring, {ClassTag::Cot}, fault)};
}

HoveyFlags hovey_membership(const Representation& x, const HoveyTripleSpec& spec) {
    if (!is_left_rooted(x.quiver())) throw std::invalid_argument("quiver is not left rooted");
    return {in_phi_class(x, spec.cofibrant.predicate()), in_rep_class(x, spec.trivial.predicate()),
            in_rep_class(x, spec.fibrant.predicate())};
}

}  // namespace qrep
