#include "qrep/module_ops.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qrep {
namespace {

ModularMatrix diagonal_rows(Residue n, const std::vector<Residue>& d) {
    ModularMatrix m(n, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i] % n);
    return m;
}

void require_same_ring(const FiniteModule& a, const FiniteModule& b, const char* what) {
    if (!(a.ring() == b.ring())) throw std::invalid_argument(std::string(what) + ": ring mismatch");
}

// Cyclic orders already forming a chain after sorting: permutation only.
std::optional<NormalizedPresentation> sorted_chain(const RingSpec& ring, const std::vector<Residue>& orders) {
    const Residue n = ring.modulus();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] > 1) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return orders[a] < orders[b]; });
    std::vector<Residue> inv;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k > 0 && orders[idx[k]] % orders[idx[k - 1]] != 0) return std::nullopt;
        inv.push_back(orders[idx[k]]);
    }
    ModularMatrix to(n, inv.size(), orders.size());
    ModularMatrix from(n, orders.size(), inv.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        to.set(k, idx[k], 1);
        from.set(idx[k], k, 1);
    }
    return NormalizedPresentation{FiniteModule(ring, inv), to, from};
}

bool is_diagonal_presentation(const ModularMatrix& rel, std::vector<Residue>& orders) {
    if (rel.rows() != rel.cols()) return false;
    const Residue n = rel.modulus();
    orders.assign(rel.cols(), n);
    for (std::size_t i = 0; i < rel.rows(); ++i)
        for (std::size_t j = 0; j < rel.cols(); ++j) {
            if (i != j && rel(i, j) != 0) return false;
            if (i == j) {
                if (rel(i, i) != 0 && n % rel(i, i) != 0) return false;
                orders[i] = rel(i, i) == 0 ? n : rel(i, i);
            }
        }
    return true;
}

}  // namespace

NormalizedPresentation normalize_presentation(const RingSpec& ring, std::size_t gens, const ModularMatrix& relations) {
    const Residue n = ring.modulus();
    if (relations.cols() != gens) throw std::invalid_argument("presentation: relation width mismatch");
    if (gens == 0) return {FiniteModule::zero(ring), ModularMatrix(n, 0, 0), ModularMatrix(n, 0, 0)};
    std::vector<Residue> orders;
    if (is_diagonal_presentation(relations, orders))
        if (auto fast = sorted_chain(ring, orders)) return *fast;
    SmithForm s = smith_form(relations);
    std::vector<std::size_t> kept;
    std::vector<Residue> inv;
    for (std::size_t t = 0; t < gens; ++t)
        if (s.diagonal[t] > 1) {
            kept.push_back(t);
            inv.push_back(s.diagonal[t]);
        }
    ModularMatrix to(n, kept.size(), gens);
    ModularMatrix from(n, gens, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        std::size_t t = kept[k];
        for (std::size_t g = 0; g < gens; ++g) {
            to.set(k, g, s.q(g, t) % inv[k]);
            from.set(g, k, s.q_inverse(t, g));
        }
    }
    return {FiniteModule(ring, inv), to, from};
}

NormalizedPresentation normalize_cyclic_sum(const RingSpec& ring, const std::vector<Residue>& orders) {
    std::vector<Residue> reduced;
    for (auto d : orders) reduced.push_back(std::gcd(d, ring.modulus()));
    if (auto fast = sorted_chain(ring, reduced)) return *fast;
    return normalize_presentation(ring, reduced.size(), diagonal_rows(ring.modulus(), reduced));
}

Subquotient::Subquotient(const RingSpec& ring, const ModularMatrix& s, const ModularMatrix& t)
    : module_(FiniteModule::zero(ring)), s_rows_(s.rows()) {
    if (s.cols() != t.cols()) throw std::invalid_argument("subquotient: ambient mismatch");
    ModularMatrix gens = s.stacked(t).transpose();  // k x (s+t)
    system_ = std::make_shared<LinearSystem>(gens);
    const ModularMatrix& ker = system_->kernel();
    ModularMatrix rel = ker.submatrix(0, ker.rows(), 0, s.rows());
    auto pres = normalize_presentation(ring, s.rows(), rel);
    module_ = pres.module;
    to_module_ = pres.to_module;
    embed_ = s.transpose() * pres.from_module;
}

std::optional<Element> Subquotient::coordinates(std::span<const Residue> ambient) const {
    auto x = system_->particular(ambient);
    if (!x) return std::nullopt;
    Vector c(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(s_rows_));
    return module_.reduce(to_module_.apply(c));
}

KernelResult kernel(const ModuleMap& f) {
    const auto& m = f.source();
    const Residue n = m.modulus();
    ModularMatrix gens = qrep::kernel(f.lifted_matrix());
    Subquotient sq(m.ring(), gens, diagonal_rows(n, m.invariants()));
    return {sq.module(), ModuleMap(sq.module(), m, sq.embedding())};
}

CokernelResult cokernel(const ModuleMap& f) {
    const auto& t = f.target();
    const Residue n = t.modulus();
    ModularMatrix rel = diagonal_rows(n, t.invariants()).stacked(f.matrix().transpose());
    auto pres = normalize_presentation(t.ring(), t.rank(), rel);
    return {pres.module, ModuleMap(t, pres.module, pres.to_module)};
}

ImageResult image(const ModuleMap& f) {
    const auto& t = f.target();
    Subquotient sq(t.ring(), f.matrix().transpose(), diagonal_rows(t.modulus(), t.invariants()));
    return {sq.module(), ModuleMap(sq.module(), t, sq.embedding()),
            ModuleMap(f.source(), sq.module(), sq.to_module())};
}

bool is_injective(const ModuleMap& f) {
    const auto& m = f.source();
    ModularMatrix gens = qrep::kernel(f.lifted_matrix());
    for (std::size_t r = 0; r < gens.rows(); ++r)
        for (std::size_t j = 0; j < m.rank(); ++j)
            if (gens(r, j) % m.factor(j) != 0) return false;
    return true;
}

bool is_surjective(const ModuleMap& f) {
    const auto& t = f.target();
    if (t.is_zero()) return true;
    RowSpan span(f.matrix().transpose().stacked(diagonal_rows(t.modulus(), t.invariants())));
    Vector e(t.rank(), 0);
    for (std::size_t i = 0; i < t.rank(); ++i) {
        e.assign(t.rank(), 0);
        e[i] = 1;
        if (!span.contains(e)) return false;
    }
    return true;
}

bool is_isomorphism(const ModuleMap& f) {
    return f.source().order() == f.target().order() && is_injective(f);
}

namespace {

ModularMatrix preimage_system(const ModuleMap& f) {
    const auto& t = f.target();
    return f.matrix().joined(diagonal_rows(t.modulus(), t.invariants()));
}

}  // namespace

Preimager::Preimager(const ModuleMap& f)
    : source_(f.source()), target_(f.target()), system_(preimage_system(f)) {}

std::optional<Element> Preimager::operator()(const Element& y) const {
    if (y.size() != target_.rank()) throw std::invalid_argument("preimage: element has wrong length");
    auto x = system_.particular(y);
    if (!x) return std::nullopt;
    Element out(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(source_.rank()));
    return source_.reduce(out);
}

std::optional<Element> preimage(const ModuleMap& f, const Element& y) { return Preimager(f)(y); }

std::optional<ModuleMap> lift_through_mono(const ModuleMap& mono, const ModuleMap& g) {
    if (!(mono.target() == g.target())) throw std::invalid_argument("lift_through_mono: targets differ");
    Preimager pre(mono);
    std::vector<Element> images;
    for (std::size_t j = 0; j < g.source().rank(); ++j) {
        auto x = pre(g.image_of_generator(j));
        if (!x) return std::nullopt;
        images.push_back(*x);
    }
    try {
        auto h = ModuleMap::from_images(g.source(), mono.source(), images);
        if (!(compose(mono, h) == g)) return std::nullopt;
        return h;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::optional<ModuleMap> descend_through_epi(const ModuleMap& epi, const ModuleMap& g) {
    if (!(epi.source() == g.source())) throw std::invalid_argument("descend_through_epi: sources differ");
    Preimager pre(epi);
    std::vector<Element> images;
    for (std::size_t t = 0; t < epi.target().rank(); ++t) {
        auto a = pre(epi.target().generator(t));
        if (!a) return std::nullopt;
        images.push_back(g.apply(*a));
    }
    try {
        auto h = ModuleMap::from_images(epi.target(), g.target(), images);
        if (!(compose(h, epi) == g)) return std::nullopt;
        return h;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::optional<ModuleMap> extend_along_mono(const ModuleMap& mono, const ModuleMap& g) {
    if (!(mono.source() == g.source())) throw std::invalid_argument("extend_along_mono: sources differ");
    HomModule from(mono.target(), g.target());
    HomModule to(mono.source(), g.target());
    ModuleMap restrict = precompose_map(from, to, mono);
    auto h = preimage(restrict, to.element_of(g));
    if (!h) return std::nullopt;
    ModuleMap out = from.map_of(*h);
    if (!(compose(out, mono) == g)) return std::nullopt;
    return out;
}

Homology homology(const ModuleMap& alpha, const ModuleMap& beta) {
    if (!(alpha.target() == beta.source())) throw std::invalid_argument("homology: maps not composable");
    if (!compose(beta, alpha).is_zero()) throw std::invalid_argument("homology: composite is not zero");
    KernelResult k = kernel(beta);
    auto a = lift_through_mono(k.inclusion, alpha);
    if (!a) throw std::logic_error("homology: image does not lie in the kernel");
    CokernelResult c = cokernel(*a);
    return {c.module, k, c.projection};
}

DirectSum direct_sum(const RingSpec& ring, const std::vector<FiniteModule>& summands) {
    std::vector<Residue> orders;
    for (const auto& m : summands) {
        if (!(m.ring() == ring)) throw std::invalid_argument("direct sum: ring mismatch");
        orders.insert(orders.end(), m.invariants().begin(), m.invariants().end());
    }
    auto pres = normalize_cyclic_sum(ring, orders);
    DirectSum out{pres.module, summands, {}, {}};
    std::size_t offset = 0;
    for (const auto& m : summands) {
        std::size_t r = m.rank();
        out.injections.emplace_back(m, pres.module, pres.to_module.submatrix(0, pres.module.rank(), offset, offset + r));
        out.projections.emplace_back(pres.module, m,
                                     pres.from_module.submatrix(offset, offset + r, 0, pres.module.rank()));
        offset += r;
    }
    return out;
}

ModuleMap copair(const DirectSum& source, const std::vector<ModuleMap>& maps, const FiniteModule& target) {
    if (maps.size() != source.summands.size()) throw std::invalid_argument("copair: wrong number of maps");
    ModularMatrix acc(target.modulus(), target.rank(), source.module.rank());
    for (std::size_t k = 0; k < maps.size(); ++k)
        acc = acc + maps[k].matrix() * source.projections[k].matrix();
    return ModuleMap(source.module, target, acc);
}

ModuleMap pair(const FiniteModule& source, const std::vector<ModuleMap>& maps, const DirectSum& target) {
    if (maps.size() != target.summands.size()) throw std::invalid_argument("pair: wrong number of maps");
    ModularMatrix acc(source.modulus(), target.module.rank(), source.rank());
    for (std::size_t k = 0; k < maps.size(); ++k)
        acc = acc + target.injections[k].matrix() * maps[k].matrix();
    return ModuleMap(source, target.module, acc);
}

ModuleMap direct_sum_map(const DirectSum& source, const DirectSum& target, const std::vector<ModuleMap>& diagonal) {
    if (diagonal.size() != source.summands.size() || diagonal.size() != target.summands.size())
        throw std::invalid_argument("direct_sum_map: wrong number of maps");
    ModularMatrix acc(source.module.modulus(), target.module.rank(), source.module.rank());
    for (std::size_t k = 0; k < diagonal.size(); ++k)
        acc = acc + target.injections[k].matrix() * diagonal[k].matrix() * source.projections[k].matrix();
    return ModuleMap(source.module, target.module, acc);
}

std::vector<HomSlot> hom_slots(const FiniteModule& source, const FiniteModule& target) {
    std::vector<HomSlot> slots;
    for (std::size_t i = 0; i < target.rank(); ++i)
        for (std::size_t j = 0; j < source.rank(); ++j) {
            Residue g = std::gcd(source.factor(j), target.factor(i));
            if (g > 1) slots.push_back({i, j, g, target.factor(i) / g});
        }
    return slots;
}

std::uint64_t hom_count(const FiniteModule& source, const FiniteModule& target) {
    std::uint64_t c = 1;
    for (const auto& s : hom_slots(source, target)) c *= s.order;
    return c;
}

void for_each_hom(const FiniteModule& source, const FiniteModule& target,
                  const std::function<bool(const ModuleMap&)>& fn) {
    require_same_ring(source, target, "for_each_hom");
    auto slots = hom_slots(source, target);
    std::vector<Residue> coef(slots.size(), 0);
    ModularMatrix m(source.modulus(), target.rank(), source.rank());
    while (true) {
        for (std::size_t s = 0; s < slots.size(); ++s) m.set(slots[s].row, slots[s].col, coef[s] * slots[s].step);
        if (!fn(ModuleMap(source, target, m))) return;
        std::size_t s = 0;
        while (s < slots.size() && ++coef[s] == slots[s].order) coef[s++] = 0;
        if (s == slots.size()) return;
    }
}

ModuleMap hom_at(const FiniteModule& source, const FiniteModule& target, std::uint64_t index) {
    auto slots = hom_slots(source, target);
    ModularMatrix m(source.modulus(), target.rank(), source.rank());
    for (const auto& s : slots) {
        m.set(s.row, s.col, (index % s.order) * s.step);
        index /= s.order;
    }
    if (index != 0) throw std::out_of_range("hom_at: index out of range");
    return ModuleMap(source, target, m);
}

HomModule::HomModule(const FiniteModule& source, const FiniteModule& target)
    : source_(source), target_(target), presentation_{FiniteModule::zero(source.ring()), {}, {}} {
    require_same_ring(source, target, "hom_module");
    slots_ = hom_slots(source, target);
    std::vector<Residue> orders;
    for (const auto& s : slots_) orders.push_back(s.order);
    presentation_ = normalize_cyclic_sum(source.ring(), orders);
}

ModuleMap HomModule::map_of(const Element& h) const {
    const Residue n = source_.modulus();
    if (h.size() != module().rank()) throw std::invalid_argument("hom element has wrong length");
    Vector c = presentation_.from_module.apply(h);
    ModularMatrix m(n, target_.rank(), source_.rank());
    for (std::size_t s = 0; s < slots_.size(); ++s)
        m.set(slots_[s].row, slots_[s].col, mul_mod(c[s] % slots_[s].order, slots_[s].step, n));
    return ModuleMap(source_, target_, m);
}

Element HomModule::element_of(const ModuleMap& f) const {
    if (!(f.source() == source_) || !(f.target() == target_)) throw std::invalid_argument("element_of: wrong hom set");
    Vector c(slots_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s) c[s] = f.entry(slots_[s].row, slots_[s].col) / slots_[s].step;
    return module().reduce(presentation_.to_module.apply(c));
}

std::vector<ModuleMap> HomModule::basis() const {
    std::vector<ModuleMap> out;
    for (std::size_t t = 0; t < module().rank(); ++t) out.push_back(map_of(module().generator(t)));
    return out;
}

ModuleMap precompose_map(const HomModule& from, const HomModule& to, const ModuleMap& f) {
    // from = Hom(B, T), to = Hom(A, T), f : A -> B
    if (!(from.source() == f.target()) || !(to.source() == f.source()) || !(from.target() == to.target()))
        throw std::invalid_argument("precompose_map: mismatched hom modules");
    std::vector<Element> images;
    for (const auto& b : from.basis()) images.push_back(to.element_of(compose(b, f)));
    return ModuleMap::from_images(from.module(), to.module(), images);
}

ModuleMap postcompose_map(const HomModule& from, const HomModule& to, const ModuleMap& g) {
    if (!(from.target() == g.source()) || !(to.target() == g.target()) || !(from.source() == to.source()))
        throw std::invalid_argument("postcompose_map: mismatched hom modules");
    std::vector<Element> images;
    for (const auto& b : from.basis()) images.push_back(to.element_of(compose(g, b)));
    return ModuleMap::from_images(from.module(), to.module(), images);
}

TensorModule::TensorModule(const FiniteModule& left, const FiniteModule& right)
    : left_(left), right_(right), presentation_{FiniteModule::zero(left.ring()), {}, {}} {
    require_same_ring(left, right, "tensor_module");
    std::vector<Residue> orders;
    for (std::size_t i = 0; i < left.rank(); ++i)
        for (std::size_t j = 0; j < right.rank(); ++j) {
            Residue g = std::gcd(left.factor(i), right.factor(j));
            if (g > 1) {
                slots_.push_back({i, j, g});
                orders.push_back(g);
            }
        }
    presentation_ = normalize_cyclic_sum(left.ring(), orders);
}

Element TensorModule::pure(const Element& x, const Element& y) const {
    Vector c(slots_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s)
        c[s] = mul_mod(x.at(slots_[s].left) % slots_[s].order, y.at(slots_[s].right) % slots_[s].order,
                       slots_[s].order);
    return from_slots(c);
}

Element TensorModule::from_slots(const Vector& coefficients) const {
    return module().reduce(presentation_.to_module.apply(coefficients));
}

ModuleMap tensor_maps(const TensorModule& source, const TensorModule& target, const ModuleMap& f,
                      const ModuleMap& g) {
    if (!(f.source() == source.left()) || !(g.source() == source.right()) || !(f.target() == target.left()) ||
        !(g.target() == target.right()))
        throw std::invalid_argument("tensor_maps: mismatched modules");
    std::vector<Element> slot_images;
    for (const auto& s : source.slots())
        slot_images.push_back(target.pure(f.image_of_generator(s.left), g.image_of_generator(s.right)));
    std::vector<Element> images;
    for (std::size_t t = 0; t < source.module().rank(); ++t) {
        Vector c = source.generator_lift(t);
        Element img = target.module().zero_element();
        for (std::size_t s = 0; s < c.size(); ++s)
            if (c[s]) img = target.module().add(img, target.module().scale(c[s], slot_images[s]));
        images.push_back(img);
    }
    return ModuleMap::from_images(source.module(), target.module(), images);
}

FiniteModule ext1(const FiniteModule& m, const FiniteModule& n) {
    require_same_ring(m, n, "ext1");
    const RingSpec& ring = m.ring();
    const Residue mod = ring.modulus();
    if (m.is_zero() || n.is_zero()) return FiniteModule::zero(ring);
    // F0 = (Z/n)^k -> m, generator j -> generator j.
    const std::size_t k = m.rank();
    ModuleMap pi(FiniteModule::free(ring, k), m, ModularMatrix::identity(mod, k));
    ModularMatrix r1 = qrep::kernel(pi.lifted_matrix());  // rows: generators of ker(pi) in F0
    ModularMatrix d1 = r1.transpose();                    // F1 -> F0
    ModularMatrix r2 = qrep::kernel(d1);                  // rows: generators of ker(d1) in F1
    ModularMatrix d2 = r2.transpose();                    // F2 -> F1
    auto hom_power = [&](std::size_t copies) {
        return direct_sum(ring, std::vector<FiniteModule>(copies, n));
    };
    DirectSum h0 = hom_power(k), h1 = hom_power(d1.cols()), h2 = hom_power(d2.cols());
    // delta(phi)_l = sum_j d[j][l] phi_j
    auto delta = [&](const DirectSum& from, const DirectSum& to, const ModularMatrix& d) {
        ModularMatrix acc(mod, to.module.rank(), from.module.rank());
        for (std::size_t l = 0; l < d.cols(); ++l)
            for (std::size_t j = 0; j < d.rows(); ++j) {
                Residue c = d(j, l);
                if (!c) continue;
                acc = acc + (to.injections[l].matrix() * from.projections[j].matrix()).scaled(c);
            }
        return ModuleMap(from.module, to.module, acc);
    };
    ModuleMap delta0 = delta(h0, h1, d1);
    ModuleMap delta1 = delta(h1, h2, d2);
    return homology(delta0, delta1).module;
}

FiniteModule dual_plus(const FiniteModule& m) { return m; }

ModuleMap dual_plus_map(const ModuleMap& f) {
    const auto& src = f.source();
    const auto& tgt = f.target();
    ModularMatrix d(src.modulus(), src.rank(), tgt.rank());
    for (std::size_t j = 0; j < src.rank(); ++j)
        for (std::size_t i = 0; i < tgt.rank(); ++i) {
            Residue e = tgt.factor(i), dj = src.factor(j);
            Residue v = (dj * f.entry(i, j)) / e;  // exact by well-definedness
            d.set(j, i, v % dj);
        }
    return ModuleMap(dual_plus(tgt), dual_plus(src), d);
}

ModuleSES dual_plus_ses(const ModuleSES& ses) { return ModuleSES(dual_plus_map(ses.g()), dual_plus_map(ses.f())); }

ModuleMap double_dual_evaluation(const FiniteModule& m) {
    return ModuleMap(m, dual_plus(dual_plus(m)), ModularMatrix::identity(m.modulus(), m.rank()));
}

ModuleSES injective_hull(const FiniteModule& m) {
    const RingSpec& ring = m.ring();
    std::vector<Residue> hull;
    for (auto d : m.invariants()) {
        Residue e = 1;
        for (const auto& pp : ring.factorization())
            if (d % pp.prime == 0)
                for (unsigned k = 0; k < pp.exponent; ++k) e *= pp.prime;
        hull.push_back(e);
    }
    FiniteModule em(ring, hull);
    ModularMatrix emb(ring.modulus(), m.rank(), m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) emb.set(i, i, hull[i] / m.factor(i));
    ModuleMap iota(m, em, emb);
    CokernelResult c = cokernel(iota);
    return ModuleSES(iota, c.projection);
}

Pushout pushout(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.source() == g.source())) throw std::invalid_argument("pushout: source mismatch");
    const RingSpec& ring = f.source().ring();
    DirectSum ab = direct_sum(ring, {f.target(), g.target()});
    ModuleMap diff = pair(f.source(), {f, -g}, ab);
    CokernelResult c = cokernel(diff);
    return {c.module, compose(c.projection, ab.injections[0]), compose(c.projection, ab.injections[1])};
}

std::vector<ModuleMap> submodules(const FiniteModule& m) {
    const std::uint64_t order = m.order();
    if (order > 1024) throw std::invalid_argument("submodules: module too large to enumerate");
    // H + <x> for a subgroup H given by its membership vector
    auto closure = [&](const std::vector<bool>& members, const Element& x) {
        std::vector<Element> multiples;
        for (Element cur = x; cur != m.zero_element(); cur = m.add(cur, x)) multiples.push_back(cur);
        std::vector<bool> out = members;
        for (std::uint64_t idx = 0; idx < order; ++idx) {
            if (!members[idx]) continue;
            Element a = m.element_at(idx);
            for (const auto& mu : multiples) out[m.index_of(m.add(a, mu))] = true;
        }
        return out;
    };
    std::map<std::vector<bool>, std::vector<Element>> found;
    std::vector<bool> zero(order, false);
    zero[0] = true;
    found[zero] = {};
    std::vector<std::vector<bool>> frontier{zero};
    while (!frontier.empty()) {
        auto cur = frontier.back();
        frontier.pop_back();
        auto gens = found[cur];
        for (std::uint64_t idx = 1; idx < order; ++idx) {
            if (cur[idx]) continue;
            Element x = m.element_at(idx);
            auto next = closure(cur, x);
            if (found.count(next)) continue;
            auto g2 = gens;
            g2.push_back(x);
            found[next] = g2;
            frontier.push_back(next);
        }
    }
    std::vector<ModuleMap> out;
    const Residue n = m.modulus();
    for (const auto& [members, gens] : found) {
        ModularMatrix s = ModularMatrix::from_rows(n, m.rank(), gens);
        if (gens.empty()) s = ModularMatrix(n, 0, m.rank());
        Subquotient sq(m.ring(), s, diagonal_rows(n, m.invariants()));
        out.emplace_back(sq.module(), m, sq.embedding());
    }
    std::sort(out.begin(), out.end(), [](const ModuleMap& a, const ModuleMap& b) {
        if (a.source().order() != b.source().order()) return a.source().order() < b.source().order();
        return a.matrix().to_string() < b.matrix().to_string();
    });
    return out;
}

std::vector<FiniteModule> modules_up_to(const RingSpec& ring, std::uint64_t max_order) {
    std::vector<Residue> divs;
    for (auto d : divisors(ring.modulus()))
        if (d > 1) divs.push_back(d);
    std::vector<std::vector<Residue>> chains;
    std::vector<Residue> cur;
    std::function<void(std::uint64_t)> extend = [&](std::uint64_t order) {
        chains.push_back(cur);
        for (auto d : divs) {
            if (!cur.empty() && d % cur.back() != 0) continue;
            if (order * d > max_order) continue;
            cur.push_back(d);
            extend(order * d);
            cur.pop_back();
        }
    };
    extend(1);
    std::vector<FiniteModule> out;
    for (auto& c : chains) out.emplace_back(ring, c);
    std::sort(out.begin(), out.end(), [](const FiniteModule& a, const FiniteModule& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.invariants() < b.invariants();
    });
    return out;
}

}  // namespace qrep
