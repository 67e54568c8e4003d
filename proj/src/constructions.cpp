#include "qrep/constructions.hpp"

#include "qrep/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace qrep {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::identity: return "identity";
        case Strategy::hull: return "hull";
        case Strategy::padded: return "padded";
        case Strategy::search: return "search";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    for (auto s : {Strategy::identity, Strategy::hull, Strategy::padded, Strategy::search})
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

namespace {

constexpr std::uint64_t kSearchHomLimit = 1u << 20;

std::optional<ModuleSES> bounded_search(const FiniteModule& m, const ModuleClass& middle, const ModuleClass& quotient,
                                        std::uint64_t cap) {
    for (const auto& a : modules_up_to(m.ring(), cap)) {
        if (a.order() % m.order() != 0 || !middle.contains(a)) continue;
        if (hom_count(m, a) > kSearchHomLimit) continue;
        std::optional<ModuleSES> found;
        for_each_hom(m, a, [&](const ModuleMap& f) {
            if (!is_injective(f)) return true;
            CokernelResult c = cokernel(f);
            if (!quotient.contains(c.module)) return true;
            found.emplace(f, c.projection);
            return false;
        });
        if (found) return found;
    }
    return std::nullopt;
}

std::vector<bool> mask_of(std::size_t n, const std::vector<std::size_t>& set) {
    std::vector<bool> out(n, false);
    for (auto i : set) out[i] = true;
    return out;
}

Representation truncation(const Representation& x, const std::vector<bool>& keep) {
    const Quiver& q = x.quiver();
    std::vector<FiniteModule> modules;
    for (std::size_t i = 0; i < q.vertex_count(); ++i)
        modules.push_back(keep[i] ? x.module(i) : FiniteModule::zero(x.ring()));
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        maps.push_back(keep[ar.source] && keep[ar.target] ? x.map(a)
                                                          : ModuleMap::zero(modules[ar.source], modules[ar.target]));
    }
    return Representation(q, x.ring(), modules, maps);
}

std::vector<ModuleMap> zero_components(const Representation& s, const Representation& t) {
    std::vector<ModuleMap> out;
    for (std::size_t i = 0; i < s.quiver().vertex_count(); ++i) out.push_back(ModuleMap::zero(s.module(i), t.module(i)));
    return out;
}

// Why x fails Phi(cls), or empty.
std::string phi_violation(const Representation& x, const ModuleClass& cls) {
    const Quiver& q = x.quiver();
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        auto p = phi(x, i);
        const std::string v = q.vertex_name(i);
        if (!is_injective(p.map)) return "phi_" + v + " is not injective";
        if (!cls.contains(x.module(i))) return "X(" + v + ") = " + x.module(i).to_string() + " not in " + cls.name();
        auto c = cokernel(p.map).module;
        if (!cls.contains(c)) return "C_" + v + " = " + c.to_string() + " not in " + cls.name();
    }
    return "";
}

const ModuleClass* find_class(const std::vector<std::pair<std::string, ModuleClass>>& classes, const std::string& role) {
    for (const auto& [r, c] : classes)
        if (r == role) return &c;
    return nullptr;
}

}  // namespace

std::optional<ModuleSES> approximate(const FiniteModule& m, const ModuleClass& middle, const ModuleClass& quotient,
                                     const std::vector<Strategy>& strategies, std::uint64_t search_cap) {
    const RingSpec& ring = m.ring();
    for (auto s : strategies) {
        std::optional<ModuleSES> cand;
        switch (s) {
            case Strategy::identity:
                cand.emplace(ModuleMap::identity(m), ModuleMap::zero(m, FiniteModule::zero(ring)));
                break;
            case Strategy::hull:
                cand.emplace(injective_hull(m));
                break;
            case Strategy::padded: {
                DirectSum ds = direct_sum(ring, {m, FiniteModule::cyclic(ring, ring.modulus())});
                cand.emplace(ds.injections[0], ds.projections[1]);
                break;
            }
            case Strategy::search:
                cand = bounded_search(m, middle, quotient, search_cap);
                break;
        }
        if (cand && middle.contains(cand->middle()) && quotient.contains(cand->right())) return cand;
    }
    return std::nullopt;
}

CotorsionPairOracle::CotorsionPairOracle(ModuleClass left, ModuleClass right, std::vector<Strategy> strategies)
    : left_(std::move(left)), right_(std::move(right)), strategies_(std::move(strategies)) {}

ModuleSES CotorsionPairOracle::complete(const FiniteModule& m) const {
    if (auto s = approximate(m, right_, left_, strategies_)) return *s;
    throw ConstructionError("completion oracle (" + left_.name() + ", " + right_.name() + ") failed for " + m.to_string());
}

CogeneratorOracle::CogeneratorOracle(ModuleClass ambient, ModuleClass cogenerating, std::vector<Strategy> strategies)
    : ambient_(std::move(ambient)), cogenerating_(std::move(cogenerating)), strategies_(std::move(strategies)) {}

ModuleSES CogeneratorOracle::cogenerate(const FiniteModule& m) const {
    if (auto s = approximate(m, cogenerating_, ambient_, strategies_)) return *s;
    throw ConstructionError("cogenerator oracle (" + cogenerating_.name() + " in " + ambient_.name() + ") failed for " +
                            m.to_string());
}

std::optional<ModuleSES> w_witness(const FiniteModule& m, const HoveyTripleSpec& triple,
                                   const std::vector<Strategy>& strategies, std::uint64_t search_cap) {
    return approximate(m, triple.trivially_fibrant(), triple.trivially_cofibrant(), strategies, search_cap);
}

bool exact_at(const ModuleMap& f, const ModuleMap& g) {
    if (!compose(g, f).is_zero()) return false;
    return kernel(g).module.order() == image(f).module.order();
}

bool NineLemmaDiagram::verify() const {
    for (const ModuleSES* s : {&top, &middle, &bottom, &left, &center, &right})
        if (!ModuleSES::is_exact(s->f(), s->g())) return false;
    if (!(top.left() == left.left() && top.middle() == center.left() && top.right() == right.left())) return false;
    if (!(middle.left() == left.middle() && middle.middle() == center.middle() && middle.right() == right.middle()))
        return false;
    if (!(bottom.left() == left.right() && bottom.middle() == center.right() && bottom.right() == right.right()))
        return false;
    return compose(center.f(), top.f()) == compose(middle.f(), left.f()) &&
           compose(right.f(), top.g()) == compose(middle.g(), center.f()) &&
           compose(bottom.f(), left.g()) == compose(center.g(), middle.f()) &&
           compose(bottom.g(), center.g()) == compose(right.g(), middle.g());
}

NineLemmaDiagram nine_lemma(const ModuleSES& row, const ModuleSES& approx1, const ModuleSES& approx3) {
    if (!(row.left() == approx1.left()) || !(row.right() == approx3.left()))
        throw std::invalid_argument("nine_lemma: approximations do not match the row");
    const RingSpec& ring = row.left().ring();
    FiniteModule obstruction = ext1(row.right(), approx1.middle());
    if (!obstruction.is_zero())
        throw ConstructionError("nine_lemma: Ext^1(" + row.right().to_string() + ", " + approx1.middle().to_string() +
                                ") = " + obstruction.to_string() + " is nonzero");
    auto sigma = extend_along_mono(row.f(), approx1.f());
    if (!sigma) throw ConstructionError("nine_lemma: no extension of the first approximation along the row");
    DirectSum ds = direct_sum(ring, {approx1.middle(), approx3.middle()});
    ModuleSES middle(ds.injections[0], ds.projections[1]);
    ModuleMap into = pair(row.middle(), {*sigma, compose(approx3.f(), row.g())}, ds);
    CokernelResult c = cokernel(into);
    ModuleSES center(into, c.projection);
    auto b1 = descend_through_epi(approx1.g(), compose(c.projection, ds.injections[0]));
    auto b2 = descend_through_epi(c.projection, compose(approx3.g(), ds.projections[1]));
    if (!b1 || !b2) throw ConstructionError("nine_lemma: bottom row maps do not descend");
    NineLemmaDiagram d{row, middle, ModuleSES(*b1, *b2), approx1, center, approx3};
    if (!d.verify()) throw ConstructionError("nine_lemma: diagram failed verification");
    return d;
}

// Classical hypotheses: top row exact at B with g onto, bottom row exact at B' with f2 injective.
SnakeSequence snake_lemma(const ModuleMap& f, const ModuleMap& g, const ModuleMap& f2, const ModuleMap& g2,
                          const ModuleMap& alpha, const ModuleMap& beta, const ModuleMap& gamma) {
    if (!(compose(beta, f) == compose(f2, alpha)) || !(compose(gamma, g) == compose(g2, beta)))
        throw std::invalid_argument("snake_lemma: squares do not commute");
    KernelResult ka = kernel(alpha), kb = kernel(beta), kc = kernel(gamma);
    CokernelResult ca = cokernel(alpha), cb = cokernel(beta), cc = cokernel(gamma);
    auto ker_f = lift_through_mono(kb.inclusion, compose(f, ka.inclusion));
    auto ker_g = lift_through_mono(kc.inclusion, compose(g, kb.inclusion));
    auto coker_f = descend_through_epi(ca.projection, compose(cb.projection, f2));
    auto coker_g = descend_through_epi(cb.projection, compose(cc.projection, g2));
    if (!ker_f || !ker_g || !coker_f || !coker_g) throw std::invalid_argument("snake_lemma: induced maps do not exist");
    Preimager through_g(g), through_f2(f2);
    std::vector<Element> images;
    for (std::size_t t = 0; t < kc.module.rank(); ++t) {
        auto b = through_g(kc.inclusion.image_of_generator(t));
        if (!b) throw std::invalid_argument("snake_lemma: top row is not onto C");
        auto a = through_f2(beta.apply(*b));
        if (!a) throw std::invalid_argument("snake_lemma: bottom row is not exact at B'");
        images.push_back(ca.projection.apply(*a));
    }
    ModuleMap delta = ModuleMap::from_images(kc.module, ca.module, images);
    return {ka, kb, kc, ca, cb, cc, *ker_f, *ker_g, delta, *coker_f, *coker_g};
}

bool SnakeSequence::is_exact() const {
    return exact_at(ker_f, ker_g) && exact_at(ker_g, delta) && exact_at(delta, coker_f) && exact_at(coker_f, coker_g);
}

HypothesisSample sample_cogenerator_hypotheses(const ModuleClass& ambient, const ModuleClass& cogenerating,
                                               const ModuleClass& cogenerating_perp, std::uint64_t max_order) {
    static std::mutex mu;
    static std::map<std::string, HypothesisSample> cache;
    const RingSpec& ring = ambient.ring();
    std::ostringstream key;
    key << ring.modulus() << '|' << ambient.name() << '|' << cogenerating.name() << '|' << cogenerating_perp.name()
        << '|' << to_string(ambient.fault()) << '|' << max_order;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key.str()); it != cache.end()) return it->second;
    }
    HypothesisSample out;
    const auto mods = modules_up_to(ring, max_order);
    auto fail = [&](const std::string& why) {
        if (!out.violation) out.violation = why;
        out.ok = false;
    };
    for (const auto& m : mods)
        if (cogenerating.contains(m) && !ambient.contains(m))
            fail(m.to_string() + " is in " + cogenerating.name() + " but not in " + ambient.name());
    for (const auto& m1 : mods) {
        if (!ambient.contains(m1) || out.violation) continue;
        for (const auto& m3 : mods) {
            if (!ambient.contains(m3) || m1.order() * m3.order() > max_order || out.violation) continue;
            for (const auto& m2 : mods) {
                if (m2.order() != m1.order() * m3.order() || ambient.contains(m2)) continue;
                for_each_hom(m1, m2, [&](const ModuleMap& f) {
                    if (!is_injective(f) || !(cokernel(f).module == m3)) return true;
                    fail("extension of " + m3.to_string() + " by " + m1.to_string() + " with middle " + m2.to_string() +
                         " leaves " + ambient.name());
                    return false;
                });
            }
        }
    }
    const ModuleClass core = cogenerating.intersect(cogenerating_perp);
    for (const auto& xm : mods) {
        if (!ambient.contains(xm) || out.violation) continue;
        for (const auto& w : mods) {
            if (!core.contains(w)) continue;
            if (!ext1(xm, w).is_zero()) {
                fail("Ext^1(" + xm.to_string() + ", " + w.to_string() + ") is nonzero");
                break;
            }
        }
    }
    const std::string bound = std::to_string(max_order);
    out.notes.push_back(ambient.name() + " closed under extensions: checked on modules of order <= " + bound +
                        " only");
    out.notes.push_back(cogenerating.name() + " contained in " + ambient.name() + ": checked on modules of order <= " +
                        bound + " only");
    out.notes.push_back("Ext^1(" + ambient.name() + ", " + core.name() +
                        ") = 0: checked on modules of order <= " + bound + " only, not proved for all modules");
    out.notes.push_back("completeness of the pair (" + cogenerating.name() + ", " + cogenerating_perp.name() +
                        ") is taken from the completion oracle; every completion used is verified");
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key.str(), out);
    return out;
}

ConstructionResult cogenerator_construct(const Representation& x, const CotorsionPairOracle& pair,
                                         const CogeneratorOracle& cog, std::uint64_t hypothesis_order) {
    const Quiver& q = x.quiver();
    const RingSpec& ring = x.ring();
    const VSequence vs = v_sequence(q);
    if (!vs.left_rooted) throw std::invalid_argument("quiver is not left rooted");
    const ModuleClass& ambient = cog.ambient();
    const ModuleClass& cogen = cog.cogenerating();
    if (pair.left().name() != cogen.name())
        throw std::invalid_argument("cotorsion pair left class " + pair.left().name() +
                                    " differs from the cogenerating class " + cogen.name());
    if (auto why = phi_violation(x, ambient); !why.empty())
        throw ConstructionError("precondition: input not in Phi(" + ambient.name() + "): " + why);
    HypothesisSample hs = sample_cogenerator_hypotheses(ambient, cogen, pair.right(), hypothesis_order);
    if (!hs.ok) throw ConstructionError("precondition violation: " + *hs.violation);

    ConstructionTrace trace{"cogenerator",
                            x,
                            {{"ambient", ambient.name()},
                             {"cogenerating", cogen.name()},
                             {"cogenerating_perp", pair.right().name()}},
                            ambient.fault(),
                            {},
                            {},
                            {},
                            hs.notes};
    const std::size_t n = q.vertex_count();
    Representation zero = Representation::zero(q, ring);
    trace.stages.push_back({0, vs.sets[0], zero, zero, zero, zero_components(zero, zero), zero_components(zero, zero)});

    for (std::size_t alpha = 0; alpha < vs.lambda; ++alpha) {
        const TraceStage& prev = trace.stages.back();
        const auto in_prev = mask_of(n, prev.vertices);
        const auto in_next = mask_of(n, vs.sets[alpha + 1]);
        std::vector<FiniteModule> wm = prev.middle.modules(), ym = prev.right.modules();
        std::vector<ModuleMap> kc = prev.k, hc = prev.h;
        std::map<std::size_t, ModuleMap> w_arrow, y_arrow;
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_next[i] || in_prev[i]) continue;
            const auto& into = q.arrows_into(i);
            if (into.empty()) {
                ModuleSES s = cog.cogenerate(x.module(i));
                wm[i] = s.middle();
                ym[i] = s.right();
                kc[i] = s.f();
                hc[i] = s.g();
                continue;
            }
            CanonicalMap ph = phi(x, i);
            CokernelResult ci = cokernel(ph.map);
            ModuleSES row(ph.map, ci.projection);
            ModuleSES a3 = cog.cogenerate(ci.module);
            std::vector<FiniteModule> sw, sy;
            std::vector<ModuleMap> kd, hd;
            for (auto a : into) {
                std::size_t s = q.arrow(a).source;
                sw.push_back(prev.middle.module(s));
                sy.push_back(prev.right.module(s));
                kd.push_back(prev.k[s]);
                hd.push_back(prev.h[s]);
            }
            DirectSum sum_w = direct_sum(ring, sw), sum_y = direct_sum(ring, sy);
            ModuleMap k_sum = direct_sum_map(ph.sum, sum_w, kd);
            ModuleMap h_sum = direct_sum_map(sum_w, sum_y, hd);
            ModuleSES comp = pair.complete(sum_w.module);
            ModuleMap uk = compose(comp.f(), k_sum);
            CokernelResult t = cokernel(uk);
            auto tau = descend_through_epi(h_sum, compose(t.projection, comp.f()));
            if (!tau) throw ConstructionError("push-out map to T does not descend at vertex " + q.vertex_name(i));
            NineLemmaDiagram d = nine_lemma(row, ModuleSES(uk, t.projection), a3);
            wm[i] = d.middle.middle();
            ym[i] = d.bottom.middle();
            kc[i] = d.center.f();
            hc[i] = d.center.g();
            for (std::size_t idx = 0; idx < into.size(); ++idx) {
                w_arrow.emplace(into[idx], compose(d.middle.f(), compose(comp.f(), sum_w.injections[idx])));
                y_arrow.emplace(into[idx], compose(d.bottom.f(), compose(*tau, sum_y.injections[idx])));
            }
            trace.completions.push_back({alpha + 1, i, comp.f(), comp.g(), d.middle.f()});
        }
        std::vector<ModuleMap> wmaps, ymaps;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const auto& ar = q.arrow(a);
            if (in_next[ar.target] && !in_prev[ar.target]) {
                wmaps.push_back(w_arrow.at(a));
                ymaps.push_back(y_arrow.at(a));
            } else if (in_prev[ar.target]) {
                wmaps.push_back(prev.middle.map(a));
                ymaps.push_back(prev.right.map(a));
            } else {
                wmaps.push_back(ModuleMap::zero(wm[ar.source], wm[ar.target]));
                ymaps.push_back(ModuleMap::zero(ym[ar.source], ym[ar.target]));
            }
        }
        Representation xn = truncation(x, in_next);
        Representation wn(q, ring, wm, wmaps), yn(q, ring, ym, ymaps);
        TraceLadder ladder{alpha + 1, alpha, {}, {}, {}};
        for (std::size_t i = 0; i < n; ++i) {
            auto restrict_to = [&](const FiniteModule& from, const FiniteModule& to) {
                return in_prev[i] ? ModuleMap::identity(from) : ModuleMap::zero(from, to);
            };
            ladder.left.push_back(restrict_to(xn.module(i), prev.left.module(i)));
            ladder.middle.push_back(restrict_to(wn.module(i), prev.middle.module(i)));
            ladder.right.push_back(restrict_to(yn.module(i), prev.right.module(i)));
        }
        trace.ladders.push_back(std::move(ladder));
        trace.stages.push_back({alpha + 1, vs.sets[alpha + 1], xn, wn, yn, kc, hc});
    }
    const TraceStage& last = trace.stages.back();
    RepSES ses(RepMorphism(last.left, last.middle, last.k), RepMorphism(last.middle, last.right, last.h));
    return {std::move(ses), std::move(trace)};
}

ConstructionResult trivial_objects_construct(const Representation& x, const HoveyTripleSpec& triple,
                                             const TrivialOptions& options) {
    const Quiver& q = x.quiver();
    const RingSpec& ring = x.ring();
    const VSequence vs = v_sequence(q);
    if (!vs.left_rooted) throw std::invalid_argument("quiver is not left rooted");
    const std::size_t n = q.vertex_count();
    const ModuleClass ct = triple.trivially_cofibrant();
    const ModuleClass ft = triple.trivially_fibrant();
    for (std::size_t i = 0; i < n; ++i)
        if (!triple.trivial.contains(x.module(i)))
            throw ConstructionError("vertex " + q.vertex_name(i) + ": X(i) = " + x.module(i).to_string() + " is not in " +
                                    triple.trivial.name());

    std::vector<FiniteModule> am, bm;
    std::vector<ModuleMap> k0, h0;
    for (std::size_t i = 0; i < n; ++i) {
        auto w = approximate(x.module(i), ft, ct, options.witness, options.search_cap);
        if (!w)
            throw ConstructionError("vertex " + q.vertex_name(i) + ": no witness for " + x.module(i).to_string() +
                                    " within order " + std::to_string(options.search_cap));
        am.push_back(w->middle());
        bm.push_back(w->right());
        k0.push_back(w->f());
        h0.push_back(w->g());
    }
    std::vector<ModuleMap> amaps, bmaps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        auto lifted = extend_along_mono(k0[ar.source], compose(k0[ar.target], x.map(a)));
        if (!lifted)
            throw ConstructionError("arrow " + ar.name + ": no lift A(" + ar.name + "); Ext^1(" +
                                    bm[ar.source].to_string() + ", " + am[ar.target].to_string() + ") obstructs");
        auto induced = descend_through_epi(h0[ar.source], compose(h0[ar.target], *lifted));
        if (!induced) throw ConstructionError("arrow " + ar.name + ": induced map on B does not exist");
        amaps.push_back(*lifted);
        bmaps.push_back(*induced);
    }
    Representation a1(q, ring, am, amaps), b1(q, ring, bm, bmaps);

    ConstructionTrace trace{"trivial",
                            x,
                            {{"cofibrant", triple.cofibrant.name()},
                             {"trivial", triple.trivial.name()},
                             {"fibrant", triple.fibrant.name()}},
                            triple.cofibrant.fault(),
                            {},
                            {},
                            {},
                            {}};
    std::string ws, cs;
    for (auto s : options.witness) ws += (ws.empty() ? "" : ",") + to_string(s);
    for (auto s : options.completion) cs += (cs.empty() ? "" : ",") + to_string(s);
    trace.notes.push_back("vertexwise witnesses: strategies " + ws + ", search order cap " +
                          std::to_string(options.search_cap));
    trace.notes.push_back("completions for (" + ct.name() + ", " + triple.fibrant.name() + "): strategies " + cs);
    trace.notes.push_back("ladder maps are vertexwise monomorphisms commuting with k and h; they need not commute "
                          "with arrow maps");

    Representation zero = Representation::zero(q, ring);
    trace.stages.push_back({0, vs.sets[0], zero, zero, zero, zero_components(zero, zero), zero_components(zero, zero)});
    trace.stages.push_back({1, vs.sets[1], x, a1, b1, k0, h0});
    trace.ladders.push_back({0, 1, zero_components(zero, x), zero_components(zero, a1), zero_components(zero, b1)});

    CotorsionPairOracle completion(ct, triple.fibrant, options.completion);
    for (std::size_t alpha = 1; alpha < vs.lambda; ++alpha) {
        const TraceStage& prev = trace.stages.back();
        const auto in_prev = mask_of(n, prev.vertices);
        const auto in_next = mask_of(n, vs.sets[alpha + 1]);
        std::vector<FiniteModule> an = prev.middle.modules(), bn = prev.right.modules();
        std::vector<ModuleMap> kc = prev.k, hc = prev.h;
        struct Fresh {
            DirectSum da, db, sum;
            ModuleMap epsilon;
        };
        std::map<std::size_t, Fresh> fresh;
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_next[i] || in_prev[i]) continue;
            std::vector<FiniteModule> parts;
            for (auto a : q.arrows_into(i)) parts.push_back(prev.right.module(q.arrow(a).source));
            DirectSum sum = direct_sum(ring, parts);
            ModuleSES c = completion.complete(sum.module);
            if (!ct.contains(c.middle()))
                throw ConstructionError("vertex " + q.vertex_name(i) + ": completion middle " + c.middle().to_string() +
                                        " is not in " + ct.name());
            DirectSum da = direct_sum(ring, {prev.middle.module(i), c.middle()});
            DirectSum db = direct_sum(ring, {prev.right.module(i), c.middle()});
            kc[i] = compose(da.injections[0], prev.k[i]);
            hc[i] = direct_sum_map(da, db, {prev.h[i], ModuleMap::identity(c.middle())});
            an[i] = da.module;
            bn[i] = db.module;
            trace.completions.push_back({alpha + 1, i, c.f(), c.g(), db.projections[1]});
            fresh.emplace(i, Fresh{da, db, sum, c.f()});
        }
        std::vector<ModuleMap> amaps2, bmaps2;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const auto& ar = q.arrow(a);
            if (auto it = fresh.find(ar.target); it != fresh.end()) {
                const Fresh& fr = it->second;
                const auto& into = q.arrows_into(ar.target);
                std::size_t idx = static_cast<std::size_t>(std::find(into.begin(), into.end(), a) - into.begin());
                ModuleMap e = compose(fr.epsilon, fr.sum.injections[idx]);
                amaps2.push_back(pair(an[ar.source], {prev.middle.map(a), compose(e, prev.h[ar.source])}, fr.da));
                bmaps2.push_back(pair(bn[ar.source], {prev.right.map(a), e}, fr.db));
            } else if (auto js = fresh.find(ar.source); js != fresh.end()) {
                amaps2.push_back(compose(prev.middle.map(a), js->second.da.projections[0]));
                bmaps2.push_back(compose(prev.right.map(a), js->second.db.projections[0]));
            } else {
                amaps2.push_back(prev.middle.map(a));
                bmaps2.push_back(prev.right.map(a));
            }
        }
        Representation an_rep(q, ring, an, amaps2), bn_rep(q, ring, bn, bmaps2);
        TraceLadder ladder{alpha, alpha + 1, {}, {}, {}};
        for (std::size_t i = 0; i < n; ++i) {
            ladder.left.push_back(ModuleMap::identity(x.module(i)));
            if (auto it = fresh.find(i); it != fresh.end()) {
                ladder.middle.push_back(it->second.da.injections[0]);
                ladder.right.push_back(it->second.db.injections[0]);
            } else {
                ladder.middle.push_back(ModuleMap::identity(an[i]));
                ladder.right.push_back(ModuleMap::identity(bn[i]));
            }
        }
        trace.ladders.push_back(std::move(ladder));
        trace.stages.push_back({alpha + 1, vs.sets[alpha + 1], x, an_rep, bn_rep, kc, hc});
    }
    const TraceStage& last = trace.stages.back();
    RepSES ses(RepMorphism(last.left, last.middle, last.k), RepMorphism(last.middle, last.right, last.h));
    return {std::move(ses), std::move(trace)};
}

TraceStage stabilized_colimit(const std::vector<TraceStage>& chain, std::size_t alpha) {
    if (chain.empty()) throw std::invalid_argument("colimit of an empty chain");
    const TraceStage& last = chain.back();
    const Quiver& q = last.middle.quiver();
    const std::size_t n = q.vertex_count();
    std::vector<bool> in_union(n, false);
    for (const auto& s : chain)
        for (auto i : s.vertices) in_union[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_union[i]) continue;
        std::size_t first = 0;
        while (std::find(chain[first].vertices.begin(), chain[first].vertices.end(), i) == chain[first].vertices.end())
            ++first;
        for (std::size_t b = first + 1; b < chain.size(); ++b) {
            const auto &s = chain[first], &t = chain[b];
            if (!(s.left.module(i) == t.left.module(i) && s.middle.module(i) == t.middle.module(i) &&
                  s.right.module(i) == t.right.module(i) && s.k[i] == t.k[i] && s.h[i] == t.h[i]))
                throw std::invalid_argument("colimit: vertex " + q.vertex_name(i) + " has not stabilized");
        }
    }
    std::vector<std::size_t> vertices;
    for (std::size_t i = 0; i < n; ++i)
        if (in_union[i]) vertices.push_back(i);
    Representation l = truncation(last.left, in_union), m = truncation(last.middle, in_union),
                   r = truncation(last.right, in_union);
    std::vector<ModuleMap> k, h;
    for (std::size_t i = 0; i < n; ++i) {
        k.push_back(in_union[i] ? last.k[i] : ModuleMap::zero(l.module(i), m.module(i)));
        h.push_back(in_union[i] ? last.h[i] : ModuleMap::zero(m.module(i), r.module(i)));
    }
    return {alpha, vertices, l, m, r, k, h};
}

namespace {

struct Checker {
    TraceVerdict verdict;
    void check(bool ok, const std::string& what) {
        ++verdict.checks;
        if (!ok) {
            verdict.ok = false;
            verdict.failures.push_back(what);
        }
    }
};

bool is_mono_all(const std::vector<ModuleMap>& maps) {
    return std::all_of(maps.begin(), maps.end(), [](const ModuleMap& f) { return is_injective(f); });
}

void check_stage_exact(Checker& c, const TraceStage& s) {
    const std::string tag = "stage " + std::to_string(s.alpha);
    try {
        RepSES ses(RepMorphism(s.left, s.middle, s.k), RepMorphism(s.middle, s.right, s.h));
        c.check(true, tag + ": exact sequence of representations");
    } catch (const std::exception& e) {
        c.check(false, tag + ": not an exact sequence of representations (" + e.what() + ")");
    }
}

}  // namespace

TraceVerdict verify_trace(const ConstructionTrace& trace) {
    Checker c;
    const Representation& x = trace.input;
    const Quiver& q = x.quiver();
    const RingSpec& ring = x.ring();
    const std::size_t n = q.vertex_count();
    const VSequence vs = v_sequence(q);
    std::vector<std::pair<std::string, ModuleClass>> classes;
    for (const auto& [role, name] : trace.classes) classes.emplace_back(role, ModuleClass::parse(ring, name, trace.fault));
    c.check(vs.left_rooted, "quiver is left rooted");
    c.check(trace.stages.size() == vs.lambda + 1, "stage count is lambda + 1");
    if (!c.verdict.ok) return c.verdict;
    for (std::size_t a = 0; a < trace.stages.size(); ++a) {
        const auto& s = trace.stages[a];
        c.check(s.alpha == a && s.vertices == vs.sets[a], "stage " + std::to_string(a) + ": index and V_alpha");
        check_stage_exact(c, s);
    }
    if (!c.verdict.ok) return c.verdict;
    auto name = [&](std::size_t i) { return q.vertex_name(i); };

    if (trace.kind == "cogenerator") {
        const ModuleClass* amb = find_class(classes, "ambient");
        const ModuleClass* cog = find_class(classes, "cogenerating");
        if (!amb || !cog) {
            c.check(false, "trace lacks class names");
            return c.verdict;
        }
        for (const auto& s : trace.stages) {
            const std::string tag = "stage " + std::to_string(s.alpha);
            const auto in = mask_of(n, s.vertices);
            c.check(s.left == truncation(x, in), tag + ": X_alpha is the truncation of X");
            for (std::size_t i = 0; i < n; ++i) {
                const std::string vt = tag + ", vertex " + name(i);
                if (!in[i]) {
                    c.check(s.middle.module(i).is_zero(), vt + ": (a) W vanishes off V_alpha");
                    c.check(s.right.module(i).is_zero(), vt + ": (b) Y vanishes off V_alpha");
                    continue;
                }
                auto pw = phi(s.middle, i);
                auto py = phi(s.right, i);
                c.check(is_injective(pw.map), vt + ": (a) phi of W injective");
                c.check(cog->contains(s.middle.module(i)), vt + ": (a) W(i) in " + cog->name());
                c.check(cog->contains(cokernel(pw.map).module), vt + ": (a) C_i(W) in " + cog->name());
                c.check(is_injective(py.map), vt + ": (b) phi of Y injective");
                c.check(amb->contains(s.right.module(i)), vt + ": (b) Y(i) in " + amb->name());
                c.check(amb->contains(cokernel(py.map).module), vt + ": (b) C_i(Y) in " + amb->name());
            }
        }
        c.check(trace.ladders.size() + 1 == trace.stages.size(), "(c) one ladder per successor stage");
        for (const auto& l : trace.ladders) {
            const std::string tag = "(c) ladder " + std::to_string(l.from) + " -> " + std::to_string(l.to);
            if (l.from != l.to + 1 || l.from >= trace.stages.size()) {
                c.check(false, tag + ": bad indices");
                continue;
            }
            const auto &src = trace.stages[l.from], &dst = trace.stages[l.to];
            try {
                RepMorphism ml(src.left, dst.left, l.left), mm(src.middle, dst.middle, l.middle),
                    mr(src.right, dst.right, l.right);
                bool squares = compose(mm, RepMorphism(src.left, src.middle, src.k)) ==
                                   compose(RepMorphism(dst.left, dst.middle, dst.k), ml) &&
                               compose(mr, RepMorphism(src.middle, src.right, src.h)) ==
                                   compose(RepMorphism(dst.middle, dst.right, dst.h), mm);
                c.check(squares, tag + ": morphism of sequences");
            } catch (const std::exception& e) {
                c.check(false, tag + ": not a morphism of representations (" + e.what() + ")");
            }
        }
        for (std::size_t a = 0; a < trace.stages.size(); ++a)
            for (std::size_t b = a + 1; b < trace.stages.size(); ++b) {
                const auto &s = trace.stages[a], &t = trace.stages[b];
                const auto in_s = mask_of(n, s.vertices), in_t = mask_of(n, t.vertices);
                for (std::size_t i = 0; i < n; ++i) {
                    if (in_t[i] && !in_s[i]) continue;
                    bool same = s.left.module(i) == t.left.module(i) && s.middle.module(i) == t.middle.module(i) &&
                                s.right.module(i) == t.right.module(i) && s.k[i] == t.k[i] && s.h[i] == t.h[i];
                    c.check(same, "(c) E_" + std::to_string(b) + "(" + name(i) + ") = E_" + std::to_string(a) + "(" +
                                      name(i) + ")");
                }
            }
        for (const auto& r : trace.completions) {
            const std::string tag = "completion at stage " + std::to_string(r.alpha) + ", vertex " + name(r.vertex);
            if (r.alpha >= trace.stages.size()) {
                c.check(false, tag + ": bad stage");
                continue;
            }
            const auto& w = trace.stages[r.alpha].middle;
            auto pw = phi(w, r.vertex);
            c.check(pw.map == compose(r.link, r.epsilon), tag + ": phi of W factors through the completion");
            c.check(ModuleSES::is_exact(r.epsilon, r.quotient), tag + ": completion is exact");
            c.check(cog->contains(r.quotient.target()), tag + ": completion cokernel in " + cog->name());
            // 0 -> C' -> C_i(W) -> W(i)/U -> 0 from the snake lemma.
            try {
                CokernelResult ci = cokernel(pw.map);
                CokernelResult s = cokernel(r.link);
                auto gamma = descend_through_epi(r.quotient, compose(ci.projection, r.link));
                auto onto_s = descend_through_epi(ci.projection, s.projection);
                bool ok = gamma && onto_s;
                if (ok) {
                    SnakeSequence sn = snake_lemma(r.epsilon, r.quotient, pw.map, ci.projection,
                                                   ModuleMap::identity(r.epsilon.source()), r.link, *gamma);
                    ok = sn.is_exact() && ModuleSES::is_exact(*gamma, *onto_s);
                }
                c.check(ok, tag + ": 0 -> C' -> C_i(W) -> S -> 0 exact");
            } catch (const std::exception& e) {
                c.check(false, tag + ": snake sequence failed (" + e.what() + ")");
            }
        }
        const auto& last = trace.final_stage();
        c.check(last.left == x, "final stage starts at the input");
        c.check(in_phi_class(last.middle, cog->predicate()), "W in Phi(" + cog->name() + ")");
        c.check(in_phi_class(last.right, amb->predicate()), "Y in Phi(" + amb->name() + ")");
    } else if (trace.kind == "trivial") {
        const ModuleClass* cof = find_class(classes, "cofibrant");
        const ModuleClass* triv = find_class(classes, "trivial");
        const ModuleClass* fib = find_class(classes, "fibrant");
        if (!cof || !triv || !fib) {
            c.check(false, "trace lacks class names");
            return c.verdict;
        }
        const ModuleClass ct = cof->intersect(*triv), ft = triv->intersect(*fib);
        const TraceStage& e1 = trace.stages.size() > 1 ? trace.stages[1] : trace.stages[0];
        c.check(trace.stages[0].middle.is_zero() && trace.stages[0].left.is_zero(), "E_0 is zero");
        for (std::size_t a = 1; a < trace.stages.size(); ++a) {
            const auto& s = trace.stages[a];
            const std::string tag = "stage " + std::to_string(a);
            const auto in = mask_of(n, s.vertices);
            c.check(s.left == x, tag + ": (a) X_alpha = X");
            for (std::size_t i = 0; i < n; ++i) {
                const std::string vt = tag + ", vertex " + name(i);
                if (!in[i]) {
                    c.check(s.middle.module(i) == e1.middle.module(i) && s.right.module(i) == e1.right.module(i),
                            vt + ": (b) frozen at the initial sequence");
                    c.check(ft.contains(s.middle.module(i)), vt + ": (b) A(i) in " + ft.name());
                    c.check(ct.contains(s.right.module(i)), vt + ": (b) B(i) in " + ct.name());
                    continue;
                }
                auto pb = phi(s.right, i);
                c.check(ft.contains(s.middle.module(i)), vt + ": (c) A_alpha(i) in " + ft.name());
                c.check(is_injective(pb.map), vt + ": (c) phi of B injective");
                c.check(ct.contains(s.right.module(i)), vt + ": (c) B_alpha(i) in " + ct.name());
                c.check(ct.contains(cokernel(pb.map).module), vt + ": (c) C_i(B_alpha) in " + ct.name());
            }
        }
        c.check(trace.ladders.size() + 1 == trace.stages.size(), "(d) one ladder per successor stage");
        std::size_t natural = 0;
        for (const auto& l : trace.ladders) {
            const std::string tag = "(d) ladder " + std::to_string(l.from) + " -> " + std::to_string(l.to);
            if (l.to != l.from + 1 || l.to >= trace.stages.size() || l.left.size() != n || l.middle.size() != n ||
                l.right.size() != n) {
                c.check(false, tag + ": bad shape");
                continue;
            }
            const auto &src = trace.stages[l.from], &dst = trace.stages[l.to];
            bool shapes = true;
            for (std::size_t i = 0; i < n; ++i)
                shapes = shapes && l.middle[i].source() == src.middle.module(i) &&
                         l.middle[i].target() == dst.middle.module(i) && l.right[i].source() == src.right.module(i) &&
                         l.right[i].target() == dst.right.module(i) && l.left[i].source() == src.left.module(i) &&
                         l.left[i].target() == dst.left.module(i);
            c.check(shapes, tag + ": components have the right modules");
            if (!shapes) continue;
            if (l.from > 0) {
                bool identity_left = true;
                for (std::size_t i = 0; i < n; ++i) identity_left = identity_left && l.left[i] == ModuleMap::identity(x.module(i));
                c.check(identity_left, tag + ": identity on X");
            }
            c.check(is_mono_all(l.middle), tag + ": f monic");
            c.check(is_mono_all(l.right), tag + ": g monic");
            bool squares = true;
            for (std::size_t i = 0; i < n; ++i)
                squares = squares && compose(l.middle[i], src.k[i]) == compose(dst.k[i], l.left[i]) &&
                          compose(l.right[i], src.h[i]) == compose(dst.h[i], l.middle[i]);
            c.check(squares, tag + ": squares with k and h commute");
            if (RepMorphism::is_natural(src.middle, dst.middle, l.middle) &&
                RepMorphism::is_natural(src.right, dst.right, l.right))
                ++natural;
            // Unchanged values off the new vertices.
            if (l.from > 0) {
                const auto in_s = mask_of(n, src.vertices), in_t = mask_of(n, dst.vertices);
                for (std::size_t i = 0; i < n; ++i) {
                    if (in_t[i] && !in_s[i]) continue;
                    c.check(src.middle.module(i) == dst.middle.module(i) && src.right.module(i) == dst.right.module(i) &&
                                l.middle[i] == ModuleMap::identity(src.middle.module(i)) &&
                                l.right[i] == ModuleMap::identity(src.right.module(i)),
                            tag + ", vertex " + name(i) + ": unchanged");
                }
            }
        }
        c.verdict.remarks.push_back(std::to_string(natural) + " of " + std::to_string(trace.ladders.size()) +
                                    " ladder steps commute with arrow maps");
        for (const auto& r : trace.completions) {
            const std::string tag = "completion at stage " + std::to_string(r.alpha) + ", vertex " + name(r.vertex);
            if (r.alpha >= trace.stages.size() || r.alpha < 2) {
                c.check(false, tag + ": bad stage");
                continue;
            }
            const auto& s = trace.stages[r.alpha];
            const auto& prev = trace.stages[r.alpha - 1];
            auto pb = phi(s.right, r.vertex);
            c.check(ModuleSES::is_exact(r.epsilon, r.quotient), tag + ": completion is exact");
            c.check(ct.contains(r.epsilon.target()) && fib->contains(r.epsilon.target()),
                    tag + ": D in " + ct.name() + " and " + fib->name());
            c.check(ct.contains(r.quotient.target()), tag + ": completion cokernel in " + ct.name());
            c.check(compose(r.link, pb.map) == r.epsilon, tag + ": projection to D recovers epsilon");
            c.check(!is_injective(r.epsilon) || is_injective(pb.map), tag + ": (dagger) monomorphism");
            try {
                CokernelResult ci = cokernel(pb.map);
                auto gamma = descend_through_epi(ci.projection, compose(r.quotient, r.link));
                bool ok = static_cast<bool>(gamma);
                if (ok) {
                    SnakeSequence sn = snake_lemma(pb.map, ci.projection, r.epsilon, r.quotient,
                                                   ModuleMap::identity(pb.map.source()), r.link, *gamma);
                    // ker(link) = B(i) maps isomorphically onto ker gamma, and gamma is onto.
                    ok = sn.is_exact() && sn.ker_beta.module.order() == prev.right.module(r.vertex).order() &&
                         is_injective(sn.ker_g) && is_surjective(sn.ker_g) && sn.coker_gamma.module.is_zero();
                    ok = ok && ct.contains(ci.module);
                }
                c.check(ok, tag + ": 0 -> B(i) -> C_i(B) -> B-bar -> 0 exact");
            } catch (const std::exception& e) {
                c.check(false, tag + ": snake sequence failed (" + e.what() + ")");
            }
        }
        const auto& last = trace.final_stage();
        c.check(in_rep_class(last.middle, ft.predicate()), "A' in Rep(" + ft.name() + ")");
        c.check(in_phi_class(last.right, ct.predicate()), "B' in Phi(" + ct.name() + ")");
    } else {
        c.check(false, "unknown trace kind '" + trace.kind + "'");
    }
    return c.verdict;
}

namespace {

Json stage_to_json(const Quiver& q, const TraceStage& s) {
    Json v = Json::array();
    for (auto i : s.vertices) v.push_back(q.vertex_name(i));
    return {{"alpha", s.alpha},
            {"V", v},
            {"left", rep_body_to_json(s.left)},
            {"middle", rep_body_to_json(s.middle)},
            {"right", rep_body_to_json(s.right)},
            {"k", morphism_to_json(s.k)},
            {"h", morphism_to_json(s.h)}};
}

TraceStage stage_from_json(const Quiver& q, const RingSpec& ring, const Json& j) {
    std::vector<std::size_t> v;
    for (const auto& name : j.at("V")) v.push_back(q.vertex_index(name.get<std::string>()));
    Representation l = rep_body_from_json(q, ring, j.at("left"));
    Representation m = rep_body_from_json(q, ring, j.at("middle"));
    Representation r = rep_body_from_json(q, ring, j.at("right"));
    auto k = components_from_json(l, m, j.at("k"));
    auto h = components_from_json(m, r, j.at("h"));
    return {j.at("alpha").get<std::size_t>(), v, l, m, r, k, h};
}

Json map_record(const ModuleMap& f) {
    return {{"source", module_to_json(f.source())}, {"target", module_to_json(f.target())},
            {"matrix", matrix_to_json(f.matrix())}};
}

ModuleMap map_from_record(const RingSpec& ring, const Json& j) {
    return module_map_from_json(module_from_json(ring, j.at("source")), module_from_json(ring, j.at("target")),
                                j.at("matrix"));
}

}  // namespace

Json trace_to_json(const ConstructionTrace& t) {
    const Quiver& q = t.input.quiver();
    Json classes = Json::object();
    for (const auto& [role, name] : t.classes) classes[role] = name;
    Json stages = Json::array(), ladders = Json::array(), completions = Json::array();
    for (const auto& s : t.stages) stages.push_back(stage_to_json(q, s));
    for (const auto& l : t.ladders)
        ladders.push_back({{"from", l.from},
                           {"to", l.to},
                           {"left", morphism_to_json(l.left)},
                           {"middle", morphism_to_json(l.middle)},
                           {"right", morphism_to_json(l.right)}});
    for (const auto& r : t.completions)
        completions.push_back({{"alpha", r.alpha},
                               {"vertex", q.vertex_name(r.vertex)},
                               {"epsilon", map_record(r.epsilon)},
                               {"quotient", map_record(r.quotient)},
                               {"link", map_record(r.link)}});
    return {{"schema", "qrep-trace/1"},
            {"kind", t.kind},
            {"quiver", quiver_to_json(q)},
            {"ring", t.input.ring().modulus()},
            {"fault", to_string(t.fault)},
            {"classes", classes},
            {"input", rep_body_to_json(t.input)},
            {"stages", stages},
            {"ladders", ladders},
            {"completions", completions},
            {"notes", t.notes}};
}

ConstructionTrace trace_from_json(const Json& j) {
    if (j.value("schema", "") != "qrep-trace/1") throw std::invalid_argument("unsupported trace schema");
    Quiver q = quiver_from_json(j.at("quiver"));
    RingSpec ring(j.at("ring").get<Residue>());
    Representation input = rep_body_from_json(q, ring, j.at("input"));
    ConstructionTrace t{j.at("kind").get<std::string>(), input, {}, parse_fault(j.value("fault", "none")), {}, {}, {}, {}};
    for (const auto& [role, name] : j.at("classes").items()) t.classes.emplace_back(role, name.get<std::string>());
    for (const auto& s : j.at("stages")) t.stages.push_back(stage_from_json(q, ring, s));
    for (const auto& l : j.at("ladders")) {
        std::size_t from = l.at("from").get<std::size_t>(), to = l.at("to").get<std::size_t>();
        if (from >= t.stages.size() || to >= t.stages.size()) throw std::invalid_argument("ladder index out of range");
        const auto &s = t.stages[from], &d = t.stages[to];
        t.ladders.push_back({from, to, components_from_json(s.left, d.left, l.at("left")),
                             components_from_json(s.middle, d.middle, l.at("middle")),
                             components_from_json(s.right, d.right, l.at("right"))});
    }
    for (const auto& r : j.at("completions"))
        t.completions.push_back({r.at("alpha").get<std::size_t>(), q.vertex_index(r.at("vertex").get<std::string>()),
                                 map_from_record(ring, r.at("epsilon")), map_from_record(ring, r.at("quotient")),
                                 map_from_record(ring, r.at("link"))});
    t.notes = j.value("notes", std::vector<std::string>{});
    return t;
}

CoreEqualityReport core_equality_check(const Quiver& q, const HoveyTripleSpec& triple, std::uint64_t bound) {
    CoreEqualityReport out;
    const RingSpec& ring = triple.cofibrant.ring();
    const ModuleClass ct = triple.trivially_cofibrant(), ft = triple.trivially_fibrant();
    const auto c_pred = triple.cofibrant.predicate(), ct_pred = ct.predicate(), ft_pred = ft.predicate(),
               f_pred = triple.fibrant.predicate();
    for_each_rep(q, ring, bound, [&](const Representation& x) {
        ++out.enumerated;
        bool a = in_phi_class(x, c_pred) && in_rep_class(x, ft_pred);
        bool b = in_phi_class(x, ct_pred) && in_rep_class(x, f_pred);
        bool p = is_projective_rep(x);
        out.side_a += a;
        out.side_b += b;
        out.projective += p;
        if (a != b || a != p) {
            if (a != b) out.equal = false;
            if (a != p || b != p) out.equals_projective = false;
            if (!out.counterexample) {
                out.counterexample = x;
                out.detail = std::string("Phi(") + triple.cofibrant.name() + ") with Rep(" + ft.name() + "): " +
                             (a ? "yes" : "no") + "; Phi(" + ct.name() + ") with Rep(" + triple.fibrant.name() +
                             "): " + (b ? "yes" : "no") + "; projective: " + (p ? "yes" : "no");
            }
        }
        return true;
    });
    return out;
}

}  // namespace qrep
