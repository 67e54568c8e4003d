#include <gtest/gtest.h>

#include <random>
#include <set>

#include "brute.hpp"
#include "fixtures.hpp"
#include "qrep/enumerate.hpp"
#include "qrep/path_module.hpp"
#include "qrep/representation.hpp"

using namespace qrep;

namespace {

bool all_phi_injective(const Representation& x) {
    for (std::size_t i = 0; i < x.quiver().vertex_count(); ++i)
        if (!is_injective(phi(x, i).map)) return false;
    return true;
}

// Brute-force |Hom_Q(X, Y)|: every tuple of vertex maps, naturality checked on all elements.
std::uint64_t brute_rep_hom_count(const Representation& x, const Representation& y) {
    const Quiver& q = x.quiver();
    std::vector<std::vector<ModuleMap>> options(q.vertex_count());
    for (std::size_t i = 0; i < q.vertex_count(); ++i)
        for_each_hom(x.module(i), y.module(i), [&](const ModuleMap& f) {
            options[i].push_back(f);
            return true;
        });
    std::vector<std::size_t> idx(q.vertex_count(), 0);
    std::uint64_t count = 0;
    while (true) {
        bool natural = true;
        for (std::size_t a = 0; a < q.arrow_count() && natural; ++a) {
            const auto& ar = q.arrow(a);
            const auto& src = x.module(ar.source);
            for (std::uint64_t e = 0; e < src.order() && natural; ++e) {
                auto el = src.element_at(e);
                natural = y.map(a).apply(options[ar.source][idx[ar.source]].apply(el)) ==
                          options[ar.target][idx[ar.target]].apply(x.map(a).apply(el));
            }
        }
        if (natural) ++count;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return count;
}

}  // namespace

TEST(Representation, PhiInjectiveExampleHasCokernelZ2) {
    auto x = fixtures::fork_cokernel_z2();
    auto p = phi(x, 2);
    EXPECT_TRUE(is_injective(p.map));
    EXPECT_EQ(coker_c(x, 2).module.to_string(), "Z/2");
}

TEST(Representation, PhiNonInjectiveExampleKillsTwoOne) {
    auto x = fixtures::fork_non_injective();
    auto p = phi(x, 2);
    EXPECT_FALSE(is_injective(p.map));
    Element w = p.sum.module.add(p.sum.injections[0].apply({2}), p.sum.injections[1].apply({1}));
    EXPECT_TRUE(p.map.apply(w) == p.map.target().zero_element());
    EXPECT_FALSE(in_phi_class(x, [](const FiniteModule&) { return true; }));
}

TEST(Representation, SourceAndSinkConventions) {
    auto x = fixtures::fork_cokernel_z2();
    EXPECT_TRUE(phi(x, 0).sum.module.is_zero());
    EXPECT_TRUE(is_injective(phi(x, 0).map));
    EXPECT_TRUE(psi(x, 3).sum.module.is_zero());
    EXPECT_EQ(ker_k(x, 3).module, x.module(3));
    auto a2 = a2_quiver();
    auto stalk = Representation::stalk(a2, FiniteModule::cyclic(RingSpec(4), 4), 0);
    EXPECT_TRUE(psi(stalk, 0).map.is_zero());
    EXPECT_EQ(ker_k(stalk, 0).module, stalk.module(0));
}

TEST(Representation, ClassPresetsOnExamples) {
    auto x = fixtures::fork_cokernel_z2();
    EXPECT_TRUE(is_gorenstein_flat_rep(x));
    EXPECT_FALSE(is_flat_rep(x));
    EXPECT_FALSE(is_projective_rep(x));
    EXPECT_FALSE(is_gorenstein_flat_rep(fixtures::fork_non_injective()));
    auto z = Representation::zero(fork_quiver(), RingSpec(4));
    EXPECT_TRUE(is_flat_rep(z) && is_gorenstein_flat_rep(z) && is_pgf_rep(z) && is_projective_rep(z));
    auto pred = [](const FiniteModule& m) { return m.is_zero(); };
    EXPECT_TRUE(in_phi_class(z, pred) && in_psi_class(z, pred) && in_rep_class(z, pred));
    // Z/4 -> Z/4 on a, nothing at 2 and 4: phi_4 is Z/4 -> 0.
    auto y = fixtures::rep(fork_quiver(), 4, {"Z/4", "0", "Z/4", "0"}, {{{1}}, {}, {}});
    EXPECT_FALSE(is_projective_rep(y));
    EXPECT_THROW(is_flat_rep(Representation::zero(loop_quiver(), RingSpec(4))), std::invalid_argument);
}

TEST(Representation, FreeRepresentationsAreProjective) {
    RingSpec r4(4);
    for (std::size_t v = 0; v < 4; ++v) {
        auto p = projective_rep(fork_quiver(), r4, v).rep();
        EXPECT_TRUE(is_projective_rep(p)) << v;
        EXPECT_TRUE(is_projective_by_splitting(p)) << v;
    }
}

TEST(Representation, SemisimpleGorensteinFlatIsPhiInjectivity) {
    RingSpec r6(6);
    std::size_t both = 0, neither = 0;
    for_each_rep(a2_quiver(), r6, 6, [&](const Representation& x) {
        bool gf = is_gorenstein_flat_rep(x);
        EXPECT_EQ(gf, all_phi_injective(x)) << x.to_string();
        (gf ? both : neither)++;
        return true;
    });
    EXPECT_GT(both, 0u);
    EXPECT_GT(neither, 0u);
}

TEST(Representation, RejectsMismatchedMaps) {
    RingSpec r4(4);
    auto z2 = FiniteModule::cyclic(r4, 2), z4 = FiniteModule::cyclic(r4, 4);
    EXPECT_THROW(Representation(a2_quiver(), r4, {z2, z4}, {ModuleMap::zero(z4, z4)}), std::invalid_argument);
    auto x = fixtures::fork_cokernel_z2();
    std::vector<ModuleMap> bad;
    for (std::size_t i = 0; i < 4; ++i) bad.push_back(ModuleMap::identity(x.module(i)));
    bad[0] = ModuleMap::zero(x.module(0), x.module(0));
    EXPECT_THROW(RepMorphism(x, x, bad), std::invalid_argument);
}

TEST(Enumeration, SpecCounts) {
    EXPECT_EQ(count_reps(a2_quiver(), RingSpec(2), 2), 5u);
    EXPECT_EQ(enumerate_reps(a2_quiver(), RingSpec(2), 2).size(), 5u);
    auto only = enumerate_reps(fork_quiver(), RingSpec(4), 1);
    ASSERT_EQ(only.size(), 1u);
    EXPECT_TRUE(only[0].is_zero());
    EXPECT_THROW(count_reps(a2_quiver(), RingSpec(4), 1000), std::invalid_argument);
}

TEST(Enumeration, ForkCountMatchesDirectCounting) {
    for (Residue n : {2, 4}) {
        RingSpec ring(n);
        auto q = fork_quiver();
        auto mods = modules_up_to(ring, 4);
        std::uint64_t direct = 0;
        for (auto& m1 : mods)
            for (auto& m2 : mods)
                for (auto& m3 : mods)
                    for (auto& m4 : mods)
                        direct += brute::count_homs(m1, m3) * brute::count_homs(m2, m3) * brute::count_homs(m3, m4);
        EXPECT_EQ(count_reps(q, ring, 4), direct);
        std::set<std::string> seen;
        for_each_rep(q, ring, n == 2 ? 4 : 2, [&](const Representation& x) {
            seen.insert(x.to_string());
            return true;
        });
        EXPECT_EQ(seen.size(), count_reps(q, ring, n == 2 ? 4 : 2));
    }
}

TEST(RepHom, CountsMatchBruteForce) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Quiver q = trial % 2 ? fork_quiver() : a2_quiver();
        RingSpec ring(trial % 3 ? 4 : 2);
        auto x = random_rep(q, ring, trial % 2 ? 2 : 4, rng);
        auto y = random_rep(q, ring, trial % 2 ? 2 : 4, rng);
        RepHom h(x, y);
        EXPECT_EQ(h.count(), brute_rep_hom_count(x, y)) << x.to_string() << " | " << y.to_string();
        std::set<std::string> distinct;
        h.for_each([&](const RepMorphism& f) {
            EXPECT_EQ(h.element_of(f), h.module().reduce(h.element_of(f)));
            std::string key;
            for (const auto& c : f.components()) key += c.matrix().to_string();
            distinct.insert(key);
            return true;
        });
        EXPECT_EQ(distinct.size(), h.count());
    }
}

TEST(Representation, KernelCokernelAndSums) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto q = fork_quiver();
        RingSpec ring(4);
        auto x = random_rep(q, ring, 4, rng);
        auto y = random_rep(q, ring, 4, rng);
        RepHom h(x, y);
        auto f = h.morphism_of(h.module().element_at(std::uniform_int_distribution<std::uint64_t>(0, h.count() - 1)(rng)));
        auto k = rep_kernel(f);
        auto c = rep_cokernel(f);
        EXPECT_TRUE(compose(f, k.inclusion).is_zero());
        EXPECT_TRUE(compose(c.projection, f).is_zero());
        for (std::size_t i = 0; i < 4; ++i)
            EXPECT_EQ(k.rep.module(i).order() * y.module(i).order(), x.module(i).order() * c.rep.module(i).order());
        auto s = rep_direct_sum({x, y});
        EXPECT_EQ(s.rep.total_order(), x.total_order() * y.total_order());
        EXPECT_TRUE(compose(s.projections[0], s.injections[0]) == RepMorphism::identity(x));
        EXPECT_TRUE(compose(s.projections[1], s.injections[0]).is_zero());
        EXPECT_EQ(RepHom(s.rep, y).count(), RepHom(x, y).count() * RepHom(y, y).count());
    }
}

// 0 -> ker g -> X -> coker(ker g) -> 0 with all three terms phi-injective gives exact C_i rows.
TEST(Representation, CokernelFunctorIsExactOnPhiSequences) {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 4000 && checked < 60; ++trial) {
        RingSpec ring(4);
        auto q = fork_quiver();
        auto x = random_rep(q, ring, 4, rng);
        if (!all_phi_injective(x)) continue;
        auto z = random_rep(q, ring, 4, rng);
        RepHom h(x, z);
        auto g = h.morphism_of(h.module().element_at(std::uniform_int_distribution<std::uint64_t>(0, h.count() - 1)(rng)));
        auto k = rep_kernel(g);
        auto c = rep_cokernel(k.inclusion);
        RepSES ses(k.inclusion, c.projection);
        if (!all_phi_injective(k.rep) || !all_phi_injective(c.rep)) continue;
        ++checked;
        for (std::size_t i = 0; i < 4; ++i) {
            auto c1 = coker_c(k.rep, i), c2 = coker_c(x, i), c3 = coker_c(c.rep, i);
            auto m1 = descend_through_epi(c1.projection, compose(c2.projection, ses.f().component(i)));
            auto m2 = descend_through_epi(c2.projection, compose(c3.projection, ses.g().component(i)));
            ASSERT_TRUE(m1 && m2);
            EXPECT_TRUE(ModuleSES::is_exact(*m1, *m2)) << x.to_string();
        }
    }
    EXPECT_GE(checked, 20);
}

TEST(Hovey, MembershipFlags) {
    RingSpec r4(4);
    auto spec = gorenstein_flat_triple(r4);
    auto flags = hovey_membership(Representation::zero(fork_quiver(), r4), spec);
    EXPECT_TRUE(flags.cofibrant && flags.trivial && flags.fibrant);
    for_each_rep(a2_quiver(), r4, 4, [&](const Representation& x) {
        auto f = hovey_membership(x, spec);
        EXPECT_TRUE(f.fibrant);
        EXPECT_EQ(f.cofibrant && f.trivial, is_projective_rep(x)) << x.to_string();
        return true;
    });
}

TEST(PathModule, RoundTripAndAxioms) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto q = trial % 2 ? fork_quiver() : a2_quiver();
        auto x = random_rep(q, RingSpec(4), 4, rng);
        auto m = to_path_module(x);
        EXPECT_TRUE(satisfies_module_axioms(m));
        auto back = from_path_module(m);
        auto sum = direct_sum(x.ring(), x.modules());
        std::vector<ModuleMap> iso;
        for (std::size_t i = 0; i < q.vertex_count(); ++i) {
            auto c = lift_through_mono(back.embeddings[i], sum.injections[i]);
            ASSERT_TRUE(c);
            EXPECT_TRUE(is_isomorphism(*c));
            iso.push_back(*c);
        }
        EXPECT_NO_THROW(RepMorphism(x, back.rep, iso));
    }
}

TEST(PathModule, ProjectiveVertexValuesArePaths) {
    RingSpec r4(4);
    auto p1 = projective_rep(fork_quiver(), r4, 0).rep();
    EXPECT_EQ(p1.module(0).rank(), 1u);
    EXPECT_EQ(p1.module(1).rank(), 0u);
    EXPECT_EQ(p1.module(2).rank(), 1u);
    EXPECT_EQ(p1.module(3).rank(), 1u);
    // Hom(P_i, Y) = Y(i).
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto y = random_rep(fork_quiver(), r4, 4, rng);
        for (std::size_t v = 0; v < 4; ++v)
            EXPECT_EQ(RepHom(projective_rep(fork_quiver(), r4, v).rep(), y).count(), y.module(v).order());
    }
}

TEST(Ext1Rep, SpecExamples) {
    RingSpec r2(2), r4(4);
    auto a2 = a2_quiver();
    auto k = FiniteModule::cyclic(r2, 2);
    auto e = ext1_rep(Representation::stalk(a2, k, 0), Representation::stalk(a2, k, 1));
    EXPECT_EQ(e.to_string(), "Z/2");
    EXPECT_TRUE(ext1_rep(Representation::stalk(a2, k, 1), Representation::stalk(a2, k, 0)).is_zero());
    auto inj = Representation::stalk(a2, FiniteModule::cyclic(r4, 4), 0);
    auto x = rep_direct_sum({inj, inj}).rep;
    EXPECT_TRUE(ext1_rep(x, x).is_zero());
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        auto y = random_rep(fork_quiver(), r4, 4, rng);
        for (std::size_t v = 0; v < 4; ++v)
            EXPECT_TRUE(ext1_rep(projective_rep(fork_quiver(), r4, v).rep(), y).is_zero());
    }
    EXPECT_THROW(ext1_rep(Representation::zero(loop_quiver(), r2), Representation::zero(loop_quiver(), r2)),
                 std::invalid_argument);
}

TEST(Ext1Rep, MatchesExtensionClassificationOnA2) {
    auto run = [](const Representation& x, const Representation& y) {
        auto expected = brute::ext1_a2_order(x.module(0), x.module(1), x.map(0), y.module(0), y.module(1), y.map(0));
        EXPECT_EQ(ext1_rep(x, y).order(), expected) << x.to_string() << " | " << y.to_string();
    };
    auto z2 = enumerate_reps(a2_quiver(), RingSpec(2), 4);
    for (const auto& x : z2)
        for (const auto& y : z2)
            if (x.total_order() * y.total_order() <= 64) run(x, y);
    std::mt19937_64 rng(9);
    RingSpec r4(4);
    for (int t = 0; t < 40; ++t) {
        auto x = random_rep(a2_quiver(), r4, 4, rng);
        auto y = random_rep(a2_quiver(), r4, 4, rng);
        if (x.total_order() * y.total_order() <= 64) run(x, y);
    }
}

TEST(Ext1Rep, SplittingAgreesWithPhiProjectivity) {
    for (Residue n : {2, 4}) {
        for_each_rep(fork_quiver(), RingSpec(n), 2, [&](const Representation& x) {
            EXPECT_EQ(is_projective_rep(x), is_projective_by_splitting(x)) << x.to_string();
            return true;
        });
    }
}
