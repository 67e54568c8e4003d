#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "fixtures.hpp"
#include "qrep/enumerate.hpp"
#include "qrep/tensor_rep.hpp"

using namespace qrep;

namespace {

// |Hom(Y, H)| over any quiver by brute force over vertex maps.
std::uint64_t brute_hom_count(const Representation& x, const Representation& y) {
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

TEST(HomRep, SpecExamples) {
    RingSpec r2(2), r4(4);
    auto z = Representation::zero(fork_quiver(), r4);
    EXPECT_TRUE(hom_rep(z, FiniteModule::cyclic(r4, 4)).rep.is_zero());
    auto x = fixtures::rep(a2_quiver(), 2, {"Z/2", "Z/2"}, {{{1}}});
    auto h = hom_rep(x, FiniteModule::cyclic(r2, 2)).rep;
    EXPECT_EQ(h.quiver(), opposite(a2_quiver()));
    EXPECT_EQ(h.module(0).to_string(), "Z/2");
    EXPECT_EQ(h.module(1).to_string(), "Z/2");
    EXPECT_EQ(h.map(0).matrix().to_string(), "[[1]]");
    EXPECT_TRUE(hom_rep(fixtures::fork_cokernel_z2(), FiniteModule::zero(r4)).rep.is_zero());
}

TEST(TensorRep, SpecExamples) {
    RingSpec r2(2), r4(4);
    auto fork = fork_quiver();
    auto z2 = FiniteModule::cyclic(r4, 2);
    TensorResult t(Representation::stalk(opposite(fork), z2, 3), Representation::stalk(fork, z2, 3));
    EXPECT_EQ(t.value().to_string(), "Z/2");
    EXPECT_TRUE(TensorResult(Representation::zero(opposite(fork), r4), fixtures::fork_cokernel_z2()).value().is_zero());
    auto y = fixtures::rep(opposite(a2_quiver()), 2, {"Z/2", "Z/2"}, {{{1}}});
    auto x = fixtures::rep(a2_quiver(), 2, {"Z/2", "Z/2"}, {{{1}}});
    EXPECT_EQ(TensorResult(y, x).value().to_string(), "Z/2");
    EXPECT_THROW(TensorResult(x, x), std::invalid_argument);
}

// |Y (x) X| = |Hom(Y (x) X, Z/n)| = |Hom(Y, Hom(X, Z/n))|, the last counted by brute force.
TEST(TensorRep, OrderMatchesBruteForceHomCount) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 40; ++t) {
        auto q = t % 2 ? fork_quiver() : a2_quiver();
        RingSpec ring(t % 3 ? 4 : 2);
        auto x = random_rep(q, ring, t % 2 ? 2 : 4, rng);
        auto y = random_rep(opposite(q), ring, t % 2 ? 2 : 4, rng);
        auto g = FiniteModule::cyclic(ring, ring.modulus());
        EXPECT_EQ(TensorResult(y, x).value().order(), brute_hom_count(y, hom_rep(x, g).rep));
    }
}

TEST(Adjunction, SpecExamples) {
    RingSpec r4(4);
    auto fork = fork_quiver();
    auto z2 = FiniteModule::cyclic(r4, 2);
    auto y = Representation::stalk(opposite(fork), z2, 3);
    auto x = Representation::stalk(fork, z2, 3);
    auto trivial = verify_adjunction(y, x, FiniteModule::zero(r4));
    EXPECT_TRUE(trivial.ok());
    EXPECT_EQ(trivial.tensor_side, 1u);
    auto c = verify_adjunction(y, x, z2);
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.tensor_side, 2u);
    EXPECT_EQ(c.hom_side, 2u);
}

TEST(Adjunction, RandomTriplesAndNaturality) {
    std::mt19937_64 rng(17);
    RingSpec r4(4);
    auto mods = modules_up_to(r4, 4);
    for (int t = 0; t < 40; ++t) {
        auto q = t % 2 ? fork_quiver() : a2_quiver();
        auto x = random_rep(q, r4, 4, rng);
        auto y = random_rep(opposite(q), r4, 4, rng);
        auto g = mods[rng() % mods.size()];
        EXPECT_TRUE(verify_adjunction(y, x, g).ok());
        auto g2 = mods[rng() % mods.size()];
        auto u = hom_at(g, g2, rng() % hom_count(g, g2));
        EXPECT_TRUE(adjunction_natural_in_g(y, x, u));
    }
}

TEST(Swap, ZetaIsBijective) {
    std::mt19937_64 rng(19);
    RingSpec r4(4);
    auto mods = modules_up_to(r4, 4);
    for (int t = 0; t < 30; ++t) {
        auto q = t % 2 ? fork_quiver() : a2_quiver();
        auto x = random_rep(q, r4, 4, rng);
        auto y = random_rep(opposite(q), r4, 4, rng);
        auto c = verify_swap(y, x, mods[rng() % mods.size()]);
        EXPECT_EQ(c.tensor_side, c.hom_side);
        EXPECT_TRUE(c.ok());
    }
}

TEST(TensorRep, CommutativityAndCoproducts) {
    std::mt19937_64 rng(23);
    RingSpec r4(4);
    for (int t = 0; t < 30; ++t) {
        auto q = t % 2 ? fork_quiver() : a2_quiver();
        auto x1 = random_rep(q, r4, 4, rng);
        auto x2 = random_rep(q, r4, 4, rng);
        auto y = random_rep(opposite(q), r4, 4, rng);
        TensorResult yx(y, x1), xy(x1, y);
        auto sw = tensor_commutativity_map(yx, xy);
        EXPECT_TRUE(is_isomorphism(sw));
        auto s = rep_direct_sum({x1, x2});
        TensorResult t1(y, x1), t2(y, x2), ts(y, s.rep);
        EXPECT_EQ(ts.value().order(), t1.value().order() * t2.value().order());
        auto parts = direct_sum(r4, {t1.value(), t2.value()});
        auto canon = copair(parts, {tensor_map_right(t1, ts, s.injections[0]), tensor_map_right(t2, ts, s.injections[1])},
                            ts.value());
        EXPECT_TRUE(is_isomorphism(canon));
    }
}

TEST(CharDual, SpecExamples) {
    auto z = Representation::zero(fork_quiver(), RingSpec(4));
    EXPECT_TRUE(char_dual_rep(z).is_zero());
    auto x = fixtures::fork_cokernel_z2();
    auto xp = char_dual_rep(x);
    EXPECT_TRUE(is_surjective(psi(xp, 2).map));
    EXPECT_EQ(ker_k(xp, 2).module, dual_plus(coker_c(x, 2).module));
    EXPECT_EQ(ker_k(xp, 2).module.to_string(), "Z/2");
    auto bad = char_dual_rep(fixtures::fork_non_injective());
    EXPECT_FALSE(is_surjective(psi(bad, 2).map));
}

TEST(CharDual, PsiOfDualAndDoubleDual) {
    for (Residue n : {2, 4}) {
        for_each_rep(fork_quiver(), RingSpec(n), 2, [&](const Representation& x) {
            for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(psi_of_dual_matches(x, i)) << x.to_string();
            EXPECT_TRUE(double_dual_matches(x)) << x.to_string();
            return true;
        });
    }
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        auto x = random_rep(fork_quiver(), RingSpec(4), 8, rng);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(psi_of_dual_matches(x, i));
        EXPECT_TRUE(double_dual_matches(x));
    }
}

TEST(FlatTensor, SpecExamples) {
    RingSpec r4(4);
    TensorExactnessChecker checker(fork_quiver(), r4);
    auto z = checker.check(Representation::zero(fork_quiver(), r4));
    EXPECT_TRUE(z.flat && z.tensor_exact && z.dual_injective);
    auto p = checker.check(projective_rep(fork_quiver(), r4, 0).rep());
    EXPECT_TRUE(p.flat && p.agree());
    auto c = checker.check(fixtures::fork_cokernel_z2());
    EXPECT_FALSE(c.flat);
    EXPECT_TRUE(c.agree());
    ASSERT_TRUE(c.witness.has_value());
    const auto& w = checker.family()[*c.witness];
    TensorResult tl(w.left(), fixtures::fork_cokernel_z2()), tm(w.middle(), fixtures::fork_cokernel_z2());
    EXPECT_FALSE(is_injective(tensor_map_left(tl, tm, w.f())));
    auto faulty = checker.check(fixtures::fork_cokernel_z2(), OracleFault::flat_accepts_all);
    EXPECT_FALSE(faulty.agree());
}

TEST(FlatTensor, FamilyIsShortExact) {
    auto fam = opposite_test_family(fork_quiver(), RingSpec(4));
    EXPECT_FALSE(fam.empty());
    for (const auto& s : fam) EXPECT_TRUE(RepSES::is_exact(s.f(), s.g()));
}

TEST(FlatTensor, RandomAgreement) {
    std::mt19937_64 rng(29);
    for (Residue n : {2, 4}) {
        for (const Quiver& q : {a2_quiver(), fork_quiver()}) {
            TensorExactnessChecker checker(q, RingSpec(n));
            for (int t = 0; t < 25; ++t) {
                auto x = random_rep(q, RingSpec(n), 4, rng);
                auto v = checker.check(x);
                EXPECT_TRUE(v.agree()) << x.to_string() << " " << v.flat << v.tensor_exact << v.dual_injective;
            }
        }
    }
}
