#include <gtest/gtest.h>

#include <numeric>

#include "brute.hpp"
#include "qrep/classes.hpp"
#include "qrep/module_ops.hpp"

using namespace qrep;

namespace {

const RingSpec Z4(4);

FiniteModule mod(const RingSpec& r, std::vector<Residue> inv) { return FiniteModule(r, std::move(inv)); }

std::set<Element> elements_where(const FiniteModule& m, const std::function<bool(const Element&)>& pred) {
    std::set<Element> out;
    for (std::uint64_t i = 0; i < m.order(); ++i) {
        auto x = m.element_at(i);
        if (pred(x)) out.insert(x);
    }
    return out;
}

std::set<Element> image_set(const ModuleMap& f) {
    std::set<Element> out;
    for (std::uint64_t i = 0; i < f.source().order(); ++i) out.insert(f.apply(f.source().element_at(i)));
    return out;
}

}  // namespace

TEST(Ring, Families) {
    EXPECT_TRUE(RingSpec(6).is_semisimple());
    EXPECT_FALSE(RingSpec(4).is_semisimple());
    EXPECT_FALSE(RingSpec(12).is_semisimple());
    EXPECT_THROW(RingSpec(1), std::invalid_argument);
}

TEST(FiniteModuleTest, Validation) {
    EXPECT_THROW(mod(Z4, {4, 2}), std::invalid_argument);
    EXPECT_THROW(mod(Z4, {3}), std::invalid_argument);
    EXPECT_EQ(mod(Z4, {2, 4}).order(), 8u);
    EXPECT_EQ(mod(Z4, {2, 4}).to_string(), "Z/2 + Z/4");
}

TEST(ModuleMapTest, WellDefinedness) {
    auto z2 = mod(Z4, {2}), z4 = mod(Z4, {4});
    EXPECT_NO_THROW(ModuleMap(z2, z4, ModularMatrix(4, {{2}})));
    EXPECT_THROW(ModuleMap(z2, z4, ModularMatrix(4, {{1}})), std::invalid_argument);
}

TEST(Presentation, LiteralNormalization) {
    RingSpec z6(6);
    auto p = normalize_cyclic_sum(z6, {2, 3});
    EXPECT_EQ(p.module, mod(z6, {6}));
    auto q = normalize_cyclic_sum(Z4, {4, 2, 1});
    EXPECT_EQ(q.module, mod(Z4, {2, 4}));
}

TEST(Presentation, OrderMatchesQuotient) {
    std::mt19937_64 rng(41);
    for (Residue n : {4u, 6u, 8u, 12u}) {
        RingSpec r(n);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t gens = 1 + rng() % 3;
            auto rel = brute::random_matrix(rng, n, rng() % 3, gens);
            auto p = normalize_presentation(r, gens, rel);
            auto span = brute::span(rel.row_list(), gens, n);
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < gens; ++i) total *= n;
            EXPECT_EQ(p.module.order(), total / span.size());
            // to_module kills relations and from_module is a section
            for (std::size_t i = 0; i < rel.rows(); ++i)
                EXPECT_EQ(p.module.reduce(p.to_module.apply(rel.row_vector(i))), p.module.zero_element());
            EXPECT_EQ(ModuleMap(p.module, p.module, p.to_module * p.from_module), ModuleMap::identity(p.module));
        }
    }
}

TEST(Hom, Examples) {
    auto h = hom_module(mod(Z4, {2}), mod(Z4, {4}));
    EXPECT_EQ(h.module(), mod(Z4, {2}));
    EXPECT_EQ(brute::count_homs(mod(Z4, {2}), mod(Z4, {4})), 2u);
    EXPECT_TRUE(hom_module(FiniteModule::zero(Z4), mod(Z4, {4})).module().is_zero());
    EXPECT_EQ(hom_module(mod(Z4, {4}), mod(Z4, {4})).module(), mod(Z4, {4}));
}

TEST(Hom, CountsAgreeWithBruteForce) {
    for (Residue n : {4u, 6u}) {
        RingSpec r(n);
        auto mods = modules_up_to(r, 16);
        for (const auto& a : mods)
            for (const auto& b : mods) {
                std::uint64_t formula = 1;
                for (auto d : a.invariants())
                    for (auto e : b.invariants()) formula *= std::gcd(d, e);
                HomModule h(a, b);
                EXPECT_EQ(h.module().order(), formula);
                EXPECT_EQ(hom_count(a, b), formula);
                if (a.order() * b.order() <= 64) EXPECT_EQ(brute::count_homs(a, b), formula);
                for (const auto& f : h.basis()) EXPECT_EQ(h.element_of(f), h.element_of(h.map_of(h.element_of(f))));
            }
    }
}

TEST(Hom, ElementRoundTrip) {
    auto a = mod(Z4, {2, 4}), b = mod(Z4, {2, 4});
    HomModule h(a, b);
    for_each_hom(a, b, [&](const ModuleMap& f) {
        EXPECT_EQ(h.map_of(h.element_of(f)), f);
        return true;
    });
}

TEST(Tensor, Examples) {
    auto t = tensor_module(mod(Z4, {2}), mod(Z4, {2}));
    EXPECT_EQ(t.module(), mod(Z4, {2}));
    auto m = mod(Z4, {2, 4});
    EXPECT_EQ(tensor_module(FiniteModule::free(Z4, 1), m).module(), m);
    EXPECT_TRUE(tensor_module(FiniteModule::zero(Z4), m).module().is_zero());
}

TEST(Tensor, UniversalPropertyByBilinearCounts) {
    // |Bil(A x B, G)| = |Hom(A (x) B, G)| for cyclic test modules G.
    RingSpec r(4);
    auto mods = modules_up_to(r, 8);
    for (const auto& a : mods)
        for (const auto& b : mods) {
            if (a.order() * b.order() > 16) continue;
            TensorModule t(a, b);
            for (Residue g : {2u, 4u}) {
                auto gm = mod(r, {g});
                std::uint64_t bilinear = 0;
                std::size_t k = a.rank() * b.rank();
                std::vector<Residue> v(k, 0);
                while (true) {
                    // bilinear map determined by generator-pair values; check well-definedness
                    bool ok = true;
                    for (std::size_t i = 0; i < a.rank() && ok; ++i)
                        for (std::size_t j = 0; j < b.rank() && ok; ++j) {
                            Residue x = v[i * b.rank() + j];
                            ok = (a.factor(i) * x) % g == 0 && (b.factor(j) * x) % g == 0;
                        }
                    if (ok) ++bilinear;
                    std::size_t p = 0;
                    while (p < k && ++v[p] == g) v[p++] = 0;
                    if (p == k) break;
                }
                EXPECT_EQ(bilinear, hom_count(t.module(), gm)) << a.to_string() << " (x) " << b.to_string();
            }
            // bilinearity of the evaluator
            for (std::uint64_t i = 0; i < a.order(); ++i)
                for (std::uint64_t j = 0; j < a.order(); ++j)
                    for (std::uint64_t k2 = 0; k2 < b.order(); ++k2) {
                        auto x = a.element_at(i), y = a.element_at(j), z = b.element_at(k2);
                        EXPECT_EQ(t.pure(a.add(x, y), z), t.module().add(t.pure(x, z), t.pure(y, z)));
                    }
        }
}

TEST(Tensor, CyclicGcdFormula) {
    for (Residue n : {4u, 6u, 8u, 12u}) {
        RingSpec r(n);
        for (auto a : divisors(n))
            for (auto b : divisors(n)) {
                auto t = tensor_module(FiniteModule::cyclic(r, a), FiniteModule::cyclic(r, b));
                EXPECT_EQ(t.module(), FiniteModule::cyclic(r, std::gcd(a, b)));
            }
    }
}

TEST(KernelCokernel, AgreeWithElementEnumeration) {
    RingSpec r(4);
    auto mods = modules_up_to(r, 8);
    for (const auto& a : mods)
        for (const auto& b : mods) {
            for_each_hom(a, b, [&](const ModuleMap& f) {
                auto k = kernel(f);
                auto zeros = elements_where(a, [&](const Element& x) { return f.apply(x) == b.zero_element(); });
                EXPECT_EQ(k.module.order(), zeros.size());
                EXPECT_EQ(image_set(k.inclusion), zeros);
                EXPECT_TRUE(is_injective(k.inclusion));
                EXPECT_EQ(is_injective(f), zeros.size() == 1);
                auto im = image_set(f);
                auto c = cokernel(f);
                EXPECT_EQ(c.module.order() * im.size(), b.order());
                EXPECT_TRUE(is_surjective(c.projection));
                EXPECT_EQ(is_surjective(f), im.size() == b.order());
                auto killed = elements_where(b, [&](const Element& y) {
                    return c.projection.apply(y) == c.module.zero_element();
                });
                EXPECT_EQ(killed, im);
                auto img = image(f);
                EXPECT_EQ(image_set(img.inclusion), im);
                EXPECT_EQ(compose(img.inclusion, img.corestriction), f);
                return true;
            });
        }
}

TEST(Ext, Examples) {
    EXPECT_EQ(ext1(mod(Z4, {2}), mod(Z4, {2})), mod(Z4, {2}));
    EXPECT_EQ(brute::ext1_order_by_cocycles(mod(Z4, {2}), mod(Z4, {2})), 2u);
    EXPECT_TRUE(ext1(FiniteModule::free(Z4, 2), mod(Z4, {2, 4})).is_zero());
    for (const auto& m : modules_up_to(Z4, 16)) {
        auto e = injective_hull(m).middle();
        for (const auto& a : modules_up_to(Z4, 16)) EXPECT_TRUE(ext1(a, e).is_zero());
    }
}

TEST(Ext, OrdersAgreeWithCocycleClassification) {
    for (Residue n : {4u, 6u, 8u}) {
        RingSpec r(n);
        auto mods = modules_up_to(r, 4);
        for (const auto& a : mods)
            for (const auto& b : mods)
                EXPECT_EQ(ext1(a, b).order(), brute::ext1_order_by_cocycles(a, b))
                    << a.to_string() << ", " << b.to_string() << " over Z/" << n;
    }
}

TEST(Ext, ProjectivesHaveNoExtensions) {
    for (Residue n : {4u, 6u, 12u}) {
        RingSpec r(n);
        auto mods = modules_up_to(r, 16);
        for (const auto& a : mods) {
            if (!class_membership(ClassOracle(ClassTag::Prj, r), a)) continue;
            for (const auto& b : mods) EXPECT_TRUE(ext1(a, b).is_zero());
        }
    }
}

TEST(Dual, Examples) {
    auto m = mod(Z4, {2, 4});
    EXPECT_EQ(dual_plus(m), m);
    EXPECT_TRUE(dual_plus(FiniteModule::zero(Z4)).is_zero());
    auto z4 = mod(Z4, {4});
    ModuleMap two(z4, z4, ModularMatrix(4, {{2}}));
    // evaluate the dual on the character generator chi(x) = x/4: (chi o 2)(x) = 2x/4
    EXPECT_EQ(dual_plus_map(two), two);
}

TEST(Dual, CharacterEvaluation) {
    // f+(chi_i)(e_j) = chi_i(f(e_j)) in Q/Z, compared as fractions with denominator n.
    RingSpec r(8);
    auto mods = modules_up_to(r, 16);
    for (const auto& a : mods)
        for (const auto& b : mods) {
            if (hom_count(a, b) > 256) continue;
            for_each_hom(a, b, [&](const ModuleMap& f) {
                auto fd = dual_plus_map(f);
                for (std::size_t i = 0; i < b.rank(); ++i)
                    for (std::size_t j = 0; j < a.rank(); ++j) {
                        Residue lhs = (fd.entry(j, i) * (8 / a.factor(j))) % 8;
                        Residue rhs = (f.entry(i, j) * (8 / b.factor(i))) % 8;
                        EXPECT_EQ(lhs, rhs);
                    }
                EXPECT_EQ(dual_plus_map(fd), f);
                return true;
            });
        }
}

TEST(Dual, ExactOnSequences) {
    auto z2 = mod(Z4, {2}), z4 = mod(Z4, {4});
    ModuleSES ses(ModuleMap(z2, z4, ModularMatrix(4, {{2}})), ModuleMap(z4, z2, ModularMatrix(4, {{1}})));
    auto d = dual_plus_ses(ses);
    EXPECT_EQ(d.left(), z2);
    EXPECT_EQ(d.middle(), z4);
    for (const auto& m : modules_up_to(Z4, 16)) {
        auto h = injective_hull(m);
        EXPECT_NO_THROW(dual_plus_ses(h));
        EXPECT_TRUE(is_isomorphism(double_dual_evaluation(m)));
    }
}

TEST(Hull, Examples) {
    auto h = injective_hull(mod(Z4, {2}));
    EXPECT_EQ(h.middle(), mod(Z4, {4}));
    EXPECT_EQ(h.right(), mod(Z4, {2}));
    RingSpec z6(6);
    auto m6 = mod(z6, {6});
    EXPECT_EQ(injective_hull(m6).middle(), m6);
    EXPECT_TRUE(injective_hull(FiniteModule::zero(Z4)).middle().is_zero());
}

TEST(Hull, InjectiveAndEssential) {
    for (Residue n : {4u, 8u, 12u}) {
        RingSpec r(n);
        for (const auto& m : modules_up_to(r, 16)) {
            auto h = injective_hull(m);
            EXPECT_TRUE(is_injective_baer(h.middle()));
            auto im = image_set(h.f());
            // essential: every nonzero element has a nonzero multiple in the image
            for (std::uint64_t i = 1; i < h.middle().order(); ++i) {
                auto x = h.middle().element_at(i);
                bool hit = false;
                for (Residue k = 1; k <= n && !hit; ++k) {
                    auto y = h.middle().scale(k, x);
                    hit = y != h.middle().zero_element() && im.count(y);
                }
                EXPECT_TRUE(hit) << m.to_string();
            }
        }
    }
}

TEST(Classes, Examples) {
    auto z2 = mod(Z4, {2});
    EXPECT_FALSE(class_membership(ClassOracle(ClassTag::Prj, Z4), z2));
    // brute force: no section of Z/4 -> Z/2
    auto z4 = mod(Z4, {4});
    ModuleMap proj(z4, z2, ModularMatrix(4, {{1}}));
    int sections = 0;
    for_each_hom(z2, z4, [&](const ModuleMap& s) {
        if (compose(proj, s) == ModuleMap::identity(z2)) ++sections;
        return true;
    });
    EXPECT_EQ(sections, 0);
    EXPECT_TRUE(class_membership(ClassOracle(ClassTag::Prj, Z4), z4));
    EXPECT_TRUE(class_membership(ClassOracle(ClassTag::GF, Z4), z2));
    EXPECT_THROW(class_membership(ClassOracle(ClassTag::GF, RingSpec(8)), z2), std::invalid_argument);
}

TEST(Classes, BaerAgreesWithRule) {
    for (Residue n : {4u, 6u, 8u, 9u, 12u}) {
        RingSpec r(n);
        for (const auto& m : modules_up_to(r, 16))
            EXPECT_EQ(is_injective_baer(m), class_membership(ClassOracle(ClassTag::Inj, r), m)) << m.to_string();
    }
}

TEST(Classes, SemisimpleCollapse) {
    RingSpec r(6);
    for (const auto& m : modules_up_to(r, 36))
        for (auto t : all_class_tags()) EXPECT_TRUE(class_membership(ClassOracle(t, r), m));
}

TEST(Classes, FlatIsProjectiveBySplitting) {
    // finite flat = projective: a module is projective iff its free cover splits
    RingSpec r(8);
    for (const auto& m : modules_up_to(r, 64)) {
        auto f = FiniteModule::free(r, m.rank());
        ModuleMap cover(f, m, ModularMatrix::identity(8, m.rank()));
        bool split = false;
        if (hom_count(m, f) <= 4096)
            for_each_hom(m, f, [&](const ModuleMap& s) {
                if (compose(cover, s) == ModuleMap::identity(m)) split = true;
                return !split;
            });
        else
            continue;
        EXPECT_EQ(split, class_membership(ClassOracle(ClassTag::Flat, r), m));
    }
}

TEST(Pushout, Examples) {
    auto z2 = mod(Z4, {2}), z4 = mod(Z4, {4});
    auto id2 = ModuleMap::identity(z2);
    EXPECT_EQ(pushout(id2, id2).module, z2);
    auto zero = FiniteModule::zero(Z4);
    auto p = pushout(ModuleMap::zero(zero, z4), ModuleMap::zero(zero, z2));
    EXPECT_EQ(p.module, mod(Z4, {2, 4}));
    auto q = pushout(ModuleMap(z2, z4, ModularMatrix(4, {{2}})), id2);
    EXPECT_EQ(q.module, z4);
}

TEST(Pushout, UniversalPropertyAndCokernels) {
    RingSpec r(4);
    auto mods = modules_up_to(r, 4);
    auto tests = modules_up_to(r, 4);
    for (const auto& c : mods)
        for (const auto& a : mods)
            for (const auto& b : mods)
                for_each_hom(c, a, [&](const ModuleMap& f) {
                    for_each_hom(c, b, [&](const ModuleMap& g) {
                        auto p = pushout(f, g);
                        EXPECT_EQ(compose(p.from_a, f), compose(p.from_b, g));
                        EXPECT_EQ(cokernel(p.from_b).module, cokernel(f).module);
                        for (const auto& t : tests) {
                            std::uint64_t cocones = 0;
                            for_each_hom(a, t, [&](const ModuleMap& u) {
                                for_each_hom(b, t, [&](const ModuleMap& v) {
                                    if (compose(u, f) == compose(v, g)) ++cocones;
                                    return true;
                                });
                                return true;
                            });
                            EXPECT_EQ(cocones, hom_count(p.module, t));
                        }
                        return true;
                    });
                    return true;
                });
}

TEST(Submodules, CountsForSmallModules) {
    EXPECT_EQ(submodules(mod(Z4, {4})).size(), 3u);
    EXPECT_EQ(submodules(mod(Z4, {2, 2})).size(), 5u);
    EXPECT_EQ(submodules(mod(Z4, {2, 4})).size(), 8u);
}
