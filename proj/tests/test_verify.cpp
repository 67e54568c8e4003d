#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "fixtures.hpp"
#include "qrep/analyze.hpp"
#include "qrep/enumerate.hpp"
#include "qrep/verify.hpp"

using namespace qrep;

namespace {

// phi_i injective by listing every tuple of source elements.
bool brute_phi_injective(const Representation& x, std::size_t i) {
    const auto& arrows = x.quiver().arrows_into(i);
    std::vector<std::uint64_t> sizes;
    for (auto a : arrows) sizes.push_back(x.module(x.quiver().arrow(a).source).order());
    std::vector<std::uint64_t> idx(arrows.size(), 0);
    std::size_t zeros = 0;
    while (true) {
        Element sum = x.module(i).zero_element();
        for (std::size_t k = 0; k < arrows.size(); ++k) {
            const auto& src = x.module(x.quiver().arrow(arrows[k]).source);
            sum = x.module(i).add(sum, x.map(arrows[k]).apply(src.element_at(idx[k])));
        }
        if (x.module(i).index_of(sum) == 0) ++zeros;
        std::size_t k = arrows.size();
        while (k-- > 0) {
            if (++idx[k] < sizes[k]) break;
            idx[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return zeros == 1;
}

std::uint64_t number_before(const std::string& text, const std::string& suffix) {
    std::smatch m;
    std::regex re("([0-9]+) " + suffix);
    if (!std::regex_search(text, m, re)) return ~0ull;
    return std::stoull(m[1]);
}

const CheckRecord& record(const VerificationReport& r, const std::string& name) {
    for (const auto& rec : r.records)
        if (rec.name == name) return rec;
    throw std::runtime_error("no record " + name);
}

}  // namespace

TEST(Suites, AliasesResolve) {
    EXPECT_EQ(resolve_suite("theorem-a"), "gorenstein-flat");
    EXPECT_EQ(resolve_suite("orthogonality"), "cotorsion");
    EXPECT_EQ(resolve_suite("all"), "all");
    EXPECT_FALSE(resolve_suite("nonsense"));
    EXPECT_EQ(named_quiver("appendix"), fork_quiver());
}

TEST(Suites, RegistryNamesAreUniqueWithProperties) {
    std::set<std::string> seen;
    for (const auto& c : check_names()) {
        EXPECT_TRUE(seen.insert(c).second) << c;
        EXPECT_FALSE(check_property(c).empty()) << c;
    }
    EXPECT_THROW(check_property("nope"), std::invalid_argument);
}

// Memoized sweep against a brute-force count of Phi(GF) (over Z/4 every module is GF, so membership is
// injectivity of every phi_i).
TEST(Suites, DualityChainMemoMatchesBruteForce) {
    SuiteOptions o;
    o.ring = 4;
    o.quiver = "fork";
    o.max_order = 4;
    o.trials = 200;
    auto r = run_suite("theorem-a", o);
    ASSERT_TRUE(r.passed());
    const auto& rec = record(r, "duality-chain/Z4/fork");
    std::uint64_t total = 0, members = 0;
    for_each_rep(fork_quiver(), RingSpec(4), 4, [&](const Representation& x) {
        ++total;
        bool all = true;
        for (std::size_t i = 0; i < 4 && all; ++i) all = brute_phi_injective(x, i);
        members += all;
        return true;
    });
    EXPECT_EQ(rec.instances, total);
    EXPECT_EQ(number_before(rec.detail, "in Phi\\(GF\\)"), members);
    EXPECT_EQ(members, 183u);
}

TEST(Suites, LocalBitsAgreeWithDirectVerdicts) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        auto x = random_rep(fork_quiver(), RingSpec(4), 8, rng);
        std::uint8_t mask = 15;
        for (std::size_t v = 0; v < 4; ++v) mask &= duality_chain_local_bits(x, v);
        const bool gf = is_gorenstein_flat_rep(x);
        EXPECT_EQ(mask, gf ? 15 : 0) << x.to_string();
        bool inj = true;
        for (std::size_t v = 0; v < 4; ++v) inj = inj && brute_phi_injective(x, v);
        EXPECT_EQ(inj, gf);
    }
}

TEST(Suites, ReportsAreDeterministicAndSorted) {
    SuiteOptions o;
    o.seed = 11;
    o.trials = 8;
    auto a = run_suite("cogenerator", o).to_json().dump();
    auto b = run_suite("cogenerator", o).to_json().dump();
    EXPECT_EQ(a, b);
    o.max_order = 2;
    auto r = run_suite("all", o);
    for (std::size_t k = 1; k < r.records.size(); ++k) EXPECT_LT(r.records[k - 1].name, r.records[k].name);
    auto j = r.to_json();
    EXPECT_EQ(j["schema"], kReportSchema);
    EXPECT_FALSE(j["records"][0].contains("seconds"));
    EXPECT_TRUE(r.to_json(true)["records"][0].contains("seconds"));
}

TEST(Suites, FaultInjectionGivesReplayableCounterexample) {
    SuiteOptions o;
    o.ring = 4;
    o.quiver = "a2";
    o.fault = OracleFault::flat_accepts_all;
    auto r = run_suite("flat-projective", o);
    EXPECT_FALSE(r.passed());
    const auto& rec = record(r, "flat-projective/Z4/a2");
    ASSERT_TRUE(rec.counterexample);
    const Json cx = Json::parse(rec.counterexample->dump());
    EXPECT_EQ(cx["schema"], kCounterexampleSchema);
    auto replay = replay_counterexample(cx);
    EXPECT_EQ(replay.check, "flat-projective");
    EXPECT_FALSE(replay.outcome.passed);
    EXPECT_EQ(replay.outcome.detail, rec.counterexample->at("detail").get<std::string>());
    // The same instance passes once the oracle is intact.
    EXPECT_TRUE(evaluate_check("flat-projective", cx["instance"]).passed);
}

TEST(Suites, CleanRunHasNoCounterexamples) {
    SuiteOptions o;
    o.max_order = 2;
    o.trials = 5;
    auto r = run_suite("all", o);
    EXPECT_TRUE(r.passed());
    for (const auto& rec : r.records) EXPECT_FALSE(rec.counterexample) << rec.name;
}

TEST(Analyze, ZeroRepHasEveryFlag) {
    auto a = analyze(Representation::zero(fork_quiver(), RingSpec(4)));
    for (const auto& f : a.flags) EXPECT_TRUE(f.value) << f.name;
}

TEST(Analyze, CokernelWitness) {
    auto a = analyze(fixtures::fork_cokernel_z2());
    auto flag = [&](const std::string& n) {
        for (const auto& f : a.flags)
            if (f.name == n) return f;
        throw std::runtime_error(n);
    };
    EXPECT_TRUE(flag("gorenstein-flat").value);
    auto flat = flag("flat");
    EXPECT_FALSE(flat.value);
    ASSERT_EQ(flat.witnesses.size(), 2u);
    EXPECT_EQ(flat.witnesses[1].vertex, 2u);
    EXPECT_EQ(flat.witnesses[1].reason, "C_3 = Z/2 not in Flat");
    EXPECT_EQ(a.vertices[2].c.to_string(), "Z/2");
}

TEST(Analyze, KernelWitnessLiesInKernel) {
    auto x = fixtures::fork_non_injective();
    auto a = analyze(x);
    const auto& v = a.vertices[2];
    ASSERT_FALSE(v.phi_injective);
    ASSERT_TRUE(v.kernel_witness);
    Element sum = x.module(2).zero_element();
    bool nonzero = false;
    const auto& arrows = x.quiver().arrows_into(2);
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        const auto& [name, e] = (*v.kernel_witness)[k];
        EXPECT_EQ(name, x.quiver().arrow(arrows[k]).name);
        sum = x.module(2).add(sum, x.map(arrows[k]).apply(e));
        for (auto c : e) nonzero = nonzero || c != 0;
    }
    EXPECT_TRUE(nonzero);
    EXPECT_EQ(x.module(2).index_of(sum), 0u);
    EXPECT_FALSE(a.flags[1].value);
    EXPECT_NE(analysis_text(a).find("kernel element (a: [2], b: [1])"), std::string::npos);
}

TEST(Analyze, RejectsNonRootedQuiver) {
    Representation x = Representation::zero(loop_quiver(), RingSpec(4));
    EXPECT_THROW(analyze(x), std::invalid_argument);
}
