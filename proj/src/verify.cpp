#include "qrep/verify.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qrep/constructions.hpp"
#include "qrep/enumerate.hpp"
#include "qrep/path_module.hpp"
#include "qrep/tensor_rep.hpp"

namespace qrep {

namespace {

using Clock = std::chrono::steady_clock;

const char* yn(bool v) { return v ? "true" : "false"; }

std::string ring_tag(Residue n) { return "Z" + std::to_string(n); }

struct NamedQuiver {
    std::string label;
    Quiver quiver;
};

bool split_cached(const Representation& x) {
    static std::mutex mu;
    static std::unordered_map<std::string, bool> cache;
    const auto key = representation_text(x);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const bool v = is_projective_by_splitting(x);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

Json rep_instance(const Representation& x) { return Json{{"rep", representation_to_json(x)}}; }

Representation rep_of(const Json& instance, const char* key = "rep") {
    return representation_from_json(instance.at(key));
}

std::vector<Strategy> strategies_from_json(const Json& j) {
    std::vector<Strategy> out;
    for (const auto& s : j) out.push_back(parse_strategy(s.get<std::string>()));
    return out;
}

Json strategies_to_json(const std::vector<Strategy>& s) {
    Json out = Json::array();
    for (auto v : s) out.push_back(to_string(v));
    return out;
}

// ---- rootedness -----------------------------------------------------------------------------

std::vector<std::vector<std::string>> named_sets(const Quiver& q) {
    std::vector<std::vector<std::string>> out;
    for (const auto& set : v_sequence(q).sets) {
        std::vector<std::string> names;
        for (auto v : set) names.push_back(q.vertex_name(v));
        out.push_back(names);
    }
    return out;
}

std::string sets_text(const std::vector<std::vector<std::string>>& sets) {
    std::string s = "[";
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (k) s += ", ";
        s += "{";
        for (std::size_t i = 0; i < sets[k].size(); ++i) s += (i ? "," : "") + sets[k][i];
        s += "}";
    }
    return s + "]";
}

CheckOutcome check_v_sequence(const Quiver& q, const std::vector<std::vector<std::string>>& expected) {
    auto got = named_sets(q);
    if (got == expected && is_left_rooted(q)) return {true, sets_text(got)};
    return {false, "V-sequence " + sets_text(got) + ", expected " + sets_text(expected)};
}

CheckOutcome check_cycle_rejected(const Quiver& q) {
    const bool rooted = is_left_rooted(q);
    if (!rooted && has_directed_cycle(q)) return {true, ""};
    return {false, std::string("left rooted=") + yn(rooted) + ", cycle=" + yn(has_directed_cycle(q))};
}

CheckOutcome check_rooted_acyclic(const Quiver& q) {
    const bool rooted = is_left_rooted(q), cycle = has_directed_cycle(q);
    if (rooted == !cycle) return {true, ""};
    return {false, std::string("left rooted=") + yn(rooted) + ", cycle=" + yn(cycle)};
}

Quiver random_quiver(std::mt19937_64& rng, std::size_t max_vertices, bool acyclic) {
    const std::size_t n = 1 + rng() % max_vertices;
    const std::size_t m = rng() % (2 * n + 1);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[rng() % (i + 1)]);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
    std::vector<Arrow> arrows;
    for (std::size_t a = 0; a < m; ++a) {
        std::size_t s = rng() % n, t = rng() % n;
        if (acyclic) {
            if (s == t) continue;
            if (s > t) std::swap(s, t);
            s = order[s];
            t = order[t];
        }
        arrows.push_back({"a" + std::to_string(arrows.size() + 1), s, t});
    }
    return Quiver(names, arrows);
}

// ---- duality chain --------------------------------------------------------------------------

struct StarShape {
    Quiver quiver;
    std::vector<std::size_t> vertices;  // star vertex -> full vertex
    std::vector<std::size_t> arrows;    // star arrow -> full arrow
    std::size_t center = 0;
};

StarShape star_shape(const Quiver& q, std::size_t v) {
    StarShape s;
    auto local = [&](std::size_t full) {
        auto it = std::find(s.vertices.begin(), s.vertices.end(), full);
        if (it != s.vertices.end()) return static_cast<std::size_t>(it - s.vertices.begin());
        s.vertices.push_back(full);
        return s.vertices.size() - 1;
    };
    for (auto a : q.arrows_into(v)) local(q.arrow(a).source);
    s.center = local(v);
    std::vector<std::string> names;
    for (auto full : s.vertices) names.push_back(q.vertex_name(full));
    std::vector<Arrow> arrows;
    for (auto a : q.arrows_into(v)) {
        arrows.push_back({q.arrow(a).name, local(q.arrow(a).source), s.center});
        s.arrows.push_back(a);
    }
    s.quiver = Quiver(names, arrows);
    return s;
}

Representation star_rep(const StarShape& s, const Representation& x) {
    std::vector<FiniteModule> mods;
    for (auto v : s.vertices) mods.push_back(x.module(v));
    std::vector<ModuleMap> maps;
    for (auto a : s.arrows) maps.push_back(x.map(a));
    return Representation(s.quiver, x.ring(), mods, maps);
}

std::uint8_t local_bits_at(const Representation& s, std::size_t c, const ModuleClass& gf, const ModuleClass& gi) {
    std::uint8_t bits = 0;
    auto p = phi(s, c);
    const bool inj = is_injective(p.map);
    if (inj && gf.contains(s.module(c)) && gf.contains(cokernel(p.map).module)) bits |= 1;
    if (inj) bits |= 2;
    auto d = char_dual_rep(s);
    auto q = psi(d, c);
    const bool surj = is_surjective(q.map);
    if (surj) bits |= 4;
    if (surj && gi.contains(d.module(c)) && gi.contains(kernel(q.map).module)) bits |= 8;
    return bits;
}

struct ChainVerdicts {
    bool phi_gf = true, phi_inj = true, psi_surj = true, psi_gi = true;
    std::uint8_t mask() const {
        return static_cast<std::uint8_t>(phi_gf | (phi_inj << 1) | (psi_surj << 2) | (psi_gi << 3));
    }
};

ChainVerdicts direct_chain(const Representation& x, OracleFault fault) {
    ModuleClass gf(x.ring(), {ClassTag::GF}, fault), gi(x.ring(), {ClassTag::GI}, fault);
    ChainVerdicts v;
    v.phi_gf = in_phi_class(x, gf.predicate());
    auto d = char_dual_rep(x);
    for (std::size_t i = 0; i < x.quiver().vertex_count(); ++i) {
        if (!is_injective(phi(x, i).map)) v.phi_inj = false;
        if (!is_surjective(psi(d, i).map)) v.psi_surj = false;
    }
    v.psi_gi = in_psi_class(d, gi.predicate());
    return v;
}

std::string mask_text(std::uint8_t m) {
    std::string s;
    s += std::string("Phi(GF)=") + yn(m & 1) + ", phi injective=" + yn(m & 2) + ", psi(X+) surjective=" + yn(m & 4) +
         ", Psi(GI)(X+)=" + yn(m & 8);
    return s;
}

// Direct verdicts must agree with each other and with the in-star local verdicts.
CheckOutcome check_duality_chain(const Representation& x, OracleFault fault) {
    const auto direct = direct_chain(x, fault).mask();
    std::uint8_t local = 15;
    for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v) local &= duality_chain_local_bits(x, v, fault);
    if ((direct == 0 || direct == 15) && local == direct) return {true, ""};
    return {false, "direct: " + mask_text(direct) + "; in-star: " + mask_text(local)};
}

// ---- single-instance checks -----------------------------------------------------------------

CheckOutcome check_flat_projective(const Representation& x, OracleFault fault) {
    const bool flat = is_flat_rep(x, fault), split = split_cached(x);
    if (flat == split) return {true, ""};
    return {false, std::string("Phi(Flat)=") + yn(flat) + ", Ext^1(X, K)=0 " + yn(split)};
}

CheckOutcome check_adjunction(const Representation& y, const Representation& x, const FiniteModule& g) {
    auto r = verify_adjunction(y, x, g);
    std::string d = "|Hom(Y(x)X, G)|=" + std::to_string(r.tensor_side) + ", |Hom(Y, Hom(X, G))|=" +
                    std::to_string(r.hom_side) + ", bijective=" + yn(r.bijective);
    return {r.ok(), r.ok() ? "" : d};
}

CheckOutcome check_flat_tensor(const TensorExactnessChecker& checker, const Representation& x, OracleFault fault) {
    auto t = checker.check(x, fault);
    if (t.agree()) return {true, ""};
    std::string d = std::string("Phi(Flat)=") + yn(t.flat) + ", tensor exact=" + yn(t.tensor_exact) +
                    ", X+ injective=" + yn(t.dual_injective);
    if (t.witness) d += ", family sequence " + std::to_string(*t.witness);
    return {false, d};
}

bool sequence_exact(const RepSES& s) { return RepSES::is_exact(s.f(), s.g()); }

CotorsionPairOracle flat_cot_pair(const RingSpec& ring, std::vector<Strategy> s, OracleFault fault) {
    return CotorsionPairOracle(ModuleClass(ring, {ClassTag::Flat}, fault), ModuleClass(ring, {ClassTag::Cot}, fault),
                               std::move(s));
}

CogeneratorOracle flat_in_gf(const RingSpec& ring, OracleFault fault) {
    return CogeneratorOracle(ModuleClass(ring, {ClassTag::GF}, fault), ModuleClass(ring, {ClassTag::Flat}, fault),
                             {Strategy::hull});
}

CheckOutcome check_cogenerator(const Representation& x, const std::vector<Strategy>& strategies, OracleFault fault,
                               std::size_t* trace_checks = nullptr) {
    try {
        auto res = cogenerator_construct(x, flat_cot_pair(x.ring(), strategies, fault), flat_in_gf(x.ring(), fault));
        auto v = verify_trace(res.trace);
        if (!v.ok) return {false, "trace: " + v.failures.front()};
        if (!sequence_exact(res.sequence)) return {false, "output sequence not exact"};
        if (!is_flat_rep(res.sequence.middle(), fault)) return {false, "W not in Phi(Flat)"};
        if (!is_gorenstein_flat_rep(res.sequence.right(), fault)) return {false, "Y not in Phi(GF)"};
        if (trace_checks) *trace_checks += v.checks;
        return {true, ""};
    } catch (const std::exception& e) {
        return {false, std::string("construction failed: ") + e.what()};
    }
}

HoveyTripleSpec all_inj_all(const RingSpec& ring, OracleFault fault) {
    return {ModuleClass(ring, {}, fault), ModuleClass(ring, {ClassTag::Inj}, fault), ModuleClass(ring, {}, fault)};
}

CheckOutcome check_trivial(const Representation& x, const TrivialOptions& opt, OracleFault fault,
                           std::size_t* trace_checks = nullptr) {
    try {
        auto res = trivial_objects_construct(x, all_inj_all(x.ring(), fault), opt);
        auto v = verify_trace(res.trace);
        if (!v.ok) return {false, "trace: " + v.failures.front()};
        if (!sequence_exact(res.sequence)) return {false, "output sequence not exact"};
        ModuleClass prj(x.ring(), {ClassTag::Prj}, fault);
        if (!in_rep_class(res.sequence.middle(), prj.predicate())) return {false, "A' not in Rep(Q, Prj)"};
        if (!is_projective_rep(res.sequence.right(), fault)) return {false, "B' not in Phi(Prj)"};
        if (!split_cached(res.sequence.right())) return {false, "B' fails the splitting test"};
        if (trace_checks) *trace_checks += v.checks;
        return {true, ""};
    } catch (const std::exception& e) {
        return {false, std::string("construction failed: ") + e.what()};
    }
}

CheckOutcome ext_outcome(const FiniteModule& e) {
    if (e.is_zero()) return {true, ""};
    return {false, "Ext^1(X, Y) = " + e.to_string()};
}

CheckOutcome check_core_equality(const Representation& x, OracleFault fault) {
    ModuleClass gf(x.ring(), {ClassTag::GF}, fault), perp(x.ring(), {ClassTag::GFperp}, fault),
        cot(x.ring(), {ClassTag::Cot}, fault);
    const bool a = in_phi_class(x, gf.predicate()) && in_rep_class(x, perp.predicate());
    const bool b = is_flat_rep(x, fault) && in_rep_class(x, cot.predicate());
    const bool p = split_cached(x);
    if (a == b && b == p) return {true, ""};
    return {false, std::string("Phi(GF) with GFperp=") + yn(a) + ", Phi(Flat) with Cot=" + yn(b) +
                       ", projective=" + yn(p)};
}

CheckOutcome check_double_dual_module(const FiniteModule& m) {
    auto ev = double_dual_evaluation(m);
    if (is_isomorphism(ev) && dual_plus(dual_plus(m)) == m) return {true, ""};
    return {false, "M -> M++ is not an isomorphism for " + m.to_string()};
}

CheckOutcome check_double_dual_rep(const Representation& x) {
    if (double_dual_matches(x)) return {true, ""};
    return {false, "(X+)+ differs from X"};
}

CheckOutcome check_hovey_trivially_cofibrant(const Representation& x, OracleFault fault) {
    auto t = gorenstein_flat_triple(x.ring(), fault);
    auto f = hovey_membership(x, t);
    const bool a = f.cofibrant && f.trivial;
    const bool b = in_phi_class(x, t.trivially_cofibrant().predicate());
    const bool p = split_cached(x);
    if (a == b && b == p) return {true, ""};
    return {false, std::string("cofibrant and trivial=") + yn(a) + ", Phi(trivially cofibrant)=" + yn(b) +
                       ", projective=" + yn(p)};
}

CheckOutcome check_hovey_fibrant(const Representation& x, OracleFault fault) {
    if (hovey_membership(x, gorenstein_flat_triple(x.ring(), fault)).fibrant) return {true, ""};
    return {false, "not fibrant"};
}

CheckOutcome check_hovey_core(const Representation& x, OracleFault fault) {
    auto t = gorenstein_flat_triple(x.ring(), fault);
    const bool a = in_phi_class(x, t.cofibrant.predicate()) && in_rep_class(x, t.trivially_fibrant().predicate());
    const bool b = in_phi_class(x, t.trivially_cofibrant().predicate()) && in_rep_class(x, t.fibrant.predicate());
    const bool p = is_projective_rep(x, fault);
    if (a == b && b == p) return {true, ""};
    return {false, std::string("Phi(C) with F-tilde=") + yn(a) + ", Phi(C-tilde) with F=" + yn(b) +
                       ", projective=" + yn(p)};
}

// ---- registry -------------------------------------------------------------------------------

struct CheckEntry {
    std::string name;
    std::string property;
    std::function<CheckOutcome(const Json&, OracleFault)> eval;
};

std::vector<std::vector<std::string>> sets_from_json(const Json& j) {
    return j.get<std::vector<std::vector<std::string>>>();
}

const std::vector<CheckEntry>& registry() {
    static const std::vector<CheckEntry> entries = {
        {"adjunction", "Hom(Y (x) X, G) and Hom(Y, Hom(X, G)) have the same size and the adjunct map is a bijection",
         [](const Json& i, OracleFault) {
             auto x = rep_of(i, "x");
             return check_adjunction(rep_of(i, "y"), x, module_from_json(x.ring(), i.at("g")));
         }},
        {"cogenerator",
         "cogenerator construction on X in Phi(GF) is exact with W in Phi(Flat), Y in Phi(GF), and its trace "
         "re-verifies",
         [](const Json& i, OracleFault f) {
             return check_cogenerator(rep_of(i), strategies_from_json(i.at("strategies")), f);
         }},
        {"core-equality", "Phi(GF) with GFperp vertexwise, Phi(Flat) with Cot vertexwise, and projective "
                          "representations are the same set",
         [](const Json& i, OracleFault f) { return check_core_equality(rep_of(i), f); }},
        {"double-dual-module", "evaluation M -> M++ is an isomorphism",
         [](const Json& i, OracleFault) {
             return check_double_dual_module(module_from_json(RingSpec(i.at("ring").get<Residue>()), i.at("module")));
         }},
        {"double-dual-rep", "(X+)+ has the modules and arrow matrices of X and evaluation is an isomorphism",
         [](const Json& i, OracleFault) { return check_double_dual_rep(rep_of(i)); }},
        {"duality-chain", "Phi(GF), injective phi_i, surjective psi_i of X+, and Psi(GI) of X+ agree",
         [](const Json& i, OracleFault f) { return check_duality_chain(rep_of(i), f); }},
        {"ext-orthogonality", "Ext^1(X, Y) = 0 for X in Phi(GF) and Y in Rep(Q, GFperp)",
         [](const Json& i, OracleFault) { return ext_outcome(ext1_rep(rep_of(i, "x"), rep_of(i, "y"))); }},
        {"flat-projective", "Phi(Flat) membership iff Ext^1(X, K) = 0 for the kernel K of the free cover",
         [](const Json& i, OracleFault f) { return check_flat_projective(rep_of(i), f); }},
        {"flat-tensor", "Phi(Flat), exactness of - (x) X on the test family, and injectivity of X+ agree",
         [](const Json& i, OracleFault f) {
             auto x = rep_of(i);
             return check_flat_tensor(TensorExactnessChecker(x.quiver(), x.ring()), x, f);
         }},
        {"hovey.core-equality", "Phi(C) with F-tilde vertexwise equals Phi(C-tilde) with F vertexwise equals projective "
                                "representations",
         [](const Json& i, OracleFault f) { return check_hovey_core(rep_of(i), f); }},
        {"hovey.fibrant", "every representation is fibrant",
         [](const Json& i, OracleFault f) { return check_hovey_fibrant(rep_of(i), f); }},
        {"hovey.trivially-cofibrant", "trivially cofibrant representations are exactly the projective ones",
         [](const Json& i, OracleFault f) { return check_hovey_trivially_cofibrant(rep_of(i), f); }},
        {"rooted.cycles-rejected", "quivers with a loop or a 2-cycle are not left rooted",
         [](const Json& i, OracleFault) { return check_cycle_rejected(quiver_from_json(i.at("quiver"))); }},
        {"rooted.fork-sequence", "V-sequence of the fork quiver is [{}, {1,2}, {1,2,3}, {1,2,3,4}]",
         [](const Json& i, OracleFault) {
             return check_v_sequence(quiver_from_json(i.at("quiver")), sets_from_json(i.at("expected")));
         }},
        {"rooted.random-acyclic", "a finite quiver is left rooted iff it has no directed cycle",
         [](const Json& i, OracleFault) { return check_rooted_acyclic(quiver_from_json(i.at("quiver"))); }},
        {"trivial-objects",
         "trivial-objects construction on X in Rep(Q, Inj) is exact with A' in Rep(Q, Prj), B' in Phi(Prj), and its "
         "trace re-verifies",
         [](const Json& i, OracleFault f) {
             TrivialOptions opt;
             opt.witness = strategies_from_json(i.at("witness"));
             opt.completion = strategies_from_json(i.at("completion"));
             return check_trivial(rep_of(i), opt, f);
         }},
    };
    return entries;
}

const CheckEntry& entry(const std::string& check) {
    for (const auto& e : registry())
        if (e.name == check) return e;
    throw std::invalid_argument("unknown check: " + check);
}

// ---- record assembly ------------------------------------------------------------------------

class RecordBuilder {
public:
    RecordBuilder(std::string name, std::string check, OracleFault fault) : fault_(fault), start_(Clock::now()) {
        record_.name = std::move(name);
        record_.check = std::move(check);
        record_.property = entry(record_.check).property;
    }

    template <typename MakeInstance>
    void add(const CheckOutcome& o, MakeInstance&& instance) {
        ++record_.instances;
        if (!o.passed) fail(o.detail, instance);
    }

    // A failure whose instance is counted separately (add_many).
    template <typename MakeInstance>
    void fail(const std::string& detail, MakeInstance&& instance) {
        ++failures_;
        if (!record_.counterexample) {
            first_ = detail;
            record_.counterexample = make_counterexample(record_.check, instance(), fault_, detail);
        }
    }

    void add_many(std::uint64_t n) { record_.instances += n; }

    CheckRecord finish(const std::string& summary = "") {
        record_.passed = failures_ == 0;
        record_.detail = record_.passed ? summary
                                        : std::to_string(failures_) + " of " + std::to_string(record_.instances) +
                                              " failed; first: " + first_;
        record_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
        return record_;
    }

private:
    CheckRecord record_;
    OracleFault fault_;
    Clock::time_point start_;
    std::uint64_t failures_ = 0;
    std::string first_;
};

std::string label(const std::string& name) {
    if (name == "fork" || name == "appendix") return "fork";
    if (name == "a2" || name == "loop" || name == "two-cycle") return name;
    return std::filesystem::path(name).stem().string();
}

std::vector<NamedQuiver> quivers_for(const SuiteOptions& o, const std::vector<std::string>& defaults) {
    std::vector<NamedQuiver> out;
    if (o.quiver) {
        out.push_back({label(*o.quiver), named_quiver(*o.quiver)});
        return out;
    }
    for (const auto& d : defaults) out.push_back({label(d), named_quiver(d)});
    return out;
}

std::vector<Residue> rings_for(const SuiteOptions& o, std::vector<Residue> defaults) {
    if (o.ring) return {*o.ring};
    return defaults;
}

std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& suite) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return std::mt19937_64(seed ^ h);
}

using Records = std::vector<CheckRecord>;

constexpr std::uint64_t kAdjunctionHomCap = 1u << 18;

// ---- suites ---------------------------------------------------------------------------------

void suite_rooted(const SuiteOptions& o, Records& out) {
    const std::vector<std::vector<std::string>> expected = {{}, {"1", "2"}, {"1", "2", "3"}, {"1", "2", "3", "4"}};
    {
        RecordBuilder r("rooted.fork-sequence", "rooted.fork-sequence", o.fault);
        auto q = fork_quiver();
        auto res = check_v_sequence(q, expected);
        r.add(res, [&] { return Json{{"quiver", quiver_to_json(q)}, {"expected", expected}}; });
        out.push_back(r.finish(res.detail));
    }
    {
        RecordBuilder r("rooted.cycles-rejected", "rooted.cycles-rejected", o.fault);
        for (const auto& q : {loop_quiver(), two_cycle_quiver()})
            r.add(check_cycle_rejected(q), [&] { return Json{{"quiver", quiver_to_json(q)}}; });
        out.push_back(r.finish("loop and 2-cycle rejected"));
    }
    {
        auto rng = suite_rng(o.seed, "rooted");
        const std::size_t trials = o.trials.value_or(1000);
        RecordBuilder r("rooted.random-acyclic", "rooted.random-acyclic", o.fault);
        std::size_t rooted = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            auto q = random_quiver(rng, 8, t % 2 == 1);
            if (is_left_rooted(q)) ++rooted;
            r.add(check_rooted_acyclic(q), [&] { return Json{{"quiver", quiver_to_json(q)}}; });
        }
        out.push_back(r.finish(std::to_string(rooted) + " rooted, " + std::to_string(trials - rooted) + " cyclic"));
    }
}

void suite_duality_chain(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(8);
    const std::size_t samples = o.trials.value_or(2000);
    auto rng = suite_rng(o.seed, "gorenstein-flat");
    for (auto n : rings_for(o, {4}))
        for (const auto& nq : quivers_for(o, {"fork"})) {
            const Quiver& q = nq.quiver;
            const RingSpec ring(n);
            const std::string suffix = "/" + ring_tag(n) + "/" + nq.label;
            ModuleClass gf(ring, {ClassTag::GF}, o.fault), gi(ring, {ClassTag::GI}, o.fault);
            const auto mods = modules_up_to(ring, bound);
            const std::size_t nv = q.vertex_count(), na = q.arrow_count(), m = mods.size();

            std::vector<StarShape> shapes;
            for (std::size_t v = 0; v < nv; ++v) shapes.push_back(star_shape(q, v));
            // Per vertex: in-star module indices -> local verdict bits for every choice of incoming maps.
            std::vector<std::map<std::vector<std::size_t>, std::vector<std::uint8_t>>> tables(nv);

            auto build_rep = [&](const std::vector<std::size_t>& mi, const std::vector<std::uint64_t>& digits) {
                std::vector<FiniteModule> ms;
                for (auto i : mi) ms.push_back(mods[i]);
                std::vector<ModuleMap> maps;
                for (std::size_t a = 0; a < na; ++a)
                    maps.push_back(hom_at(ms[q.arrow(a).source], ms[q.arrow(a).target], digits[a]));
                return Representation(q, ring, ms, maps);
            };

            auto table_for = [&](std::size_t v, const std::vector<std::size_t>& mi) -> const std::vector<std::uint8_t>& {
                const auto& s = shapes[v];
                std::vector<std::size_t> key;
                for (auto w : s.vertices) key.push_back(mi[w]);
                auto it = tables[v].find(key);
                if (it != tables[v].end()) return it->second;
                std::vector<FiniteModule> ms;
                for (auto k : key) ms.push_back(mods[k]);
                std::vector<std::uint64_t> radix;
                std::uint64_t size = 1;
                for (std::size_t k = 0; k < s.arrows.size(); ++k) {
                    radix.push_back(hom_count(ms[s.quiver.arrow(k).source], ms[s.center]));
                    size *= radix.back();
                }
                std::vector<std::uint8_t> table(size);
                std::vector<ModuleMap> maps;
                for (std::uint64_t idx = 0; idx < size; ++idx) {
                    maps.clear();
                    std::uint64_t stride = size;
                    for (std::size_t k = 0; k < s.arrows.size(); ++k) {
                        stride /= radix[k];
                        maps.push_back(hom_at(ms[s.quiver.arrow(k).source], ms[s.center], (idx / stride) % radix[k]));
                    }
                    table[idx] = local_bits_at(Representation(s.quiver, ring, ms, maps), s.center, gf, gi);
                }
                return tables[v].emplace(key, std::move(table)).first->second;
            };

            // Arrow a only enters the table of its target; its stride there (last in-arrow fastest).
            auto lookup = [&](const std::vector<std::size_t>& mi, const std::vector<std::uint64_t>& digits,
                              const std::vector<std::uint64_t>& h) {
                std::uint8_t mask = 15;
                for (std::size_t v = 0; v < nv; ++v) {
                    std::uint64_t idx = 0;
                    for (auto a : shapes[v].arrows) idx = idx * h[a] + digits[a];
                    mask &= table_for(v, mi)[idx];
                }
                return mask;
            };
            auto hom_counts = [&](const std::vector<std::size_t>& mi) {
                std::vector<std::uint64_t> h(na);
                for (std::size_t a = 0; a < na; ++a)
                    h[a] = hom_count(mods[mi[q.arrow(a).source]], mods[mi[q.arrow(a).target]]);
                return h;
            };

            RecordBuilder rec("duality-chain" + suffix, "duality-chain", o.fault);
            std::uint64_t members = 0;
            std::vector<std::size_t> mi(nv, 0);
            std::vector<std::uint64_t> stride(na, 1);
            while (true) {
                const auto h = hom_counts(mi);
                std::vector<const std::vector<std::uint8_t>*> tab(nv);
                for (std::size_t v = 0; v < nv; ++v) {
                    tab[v] = &table_for(v, mi);
                    std::uint64_t st = 1;
                    const auto& arrows = shapes[v].arrows;
                    for (std::size_t k = arrows.size(); k-- > 0;) {
                        stride[arrows[k]] = st;
                        st *= h[arrows[k]];
                    }
                }
                std::vector<std::uint64_t> digits(na, 0), local(nv, 0);
                std::uint64_t count = 0;
                while (true) {
                    std::uint8_t mask = 15;
                    for (std::size_t v = 0; v < nv; ++v) mask &= (*tab[v])[local[v]];
                    ++count;
                    if (mask == 15) ++members;
                    if (mask != 0 && mask != 15)
                        rec.fail("in-star verdicts: " + mask_text(mask), [&] { return rep_instance(build_rep(mi, digits)); });
                    std::size_t a = na;
                    while (a-- > 0) {
                        const std::size_t t = q.arrow(a).target;
                        if (++digits[a] < h[a]) {
                            local[t] += stride[a];
                            break;
                        }
                        local[t] -= (h[a] - 1) * stride[a];
                        digits[a] = 0;
                    }
                    if (a == static_cast<std::size_t>(-1)) break;
                }
                rec.add_many(count);
                std::size_t v = nv;
                while (v-- > 0) {
                    if (++mi[v] < m) break;
                    mi[v] = 0;
                }
                if (v == static_cast<std::size_t>(-1)) break;
            }
            std::uint64_t local_evaluations = 0;
            for (const auto& t : tables)
                for (const auto& [k, tab] : t) local_evaluations += tab.size();
            out.push_back(rec.finish("memoized over in-stars (" + std::to_string(local_evaluations) +
                                     " local evaluations); " + std::to_string(members) + " in Phi(GF)"));

            // Direct evaluation on random full representations against the memoized verdicts.
            RecordBuilder cross("duality-chain.memo-crosscheck" + suffix, "duality-chain", o.fault);
            for (std::size_t t = 0; t < samples; ++t) {
                for (auto& i : mi) i = rng() % m;
                const auto h = hom_counts(mi);
                std::vector<std::uint64_t> digits(na);
                for (std::size_t a = 0; a < na; ++a) digits[a] = rng() % h[a];
                auto x = build_rep(mi, digits);
                const auto memo = lookup(mi, digits, h);
                auto res = check_duality_chain(x, o.fault);
                const auto direct = direct_chain(x, o.fault).mask();
                if (res.passed && direct != memo)
                    res = {false, "direct: " + mask_text(direct) + "; memoized: " + mask_text(memo)};
                cross.add(res, [&] { return rep_instance(x); });
            }
            out.push_back(cross.finish("direct evaluation matches the memoized verdicts"));
        }
}

void suite_flat_projective(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(4);
    for (auto n : rings_for(o, {2, 4}))
        for (const auto& nq : quivers_for(o, {"a2", "fork"})) {
            RecordBuilder rec("flat-projective/" + ring_tag(n) + "/" + nq.label, "flat-projective", o.fault);
            std::uint64_t flat = 0;
            for_each_rep(nq.quiver, RingSpec(n), bound, [&](const Representation& x) {
                auto res = check_flat_projective(x, o.fault);
                if (res.passed && split_cached(x)) ++flat;
                rec.add(res, [&] { return rep_instance(x); });
                return true;
            });
            out.push_back(rec.finish(std::to_string(flat) + " projective"));
        }
}

void suite_adjunction(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(4);
    const std::size_t trials = o.trials.value_or(200);
    auto rng = suite_rng(o.seed, "adjunction");
    for (auto n : rings_for(o, {4})) {
        const RingSpec ring(n);
        const auto quivers = quivers_for(o, {"a2", "fork"});
        const auto coefficients = modules_up_to(ring, 16);
        std::string name = "adjunction/" + ring_tag(n);
        for (const auto& nq : quivers) name += "/" + nq.label;
        RecordBuilder rec(name, "adjunction", o.fault);
        std::uint64_t homs = 0, redrawn = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto& q = quivers[t % quivers.size()].quiver;
            auto y = random_rep(opposite(q), ring, bound, rng);
            auto x = random_rep(q, ring, bound, rng);
            auto g = coefficients[rng() % coefficients.size()];
            // Elementwise comparison enumerates Hom(Y (x) X, G); triples above the cap are drawn again.
            while (hom_count(TensorResult(y, x).value(), g) > kAdjunctionHomCap) {
                ++redrawn;
                y = random_rep(opposite(q), ring, bound, rng);
                x = random_rep(q, ring, bound, rng);
                g = coefficients[rng() % coefficients.size()];
            }
            auto res = check_adjunction(y, x, g);
            if (res.passed) homs += verify_adjunction(y, x, g).hom_side;
            rec.add(res, [&] {
                return Json{{"y", representation_to_json(y)}, {"x", representation_to_json(x)}, {"g", module_to_json(g)}};
            });
        }
        out.push_back(rec.finish(std::to_string(homs) + " homomorphisms matched, " + std::to_string(redrawn) +
                                 " triples redrawn above " + std::to_string(kAdjunctionHomCap)));
    }
}

void suite_flat_tensor(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(4);
    for (auto n : rings_for(o, {4}))
        for (const auto& nq : quivers_for(o, {"a2", "fork"})) {
            const RingSpec ring(n);
            TensorExactnessChecker checker(nq.quiver, ring);
            RecordBuilder rec("flat-tensor/" + ring_tag(n) + "/" + nq.label, "flat-tensor", o.fault);
            for_each_rep(nq.quiver, ring, bound, [&](const Representation& x) {
                rec.add(check_flat_tensor(checker, x, o.fault), [&] { return rep_instance(x); });
                return true;
            });
            out.push_back(rec.finish("test family of " + std::to_string(checker.family().size()) + " sequences"));
        }
}

void suite_cogenerator(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(8);
    const std::size_t trials = o.trials.value_or(100);
    auto rng = suite_rng(o.seed, "cogenerator");
    for (auto n : rings_for(o, {4}))
        for (const auto& nq : quivers_for(o, {"fork"})) {
            const RingSpec ring(n);
            RecordBuilder rec("cogenerator/" + ring_tag(n) + "/" + nq.label, "cogenerator", o.fault);
            std::size_t checks = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                auto x = random_rep_where(nq.quiver, ring, bound, rng,
                                          [&](const Representation& r) { return is_gorenstein_flat_rep(r, o.fault); });
                auto strategies = t % 2 ? std::vector<Strategy>{Strategy::hull, Strategy::padded}
                                        : std::vector<Strategy>{Strategy::identity};
                rec.add(check_cogenerator(x, strategies, o.fault, &checks), [&] {
                    auto j = rep_instance(x);
                    j["strategies"] = strategies_to_json(strategies);
                    return j;
                });
            }
            out.push_back(rec.finish(std::to_string(checks) + " trace conditions re-verified"));
        }
}

void suite_trivial(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(16);
    const std::size_t trials = o.trials.value_or(100);
    auto rng = suite_rng(o.seed, "trivial-objects");
    for (auto n : rings_for(o, {4}))
        for (const auto& nq : quivers_for(o, {"fork"})) {
            const RingSpec ring(n);
            ModuleClass inj(ring, {ClassTag::Inj});
            RecordBuilder rec("trivial-objects/" + ring_tag(n) + "/" + nq.label, "trivial-objects", o.fault);
            std::size_t checks = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                auto x = random_rep_where(nq.quiver, ring, bound, rng,
                                          [&](const Representation& r) { return in_rep_class(r, inj.predicate()); });
                TrivialOptions opt;
                if (t % 2) {
                    opt.witness = {Strategy::padded};
                    opt.completion = {Strategy::padded};
                }
                rec.add(check_trivial(x, opt, o.fault, &checks), [&] {
                    auto j = rep_instance(x);
                    j["witness"] = strategies_to_json(opt.witness);
                    j["completion"] = strategies_to_json(opt.completion);
                    return j;
                });
            }
            out.push_back(rec.finish(std::to_string(checks) + " trace conditions re-verified"));
        }
}

void suite_cotorsion(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(4);
    for (auto n : rings_for(o, {4}))
        for (const auto& nq : quivers_for(o, {"a2", "fork"})) {
            const RingSpec ring(n);
            const std::string suffix = "/" + ring_tag(n) + "/" + nq.label;
            ModuleClass gf(ring, {ClassTag::GF}, o.fault), perp(ring, {ClassTag::GFperp}, o.fault);
            auto reps = enumerate_reps(nq.quiver, ring, bound);
            std::vector<const Representation*> left, right;
            for (const auto& x : reps) {
                if (in_phi_class(x, gf.predicate())) left.push_back(&x);
                if (in_rep_class(x, perp.predicate())) right.push_back(&x);
            }
            RecordBuilder ext("ext-orthogonality" + suffix, "ext-orthogonality", o.fault);
            for (const auto* x : left) {
                auto res = free_resolution(*x);
                for (const auto* y : right)
                    ext.add(ext_outcome(ext1_from_resolution(res, *y)), [&] {
                        return Json{{"x", representation_to_json(*x)}, {"y", representation_to_json(*y)}};
                    });
            }
            out.push_back(ext.finish(std::to_string(left.size()) + " in Phi(GF) against " +
                                     std::to_string(right.size()) + " in Rep(GFperp)"));

            RecordBuilder core("core-equality" + suffix, "core-equality", o.fault);
            std::uint64_t projective = 0;
            for (const auto& x : reps) {
                auto res = check_core_equality(x, o.fault);
                if (res.passed && split_cached(x)) ++projective;
                core.add(res, [&] { return rep_instance(x); });
            }
            out.push_back(core.finish("all three sets have " + std::to_string(projective) + " elements"));
        }
}

void suite_duality(const SuiteOptions& o, Records& out) {
    const std::uint64_t module_bound = o.max_order ? *o.max_order : 16;
    {
        RecordBuilder rec("double-dual-module", "double-dual-module", o.fault);
        std::vector<Residue> rings;
        if (o.ring)
            rings = {*o.ring};
        else
            for (Residue n = 2; n <= 16; ++n) rings.push_back(n);
        for (auto n : rings)
            for (const auto& m : modules_up_to(RingSpec(n), module_bound))
                rec.add(check_double_dual_module(m),
                        [&] { return Json{{"ring", n}, {"module", module_to_json(m)}}; });
        std::string range = o.ring ? ring_tag(*o.ring) : "Z2..Z16";
        out.push_back(rec.finish(range + ", order <= " + std::to_string(module_bound)));
    }
    const std::uint64_t bound = o.max_order.value_or(4);
    for (auto n : rings_for(o, {4}))
        for (const auto& nq : quivers_for(o, {"a2", "fork"})) {
            RecordBuilder rec("double-dual-rep/" + ring_tag(n) + "/" + nq.label, "double-dual-rep", o.fault);
            for_each_rep(nq.quiver, RingSpec(n), bound, [&](const Representation& x) {
                rec.add(check_double_dual_rep(x), [&] { return rep_instance(x); });
                return true;
            });
            out.push_back(rec.finish("equal arrow matrices"));
        }
}

void suite_hovey(const SuiteOptions& o, Records& out) {
    const std::uint64_t bound = o.max_order.value_or(4);
    for (auto n : rings_for(o, {4}))
        for (const auto& nq : quivers_for(o, {"a2", "fork"})) {
            const RingSpec ring(n);
            const std::string suffix = "/" + ring_tag(n) + "/" + nq.label;
            auto reps = enumerate_reps(nq.quiver, ring, bound);
            RecordBuilder tc("hovey.trivially-cofibrant" + suffix, "hovey.trivially-cofibrant", o.fault);
            RecordBuilder fib("hovey.fibrant" + suffix, "hovey.fibrant", o.fault);
            std::uint64_t projective = 0;
            for (const auto& x : reps) {
                auto res = check_hovey_trivially_cofibrant(x, o.fault);
                if (res.passed && split_cached(x)) ++projective;
                tc.add(res, [&] { return rep_instance(x); });
                fib.add(check_hovey_fibrant(x, o.fault), [&] { return rep_instance(x); });
            }
            out.push_back(tc.finish(std::to_string(projective) + " trivially cofibrant"));
            out.push_back(fib.finish("all fibrant"));

            RecordBuilder core("hovey.core-equality" + suffix, "hovey.core-equality", o.fault);
            auto report = core_equality_check(nq.quiver, gorenstein_flat_triple(ring, o.fault), bound);
            core.add_many(report.enumerated);
            if (!report.equal || !report.equals_projective) {
                const auto x = report.counterexample ? *report.counterexample : Representation::zero(nq.quiver, ring);
                core.fail(report.detail, [&] { return rep_instance(x); });
            }
            out.push_back(core.finish("both cores have " + std::to_string(report.side_a) + " elements"));
        }
}

using SuiteFn = void (*)(const SuiteOptions&, Records&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> s = {
        {"rooted", suite_rooted},
        {"gorenstein-flat", suite_duality_chain},
        {"flat-projective", suite_flat_projective},
        {"adjunction", suite_adjunction},
        {"flat-tensor", suite_flat_tensor},
        {"cogenerator", suite_cogenerator},
        {"trivial-objects", suite_trivial},
        {"cotorsion", suite_cotorsion},
        {"duality", suite_duality},
        {"hovey", suite_hovey},
    };
    return s;
}

}  // namespace

std::uint8_t duality_chain_local_bits(const Representation& x, std::size_t v, OracleFault fault) {
    auto shape = star_shape(x.quiver(), v);
    ModuleClass gf(x.ring(), {ClassTag::GF}, fault), gi(x.ring(), {ClassTag::GI}, fault);
    return local_bits_at(star_rep(shape, x), shape.center, gf, gi);
}

Quiver named_quiver(const std::string& name) {
    if (name == "fork" || name == "appendix") return fork_quiver();
    if (name == "a2") return a2_quiver();
    if (name == "loop") return loop_quiver();
    if (name == "two-cycle") return two_cycle_quiver();
    return load_quiver(name);
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& e : registry()) n.push_back(e.name);
        return n;
    }();
    return names;
}

std::string check_property(const std::string& check) { return entry(check).property; }

CheckOutcome evaluate_check(const std::string& check, const Json& instance, OracleFault fault) {
    return entry(check).eval(instance, fault);
}

Json make_counterexample(const std::string& check, const Json& instance, OracleFault fault, const std::string& detail) {
    return Json{{"schema", kCounterexampleSchema},
                {"check", check},
                {"fault", to_string(fault)},
                {"detail", detail},
                {"instance", instance}};
}

ReplayResult replay_counterexample(const Json& cx) {
    if (!cx.contains("schema") || cx.at("schema") != kCounterexampleSchema)
        throw std::invalid_argument("not a counterexample (schema " + std::string(kCounterexampleSchema) + ")");
    ReplayResult r;
    r.check = cx.at("check").get<std::string>();
    r.outcome = evaluate_check(r.check, cx.at("instance"), parse_fault(cx.at("fault").get<std::string>()));
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : suites()) n.push_back(name);
        n.push_back("all");
        return n;
    }();
    return names;
}

std::optional<std::string> resolve_suite(const std::string& name) {
    static const std::map<std::string, std::string> aliases = {
        {"theorem-a", "gorenstein-flat"}, {"duality-chain", "gorenstein-flat"}, {"flat", "flat-projective"},
        {"tensor", "flat-tensor"},        {"trivial", "trivial-objects"},        {"orthogonality", "cotorsion"},
        {"core-equality", "cotorsion"},   {"involution", "duality"},             {"model-structure", "hovey"},
    };
    if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end()) return name;
    auto it = aliases.find(name);
    if (it != aliases.end()) return it->second;
    return std::nullopt;
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& options) {
    auto canonical = resolve_suite(name);
    if (!canonical) throw std::invalid_argument("unknown suite: " + name);
    VerificationReport report;
    report.suite = *canonical;
    report.seed = options.seed;
    report.fault = options.fault;
    report.params = Json{{"ring", options.ring ? Json(*options.ring) : Json()},
                         {"quiver", options.quiver ? Json(*options.quiver) : Json()},
                         {"max_order", options.max_order ? Json(*options.max_order) : Json()},
                         {"trials", options.trials ? Json(*options.trials) : Json()}};
    for (const auto& [suite, fn] : suites())
        if (*canonical == "all" || *canonical == suite) fn(options, report.records);
    std::stable_sort(report.records.begin(), report.records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    return report;
}

bool VerificationReport::passed() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; });
}

Json VerificationReport::to_json(bool timings) const {
    Json recs = Json::array();
    for (const auto& r : records) {
        Json j{{"name", r.name},           {"check", r.check},   {"property", r.property},
               {"instances", r.instances}, {"passed", r.passed}, {"detail", r.detail}};
        j["counterexample"] = r.counterexample ? *r.counterexample : Json();
        if (timings) j["seconds"] = r.seconds;
        recs.push_back(j);
    }
    return Json{{"schema", kReportSchema}, {"suite", suite},   {"seed", seed},    {"fault", to_string(fault)},
                {"params", params},        {"passed", passed()}, {"records", recs}};
}

std::string VerificationReport::to_text(bool timings) const {
    std::ostringstream os;
    os << "suite " << suite << "  seed " << seed;
    if (fault != OracleFault::none) os << "  fault " << to_string(fault);
    os << "\n";
    std::size_t width = 0;
    for (const auto& r : records) width = std::max(width, r.name.size());
    for (const auto& r : records) {
        os << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ')
           << r.instances << " instances";
        if (timings) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "  %.2fs", r.seconds);
            os << buf;
        }
        if (!r.detail.empty()) os << "  " << r.detail;
        os << "\n";
        if (r.counterexample) os << "      counterexample: " << r.counterexample->dump() << "\n";
    }
    os << (passed() ? "passed" : "FAILED") << " (" << records.size() << " checks)\n";
    return os.str();
}

}  // namespace qrep
