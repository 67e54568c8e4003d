#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrep/analyze.hpp"
#include "qrep/constructions.hpp"
#include "qrep/enumerate.hpp"
#include "qrep/io.hpp"
#include "qrep/tensor_rep.hpp"
#include "qrep/verify.hpp"

using namespace qrep;

namespace {

// Exit codes: 0 success or pass, 1 negative verdict or failed check, 2 bad input.
constexpr int kFail = 1;
constexpr int kBadInput = 2;

std::string set_text(const Quiver& q, const std::vector<std::size_t>& set) {
    if (set.empty()) return "∅";
    std::string s = "{";
    for (std::size_t k = 0; k < set.size(); ++k) s += (k ? "," : "") + q.vertex_name(set[k]);
    return s + "}";
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names) {
    std::vector<Strategy> out;
    for (const auto& n : names) out.push_back(parse_strategy(n));
    return out;
}

int cmd_rooted(const std::string& path, bool json) {
    Quiver q;
    try {
        q = load_quiver(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return kBadInput;
    }
    auto vs = v_sequence(q);
    if (json) {
        Json sets = Json::array();
        for (const auto& s : vs.sets) {
            Json names = Json::array();
            for (auto v : s) names.push_back(q.vertex_name(v));
            sets.push_back(names);
        }
        emit(Json{{"left_rooted", vs.left_rooted}, {"lambda", vs.lambda}, {"sets", sets}});
    } else {
        for (const auto& s : vs.sets) std::cout << set_text(q, s) << "\n";
    }
    return vs.left_rooted ? 0 : kFail;
}

int cmd_analyze(const std::string& path, bool json) {
    auto a = analyze(load_representation(path));
    if (json)
        emit(analysis_to_json(a));
    else
        std::cout << analysis_text(a);
    return 0;
}

int cmd_tensor(const std::vector<std::string>& files, bool json) {
    if (files.size() == 1) {
        auto x = load_representation(files[0]);
        auto t = flat_iff_tensor_exact(x);
        Json j{{"flat", t.flat}, {"tensor_exact", t.tensor_exact}, {"dual_injective", t.dual_injective},
               {"agree", t.agree()}};
        if (t.witness) j["witness"] = *t.witness;
        if (json) {
            emit(j);
        } else {
            std::cout << "Phi(Flat): " << (t.flat ? "true" : "false") << "\n"
                      << "tensor exact: " << (t.tensor_exact ? "true" : "false") << "\n"
                      << "X+ injective: " << (t.dual_injective ? "true" : "false") << "\n"
                      << "agree: " << (t.agree() ? "true" : "false") << "\n";
        }
        return t.agree() ? 0 : kFail;
    }
    auto y = load_representation(files[0]);
    auto x = load_representation(files[1]);
    if (!(y.quiver() == opposite(x.quiver())))
        throw std::invalid_argument("the first representation must live on the opposite quiver of the second");
    TensorResult t(y, x);
    if (json)
        emit(Json{{"module", module_to_json(t.value())}, {"order", t.value().order()}});
    else
        std::cout << "Y (x) X = " << t.value().to_string() << "  (order " << t.value().order() << ")\n";
    return 0;
}

int cmd_dual(const std::string& path, bool json) {
    auto x = load_representation(path);
    auto d = char_dual_rep(x);
    const bool involution = double_dual_matches(x);
    if (json) {
        emit(Json{{"dual", representation_to_json(d)}, {"double_dual_matches", involution}});
    } else {
        std::cout << representation_text(d);
        std::cout << "# (X+)+ = X: " << (involution ? "true" : "false") << "\n";
    }
    return involution ? 0 : kFail;
}

int cmd_adjunction(const std::string& ypath, const std::string& xpath, const std::string& g_literal, bool json) {
    auto y = load_representation(ypath);
    auto x = load_representation(xpath);
    const FiniteModule g = normalize_cyclic_sum(x.ring(), parse_cyclic_literal(g_literal)).module;
    auto r = verify_adjunction(y, x, g);
    if (json)
        emit(Json{{"tensor_side", r.tensor_side}, {"hom_side", r.hom_side}, {"bijective", r.bijective},
                  {"ok", r.ok()}});
    else
        std::cout << "|Hom(Y (x) X, G)| = " << r.tensor_side << "\n|Hom(Y, Hom(X, G))| = " << r.hom_side
                  << "\nbijective: " << (r.bijective ? "true" : "false") << "\n";
    return r.ok() ? 0 : kFail;
}

struct ConstructArgs {
    std::string kind;
    std::string file;
    std::string out;
    std::vector<std::string> strategy{"identity"};
    std::vector<std::string> witness{"identity", "hull", "search"};
    std::vector<std::string> completion{"identity", "hull"};
};

int cmd_construct(const ConstructArgs& a) {
    auto x = load_representation(a.file);
    const RingSpec& ring = x.ring();
    ConstructionResult res = [&] {
        if (a.kind == "cogenerator") {
            CotorsionPairOracle pair(ModuleClass(ring, {ClassTag::Flat}), ModuleClass(ring, {ClassTag::Cot}),
                                     parse_strategies(a.strategy));
            CogeneratorOracle cog(ModuleClass(ring, {ClassTag::GF}), ModuleClass(ring, {ClassTag::Flat}),
                                  {Strategy::hull});
            return cogenerator_construct(x, pair, cog);
        }
        TrivialOptions opt;
        opt.witness = parse_strategies(a.witness);
        opt.completion = parse_strategies(a.completion);
        return trivial_objects_construct(x, gorenstein_flat_triple(ring), opt);
    }();
    const Json trace = trace_to_json(res.trace);
    if (a.out.empty()) {
        emit(trace);
        return 0;
    }
    std::ofstream os(a.out);
    if (!os) throw std::runtime_error("cannot write " + a.out);
    os << trace.dump(2) << "\n";
    std::cout << a.kind << " trace with " << res.trace.stages.size() << " stages written to " << a.out << "\n"
              << "middle: " << res.sequence.middle().to_string() << "\n"
              << "right:  " << res.sequence.right().to_string() << "\n";
    return 0;
}

int cmd_verify_trace(const std::string& path, bool json) {
    const Json j = Json::parse(read_text_file(path));
    const std::string schema = j.value("schema", "");
    if (schema == kCounterexampleSchema) {
        auto r = replay_counterexample(j);
        if (json)
            emit(Json{{"check", r.check}, {"passed", r.outcome.passed}, {"detail", r.outcome.detail}});
        else if (r.outcome.passed)
            std::cout << r.check << ": passes on replay\n";
        else
            std::cout << r.check << ": fails on replay: " << r.outcome.detail << "\n";
        return r.outcome.passed ? 0 : kFail;
    }
    if (schema == kReportSchema) {
        bool reproduced = false;
        Json out = Json::array();
        for (const auto& rec : j.at("records")) {
            if (rec.at("counterexample").is_null()) continue;
            auto r = replay_counterexample(rec.at("counterexample"));
            reproduced = reproduced || !r.outcome.passed;
            out.push_back(Json{{"name", rec.at("name")}, {"passed", r.outcome.passed}, {"detail", r.outcome.detail}});
            if (!json)
                std::cout << rec.at("name").get<std::string>()
                          << (r.outcome.passed ? ": passes on replay\n" : ": fails on replay: " + r.outcome.detail + "\n");
        }
        if (json) emit(Json{{"replayed", out}});
        if (!json && out.empty()) std::cout << "no counterexamples in report\n";
        return reproduced ? kFail : 0;
    }
    auto v = verify_trace(trace_from_json(j));
    if (json) {
        emit(Json{{"ok", v.ok}, {"checks", v.checks}, {"failures", v.failures}, {"remarks", v.remarks}});
    } else {
        std::cout << (v.ok ? "trace verified" : "trace FAILED") << " (" << v.checks << " checks)\n";
        for (const auto& f : v.failures) std::cout << "  failure: " << f << "\n";
        for (const auto& r : v.remarks) std::cout << "  note: " << r << "\n";
    }
    return v.ok ? 0 : kFail;
}

struct VerifyArgs {
    std::string suite;
    std::optional<std::uint64_t> seed;
    std::optional<Residue> ring;
    std::optional<std::string> quiver;
    std::optional<std::uint64_t> max_order;
    std::optional<std::size_t> trials;
    std::string fault = "none";
    bool timings = false;
    std::string out;
};

int cmd_verify(const VerifyArgs& a, bool json) {
    if (json && !a.seed) {
        std::cerr << "error: --seed is required with --json\n";
        return kBadInput;
    }
    if (!resolve_suite(a.suite)) {
        std::cerr << "error: unknown suite " << a.suite << "\n";
        return kBadInput;
    }
    SuiteOptions o;
    o.seed = a.seed.value_or(1);
    o.ring = a.ring;
    o.quiver = a.quiver;
    o.max_order = a.max_order;
    o.trials = a.trials;
    o.fault = parse_fault(a.fault);
    auto report = run_suite(a.suite, o);
    const std::string text = json ? report.to_json(a.timings).dump(2) + "\n" : report.to_text(a.timings);
    std::cout << text;
    if (!a.out.empty()) {
        std::ofstream os(a.out);
        os << report.to_json(a.timings).dump(2) << "\n";
    }
    return report.passed() ? 0 : kFail;
}

struct EnumerateArgs {
    std::string quiver = "fork";
    Residue ring = 4;
    std::uint64_t max_order = 2;
    bool count = false;
    std::optional<std::uint64_t> limit;
};

int cmd_enumerate(const EnumerateArgs& a, bool json) {
    const Quiver q = named_quiver(a.quiver);
    const RingSpec ring(a.ring);
    const std::uint64_t total = count_reps(q, ring, a.max_order);
    if (a.count) {
        if (json)
            emit(Json{{"count", total}});
        else
            std::cout << total << "\n";
        return 0;
    }
    std::uint64_t emitted = 0;
    for_each_rep(q, ring, a.max_order, [&](const Representation& x) {
        if (a.limit && emitted >= *a.limit) return false;
        if (json)
            std::cout << representation_to_json(x).dump() << "\n";
        else
            std::cout << (emitted ? "\n" : "") << representation_text(x);
        ++emitted;
        return true;
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with representations of left rooted quivers over Z/n"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    std::string path;
    auto* rooted = app.add_subcommand("rooted", "print the V-sequence of a quiver file");
    rooted->add_option("file", path, "quiver file")->required();
    rooted->add_flag("--json", json);

    auto* analyze_cmd = app.add_subcommand("analyze", "per-vertex phi/psi data and class memberships");
    analyze_cmd->add_option("file", path, "representation file")->required();
    analyze_cmd->add_flag("--json", json);

    std::vector<std::string> files;
    auto* tensor = app.add_subcommand("tensor", "Y (x) X for Y over the opposite quiver, or the exactness verdicts of X");
    tensor->add_option("files", files, "[Y] X")->required()->expected(1, 2);
    tensor->add_flag("--json", json);

    auto* dual = app.add_subcommand("dual", "character dual X+ as a representation file");
    dual->add_option("file", path, "representation file")->required();
    dual->add_flag("--json", json);

    std::string g_literal;
    auto* adj = app.add_subcommand("adjunction-check", "compare Hom(Y (x) X, G) with Hom(Y, Hom(X, G))");
    adj->add_option("files", files, "Y X")->required()->expected(2);
    adj->add_option("-g,--module", g_literal, "coefficient module, e.g. Z/4 + Z/2")->required();
    adj->add_flag("--json", json);

    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "run a construction and write its trace");
    construct->add_option("kind", cargs.kind, "cogenerator or trivial")
        ->required()
        ->check(CLI::IsMember({"cogenerator", "trivial"}));
    construct->add_option("file", cargs.file, "representation file")->required();
    construct->add_option("-o,--output", cargs.out, "trace file (stdout if omitted)");
    construct->add_option("--strategy", cargs.strategy, "completion strategies (cogenerator)")->delimiter(',');
    construct->add_option("--witness", cargs.witness, "witness strategies (trivial)")->delimiter(',');
    construct->add_option("--completion", cargs.completion, "completion strategies (trivial)")->delimiter(',');
    construct->add_flag("--json", json);

    auto* vtrace = app.add_subcommand("verify-trace", "re-verify a trace or replay a counterexample");
    vtrace->add_option("file", path, "trace or counterexample JSON")->required();
    vtrace->add_flag("--json", json);

    VerifyArgs vargs;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", vargs.suite, "suite name or alias, or all")->required();
    verify->add_option("--seed", vargs.seed, "random seed (required with --json)");
    verify->add_option("--ring", vargs.ring, "modulus n");
    verify->add_option("--quiver", vargs.quiver, "fork (appendix), a2, or a quiver file");
    verify->add_option("--max-order", vargs.max_order, "bound on vertex module orders");
    verify->add_option("--trials", vargs.trials, "number of random instances");
    verify->add_option("--fault", vargs.fault, "oracle fault to inject")
        ->check(CLI::IsMember({"none", "flat-accepts-all"}));
    verify->add_flag("--timings", vargs.timings, "include wall-clock seconds per check");
    verify->add_option("-o,--output", vargs.out, "also write the JSON report here");
    verify->add_flag("--json", json);

    EnumerateArgs eargs;
    auto* enumerate = app.add_subcommand("enumerate", "list representations with small vertex modules");
    enumerate->add_option("--quiver", eargs.quiver, "fork (appendix), a2, or a quiver file");
    enumerate->add_option("--ring", eargs.ring, "modulus n");
    enumerate->add_option("--max-order", eargs.max_order, "bound on vertex module orders");
    enumerate->add_option("--limit", eargs.limit, "stop after this many");
    enumerate->add_flag("--count", eargs.count, "print only the number of representations");
    enumerate->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kBadInput;
    }

    try {
        if (*rooted) return cmd_rooted(path, json);
        if (*analyze_cmd) return cmd_analyze(path, json);
        if (*tensor) return cmd_tensor(files, json);
        if (*dual) return cmd_dual(path, json);
        if (*adj) return cmd_adjunction(files[0], files[1], g_literal, json);
        if (*construct) return cmd_construct(cargs);
        if (*vtrace) return cmd_verify_trace(path, json);
        if (*verify) return cmd_verify(vargs, json);
        if (*enumerate) return cmd_enumerate(eargs, json);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
