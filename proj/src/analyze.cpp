#include "qrep/analyze.hpp"

#include <sstream>
#include <stdexcept>

namespace qrep {

namespace {

std::string kernel_text(const VertexAnalysis& v) {
    std::string s = "(";
    bool first = true;
    for (const auto& [arrow, e] : *v.kernel_witness) {
        s += (first ? "" : ", ") + arrow + ": " + element_text(e);
        first = false;
    }
    return s + ")";
}

FlagVerdict phi_flag(const std::string& name, const Analysis& a, const ModuleClass& cls) {
    const Representation& x = a.rep;
    const Quiver& q = x.quiver();
    FlagVerdict f{name, true, {}};
    for (const auto& v : a.vertices) {
        const std::string i = q.vertex_name(v.vertex);
        std::string reason;
        if (!v.phi_injective)
            reason = "phi_" + i + " not injective, kernel element " + kernel_text(v);
        else if (!cls.contains(x.module(v.vertex)))
            reason = "X(" + i + ") = " + x.module(v.vertex).to_string() + " not in " + cls.name();
        else if (!cls.contains(v.c))
            reason = "C_" + i + " = " + v.c.to_string() + " not in " + cls.name();
        if (!reason.empty()) f.witnesses.push_back({v.vertex, reason});
    }
    f.value = f.witnesses.empty();
    return f;
}

FlagVerdict rep_flag(const std::string& name, const Representation& x, const ModuleClass& cls) {
    FlagVerdict f{name, true, {}};
    for (std::size_t i = 0; i < x.quiver().vertex_count(); ++i)
        if (!cls.contains(x.module(i)))
            f.witnesses.push_back(
                {i, "X(" + x.quiver().vertex_name(i) + ") = " + x.module(i).to_string() + " not in " + cls.name()});
    f.value = f.witnesses.empty();
    return f;
}

}  // namespace

std::string element_text(const Element& e) {
    std::string s = "[";
    for (std::size_t k = 0; k < e.size(); ++k) s += (k ? "," : "") + std::to_string(e[k]);
    return s + "]";
}

Analysis analyze(const Representation& x, OracleFault fault) {
    if (!is_left_rooted(x.quiver())) throw std::invalid_argument("quiver is not left rooted");
    Analysis a{x, {}, {}};
    const Quiver& q = x.quiver();
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        VertexAnalysis v{i, true, FiniteModule::zero(x.ring()), std::nullopt, true, FiniteModule::zero(x.ring())};
        auto p = phi(x, i);
        v.phi_injective = is_injective(p.map);
        v.c = cokernel(p.map).module;
        if (!v.phi_injective) {
            auto ker = kernel(p.map);
            const Element e = ker.inclusion.image_of_generator(0);
            std::vector<std::pair<std::string, Element>> parts;
            for (std::size_t k = 0; k < p.arrows.size(); ++k)
                parts.emplace_back(q.arrow(p.arrows[k]).name, p.sum.projections[k].apply(e));
            v.kernel_witness = parts;
        }
        auto s = psi(x, i);
        v.psi_surjective = is_surjective(s.map);
        v.k = kernel(s.map).module;
        a.vertices.push_back(v);
    }
    const RingSpec& r = x.ring();
    a.flags.push_back(phi_flag("flat", a, ModuleClass(r, {ClassTag::Flat}, fault)));
    a.flags.push_back(phi_flag("gorenstein-flat", a, ModuleClass(r, {ClassTag::GF}, fault)));
    a.flags.push_back(phi_flag("pgf", a, ModuleClass(r, {ClassTag::PGF}, fault)));
    a.flags.push_back(phi_flag("projective", a, ModuleClass(r, {ClassTag::Prj}, fault)));
    auto t = gorenstein_flat_triple(r, fault);
    a.flags.push_back(phi_flag("hovey-cofibrant", a, t.cofibrant));
    a.flags.push_back(rep_flag("hovey-trivial", x, t.trivial));
    a.flags.push_back(rep_flag("hovey-fibrant", x, t.fibrant));
    return a;
}

Json analysis_to_json(const Analysis& a) {
    const Quiver& q = a.rep.quiver();
    Json vs = Json::array();
    for (const auto& v : a.vertices) {
        Json j{{"vertex", q.vertex_name(v.vertex)},
               {"phi_injective", v.phi_injective},
               {"C", v.c.to_string()},
               {"psi_surjective", v.psi_surjective},
               {"K", v.k.to_string()}};
        if (v.kernel_witness) {
            Json w = Json::object();
            for (const auto& [arrow, e] : *v.kernel_witness) w[arrow] = e;
            j["kernel_witness"] = w;
        }
        vs.push_back(j);
    }
    Json flags = Json::object();
    for (const auto& f : a.flags) {
        Json w = Json::array();
        for (const auto& x : f.witnesses) w.push_back(Json{{"vertex", q.vertex_name(x.vertex)}, {"reason", x.reason}});
        flags[f.name] = Json{{"value", f.value}, {"witnesses", w}};
    }
    return Json{{"ring", a.rep.ring().modulus()}, {"vertices", vs}, {"flags", flags}};
}

std::string analysis_text(const Analysis& a) {
    const Quiver& q = a.rep.quiver();
    std::ostringstream os;
    for (const auto& v : a.vertices) {
        const std::string i = q.vertex_name(v.vertex);
        os << "vertex " << i << ": phi_" << i << (v.phi_injective ? " injective" : " not injective") << ", C_" << i
           << " = " << v.c.to_string() << ", psi_" << i << (v.psi_surjective ? " surjective" : " not surjective")
           << ", K_" << i << " = " << v.k.to_string() << "\n";
    }
    for (const auto& f : a.flags) {
        os << f.name << ": " << (f.value ? "true" : "false");
        for (std::size_t k = 0; k < f.witnesses.size(); ++k)
            os << (k ? "; " : " (") << "vertex " << q.vertex_name(f.witnesses[k].vertex) << ": " << f.witnesses[k].reason
               << (k + 1 == f.witnesses.size() ? ")" : "");
        os << "\n";
    }
    return os.str();
}

}  // namespace qrep
