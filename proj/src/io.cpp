#include "qrep/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qrep {

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> words;
    std::string w;
    while (is >> w) words.push_back(w);
    return words;
}

std::string rest_after(const std::string& line, std::size_t words) {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < words; ++k) {
        pos = line.find_first_not_of(" \t", pos);
        pos = line.find_first_of(" \t", pos);
        if (pos == std::string::npos) return "";
    }
    auto start = line.find_first_not_of(" \t", pos);
    if (start == std::string::npos) return "";
    auto end = line.find_last_not_of(" \t\r");
    return line.substr(start, end - start + 1);
}

struct LiteralModule {
    std::vector<Residue> orders;
    NormalizedPresentation normal;
    std::size_t line;
};

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Quiver load_quiver(const std::filesystem::path& path) { return parse_quiver(read_text_file(path)); }

Representation parse_representation(const std::string& text, const std::filesystem::path& base_dir) {
    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    std::string quiver_lines;
    std::optional<Quiver> file_quiver;
    std::size_t quiver_line = 0;
    std::optional<Residue> modulus;
    std::size_t ring_line = 0;
    struct Pending {
        std::string key, value;
        std::size_t line;
    };
    std::vector<Pending> module_lines, map_lines;
    bool inline_quiver = false;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto words = split_words(line);
        if (words.empty()) {
            quiver_lines += "\n";
            continue;
        }
        const std::string& d = words[0];
        if (d == "vertex" || d == "arrow") {
            if (file_quiver) throw ParseError(lineno, "inline quiver lines after 'quiver' directive (line " +
                                                          std::to_string(quiver_line) + ")");
            inline_quiver = true;
            quiver_lines += line + "\n";
            continue;
        }
        quiver_lines += "\n";
        if (d == "quiver") {
            if (words.size() != 2) throw ParseError(lineno, "expected 'quiver <path>'");
            if (file_quiver) throw ParseError(lineno, "second 'quiver' directive (first on line " +
                                                          std::to_string(quiver_line) + ")");
            if (inline_quiver) throw ParseError(lineno, "'quiver' directive after inline quiver lines");
            std::filesystem::path p(words[1]);
            if (p.is_relative()) p = base_dir / p;
            try {
                file_quiver = load_quiver(p);
            } catch (const ParseError& e) {
                throw ParseError(lineno, "in quiver file " + p.string() + ": " + e.what());
            } catch (const std::exception& e) {
                throw ParseError(lineno, e.what());
            }
            quiver_line = lineno;
        } else if (d == "ring") {
            if (words.size() != 2 || words[1].find_first_not_of("0123456789") != std::string::npos)
                throw ParseError(lineno, "expected 'ring <n>'");
            if (modulus) throw ParseError(lineno, "second 'ring' directive (first on line " + std::to_string(ring_line) + ")");
            modulus = std::stoull(words[1]);
            ring_line = lineno;
        } else if (d == "module") {
            if (words.size() < 3) throw ParseError(lineno, "expected 'module <vertex> <literal>'");
            module_lines.push_back({words[1], rest_after(line, 2), lineno});
        } else if (d == "map") {
            if (words.size() < 3) throw ParseError(lineno, "expected 'map <arrow> <matrix>'");
            map_lines.push_back({words[1], rest_after(line, 2), lineno});
        } else {
            throw ParseError(lineno, "unknown directive '" + d + "'");
        }
    }
    Quiver q = file_quiver ? *file_quiver : parse_quiver(quiver_lines);
    if (!file_quiver && !inline_quiver) throw ParseError(lineno, "no quiver given");
    if (!modulus) throw ParseError(lineno, "missing 'ring <n>'");
    std::optional<RingSpec> ring;
    try {
        ring.emplace(*modulus);
    } catch (const std::exception& e) {
        throw ParseError(ring_line, e.what());
    }

    std::vector<std::optional<LiteralModule>> lits(q.vertex_count());
    for (const auto& m : module_lines) {
        auto v = q.find_vertex(m.key);
        if (!v) throw ParseError(m.line, "unknown vertex '" + m.key + "'");
        if (lits[*v]) throw ParseError(m.line, "duplicate module for vertex '" + m.key + "' (first on line " +
                                                   std::to_string(lits[*v]->line) + ")");
        std::vector<Residue> orders;
        try {
            orders = parse_cyclic_literal(m.value);
        } catch (const std::exception& e) {
            throw ParseError(m.line, e.what());
        }
        for (Residue o : orders)
            if (*modulus % o != 0)
                throw ParseError(m.line, "summand order " + std::to_string(o) + " does not divide " + std::to_string(*modulus));
        lits[*v] = LiteralModule{orders, normalize_cyclic_sum(*ring, orders), m.line};
    }
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
        if (!lits[v]) lits[v] = LiteralModule{{}, normalize_cyclic_sum(*ring, {}), 0};

    std::vector<FiniteModule> modules;
    for (const auto& l : lits) modules.push_back(l->normal.module);
    std::vector<std::optional<ModuleMap>> maps(q.arrow_count());
    std::vector<std::size_t> map_line(q.arrow_count(), 0);
    const Residue n = *modulus;
    for (const auto& m : map_lines) {
        auto a = q.find_arrow(m.key);
        if (!a) throw ParseError(m.line, "unknown arrow '" + m.key + "'");
        if (maps[*a]) throw ParseError(m.line, "duplicate map for arrow '" + m.key + "' (first on line " +
                                                   std::to_string(map_line[*a]) + ")");
        const auto& src = *lits[q.arrow(*a).source];
        const auto& dst = *lits[q.arrow(*a).target];
        Json rows;
        try {
            rows = Json::parse(m.value);
        } catch (const std::exception&) {
            throw ParseError(m.line, "malformed matrix '" + m.value + "'");
        }
        if (!rows.is_array()) throw ParseError(m.line, "matrix must be a list of rows");
        const std::size_t p = src.orders.size(), r = dst.orders.size();
        bool empty_ok = (p == 0 || r == 0) && (rows.empty() || (rows.size() == r && std::all_of(rows.begin(), rows.end(), [](const Json& x) { return x.is_array() && x.empty(); })));
        ModularMatrix lit(n, r, p);
        if (!empty_ok) {
            if (rows.size() != r)
                throw ParseError(m.line, "expected " + std::to_string(r) + " rows (target summands), got " + std::to_string(rows.size()));
            for (std::size_t i = 0; i < r; ++i) {
                if (!rows[i].is_array() || rows[i].size() != p)
                    throw ParseError(m.line, "row " + std::to_string(i + 1) + " must have " + std::to_string(p) + " entries");
                for (std::size_t j = 0; j < p; ++j) {
                    if (!rows[i][j].is_number_integer()) throw ParseError(m.line, "matrix entries must be integers");
                    long long v = rows[i][j].get<long long>();
                    long long red = v % static_cast<long long>(n);
                    if (red < 0) red += static_cast<long long>(n);
                    lit.set(i, j, static_cast<Residue>(red));
                }
            }
        }
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t i = 0; i < r; ++i) {
                Residue e = dst.orders[i];
                if ((src.orders[j] % e) * lit(i, j) % e != 0)
                    throw ParseError(m.line, "not a homomorphism: generator " + std::to_string(j + 1) + " of order " +
                                                 std::to_string(src.orders[j]) + " sent to entry " +
                                                 std::to_string(lit(i, j)) + " in Z/" + std::to_string(e));
            }
        ModularMatrix normal = dst.normal.to_module * lit * src.normal.from_module;
        maps[*a] = ModuleMap(src.normal.module, dst.normal.module, normal);
        map_line[*a] = m.line;
    }
    std::vector<ModuleMap> out;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& src = modules[q.arrow(a).source];
        const auto& dst = modules[q.arrow(a).target];
        if (maps[a]) {
            out.push_back(*maps[a]);
        } else if (src.is_zero() || dst.is_zero()) {
            out.push_back(ModuleMap::zero(src, dst));
        } else {
            throw ParseError(lineno, "missing map for arrow '" + q.arrow(a).name + "'");
        }
    }
    return Representation(q, *ring, modules, out);
}

Representation load_representation(const std::filesystem::path& path) {
    return parse_representation(read_text_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

std::string representation_text(const Representation& x) {
    std::ostringstream os;
    const Quiver& q = x.quiver();
    os << q.to_text();
    os << "ring " << x.ring().modulus() << "\n";
    for (std::size_t i = 0; i < q.vertex_count(); ++i)
        os << "module " << q.vertex_name(i) << " " << x.module(i).to_string() << "\n";
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& f = x.map(a);
        if (f.source().is_zero() || f.target().is_zero()) continue;
        os << "map " << q.arrow(a).name << " " << matrix_to_json(f.matrix()).dump() << "\n";
    }
    return os.str();
}

Json quiver_to_json(const Quiver& q) {
    Json arrows = Json::array();
    for (const auto& a : q.arrows())
        arrows.push_back({{"id", a.name}, {"source", q.vertex_name(a.source)}, {"target", q.vertex_name(a.target)}});
    return {{"vertices", q.vertex_names()}, {"arrows", arrows}};
}

Quiver quiver_from_json(const Json& j) {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<Arrow> arrows;
    auto index = [&](const std::string& v) {
        auto it = std::find(vertices.begin(), vertices.end(), v);
        if (it == vertices.end()) throw std::invalid_argument("unknown vertex '" + v + "' in quiver json");
        return static_cast<std::size_t>(it - vertices.begin());
    };
    for (const auto& a : j.at("arrows"))
        arrows.push_back({a.at("id").get<std::string>(), index(a.at("source").get<std::string>()),
                          index(a.at("target").get<std::string>())});
    return Quiver(vertices, arrows);
}

Json module_to_json(const FiniteModule& m) { return m.invariants(); }

FiniteModule module_from_json(const RingSpec& ring, const Json& j) {
    return FiniteModule(ring, j.get<std::vector<Residue>>());
}

Json matrix_to_json(const ModularMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r));
    return rows;
}

ModuleMap module_map_from_json(const FiniteModule& source, const FiniteModule& target, const Json& j) {
    ModularMatrix m(source.modulus(), target.rank(), source.rank());
    if (j.size() != target.rank()) throw std::invalid_argument("matrix json: wrong row count");
    for (std::size_t r = 0; r < target.rank(); ++r) {
        if (j[r].size() != source.rank()) throw std::invalid_argument("matrix json: wrong column count");
        for (std::size_t c = 0; c < source.rank(); ++c) m.set(r, c, j[r][c].get<Residue>());
    }
    return ModuleMap(source, target, m);
}

Json rep_body_to_json(const Representation& x) {
    Json modules = Json::array(), maps = Json::array();
    for (const auto& m : x.modules()) modules.push_back(module_to_json(m));
    for (const auto& f : x.maps()) maps.push_back(matrix_to_json(f.matrix()));
    return {{"modules", modules}, {"maps", maps}};
}

Representation rep_body_from_json(const Quiver& q, const RingSpec& ring, const Json& j) {
    std::vector<FiniteModule> modules;
    for (const auto& m : j.at("modules")) modules.push_back(module_from_json(ring, m));
    if (modules.size() != q.vertex_count()) throw std::invalid_argument("rep json: wrong module count");
    const auto& maps_json = j.at("maps");
    if (maps_json.size() != q.arrow_count()) throw std::invalid_argument("rep json: wrong map count");
    std::vector<ModuleMap> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        maps.push_back(module_map_from_json(modules[q.arrow(a).source], modules[q.arrow(a).target], maps_json[a]));
    return Representation(q, ring, modules, maps);
}

Json representation_to_json(const Representation& x) {
    Json j = {{"quiver", quiver_to_json(x.quiver())}, {"ring", x.ring().modulus()}};
    Json body = rep_body_to_json(x);
    j["modules"] = body["modules"];
    j["maps"] = body["maps"];
    return j;
}

Representation representation_from_json(const Json& j) {
    Quiver q = quiver_from_json(j.at("quiver"));
    RingSpec ring(j.at("ring").get<Residue>());
    return rep_body_from_json(q, ring, j);
}

Json morphism_to_json(const std::vector<ModuleMap>& components) {
    Json out = Json::array();
    for (const auto& f : components) out.push_back(matrix_to_json(f.matrix()));
    return out;
}

std::vector<ModuleMap> components_from_json(const Representation& source, const Representation& target,
                                            const Json& j) {
    if (j.size() != source.quiver().vertex_count()) throw std::invalid_argument("morphism json: wrong component count");
    std::vector<ModuleMap> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(module_map_from_json(source.module(i), target.module(i), j[i]));
    return out;
}

}  // namespace qrep
