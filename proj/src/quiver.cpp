#include "qrep/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qrep {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_)
        if (!seen.insert(v).second) throw std::invalid_argument("duplicate vertex id '" + v + "'");
    std::set<std::string> seen_arrows;
    into_.assign(vertices_.size(), {});
    out_.assign(vertices_.size(), {});
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
        const auto& ar = arrows_[a];
        if (!seen_arrows.insert(ar.name).second) throw std::invalid_argument("duplicate arrow id '" + ar.name + "'");
        if (ar.source >= vertices_.size() || ar.target >= vertices_.size())
            throw std::invalid_argument("arrow '" + ar.name + "' has an undeclared endpoint");
        out_[ar.source].push_back(a);
        into_[ar.target].push_back(a);
    }
}

std::optional<std::size_t> Quiver::find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& name) const {
    for (std::size_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].name == name) return a;
    return std::nullopt;
}

std::size_t Quiver::vertex_index(const std::string& name) const {
    if (auto i = find_vertex(name)) return *i;
    throw std::invalid_argument("unknown vertex '" + name + "'");
}

std::size_t Quiver::arrow_index(const std::string& name) const {
    if (auto a = find_arrow(name)) return *a;
    throw std::invalid_argument("unknown arrow '" + name + "'");
}

std::string Quiver::to_text() const {
    std::ostringstream os;
    for (const auto& v : vertices_) os << "vertex " << v << '\n';
    for (const auto& a : arrows_) os << "arrow " << a.name << ' ' << vertices_[a.source] << ' ' << vertices_[a.target] << '\n';
    return os.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> words;
    std::string w;
    while (is >> w) words.push_back(w);
    return words;
}

}  // namespace

Quiver parse_quiver(const std::string& text) {
    struct PendingArrow {
        std::string name, source, target;
        std::size_t line;
    };
    std::vector<std::string> vertices;
    std::map<std::string, std::size_t> vertex_line;
    std::vector<PendingArrow> arrows;
    std::map<std::string, std::size_t> arrow_line;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto words = split_words(line);
        if (words.empty()) continue;
        if (words[0] == "vertex") {
            if (words.size() != 2) throw ParseError(lineno, "expected 'vertex <id>'");
            if (vertex_line.count(words[1]))
                throw ParseError(lineno, "duplicate vertex id '" + words[1] + "' (first declared on line " +
                                             std::to_string(vertex_line[words[1]]) + ")");
            vertex_line[words[1]] = lineno;
            vertices.push_back(words[1]);
        } else if (words[0] == "arrow") {
            if (words.size() != 4) throw ParseError(lineno, "expected 'arrow <id> <src> <dst>'");
            if (arrow_line.count(words[1]))
                throw ParseError(lineno, "duplicate arrow id '" + words[1] + "' (first declared on line " +
                                             std::to_string(arrow_line[words[1]]) + ")");
            arrow_line[words[1]] = lineno;
            arrows.push_back({words[1], words[2], words[3], lineno});
        } else {
            throw ParseError(lineno, "unknown directive '" + words[0] + "'");
        }
    }
    std::vector<Arrow> resolved;
    for (const auto& a : arrows) {
        auto find = [&](const std::string& v) {
            auto it = std::find(vertices.begin(), vertices.end(), v);
            if (it == vertices.end()) throw ParseError(a.line, "arrow '" + a.name + "' uses undeclared vertex '" + v + "'");
            return static_cast<std::size_t>(it - vertices.begin());
        };
        resolved.push_back({a.name, find(a.source), find(a.target)});
    }
    return Quiver(vertices, resolved);
}

VSequence v_sequence(const Quiver& q) {
    VSequence out;
    std::vector<bool> cur(q.vertex_count(), false);
    auto as_list = [&](const std::vector<bool>& s) {
        std::vector<std::size_t> l;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i]) l.push_back(i);
        return l;
    };
    out.sets.push_back({});
    while (true) {
        std::vector<bool> next(q.vertex_count(), true);
        for (const auto& a : q.arrows())
            if (!cur[a.source]) next[a.target] = false;
        if (next == cur && out.sets.size() >= 2) break;
        out.sets.push_back(as_list(next));
        cur = next;
    }
    out.lambda = out.sets.size() - 1;
    out.left_rooted = out.stable().size() == q.vertex_count();
    return out;
}

bool is_left_rooted(const Quiver& q) { return v_sequence(q).left_rooted; }

bool has_directed_cycle(const Quiver& q) {
    // Kahn's algorithm
    std::vector<std::size_t> indeg(q.vertex_count(), 0);
    for (const auto& a : q.arrows()) ++indeg[a.target];
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < q.vertex_count(); ++i)
        if (indeg[i] == 0) ready.push_back(i);
    std::size_t removed = 0;
    while (!ready.empty()) {
        std::size_t v = ready.back();
        ready.pop_back();
        ++removed;
        for (auto a : q.arrows_out_of(v))
            if (--indeg[q.arrow(a).target] == 0) ready.push_back(q.arrow(a).target);
    }
    return removed != q.vertex_count();
}

Quiver opposite(const Quiver& q) {
    std::vector<Arrow> arrows;
    for (const auto& a : q.arrows()) arrows.push_back({a.name, a.target, a.source});
    return Quiver(q.vertex_names(), arrows);
}

Quiver fork_quiver() { return Quiver({"1", "2", "3", "4"}, {{"a", 0, 2}, {"b", 1, 2}, {"c", 2, 3}}); }
Quiver a2_quiver() { return Quiver({"1", "2"}, {{"a", 0, 1}}); }
Quiver loop_quiver() { return Quiver({"1"}, {{"a", 0, 0}}); }
Quiver two_cycle_quiver() { return Quiver({"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}}); }

std::string Path::name(const Quiver& q) const {
    if (arrows.empty()) return "e" + q.vertex_name(source);
    std::string s;
    for (std::size_t k = arrows.size(); k-- > 0;) s += q.arrow(arrows[k]).name;
    return s;
}

PathRing::PathRing(const Quiver& q, const RingSpec& ring) : quiver_(q), ring_(ring) {
    if (has_directed_cycle(q)) throw std::invalid_argument("path ring: quiver has a directed cycle");
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        trivial_.push_back(basis_.size());
        basis_.push_back({i, i, {}});
    }
    arrow_.assign(q.arrow_count(), 0);
    // breadth-first by length
    std::size_t frontier_begin = 0, frontier_end = basis_.size();
    while (frontier_begin < frontier_end) {
        for (std::size_t p = frontier_begin; p < frontier_end; ++p) {
            for (auto a : q.arrows_out_of(basis_[p].target)) {
                Path np = basis_[p];
                np.arrows.push_back(a);
                np.target = q.arrow(a).target;
                if (np.arrows.size() == 1) arrow_[a] = basis_.size();
                basis_.push_back(std::move(np));
            }
        }
        frontier_begin = frontier_end;
        frontier_end = basis_.size();
    }
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
    for (std::size_t p = 0; p < basis_.size(); ++p) index[{basis_[p].source, basis_[p].arrows}] = p;
    table_.assign(basis_.size(), std::vector<std::optional<std::size_t>>(basis_.size()));
    for (std::size_t p = 0; p < basis_.size(); ++p)
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            // p * r = r then p
            if (basis_[r].target != basis_[p].source) continue;
            std::vector<std::size_t> arrows = basis_[r].arrows;
            arrows.insert(arrows.end(), basis_[p].arrows.begin(), basis_[p].arrows.end());
            table_[p][r] = index.at({basis_[r].source, arrows});
        }
}

std::vector<std::size_t> PathRing::paths_between(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < basis_.size(); ++p)
        if (basis_[p].source == i && basis_[p].target == j) out.push_back(p);
    return out;
}

bool PathRing::is_associative() const {
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b)
            for (std::size_t c = 0; c < size(); ++c) {
                std::optional<std::size_t> left, right;
                if (auto ab = table_[a][b]) left = table_[*ab][c];
                if (auto bc = table_[b][c]) right = table_[a][*bc];
                if (left != right) return false;
            }
    return true;
}

bool PathRing::has_identity() const {
    // sum of e_i acts as identity on both sides, and the e_i are orthogonal idempotents
    for (std::size_t p = 0; p < size(); ++p) {
        std::size_t left_hits = 0, right_hits = 0;
        for (std::size_t i = 0; i < quiver_.vertex_count(); ++i) {
            if (auto x = table_[trivial_[i]][p]) left_hits += (*x == p);
            if (auto x = table_[p][trivial_[i]]) right_hits += (*x == p);
        }
        if (left_hits != 1 || right_hits != 1) return false;
    }
    for (std::size_t i = 0; i < quiver_.vertex_count(); ++i)
        for (std::size_t j = 0; j < quiver_.vertex_count(); ++j) {
            auto x = table_[trivial_[i]][trivial_[j]];
            if (i == j ? (x != trivial_[i]) : x.has_value()) return false;
        }
    return true;
}

}  // namespace qrep
