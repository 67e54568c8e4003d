#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrep/module.hpp"

namespace qrep {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Arrow {
    std::string name;
    std::size_t source;
    std::size_t target;
    bool operator==(const Arrow&) const = default;
};

class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::string& vertex_name(std::size_t i) const { return vertices_.at(i); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    std::size_t vertex_index(const std::string& name) const;
    std::size_t arrow_index(const std::string& name) const;
    std::optional<std::size_t> find_vertex(const std::string& name) const;
    std::optional<std::size_t> find_arrow(const std::string& name) const;

    // Arrow indices in declaration order.
    const std::vector<std::size_t>& arrows_into(std::size_t i) const { return into_.at(i); }
    const std::vector<std::size_t>& arrows_out_of(std::size_t i) const { return out_.at(i); }

    std::string to_text() const;
    bool operator==(const Quiver& other) const {
        return vertices_ == other.vertices_ && arrows_ == other.arrows_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<std::size_t>> into_;
    std::vector<std::vector<std::size_t>> out_;
};

// `vertex <id>` and `arrow <id> <src> <dst>` lines; '#' starts a comment.
Quiver parse_quiver(const std::string& text);

struct VSequence {
    // V_0 .. V_lambda, lambda >= 1 least with V_lambda = V_{lambda+1}; sets hold sorted vertex indices.
    std::vector<std::vector<std::size_t>> sets;
    std::size_t lambda = 0;
    bool left_rooted = false;

    const std::vector<std::size_t>& stable() const { return sets.back(); }
};

VSequence v_sequence(const Quiver& q);
bool is_left_rooted(const Quiver& q);
bool has_directed_cycle(const Quiver& q);
Quiver opposite(const Quiver& q);

// 1 -> 3 <- 2, 3 -> 4 with arrows a, b, c.
Quiver fork_quiver();
// 1 -> 2 with arrow a.
Quiver a2_quiver();
Quiver loop_quiver();
Quiver two_cycle_quiver();

struct Path {
    std::size_t source;
    std::size_t target;
    std::vector<std::size_t> arrows;  // traversal order
    std::string name(const Quiver& q) const;
};

// Basis of all paths; p * q is "q then p" when t(q) = s(p), otherwise zero.
class PathRing {
public:
    PathRing(const Quiver& q, const RingSpec& ring);

    const Quiver& quiver() const { return quiver_; }
    const RingSpec& ring() const { return ring_; }
    const std::vector<Path>& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }
    std::size_t trivial(std::size_t vertex) const { return trivial_.at(vertex); }
    std::size_t arrow_path(std::size_t arrow) const { return arrow_.at(arrow); }
    std::optional<std::size_t> product(std::size_t p, std::size_t q) const { return table_[p][q]; }
    // Paths from i to j.
    std::vector<std::size_t> paths_between(std::size_t i, std::size_t j) const;

    bool is_associative() const;
    bool has_identity() const;

private:
    Quiver quiver_;
    RingSpec ring_;
    std::vector<Path> basis_;
    std::vector<std::size_t> trivial_;
    std::vector<std::size_t> arrow_;
    std::vector<std::vector<std::optional<std::size_t>>> table_;
};

}  // namespace qrep
