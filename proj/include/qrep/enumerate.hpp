#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qrep/representation.hpp"

namespace qrep {

// Largest vertex-order bound accepted by the enumerators.
inline constexpr std::uint64_t kDefaultEnumerationCap = 64;

// Number of representations with every vertex module of order <= bound (product of |Hom| counts).
std::uint64_t count_reps(const Quiver& q, const RingSpec& ring, std::uint64_t max_vertex_order,
                         std::uint64_t cap = kDefaultEnumerationCap);

// Deterministic order: vertex modules vary slowest (mixed radix over modules_up_to, last vertex fastest),
// then arrow maps in hom_at order (last arrow fastest). Return false from fn to stop.
void for_each_rep(const Quiver& q, const RingSpec& ring, std::uint64_t max_vertex_order,
                  const std::function<bool(const Representation&)>& fn,
                  std::uint64_t cap = kDefaultEnumerationCap);

std::vector<Representation> enumerate_reps(const Quiver& q, const RingSpec& ring, std::uint64_t max_vertex_order,
                                           std::uint64_t cap = kDefaultEnumerationCap);

// Uniform module choice per vertex, then a uniform map per arrow.
Representation random_rep(const Quiver& q, const RingSpec& ring, std::uint64_t max_vertex_order,
                          std::mt19937_64& rng);

// Rejection sampling; throws after max_attempts failures.
Representation random_rep_where(const Quiver& q, const RingSpec& ring, std::uint64_t max_vertex_order,
                                std::mt19937_64& rng, const std::function<bool(const Representation&)>& accept,
                                std::size_t max_attempts = 100000);

}  // namespace qrep
