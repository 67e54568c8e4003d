#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qrep {

using Residue = std::uint64_t;

struct PrimePower {
    Residue prime;
    unsigned exponent;
    bool operator==(const PrimePower&) const = default;
};

Residue mul_mod(Residue a, Residue b, Residue n);
Residue add_mod(Residue a, Residue b, Residue n);
Residue sub_mod(Residue a, Residue b, Residue n);
Residue neg_mod(Residue a, Residue n);
Residue reduce_signed(std::int64_t a, Residue n);

// gcd(a, n) with gcd(0, n) = n.
Residue ideal_generator(Residue a, Residue n);

struct Bezout {
    std::int64_t g;
    std::int64_t s;
    std::int64_t t;
};
// s*a + t*b = g = gcd(a, b) over the integers.
Bezout xgcd(std::int64_t a, std::int64_t b);

Residue inverse_mod(Residue a, Residue n);

// Returns (u, g) with u a unit mod n and u*a = g mod n, g = gcd(a, n).
std::pair<Residue, Residue> unit_normalizer(Residue a, Residue n);

// Smallest c such that gcd(a + c*b, n) = gcd(a, b, n).
Residue stab(Residue a, Residue b, Residue n);

std::vector<PrimePower> factorize(Residue n);
std::vector<Residue> divisors(Residue n);
unsigned valuation(Residue p, Residue m);

}  // namespace qrep
