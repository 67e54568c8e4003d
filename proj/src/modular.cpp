#include "qrep/modular.hpp"

#include <numeric>
#include <stdexcept>

namespace qrep {

Residue mul_mod(Residue a, Residue b, Residue n) {
    if (n <= (Residue{1} << 32)) return (a * b) % n;
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % n);
}

Residue add_mod(Residue a, Residue b, Residue n) {
    Residue s = a + b;
    if (s < a || s >= n) s -= n;
    return s;
}

Residue sub_mod(Residue a, Residue b, Residue n) {
    return a >= b ? a - b : a + (n - b);
}

Residue neg_mod(Residue a, Residue n) { return a == 0 ? 0 : n - a; }

Residue reduce_signed(std::int64_t a, Residue n) {
    auto nn = static_cast<std::int64_t>(n);
    std::int64_t r = a % nn;
    if (r < 0) r += nn;
    return static_cast<Residue>(r);
}

Residue ideal_generator(Residue a, Residue n) { return std::gcd(a % n, n); }

Bezout xgcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

Residue inverse_mod(Residue a, Residue n) {
    auto b = xgcd(static_cast<std::int64_t>(a % n), static_cast<std::int64_t>(n));
    if (b.g != 1) throw std::domain_error("inverse_mod: not a unit");
    return reduce_signed(b.s, n);
}

Residue stab(Residue a, Residue b, Residue n) {
    Residue g = std::gcd(std::gcd(a % n, b % n), n);
    if (g == n) return 0;
    Residue ap = (a % n) / g, np = n / g;
    // c = product of primes p | n' with p not dividing a'.
    Residue c = 1;
    for (const auto& pp : factorize(np)) {
        if (ap % pp.prime != 0) c *= pp.prime;
    }
    if (c == 1) return 0;
    return c % n;
}

std::pair<Residue, Residue> unit_normalizer(Residue a, Residue n) {
    a %= n;
    Residue g = std::gcd(a, n);
    if (a == 0) return {1, n};
    Residue np = n / g;
    Residue u0 = np == 1 ? 1 : inverse_mod(a / g, np);
    // lift u0 to a unit modulo n: u0 + k*np for suitable k
    Residue k = stab(u0, np, n);
    Residue u = add_mod(u0 % n, mul_mod(k, np, n), n);
    return {u, g};
}

std::vector<PrimePower> factorize(Residue n) {
    std::vector<PrimePower> out;
    for (Residue p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<Residue> divisors(Residue n) {
    std::vector<Residue> out;
    for (Residue d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

unsigned valuation(Residue p, Residue m) {
    unsigned v = 0;
    while (m != 0 && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

}  // namespace qrep
