#pragma once

// Small builders shared by the representation-level tests.

#include <string>
#include <vector>

#include "qrep/representation.hpp"

namespace fixtures {

inline qrep::FiniteModule mod(const qrep::RingSpec& ring, const std::string& literal) {
    return qrep::FiniteModule(ring, qrep::parse_cyclic_literal(literal));
}

// Map given by its matrix in generator coordinates; an empty list gives the zero map.
inline qrep::ModuleMap map(const qrep::FiniteModule& s, const qrep::FiniteModule& t,
                           const std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty()) return qrep::ModuleMap::zero(s, t);
    return qrep::ModuleMap(s, t, qrep::ModularMatrix(s.modulus(), rows));
}

inline qrep::Representation rep(const qrep::Quiver& q, qrep::Residue n, const std::vector<std::string>& modules,
                                const std::vector<std::vector<std::vector<std::int64_t>>>& maps) {
    qrep::RingSpec ring(n);
    std::vector<qrep::FiniteModule> ms;
    for (const auto& m : modules) ms.push_back(mod(ring, m));
    std::vector<qrep::ModuleMap> fs;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        fs.push_back(map(ms[q.arrow(a).source], ms[q.arrow(a).target], maps.at(a)));
    return qrep::Representation(q, ring, ms, fs);
}

// Fork quiver over Z/4: X(1)=Z/2 -(x2)-> X(3)=Z/4 -(id)-> X(4)=Z/4, X(2)=0. C_3 = Z/2.
inline qrep::Representation fork_cokernel_z2() {
    return rep(qrep::fork_quiver(), 4, {"Z/2", "0", "Z/4", "Z/4"}, {{{2}}, {}, {{1}}});
}

// Fork quiver over Z/4: X(1)=Z/4, X(2)=Z/2, X(3)=Z/4 with a = id, b = x2; phi_3 not injective.
inline qrep::Representation fork_non_injective() {
    return rep(qrep::fork_quiver(), 4, {"Z/4", "Z/2", "Z/4", "Z/4"}, {{{1}}, {{2}}, {{1}}});
}

}  // namespace fixtures
