#include "qrep/enumerate.hpp"

#include <stdexcept>

namespace qrep {

namespace {

std::vector<FiniteModule> candidate_modules(const RingSpec& ring, std::uint64_t bound, std::uint64_t cap) {
    if (bound > cap)
        throw std::invalid_argument("enumeration bound " + std::to_string(bound) + " exceeds cap " +
                                    std::to_string(cap));
    return modules_up_to(ring, bound);
}

// Advance a mixed-radix counter, last digit fastest; false on wrap-around.
bool advance(std::vector<std::uint64_t>& digits, const std::vector<std::uint64_t>& radix) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < radix[k]) return true;
        digits[k] = 0;
    }
    return false;
}

}  // namespace

std::uint64_t count_reps(const Quiver& q, const RingSpec& ring, std::uint64_t bound, std::uint64_t cap) {
    auto mods = candidate_modules(ring, bound, cap);
    std::vector<std::uint64_t> choice(q.vertex_count(), 0), radix(q.vertex_count(), mods.size());
    std::uint64_t total = 0;
    do {
        std::uint64_t prod = 1;
        for (const auto& a : q.arrows()) prod *= hom_count(mods[choice[a.source]], mods[choice[a.target]]);
        total += prod;
    } while (advance(choice, radix));
    return total;
}

void for_each_rep(const Quiver& q, const RingSpec& ring, std::uint64_t bound,
                  const std::function<bool(const Representation&)>& fn, std::uint64_t cap) {
    auto mods = candidate_modules(ring, bound, cap);
    const std::size_t nv = q.vertex_count(), na = q.arrow_count();
    std::vector<std::uint64_t> choice(nv, 0), radix(nv, mods.size());
    do {
        std::vector<FiniteModule> vm;
        for (auto c : choice) vm.push_back(mods[c]);
        std::vector<std::vector<ModuleMap>> options(na);
        std::vector<std::uint64_t> mr(na);
        for (std::size_t a = 0; a < na; ++a) {
            const auto& ar = q.arrow(a);
            for_each_hom(vm[ar.source], vm[ar.target], [&](const ModuleMap& f) {
                options[a].push_back(f);
                return true;
            });
            mr[a] = options[a].size();
        }
        std::vector<std::uint64_t> mc(na, 0);
        do {
            std::vector<ModuleMap> maps;
            for (std::size_t a = 0; a < na; ++a) maps.push_back(options[a][mc[a]]);
            if (!fn(Representation(q, ring, vm, maps))) return;
        } while (advance(mc, mr));
    } while (advance(choice, radix));
}

std::vector<Representation> enumerate_reps(const Quiver& q, const RingSpec& ring, std::uint64_t bound,
                                           std::uint64_t cap) {
    std::vector<Representation> out;
    for_each_rep(q, ring, bound, [&](const Representation& r) {
        out.push_back(r);
        return true;
    }, cap);
    return out;
}

Representation random_rep(const Quiver& q, const RingSpec& ring, std::uint64_t bound, std::mt19937_64& rng) {
    auto mods = candidate_modules(ring, bound, kDefaultEnumerationCap);
    std::vector<FiniteModule> vm;
    for (std::size_t i = 0; i < q.vertex_count(); ++i)
        vm.push_back(mods[std::uniform_int_distribution<std::size_t>(0, mods.size() - 1)(rng)]);
    std::vector<ModuleMap> maps;
    for (const auto& a : q.arrows()) {
        auto count = hom_count(vm[a.source], vm[a.target]);
        auto idx = std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng);
        maps.push_back(hom_at(vm[a.source], vm[a.target], idx));
    }
    return Representation(q, ring, vm, maps);
}

Representation random_rep_where(const Quiver& q, const RingSpec& ring, std::uint64_t bound, std::mt19937_64& rng,
                                const std::function<bool(const Representation&)>& accept,
                                std::size_t max_attempts) {
    for (std::size_t k = 0; k < max_attempts; ++k) {
        auto r = random_rep(q, ring, bound, rng);
        if (accept(r)) return r;
    }
    throw std::runtime_error("random_rep_where: no sample accepted");
}

}  // namespace qrep
