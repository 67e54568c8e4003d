#include "qrep/module.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qrep/module_ops.hpp"

namespace qrep {

RingSpec::RingSpec(Residue modulus) : modulus_(modulus) {
    if (modulus < 2) throw std::invalid_argument("ring modulus must be at least 2");
    if (modulus > (Residue{1} << 62)) throw std::invalid_argument("ring modulus too large");
    factors_ = std::make_shared<const std::vector<PrimePower>>(factorize(modulus));
    family_ = RingFamily::semisimple;
    for (const auto& pp : *factors_)
        if (pp.exponent > 1) family_ = RingFamily::quasi_frobenius;
}

std::string RingSpec::name() const { return "Z/" + std::to_string(modulus_); }

FiniteModule::FiniteModule(RingSpec ring, std::vector<Residue> invariants)
    : ring_(std::move(ring)), invariants_(std::move(invariants)) {
    for (std::size_t i = 0; i < invariants_.size(); ++i) {
        Residue d = invariants_[i];
        if (d <= 1 || ring_.modulus() % d != 0)
            throw std::invalid_argument("invariant factor " + std::to_string(d) + " does not divide " +
                                        ring_.name() + " or is trivial");
        if (i > 0 && d % invariants_[i - 1] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
}

FiniteModule FiniteModule::free(const RingSpec& ring, std::size_t rank) {
    return FiniteModule(ring, std::vector<Residue>(rank, ring.modulus()));
}

FiniteModule FiniteModule::cyclic(const RingSpec& ring, Residue d) {
    if (d == 1) return zero(ring);
    return FiniteModule(ring, {d});
}

std::uint64_t FiniteModule::order() const {
    std::uint64_t o = 1;
    for (auto d : invariants_) o *= d;
    return o;
}

Element FiniteModule::reduce(const Element& x) const {
    if (x.size() != rank()) throw std::invalid_argument("element has wrong length");
    Element y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] % invariants_[i];
    return y;
}

Element FiniteModule::generator(std::size_t i) const {
    Element e(rank(), 0);
    e.at(i) = 1;
    return e;
}

bool FiniteModule::is_element(const Element& x) const {
    if (x.size() != rank()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= invariants_[i]) return false;
    return true;
}

Element FiniteModule::add(const Element& x, const Element& y) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = (x[i] + y[i]) % invariants_[i];
    return z;
}

Element FiniteModule::sub(const Element& x, const Element& y) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = (x[i] + invariants_[i] - y[i]) % invariants_[i];
    return z;
}

Element FiniteModule::scale(Residue k, const Element& x) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mul_mod(k % invariants_[i], x[i], invariants_[i]);
    return z;
}

Element FiniteModule::element_at(std::uint64_t index) const {
    Element x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        x[i] = index % invariants_[i];
        index /= invariants_[i];
    }
    return x;
}

std::uint64_t FiniteModule::index_of(const Element& x) const {
    std::uint64_t idx = 0;
    for (std::size_t i = rank(); i-- > 0;) idx = idx * invariants_[i] + x[i];
    return idx;
}

std::string FiniteModule::to_string() const {
    if (invariants_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < invariants_.size(); ++i) {
        if (i) os << " + ";
        os << "Z/" << invariants_[i];
    }
    return os.str();
}

ModuleMap::ModuleMap(FiniteModule source, FiniteModule target, ModularMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (!(source_.ring() == target_.ring())) throw std::invalid_argument("module map: ring mismatch");
    const Residue n = source_.modulus();
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
        throw std::invalid_argument("module map: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                    std::to_string(matrix_.cols()) + ", expected " +
                                    std::to_string(target_.rank()) + "x" + std::to_string(source_.rank()));
    if (matrix_.modulus() != n) throw std::invalid_argument("module map: matrix modulus mismatch");
    for (std::size_t i = 0; i < target_.rank(); ++i) {
        Residue e = target_.factor(i);
        for (std::size_t j = 0; j < source_.rank(); ++j) {
            Residue v = matrix_(i, j) % e;
            if (mul_mod(source_.factor(j) % e, v, e) != 0)
                throw std::invalid_argument("module map is not well defined: generator " + std::to_string(j) +
                                            " of order " + std::to_string(source_.factor(j)) +
                                            " maps to an element of larger order");
            matrix_.set(i, j, v);
        }
    }
}

ModuleMap ModuleMap::zero(const FiniteModule& source, const FiniteModule& target) {
    return ModuleMap(source, target, ModularMatrix(source.modulus(), target.rank(), source.rank()));
}

ModuleMap ModuleMap::identity(const FiniteModule& m) {
    return ModuleMap(m, m, ModularMatrix::identity(m.modulus(), m.rank()));
}

ModuleMap ModuleMap::from_images(const FiniteModule& source, const FiniteModule& target,
                                 const std::vector<Element>& images) {
    if (images.size() != source.rank()) throw std::invalid_argument("module map: wrong number of images");
    ModularMatrix m(source.modulus(), target.rank(), source.rank());
    for (std::size_t j = 0; j < images.size(); ++j) {
        if (images[j].size() != target.rank()) throw std::invalid_argument("module map: image has wrong length");
        for (std::size_t i = 0; i < target.rank(); ++i) m.set(i, j, images[j][i]);
    }
    return ModuleMap(source, target, m);
}

Element ModuleMap::apply(const Element& x) const {
    if (x.size() != source_.rank()) throw std::invalid_argument("module map: argument has wrong length");
    Element y(target_.rank(), 0);
    for (std::size_t i = 0; i < target_.rank(); ++i) {
        Residue e = target_.factor(i);
        Residue acc = 0;
        for (std::size_t j = 0; j < source_.rank(); ++j)
            acc = (acc + mul_mod(matrix_(i, j), x[j] % source_.factor(j), e)) % e;
        y[i] = acc;
    }
    return y;
}

Element ModuleMap::image_of_generator(std::size_t j) const { return matrix_.column(j); }

ModuleMap ModuleMap::operator+(const ModuleMap& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_))
        throw std::invalid_argument("module map sum: mismatched modules");
    return ModuleMap(source_, target_, matrix_ + other.matrix_);
}

ModuleMap ModuleMap::operator-(const ModuleMap& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_))
        throw std::invalid_argument("module map difference: mismatched modules");
    return ModuleMap(source_, target_, matrix_ - other.matrix_);
}

ModuleMap ModuleMap::operator-() const { return scaled(source_.modulus() - 1); }

ModuleMap ModuleMap::scaled(Residue k) const { return ModuleMap(source_, target_, matrix_.scaled(k)); }

ModularMatrix ModuleMap::lifted_matrix() const {
    const Residue n = source_.modulus();
    ModularMatrix b(n, target_.rank(), source_.rank());
    for (std::size_t i = 0; i < target_.rank(); ++i) {
        Residue s = n / target_.factor(i);
        for (std::size_t j = 0; j < source_.rank(); ++j) b.set(i, j, mul_mod(s, matrix_(i, j), n));
    }
    return b;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (!(f.target() == g.source())) throw std::invalid_argument("compose: middle modules differ");
    return ModuleMap(f.source(), g.target(), g.matrix() * f.matrix());
}

bool ModuleSES::is_exact(const ModuleMap& f, const ModuleMap& g) {
    if (!(f.target() == g.source())) return false;
    if (!compose(g, f).is_zero()) return false;
    if (!is_injective(f) || !is_surjective(g)) return false;
    return f.source().order() * g.target().order() == f.target().order();
}

ModuleSES::ModuleSES(ModuleMap f, ModuleMap g) : f_(std::move(f)), g_(std::move(g)) {
    if (!is_exact(f_, g_)) throw std::invalid_argument("sequence is not short exact");
}

std::vector<Residue> parse_cyclic_literal(const std::string& text) {
    std::vector<Residue> out;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "0") return out;
    if (s.empty()) throw std::invalid_argument("empty module literal");
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t plus = s.find('+', pos);
        std::string term = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        if (term.size() < 3 || term[0] != 'Z' || term[1] != '/')
            throw std::invalid_argument("bad summand '" + term + "' (expected Z/d)");
        std::string body = term.substr(2);
        std::size_t caret = body.find('^');
        std::string dstr = body.substr(0, caret);
        std::size_t reps = 1;
        if (caret != std::string::npos) {
            std::string e = body.substr(caret + 1);
            if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("bad exponent in '" + term + "'");
            reps = std::stoul(e);
        }
        if (dstr.empty() || dstr.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad order in '" + term + "'");
        Residue d = std::stoull(dstr);
        if (d == 0) throw std::invalid_argument("summand order must be positive");
        for (std::size_t r = 0; r < reps; ++r) out.push_back(d);
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return out;
}

}  // namespace qrep
