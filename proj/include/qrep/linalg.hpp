#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qrep/matrix.hpp"

namespace qrep {

struct HowellForm {
    ModularMatrix h;  // max(rows, cols) rows; zero rows last
    ModularMatrix u;  // invertible, u * (m padded with zero rows) = h
};

HowellForm howell_form(const ModularMatrix& m);

// Nonzero rows of the Howell form (no transform).
ModularMatrix howell_basis(const ModularMatrix& m);

// Row span of a matrix, kept in Howell form for membership tests.
class RowSpan {
public:
    explicit RowSpan(const ModularMatrix& generators);

    const ModularMatrix& basis() const { return basis_; }
    Vector reduce(std::span<const Residue> v) const;
    bool contains(std::span<const Residue> v) const;
    bool contains_all(const RowSpan& other) const;
    bool operator==(const RowSpan& other) const { return basis_ == other.basis_; }

private:
    ModularMatrix basis_;
    std::vector<std::size_t> pivots_;
};

struct Solution {
    Vector particular;
    ModularMatrix kernel;  // rows generate {x : a x = 0}
};

// Solves a x = b for many right-hand sides against one factorization.
class LinearSystem {
public:
    explicit LinearSystem(const ModularMatrix& a);

    const ModularMatrix& kernel() const { return kernel_; }
    std::optional<Vector> particular(std::span<const Residue> b) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    Residue modulus_;
    ModularMatrix h_;
    std::vector<std::size_t> pivots_;
    ModularMatrix kernel_;
};

ModularMatrix kernel(const ModularMatrix& a);
std::optional<Solution> solve(const ModularMatrix& a, std::span<const Residue> b);

struct SmithForm {
    // gcd-normalized diagonal: entry t is a divisor of n (n means zero), length cols.
    Vector diagonal;
    ModularMatrix q;          // column transform, cols x cols
    ModularMatrix q_inverse;  // its inverse
};

// Column-tracked diagonalization: for some invertible p, p * m * q is diagonal
// with entries (up to units) `diagonal`, forming a divisibility chain.
SmithForm smith_form(const ModularMatrix& m);

}  // namespace qrep
