#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qrep/modular.hpp"

namespace qrep {

using Vector = std::vector<Residue>;

class ModularMatrix {
public:
    ModularMatrix() = default;
    ModularMatrix(Residue modulus, std::size_t rows, std::size_t cols);
    // Entries are reduced modulo `modulus`.
    ModularMatrix(Residue modulus, const std::vector<std::vector<std::int64_t>>& rows);

    static ModularMatrix identity(Residue modulus, std::size_t size);
    static ModularMatrix from_rows(Residue modulus, std::size_t cols, const std::vector<Vector>& rows);

    Residue modulus() const { return modulus_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = v % modulus_; }

    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    Vector column(std::size_t c) const;
    std::vector<Vector> row_list() const;

    ModularMatrix transpose() const;
    ModularMatrix operator*(const ModularMatrix& other) const;
    ModularMatrix operator+(const ModularMatrix& other) const;
    ModularMatrix operator-(const ModularMatrix& other) const;
    ModularMatrix scaled(Residue k) const;
    Vector apply(std::span<const Residue> x) const;

    // Stack vertically / horizontally.
    ModularMatrix stacked(const ModularMatrix& below) const;
    ModularMatrix joined(const ModularMatrix& right) const;
    ModularMatrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

    bool is_zero() const;
    bool operator==(const ModularMatrix& other) const = default;

    std::string to_string() const;

private:
    Residue modulus_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

}  // namespace qrep
