#include "qrep/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace qrep {

ModularMatrix::ModularMatrix(Residue modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
}

ModularMatrix::ModularMatrix(Residue modulus, const std::vector<std::vector<std::int64_t>>& rows)
    : ModularMatrix(modulus, rows.size(), rows.empty() ? 0 : rows.front().size()) {
    for (std::size_t r = 0; r < rows_; ++r) {
        if (rows[r].size() != cols_) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols_; ++c) data_[r * cols_ + c] = reduce_signed(rows[r][c], modulus);
    }
}

ModularMatrix ModularMatrix::identity(Residue modulus, std::size_t size) {
    ModularMatrix m(modulus, size, size);
    for (std::size_t i = 0; i < size; ++i) m.data_[i * size + i] = 1 % modulus;
    return m;
}

ModularMatrix ModularMatrix::from_rows(Residue modulus, std::size_t cols, const std::vector<Vector>& rows) {
    ModularMatrix m(modulus, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = rows[r][c] % modulus;
    }
    return m;
}

Vector ModularMatrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return Vector(s.begin(), s.end());
}

Vector ModularMatrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<Vector> ModularMatrix::row_list() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
    return out;
}

ModularMatrix ModularMatrix::transpose() const {
    ModularMatrix t(modulus_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
    return t;
}

ModularMatrix ModularMatrix::operator*(const ModularMatrix& other) const {
    if (cols_ != other.rows_ || modulus_ != other.modulus_)
        throw std::invalid_argument("matrix product: incompatible operands");
    ModularMatrix out(modulus_, rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            Residue a = data_[r * cols_ + k];
            if (a == 0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) {
                Residue& dst = out.data_[r * other.cols_ + c];
                dst = add_mod(dst, mul_mod(a, other.data_[k * other.cols_ + c], modulus_), modulus_);
            }
        }
    }
    return out;
}

ModularMatrix ModularMatrix::operator+(const ModularMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || modulus_ != other.modulus_)
        throw std::invalid_argument("matrix sum: incompatible operands");
    ModularMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = add_mod(data_[i], other.data_[i], modulus_);
    return out;
}

ModularMatrix ModularMatrix::operator-(const ModularMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || modulus_ != other.modulus_)
        throw std::invalid_argument("matrix difference: incompatible operands");
    ModularMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = sub_mod(data_[i], other.data_[i], modulus_);
    return out;
}

ModularMatrix ModularMatrix::scaled(Residue k) const {
    ModularMatrix out = *this;
    for (auto& v : out.data_) v = mul_mod(v, k % modulus_, modulus_);
    return out;
}

Vector ModularMatrix::apply(std::span<const Residue> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix apply: dimension mismatch");
    Vector y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Residue acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            acc = add_mod(acc, mul_mod(data_[r * cols_ + c], x[c] % modulus_, modulus_), modulus_);
        y[r] = acc;
    }
    return y;
}

ModularMatrix ModularMatrix::stacked(const ModularMatrix& below) const {
    if (cols_ != below.cols_ || modulus_ != below.modulus_)
        throw std::invalid_argument("vertical stack: column mismatch");
    ModularMatrix out(modulus_, rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

ModularMatrix ModularMatrix::joined(const ModularMatrix& right) const {
    if (rows_ != right.rows_ || modulus_ != right.modulus_)
        throw std::invalid_argument("horizontal join: row mismatch");
    ModularMatrix out(modulus_, rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.data_[r * out.cols_ + c] = (*this)(r, c);
        for (std::size_t c = 0; c < right.cols_; ++c) out.data_[r * out.cols_ + cols_ + c] = right(r, c);
    }
    return out;
}

ModularMatrix ModularMatrix::submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    if (r1 > rows_ || c1 > cols_ || r0 > r1 || c0 > c1) throw std::out_of_range("submatrix bounds");
    ModularMatrix out(modulus_, r1 - r0, c1 - c0);
    for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) out.data_[(r - r0) * out.cols_ + (c - c0)] = (*this)(r, c);
    return out;
}

bool ModularMatrix::is_zero() const {
    for (auto v : data_)
        if (v != 0) return false;
    return true;
}

std::string ModularMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ',';
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ',';
            os << (*this)(r, c);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace qrep
