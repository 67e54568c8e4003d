#include "qrep/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qrep {
namespace {

// Bezout data for clearing y against x; plain elimination when x divides y.
Bezout elimination(std::int64_t x, std::int64_t y) {
    if (x != 0 && y % x == 0) return {x, 1, 0};
    return xgcd(x, y);
}

using Rows = std::vector<Vector>;

// Row operations applied to `a` and mirrored onto the optional companion `u`.
struct RowOps {
    Residue n;
    Rows& a;
    Rows* u;

    void swap(std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        if (u) std::swap((*u)[i], (*u)[j]);
    }

    static void scale_row(Vector& r, Residue k, Residue n) {
        for (auto& x : r) x = mul_mod(x, k, n);
    }

    static void axpy_row(Vector& dst, Residue k, const Vector& src, Residue n) {
        if (k == 0) return;
        for (std::size_t c = 0; c < dst.size(); ++c)
            if (src[c]) dst[c] = add_mod(dst[c], mul_mod(k, src[c], n), n);
    }

    void scale(std::size_t i, Residue k) {
        scale_row(a[i], k, n);
        if (u) scale_row((*u)[i], k, n);
    }

    // a[dst] += k * a[src]
    void axpy(std::size_t dst, Residue k, std::size_t src) {
        axpy_row(a[dst], k, a[src], n);
        if (u) axpy_row((*u)[dst], k, (*u)[src], n);
    }

    static void combine_rows(Vector& ri, Vector& rj, Residue s, Residue t, Residue p, Residue q, Residue n) {
        for (std::size_t c = 0; c < ri.size(); ++c) {
            Residue x = ri[c], y = rj[c];
            if (x == 0 && y == 0) continue;
            ri[c] = add_mod(mul_mod(s, x, n), mul_mod(t, y, n), n);
            rj[c] = add_mod(mul_mod(p, x, n), mul_mod(q, y, n), n);
        }
    }

    // Unimodular 2x2 transform making a[j][col] zero and a[i][col] the gcd.
    void combine(std::size_t i, std::size_t j, std::size_t col) {
        auto x = static_cast<std::int64_t>(a[i][col]);
        auto y = static_cast<std::int64_t>(a[j][col]);
        Bezout b = elimination(x, y);
        Residue s = reduce_signed(b.s, n), t = reduce_signed(b.t, n);
        Residue p = reduce_signed(-(y / b.g), n), q = reduce_signed(x / b.g, n);
        combine_rows(a[i], a[j], s, t, p, q, n);
        if (u) combine_rows((*u)[i], (*u)[j], s, t, p, q, n);
    }
};

// Reduced echelon form; returns pivot columns, zero rows end up at the bottom.
std::vector<std::size_t> echelonize(RowOps& ops, std::size_t ncols) {
    Rows& a = ops.a;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t piv = a.size();
        for (std::size_t i = r; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            if (piv == a.size()) {
                piv = i;
            } else {
                ops.combine(piv, i, c);
            }
        }
        if (piv == a.size()) continue;
        if (piv != r) ops.swap(piv, r);
        auto [unit, g] = unit_normalizer(a[r][c], ops.n);
        if (unit != 1) ops.scale(r, unit);
        for (std::size_t k = 0; k < r; ++k) {
            Residue q = a[k][c] / g;
            if (q) ops.axpy(k, neg_mod(q % ops.n, ops.n), r);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Greedy reduction of v against echelon rows [start, pivots.size()).
// Returns the first column where reduction got stuck (v.size() if v reduced to zero).
std::size_t reduce_against(const Rows& a, const std::vector<std::size_t>& pivots, std::size_t start, Vector& v,
                           Residue n, Vector* coef, const Rows* u) {
    std::size_t pos = 0;
    for (std::size_t j = start; j < pivots.size(); ++j) {
        std::size_t c = pivots[j];
        for (; pos < c; ++pos)
            if (v[pos]) return pos;
        Residue g = a[j][c];
        if (v[c] % g != 0) return c;
        Residue q = v[c] / g;
        if (q) {
            Residue k = neg_mod(q, n);
            RowOps::axpy_row(v, k, a[j], n);
            if (coef) RowOps::axpy_row(*coef, k, (*u)[j], n);
        }
        pos = c + 1;
    }
    for (; pos < v.size(); ++pos)
        if (v[pos]) return pos;
    return v.size();
}

constexpr int kMaxRounds = 1 << 20;

// Howell basis of the span of `a`, growing the row list as needed.
std::vector<std::size_t> howellize_growing(Rows& a, std::size_t ncols, Residue n) {
    RowOps ops{n, a, nullptr};
    for (int round = 0; round < kMaxRounds; ++round) {
        auto pivots = echelonize(ops, ncols);
        a.resize(pivots.size());
        bool changed = false;
        for (std::size_t i = 0; i < pivots.size() && !changed; ++i) {
            Residue g = a[i][pivots[i]];
            if (g == 1) continue;
            Vector s = a[i];
            RowOps::scale_row(s, n / g, n);
            if (reduce_against(a, pivots, i + 1, s, n, nullptr, nullptr) != s.size()) {
                a.push_back(std::move(s));
                changed = true;
            }
        }
        if (!changed) return pivots;
    }
    throw std::logic_error("Howell iteration did not terminate");
}

Rows to_rows(const ModularMatrix& m) { return m.row_list(); }

}  // namespace

HowellForm howell_form(const ModularMatrix& m) {
    const Residue n = m.modulus();
    const std::size_t size = std::max(m.rows(), m.cols());
    Rows a = to_rows(m);
    a.resize(size, Vector(m.cols(), 0));
    Rows u = ModularMatrix::identity(n, size).row_list();
    RowOps ops{n, a, &u};
    for (int round = 0; round < kMaxRounds; ++round) {
        auto pivots = echelonize(ops, m.cols());
        bool changed = false;
        for (std::size_t i = 0; i < pivots.size() && !changed; ++i) {
            Residue g = a[i][pivots[i]];
            if (g == 1) continue;
            Vector s = a[i];
            Vector coef = u[i];
            RowOps::scale_row(s, n / g, n);
            RowOps::scale_row(coef, n / g, n);
            std::size_t stuck = reduce_against(a, pivots, i + 1, s, n, &coef, &u);
            if (stuck == s.size()) continue;
            auto it = std::find(pivots.begin(), pivots.end(), stuck);
            std::size_t target;
            Residue k = 1;
            if (it != pivots.end()) {
                target = static_cast<std::size_t>(it - pivots.begin());
                k = stab(a[target][stuck], s[stuck], n);
                if (k == 0) k = 1;
            } else {
                target = pivots.size();  // first zero row; exists since a column lacks a pivot
            }
            RowOps::axpy_row(a[target], k, s, n);
            RowOps::axpy_row(u[target], k, coef, n);
            changed = true;
        }
        if (!changed) {
            return {ModularMatrix::from_rows(n, m.cols(), a), ModularMatrix::from_rows(n, size, u)};
        }
    }
    throw std::logic_error("Howell iteration did not terminate");
}

ModularMatrix howell_basis(const ModularMatrix& m) {
    Rows a = to_rows(m);
    howellize_growing(a, m.cols(), m.modulus());
    return ModularMatrix::from_rows(m.modulus(), m.cols(), a);
}

RowSpan::RowSpan(const ModularMatrix& generators) {
    Rows a = to_rows(generators);
    pivots_ = howellize_growing(a, generators.cols(), generators.modulus());
    basis_ = ModularMatrix::from_rows(generators.modulus(), generators.cols(), a);
}

Vector RowSpan::reduce(std::span<const Residue> v) const {
    if (v.size() != basis_.cols()) throw std::invalid_argument("RowSpan::reduce: dimension mismatch");
    Vector w(v.begin(), v.end());
    for (auto& x : w) x %= basis_.modulus();
    Rows a = basis_.row_list();
    // full reduction: keep going past stuck columns
    for (std::size_t j = 0; j < pivots_.size(); ++j) {
        std::size_t c = pivots_[j];
        Residue g = a[j][c];
        Residue q = w[c] / g;
        if (q) RowOps::axpy_row(w, neg_mod(q, basis_.modulus()), a[j], basis_.modulus());
    }
    return w;
}

bool RowSpan::contains(std::span<const Residue> v) const {
    Vector w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

bool RowSpan::contains_all(const RowSpan& other) const {
    for (std::size_t r = 0; r < other.basis_.rows(); ++r)
        if (!contains(other.basis_.row(r))) return false;
    return true;
}

LinearSystem::LinearSystem(const ModularMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), modulus_(a.modulus()) {
    ModularMatrix aug = a.transpose().joined(ModularMatrix::identity(modulus_, cols_));
    Rows h = to_rows(aug);
    pivots_ = howellize_growing(h, aug.cols(), modulus_);
    h_ = ModularMatrix::from_rows(modulus_, aug.cols(), h);
    std::vector<Vector> ker;
    for (std::size_t j = 0; j < pivots_.size(); ++j) {
        if (pivots_[j] < rows_) continue;
        auto row = h_.row(j);
        ker.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(rows_), row.end());
    }
    kernel_ = ModularMatrix::from_rows(modulus_, cols_, ker);
}

std::optional<Vector> LinearSystem::particular(std::span<const Residue> b) const {
    if (b.size() != rows_) throw std::invalid_argument("solve: dimension mismatch");
    Vector v(rows_ + cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = b[i] % modulus_;
    for (std::size_t j = 0; j < pivots_.size(); ++j) {
        std::size_t c = pivots_[j];
        if (c >= rows_) break;
        Residue g = h_(j, c);
        if (v[c] % g != 0) return std::nullopt;
        Residue q = v[c] / g;
        if (!q) continue;
        Residue k = neg_mod(q, modulus_);
        auto row = h_.row(j);
        for (std::size_t t = 0; t < v.size(); ++t)
            if (row[t]) v[t] = add_mod(v[t], mul_mod(k, row[t], modulus_), modulus_);
    }
    for (std::size_t i = 0; i < rows_; ++i)
        if (v[i]) return std::nullopt;
    Vector x(cols_);
    for (std::size_t j = 0; j < cols_; ++j) x[j] = neg_mod(v[rows_ + j], modulus_);
    return x;
}

ModularMatrix kernel(const ModularMatrix& a) { return LinearSystem(a).kernel(); }

std::optional<Solution> solve(const ModularMatrix& a, std::span<const Residue> b) {
    LinearSystem sys(a);
    auto x = sys.particular(b);
    if (!x) return std::nullopt;
    return Solution{std::move(*x), sys.kernel()};
}

SmithForm smith_form(const ModularMatrix& m) {
    const Residue n = m.modulus();
    const std::size_t R = m.rows(), C = m.cols();
    Rows a = to_rows(m);
    Rows q = ModularMatrix::identity(n, C).row_list();
    Rows qi = ModularMatrix::identity(n, C).row_list();

    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : q) std::swap(row[i], row[j]);
        std::swap(qi[i], qi[j]);
    };
    // Column op on (t, j) with the Bezout matrix; mirrors on q (columns) and q^-1 (rows).
    auto combine_cols = [&](std::size_t t, std::size_t j) {
        auto x = static_cast<std::int64_t>(a[t][t]);
        auto y = static_cast<std::int64_t>(a[t][j]);
        Bezout b = elimination(x, y);
        Residue s = reduce_signed(b.s, n), tt = reduce_signed(b.t, n);
        Residue p = reduce_signed(-(y / b.g), n), r = reduce_signed(x / b.g, n);
        auto apply_cols = [&](Rows& mat) {
            for (auto& row : mat) {
                Residue u = row[t], v = row[j];
                row[t] = add_mod(mul_mod(s, u, n), mul_mod(tt, v, n), n);
                row[j] = add_mod(mul_mod(p, u, n), mul_mod(r, v, n), n);
            }
        };
        apply_cols(a);
        apply_cols(q);
        // inverse acts on rows t, j: [[x/g, y/g], [-t, s]]
        Residue xg = reduce_signed(x / b.g, n), yg = reduce_signed(y / b.g, n);
        Residue mt = reduce_signed(-b.t, n);
        for (std::size_t c = 0; c < C; ++c) {
            Residue u = qi[t][c], v = qi[j][c];
            qi[t][c] = add_mod(mul_mod(xg, u, n), mul_mod(yg, v, n), n);
            qi[j][c] = add_mod(mul_mod(mt, u, n), mul_mod(s, v, n), n);
        }
    };
    RowOps rows{n, a, nullptr};

    Vector diag(C, n);
    const std::size_t lim = std::min(R, C);
    for (std::size_t t = 0; t < lim; ++t) {
        // pivot with the smallest ideal generator
        Residue best = n;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (a[i][j] == 0) continue;
                Residue g = ideal_generator(a[i][j], n);
                if (g < best) {
                    best = g;
                    bi = i;
                    bj = j;
                }
            }
        if (best == n) break;
        if (bi != t) rows.swap(bi, t);
        swap_cols(bj, t);
        for (int guard = 0;; ++guard) {
            if (guard > kMaxRounds) throw std::logic_error("Smith iteration did not terminate");
            auto [unit, g] = unit_normalizer(a[t][t], n);
            if (unit != 1) rows.scale(t, unit);
            for (std::size_t i = t + 1; i < R; ++i)
                if (a[i][t]) rows.combine(t, i, t);
            for (std::size_t j = t + 1; j < C; ++j)
                if (a[t][j]) combine_cols(t, j);
            bool col_clear = true;
            for (std::size_t i = t + 1; i < R; ++i)
                if (a[i][t]) col_clear = false;
            if (!col_clear) continue;
            Residue piv = ideal_generator(a[t][t], n);
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (a[i][j] % piv != 0) {
                        bad = i;
                        break;
                    }
            if (bad == R) {
                diag[t] = piv;
                break;
            }
            rows.axpy(t, 1, bad);
        }
    }
    return {diag, ModularMatrix::from_rows(n, C, q), ModularMatrix::from_rows(n, C, qi)};
}

}  // namespace qrep
