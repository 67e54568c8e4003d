#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "qrep/linalg.hpp"

using namespace qrep;

namespace {

bool is_invertible(const ModularMatrix& u) {
    return howell_basis(u) == ModularMatrix::identity(u.modulus(), u.rows());
}

}  // namespace

TEST(Howell, AlreadyCanonical) {
    auto hf = howell_form(ModularMatrix(4, {{2}}));
    EXPECT_EQ(hf.h, ModularMatrix(4, {{2}}));
    EXPECT_EQ(hf.u, ModularMatrix(4, {{1}}));
}

TEST(Howell, IdentityLedRow) {
    auto hf = howell_form(ModularMatrix(6, {{1, 1}, {0, 0}}));
    EXPECT_EQ(hf.h, ModularMatrix(6, {{1, 1}, {0, 0}}));
}

TEST(Howell, SpanOfTwoTwo) {
    ModularMatrix m(4, {{2, 2}});
    auto hf = howell_form(m);
    std::set<Vector> expected{{0, 0}, {2, 2}};
    EXPECT_EQ(brute::row_span(hf.h), expected);
    EXPECT_EQ(hf.u * m.stacked(ModularMatrix(4, 1, 2)), hf.h);
}

TEST(Howell, AddsAnnihilatorRow) {
    // (2,1) over Z/4 spans (0,2) too; the Howell form must list it.
    auto h = howell_basis(ModularMatrix(4, {{2, 1}}));
    EXPECT_EQ(h, ModularMatrix(4, {{2, 1}, {0, 2}}));
}

TEST(Howell, RandomSpanAndTransform) {
    std::mt19937_64 rng(11);
    for (Residue n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
            auto m = brute::random_matrix(rng, n, rows, cols);
            auto hf = howell_form(m);
            ModularMatrix padded = m;
            if (hf.h.rows() > m.rows()) padded = m.stacked(ModularMatrix(n, hf.h.rows() - m.rows(), cols));
            EXPECT_EQ(hf.u * padded, hf.h);
            EXPECT_TRUE(is_invertible(hf.u)) << m.to_string();
            EXPECT_EQ(brute::row_span(hf.h), brute::row_span(m)) << m.to_string();
            // canonical: nonzero rows agree with the growing algorithm
            std::vector<Vector> nz;
            for (std::size_t r = 0; r < hf.h.rows(); ++r)
                if (!std::all_of(hf.h.row(r).begin(), hf.h.row(r).end(), [](Residue x) { return x == 0; }))
                    nz.push_back(hf.h.row_vector(r));
            EXPECT_EQ(ModularMatrix::from_rows(n, cols, nz), howell_basis(m));
        }
    }
}

TEST(Howell, CanonicalUnderRowTransforms) {
    std::mt19937_64 rng(5);
    for (Residue n : {4u, 6u, 8u, 12u}) {
        for (int trial = 0; trial < 40; ++trial) {
            auto m = brute::random_matrix(rng, n, 3, 3);
            auto t = brute::random_matrix(rng, n, 3, 3);
            if (!is_invertible(t)) continue;
            EXPECT_EQ(howell_basis(t * m), howell_basis(m));
        }
    }
}

TEST(RowSpan, MembershipMatchesEnumeration) {
    std::mt19937_64 rng(3);
    for (Residue n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t cols = 1 + rng() % 3;
            auto m = brute::random_matrix(rng, n, 1 + rng() % 3, cols);
            RowSpan span(m);
            auto expected = brute::row_span(m);
            brute::for_each_vector(cols, n, [&](const Vector& v) {
                EXPECT_EQ(span.contains(v), expected.count(v) == 1);
            });
        }
    }
}

TEST(Solve, Examples) {
    auto s = solve(ModularMatrix(4, {{2}}), Vector{2});
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->particular[0] == 1 || s->particular[0] == 3);
    EXPECT_EQ(brute::row_span(s->kernel), (std::set<Vector>{{0}, {2}}));

    auto t = solve(ModularMatrix(5, {{1}}), Vector{0});
    ASSERT_TRUE(t);
    EXPECT_EQ(t->particular, Vector{0});
    EXPECT_EQ(brute::row_span(t->kernel), (std::set<Vector>{{0}}));

    EXPECT_FALSE(solve(ModularMatrix(4, {{2}}), Vector{1}));
    EXPECT_THROW(solve(ModularMatrix(4, {{2}}), Vector{1, 1}), std::invalid_argument);
}

TEST(Solve, AgreesWithBruteForce) {
    std::mt19937_64 rng(17);
    for (Residue n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
            auto a = brute::random_matrix(rng, n, rows, cols);
            Vector b(rows);
            for (auto& x : b) x = rng() % n;
            bool found = false;
            brute::for_each_vector(cols, n, [&](const Vector& x) {
                if (brute::mat_vec(a, x) == b) found = true;
            });
            auto s = solve(a, b);
            ASSERT_EQ(static_cast<bool>(s), found) << a.to_string();
            if (s) EXPECT_EQ(brute::mat_vec(a, s->particular), b);
        }
    }
}

TEST(Kernel, Examples) {
    auto k = kernel(ModularMatrix(4, {{2, 2}}));
    auto span = brute::row_span(k);
    EXPECT_TRUE(span.count({1, 1}));
    EXPECT_TRUE(span.count({2, 0}));
    std::set<Vector> expected;
    brute::for_each_vector(2, 4, [&](const Vector& v) {
        if ((v[0] + v[1]) % 2 == 0) expected.insert(v);
    });
    EXPECT_EQ(span, expected);

    EXPECT_EQ(kernel(ModularMatrix::identity(7, 3)).rows(), 0u);
    EXPECT_EQ(brute::row_span(kernel(ModularMatrix(4, 1, 1))), (std::set<Vector>{{0}, {1}, {2}, {3}}));
}

TEST(Kernel, AgreesWithBruteForce) {
    std::mt19937_64 rng(23);
    for (Residue n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
            auto a = brute::random_matrix(rng, n, rows, cols);
            auto k = kernel(a);
            for (std::size_t r = 0; r < k.rows(); ++r)
                EXPECT_EQ(brute::mat_vec(a, k.row_vector(r)), Vector(rows, 0));
            auto span = brute::row_span(k);
            brute::for_each_vector(cols, n, [&](const Vector& x) {
                if (brute::mat_vec(a, x) == Vector(rows, 0)) EXPECT_TRUE(span.count(x));
            });
        }
    }
}

TEST(Smith, ColumnTransformIsInverseAndDiagonalizes) {
    std::mt19937_64 rng(29);
    for (Residue n : {2u, 4u, 6u, 8u, 9u, 12u, 16u}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = rng() % 4, cols = 1 + rng() % 4;
            auto m = brute::random_matrix(rng, n, rows, cols);
            auto s = smith_form(m);
            EXPECT_EQ(s.q * s.q_inverse, ModularMatrix::identity(n, cols));
            for (std::size_t t = 0; t + 1 < cols; ++t) EXPECT_EQ(s.diagonal[t + 1] % s.diagonal[t], 0u);
            // m*q has columns whose span matches diag: compare quotient orders
            std::size_t order = 1;
            for (auto d : s.diagonal) order *= d;
            // |(Z/n)^cols / rowspan(m)| equals the product of the diagonal
            auto span = brute::span(m.row_list(), cols, n);
            std::size_t total = 1;
            for (std::size_t c = 0; c < cols; ++c) total *= n;
            if (total <= 70000) EXPECT_EQ(total / span.size(), order);
        }
    }
}
