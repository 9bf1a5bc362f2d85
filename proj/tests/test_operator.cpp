#include <gtest/gtest.h>

#include <random>

#include "bergman/banded_matrix.hpp"
#include "bergman/kernel_quadrature.hpp"
#include "bergman/toeplitz.hpp"
#include "bergman/verify/corpus.hpp"

namespace {

using namespace bergman;
using Exact = GaussianRational;
using Float = Complex;

Exact q(long a, long b = 1) { return Exact(make_rational(a, b)); }

Symbol<Exact> random_exact_symbol(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(-4, 3), num(-5, 5), expo(0, 3), logp(0, 2);
    Symbol<Exact> g;
    for (int t = 0; t < 4; ++t) {
        const int k = deg(rng);
        g += Symbol<Exact>::term(k, Exact{num(rng), num(rng)}, std::abs(k) + expo(rng), logp(rng));
    }
    return g;
}

TEST(Toeplitz, ZbarLowersWithHalf) {
    const auto t = toeplitz_matrix(corpus::monomial<Exact>(-1), 8);
    EXPECT_EQ(t.at(0, 1), q(1, 2));
    EXPECT_EQ(t.at(0, 0), q(0));
}

TEST(Toeplitz, ZbarSquaredKillsZ) {
    const auto t = toeplitz_matrix(corpus::monomial<Exact>(-2), 8);
    for (int i = 0; i < 8; ++i) EXPECT_EQ(t.at(i, 1), q(0));
    EXPECT_EQ(t.at(0, 2), q(1, 3));
}

TEST(Toeplitz, ModulusSquaredDiagonal) {
    const auto t = toeplitz_matrix(corpus::modulus_squared<Exact>(), 16);
    for (int k = 0; k < 16; ++k) EXPECT_EQ(t.at(k, k), q(k + 1, k + 2));
}

TEST(Toeplitz, ZIsTheShift) {
    const auto t = toeplitz_matrix(corpus::monomial<Exact>(1), 8);
    EXPECT_EQ(t.window(), 7);
    for (int k = 0; k < 7; ++k) EXPECT_EQ(t.at(k + 1, k), q(1));
    EXPECT_TRUE(window_difference(t, z_power_matrix<Exact>(1, 8)).is_zero());
}

TEST(Toeplitz, RadialRouteMatchesDedicatedZbarFormula) {
    for (int m = 0; m <= 8; ++m)
        for (int n : {8, 33, 128})
            EXPECT_TRUE(window_difference(zbar_power_matrix<Exact>(m, n),
                                          toeplitz_matrix(Symbol<Exact>::term(-m, Exact(1), m), n))
                            .is_zero())
                << "m = " << m << ", n = " << n;
}

TEST(Toeplitz, ErrorsSurface) {
    EXPECT_THROW(toeplitz_matrix(Symbol<Exact>::term(0, Exact(1), 0.5), 8), BackendError);
    EXPECT_THROW(toeplitz_matrix(Symbol<Float>::term(-3, Float(1), -2.5), 8), DomainError);
    EXPECT_NO_THROW(toeplitz_matrix(Symbol<Float>::term(-3, Float(1), -1.9), 8));
}

TEST(Kernel, ZbarOnZ) {
    const auto g = corpus::monomial<Float>(-1);
    const std::vector<Complex> h{0.0, 1.0};
    const auto r = apply_via_kernel([&](Complex z) { return g(z); }, h, 6, 1e-10);
    EXPECT_NEAR(std::abs(r.coeffs[0] - 0.5), 0.0, 1e-12);
    for (int k = 1; k < 6; ++k) EXPECT_NEAR(std::abs(r.coeffs[k]), 0.0, 1e-12);
    EXPECT_LE(r.error_bound, 1e-10);
}

TEST(Kernel, IdentityOnZCubed) {
    const std::vector<Complex> h{0.0, 0.0, 0.0, 1.0};
    const auto r = apply_via_kernel([](Complex) { return Complex(1.0, 0.0); }, h, 6, 1e-10);
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(r.coeffs[k] - (k == 3 ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(Kernel, SquareSymbolOnOne) {
    const auto g = corpus::square_of_z_plus_zbar<Float>();
    const std::vector<Complex> h{1.0};
    const auto r = apply_via_kernel([&](Complex z) { return g(z); }, h, 5, 1e-10);
    // Column 0 of (T_{z+zbar})^2: T_zbar T_z 1 = 1/2, T_z T_z 1 = z^2.
    const auto tf = toeplitz_matrix(corpus::z_plus_zbar_power<Float>(1), 8);
    const auto sq = compose(tf, tf);
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(std::abs(r.coeffs[k] - sq.at(k, 0)), 0.0, 1e-10);
    EXPECT_NEAR(r.coeffs[0].real(), 0.5, 1e-10);
    EXPECT_NEAR(r.coeffs[2].real(), 1.0, 1e-10);
}

TEST(Kernel, ColumnsMatchClosedForms) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 3; ++trial) {
        const auto g = symbol_cast<Float>(random_exact_symbol(rng));
        const auto closed = toeplitz_matrix(g, 12);
        const auto cols = kernel_columns([&](Complex z) { return g(z); }, 12, 1e-10);
        for (int j = 0; j < closed.window(); ++j)
            for (int i = 0; i < 12; ++i) EXPECT_LT(std::abs(cols[j].coeffs[i] - closed.at(i, j)), 1e-8);
    }
}

TEST(Compose, IdentityIsNeutral) {
    const auto a = toeplitz_matrix(corpus::square_of_z_plus_zbar<Exact>(), 20);
    const auto c = compose(BandedMatrix<Exact>::identity(20), a);
    EXPECT_EQ(c.window(), a.window());
    EXPECT_TRUE(window_difference(c, a).is_zero());
}

TEST(Compose, ShiftSquared) {
    const auto z = toeplitz_matrix(corpus::monomial<Exact>(1), 16);
    const auto z2 = compose(z, z);
    EXPECT_EQ(z2.window(), 14);
    EXPECT_TRUE(window_difference(z2, toeplitz_matrix(corpus::monomial<Exact>(2), 16)).is_zero());
}

TEST(Compose, SquareAtTheOrigin) {
    const auto tf = toeplitz_matrix(corpus::z_plus_zbar_power<Exact>(1), 16);
    const auto sq = compose(tf, tf);
    EXPECT_EQ(sq.at(0, 0), q(1, 2));
    EXPECT_EQ(sq.at(0, 0), toeplitz_matrix(corpus::square_of_z_plus_zbar<Exact>(), 16).at(0, 0));
}

TEST(Compose, WindowIsSoundUnderDoubling) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_exact_symbol(rng), b = random_exact_symbol(rng);
        const int n = 24;
        const auto small = compose(toeplitz_matrix(a, n), toeplitz_matrix(b, n));
        const auto large = compose(toeplitz_matrix(a, 2 * n), toeplitz_matrix(b, 2 * n));
        for (int j = 0; j < small.window(); ++j)
            for (int i = 0; i < n; ++i) EXPECT_EQ(small.at(i, j), large.at(i, j)) << "(" << i << ", " << j << ")";
    }
}

TEST(Adjoint, OfZIsZbar) {
    const int n = 16;
    const auto adj = adjoint(toeplitz_matrix(corpus::monomial<Exact>(1), n));
    EXPECT_TRUE(window_difference(adj, toeplitz_matrix(corpus::monomial<Exact>(-1), n)).is_zero());
}

TEST(Adjoint, IsAnInvolution) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = toeplitz_matrix(random_exact_symbol(rng), 20);
        const auto back = adjoint(adjoint(t));
        for (const auto& [d, vec] : t.diagonals()) {
            auto [lo, hi] = t.column_range(d);
            for (int j = lo; j < hi; ++j) EXPECT_EQ(back.at(j + d, j), vec[j]);
        }
    }
}

TEST(Adjoint, MatchesConjugateSymbol) {
    std::mt19937_64 rng(17);
    const int n = 24;
    const auto sq = corpus::square_of_z_plus_zbar<Exact>();
    EXPECT_TRUE(window_difference(adjoint(toeplitz_matrix(sq, n)), toeplitz_matrix(sq, n)).is_zero());
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = random_exact_symbol(rng);
        const auto adj = adjoint(toeplitz_matrix(g, n));
        const auto conj = toeplitz_matrix(conjugate(g), n);
        EXPECT_GT(std::min(adj.window(), conj.window()), 0);
        EXPECT_TRUE(window_difference(adj, conj).is_zero());
    }
}

TEST(Adjoint, OrthonormalEntriesAreConjugateTranspose) {
    const auto t = toeplitz_matrix(Symbol<Float>::term(2, Float(1, 2), 2, 1), 12);
    const auto a = adjoint(t);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
            EXPECT_NEAR(std::abs(orthonormal_entry(a, i, j) - std::conj(orthonormal_entry(t, j, i))), 0.0, 1e-15);
}

TEST(Banded, MaxEntryBreaksTiesLexicographically) {
    BandedMatrix<Exact> a(6, 6);
    a.set(3, 1, q(-2));
    a.set(1, 3, q(2));
    a.set(4, 4, q(1));
    const auto w = max_entry(a);
    EXPECT_EQ(w.row, 1);
    EXPECT_EQ(w.col, 3);
    EXPECT_DOUBLE_EQ(w.max, 2.0);
}

TEST(Banded, RejectsOutOfRange) {
    BandedMatrix<Exact> a(4, 4);
    EXPECT_THROW(a.set(4, 0, q(1)), DomainError);
}

}  // namespace
