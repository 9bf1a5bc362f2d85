#include <gtest/gtest.h>

#include <random>

#include "bergman/sampled.hpp"
#include "bergman/symbol.hpp"
#include "bergman/verify/corpus.hpp"

namespace {

using namespace bergman;
using Exact = GaussianRational;
using Float = Complex;

RadialProfile<Exact> r_power(long c, double s, int q = 0) { return RadialProfile<Exact>::monomial(Exact(c), s, q); }

TEST(Profile, NormalizesAndMergesTerms) {
    const RadialProfile<Exact> p({{Exact(2), 1, 0}, {Exact(3), 0, 1}, {Exact(-2), 1, 0}, {Exact(1), 0, 1}});
    ASSERT_EQ(p.terms().size(), 1u);
    EXPECT_EQ(p.terms()[0].coeff, Exact(4));
    EXPECT_EQ(p.terms()[0].q, 1);
}

TEST(Profile, RejectsNonIntegrableExponentAndLogPower) {
    EXPECT_THROW(r_power(1, -2.0), DomainError);
    EXPECT_THROW(r_power(1, 1.0, 3), DomainError);
    EXPECT_NO_THROW(r_power(1, -1.5));
}

TEST(Profile, BoundednessFlag) {
    EXPECT_TRUE(r_power(1, 2).is_bounded());
    EXPECT_FALSE(r_power(1, 0, 1).is_bounded());
    EXPECT_FALSE(r_power(1, -1).is_bounded());
    EXPECT_TRUE(RadialProfile<Exact>().is_bounded());
}

TEST(Profile, Evaluation) {
    const RadialProfile<Float> p({{Float(1), 2, 0}, {Float(2), 0, 1}, {Float(1), 0, 0}});
    const double r = 0.3;
    EXPECT_NEAR(p(r).real(), r * r + 2 * std::log(r) + 1, 1e-15);
}

TEST(Harmonic, ZPlusZbar) {
    HarmonicSpec<Exact> spec{{Exact(0), Exact(1)}, 1, {Exact(1)}};
    const auto f = from_harmonic(spec);
    EXPECT_EQ(f, corpus::z_plus_zbar_power<Exact>(1));
    EXPECT_EQ(f.top_degree(), 1);
    EXPECT_EQ(f.bottom_degree(), -1);
}

TEST(Harmonic, ZPlusZbarSquared) {
    HarmonicSpec<Exact> spec{{Exact(0), Exact(1)}, 2, {Exact(1)}};
    const auto f = from_harmonic(spec);
    ASSERT_NE(f.profile(-2), nullptr);
    EXPECT_EQ(*f.profile(-2), r_power(1, 2));
    EXPECT_EQ(*f.profile(1), r_power(1, 1));
}

TEST(Harmonic, ConjugatesTheSecondPolynomial) {
    // z^2 + conj(z) conj(1 + i z) = z^2 + conj(z) - i conj(z)^2
    HarmonicSpec<Exact> spec{{Exact(0), Exact(0), Exact(1)}, 1, {Exact(1), Exact{0, 1}}};
    const auto f = from_harmonic(spec);
    EXPECT_EQ(*f.profile(2), r_power(1, 2));
    EXPECT_EQ(*f.profile(-1), r_power(1, 1));
    EXPECT_EQ(*f.profile(-2), RadialProfile<Exact>::monomial(Exact{0, -1}, 2));
}

TEST(Harmonic, RejectsInvalidSpecs) {
    EXPECT_THROW(from_harmonic(HarmonicSpec<Exact>{{Exact(0), Exact(1)}, 0, {Exact(1)}}), DomainError);
    EXPECT_THROW(from_harmonic(HarmonicSpec<Exact>{{Exact(3)}, 1, {Exact(1)}}), DomainError);
    EXPECT_THROW(from_harmonic(HarmonicSpec<Exact>{{Exact(0), Exact(1)}, 1, {Exact(0), Exact(1)}}), DomainError);
}

TEST(Combine, CancellationGivesZero) {
    const auto f = corpus::z_plus_zbar_power<Exact>(1);
    EXPECT_TRUE(linear_combine<Exact>({Exact(1), Exact(-1)}, {f, f}).is_zero());
}

TEST(Combine, MergesEqualDegrees) {
    const auto g = linear_combine<Exact>({Exact(2), Exact(3)},
                                         {Symbol<Exact>::constant(Exact(1)), corpus::modulus_squared<Exact>()});
    ASSERT_EQ(g.terms().size(), 1u);
    EXPECT_EQ(*g.profile(0), r_power(2, 0) + r_power(3, 2));
}

TEST(Combine, SquareMinusHolomorphicParts) {
    const auto g = corpus::square_of_z_plus_zbar<Exact>() - corpus::monomial<Exact>(2) - corpus::monomial<Exact>(-2);
    ASSERT_EQ(g.terms().size(), 1u);
    EXPECT_EQ(*g.profile(0), r_power(1, 2) + r_power(2, 0, 1) + r_power(1, 0));
}

TEST(Combine, LengthMismatchThrows) {
    EXPECT_THROW(linear_combine<Exact>({Exact(1)}, {}), DomainError);
}

TEST(Conjugate, Examples) {
    const auto f = corpus::z_plus_zbar_power<Exact>(1);
    EXPECT_EQ(conjugate(f), f);
    const auto g = Symbol<Exact>::term(2, Exact{0, 1}, 2);
    EXPECT_EQ(conjugate(g), Symbol<Exact>::term(-2, Exact{0, -1}, 2));
    const auto sq = corpus::square_of_z_plus_zbar<Exact>();
    EXPECT_EQ(conjugate(sq), sq);
}

TEST(Conjugate, IsAnInvolutionOnRandomSymbols) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> deg(-4, 4), num(-9, 9), expo(0, 5), logp(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        Symbol<Exact> g;
        for (int t = 0; t < 4; ++t) g += Symbol<Exact>::term(deg(rng), Exact{num(rng), num(rng)}, expo(rng), logp(rng));
        EXPECT_EQ(conjugate(conjugate(g)), g);
    }
}

TEST(Conjugate, MatchesPointwiseConjugation) {
    const auto g = symbol_cast<Float>(Symbol<Exact>::term(3, Exact{1, 2}, 3) + Symbol<Exact>::term(-1, Exact(5), 1, 1));
    const Complex z(0.3, -0.4);
    EXPECT_NEAR(std::abs(conjugate(g)(z) - std::conj(g(z))), 0.0, 1e-14);
}

TEST(Polar, SingleModeOfZPlusZbar) {
    const auto f = corpus::z_plus_zbar_power<Float>(1);
    const std::vector<double> radii{0.0, 0.25, 0.5, 0.9};
    const auto s = polar_coefficient([&](Complex z) { return f(z); }, 1, radii, 16);
    for (std::size_t i = 0; i < radii.size(); ++i) EXPECT_NEAR(std::abs(s.values[i] - radii[i]), 0.0, 1e-15);
}

TEST(Polar, RadialSymbolHasOnlyModeZero) {
    const auto g = corpus::modulus_squared<Float>();
    const std::vector<double> radii{0.1, 0.6};
    const auto zero = polar_coefficient([&](Complex z) { return g(z); }, 0, radii, 8);
    const auto one = polar_coefficient([&](Complex z) { return g(z); }, 1, radii, 8);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        EXPECT_NEAR(zero.values[i].real(), radii[i] * radii[i], 1e-15);
        EXPECT_NEAR(std::abs(one.values[i]), 0.0, 1e-15);
    }
}

TEST(Polar, RadialPartOfSquare) {
    const auto g = corpus::square_of_z_plus_zbar<Float>();
    const std::vector<double> radii{0.05, 0.5, 0.95};
    const auto s = polar_coefficient([&](Complex z) { return g(z); }, 0, radii, 32);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        EXPECT_NEAR(s.values[i].real(), r * r + 2 * std::log(r) + 1, 1e-13);
    }
}

TEST(Polar, RoundTripOnRandomSymbols) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(-5, 5), expo(0, 4);
    std::uniform_real_distribution<double> c(-1, 1);
    const std::vector<double> radii{0.2, 0.7};
    for (int trial = 0; trial < 20; ++trial) {
        Symbol<Float> g;
        for (int t = 0; t < 3; ++t) {
            const int k = deg(rng);
            g += Symbol<Float>::term(k, Complex(c(rng), c(rng)), std::abs(k) + expo(rng));
        }
        for (const auto& [k, phi] : g.terms()) {
            const auto s = polar_coefficient([&](Complex z) { return g(z); }, k, radii, 64);
            for (std::size_t i = 0; i < radii.size(); ++i) EXPECT_NEAR(std::abs(s.values[i] - phi(radii[i])), 0.0, 1e-12);
        }
    }
}

TEST(Polar, RejectsCoarseAngularGrid) {
    const std::vector<double> radii{0.5};
    EXPECT_THROW(polar_coefficient([](Complex z) { return z; }, 3, radii, 15), DomainError);
    EXPECT_THROW(polar_coefficient([](Complex z) { return z; }, 0, std::vector<double>{1.0}, 8), DomainError);
}

TEST(Symbol, DegreesAndBoundedness) {
    const auto g = corpus::square_of_z_plus_zbar<Exact>();
    EXPECT_EQ(g.top_degree(), 2);
    EXPECT_EQ(g.bottom_degree(), -2);
    EXPECT_FALSE(g.is_bounded());
    EXPECT_TRUE(corpus::z_plus_zbar_power<Exact>(3).is_bounded());
    EXPECT_THROW(Symbol<Exact>().top_degree(), DomainError);
    EXPECT_TRUE(corpus::monomial<Exact>(3).is_holomorphic());
    EXPECT_FALSE(corpus::modulus_squared<Exact>().is_holomorphic());
}

}  // namespace
