#include <gtest/gtest.h>

#include "bergman/commutant.hpp"
#include "bergman/verify/corpus.hpp"

namespace {

using namespace bergman;
using Exact = GaussianRational;
using Float = Complex;

TEST(System, HolomorphicSymbolsCommuteWithZ) {
    const auto f = corpus::monomial<Exact>(1);
    Ansatz a{0, 1, {{0, 0}, {1, 0}}, false};
    const auto sys = build_system(f, a, 16);
    const auto k = exact_nullspace(sys.matrix);
    auto contains = [&](const Symbol<Exact>& g) {
        const auto x = to_coordinates(sys.unknowns, g);
        if (!x) return false;
        for (const auto& v : multiply(sys.matrix, *x))
            if (!v.is_zero()) return false;
        return true;
    };
    EXPECT_TRUE(contains(Symbol<Exact>::constant(Exact(1))));
    EXPECT_TRUE(contains(corpus::monomial<Exact>(1)));
    EXPECT_GE(k.size(), 2u);
}

TEST(System, SquareSymbolRowsVanish) {
    const auto f = corpus::z_plus_zbar_power<Exact>(1);
    const auto sys = build_system(f, Ansatz::standard(-2, 2, 0, 2, 1), 32);
    const auto x = to_coordinates(sys.unknowns, corpus::square_of_z_plus_zbar<Exact>());
    ASSERT_TRUE(x.has_value());
    for (const auto& v : multiply(sys.matrix, *x)) EXPECT_TRUE(v.is_zero());
}

TEST(System, SizingErrorSuggestsLargerN) {
    try {
        (void)build_system(corpus::z_plus_zbar_power<Exact>(1), Ansatz::standard(-2, 6), 10);
        FAIL() << "expected a sizing error";
    } catch (const SizingError& e) {
        EXPECT_GE(e.suggested_size(), 14);
    }
}

TEST(System, AnsatzValidation) {
    EXPECT_THROW(Ansatz({2, 1, {{0, 0}}, false}).validate(), DomainError);
    EXPECT_THROW(Ansatz({0, 1, {{0, 0}, {0, 0}}, false}).validate(), DomainError);
    EXPECT_THROW(Ansatz({0, 1, {{-2, 0}}, false}).validate(), DomainError);
    EXPECT_THROW(Ansatz({0, 1, {{1, 1}}, true}).validate(), DomainError);
}

TEST(Solve, BoundedAnsatzForZPlusZbar) {
    const auto rep = solve_commutant(corpus::z_plus_zbar_power<Exact>(1), Ansatz::standard(-3, 3, 0, 4, 0, true), 48);
    EXPECT_EQ(rep.dimension, 2);
    EXPECT_TRUE(rep.warnings.empty());
}

TEST(Solve, ZPlusZbarCubedAndStability) {
    const auto ansatz = Ansatz::standard(-8, 1);
    const auto a = solve_commutant(corpus::z_plus_zbar_power<Exact>(3), ansatz, 96);
    EXPECT_EQ(a.dimension, 2);
    ASSERT_EQ(a.contains.size(), 2u);
    EXPECT_EQ(a.contains[0].first, "1");
    EXPECT_TRUE(a.contains[0].second.member);
    EXPECT_TRUE(a.contains[1].second.member);
    EXPECT_EQ(a.residual_max, 0.0);
}

TEST(Solve, ZPlusZbarHasFourDimensionalCommutant) {
    const auto f = corpus::z_plus_zbar_power<Exact>(1);
    const auto rep = solve_commutant(f, Ansatz::standard(-8, 3), 96, 1e-9,
                                     {{"g1", corpus::square_of_z_plus_zbar<Exact>()}});
    ASSERT_EQ(rep.dimension, 4);
    for (const auto& [name, m] : rep.contains) EXPECT_TRUE(m.member) << name;
    const auto fit = fit_power_in_span(f, 3, rep.basis, 96);
    EXPECT_TRUE(fit.residual.is_zero());
    for (const auto& g : rep.basis) EXPECT_EQ(commutes(g, f, 96, 0.0).verdict, Verdict::commutes);
}

TEST(Solve, ZPlusZbarSquaredHasThreeDimensionalCommutant) {
    const auto f = corpus::z_plus_zbar_power<Exact>(2);
    const auto rep = solve_commutant(f, Ansatz::standard(-8, 2), 96);
    ASSERT_EQ(rep.dimension, 3);
    const auto fit = fit_power_in_span(f, 2, rep.basis, 96);
    EXPECT_TRUE(fit.residual.is_zero());
    EXPECT_FALSE(fit.candidate.is_bounded());
}

TEST(Solve, CubeOfZHasHolomorphicCommutant) {
    const auto rep = solve_commutant(corpus::monomial<Exact>(3), Ansatz::standard(-8, 3), 96);
    EXPECT_EQ(rep.dimension, 4);
    for (const auto& g : rep.basis) EXPECT_TRUE(g.is_holomorphic());
}

TEST(Solve, TopCoefficientIsAMultipleOfZ) {
    // The highest-degree part of any solution commutes with T_z alone.
    const auto rep = solve_commutant(corpus::z_plus_zbar_power<Exact>(3), Ansatz::standard(-8, 1), 96);
    for (const auto& g : rep.basis) {
        const int top = g.top_degree();
        if (top <= 0) continue;
        Symbol<Exact> head;
        head.add(top, *g.profile(top));
        EXPECT_EQ(commutes(head, corpus::monomial<Exact>(1), 96, 0.0).verdict, Verdict::commutes);
    }
}

TEST(Solve, FloatBackendReportsItsDiagnostics) {
    const auto rep = solve_commutant(corpus::z_plus_zbar_power<Float>(1), Ansatz::standard(-2, 2, 0, 2, 0, true), 32);
    EXPECT_GE(rep.dimension, 2);
    EXPECT_TRUE(rep.contains[0].second.member);
    EXPECT_TRUE(rep.contains[1].second.member);
    EXPECT_LE(rep.residual_max, 1e-4);
}

TEST(Identity, SquareOfZPlusZbar) {
    const auto f = corpus::z_plus_zbar_power<Exact>(1);
    EXPECT_TRUE(verify_power_identity(f, 2, corpus::square_of_z_plus_zbar<Exact>(), 64).is_zero());
    const auto flt = verify_power_identity(corpus::z_plus_zbar_power<Float>(1), 2,
                                           corpus::square_of_z_plus_zbar<Float>(), 64);
    EXPECT_LT(flt.max, 1e-12);
}

TEST(Identity, SquareOfZ) {
    EXPECT_TRUE(verify_power_identity(corpus::monomial<Exact>(1), 2, corpus::monomial<Exact>(2), 32).is_zero());
}

TEST(Identity, DroppingTheLogTermShowsOnTheDiagonal) {
    const auto f = corpus::z_plus_zbar_power<Exact>(1);
    const auto candidate = corpus::monomial<Exact>(2) + corpus::monomial<Exact>(-2) + corpus::modulus_squared<Exact>();
    const auto r = verify_power_identity(f, 2, candidate, 64);
    ASSERT_FALSE(r.is_zero());
    EXPECT_EQ(r.row, r.col);
}

}  // namespace
