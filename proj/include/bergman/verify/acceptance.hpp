#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/commutant.hpp"
#include "bergman/commutator.hpp"
#include "bergman/functional_eq.hpp"
#include "bergman/kernel_quadrature.hpp"
#include "bergman/mellin.hpp"
#include "bergman/toeplitz.hpp"
#include "bergman/verify/corpus.hpp"
#include "bergman/verify/feasibility.hpp"

namespace bergman::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

struct AcceptanceConfig {
    std::uint64_t seed = 20240611;
};

namespace detail {

using Exact = GaussianRational;

inline Complex random_zeta(std::mt19937_64& rng, double re_lo, double re_hi, double im_span) {
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_span, im_span);
    return {re(rng), im(rng)};
}

/// Bounded profile: one to three terms c r^s with s in [0, 6].
inline RadialProfile<Complex> random_bounded_profile(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0), expo(0.0, 6.0);
    std::vector<ProfileTerm<Complex>> terms;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) terms.push_back({Complex(coeff(rng), coeff(rng)), expo(rng), 0});
    return RadialProfile<Complex>(std::move(terms));
}

/// Lower bound for sup |phi| on [0, 1) from a uniform grid including both ends.
inline double sampled_sup(const RadialProfile<Complex>& phi, int points = 4001) {
    double sup = 0.0;
    for (int i = 0; i < points; ++i) sup = std::max(sup, std::abs(phi(static_cast<double>(i) / (points - 1))));
    return sup;
}

template <class F>
CriterionResult timed(int id, std::string name, double limit, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.limit_seconds = limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::ostringstream detail;
        r.passed = body(detail);
        r.detail = detail.str();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > limit) {
        r.passed = false;
        r.detail += " (over the time limit)";
    }
    return r;
}

}  // namespace detail

inline CriterionResult square_identity() {
    return detail::timed(1, "square of T_{z+zbar} is a Toeplitz operator", 1.0, [](std::ostringstream& out) {
        using detail::Exact;
        const auto exact = verify_power_identity(corpus::z_plus_zbar_power<Exact>(1), 2,
                                                 corpus::square_of_z_plus_zbar<Exact>(), 64);
        const auto flt = verify_power_identity(corpus::z_plus_zbar_power<Complex>(1), 2,
                                               corpus::square_of_z_plus_zbar<Complex>(), 64);
        out << "exact residual " << (exact.is_zero() ? "0" : to_string(exact.value)) << " on window " << exact.window
            << ", float residual " << flt.max;
        return exact.is_zero() && flt.max < 1e-12;
    });
}

inline CriterionResult closed_forms(const AcceptanceConfig& cfg) {
    return detail::timed(2, "closed-form matrices match composed and kernel oracles", 30.0, [&](std::ostringstream& out) {
        using detail::Exact;
        constexpr int n = 64;
        int checks = 0, failures = 0;
        auto expect_zero = [&](const WindowResidual<Exact>& r) {
            ++checks;
            if (!r.is_zero()) ++failures;
        };
        for (int m = 1; m <= 6; ++m) {
            expect_zero(window_difference(zbar_power_matrix<Exact>(m, n), toeplitz_matrix(corpus::monomial<Exact>(-m), n)));
            for (int nz = 1; nz <= 6; ++nz)
                expect_zero(window_difference(commutator_monomials<Exact>(m, nz, n),
                                              commutator(corpus::monomial<Exact>(-m), corpus::monomial<Exact>(nz), n)));
        }
        for (int p = -6; p <= 6; ++p) {
            const double s = std::abs(p);
            const RadialProfile<Exact> phi({{Exact{1, 0}, s, 0}, {Exact{-2, 1}, s + 1, 1}, {Exact{3, 0}, s + 2, 2}});
            Symbol<Exact> g;
            g.add(-p, phi);
            for (int l = 1; l <= 6; ++l)
                expect_zero(window_difference(commutator_quasihomogeneous(phi, p, l, n),
                                              commutator(g, corpus::monomial<Exact>(l), n)));
        }
        out << checks - failures << "/" << checks << " exact identities";

        constexpr int small = 16;
        std::vector<Symbol<Complex>> symbols;
        for (int m = 1; m <= 6; ++m) symbols.push_back(corpus::monomial<Complex>(-m));
        symbols.push_back(corpus::modulus_squared<Complex>());
        symbols.push_back(corpus::square_of_z_plus_zbar<Complex>());
        symbols.push_back(corpus::z_plus_zbar_power<Complex>(2));
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<int> deg(-3, 3), expo(0, 4), logp(0, 2);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        for (int i = 0; i < 4; ++i) {
            Symbol<Complex> g;
            for (int t = 0; t < 3; ++t) {
                const int k = deg(rng);
                g += Symbol<Complex>::term(k, Complex(coeff(rng), coeff(rng)), std::abs(k) + expo(rng), logp(rng));
            }
            symbols.push_back(g);
        }
        double worst = 0.0;
        for (const auto& g : symbols) {
            const auto closed = toeplitz_matrix(g, small);
            const SymbolEvaluator eval = [&g](Complex z) { return g(z); };
            const auto columns = kernel_columns(eval, small, 1e-10);
            for (int j = 0; j < closed.window(); ++j)
                for (int i = 0; i < small; ++i)
                    worst = std::max(worst, std::abs(columns[j].coeffs[i] -
                                                     scalar_traits<Complex>::to_complex(closed.at(i, j))));
        }
        out << "; kernel oracle max deviation " << worst << " over " << symbols.size() << " symbols";
        return failures == 0 && worst < 1e-8;
    });
}

inline CriterionResult f_series(const AcceptanceConfig& cfg) {
    return detail::timed(3, "F series: telescoping case and difference equation", 5.0, [&](std::ostringstream& out) {
        std::mt19937_64 rng(cfg.seed + 3);
        double tele = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Complex zeta = detail::random_zeta(rng, 1e-3, 10.0, 10.0);
            tele = std::max(tele, std::abs(F_series(1, 1, 1, zeta) + 1.0 / (zeta + 1.0)));
        }
        double diff = 0.0;
        for (int m = 1; m <= 4; ++m)
            for (int n = 1; n <= 4; ++n)
                for (int l = 1; l <= 4; ++l) {
                    const auto G = GEvaluator::from_series(m, n, l, Complex{}, 0.0);
                    for (int i = 0; i < 100; ++i) {
                        const Complex zeta = detail::random_zeta(rng, 1e-3, 10.0, 10.0);
                        diff = std::max(diff, std::abs(difference_residual(m, n, l, zeta, G)));
                    }
                }
        out << "telescoping max error " << tele << ", difference residual max " << diff;
        return tele < 1e-10 && diff < 2e-10;
    });
}

inline CriterionResult classifier() {
    return detail::timed(4, "case classifier agrees with the window feasibility oracle", 60.0, [](std::ostringstream& out) {
        int cells = 0, agree = 0, exceptional = 0, exceptional_large_m = 0;
        std::string first_mismatch;
        for (int p = -6; p <= 6; ++p)
            for (int l = 1; l <= 6; ++l)
                for (int m = 1; m <= 6; ++m)
                    for (int n = 1; n <= 6; ++n) {
                        ++cells;
                        const auto verdict = classify_case(p, l, m, n);
                        const auto oracle = window_feasibility(p, l, m, n);
                        if ((verdict.kind != Case::impossible) == oracle.feasible) {
                            ++agree;
                        } else if (first_mismatch.empty()) {
                            first_mismatch = "(p, l, m, n) = (" + std::to_string(p) + ", " + std::to_string(l) + ", " +
                                             std::to_string(m) + ", " + std::to_string(n) + ")";
                        }
                        if (verdict.kind == Case::B || verdict.kind == Case::C) {
                            ++exceptional;
                            if (m > 2 || !verdict.unbounded_forced) ++exceptional_large_m;
                        }
                    }
        out << agree << "/" << cells << " cells agree, " << exceptional << " exceptional cells, "
            << exceptional_large_m << " with m > 2";
        if (!first_mismatch.empty()) out << ", first mismatch " << first_mismatch;
        return agree == cells && exceptional_large_m == 0;
    });
}

inline CriterionResult generic_commutant() {
    return detail::timed(5, "commutant of z + zbar^3 is span{1, f}", 60.0, [](std::ostringstream& out) {
        using detail::Exact;
        const auto f = corpus::z_plus_zbar_power<Exact>(3);
        const auto ansatz = Ansatz::standard(-8, 1);
        const auto a = solve_commutant(f, ansatz, 96);
        const auto b = solve_commutant(f, ansatz, 192);
        const bool spans = a.contains.size() >= 2 && a.contains[0].second.member && a.contains[1].second.member;
        out << "dimension " << a.dimension << " at n = 96, " << b.dimension << " at n = 192, "
            << (spans ? "contains 1 and f" : "missing 1 or f");
        return a.dimension == 2 && b.dimension == 2 && spans;
    });
}

namespace detail {

/// (T_f)^power lies in the span of the basis, with a nonzero weight on the last element.
inline bool power_in_span(const Symbol<Exact>& f, int power, const SolveReport<Exact>& rep, int n,
                          std::ostringstream& out) {
    const auto fit = fit_power_in_span(f, power, rep.basis, n);
    const bool uses_last = !fit.coeffs.empty() && !fit.coeffs.back().is_zero();
    out << "(T_f)^" << power << " residual " << (fit.residual.is_zero() ? "0" : to_string(fit.residual.value))
        << (uses_last ? "" : ", last element unused");
    return fit.residual.is_zero() && uses_last;
}

}  // namespace detail

inline CriterionResult exceptional_commutants() {
    return detail::timed(6, "low-m commutants: z + zbar and z + zbar^2", 120.0, [](std::ostringstream& out) {
        using detail::Exact;
        constexpr int n = 96;
        const auto f1 = corpus::z_plus_zbar_power<Exact>(1);
        const auto r1 = solve_commutant(f1, Ansatz::standard(-8, 3), n,
                                        1e-9, {{"g1", corpus::square_of_z_plus_zbar<Exact>()}});
        out << "z + zbar: dimension " << r1.dimension << ", ";
        bool ok = r1.dimension == 4;
        for (const auto& [name, m] : r1.contains) {
            if (!m.member) {
                ok = false;
                out << name << " missing, ";
            }
        }
        ok = detail::power_in_span(f1, 3, r1, n, out) && ok;

        const auto f2 = corpus::z_plus_zbar_power<Exact>(2);
        const auto r2 = solve_commutant(f2, Ansatz::standard(-8, 2), n);
        out << "; z + zbar^2: dimension " << r2.dimension << ", ";
        ok = ok && r2.dimension == 3 && r2.contains[0].second.member && r2.contains[1].second.member;
        ok = detail::power_in_span(f2, 2, r2, n, out) && ok;
        return ok;
    });
}

inline CriterionResult bounded_and_holomorphic() {
    return detail::timed(7, "bounded commutant of z + zbar and commutant of z^3", 60.0, [](std::ostringstream& out) {
        using detail::Exact;
        constexpr int n = 96;
        const auto bounded =
            solve_commutant(corpus::z_plus_zbar_power<Exact>(1), Ansatz::standard(-8, 3, -1, 8, 2, true), n);
        const auto cube = solve_commutant(corpus::monomial<Exact>(3), Ansatz::standard(-8, 3), n);
        int non_holomorphic = 0;
        for (const auto& g : cube.basis)
            if (!g.is_holomorphic()) ++non_holomorphic;
        out << "bounded z + zbar: dimension " << bounded.dimension << "; z^3: dimension " << cube.dimension << ", "
            << non_holomorphic << " non-holomorphic basis elements";
        return bounded.dimension == 2 && cube.dimension > 0 && non_holomorphic == 0;
    });
}

inline CriterionResult mellin_bound(const AcceptanceConfig& cfg) {
    return detail::timed(8, "Mellin transform bound for bounded profiles", 5.0, [&](std::ostringstream& out) {
        std::mt19937_64 rng(cfg.seed + 8);
        int violations = 0;
        double worst_ratio = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto phi = detail::random_bounded_profile(rng);
            const Complex zeta = detail::random_zeta(rng, 1e-3, 20.0, 20.0);
            const double lhs = std::abs(mellin_closed(phi, zeta));
            const double rhs = detail::sampled_sup(phi) / zeta.real();
            if (lhs > rhs) ++violations;
            if (rhs > 0.0) worst_ratio = std::max(worst_ratio, lhs / rhs);
        }
        out << violations << " violations in 200 samples, largest ratio " << worst_ratio;
        return violations == 0;
    });
}

inline std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg = {}) {
    return {square_identity(),  closed_forms(cfg),        f_series(cfg),
            classifier(),       generic_commutant(),      exceptional_commutants(),
            bounded_and_holomorphic(), mellin_bound(cfg)};
}

}  // namespace bergman::verify
