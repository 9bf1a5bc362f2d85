#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "bergman/error.hpp"
#include "bergman/sampled.hpp"
#include "bergman/scalar.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

enum class MellinMode { analytic, quadrature };

inline const char* to_string(MellinMode m) { return m == MellinMode::analytic ? "analytic" : "quadrature"; }

struct MellinPoint {
    Complex zeta;
    Complex value;
    MellinMode mode = MellinMode::analytic;
    double error_bound = 0.0;
};

namespace detail {

inline double real_part(const Complex& z) { return z.real(); }
inline double real_part(const GaussianRational& z) { return z.re.get_d(); }

inline bool real_part_positive(const Complex& z) { return z.real() > 0.0; }
inline bool real_part_positive(const GaussianRational& z) { return sgn(z.re) > 0; }

}  // namespace detail

/// Mellin transform int_0^1 phi(r) r^{zeta-1} dr of a closed-form profile,
/// term by term: r^s (ln r)^q maps to (-1)^q q! / (zeta + s)^{q+1}.
///
/// In the exact backend every exponent must be an integer.
template <Scalar S>
S mellin_closed(const RadialProfile<S>& phi, const S& zeta) {
    using T = scalar_traits<S>;
    S total = T::from_int(0);
    for (const auto& t : phi.terms()) {
        S shifted = zeta;
        if constexpr (is_exact_v<S>) {
            if (t.s != std::floor(t.s))
                throw BackendError("exact Mellin transform needs integer exponents (got s = " + std::to_string(t.s) +
                                   ")");
            shifted += T::from_int(static_cast<long>(t.s));
        } else {
            shifted += Complex(t.s, 0.0);
        }
        if (!detail::real_part_positive(shifted))
            throw MellinDivergence("Mellin transform diverges: Re(zeta) + s = " +
                                   std::to_string(detail::real_part(shifted)) + " <= 0");
        static constexpr long factorial[] = {1, 1, 2};
        S term = T::from_int(t.q % 2 == 0 ? factorial[t.q] : -factorial[t.q]);
        term /= ipow(shifted, static_cast<unsigned>(t.q + 1));
        term *= t.coeff;
        total += term;
    }
    return total;
}

inline MellinPoint mellin_point(const RadialProfile<Complex>& phi, Complex zeta) {
    return {zeta, mellin_closed(phi, zeta), MellinMode::analytic, 0.0};
}

/// Mellin transform of a black-box profile by Gauss-Kronrod (7,15) on panels
/// graded geometrically toward r = 0 and r = 1.
///
/// The bound is the sum of the per-panel Kronrod-Gauss differences plus a
/// geometric extrapolation of the panels left out near r = 0.  Throws
/// QuadratureFailure, carrying the best estimate, if the bound exceeds tol.
inline MellinPoint mellin_quadrature(const SampledProfile& phi, Complex zeta, double tol = 1e-10) {
    if (!(tol > 0.0)) throw DomainError("mellin_quadrature: tol must be positive");
    if (!(zeta.real() >= 2.0))
        throw DomainError("mellin_quadrature: Re(zeta) must be >= 2 for a general L1 profile");
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const Complex e = zeta - 1.0;
    auto integrand = [&](double r) -> Complex {
        if (r <= 0.0) return {};
        return phi(r) * std::exp(e * std::log(r));
    };
    constexpr unsigned max_depth = 12;
    constexpr double panel_rel_tol = 1e-13;

    Complex value{};
    double bound = 0.0;
    // Bisects while the Kronrod-Gauss difference of a piece exceeds its share.
    auto adaptive = [&](auto&& self, double a, double b, unsigned depth, double& err) -> Complex {
        const Complex v = gauss_kronrod<double, 15>::integrate(integrand, a, b, 0, 0.0);
        const double e = std::abs(v - gauss<double, 7>::integrate(integrand, a, b));
        if (depth == 0 || e <= panel_rel_tol * std::abs(v) || e <= 1e-3 * tol * (b - a)) {
            err += e;
            return v;
        }
        const double mid = 0.5 * (a + b);
        return self(self, a, mid, depth - 1, err) + self(self, mid, b, depth - 1, err);
    };
    auto panel = [&](double a, double b) {
        double err = 0.0;
        const Complex v = adaptive(adaptive, a, b, max_depth, err);
        value += v;
        bound += err;
        return v;
    };

    // [1/2, 1) graded toward 1.
    constexpr int right_levels = 40;
    for (int i = 1; i < right_levels; ++i) panel(1.0 - std::ldexp(1.0, -i), 1.0 - std::ldexp(1.0, -i - 1));
    panel(1.0 - std::ldexp(1.0, -right_levels), 1.0);

    // (0, 1/2] graded toward 0 until the panel sums decay geometrically.
    constexpr int max_levels = 1000;
    double prev = 0.0;
    double ratio_hi = 0.0;
    int decaying = 0;
    bool converged = false;
    for (int i = 1; i <= max_levels; ++i) {
        const double mag = std::abs(panel(std::ldexp(1.0, -i - 1), std::ldexp(1.0, -i)));
        if (i > 1 && prev > 0.0) {
            const double ratio = mag / prev;
            if (ratio < 0.97) {
                ratio_hi = decaying == 0 ? ratio : std::max(ratio_hi, ratio);
                ++decaying;
            } else {
                decaying = 0;
            }
        }
        prev = mag;
        if (mag == 0.0 && i > 8) {
            converged = true;
            break;
        }
        if (i > 8 && decaying >= 3 && mag * ratio_hi / (1.0 - ratio_hi) < 1e-3 * tol) {
            bound += mag * ratio_hi / (1.0 - ratio_hi);
            converged = true;
            break;
        }
    }
    if (!converged || !(bound <= tol))
        throw QuadratureFailure("mellin_quadrature: no convergence to tol " + std::to_string(tol) + " (bound " +
                                    std::to_string(bound) + ")",
                                value, bound);
    return {zeta, value, MellinMode::quadrature, bound};
}

/// Quadrature over a closed-form profile, used to cross-check mellin_closed.
inline MellinPoint mellin_quadrature(const RadialProfile<Complex>& phi, Complex zeta, double tol = 1e-10) {
    return mellin_quadrature(SampledProfile{[&phi](double r) { return phi(r); }, true}, zeta, tol);
}

}  // namespace bergman
