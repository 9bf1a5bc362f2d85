#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/sampled.hpp"
#include "bergman/scalar.hpp"

namespace bergman {

struct KernelResult {
    std::vector<Complex> coeffs;
    double error_bound = 0.0;
    int n_theta = 0;
};

namespace detail {

/// Nodes and weights of the N-point Gauss-Legendre rule on [a, b].
template <unsigned N>
void gauss_rule(double a, double b, std::vector<double>& x, std::vector<double>& w) {
    using Rule = boost::math::quadrature::gauss<double, N>;
    const auto& ab = Rule::abscissa();
    const auto& wt = Rule::weights();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    x.clear();
    w.clear();
    for (std::size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0.0) {
            x.push_back(mid);
            w.push_back(wt[i] * half);
            continue;
        }
        x.push_back(mid - half * ab[i]);
        w.push_back(wt[i] * half);
        x.push_back(mid + half * ab[i]);
        w.push_back(wt[i] * half);
    }
}

/// Panels of (0, 1) graded geometrically toward both endpoints.
inline std::vector<std::pair<double, double>> graded_panels(int left_levels, int right_levels) {
    std::vector<std::pair<double, double>> panels;
    for (int i = left_levels; i >= 1; --i) panels.emplace_back(std::ldexp(1.0, -i - 1), std::ldexp(1.0, -i));
    for (int i = 1; i < right_levels; ++i) panels.emplace_back(1.0 - std::ldexp(1.0, -i), 1.0 - std::ldexp(1.0, -i - 1));
    panels.emplace_back(1.0 - std::ldexp(1.0, -right_levels), 1.0);
    return panels;
}

}  // namespace detail

namespace detail {

/// Angular Fourier coefficients c_q(r) = (1/2pi) int g(r e^{it}) e^{-iqt} dt,
/// q in [q_lo, q_hi], at every node of an N-point rule on each panel.
struct FourierSamples {
    std::vector<double> r, w;
    std::vector<std::vector<Complex>> c;  // c[node][q - q_lo]
};

template <unsigned N>
FourierSamples fourier_samples(const SymbolEvaluator& g, int q_lo, int q_hi, int n_theta,
                               const std::vector<std::pair<double, double>>& panels) {
    FourierSamples out;
    std::vector<double> x, w;
    const int width = q_hi - q_lo + 1;
    const double step = 2.0 * std::numbers::pi / n_theta;
    std::vector<Complex> values(n_theta);
    for (const auto& [a, b] : panels) {
        gauss_rule<N>(a, b, x, w);
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (int j = 0; j < n_theta; ++j) values[j] = g(std::polar(x[i], j * step));
            std::vector<Complex> c(width);
            for (int j = 0; j < n_theta; ++j) {
                const double t = j * step;
                const Complex rot = std::polar(1.0, -t);
                Complex phase = std::polar(1.0, -q_lo * t);
                for (int q = 0; q < width; ++q) {
                    c[q] += values[j] * phase;
                    phase *= rot;
                }
            }
            for (auto& v : c) v /= static_cast<double>(n_theta);
            out.r.push_back(x[i]);
            out.w.push_back(w[i]);
            out.c.push_back(std::move(c));
        }
    }
    return out;
}

/// Coefficient of z^k in P(g h) is 2(k+1) int_0^1 r^{k+1} sum_t h_t r^t c_{k-t}(r) dr.
inline std::vector<Complex> project(const FourierSamples& fs, int q_lo, std::span<const Complex> h, int n_out) {
    std::vector<Complex> out(n_out);
    for (std::size_t i = 0; i < fs.r.size(); ++i) {
        const double r = fs.r[i];
        double rk = r;  // r^{k+1}
        for (int k = 0; k < n_out; ++k) {
            Complex m{};
            double rt = 1.0;
            for (std::size_t t = 0; t < h.size(); ++t, rt *= r) {
                if (h[t] == Complex{}) continue;
                m += h[t] * rt * fs.c[i][k - static_cast<int>(t) - q_lo];
            }
            out[k] += fs.w[i] * 2.0 * (k + 1) * rk * m;
            rk *= r;
        }
    }
    return out;
}

/// Evaluates P(g h_j) for several polynomials at once, sharing the samples of g.
inline std::vector<KernelResult> kernel_batch(const SymbolEvaluator& g, const std::vector<std::vector<Complex>>& hs,
                                              int n_out, double tol) {
    if (!(tol > 0.0)) throw DomainError("apply_via_kernel: tol must be positive");
    if (n_out <= 0) throw DomainError("apply_via_kernel: n_out must be positive");
    std::size_t degree_h = 1;
    for (const auto& h : hs) degree_h = std::max(degree_h, h.size());
    const int q_lo = 1 - static_cast<int>(degree_h);
    const int q_hi = n_out - 1;
    int n_theta = 64;
    while (n_theta < 4 * (q_hi - q_lo + 1)) n_theta *= 2;
    const auto panels = graded_panels(60, 12);

    const auto coarse = fourier_samples<20>(g, q_lo, q_hi, n_theta, panels);
    const auto fine = fourier_samples<30>(g, q_lo, q_hi, n_theta, panels);
    const auto refined = fourier_samples<30>(g, q_lo, q_hi, 2 * n_theta, panels);

    std::vector<KernelResult> results;
    for (const auto& h : hs) {
        const auto a = project(coarse, q_lo, h, n_out);
        const auto b = project(fine, q_lo, h, n_out);
        auto c = project(refined, q_lo, h, n_out);
        double bound = 0.0;
        for (int k = 0; k < n_out; ++k) bound = std::max(bound, std::abs(b[k] - a[k]) + std::abs(c[k] - b[k]));
        if (!(bound <= tol))
            throw QuadratureFailure("apply_via_kernel: bound " + std::to_string(bound) + " exceeds tol " +
                                        std::to_string(tol),
                                    c.empty() ? Complex{} : c[0], bound);
        results.push_back({std::move(c), bound, 2 * n_theta});
    }
    return results;
}

}  // namespace detail

/// Monomial coefficients of P(g h), the Bergman projection of g times the
/// polynomial h, computed directly from the reproducing kernel.
///
/// Expanding (1 - conj(w) z)^{-2} = sum (k+1) conj(w)^k z^k, the coefficient of
/// z^k is (k+1) int_D g h conj(w)^k dA(w).  The angular integral is a trapezoid
/// sum (checked against one with twice the points), the radial one Gauss-Legendre
/// panels graded toward 0 and 1 with the 20/30-point difference as error estimate.
inline KernelResult apply_via_kernel(const SymbolEvaluator& g, std::span<const Complex> h_coeffs, int n_out,
                                     double tol) {
    return detail::kernel_batch(g, {std::vector<Complex>(h_coeffs.begin(), h_coeffs.end())}, n_out, tol).front();
}

/// Columns 0..n-1 of T_g in the monomial basis, i.e. P(g z^j) for j < n.
inline std::vector<KernelResult> kernel_columns(const SymbolEvaluator& g, int n, double tol) {
    std::vector<std::vector<Complex>> hs;
    for (int j = 0; j < n; ++j) {
        hs.emplace_back(j + 1);
        hs.back()[j] = 1.0;
    }
    return detail::kernel_batch(g, hs, n, tol);
}

}  // namespace bergman
