#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/scalar.hpp"

namespace bergman {

/// Black-box symbol on the unit disk.
using SymbolEvaluator = std::function<Complex(Complex)>;

/// Black-box radial profile, e.g. the output of polar_coefficient or a
/// function with no closed form.
struct SampledProfile {
    std::function<Complex(double)> eval;
    bool smooth = true;

    Complex operator()(double r) const { return eval(r); }
};

struct RadialSamples {
    std::vector<double> radii;
    std::vector<Complex> values;
};

/// k-th Fourier coefficient in theta, g_k(r) = (1/2pi) int g(r e^{it}) e^{-ikt} dt,
/// by the n_theta-point trapezoid rule.  Exact for trigonometric polynomials
/// whose aliases of degree k stay away, i.e. of degree < n_theta - |k|.
inline RadialSamples polar_coefficient(const SymbolEvaluator& g, int k, std::span<const double> r_grid,
                                       int n_theta) {
    if (n_theta < 4 * (std::abs(k) + 1))
        throw DomainError("polar_coefficient: n_theta must be at least 4(|k|+1) = " +
                          std::to_string(4 * (std::abs(k) + 1)));
    RadialSamples out;
    out.radii.assign(r_grid.begin(), r_grid.end());
    out.values.reserve(r_grid.size());
    const double h = 2.0 * std::numbers::pi / n_theta;
    for (double r : r_grid) {
        if (!(r >= 0.0 && r < 1.0)) throw DomainError("polar_coefficient: radius outside [0,1)");
        Complex acc{};
        for (int j = 0; j < n_theta; ++j) {
            const double t = j * h;
            const Complex v = g(std::polar(r, t));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("polar_coefficient: evaluator returned a non-finite value at r = " +
                                  std::to_string(r));
            acc += v * std::polar(1.0, -k * t);
        }
        out.values.push_back(acc / static_cast<double>(n_theta));
    }
    return out;
}

}  // namespace bergman
