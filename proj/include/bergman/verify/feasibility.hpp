#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bergman/commutator.hpp"
#include "bergman/error.hpp"
#include "bergman/functional_eq.hpp"

namespace bergman::verify {

struct Feasibility {
    bool feasible = false;
    std::string reason;
    /// Constant c of G = c + F when it is pinned; empty when free or infeasible.
    std::optional<double> c;
};

/// Brute-force check of [T_{phi e^{-ip theta}}, T_{z^l}] = [T_{conj(z)^m}, T_{z^n}]
/// on the columns k = 0..rows-1.
///
/// G is taken in the form c + F on the integers of the closed half-plane
/// Re >= p/2, with c unknown.  Every column gives one linear equation a c + b = r
/// for the monomial coefficient.  A pole of F inside the half-plane, or an
/// inconsistent system, means no profile exists.
inline Feasibility window_feasibility(int p, int l, int m, int n, int rows = 40, double tol = 1e-9) {
    Feasibility out;
    if (l < 1 || m < 1 || n < 1) {
        out.reason = "non-positive exponent";
        return out;
    }
    const int d = n - m;
    const auto right_matrix = commutator_monomials<Complex>(m, n, rows + std::max(0, d) + 1);
    auto right = [&](int k) { return k + d < 0 ? 0.0 : right_matrix.at(k + d, k).real(); };
    if (l - p != n - m) {
        // The left side moves degrees by l - p, the right by n - m; both must vanish.
        for (int k = 0; k < rows; ++k) {
            if (right(k) != 0.0) {
                out.reason = "right side nonzero at column " + std::to_string(k) + " with a different offset";
                return out;
            }
        }
        out.feasible = true;
        out.reason = "both sides vanish";
        return out;
    }

    const double lo = p / 2.0;
    auto F = [&](int x) { return F_series(m, n, l, Complex(x, 0.0)).real(); };

    struct Row {
        double a, b, r;
    };
    std::vector<Row> eqs;
    try {
        for (int x = static_cast<int>(std::ceil(lo)); x <= rows + l + std::abs(p); ++x) (void)F(x);
        if (p >= 2) eqs.push_back({1.0, F(p - 1), 0.0});
        for (int k = std::max(0, p - l); k < rows; ++k) {
            const double r = right(k);
            if (k >= p) {
                eqs.push_back({0.0, F(k + l) - F(k), r});
            } else {
                eqs.push_back({1.0, F(k + l), r});
            }
        }
    } catch (const PoleError& e) {
        out.reason = std::string("pole inside the half-plane: ") + e.what();
        return out;
    }
    for (int k = 0; k < std::max(0, p - l) && k < rows; ++k) {
        if (right(k) != 0.0) {
            out.reason = "column " + std::to_string(k) + " is annihilated on the left but not on the right";
            return out;
        }
    }

    std::optional<double> c;
    for (const auto& e : eqs) {
        if (e.a == 0.0) {
            if (std::abs(e.b - e.r) > tol) {
                out.reason = "difference row inconsistent";
                return out;
            }
        } else if (!c) {
            c = (e.r - e.b) / e.a;
        } else if (std::abs(*c + e.b - e.r) > tol) {
            out.reason = "boundary rows pin c inconsistently";
            return out;
        }
    }
    out.feasible = true;
    out.c = c;
    out.reason = c ? "c pinned by a boundary row" : "c free";
    return out;
}

}  // namespace bergman::verify
