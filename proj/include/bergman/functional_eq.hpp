#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/mellin.hpp"
#include "bergman/scalar.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

namespace detail {

/// Throws PoleError if zeta + j*l + shift = 0 for some j >= 0.
inline void check_pole(Complex zeta, int l, int shift) {
    if (zeta.imag() != 0.0) return;
    const double x = -(zeta.real() + shift);
    if (x < 0.0 || x != std::floor(x)) return;
    const long v = static_cast<long>(x);
    if (v % l == 0)
        throw PoleError("F series has a pole at zeta = " + to_string(zeta) + " (term j = " + std::to_string(v / l) +
                            ")",
                        v / l);
}

}  // namespace detail

/// F(zeta) = -sum_{j>=0} m n / ((zeta + j l + 1)(zeta + j l + n + 1)).
///
/// The first J terms are summed directly; the tail goes through Euler-Maclaurin
/// with four Bernoulli corrections.  Writing each term as m (u - v) with
/// u = 1/(A + x l), v = 1/(A + n + x l), A = zeta + 1, the remainder is bounded
/// by 2 zeta(8)/(2pi)^8 * 2m l^7 7! / (Re A + J l)^8, and J is chosen to push
/// that below tol/2.
inline Complex F_series(int m, int n, int l, Complex zeta, double tol = 1e-12) {
    if (m < 1 || n < 1 || l < 1) throw DomainError("F_series: m, n, l must be positive");
    if (!(tol > 0.0)) throw DomainError("F_series: tol must be positive");
    detail::check_pole(zeta, l, 1);
    detail::check_pole(zeta, l, n + 1);

    const Complex A = zeta + 1.0;
    const double mn = static_cast<double>(m) * n;
    constexpr int P = 4;
    constexpr double zeta8 = 1.0040773561979443;
    const double c_rem = 2.0 * zeta8 / std::pow(2.0 * std::numbers::pi, 2 * P) * 2.0 * m * std::pow(l, 2 * P - 1) *
                         5040.0;  // (2P-1)! = 7!
    // Need (Re A + J l)^8 >= c_rem / (tol/2), and Re A + J l >= 1.
    const double x_min = std::max({1.0, std::pow(2.0 * c_rem / tol, 1.0 / (2 * P)), 4.0 * l});
    long J = 0;
    if (A.real() < x_min) J = static_cast<long>(std::ceil((x_min - A.real()) / l));

    Complex head{};
    for (long j = 0; j < J; ++j) {
        const Complex a = A + static_cast<double>(j * l);
        head += mn / (a * (a + static_cast<double>(n)));
    }

    const Complex a = A + static_cast<double>(J * l);
    const Complex b = a + static_cast<double>(n);
    // integral of the tail: (m/l) log(1 + n/a)
    Complex tail = (static_cast<double>(m) / l) * std::log(1.0 + static_cast<double>(n) / a);
    tail += 0.5 * mn / (a * b);
    static constexpr std::array<double, P> bernoulli = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
    // r-th derivative of 1/(c + x l) at x = J is (-l)^r r! / (c + J l)^{r+1}.
    double fact = 1.0;  // (2k-1)!
    double two_k_fact = 2.0;
    for (int k = 1; k <= P; ++k) {
        const int r = 2 * k - 1;
        if (k > 1) {
            fact *= (r - 1) * r;
            two_k_fact *= (2.0 * k - 1) * (2.0 * k);
        }
        const double lr = -std::pow(static_cast<double>(l), r) * fact;  // (-l)^r r!, r odd
        const Complex deriv = static_cast<double>(m) * (lr / std::pow(a, r + 1) - lr / std::pow(b, r + 1));
        tail -= bernoulli[k - 1] / two_k_fact * deriv;
    }
    return -(head + tail);
}

/// Coefficient of z^{k+n-m} in [T_{conj(z)^m}, T_{z^n}] z^k.
inline double monomial_commutator_coefficient(int m, int n, int k) {
    if (k >= m) return static_cast<double>(m) * n / ((k + 1.0) * (k + n + 1.0));
    if (k >= m - n && k >= 0) return (k + n - m + 1.0) / (k + n + 1.0);
    return 0.0;
}

/// G(zeta) = (2 zeta - 2p + 2) phi^(2 zeta - p + 2) for a closed-form profile,
/// or c + F(zeta) when only the series form is known.
class GEvaluator {
public:
    static GEvaluator from_profile(RadialProfile<Complex> phi, int p) {
        GEvaluator g;
        g.p_ = p;
        g.profile_ = std::move(phi);
        g.min_re_ = p / 2.0;
        return g;
    }

    /// c + F_{m,n,l}; the domain is Re(zeta) >= min_re.
    static GEvaluator from_series(int m, int n, int l, Complex c, double min_re = -INFINITY, double tol = 1e-12) {
        GEvaluator g;
        g.series_ = SeriesParams{m, n, l, c, tol};
        g.min_re_ = min_re;
        return g;
    }

    int p() const { return p_; }
    double domain_min_re() const { return min_re_; }
    bool in_domain(Complex zeta) const { return zeta.real() >= min_re_; }
    bool has_profile() const { return profile_.has_value(); }

    Complex operator()(Complex zeta) const {
        if (!in_domain(zeta))
            throw DomainError("G evaluated outside its half-plane Re(zeta) >= " + std::to_string(min_re_));
        return unchecked(zeta);
    }

    /// Evaluates the defining formula wherever it converges, ignoring the domain.
    Complex unchecked(Complex zeta) const {
        if (profile_) {
            const Complex scale = 2.0 * zeta - 2.0 * p_ + 2.0;
            if (scale == Complex{}) return {};
            return scale * mellin_closed(*profile_, 2.0 * zeta - static_cast<double>(p_) + 2.0);
        }
        return series_->c + F_series(series_->m, series_->n, series_->l, zeta, series_->tol);
    }

private:
    struct SeriesParams {
        int m, n, l;
        Complex c;
        double tol;
    };

    int p_ = 0;
    double min_re_ = 0.0;
    std::optional<RadialProfile<Complex>> profile_;
    std::optional<SeriesParams> series_;
};

/// G(zeta + l) - G(zeta) - m n / ((zeta + 1)(zeta + n + 1)).
inline Complex difference_residual(int m, int n, int l, Complex zeta, const GEvaluator& g) {
    if (m < 1 || n < 1 || l < 1) throw DomainError("difference_residual: m, n, l must be positive");
    const Complex shifted = zeta + static_cast<double>(l);
    if (!g.in_domain(zeta) || !g.in_domain(shifted)) throw DomainError("difference_residual: zeta outside domain");
    return g(shifted) - g(zeta) - static_cast<double>(m) * n / ((zeta + 1.0) * (zeta + static_cast<double>(n) + 1.0));
}

enum class Case { A, B, C, impossible };

inline const char* to_string(Case c) {
    switch (c) {
        case Case::A: return "A";
        case Case::B: return "B";
        case Case::C: return "C";
        case Case::impossible: return "impossible";
    }
    return "?";
}

struct CaseVerdict {
    Case kind = Case::impossible;
    std::vector<std::string> constraints_used;
    bool unbounded_forced = false;
};

/// When can [T_{phi e^{-ip theta}}, T_{z^l}] equal [T_{conj(z)^m}, T_{z^n}]?
///
///   A: p = m and l = n
///   B: p in {0, 1} and m = p + 1   (phi unbounded)
///   C: p = -1 and m = 1            (phi unbounded)
///
/// Everything else is excluded, each exclusion tagged with the constraint that
/// rules it out.
inline CaseVerdict classify_case(int p, int l, int m, int n) {
    CaseVerdict v;
    auto& why = v.constraints_used;
    if (l < 1 || m < 1 || n < 1) {
        why.emplace_back("l, m, n must be positive integers");
        return v;
    }
    if (p - l != m - n) {
        why.emplace_back("p - l != m - n: the commutators shift degree by different amounts");
        return v;
    }
    why.emplace_back("p - l = m - n");
    if (p <= -2) {
        why.emplace_back("p <= -2: the pole of F at -1 lies in Re(zeta) >= p/2");
        return v;
    }
    why.emplace_back("p >= -1");
    if (p > m) {
        why.emplace_back("p > m: G would decrease from m+l-1 to m+l, but c + F is increasing");
        return v;
    }
    why.emplace_back("p <= m");
    if (p >= 2) {
        if (p == m) {
            why.emplace_back("p >= 2 and G(p-1) = 0 forces p = m");
            v.kind = Case::A;
        } else {
            why.emplace_back("2 <= p < m: G(p-1) = 0 contradicts the row k = p-1");
        }
        return v;
    }
    if (p == m) {  // p = m = 1
        why.emplace_back("p = m = 1, hence l = n");
        v.kind = Case::A;
        return v;
    }
    if (p >= 0) {
        if (m == p + 1) {
            why.emplace_back("p in {0,1}: the row k = p forces m = p + 1");
            v.kind = Case::B;
            v.unbounded_forced = true;
        } else {
            why.emplace_back("p in {0,1}: the row k = p forces m = p + 1, which fails");
        }
        return v;
    }
    if (m == 1) {
        why.emplace_back("p = -1: the row k = 0 forces m = 1");
        v.kind = Case::C;
        v.unbounded_forced = true;
    } else {
        why.emplace_back("p = -1: the row k = 0 forces m = 1, which fails");
    }
    return v;
}

/// Values of G on the integer grid pinned by the commutator equality.
struct GGrid {
    int p = 0, l = 1, m = 1, n = 1;
    Case kind = Case::impossible;
    double c = 0.0;
    /// For p <= 0 no boundary row fixes c; it is reported as 0.
    bool c_free = false;
    std::vector<std::pair<int, double>> values;

    /// c + F(t), continued to wherever the series converges.
    Complex continued(Complex t, double tol = 1e-12) const { return c + F_series(m, n, l, t, tol); }
};

inline GGrid solve_G_on_grid(int p, int l, int m, int n, int k_max, double tol = 1e-13) {
    const CaseVerdict verdict = classify_case(p, l, m, n);
    if (verdict.kind == Case::impossible)
        throw DomainError("solve_G_on_grid: (p, l, m, n) = (" + std::to_string(p) + ", " + std::to_string(l) + ", " +
                          std::to_string(m) + ", " + std::to_string(n) + ") admits no solution");
    GGrid grid{p, l, m, n, verdict.kind};
    auto F = [&](double x) { return F_series(m, n, l, Complex(x, 0.0), tol).real(); };
    if (p >= 2) {
        grid.c = -F(p - 1.0);  // G(p-1) = 0
    } else if (p == 1) {
        grid.c = monomial_commutator_coefficient(m, n, 0) - F(static_cast<double>(l));  // row k = 0: G(l)
    } else {
        grid.c_free = true;
    }
    for (int k = std::max(m, p); k <= k_max; ++k) grid.values.emplace_back(k, grid.c + F(k));
    return grid;
}

}  // namespace bergman
