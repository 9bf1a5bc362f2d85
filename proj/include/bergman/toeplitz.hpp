#pragma once

#include <algorithm>
#include <string>

#include "bergman/banded_matrix.hpp"
#include "bergman/error.hpp"
#include "bergman/mellin.hpp"
#include "bergman/scalar.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

/// Monomial coefficient of T_{phi(r) e^{-i p theta}} z^k = c * z^{k-p}, valid
/// for k >= max(0, p):  c = (2k - 2p + 2) * phi^(2k - p + 2).
template <Scalar S>
S toeplitz_coefficient(const RadialProfile<S>& phi, int p, int k) {
    using T = scalar_traits<S>;
    if (k < std::max(0, p)) return T::from_int(0);
    S c = T::from_int(2L * k - 2L * p + 2);
    c *= mellin_closed(phi, T::from_int(2L * k - p + 2));
    return c;
}

/// Truncated matrix of T_g.  The window excludes the columns pushed past
/// degree n-1 by the top degree of g.
template <Scalar S>
BandedMatrix<S> toeplitz_matrix(const Symbol<S>& g, int n) {
    const int top = g.is_zero() ? 0 : std::max(0, g.top_degree());
    BandedMatrix<S> out(n, n - top);
    for (const auto& [degree, phi] : g.terms()) {
        const int p = -degree;
        if constexpr (is_exact_v<S>) {
            if (!phi.has_integer_exponents())
                throw BackendError("exact backend requires integer exponents (degree " + std::to_string(degree) +
                                   ")");
        }
        for (int k = std::max(0, p); k < n && k - p < n; ++k) {
            try {
                out.set(k - p, k, toeplitz_coefficient(phi, p, k));
            } catch (const MellinDivergence& e) {
                throw MellinDivergence(std::string(e.what()) + " at degree " + std::to_string(degree) + ", column " +
                                       std::to_string(k));
            }
        }
    }
    out.prune();
    return out;
}

/// T_{conj(z)^m} from its dedicated formula: z^k maps to (k-m+1)/(k+1) z^{k-m}
/// for k >= m-1, and to 0 below.
template <Scalar S>
BandedMatrix<S> zbar_power_matrix(int m, int n) {
    using T = scalar_traits<S>;
    if (m < 0) throw DomainError("zbar_power_matrix: m must be non-negative");
    BandedMatrix<S> out(n, n);
    for (int k = std::max(0, m - 1); k < n; ++k)
        if (k - m >= 0) out.set(k - m, k, T::from_ratio(k - m + 1, k + 1));
    out.prune();
    return out;
}

/// T_{z^l}: the forward shift by l.
template <Scalar S>
BandedMatrix<S> z_power_matrix(int l, int n) {
    using T = scalar_traits<S>;
    if (l < 0) throw DomainError("z_power_matrix: l must be non-negative");
    BandedMatrix<S> out(n, n - l);
    for (int k = 0; k + l < n; ++k) out.set(k + l, k, T::from_int(1));
    return out;
}

/// (T_f)^power by repeated composition.
template <Scalar S>
BandedMatrix<S> toeplitz_power(const Symbol<S>& f, int power, int n) {
    if (power < 0) throw DomainError("toeplitz_power: negative power");
    const BandedMatrix<S> tf = toeplitz_matrix(f, n);
    BandedMatrix<S> out = BandedMatrix<S>::identity(n);
    for (int i = 0; i < power; ++i) out = compose(tf, out);
    return out;
}

}  // namespace bergman
