#pragma once

#include <algorithm>
#include <string>

#include "bergman/banded_matrix.hpp"
#include "bergman/error.hpp"
#include "bergman/mellin.hpp"
#include "bergman/symbol.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

enum class Verdict { commutes, violates };

inline const char* to_string(Verdict v) { return v == Verdict::commutes ? "commutes" : "violates"; }

template <Scalar S>
struct CommutatorReport {
    double residual_max = 0.0;
    int window = 0;
    Verdict verdict = Verdict::commutes;
    WindowResidual<S> witness;
    double tolerance = 0.0;
};

/// [A, B] = AB - BA; the window is the smaller of the two products'.
template <Scalar S>
BandedMatrix<S> commutator(const BandedMatrix<S>& a, const BandedMatrix<S>& b) {
    return compose(a, b) - compose(b, a);
}

template <Scalar S>
BandedMatrix<S> commutator(const Symbol<S>& g, const Symbol<S>& f, int n) {
    return commutator(toeplitz_matrix(g, n), toeplitz_matrix(f, n));
}

/// [T_{conj(z)^m}, T_{z^nz}] from its closed form.  On z^k the coefficient of
/// z^{k+nz-m} is
///   m nz / ((k+1)(k+nz+1))          for k >= m,
///   (k+nz-m+1) / (k+nz+1)          for m-nz <= k <= m-1,
///   0                               otherwise.
template <Scalar S>
BandedMatrix<S> commutator_monomials(int m, int nz, int size) {
    using T = scalar_traits<S>;
    if (m < 1 || nz < 1) throw DomainError("commutator_monomials: exponents must be >= 1");
    const int d = nz - m;
    BandedMatrix<S> out(size, size - std::max(0, d));
    for (int k = std::max(0, -d); k < size && k + d < size; ++k) {
        if (k >= m) {
            out.set(k + d, k, T::from_ratio(static_cast<long>(m) * nz, static_cast<long>(k + 1) * (k + nz + 1)));
        } else if (k >= m - nz) {
            out.set(k + d, k, T::from_ratio(k + nz - m + 1, k + nz + 1));
        }
    }
    out.prune();
    return out;
}

/// G(zeta) = (2 zeta - 2p + 2) * phi^(2 zeta - p + 2) at an integer point.
template <Scalar S>
S g_function(const RadialProfile<S>& phi, int p, long zeta) {
    using T = scalar_traits<S>;
    S v = T::from_int(2 * zeta - 2L * p + 2);
    if (T::is_zero(v)) return v;
    v *= mellin_closed(phi, T::from_int(2 * zeta - p + 2));
    return v;
}

/// [T_{phi(r) e^{-ip theta}}, T_{z^l}] from its closed form.  On z^k the
/// coefficient of z^{k+l-p} is
///   G(k+l) - G(k)   for k >= p,
///   G(k+l)          for p-l <= k <= p-1,
///   0               otherwise.
template <Scalar S>
BandedMatrix<S> commutator_quasihomogeneous(const RadialProfile<S>& phi, int p, int l, int size) {
    if (l < 1) throw DomainError("commutator_quasihomogeneous: l must be >= 1");
    const int d = l - p;
    BandedMatrix<S> out(size, size - std::max(0, d));
    if (phi.is_zero()) return out;
    for (int k = std::max(0, -d); k < size && k + d < size; ++k) {
        if (k >= p) {
            out.set(k + d, k, g_function(phi, p, k + l) - g_function(phi, p, k));
        } else if (k >= p - l) {
            out.set(k + d, k, g_function(phi, p, k + l));
        }
    }
    out.prune();
    return out;
}

/// Decides [T_g, T_f] = 0 on the exact window.  tol must be 0 in the exact
/// backend, where the verdict is an equality check.
template <Scalar S>
CommutatorReport<S> commutes(const BandedMatrix<S>& comm, double tol) {
    if (tol < 0.0) throw DomainError("commutes: tolerance must be non-negative");
    CommutatorReport<S> report;
    report.witness = max_entry(comm);
    report.window = comm.window();
    report.residual_max = report.witness.max;
    report.tolerance = tol;
    const bool ok = is_exact_v<S> ? report.witness.is_zero() : report.residual_max <= tol;
    report.verdict = ok ? Verdict::commutes : Verdict::violates;
    return report;
}

template <Scalar S>
CommutatorReport<S> commutes(const Symbol<S>& g, const Symbol<S>& f, int n, double tol) {
    return commutes(commutator(g, f, n), tol);
}

}  // namespace bergman
