#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/scalar.hpp"

namespace bergman {

/// Column-major sparse matrix; each column lists (row, value) pairs.
template <class S>
struct SparseColumns {
    int rows = 0;
    std::vector<std::vector<std::pair<int, S>>> columns;

    int cols() const { return static_cast<int>(columns.size()); }
};

namespace modular {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
inline u64 add(u64 a, u64 b, u64 p) {
    const u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 pow(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1u) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1u;
    }
    return r;
}
inline u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }

inline u64 reduce(const mpz_class& z, u64 p) {
    static_assert(sizeof(unsigned long) == sizeof(u64), "needs 64-bit unsigned long");
    return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
}

/// q mod p, or nullopt when p divides the denominator.
inline std::optional<u64> reduce(const Rational& q, u64 p) {
    const u64 den = reduce(q.get_den(), p);
    if (den == 0) return std::nullopt;
    return mul(reduce(q.get_num(), p), inv(den, p), p);
}

/// Primes just below 2^62, in decreasing order.
inline const std::vector<u64>& primes() {
    static const std::vector<u64> list = [] {
        std::vector<u64> out;
        mpz_class candidate = (mpz_class(1) << 62) - 1;
        while (out.size() < 32) {
            if (mpz_probab_prime_p(candidate.get_mpz_t(), 40) > 0) out.push_back(candidate.get_ui());
            candidate -= 2;
        }
        return out;
    }();
    return list;
}

/// Smallest-magnitude fraction a/b congruent to u mod M with |a|, b <= sqrt(M/2).
inline std::optional<Rational> reconstruct(const mpz_class& u, const mpz_class& M) {
    mpz_class bound;
    mpz_class half = M / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = M, r1 = u % M;
    if (r1 < 0) r1 += M;
    mpz_class s0 = 0, s1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (s1 == 0 || abs(s1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational out(r1, s1);
    out.canonicalize();
    return out;
}

struct ModularKernel {
    std::vector<int> pivots;
    std::vector<std::vector<u64>> basis;  // one vector per free column
};

/// Kernel of a random row compression of A over F_p, in RREF normal form.
inline std::optional<ModularKernel> kernel_mod_p(const SparseColumns<Rational>& a, u64 p, std::uint64_t seed) {
    const int n_cols = a.cols();
    const bool compress = a.rows > n_cols + 8;
    const int n_rows = compress ? n_cols + 8 : a.rows;
    std::vector<std::vector<u64>> m(n_rows, std::vector<u64>(n_cols, 0));
    std::vector<std::vector<u64>> mix;
    if (compress) {
        std::mt19937_64 rng(seed ^ p);
        std::uniform_int_distribution<u64> dist(0, p - 1);
        mix.assign(n_rows, std::vector<u64>(a.rows));
        for (auto& row : mix)
            for (auto& v : row) v = dist(rng);
    }
    for (int c = 0; c < n_cols; ++c) {
        for (const auto& [r, q] : a.columns[c]) {
            const auto v = reduce(q, p);
            if (!v) return std::nullopt;
            if (*v == 0) continue;
            if (compress) {
                for (int i = 0; i < n_rows; ++i) m[i][c] = add(m[i][c], mul(mix[i][r], *v, p), p);
            } else {
                m[r][c] = add(m[r][c], *v, p);
            }
        }
    }
    ModularKernel out;
    int rank = 0;
    for (int c = 0; c < n_cols && rank < n_rows; ++c) {
        int piv = -1;
        for (int r = rank; r < n_rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        const u64 scale = inv(m[rank][c], p);
        for (int k = c; k < n_cols; ++k) m[rank][k] = mul(m[rank][k], scale, p);
        for (int r = 0; r < n_rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const u64 factor = m[r][c];
            for (int k = c; k < n_cols; ++k)
                if (m[rank][k] != 0) m[r][k] = sub(m[r][k], mul(factor, m[rank][k], p), p);
        }
        out.pivots.push_back(c);
        ++rank;
    }
    std::vector<char> is_pivot(n_cols, 0);
    for (int c : out.pivots) is_pivot[c] = 1;
    for (int f = 0; f < n_cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u64> x(n_cols, 0);
        x[f] = 1;
        for (int i = 0; i < rank; ++i) x[out.pivots[i]] = (p - m[i][f]) % p;
        out.basis.push_back(std::move(x));
    }
    return out;
}

}  // namespace modular

/// A * x over the rationals, for sparse A.
inline std::vector<Rational> multiply(const SparseColumns<Rational>& a, const std::vector<Rational>& x) {
    std::vector<Rational> y(a.rows);
    for (int c = 0; c < a.cols(); ++c) {
        if (sgn(x[c]) == 0) continue;
        for (const auto& [r, q] : a.columns[c]) y[r] += q * x[c];
    }
    return y;
}

template <Scalar S>
std::vector<S> multiply(const SparseColumns<S>& a, const std::vector<S>& x) {
    std::vector<S> y(a.rows, scalar_traits<S>::from_int(0));
    for (int c = 0; c < a.cols(); ++c) {
        if (scalar_traits<S>::is_zero(x[c])) continue;
        for (const auto& [r, q] : a.columns[c]) y[r] += q * x[c];
    }
    return y;
}

/// Exact rational null space.
///
/// The kernel is computed modulo several 62-bit primes after a random row
/// compression, lifted by CRT and rational reconstruction, and every lifted
/// vector is checked exactly against A.  Since rank mod p never exceeds the
/// rank over Q, exhibiting as many verified independent vectors as the
/// modular kernel dimension certifies the dimension.
inline std::vector<std::vector<Rational>> exact_nullspace(const SparseColumns<Rational>& a,
                                                          std::uint64_t seed = 0x5eed) {
    const int n_cols = a.cols();
    if (n_cols == 0) return {};
    const auto& primes = modular::primes();
    std::vector<int> pivots;
    std::vector<std::vector<mpz_class>> residues;
    mpz_class modulus = 1;
    int used = 0;
    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
        const modular::u64 p = primes[pi];
        auto k = modular::kernel_mod_p(a, p, seed + pi);
        if (!k) continue;
        if (used > 0 && k->pivots.size() < pivots.size()) continue;  // unlucky prime or compression
        if (used == 0 || k->pivots != pivots) {
            pivots = k->pivots;
            residues.assign(k->basis.size(), std::vector<mpz_class>(n_cols));
            for (std::size_t b = 0; b < k->basis.size(); ++b)
                for (int c = 0; c < n_cols; ++c) residues[b][c] = static_cast<unsigned long>(k->basis[b][c]);
            modulus = static_cast<unsigned long>(p);
            used = 1;
            if (k->basis.empty()) return {};
        } else {
            const modular::u64 m_inv = modular::inv(modular::reduce(modulus, p), p);
            for (std::size_t b = 0; b < k->basis.size(); ++b) {
                for (int c = 0; c < n_cols; ++c) {
                    const modular::u64 r1 = modular::reduce(residues[b][c], p);
                    const modular::u64 t = modular::mul(modular::sub(k->basis[b][c], r1, p), m_inv, p);
                    residues[b][c] += modulus * static_cast<unsigned long>(t);
                }
            }
            modulus *= static_cast<unsigned long>(p);
            ++used;
        }

        std::vector<std::vector<Rational>> lifted;
        bool ok = true;
        for (std::size_t b = 0; b < residues.size() && ok; ++b) {
            std::vector<Rational> x(n_cols);
            for (int c = 0; c < n_cols && ok; ++c) {
                auto q = modular::reconstruct(residues[b][c], modulus);
                if (!q) ok = false;
                else x[c] = std::move(*q);
            }
            if (ok) {
                const auto y = multiply(a, x);
                ok = std::all_of(y.begin(), y.end(), [](const Rational& v) { return sgn(v) == 0; });
            }
            if (ok) lifted.push_back(std::move(x));
        }
        if (ok) return lifted;
    }
    throw Error("exact_nullspace: rational reconstruction did not converge");
}

template <Scalar S>
S inner(const std::vector<S>& u, const std::vector<S>& v) {
    using T = scalar_traits<S>;
    S acc = T::from_int(0);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!T::is_zero(u[i]) && !T::is_zero(v[i])) acc += T::conj(u[i]) * v[i];
    return acc;
}

/// Gram-Schmidt over the candidates in order, skipping dependent ones, until
/// `limit` vectors are kept.  Exact in the exact backend; in floating point
/// a candidate is dependent when its residual is below rel_tol of its norm.
template <Scalar S>
std::vector<std::vector<S>> gram_schmidt(const std::vector<std::vector<S>>& candidates, std::size_t limit,
                                         double rel_tol = 1e-8) {
    using T = scalar_traits<S>;
    std::vector<std::vector<S>> basis;
    std::vector<S> norms;
    for (const auto& v : candidates) {
        if (basis.size() >= limit) break;
        std::vector<S> w = v;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const S coeff = inner(basis[i], w) / norms[i];
            if (T::is_zero(coeff)) continue;
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= coeff * basis[i][k];
        }
        const S nw = inner(w, w);
        bool independent;
        if constexpr (is_exact_v<S>) {
            independent = !T::is_zero(nw);
        } else {
            const double nv = std::sqrt(std::abs(inner(v, v)));
            independent = std::sqrt(std::abs(nw)) > rel_tol * nv;
        }
        if (!independent) continue;
        if constexpr (!is_exact_v<S>) {
            const double scale = 1.0 / std::sqrt(std::abs(nw));
            for (auto& x : w) x *= scale;
        }
        norms.push_back(is_exact_v<S> ? nw : T::from_int(1));
        basis.push_back(std::move(w));
    }
    return basis;
}

/// Solves a small dense square system by Gaussian elimination; pivots on the
/// first non-zero entry in exact arithmetic and on the largest in floating
/// point.  Returns nullopt if the matrix is singular.
template <Scalar S>
std::optional<std::vector<S>> solve_dense(std::vector<std::vector<S>> m, std::vector<S> rhs) {
    using T = scalar_traits<S>;
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        if constexpr (is_exact_v<S>) {
            for (std::size_t r = c; r < n; ++r)
                if (!T::is_zero(m[r][c])) {
                    piv = r;
                    break;
                }
        } else {
            double best = 0.0;
            for (std::size_t r = c; r < n; ++r)
                if (std::abs(m[r][c]) > best) {
                    best = std::abs(m[r][c]);
                    piv = r;
                }
        }
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[c]);
        std::swap(rhs[piv], rhs[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || T::is_zero(m[r][c])) continue;
            const S factor = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
            rhs[r] -= factor * rhs[c];
        }
    }
    for (std::size_t c = 0; c < n; ++c) rhs[c] /= m[c][c];
    return rhs;
}

/// Exact null space over Q(i).  Real systems go straight to exact_nullspace;
/// complex ones through the realification [[Re, -Im], [Im, Re]].
inline std::vector<std::vector<GaussianRational>> exact_nullspace(const SparseColumns<GaussianRational>& a) {
    const int n = a.cols();
    bool real = true;
    for (const auto& col : a.columns)
        for (const auto& [r, v] : col)
            if (!v.is_real()) real = false;
    std::vector<std::vector<GaussianRational>> out;
    if (real) {
        SparseColumns<Rational> re{a.rows, {}};
        re.columns.resize(n);
        for (int c = 0; c < n; ++c)
            for (const auto& [r, v] : a.columns[c]) re.columns[c].emplace_back(r, v.re);
        for (auto& x : exact_nullspace(re)) {
            std::vector<GaussianRational> z(n);
            for (int c = 0; c < n; ++c) z[c] = GaussianRational(std::move(x[c]));
            out.push_back(std::move(z));
        }
        return out;
    }
    SparseColumns<Rational> big{2 * a.rows, {}};
    big.columns.resize(2 * n);
    for (int c = 0; c < n; ++c) {
        for (const auto& [r, v] : a.columns[c]) {
            if (sgn(v.re) != 0) {
                big.columns[c].emplace_back(r, v.re);
                big.columns[n + c].emplace_back(a.rows + r, v.re);
            }
            if (sgn(v.im) != 0) {
                big.columns[c].emplace_back(a.rows + r, v.im);
                big.columns[n + c].emplace_back(r, -v.im);
            }
        }
    }
    std::vector<std::vector<GaussianRational>> candidates;
    for (auto& x : exact_nullspace(big)) {
        std::vector<GaussianRational> z(n);
        for (int c = 0; c < n; ++c) z[c] = GaussianRational(x[c], x[n + c]);
        candidates.push_back(std::move(z));
    }
    // The real kernel has twice the complex dimension; keep an independent half.
    return gram_schmidt(candidates, candidates.size() / 2);
}

/// Floating-point null space from the SVD: right singular vectors whose
/// singular value is below rel_tol * sigma_max.
struct FloatKernel {
    std::vector<std::vector<Complex>> basis;
    std::vector<double> singular_values;
    bool ill_conditioned = false;
    /// Smallest retained over largest discarded singular value; infinite when one side is empty.
    double gap = std::numeric_limits<double>::infinity();
};

inline FloatKernel float_nullspace(const SparseColumns<Complex>& a, double rel_tol) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(std::max(a.rows, 1), a.cols());
    for (int c = 0; c < a.cols(); ++c)
        for (const auto& [r, v] : a.columns[c]) m(r, c) += v;
    // Unit column norms; the kernel of A is D times the kernel of A D.
    // Columns at rounding level are treated as exact zeros.
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(a.cols());
    double largest = 0.0;
    for (int c = 0; c < a.cols(); ++c) largest = std::max(largest, m.col(c).norm());
    for (int c = 0; c < a.cols(); ++c) {
        const double norm = m.col(c).norm();
        if (norm <= 64.0 * std::numeric_limits<double>::epsilon() * largest) {
            m.col(c).setZero();
        } else {
            scale(c) = 1.0 / norm;
            m.col(c) *= scale(c);
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    FloatKernel out;
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    for (int i = 0; i < a.cols(); ++i) {
        const double s = i < sv.size() ? sv(i) : 0.0;
        out.singular_values.push_back(s);
        if (s >= rel_tol * smax && s <= 10.0 * rel_tol * smax) out.ill_conditioned = true;
        if (s < rel_tol * smax || smax == 0.0) {
            std::vector<Complex> v(a.cols());
            double vmax = 0.0;
            for (int k = 0; k < a.cols(); ++k) {
                v[k] = svd.matrixV()(k, i) * scale(k);
                vmax = std::max(vmax, std::abs(v[k]));
            }
            for (auto& x : v) x /= vmax;
            out.basis.push_back(std::move(v));
        }
    }
    double retained = 0.0, discarded = 0.0;
    for (double s : out.singular_values) {
        if (s >= rel_tol * smax) retained = s;
        else discarded = std::max(discarded, s);
    }
    if (retained > 0.0 && !out.basis.empty()) {
        out.gap = discarded > 0.0 ? retained / discarded : std::numeric_limits<double>::infinity();
        if (out.gap < 1e3) out.ill_conditioned = true;
    }
    return out;
}

}  // namespace bergman
