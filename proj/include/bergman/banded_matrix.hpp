#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/scalar.hpp"

namespace bergman {

/// Truncation of an operator on the Bergman space to span{1, z, ..., z^{n-1}},
/// stored by diagonal in the monomial basis.
///
/// Offset d holds, at column j, the coefficient of z^{j+d} in T(z^j).  Columns
/// 0..window-1 are exact columns of the untruncated operator; columns beyond
/// the window may have lost contributions from degrees >= n.
template <Scalar S>
class BandedMatrix {
public:
    using traits = scalar_traits<S>;

    BandedMatrix(int n, int window) : n_(n), window_(std::clamp(window, 0, n)) {
        if (n <= 0) throw DomainError("BandedMatrix size must be positive");
    }

    static BandedMatrix identity(int n) {
        BandedMatrix id(n, n);
        for (int j = 0; j < n; ++j) id.set(j, j, traits::from_int(1));
        return id;
    }

    int size() const { return n_; }
    int window() const { return window_; }
    void set_window(int w) { window_ = std::clamp(w, 0, n_); }
    const std::map<int, std::vector<S>>& diagonals() const { return diags_; }

    /// Largest upward shift of the degree, 0 if the operator never raises it.
    int raise() const { return diags_.empty() ? 0 : std::max(0, diags_.rbegin()->first); }
    /// Largest downward shift of the degree.
    int lower() const { return diags_.empty() ? 0 : std::max(0, -diags_.begin()->first); }

    S at(int row, int col) const {
        check_index(row, col);
        auto it = diags_.find(row - col);
        return it == diags_.end() ? traits::from_int(0) : it->second[col];
    }

    void set(int row, int col, S value) {
        check_index(row, col);
        const int d = row - col;
        auto it = diags_.find(d);
        if (it == diags_.end()) {
            if (traits::is_zero(value)) return;
            it = diags_.emplace(d, std::vector<S>(n_, traits::from_int(0))).first;
        }
        it->second[col] = std::move(value);
    }

    void add_to(int row, int col, const S& value) {
        if (traits::is_zero(value)) return;
        const int d = row - col;
        auto it = diags_.find(d);
        if (it == diags_.end()) it = diags_.emplace(d, std::vector<S>(n_, traits::from_int(0))).first;
        it->second[col] += value;
    }

    /// Drops diagonals whose entries are all zero.
    void prune() {
        std::erase_if(diags_, [](const auto& kv) {
            return std::all_of(kv.second.begin(), kv.second.end(), [](const S& v) { return traits::is_zero(v); });
        });
    }

    /// Column range [first, last) of valid entries on diagonal d.
    std::pair<int, int> column_range(int d) const { return {std::max(0, -d), std::min(n_, n_ - d)}; }

    BandedMatrix& operator+=(const BandedMatrix& o) { return axpy(traits::from_int(1), o); }
    BandedMatrix& operator-=(const BandedMatrix& o) { return axpy(traits::from_int(-1), o); }

    /// this += a * o; the window shrinks to the smaller of the two.
    BandedMatrix& axpy(const S& a, const BandedMatrix& o) {
        if (o.n_ != n_) throw DomainError("BandedMatrix size mismatch");
        for (const auto& [d, vec] : o.diags_) {
            auto [lo, hi] = column_range(d);
            for (int j = lo; j < hi; ++j)
                if (!traits::is_zero(vec[j])) add_to(j + d, j, a * vec[j]);
        }
        window_ = std::min(window_, o.window_);
        prune();
        return *this;
    }

    friend BandedMatrix operator+(BandedMatrix a, const BandedMatrix& b) { return a += b; }
    friend BandedMatrix operator-(BandedMatrix a, const BandedMatrix& b) { return a -= b; }

    BandedMatrix scaled(const S& a) const {
        BandedMatrix out(n_, window_);
        out.axpy(a, *this);
        return out;
    }

private:
    void check_index(int row, int col) const {
        if (row < 0 || row >= n_ || col < 0 || col >= n_)
            throw DomainError("BandedMatrix index (" + std::to_string(row) + "," + std::to_string(col) +
                              ") out of range for size " + std::to_string(n_));
    }

    int n_;
    int window_;
    std::map<int, std::vector<S>> diags_;
};

/// Product a*b.  Column j of the product is exact when column j of b is exact
/// and every row it reaches lies in the window of a.
template <Scalar S>
BandedMatrix<S> compose(const BandedMatrix<S>& a, const BandedMatrix<S>& b) {
    using T = scalar_traits<S>;
    const int n = a.size();
    if (b.size() != n) throw DomainError("compose: size mismatch");
    BandedMatrix<S> out(n, std::max(0, std::min(b.window(), a.window() - b.raise())));
    for (const auto& [d2, bv] : b.diagonals()) {
        auto [lo2, hi2] = b.column_range(d2);
        for (const auto& [d1, av] : a.diagonals()) {
            const int d = d1 + d2;
            const int lo = std::max(lo2, -d);
            const int hi = std::min(hi2, n - d);
            for (int j = lo; j < hi; ++j) {
                const S& x = bv[j];
                if (T::is_zero(x)) continue;
                const S& y = av[j + d2];
                if (T::is_zero(y)) continue;
                out.add_to(j + d, j, y * x);
            }
        }
    }
    out.prune();
    return out;
}

/// Hilbert-space adjoint.  In the monomial basis ||z^k||^2 = 1/(k+1), so the
/// entry at (i, j) becomes conj(a_ij) * (j+1)/(i+1) at (j, i).
template <Scalar S>
BandedMatrix<S> adjoint(const BandedMatrix<S>& a) {
    using T = scalar_traits<S>;
    const int n = a.size();
    BandedMatrix<S> out(n, std::max(0, a.window() - a.lower()));
    for (const auto& [d, vec] : a.diagonals()) {
        auto [lo, hi] = a.column_range(d);
        for (int j = lo; j < hi; ++j) {
            if (T::is_zero(vec[j])) continue;
            const int i = j + d;
            S v = T::conj(vec[j]);
            v *= T::from_ratio(j + 1, i + 1);
            out.set(j, i, std::move(v));
        }
    }
    return out;
}

/// Largest entry, by modulus, among the exact columns of a matrix.
template <Scalar S>
struct WindowResidual {
    double max = 0.0;
    int row = -1;
    int col = -1;
    S value = scalar_traits<S>::from_int(0);
    int window = 0;

    bool is_zero() const { return row < 0; }
};

/// Ties go to the lexicographically first (row, column).
template <Scalar S>
WindowResidual<S> max_entry(const BandedMatrix<S>& a, int window = -1) {
    using T = scalar_traits<S>;
    if (window < 0) window = a.window();
    window = std::min(window, a.window());
    WindowResidual<S> best;
    best.window = window;
    typename T::norm_type best_norm = 0;
    for (const auto& [d, vec] : a.diagonals()) {
        auto [lo, hi] = a.column_range(d);
        hi = std::min(hi, window);
        for (int j = lo; j < hi; ++j) {
            if (T::is_zero(vec[j])) continue;
            const auto nv = T::norm(vec[j]);
            const int i = j + d;
            const bool better =
                best.row < 0 || nv > best_norm || (nv == best_norm && std::pair(i, j) < std::pair(best.row, best.col));
            if (better) {
                best_norm = nv;
                best.row = i;
                best.col = j;
                best.value = vec[j];
            }
        }
    }
    if (best.row >= 0) best.max = T::magnitude(best.value);
    return best;
}

/// Max-entry distance between two matrices on their common window.
template <Scalar S>
WindowResidual<S> window_difference(const BandedMatrix<S>& a, const BandedMatrix<S>& b) {
    return max_entry(a - b);
}

/// Entry of the same operator in the orthonormal basis e_k = sqrt(k+1) z^k.
template <Scalar S>
Complex orthonormal_entry(const BandedMatrix<S>& a, int row, int col) {
    return scalar_traits<S>::to_complex(a.at(row, col)) * std::sqrt((col + 1.0) / (row + 1.0));
}

template <Scalar To, Scalar From>
BandedMatrix<To> matrix_cast(const BandedMatrix<From>& a) {
    BandedMatrix<To> out(a.size(), a.window());
    for (const auto& [d, vec] : a.diagonals()) {
        auto [lo, hi] = a.column_range(d);
        for (int j = lo; j < hi; ++j) {
            const Complex c = scalar_traits<From>::to_complex(vec[j]);
            out.set(j + d, j, scalar_traits<To>::from_double(c.real(), c.imag()));
        }
    }
    return out;
}

}  // namespace bergman
