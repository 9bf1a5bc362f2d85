#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bergman/banded_matrix.hpp"
#include "bergman/commutator.hpp"
#include "bergman/error.hpp"
#include "bergman/linear_algebra.hpp"
#include "bergman/symbol.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

/// One radial basis function r^s (ln r)^q.
struct DictionaryElement {
    double s = 0.0;
    int q = 0;

    friend auto operator<=>(const DictionaryElement&, const DictionaryElement&) = default;
};

/// Finite family of right-terminating symbols:
///   g = sum_{k_min <= k <= k_max} sum_{(s,q)} x_{k,s,q} r^s (ln r)^q e^{ik theta}.
struct Ansatz {
    int k_min = -8;
    int k_max = 1;
    std::vector<DictionaryElement> dictionary;
    /// Keep only q = 0, s >= 0 elements, which give bounded symbols.
    bool bounded_only = false;

    /// All r^s (ln r)^q with integer s in [s_min, s_max] and q in [0, q_max].
    static Ansatz standard(int k_min, int k_max, int s_min = -1, int s_max = 8, int q_max = 2,
                           bool bounded_only = false) {
        Ansatz a{k_min, k_max, {}, bounded_only};
        for (int s = s_min; s <= s_max; ++s)
            for (int q = 0; q <= q_max; ++q) a.dictionary.push_back({static_cast<double>(s), q});
        return a;
    }

    std::vector<DictionaryElement> effective_dictionary() const {
        std::vector<DictionaryElement> out;
        for (const auto& e : dictionary)
            if (!bounded_only || (e.q == 0 && e.s >= 0.0)) out.push_back(e);
        return out;
    }

    void validate() const {
        if (k_min > k_max) throw DomainError("ansatz: k_min > k_max");
        std::set<DictionaryElement> seen;
        for (const auto& e : dictionary) {
            if (!(e.s > -2.0)) throw DomainError("ansatz: dictionary exponent must satisfy s > -2");
            if (e.q < 0 || e.q > 2) throw DomainError("ansatz: dictionary log power must be 0, 1 or 2");
            if (!seen.insert(e).second) throw DomainError("ansatz: duplicate dictionary element");
        }
        if (effective_dictionary().empty()) throw DomainError("ansatz: empty dictionary");
    }
};

struct Unknown {
    int degree;
    DictionaryElement element;
};

/// Rows are the exact-window entries of [T_g, T_f]; column u holds that
/// commutator for g = the u-th ansatz element.
template <Scalar S>
struct LinearSystem {
    int n = 0;
    int window = 0;
    std::vector<Unknown> unknowns;
    std::vector<std::pair<int, int>> entries;  // (row, column) of the operator matrix per equation
    SparseColumns<S> matrix;
};

template <Scalar S>
Symbol<S> unknown_symbol(const Unknown& u, S coeff = scalar_traits<S>::from_int(1)) {
    return Symbol<S>::term(u.degree, std::move(coeff), u.element.s, u.element.q);
}

template <Scalar S>
Symbol<S> from_coordinates(const std::vector<Unknown>& unknowns, const std::vector<S>& x) {
    Symbol<S> g;
    for (std::size_t i = 0; i < unknowns.size(); ++i)
        if (!scalar_traits<S>::is_zero(x[i])) g += unknown_symbol(unknowns[i], x[i]);
    return g;
}

/// Coordinates of g in the ansatz, or nullopt if g has a term outside it.
template <Scalar S>
std::optional<std::vector<S>> to_coordinates(const std::vector<Unknown>& unknowns, const Symbol<S>& g) {
    std::vector<S> x(unknowns.size(), scalar_traits<S>::from_int(0));
    for (const auto& [k, phi] : g.terms()) {
        for (const auto& t : phi.terms()) {
            auto it = std::find_if(unknowns.begin(), unknowns.end(), [&](const Unknown& u) {
                return u.degree == k && u.element.s == t.s && u.element.q == t.q;
            });
            if (it == unknowns.end()) return std::nullopt;
            x[it - unknowns.begin()] = t.coeff;
        }
    }
    return x;
}

/// Window of [T_g, T_f] when g has top degree k_top and f top degree f_top.
inline int commutator_window(int n, int k_top, int f_top) {
    const int raise_g = std::max(0, k_top);
    const int raise_f = std::max(0, f_top);
    const int wg = n - raise_g;
    const int wf = n - raise_f;
    return std::max(0, std::min(std::min(wf, wg - raise_f), std::min(wg, wf - raise_g)));
}

template <Scalar S>
LinearSystem<S> build_system(const Symbol<S>& f, const Ansatz& ansatz, int n) {
    ansatz.validate();
    if (f.is_zero()) throw DomainError("build_system: f is zero");
    const int window = commutator_window(n, ansatz.k_max, f.top_degree());
    if (2 * window < n) {
        const int need = 2 * (std::max(0, ansatz.k_max) + std::max(0, f.top_degree()));
        throw SizingError("build_system: window " + std::to_string(window) + " is below n/2; use n >= " +
                              std::to_string(std::max(8, need)),
                          std::max(8, need));
    }
    LinearSystem<S> sys;
    sys.n = n;
    sys.window = window;
    const auto dict = ansatz.effective_dictionary();
    for (int k = ansatz.k_min; k <= ansatz.k_max; ++k)
        for (const auto& e : dict) sys.unknowns.push_back({k, e});

    const BandedMatrix<S> tf = toeplitz_matrix(f, n);
    std::vector<BandedMatrix<S>> comms;
    comms.reserve(sys.unknowns.size());
    std::set<std::pair<int, int>> positions;  // (offset, column)
    for (const auto& u : sys.unknowns) {
        comms.push_back(commutator(toeplitz_matrix(unknown_symbol<S>(u), n), tf));
        for (const auto& [d, vec] : comms.back().diagonals()) {
            auto [lo, hi] = comms.back().column_range(d);
            for (int j = lo; j < std::min(hi, window); ++j)
                if (!scalar_traits<S>::is_zero(vec[j])) positions.emplace(d, j);
        }
    }
    std::map<std::pair<int, int>, int> row_of;
    for (const auto& [d, j] : positions) {
        row_of.emplace(std::pair(d, j), static_cast<int>(sys.entries.size()));
        sys.entries.emplace_back(j + d, j);
    }
    sys.matrix.rows = static_cast<int>(sys.entries.size());
    sys.matrix.columns.resize(sys.unknowns.size());
    for (std::size_t c = 0; c < comms.size(); ++c) {
        for (const auto& [d, vec] : comms[c].diagonals()) {
            auto [lo, hi] = comms[c].column_range(d);
            for (int j = lo; j < std::min(hi, window); ++j)
                if (!scalar_traits<S>::is_zero(vec[j])) sys.matrix.columns[c].emplace_back(row_of.at({d, j}), vec[j]);
        }
    }
    return sys;
}

struct Membership {
    bool member = false;
    bool representable = true;
    double residual = 0.0;
};

template <Scalar S>
struct SolveReport {
    int dimension = 0;
    std::vector<Symbol<S>> basis;
    double residual_max = 0.0;
    int window = 0;
    int n = 0;
    int equations = 0;
    int unknowns = 0;
    std::vector<std::pair<std::string, Membership>> contains;
    bool ill_conditioned = false;
    std::vector<std::string> warnings;
};

template <Scalar S>
using NamedSymbols = std::vector<std::pair<std::string, Symbol<S>>>;

/// All g in the ansatz with [T_g, T_f] = 0 on the exact window.
///
/// Exact backend: certified rational kernel.  Float backend: singular values
/// below tol * sigma_max span the kernel.  The basis is Gram-Schmidt over
/// (1, f, extra references..., kernel vectors) so the references that commute
/// come first and the rest are residual directions.
template <Scalar S>
SolveReport<S> solve_commutant(const Symbol<S>& f, const Ansatz& ansatz, int n, double tol = 1e-9,
                               const NamedSymbols<S>& extra_refs = {}) {
    using T = scalar_traits<S>;
    const LinearSystem<S> sys = build_system(f, ansatz, n);
    SolveReport<S> rep;
    rep.n = n;
    rep.window = sys.window;
    rep.equations = sys.matrix.rows;
    rep.unknowns = sys.matrix.cols();

    std::vector<std::vector<S>> kernel;
    if constexpr (is_exact_v<S>) {
        kernel = exact_nullspace(sys.matrix);
    } else {
        auto fk = float_nullspace(sys.matrix, tol);
        kernel = std::move(fk.basis);
        rep.ill_conditioned = fk.ill_conditioned;
        if (fk.ill_conditioned)
            rep.warnings.emplace_back("no clear singular value gap at tol * sigma_max (gap " + std::to_string(fk.gap) +
                                      "): rank is ambiguous, use the exact backend");
    }
    rep.dimension = static_cast<int>(kernel.size());

    NamedSymbols<S> refs{{"1", Symbol<S>::constant(T::from_int(1))}, {"f", f}};
    refs.insert(refs.end(), extra_refs.begin(), extra_refs.end());

    auto in_kernel = [&](const std::vector<S>& x) {
        const auto y = multiply(sys.matrix, x);
        if constexpr (is_exact_v<S>) {
            return std::all_of(y.begin(), y.end(), [](const S& v) { return T::is_zero(v); });
        } else {
            double ny = 0.0, nx = 0.0;
            for (const auto& v : y) ny = std::max(ny, std::abs(v));
            for (const auto& v : x) nx = std::max(nx, std::abs(v));
            return ny <= std::sqrt(tol) * nx;
        }
    };

    std::vector<std::vector<S>> ordered;
    std::vector<std::optional<std::vector<S>>> ref_coords;
    for (const auto& [name, g] : refs) {
        ref_coords.push_back(to_coordinates(sys.unknowns, g));
        if (ref_coords.back() && in_kernel(*ref_coords.back())) ordered.push_back(*ref_coords.back());
    }
    ordered.insert(ordered.end(), kernel.begin(), kernel.end());
    const auto gs = gram_schmidt(ordered, kernel.size());
    if (gs.size() != kernel.size()) rep.warnings.emplace_back("references not contained in the computed kernel");
    for (const auto& v : gs) rep.basis.push_back(from_coordinates(sys.unknowns, v));

    for (std::size_t i = 0; i < refs.size(); ++i) {
        Membership mem;
        if (!ref_coords[i]) {
            mem.representable = false;
            mem.residual = std::numeric_limits<double>::infinity();
        } else {
            std::vector<S> r = *ref_coords[i];
            for (const auto& b : gs) {
                const S coeff = inner(b, r) / inner(b, b);
                for (std::size_t k = 0; k < r.size(); ++k) r[k] -= coeff * b[k];
            }
            double res = 0.0, scale = 0.0;
            for (const auto& v : r) res = std::max(res, T::magnitude(v));
            for (const auto& v : *ref_coords[i]) scale = std::max(scale, T::magnitude(v));
            mem.residual = res;
            mem.member = is_exact_v<S> ? res == 0.0 : res <= std::sqrt(tol) * std::max(1.0, scale);
        }
        rep.contains.emplace_back(refs[i].first, mem);
    }

    // Independent re-check of every basis element through the full Toeplitz path.
    for (const auto& g : rep.basis) {
        const auto check = commutes(g, f, n, is_exact_v<S> ? 0.0 : std::sqrt(tol));
        rep.residual_max = std::max(rep.residual_max, check.residual_max);
        if (check.verdict != Verdict::commutes)
            rep.warnings.emplace_back("basis element failed the independent commutator re-check");
    }
    return rep;
}

/// Max window entry of (T_f)^power - T_candidate.
template <Scalar S>
WindowResidual<S> verify_power_identity(const Symbol<S>& f, int power, const Symbol<S>& candidate, int n) {
    if (power < 1) throw DomainError("verify_power_identity: power must be >= 1");
    const auto diff = toeplitz_power(f, power, n) - toeplitz_matrix(candidate, n);
    if (diff.window() <= 0)
        throw SizingError("verify_power_identity: empty window at n = " + std::to_string(n), 2 * n);
    return max_entry(diff);
}

template <Scalar S>
struct PowerFit {
    std::vector<S> coeffs;
    Symbol<S> candidate;
    WindowResidual<S> residual;
};

/// Best combination of `symbols` matching (T_f)^power on the common window,
/// by the normal equations; the residual is re-measured on the combination.
template <Scalar S>
PowerFit<S> fit_power_in_span(const Symbol<S>& f, int power, const std::vector<Symbol<S>>& symbols, int n) {
    using T = scalar_traits<S>;
    const auto target = toeplitz_power(f, power, n);
    std::vector<BandedMatrix<S>> cols;
    int window = target.window();
    for (const auto& g : symbols) {
        cols.push_back(toeplitz_matrix(g, n));
        window = std::min(window, cols.back().window());
    }
    if (window <= 0) throw SizingError("fit_power_in_span: empty window", 2 * n);
    std::set<std::pair<int, int>> positions;
    auto collect = [&](const BandedMatrix<S>& a) {
        for (const auto& [d, vec] : a.diagonals()) {
            auto [lo, hi] = a.column_range(d);
            for (int j = lo; j < std::min(hi, window); ++j) positions.emplace(j + d, j);
        }
    };
    collect(target);
    for (const auto& c : cols) collect(c);
    const std::size_t k = symbols.size();
    std::vector<std::vector<S>> gram(k, std::vector<S>(k, T::from_int(0)));
    std::vector<S> rhs(k, T::from_int(0));
    for (const auto& [i, j] : positions) {
        const S t = target.at(i, j);
        std::vector<S> a(k);
        for (std::size_t c = 0; c < k; ++c) a[c] = cols[c].at(i, j);
        for (std::size_t r = 0; r < k; ++r) {
            if (T::is_zero(a[r])) continue;
            const S ar = T::conj(a[r]);
            for (std::size_t c = 0; c < k; ++c)
                if (!T::is_zero(a[c])) gram[r][c] += ar * a[c];
            rhs[r] += ar * t;
        }
    }
    auto x = solve_dense(gram, rhs);
    if (!x) throw DomainError("fit_power_in_span: symbols are linearly dependent on the window");
    PowerFit<S> fit;
    fit.coeffs = *x;
    fit.candidate = linear_combine(fit.coeffs, symbols);
    fit.residual = verify_power_identity(f, power, fit.candidate, n);
    return fit;
}

}  // namespace bergman
