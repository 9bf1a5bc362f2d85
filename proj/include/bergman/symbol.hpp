#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/scalar.hpp"

namespace bergman {

/// One term c * r^s * (ln r)^q of a radial profile.
template <Scalar S>
struct ProfileTerm {
    S coeff;
    double s = 0.0;
    int q = 0;
};

/// Radial function on [0,1) of the form sum c * r^s * (ln r)^q.
///
/// Terms are kept sorted by (s, q), merged, and zero coefficients dropped, so
/// two profiles are equal as functions iff they compare equal.
template <Scalar S>
class RadialProfile {
public:
    using traits = scalar_traits<S>;

    RadialProfile() = default;

    explicit RadialProfile(std::vector<ProfileTerm<S>> terms) {
        for (auto& t : terms) add_term(std::move(t));
    }

    static RadialProfile monomial(S coeff, double s, int q = 0) {
        RadialProfile p;
        p.add_term({std::move(coeff), s, q});
        return p;
    }

    const std::vector<ProfileTerm<S>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// True iff every term has q = 0 and s >= 0.
    bool is_bounded() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.q == 0 && t.s >= 0.0; });
    }

    bool has_integer_exponents() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.s == std::floor(t.s); });
    }

    double min_exponent() const {
        double m = INFINITY;
        for (const auto& t : terms_) m = std::min(m, t.s);
        return m;
    }

    Complex operator()(double r) const {
        Complex sum{};
        const double lr = std::log(r);
        for (const auto& t : terms_) {
            double v = std::pow(r, t.s);
            for (int i = 0; i < t.q; ++i) v *= lr;
            sum += traits::to_complex(t.coeff) * v;
        }
        return sum;
    }

    RadialProfile scaled(const S& a) const {
        if (traits::is_zero(a)) return {};
        RadialProfile out = *this;
        for (auto& t : out.terms_) t.coeff *= a;
        out.prune();
        return out;
    }

    RadialProfile conjugated() const {
        RadialProfile out = *this;
        for (auto& t : out.terms_) t.coeff = traits::conj(t.coeff);
        return out;
    }

    RadialProfile& operator+=(const RadialProfile& o) {
        for (const auto& t : o.terms_) add_term(t);
        return *this;
    }
    RadialProfile& operator-=(const RadialProfile& o) { return *this += o.scaled(traits::from_int(-1)); }

    friend RadialProfile operator+(RadialProfile a, const RadialProfile& b) { return a += b; }
    friend RadialProfile operator-(RadialProfile a, const RadialProfile& b) { return a -= b; }

    friend bool operator==(const RadialProfile& a, const RadialProfile& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            const auto& x = a.terms_[i];
            const auto& y = b.terms_[i];
            if (x.s != y.s || x.q != y.q || !(x.coeff == y.coeff)) return false;
        }
        return true;
    }

private:
    void add_term(ProfileTerm<S> t) {
        if (!std::isfinite(t.s) || t.s <= -2.0)
            throw DomainError("profile exponent must satisfy s > -2 (got " + std::to_string(t.s) + ")");
        if (t.q < 0 || t.q > 2) throw DomainError("profile log power must be 0, 1 or 2");
        auto key = [](const ProfileTerm<S>& x) { return std::make_pair(x.s, x.q); };
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
        if (it != terms_.end() && key(*it) == key(t)) {
            it->coeff += t.coeff;
            if (traits::is_zero(it->coeff)) terms_.erase(it);
        } else if (!traits::is_zero(t.coeff)) {
            terms_.insert(it, std::move(t));
        }
    }

    void prune() {
        std::erase_if(terms_, [](const auto& t) { return traits::is_zero(t.coeff); });
    }

    std::vector<ProfileTerm<S>> terms_;
};

/// Right-terminating symbol g(r e^{i theta}) = sum_k g_k(r) e^{i k theta} with
/// finitely many angular degrees k.
template <Scalar S>
class Symbol {
public:
    using traits = scalar_traits<S>;
    using Profile = RadialProfile<S>;

    Symbol() = default;

    /// c * r^s (ln r)^q * e^{i k theta}
    static Symbol term(int degree, S coeff, double s, int q = 0) {
        Symbol g;
        g.add(degree, Profile::monomial(std::move(coeff), s, q));
        return g;
    }

    /// z^a * conj(z)^b
    static Symbol zzbar(int a, int b, S coeff = traits::from_int(1)) {
        if (a < 0 || b < 0) throw DomainError("zzbar exponents must be non-negative");
        return term(a - b, std::move(coeff), a + b);
    }

    static Symbol constant(S c) { return term(0, std::move(c), 0.0); }

    void add(int degree, const Profile& p) {
        if (p.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(degree, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const std::map<int, Profile>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Largest degree present; the symbol is zero if there is none.
    int top_degree() const {
        if (terms_.empty()) throw DomainError("zero symbol has no degree");
        return terms_.rbegin()->first;
    }
    int bottom_degree() const {
        if (terms_.empty()) throw DomainError("zero symbol has no degree");
        return terms_.begin()->first;
    }

    const Profile* profile(int degree) const {
        auto it = terms_.find(degree);
        return it == terms_.end() ? nullptr : &it->second;
    }

    bool is_bounded() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_bounded(); });
    }

    /// Every term is a holomorphic monomial c * z^k.
    bool is_holomorphic() const {
        for (const auto& [k, p] : terms_) {
            if (k < 0) return false;
            for (const auto& t : p.terms())
                if (t.q != 0 || t.s != k) return false;
        }
        return true;
    }

    Complex operator()(Complex z) const {
        const double r = std::abs(z);
        const double theta = std::arg(z);
        Complex sum{};
        for (const auto& [k, p] : terms_) sum += p(r) * std::polar(1.0, k * theta);
        return sum;
    }

    Symbol scaled(const S& a) const {
        Symbol out;
        for (const auto& [k, p] : terms_) out.add(k, p.scaled(a));
        return out;
    }

    Symbol& operator+=(const Symbol& o) {
        for (const auto& [k, p] : o.terms_) add(k, p);
        return *this;
    }
    Symbol& operator-=(const Symbol& o) { return *this += o.scaled(traits::from_int(-1)); }
    friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
    friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
    friend bool operator==(const Symbol& a, const Symbol& b) { return a.terms_ == b.terms_; }

private:
    std::map<int, Profile> terms_;
};

/// f = f1(z) + conj(z)^m * conj(f2(z)), coefficient lists in ascending powers.
template <Scalar S>
struct HarmonicSpec {
    std::vector<S> f1_coeffs;
    int m = 1;
    std::vector<S> f2_coeffs;

    /// Degree l of f1, ignoring trailing zero coefficients.
    int f1_degree() const {
        for (int j = static_cast<int>(f1_coeffs.size()) - 1; j >= 0; --j)
            if (!scalar_traits<S>::is_zero(f1_coeffs[j])) return j;
        return -1;
    }
};

template <Scalar S>
Symbol<S> from_harmonic(const HarmonicSpec<S>& spec) {
    using T = scalar_traits<S>;
    if (spec.m <= 0) throw DomainError("harmonic symbol needs m >= 1");
    if (spec.f1_degree() < 1) throw DomainError("f1 must be a non-constant polynomial");
    if (spec.f2_coeffs.empty() || T::is_zero(spec.f2_coeffs.front())) throw DomainError("f2(0) must be non-zero");
    Symbol<S> g;
    for (std::size_t j = 0; j < spec.f1_coeffs.size(); ++j)
        g += Symbol<S>::term(static_cast<int>(j), spec.f1_coeffs[j], static_cast<double>(j));
    for (std::size_t j = 0; j < spec.f2_coeffs.size(); ++j) {
        const int e = spec.m + static_cast<int>(j);
        g += Symbol<S>::term(-e, T::conj(spec.f2_coeffs[j]), e);
    }
    return g;
}

template <Scalar S>
Symbol<S> linear_combine(std::span<const S> coeffs, std::span<const Symbol<S>> symbols) {
    if (coeffs.size() != symbols.size()) throw DomainError("linear_combine: length mismatch");
    Symbol<S> out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) out += symbols[i].scaled(coeffs[i]);
    return out;
}

template <Scalar S>
Symbol<S> linear_combine(const std::vector<S>& coeffs, const std::vector<Symbol<S>>& symbols) {
    return linear_combine(std::span<const S>(coeffs), std::span<const Symbol<S>>(symbols));
}

/// Complex conjugate symbol: degree k with profile phi goes to degree -k with conj(phi).
template <Scalar S>
Symbol<S> conjugate(const Symbol<S>& g) {
    Symbol<S> out;
    for (const auto& [k, p] : g.terms()) out.add(-k, p.conjugated());
    return out;
}

template <Scalar To, Scalar From>
Symbol<To> symbol_cast(const Symbol<From>& g) {
    if constexpr (std::is_same_v<To, From>) {
        return g;
    } else {
        Symbol<To> out;
        for (const auto& [k, p] : g.terms()) {
            std::vector<ProfileTerm<To>> terms;
            for (const auto& t : p.terms()) {
                const Complex c = scalar_traits<From>::to_complex(t.coeff);
                terms.push_back({scalar_traits<To>::from_double(c.real(), c.imag()), t.s, t.q});
            }
            out.add(k, RadialProfile<To>(std::move(terms)));
        }
        return out;
    }
}

}  // namespace bergman
