#pragma once

#include "bergman/scalar.hpp"
#include "bergman/symbol.hpp"

namespace bergman::corpus {

template <Scalar S>
S one() {
    return scalar_traits<S>::from_int(1);
}

/// z^k for k >= 0, conj(z)^{-k} for k < 0.
template <Scalar S>
Symbol<S> monomial(int k) {
    return Symbol<S>::term(k, one<S>(), std::abs(k), 0);
}

/// z + conj(z)^m
template <Scalar S>
Symbol<S> z_plus_zbar_power(int m) {
    return monomial<S>(1) + monomial<S>(-m);
}

/// z^2 + conj(z)^2 + |z|^2 + ln|z|^2 + 1, the symbol of (T_{z + conj z})^2.
template <Scalar S>
Symbol<S> square_of_z_plus_zbar() {
    using T = scalar_traits<S>;
    Symbol<S> g = monomial<S>(2) + monomial<S>(-2);
    g += Symbol<S>::term(0, one<S>(), 2, 0);
    g += Symbol<S>::term(0, T::from_int(2), 0, 1);
    g += Symbol<S>::constant(one<S>());
    return g;
}

/// |z|^2
template <Scalar S>
Symbol<S> modulus_squared() {
    return Symbol<S>::term(0, one<S>(), 2, 0);
}

}  // namespace bergman::corpus
