#pragma once

#include <type_traits>
#include <utility>

#include "dgln/rational.hpp"

namespace dgln {

// First-order truncated number a + b*eps with eps^2 = 0. Nesting JetT<JetT<Rat>>
// gives two independent nilpotents (eps1^2 = eps2^2 = 0, eps1*eps2 kept), which
// is what second derivatives of brackets need.
template <class T>
struct JetT {
    T val{};
    T der{};

    JetT() = default;
    JetT(T v) : val(std::move(v)) {}  // NOLINT: implicit lift of constants
    JetT(T v, T d) : val(std::move(v)), der(std::move(d)) {}

    JetT& operator+=(const JetT& o) {
        val += o.val;
        der += o.der;
        return *this;
    }
    JetT& operator-=(const JetT& o) {
        val -= o.val;
        der -= o.der;
        return *this;
    }
    JetT& operator*=(const JetT& o) {
        der = val * o.der + der * o.val;
        val = val * o.val;
        return *this;
    }

    friend JetT operator+(JetT a, const JetT& b) { return a += b; }
    friend JetT operator-(JetT a, const JetT& b) { return a -= b; }
    friend JetT operator-(const JetT& a) { return JetT(-a.val, -a.der); }
    friend JetT operator*(JetT a, const JetT& b) { return a *= b; }
    friend bool operator==(const JetT& a, const JetT& b) { return a.val == b.val && a.der == b.der; }
    friend bool operator!=(const JetT& a, const JetT& b) { return !(a == b); }
};

using Jet = JetT<Rat>;
using Jet2 = JetT<Jet>;

inline bool is_unit(const Rat& x) { return x != 0; }
inline bool is_zero(const Rat& x) { return x == 0; }

template <class T>
bool is_unit(const JetT<T>& x) {
    return is_unit(x.val);
}
template <class T>
bool is_zero(const JetT<T>& x) {
    return is_zero(x.val) && is_zero(x.der);
}

inline Rat inv(const Rat& x) {
    if (x == 0) throw SingularMatrixError("division by zero");
    return Rat(1) / x;
}

template <class T>
JetT<T> inv(const JetT<T>& x) {
    // (a + b eps)^-1 = a^-1 - a^-1 b a^-1 eps; needs the value part invertible.
    T vi = inv(x.val);
    return JetT<T>(vi, -(vi * x.der * vi));
}

template <class T>
JetT<T> operator/(const JetT<T>& a, const JetT<T>& b) {
    return a * inv(b);
}

// Lifts a rational constant into any scalar in the tower Rat, Jet, Jet2, ...
template <class S>
S from_rat(const Rat& q) {
    if constexpr (std::is_same_v<S, Rat>) {
        return q;
    } else {
        return S(from_rat<typename std::decay_t<decltype(S{}.val)>>(q));
    }
}

template <class S>
S pow_any(S base, long e) {
    if (e == 0) return from_rat<S>(Rat(1));
    if (e < 0) {
        base = inv(base);
        e = -e;
    }
    S acc = from_rat<S>(Rat(1));
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// Value part of a scalar, all nilpotents dropped.
inline const Rat& scalar_value(const Rat& x) { return x; }
template <class T>
const Rat& scalar_value(const JetT<T>& x) {
    return scalar_value(x.val);
}

}  // namespace dgln
