#pragma once

#include "dgln/family.hpp"

namespace dgln {

// Krylov data of (A, u, v): Gamma(u) has columns u, Au, ..., A^{n-1}u;
// Gamma_1 = [v u Au ... A^{n-2}u]; Gamma_2 = [Av u Au ... A^{n-2}u];
// w is the last row of the classical adjoint of Gamma_1, and Gamma* has rows
// w, wA, ..., wA^{n-1}.
template <class S>
struct KrylovDataT {
    MatT<S> a;
    std::vector<S> u, v;
    MatT<S> gamma, gamma1, gamma2, gamma_star;
    std::vector<S> w;
};

using KrylovData = KrylovDataT<Rat>;

template <class S>
KrylovDataT<S> build_krylov(const MatT<S>& a, std::vector<S> u, std::vector<S> v) {
    if (!a.square()) throw DimensionError("build_krylov: A must be square");
    const std::size_t n = a.rows();
    if (u.size() != n || v.size() != n) throw DimensionError("build_krylov: vector length mismatch");
    KrylovDataT<S> kd{a, u, v, MatT<S>(n, n), MatT<S>(n, n), MatT<S>(n, n), MatT<S>(n, n), {}};
    std::vector<S> t = u;
    for (std::size_t j = 0; j < n; ++j) {
        kd.gamma.set_column(j, t);
        if (j + 1 < n) {
            kd.gamma1.set_column(j + 1, t);
            kd.gamma2.set_column(j + 1, t);
        }
        t = a.apply(t);
    }
    kd.gamma1.set_column(0, v);
    kd.gamma2.set_column(0, a.apply(v));
    kd.w = adjugate(kd.gamma1).row_vec(n - 1);
    MatT<S> at = a.transpose();
    t = kd.w;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) kd.gamma_star(i, j) = t[j];
        if (i + 1 < n) t = at.apply(t);  // row * A
    }
    return kd;
}

template <class S>
struct IdentityReport {
    S lhs, rhs;
    bool equal = false;
};

// det( det(Gamma_1) A - det(Gamma_2) I ) = (-1)^{n(n-1)/2} det(Gamma) det(Gamma*),
// both sides by disjoint code paths.
template <class S>
IdentityReport<S> verify_long_identity(const MatT<S>& a, const std::vector<S>& u, const std::vector<S>& v) {
    auto kd = build_krylov(a, u, v);
    const std::size_t n = a.rows();
    S d1 = det(kd.gamma1), d2 = det(kd.gamma2);
    MatT<S> pencil = d1 * a - d2 * MatT<S>::identity(n);
    IdentityReport<S> rep;
    rep.lhs = det(pencil);
    int sgn = (n % 4 == 0 || n % 4 == 1) ? 1 : -1;  // (-1)^{n(n-1)/2}
    rep.rhs = from_rat<S>(Rat(sgn)) * det(kd.gamma) * det(kd.gamma_star);
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

struct CorollaryReport {
    Rat pencil_det;    // det(s12 phi12 X + s21 phi21 Y)
    Rat phi11;
    Rat p_star;        // right-hand side, from the Krylov identity at A = X^-1 Y
    bool equal = false;
};

// Specialization A = X^-1 Y, u = e_n, v = e_{n-1}:
// det(s12 phi12 X + s21 phi21 Y) = phi11 * P*_n with
// P*_n = (-1)^{n(n-1)/2} s11 (det X)^{(n-1)(n-2)} det(Gamma*).
CorollaryReport verify_corollary(const Mat& x, const Mat& y);

}  // namespace dgln
