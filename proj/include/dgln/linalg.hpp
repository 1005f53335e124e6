#pragma once

#include <utility>
#include <vector>

#include "dgln/matrix.hpp"

namespace dgln {

namespace detail {

// Fraction-free (Bareiss) elimination with full pivot search. Works over any
// scalar of the jet tower: every division is exact by the Bareiss identity and
// only unit pivots (nonzero value part) are selected. Returns the determinant,
// or nullopt if at some step no unit pivot exists (possible only for jets).
template <class S>
std::optional<S> bareiss_det(MatT<S> m) {
    const std::size_t n = m.rows();
    int sign = 1;
    S prev = from_rat<S>(Rat(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pi = n, pj = n;
        for (std::size_t i = k; i < n && pi == n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (is_unit(m(i, j))) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == n) {
            bool all_zero = true;
            for (std::size_t i = k; i < n && all_zero; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (!is_zero(m(i, j))) {
                        all_zero = false;
                        break;
                    }
            if (all_zero) return from_rat<S>(Rat(0));
            return std::nullopt;  // jets only: nilpotent block, caller splits
        }
        if (pi != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pi, j));
            sign = -sign;
        }
        if (pj != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k), m(i, pj));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    S d = m(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

template <class S>
S cofactor_det_small(const MatT<S>& m) {
    switch (m.rows()) {
        case 0:
            return from_rat<S>(Rat(1));
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        default:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
}

}  // namespace detail

template <class S>
S det(const MatT<S>& m);

namespace detail {

// det(A + eps B) = det A + eps * sum_k det(A with column k replaced by B's
// column k), by multilinearity and eps^2 = 0. Used when elimination cannot
// find unit pivots (value part rank-deficient).
template <class T>
JetT<T> det_eps_split(const MatT<JetT<T>>& m) {
    MatT<T> a = val_part(m), b = der_part(m);
    JetT<T> result(det(a), from_rat<T>(Rat(0)));
    for (std::size_t k = 0; k < m.cols(); ++k) {
        MatT<T> ak = a;
        ak.set_column(k, b.column(k));
        result.der += det(ak);
    }
    return result;
}

template <class S>
S det_dispatch_fallback(const MatT<S>& m) {
    if constexpr (std::is_same_v<S, Rat>) {
        (void)m;
        throw StructureError("unreachable: rational elimination cannot lack pivots");
    } else {
        return det_eps_split(m);
    }
}

}  // namespace detail

// Exact determinant: direct cofactor formulas up to 3x3, fraction-free
// elimination with full pivoting above that.
template <class S>
S det(const MatT<S>& m) {
    if (!m.square()) throw DimensionError("det of non-square matrix");
    if (m.rows() <= 3) return detail::cofactor_det_small(m);
    if (auto d = detail::bareiss_det(m)) return *d;
    return detail::det_dispatch_fallback(m);
}

// Classical adjoint via cofactors; defined for singular input as well and
// satisfies M * adjugate(M) = det(M) * I exactly.
template <class S>
MatT<S> adjugate(const MatT<S>& m) {
    if (!m.square()) throw DimensionError("adjugate of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return m;
    if (n == 1) {
        MatT<S> a(1, 1);
        a(0, 0) = from_rat<S>(Rat(1));
        return a;
    }
    MatT<S> a(n, n);
    std::vector<std::size_t> ri, ci;
    ri.reserve(n - 1);
    ci.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ri.clear();
            ci.clear();
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i) ri.push_back(k);
                if (k != j) ci.push_back(k);
            }
            S c = det(m.sub(ri, ci));
            a(j, i) = ((i + j) % 2 == 0) ? c : -c;  // transposed cofactor
        }
    return a;
}

// Exact inverse by Gauss-Jordan with full pivoting on unit entries.
template <class S>
MatT<S> inverse(const MatT<S>& m) {
    if (!m.square()) throw DimensionError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    MatT<S> a = m, inv_m = MatT<S>::identity(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = n, pj = n;
        for (std::size_t i = k; i < n && pi == n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (is_unit(a(i, j))) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == n) {
            if constexpr (std::is_same_v<S, Rat>) {
                throw SingularMatrixError("singular matrix, det = " + rat_str(det(m)));
            } else {
                throw SingularMatrixError("singular matrix (value part), det value = " +
                                          rat_str(scalar_value(det(m))));
            }
        }
        if (pi != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pi, j));
                std::swap(inv_m(k, j), inv_m(pi, j));
            }
        if (pj != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pj));
            std::swap(perm[k], perm[pj]);
        }
        S piv = inv(a(k, k));
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) = piv * a(k, j);
            inv_m(k, j) = piv * inv_m(k, j);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || is_zero(a(i, k))) continue;
            S f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(k, j);
                inv_m(i, j) = inv_m(i, j) - f * inv_m(k, j);
            }
        }
    }
    // Undo column permutation: columns of `a` were permuted, so rows of the
    // inverse must be permuted back.
    MatT<S> out(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) out(perm[k], j) = inv_m(k, j);
    return out;
}

// Power by repeated multiplication; matpow(M, 0) = I.
template <class S>
MatT<S> matpow(const MatT<S>& m, unsigned k) {
    if (!m.square()) throw DimensionError("matpow of non-square matrix");
    MatT<S> acc = MatT<S>::identity(m.rows());
    for (unsigned t = 0; t < k; ++t) acc = acc * m;
    return acc;
}

// Solves A x = b for rational A and scalars b in the jet tower.
template <class S>
std::vector<S> solve(Mat a, std::vector<S> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DimensionError("solve shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (a(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv == n) throw SingularMatrixError("solve: singular system");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        Rat pk = a(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k) / pk;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= from_rat<S>(f) * b[k];
        }
    }
    std::vector<S> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = from_rat<S>(Rat(1) / a(k, k)) * b[k];
    return x;
}

// Raw coefficients a_0..a_n of lambda in det(X + lambda Y), by exact
// interpolation at lambda = 0, 1, ..., n and a Vandermonde solve.
template <class S>
std::vector<S> poly_coeffs_from_pencil(const MatT<S>& x, const MatT<S>& y) {
    if (!x.square() || !y.square() || x.rows() != y.rows())
        throw DimensionError("pencil needs square matrices of equal size");
    const std::size_t n = x.rows();
    std::vector<S> rhs(n + 1);
    Mat vand(n + 1, n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        Rat lam(static_cast<long>(j));
        rhs[j] = det(x + from_rat<S>(lam) * y);
        Rat p(1);
        for (std::size_t i = 0; i <= n; ++i) {
            vand(j, i) = p;
            p *= lam;
        }
    }
    return solve(vand, std::move(rhs));
}

}  // namespace dgln
