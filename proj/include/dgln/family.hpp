#pragma once

#include <string>
#include <vector>

#include "dgln/evaluator.hpp"

namespace dgln {

// Tagged index into the determinantal family on D(GL_n): minors g_ij of X and
// h_ij of Y, the mixed-column minors f_kl, the Krylov-type functions phi_kl,
// the pencil coefficients c_r, and their counterparts on the quotient U = X^-1 Y
// (psi_kl, h_ij(U), c_r(1,U), det U).
enum class Kind { G, H, F, Phi, C, Psi, DetU };

struct FamilyFunction {
    Kind kind{};
    int i = 0, j = 0;  // (i,j) for g/h, (k,l) for f/phi/psi, (r,0) for c
    int n = 0;
    bool on_u = false;  // h/c evaluated at (1, U) instead of (X, Y)

    std::string str() const;
};

bool operator==(const FamilyFunction& a, const FamilyFunction& b);

// Sign s_kl: periodic in k+l with period 4 for n odd and period 2 for n even,
// anchored at s_{n-l,l} = 1.
int sign_skl(int n, int k, int l);

// Sign s_i in det(X + lambda Y) = sum lambda^i s_i c_i.
inline int sign_pencil(int n, int i) { return (n % 2 == 0 && i % 2 != 0) ? -1 : 1; }

void validate(const FamilyFunction& fn);

namespace detail {

// Phi_kl: last k columns of the identity, last l columns of U, then the last
// column of U^2, ..., U^{n-k-l+1}; always an n x n matrix.
template <class S>
MatT<S> build_phi(const MatT<S>& u, int k, int l) {
    const std::size_t n = u.rows();
    MatT<S> phi(n, n);
    std::size_t col = 0;
    for (int t = 0; t < k; ++t, ++col) phi(n - k + t, col) = from_rat<S>(Rat(1));
    for (int t = 0; t < l; ++t, ++col)
        for (std::size_t r = 0; r < n; ++r) phi(r, col) = u(r, n - l + t);
    std::vector<S> v = u.column(n - 1);
    for (int m = 2; m <= static_cast<int>(n) - k - l + 1; ++m, ++col) {
        v = u.apply(v);  // v = U^m e_n
        for (std::size_t r = 0; r < n; ++r) phi(r, col) = v[r];
    }
    return phi;
}

}  // namespace detail

template <class S>
S eval_family(const FamilyFunction& fn, const MatT<S>& x, const MatT<S>& y) {
    const std::size_t n = static_cast<std::size_t>(fn.n);
    if (x.rows() != n || y.rows() != n) throw DimensionError("family evaluation: wrong point size");
    switch (fn.kind) {
        case Kind::G: {
            // G_ij = X_[i,n]^[j, j+n-i]
            auto ri = range_idx(fn.i - 1, n);
            auto ci = range_idx(fn.j - 1, fn.j + n - fn.i);
            return det(x.sub(ri, ci));
        }
        case Kind::H: {
            // H_ij = Y_[i,i+n-j]^[j,n]; in the on_u variant Y is replaced by U.
            auto ri = range_idx(fn.i - 1, fn.i + n - fn.j);
            auto ci = range_idx(fn.j - 1, n);
            if (fn.on_u) {
                MatT<S> u = inverse(x) * y;
                return det(u.sub(ri, ci));
            }
            return det(y.sub(ri, ci));
        }
        case Kind::F: {
            // F_kl = [ X^[n-k+1,n]  Y^[n-l+1,n] ]_[n-k-l+1,n]
            auto rows = range_idx(n - fn.i - fn.j, n);
            auto xc = x.sub(rows, range_idx(n - fn.i, n));
            auto yc = y.sub(rows, range_idx(n - fn.j, n));
            return det(hconcat(xc, yc));
        }
        case Kind::Phi: {
            MatT<S> u = inverse(x) * y;
            S dphi = det(detail::build_phi(u, fn.i, fn.j));
            S dx = det(x);
            Rat s(sign_skl(fn.n, fn.i, fn.j));
            return from_rat<S>(s) * pow_any(dx, fn.n - fn.i - fn.j + 1) * dphi;
        }
        case Kind::Psi: {
            MatT<S> u = inverse(x) * y;
            S dphi = det(detail::build_phi(u, fn.i, fn.j));
            return from_rat<S>(Rat(sign_skl(fn.n, fn.i, fn.j))) * dphi;
        }
        case Kind::C: {
            std::vector<S> coeffs;
            if (fn.on_u) {
                MatT<S> u = inverse(x) * y;
                coeffs = poly_coeffs_from_pencil(MatT<S>::identity(n), u);
            } else {
                coeffs = poly_coeffs_from_pencil(x, y);
            }
            return from_rat<S>(Rat(sign_pencil(fn.n, fn.i))) * coeffs[static_cast<std::size_t>(fn.i)];
        }
        case Kind::DetU: {
            return det(inverse(x) * y);
        }
    }
    throw StructureError("unhandled family kind");
}

// Evaluator handle for a family function; purely value-based, jet-capable.
EvalPtr family_evaluator(const FamilyFunction& fn);

// The ordered extended family on D(GL_n): all g, then h, then f, then phi,
// then the Casimirs c_1..c_{n-1}. The non-Casimir prefix has 2n^2 - n + 1
// entries; the full list has 2n^2.
std::vector<FamilyFunction> enumerate_family(int n);

// The dual extended family on GL_n^*: psi_kl, h_ij(U) for 2 <= i <= j <= n,
// det U, then c_1(1,U)..c_{n-1}(1,U).
std::vector<FamilyFunction> dual_family(int n);

struct DualPoint {
    int n = 0;
    Mat bplus;   // upper triangular, invertible
    Mat bminus;  // lower triangular, diagonal the entrywise inverse of bplus's
};

DoublePoint sample_double_point(int n, Rng& rng, long bound = 7);
DualPoint sample_dual_point(int n, Rng& rng, long bound = 7);

inline DoublePoint as_double_point(const DualPoint& q) { return DoublePoint{q.bplus, q.bminus}; }
inline Mat u_of(const DualPoint& q) { return inverse(q.bplus) * q.bminus; }

}  // namespace dgln
