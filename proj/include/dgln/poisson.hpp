#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dgln/family.hpp"

namespace dgln {

// Element of the double Lie algebra g (+) g, paired by
// <<(a,b),(a',b')>> = tr(a a') - tr(b b').
template <class S>
struct LiePairT {
    MatT<S> a, b;

    friend LiePairT operator+(const LiePairT& u, const LiePairT& v) { return {u.a + v.a, u.b + v.b}; }
    friend LiePairT operator-(const LiePairT& u, const LiePairT& v) { return {u.a - v.a, u.b - v.b}; }
};

using LiePair = LiePairT<Rat>;

template <class S>
S double_pairing(const LiePairT<S>& u, const LiePairT<S>& v) {
    return trace_prod(u.a, v.a) - trace_prod(u.b, v.b);
}

// R = pi_{>0} - pi_{<0}: strictly upper part minus strictly lower part, the
// Cartan part mapped to zero.
template <class S>
MatT<S> r_std(const MatT<S>& m) {
    if (!m.square()) throw DimensionError("r_std of non-square matrix");
    MatT<S> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > i)
                r(i, j) = m(i, j);
            else if (j < i)
                r(i, j) = -m(i, j);
        }
    return r;
}

template <class S>
MatT<S> r_plus(const MatT<S>& m) {
    return from_rat<S>(make_rat(1, 2)) * (r_std(m) + m);
}

template <class S>
MatT<S> r_minus(const MatT<S>& m) {
    return from_rat<S>(make_rat(1, 2)) * (r_std(m) - m);
}

template <class S>
struct DoubleDecomposition {
    LiePairT<S> plus;   // in d_+ = {(xi, xi)}
    LiePairT<S> minus;  // in d_- = {(R_+ eta, R_- eta)}
};

// v = plus + minus with plus = (xi, xi), xi = a - R_+(a - b), and
// minus = (R_+(a-b), R_-(a-b)).
template <class S>
DoubleDecomposition<S> double_decompose(const LiePairT<S>& v) {
    MatT<S> eta = v.a - v.b;
    LiePairT<S> minus{r_plus(eta), r_minus(eta)};
    LiePairT<S> plus{v.a - minus.a, v.b - minus.b};
    return {plus, minus};
}

// The R-operator of the double bracket. The orientation is calibrated so that
// the restriction of {,}_D to the diagonal subgroup reproduces {,}_r; see the
// diagonal-consistency tests.
template <class S>
LiePairT<S> r_double(const LiePairT<S>& v) {
    auto d = double_decompose(v);
    return d.minus - d.plus;
}

// Gradient pair on the double w.r.t. <<,>>:
// <<grad^L F, (xi, eta)>> = d/dt F(e^{t xi} X, e^{t eta} Y) |_0, likewise on
// the right. The second component picks up a sign from the -tr term.
template <class S>
struct GradientPairT {
    LiePairT<S> left, right;
};

using GradientPair = GradientPairT<Rat>;

namespace detail {

// (E_ij M) has row i equal to row j of M; (M E_ij) has column j equal to column i.
template <class S>
MatT<S> left_dir(const MatT<S>& m, std::size_t i, std::size_t j) {
    MatT<S> d(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) d(i, c) = m(j, c);
    return d;
}

template <class S>
MatT<S> right_dir(const MatT<S>& m, std::size_t i, std::size_t j) {
    MatT<S> d(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) d(r, j) = m(r, i);
    return d;
}

}  // namespace detail

// Exact gradients assembled from one jet evaluation per coordinate direction.
template <class S, class F>
GradientPairT<S> gradients(F&& fn, const DoublePointT<S>& p) {
    const std::size_t n = p.X.rows();
    GradientPairT<S> g{{MatT<S>(n, n), MatT<S>(n, n)}, {MatT<S>(n, n), MatT<S>(n, n)}};
    MatT<JetT<S>> xl = jet_lift(p.X), yl = jet_lift(p.Y);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            DoublePointT<JetT<S>> q{jet_pair(p.X, detail::left_dir(p.X, i, j)), yl};
            g.left.a(j, i) = fn(q).der;
            q = {xl, jet_pair(p.Y, detail::left_dir(p.Y, i, j))};
            g.left.b(j, i) = -fn(q).der;
            q = {jet_pair(p.X, detail::right_dir(p.X, i, j)), yl};
            g.right.a(j, i) = fn(q).der;
            q = {xl, jet_pair(p.Y, detail::right_dir(p.Y, i, j))};
            g.right.b(j, i) = -fn(q).der;
        }
    return g;
}

// Cached per-function-per-point data: a pair bracket then costs four traces.
template <class S>
struct BracketDataT {
    GradientPairT<S> grad;
    LiePairT<S> rd_left, rd_right;
};

using BracketData = BracketDataT<Rat>;

template <class S, class F>
BracketDataT<S> prepare_bracket(F&& fn, const DoublePointT<S>& p) {
    BracketDataT<S> d{gradients(fn, p), {}, {}};
    d.rd_left = r_double(d.grad.left);
    d.rd_right = r_double(d.grad.right);
    return d;
}

template <class S>
S bracket_from_data(const BracketDataT<S>& f, const BracketDataT<S>& g) {
    S l = double_pairing(f.rd_left, g.grad.left);
    S r = double_pairing(f.rd_right, g.grad.right);
    return from_rat<S>(make_rat(1, 2)) * (l - r);
}

// {F,G}_D = 1/2 ( <<R_D grad^L F, grad^L G>> - <<R_D grad^R F, grad^R G>> ).
template <class S, class F, class G>
S bracket_double(F&& f, G&& g, const DoublePointT<S>& p) {
    return bracket_from_data(prepare_bracket(f, p), prepare_bracket(g, p));
}

inline Rat bracket_double(const Evaluator& f, const Evaluator& g, const DoublePoint& p) {
    auto fe = [&f](const auto& q) { return f.eval(q); };
    auto ge = [&g](const auto& q) { return g.eval(q); };
    return bracket_double<Rat>(fe, ge, p);
}

// ---- standard bracket on GL_n -------------------------------------------

template <class S>
struct GlGradientsT {
    MatT<S> left, right;
};

template <class S, class F>
GlGradientsT<S> gradients_gl(F&& fn, const MatT<S>& x) {
    const std::size_t n = x.rows();
    GlGradientsT<S> g{MatT<S>(n, n), MatT<S>(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            g.left(j, i) = fn(jet_pair(x, detail::left_dir(x, i, j))).der;
            g.right(j, i) = fn(jet_pair(x, detail::right_dir(x, i, j))).der;
        }
    return g;
}

template <class S>
struct StdBracketDataT {
    GlGradientsT<S> grad;
    MatT<S> r_left, r_right;
};

using StdBracketData = StdBracketDataT<Rat>;

template <class S, class F>
StdBracketDataT<S> prepare_bracket_std(F&& fn, const MatT<S>& x) {
    StdBracketDataT<S> d{gradients_gl(fn, x), {}, {}};
    d.r_left = r_std(d.grad.left);
    d.r_right = r_std(d.grad.right);
    return d;
}

template <class S>
S bracket_std_from_data(const StdBracketDataT<S>& f, const StdBracketDataT<S>& g) {
    S l = trace_prod(f.r_left, g.grad.left);
    S r = trace_prod(f.r_right, g.grad.right);
    return from_rat<S>(make_rat(1, 2)) * (l - r);
}

// {f,g}_r = 1/2 ( <R grad^L f, grad^L g> - <R grad^R f, grad^R g> ).
template <class S, class F, class G>
S bracket_std(F&& f, G&& g, const MatT<S>& x) {
    return bracket_std_from_data(prepare_bracket_std(f, x), prepare_bracket_std(g, x));
}

// ---- dual bracket on GL_n^* ----------------------------------------------

// Lifts a function of U to the double via U = X^-1 Y.
template <class F>
auto on_quotient(F&& f) {
    return [f](const auto& p) { return f(inverse(p.X) * p.Y); };
}

// {f,g}_* at a point of the dual group: computed as the double bracket of the
// lifted functions at (B_+, B_-); valid because the dual group is a
// Poisson-Lie subgroup of the double.
template <class F, class G>
Rat bracket_dual(F&& f, G&& g, const DualPoint& q) {
    return bracket_double<Rat>(on_quotient(f), on_quotient(g), as_double_point(q));
}

// ---- log-canonicality ------------------------------------------------------

struct LcViolation {
    std::size_t i = 0, j = 0;       // offending pair (indices into fns)
    std::size_t p1 = 0, p2 = 0;     // two points with different ratios
    Rat r1, r2;
    std::string fi, fj;
};

struct LcResult {
    bool ok = true;
    std::vector<std::vector<Rat>> omega;  // filled when ok
    std::optional<LcViolation> violation;
};

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

// Checks {f_i, f_j} / (f_i f_j) for exact constancy across all points, over
// the given pairs (all i<j pairs when empty). Throws ResampleError if some
// function vanishes at some point.
LcResult log_canonical_check(const std::vector<EvalPtr>& fns, const std::vector<DoublePoint>& points,
                             const PairList& pairs = {});

// Same check for single-matrix functions under the standard bracket.
LcResult log_canonical_check_std(const std::vector<EvalPtr>& fns, const std::vector<Mat>& xs,
                                 const PairList& pairs = {});

PairList all_pairs(std::size_t m);

}  // namespace dgln
