#pragma once

#include <optional>

#include "dgln/seedcore.hpp"

namespace dgln {

// A seed together with per-vertex value evaluators; mutation returns a new
// state sharing the unmutated evaluators. Depth is bounded to limit rational
// bit growth.
struct MutationState {
    Seed seed;
    int depth = 0;
    static constexpr int kMaxDepth = 8;
};

MutationState initial_state(int n);
MutationState dual_state(int n);

// Matrix mutation in direction k (a row index of b):
// b'_ij = -b_ij if i = k or j = k, else b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2.
Btilde mutate_matrix(const Btilde& b, std::size_t k);

// Coefficient mutation: the string at k is reversed, all others unchanged.
std::vector<VString> mutate_coefficients(const std::vector<VString>& strings, std::size_t k);

// The p-hat evaluators of row k read against the current matrix: stable
// tau-monomials at the endpoints and the certified Casimir identifications
// inside; falls back to exact d-th root extraction when the row's stable part
// changed since certification.
std::vector<EvalPtr> phat_evaluators(const Seed& seed, std::size_t row);

// Cluster tau-monomial of row k: positive (u_>) or negative (u_<) side,
// exponents b_ki / d_k.
std::vector<std::pair<EvalPtr, long>> cluster_tau(const Seed& seed, std::size_t row, bool positive);

// sum_j p-hat_j u_>^j u_<^{d-j}, as an evaluator.
EvalPtr exchange_numerator(const Seed& seed, std::size_t row);

// Value of the adjacent cluster variable x'_k at p. Throws ResampleError when
// x_k(p) = 0.
Rat exchange_value(const MutationState& st, int vertex, const DoublePoint& p);

// Applies the matrix, coefficient and cluster mutation coherently.
MutationState mutate_seed(const MutationState& st, int vertex);

// ---- probabilistic regularity testing --------------------------------------

// One candidate trial: either a base point with an affine direction on one of
// the matrices, or a directly constructed zero of the divisor.
struct Line {
    DoublePoint base;
    bool on_y = false;
    Mat dir;
    bool constructed_zero = false;
};

using LineProvider = std::function<std::optional<Line>(Rng&)>;

struct DivisibilityVerdict {
    bool divisible = false;      // one-sided: evidence only
    bool definitive_witness = false;  // an exact nonvanishing value at a root of D
    int roots_tested = 0;
    std::string method;
    std::string note;
};

// Per trial: find a point with D = 0 exactly (affine-line root, re-verified),
// then evaluate N there. Any nonvanishing value is a definitive witness of
// non-divisibility; vanishing at every trial root is divisibility evidence.
DivisibilityVerdict check_divisibility(const Evaluator& num, const Evaluator& den, const LineProvider& lines,
                                       int trials, Rng& rng, const std::string& method_name = "affine-line");

// Axis-parallel lines through random points, restricted to the entries the
// divisor depends on.
LineProvider entry_lines(const FamilyFunction& d, int n, long bound = 7);

// Zeros of phi_11 / psi_11 for n >= 4, where no matrix entry is affine:
// points built with a rational linear dependence among the Krylov columns.
LineProvider krylov_degenerate_points(int n, long bound = 7);

// Dispatch on the divisor.
LineProvider divisor_lines(const FamilyFunction& d, int n, long bound = 7);
std::string divisor_method(const FamilyFunction& d, int n);

std::vector<std::pair<bool, std::pair<int, int>>> support_of(const FamilyFunction& fn);

}  // namespace dgln
