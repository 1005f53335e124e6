#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgln/family.hpp"
#include "dgln/poisson.hpp"

namespace dgln {

enum class VertexKind { Mutable, Stable, Isolated };

struct Vertex {
    FamilyFunction label;
    VertexKind kind = VertexKind::Mutable;
    int order = 1;  // d_i; n at the special vertex
    EvalPtr fn;
    std::string display;  // tracks mutation history, e.g. "g_2_2'"
};

struct Quiver {
    std::vector<Vertex> vertices;
    std::map<std::pair<int, int>, int> arrows;  // (from, to) -> multiplicity

    int index_of(const FamilyFunction& label) const;
    void add_arrow(int from, int to, int mult = 1);
    int multiplicity(int from, int to) const;
    std::size_t non_isolated_count() const;
    std::size_t count_kind(VertexKind k) const;
};

// Extended exchange matrix: one row per mutable vertex, one column per
// non-isolated vertex. Entries scaled by d_i on mutable columns so that
// dividing row i by d_i recovers the (skew-symmetric) quiver data.
struct Btilde {
    std::vector<int> row_vertex;      // row -> vertex id
    std::vector<int> col_vertex;      // col -> vertex id
    std::vector<int> row_of_vertex;   // vertex id -> row, or -1
    std::vector<int> col_of_vertex;   // vertex id -> col, or -1
    std::vector<long> d;              // degree vector, per row
    std::vector<std::vector<Int>> e;  // rows x cols

    std::size_t rows() const { return e.size(); }
    std::size_t cols() const { return e.empty() ? 0 : e[0].size(); }
};

// One entry of a coefficient string: the Laurent monomial p_r over stable and
// isolated variables (by vertex id), and the identified polynomial p_hat.
struct StringEntry {
    std::map<int, long> p_mono;
    EvalPtr phat;
};

struct VString {
    long d = 1;
    std::vector<StringEntry> entries;  // size d+1; empty entries mean a trivial string
    std::vector<Int> stable_signature;  // stable part of the row when p_hat was certified
    bool trivial() const { return d == 1 && entries.empty(); }
};

struct Seed {
    int n = 0;
    bool dual = false;
    Quiver quiver;
    Btilde b;
    std::vector<VString> strings;  // per row of b
};

// Applies the label aliases g_{i,i+1} = f_{n-i,1} and f_{k,n-k} = phi_{k,n-k}
// to a fixed point.
FamilyFunction canonical_label(int n, Kind k, int i, int j);

// Quiver Q_n with the full edge inventory: the four triangle families, the six
// paths, aliases applied, parallel edges kept as multiplicity.
Quiver build_Qn(int n);

Btilde to_Btilde(const Quiver& q);

// Rebuilds arrow data from a Btilde (positive entries only); used for
// round-trip checks and for reporting mutated quivers.
Quiver quiver_from_btilde(const Btilde& b, std::vector<Vertex> vertices);

// Builds coefficient strings: the nontrivial string at the special vertex with
// p_r = c_r^n g11^{r-n} h11^{-r}, trivial strings elsewhere. Certifies the
// identification p_hat_r = c_{sigma(r)} by exact d-th power identities at
// sample points (sigma is the identity for n >= 3, reversal for n = 2).
std::vector<VString> build_strings(int n, const Quiver& q, const Btilde& b);

Seed build_initial_seed(int n);

struct ReducedSeed {
    int n = 0;
    std::vector<EvalPtr> fns;  // distinct minors of a single matrix
    Quiver quiver;
};

// Diagonal reduction: f and phi vertices erased, g_ii and h_ii identified;
// the cluster becomes the minors of one matrix.
ReducedSeed diagonal_reduce(const Seed& seed);

// Dual seed on GL_n^*: the induced subquiver of Q_n on the phi/f/h_ii
// vertices, relabeled to psi_kl / h_ij(U) / det U, with h_ii(U) and det U
// stable, c_i(1,U) isolated, and the special string carried over.
Seed build_dual_seed(int n);

// The f_kl -> h_ij(U) vertex correspondence used by the dual seed.
std::pair<int, int> dual_f_image(int n, int k, int l);

// Stable tau-monomial of a row (vertex -> positive exponent): the x^{b_ij}
// over stable columns with b > 0 (positive side) or x^{-b_ij} with b < 0.
std::map<int, long> stable_tau(const Btilde& b, const Quiver& q, std::size_t row, bool positive);

EvalPtr mono_evaluator(const Quiver& q, const std::map<int, long>& mono, const std::string& name);

std::vector<Int> stable_row_signature(const Btilde& b, const Quiver& q, std::size_t row);

std::string to_dot(const Quiver& q);
std::string quiver_json(const Quiver& q, int n, const std::string& variant);

// Resolves names like "phi11", "phi_1_1", "g22", "hU23", "psi11", "detU".
int find_vertex(const Quiver& q, const std::string& name);

}  // namespace dgln
