#include "dgln/mutation.hpp"

#include <algorithm>

namespace dgln {

MutationState initial_state(int n) { return MutationState{build_initial_seed(n), 0}; }
MutationState dual_state(int n) { return MutationState{build_dual_seed(n), 0}; }

Btilde mutate_matrix(const Btilde& b, std::size_t k) {
    if (k >= b.rows()) throw std::invalid_argument("mutate_matrix: bad row");
    int ck = b.col_of_vertex[b.row_vertex[k]];
    Btilde nb = b;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (i == k || static_cast<int>(j) == ck) {
                nb.e[i][j] = -b.e[i][j];
                continue;
            }
            const Int& bik = b.e[i][static_cast<std::size_t>(ck)];
            const Int& bkj = b.e[k][j];
            nb.e[i][j] = b.e[i][j] + (abs(bik) * bkj + bik * abs(bkj)) / 2;
        }
    // d_i must still divide the mutable part of each row (the row gcd is a
    // mutation invariant); a failure here is a structural bug.
    for (std::size_t i = 0; i < nb.rows(); ++i)
        for (std::size_t j = 0; j < nb.cols(); ++j) {
            if (b.col_of_vertex[b.row_vertex[i]] == static_cast<int>(j)) continue;
            bool col_mutable = b.row_of_vertex[b.col_vertex[j]] >= 0;
            if (col_mutable && nb.e[i][j] % b.d[i] != 0)
                throw StructureError("mutation broke the degree divisibility of a row");
        }
    return nb;
}

std::vector<VString> mutate_coefficients(const std::vector<VString>& strings, std::size_t k) {
    std::vector<VString> ns = strings;
    VString& s = ns[k];
    if (!s.trivial()) {
        std::reverse(s.entries.begin(), s.entries.end());
        for (auto& e : s.stable_signature) e = -e;  // row k is negated alongside
    }
    return ns;
}

std::vector<std::pair<EvalPtr, long>> cluster_tau(const Seed& seed, std::size_t row, bool positive) {
    std::vector<std::pair<EvalPtr, long>> factors;
    const Btilde& b = seed.b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        int vj = b.col_vertex[c];
        if (seed.quiver.vertices[vj].kind != VertexKind::Mutable) continue;
        const Int& e = b.e[row][c];
        if (e == 0) continue;
        if ((e > 0) != positive) continue;
        Int m = abs(e) / b.d[row];
        if (m * b.d[row] != abs(e)) throw StructureError("cluster tau-monomial: entry not divisible by d");
        factors.emplace_back(seed.quiver.vertices[vj].fn, m.get_si());
    }
    return factors;
}

std::vector<EvalPtr> phat_evaluators(const Seed& seed, std::size_t row) {
    const VString& s = seed.strings[row];
    const Quiver& q = seed.quiver;
    long d = seed.b.d[row];
    std::string rowname = q.vertices[seed.b.row_vertex[row]].label.str();
    auto vg = stable_tau(seed.b, q, row, true);
    auto vl = stable_tau(seed.b, q, row, false);

    if (s.trivial())
        return {mono_evaluator(q, vl, "v<[" + rowname + "]"), mono_evaluator(q, vg, "v>[" + rowname + "]")};

    if (s.stable_signature == stable_row_signature(seed.b, q, row)) {
        std::vector<EvalPtr> out;
        out.reserve(s.entries.size());
        for (const auto& e : s.entries) out.push_back(e.phat);
        return out;
    }

    // The row's stable part changed since certification (a mutation elsewhere
    // touched it): fall back to the defining d-th root, exact or nothing.
    std::vector<EvalPtr> out;
    for (long t = 0; t <= d; ++t) {
        if (t == 0) {
            out.push_back(mono_evaluator(q, vl, "v<[" + rowname + "]"));
            continue;
        }
        if (t == d) {
            out.push_back(mono_evaluator(q, vg, "v>[" + rowname + "]"));
            continue;
        }
        std::map<int, long> mono = s.entries[t].p_mono;
        for (const auto& [v, e] : vg) mono[v] += e * t;
        for (const auto& [v, e] : vl) mono[v] += e * (d - t);
        std::vector<std::pair<EvalPtr, long>> factors;
        for (const auto& [v, e] : mono)
            if (e != 0) factors.emplace_back(q.vertices[v].fn, e);
        std::string nm = "phat[" + rowname + "," + std::to_string(t) + "]";
        out.push_back(make_eval(nm, [factors, d](const auto& p) {
            using S = std::decay_t<decltype(p.X(0, 0))>;
            if constexpr (std::is_same_v<S, Rat>) {
                Rat acc(1);
                for (const auto& [f, e] : factors) {
                    Rat v = f->eval(p);
                    if (v == 0 && e < 0) throw ResampleError("p-hat pole at sample point");
                    acc *= pow_rat(v, e);
                }
                auto r = exact_root(acc, static_cast<unsigned>(d));
                if (!r)
                    throw StructureError("orientation error: p-hat has no exact root at sample point");
                return *r;
            } else {
                (void)d;
                throw StructureError("p-hat root extraction outside the certified row is not jet-capable");
                return S{};
            }
        }));
    }
    return out;
}

EvalPtr exchange_numerator(const Seed& seed, std::size_t row) {
    long d = seed.b.d[row];
    auto phat = phat_evaluators(seed, row);
    auto ug = cluster_tau(seed, row, true);
    auto ul = cluster_tau(seed, row, false);
    std::string rowname = seed.quiver.vertices[seed.b.row_vertex[row]].label.str();
    std::vector<EvalPtr> terms;
    for (long t = 0; t <= d; ++t) {
        std::vector<std::pair<EvalPtr, long>> factors;
        factors.emplace_back(phat[t], 1);
        for (const auto& [f, e] : ug) factors.emplace_back(f, e * t);
        for (const auto& [f, e] : ul) factors.emplace_back(f, e * (d - t));
        terms.push_back(ev_monomial(Rat(1), std::move(factors),
                                    "term" + std::to_string(t) + "[" + rowname + "]"));
    }
    return ev_sum(std::move(terms));
}

Rat exchange_value(const MutationState& st, int vertex, const DoublePoint& p) {
    int row = st.seed.b.row_of_vertex[vertex];
    if (row < 0) throw std::invalid_argument("exchange_value: vertex is not mutable");
    Rat xk = st.seed.quiver.vertices[vertex].fn->eval(p);
    if (xk == 0) throw ResampleError("cluster variable vanishes at sample point");
    Rat num = exchange_numerator(st.seed, static_cast<std::size_t>(row))->eval(p);
    return num / xk;
}

MutationState mutate_seed(const MutationState& st, int vertex) {
    int row = st.seed.b.row_of_vertex[vertex];
    if (row < 0) throw std::invalid_argument("mutate_seed: vertex is not mutable");
    if (st.depth >= MutationState::kMaxDepth) throw StructureError("mutation depth bound exceeded");

    MutationState ns;
    ns.depth = st.depth + 1;
    Seed& s = ns.seed;
    s.n = st.seed.n;
    s.dual = st.seed.dual;

    EvalPtr numer = exchange_numerator(st.seed, static_cast<std::size_t>(row));
    std::vector<Vertex> verts = st.seed.quiver.vertices;
    verts[vertex].fn = ev_quotient(numer, st.seed.quiver.vertices[vertex].fn);
    verts[vertex].display += "'";

    s.b = mutate_matrix(st.seed.b, static_cast<std::size_t>(row));
    s.strings = mutate_coefficients(st.seed.strings, static_cast<std::size_t>(row));
    s.quiver = quiver_from_btilde(s.b, std::move(verts));
    return ns;
}

// ---- divisibility -----------------------------------------------------------

std::vector<std::pair<bool, std::pair<int, int>>> support_of(const FamilyFunction& fn) {
    std::vector<std::pair<bool, std::pair<int, int>>> sup;
    const int n = fn.n;
    auto block = [&](bool on_y, int r0, int r1, int c0, int c1) {
        for (int i = r0; i <= r1; ++i)
            for (int j = c0; j <= c1; ++j) sup.push_back({on_y, {i - 1, j - 1}});
    };
    switch (fn.kind) {
        case Kind::G:
            block(false, fn.i, n, fn.j, fn.j + n - fn.i);
            break;
        case Kind::H:
            if (fn.on_u) {
                block(false, 1, n, 1, n);
                block(true, 1, n, 1, n);
            } else {
                block(true, fn.i, fn.i + n - fn.j, fn.j, n);
            }
            break;
        case Kind::F:
            block(false, n - fn.i - fn.j + 1, n, n - fn.i + 1, n);
            block(true, n - fn.i - fn.j + 1, n, n - fn.j + 1, n);
            break;
        default:
            block(false, 1, n, 1, n);
            block(true, 1, n, 1, n);
            break;
    }
    return sup;
}

LineProvider entry_lines(const FamilyFunction& d, int n, long bound) {
    auto sup = support_of(d);
    return [sup, n, bound](Rng& rng) -> std::optional<Line> {
        Line ln;
        ln.base = sample_double_point(n, rng, bound);
        auto [on_y, ij] = sup[rng.index(sup.size())];
        ln.on_y = on_y;
        ln.dir = Mat(n, n);
        ln.dir(ij.first, ij.second) = Rat(1);
        return ln;
    };
}

LineProvider krylov_degenerate_points(int n, long bound) {
    return [n, bound](Rng& rng) -> std::optional<Line> {
        const std::size_t un = static_cast<std::size_t>(n);
        // Krylov chain k_0 = e_n, k_1, ..., k_{n-2} random, with k_{n-1} a
        // random rational combination of the earlier ones; U maps each k_t to
        // k_{t+1}, so the Krylov matrix of (U, e_n) is exactly singular.
        Mat basis(un, un), target(un, un);
        std::vector<std::vector<Rat>> k(un);
        k[0].assign(un, Rat(0));
        k[0][un - 1] = Rat(1);
        for (std::size_t t = 1; t + 1 < un; ++t) {
            k[t].assign(un, Rat(0));
            for (std::size_t i = 0; i < un; ++i) k[t][i] = Rat(rng.int_in(-bound, bound));
        }
        k[un - 1].assign(un, Rat(0));
        for (std::size_t t = 0; t + 1 < un; ++t) {
            Rat alpha(rng.int_in(-bound, bound));
            for (std::size_t i = 0; i < un; ++i) k[un - 1][i] += alpha * k[t][i];
        }
        for (std::size_t t = 0; t + 1 < un; ++t)
            for (std::size_t i = 0; i < un; ++i) {
                basis(i, t) = k[t][i];
                target(i, t) = k[t + 1][i];
            }
        for (std::size_t i = 0; i < un; ++i) {
            basis(i, un - 1) = Rat(rng.int_in(-bound, bound));
            target(i, un - 1) = Rat(rng.int_in(-bound, bound));
        }
        if (det(basis) == 0 || det(target) == 0) return std::nullopt;
        Mat u = target * inverse(basis);
        Mat x(un, un);
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = 0; j < un; ++j) x(i, j) = Rat(rng.int_in(-bound, bound));
        if (det(x) == 0) return std::nullopt;
        Line ln;
        ln.base = DoublePoint{x, x * u};
        ln.constructed_zero = true;
        return ln;
    };
}

namespace {

// phi_11 and psi_11 share their zero set and are affine in no single entry
// once n >= 4; their roots are constructed instead of solved for.
bool wants_constructed_zeros(const FamilyFunction& d, int n) {
    return (d.kind == Kind::Phi || d.kind == Kind::Psi) && d.i == 1 && d.j == 1 && n >= 4;
}

}  // namespace

LineProvider divisor_lines(const FamilyFunction& d, int n, long bound) {
    if (wants_constructed_zeros(d, n)) return krylov_degenerate_points(n, bound);
    return entry_lines(d, n, bound);
}

std::string divisor_method(const FamilyFunction& d, int n) {
    return wants_constructed_zeros(d, n) ? "constructed-krylov-zero" : "affine-line";
}

DivisibilityVerdict check_divisibility(const Evaluator& num, const Evaluator& den, const LineProvider& lines,
                                       int trials, Rng& rng, const std::string& method_name) {
    DivisibilityVerdict v;
    v.method = method_name;
    for (int done = 0; done < trials; ++done) {
        int attempts = 0;
        for (;;) {
            if (++attempts > 32) throw ResampleError("check_divisibility: resample budget exhausted");
            auto ln = lines(rng);
            if (!ln) continue;
            DoublePoint root;
            try {
                if (ln->constructed_zero) {
                    if (den.eval(ln->base) != 0) continue;
                    root = ln->base;
                } else {
                    DoublePointT<Jet> jp{jet_lift(ln->base.X), jet_lift(ln->base.Y)};
                    if (ln->on_y)
                        jp.Y = jet_pair(ln->base.Y, ln->dir);
                    else
                        jp.X = jet_pair(ln->base.X, ln->dir);
                    Jet dj = den.eval(jp);
                    if (dj.der == 0) continue;  // divisor constant along this line
                    Rat tstar = -dj.val / dj.der;
                    root = ln->base;
                    Mat& target = ln->on_y ? root.Y : root.X;
                    target = target + tstar * ln->dir;
                    // The affine solve is only valid if the restriction really
                    // is affine; exactness makes this check definitive.
                    if (den.eval(root) != 0) continue;
                }
                Rat nv = num.eval(root);
                if (nv != 0) {
                    v.divisible = false;
                    v.definitive_witness = true;
                    v.roots_tested = done + 1;
                    v.note = "nonzero value " + rat_str(nv) + " at an exact root of the divisor";
                    return v;
                }
            } catch (const ResampleError&) {
                continue;
            } catch (const SingularMatrixError&) {
                continue;
            }
            break;
        }
    }
    v.divisible = true;
    v.roots_tested = trials;
    return v;
}

}  // namespace dgln
