#include "dgln/seedcore.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dgln {

int Quiver::index_of(const FamilyFunction& label) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k].label == label) return static_cast<int>(k);
    throw StructureError("quiver has no vertex " + label.str());
}

void Quiver::add_arrow(int from, int to, int mult) {
    if (from == to) throw StructureError("self-loop at " + vertices[from].label.str());
    if (vertices[from].kind == VertexKind::Isolated || vertices[to].kind == VertexKind::Isolated)
        throw StructureError("arrow incident to isolated vertex");
    arrows[{from, to}] += mult;
}

int Quiver::multiplicity(int from, int to) const {
    auto it = arrows.find({from, to});
    return it == arrows.end() ? 0 : it->second;
}

std::size_t Quiver::non_isolated_count() const {
    std::size_t c = 0;
    for (const auto& v : vertices)
        if (v.kind != VertexKind::Isolated) ++c;
    return c;
}

std::size_t Quiver::count_kind(VertexKind k) const {
    std::size_t c = 0;
    for (const auto& v : vertices)
        if (v.kind == k) ++c;
    return c;
}

namespace {

struct QnBuilder {
    int n;
    Quiver q;

    explicit QnBuilder(int n_) : n(n_) {
        for (const auto& fn : enumerate_family(n)) {
            Vertex v;
            v.label = fn;
            v.display = fn.str();
            v.fn = family_evaluator(fn);
            if (fn.kind == Kind::C) {
                v.kind = VertexKind::Isolated;
            } else if ((fn.kind == Kind::G && fn.j == 1) || (fn.kind == Kind::H && fn.i == 1)) {
                v.kind = VertexKind::Stable;
            } else {
                v.kind = VertexKind::Mutable;
            }
            if (fn.kind == Kind::Phi && fn.i == 1 && fn.j == 1) v.order = n;  // special vertex
            q.vertices.push_back(std::move(v));
        }
    }

    void arrow(Kind k1, int i1, int j1, Kind k2, int i2, int j2) {
        q.add_arrow(q.index_of(canonical_label(n, k1, i1, j1)), q.index_of(canonical_label(n, k2, i2, j2)));
    }
};

}  // namespace

FamilyFunction canonical_label(int n, Kind k, int i, int j) {
    FamilyFunction v{k, i, j, n};
    for (;;) {
        if (v.kind == Kind::G && v.j == v.i + 1) {
            v = {Kind::F, n - v.i, 1, n};
            continue;
        }
        if (v.kind == Kind::F && v.i + v.j == n) {
            v = {Kind::Phi, v.i, v.j, n};
            continue;
        }
        break;
    }
    validate(v);
    return v;
}

Quiver build_Qn(int n) {
    if (n < 2) throw std::out_of_range("build_Qn: n < 2");
    QnBuilder b(n);

    // Triangle families.
    for (int i = 1; i < n - 1; ++i)
        for (int j = i + 1; j <= n - 1; ++j) {
            b.arrow(Kind::H, i, j, Kind::H, i + 1, j + 1);
            b.arrow(Kind::H, i + 1, j + 1, Kind::H, i + 1, j);
            b.arrow(Kind::H, i + 1, j, Kind::H, i, j);
        }
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= i; ++j) {
            b.arrow(Kind::G, i, j, Kind::G, i + 1, j + 1);
            b.arrow(Kind::G, i + 1, j + 1, Kind::G, i, j + 1);
            b.arrow(Kind::G, i, j + 1, Kind::G, i, j);
        }
    for (int k = 2; k <= n - 2; ++k)
        for (int l = 1; k + l <= n - 1; ++l) {
            b.arrow(Kind::F, k, l, Kind::F, k - 1, l);
            b.arrow(Kind::F, k - 1, l, Kind::F, k - 1, l + 1);
            b.arrow(Kind::F, k - 1, l + 1, Kind::F, k, l);
        }
    for (int k = 2; k <= n - 2; ++k)
        for (int l = 1; k + l <= n - 1; ++l) {
            b.arrow(Kind::Phi, k, l, Kind::Phi, k - 1, l + 1);
            b.arrow(Kind::Phi, k - 1, l + 1, Kind::Phi, k, l + 1);
            b.arrow(Kind::Phi, k, l + 1, Kind::Phi, k, l);
        }

    if (n > 2) {
        // g11 -> phi11 -> phi21 -> phi12 -> phi31 -> phi13 -> ... -> phi_{1,n-1}
        b.arrow(Kind::G, 1, 1, Kind::Phi, 1, 1);
        for (int l = 2; l <= n - 1; ++l) {
            b.arrow(Kind::Phi, 1, l - 1, Kind::Phi, l, 1);
            b.arrow(Kind::Phi, l, 1, Kind::Phi, 1, l);
        }
        // phi_{1,n-1} -> ... -> phi11 -> h11
        for (int l = n - 1; l >= 2; --l) b.arrow(Kind::Phi, 1, l, Kind::Phi, 1, l - 1);
        b.arrow(Kind::Phi, 1, 1, Kind::H, 1, 1);
    }
    // phi_{n-1,1} -> f_{n-2,1} -> phi_{n-2,2} -> ... -> phi_{1,n-1}
    for (int k = n - 1; k >= 2; --k) {
        b.arrow(Kind::Phi, k, n - k, Kind::F, k - 1, n - k);
        b.arrow(Kind::F, k - 1, n - k, Kind::Phi, k - 1, n - k + 1);
    }
    // h11 -> phi_{1,n-1} -> h22 -> f_{1,n-2} -> h33 -> ... -> h_nn
    b.arrow(Kind::H, 1, 1, Kind::Phi, 1, n - 1);
    b.arrow(Kind::Phi, 1, n - 1, Kind::H, 2, 2);
    for (int l = n - 2; l >= 1; --l) {
        b.arrow(Kind::H, n - l, n - l, Kind::F, 1, l);
        b.arrow(Kind::F, 1, l, Kind::H, n - l + 1, n - l + 1);
    }
    // h_nn -> h_{n-1,n} -> ... -> h_{1n}
    for (int i = n - 1; i >= 1; --i) b.arrow(Kind::H, i + 1, n, Kind::H, i, n);
    // h_nn -> g_nn -> g_{n,n-1} -> ... -> g_{n1}
    b.arrow(Kind::H, n, n, Kind::G, n, n);
    for (int j = n - 1; j >= 1; --j) b.arrow(Kind::G, n, j + 1, Kind::G, n, j);

    // No two-cycles: the matrix form could not represent them.
    for (const auto& [e, m] : b.q.arrows) {
        (void)m;
        if (b.q.arrows.count({e.second, e.first}))
            throw StructureError("two-cycle between " + b.q.vertices[e.first].label.str() + " and " +
                                 b.q.vertices[e.second].label.str());
    }
    return std::move(b.q);
}

Btilde to_Btilde(const Quiver& q) {
    Btilde b;
    const int nv = static_cast<int>(q.vertices.size());
    b.row_of_vertex.assign(nv, -1);
    b.col_of_vertex.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (q.vertices[v].kind == VertexKind::Mutable) {
            b.row_of_vertex[v] = static_cast<int>(b.row_vertex.size());
            b.row_vertex.push_back(v);
            b.d.push_back(q.vertices[v].order);
        }
        if (q.vertices[v].kind != VertexKind::Isolated) {
            b.col_of_vertex[v] = static_cast<int>(b.col_vertex.size());
            b.col_vertex.push_back(v);
        }
    }
    for (const auto& [e, m] : q.arrows) {
        (void)m;
        if (q.vertices[e.first].kind == VertexKind::Stable && q.vertices[e.second].kind == VertexKind::Stable)
            throw StructureError("arrow between two stable vertices is not representable");
    }
    b.e.assign(b.row_vertex.size(), std::vector<Int>(b.col_vertex.size(), Int(0)));
    for (std::size_t r = 0; r < b.row_vertex.size(); ++r) {
        int vi = b.row_vertex[r];
        for (std::size_t c = 0; c < b.col_vertex.size(); ++c) {
            int vj = b.col_vertex[c];
            if (vi == vj) continue;
            int m = q.multiplicity(vi, vj) - q.multiplicity(vj, vi);
            bool col_mutable = q.vertices[vj].kind == VertexKind::Mutable;
            b.e[r][c] = col_mutable ? Int(static_cast<long>(m) * b.d[r]) : Int(m);
        }
    }
    return b;
}

Quiver quiver_from_btilde(const Btilde& b, std::vector<Vertex> vertices) {
    Quiver q;
    q.vertices = std::move(vertices);
    for (std::size_t r = 0; r < b.rows(); ++r) {
        int vi = b.row_vertex[r];
        for (std::size_t c = 0; c < b.cols(); ++c) {
            int vj = b.col_vertex[c];
            if (vi == vj) continue;
            const Int& e = b.e[r][c];
            if (e == 0) continue;
            bool col_mutable = q.vertices[vj].kind == VertexKind::Mutable;
            Int m = col_mutable ? Int(e / b.d[r]) : e;
            if (col_mutable && m * b.d[r] != e)
                throw StructureError("entry not divisible by d at row " + q.vertices[vi].label.str());
            if (m > 0) {
                q.add_arrow(vi, vj, static_cast<int>(m.get_si()));
            } else if (!col_mutable) {
                Int neg = -m;
                q.add_arrow(vj, vi, static_cast<int>(neg.get_si()));
            }
            // negative mutable entries are recovered from the opposite row
        }
    }
    return q;
}

std::map<int, long> stable_tau(const Btilde& b, const Quiver& q, std::size_t r, bool positive) {
    std::map<int, long> mono;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        int vj = b.col_vertex[c];
        if (q.vertices[vj].kind != VertexKind::Stable) continue;
        const Int& e = b.e[r][c];
        if (positive && e > 0) mono[vj] = e.get_si();
        if (!positive && e < 0) {
            Int neg = -e;
            mono[vj] = neg.get_si();
        }
    }
    return mono;
}

namespace {

Rat eval_mono(const Quiver& q, const std::map<int, long>& mono, const DoublePoint& p) {
    Rat acc(1);
    for (const auto& [v, e] : mono) {
        Rat x = q.vertices[v].fn->eval(p);
        if (x == 0 && e < 0) throw ResampleError("monomial pole at sample point");
        acc *= pow_rat(x, e);
    }
    return acc;
}

}  // namespace

EvalPtr mono_evaluator(const Quiver& q, const std::map<int, long>& mono, const std::string& nm) {
    std::vector<std::pair<EvalPtr, long>> factors;
    for (const auto& [v, e] : mono) factors.emplace_back(q.vertices[v].fn, e);
    return ev_monomial(Rat(1), std::move(factors), nm);
}

std::vector<Int> stable_row_signature(const Btilde& b, const Quiver& q, std::size_t r) {
    std::vector<Int> sig;
    for (std::size_t c = 0; c < b.cols(); ++c)
        if (q.vertices[b.col_vertex[c]].kind == VertexKind::Stable) sig.push_back(b.e[r][c]);
    return sig;
}

std::vector<VString> build_strings(int n, const Quiver& q, const Btilde& b) {
    std::vector<VString> strings(b.rows());
    bool dual = false;
    for (const auto& v : q.vertices)
        if (v.label.kind == Kind::Psi) dual = true;

    // Casimir vertices by index r; c_0 and c_n are realized by the stable
    // endpoint monomials, so only 1..n-1 are needed here.
    std::vector<int> cas(n, -1);
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
        if (q.vertices[v].label.kind == Kind::C) cas[q.vertices[v].label.i] = static_cast<int>(v);

    Rng rng(0x5eedc0de);
    std::vector<DoublePoint> pts;
    for (int t = 0; t < 5; ++t)
        pts.push_back(dual ? as_double_point(sample_dual_point(n, rng)) : sample_double_point(n, rng));

    for (std::size_t r = 0; r < b.rows(); ++r) {
        long d = b.d[r];
        if (d == 1) {
            strings[r] = VString{};
            continue;
        }
        VString s;
        s.d = d;
        s.entries.resize(d + 1);
        auto vg = stable_tau(b, q, r, true), vl = stable_tau(b, q, r, false);

        // The nontrivial string: p_r = c_r^n g11^{r-n} h11^{-r} on the double
        // (anchored to the literal g11/h11, so the certification below really
        // pins the row orientation); on the dual the same pattern with the
        // row's own stable monomials in place of g11/h11, which reduces to
        // the c_r(1,U), 1, detU substitution for n >= 3.
        for (long t = 1; t < d; ++t) {
            std::map<int, long> mono;
            if (cas[t] < 0) throw StructureError("missing Casimir vertex for string entry");
            mono[cas[t]] += d;
            if (dual) {
                for (const auto& [v, e] : vl) mono[v] += e * (t - d);
                for (const auto& [v, e] : vg) mono[v] += e * (-t);
            } else {
                mono[q.index_of(FamilyFunction{Kind::G, 1, 1, n})] += t - d;
                mono[q.index_of(FamilyFunction{Kind::H, 1, 1, n})] += -t;
            }
            s.entries[t].p_mono = std::move(mono);
        }
        s.entries[0].phat = mono_evaluator(q, vl, "v<[" + q.vertices[b.row_vertex[r]].label.str() + "]");
        s.entries[d].phat = mono_evaluator(q, vg, "v>[" + q.vertices[b.row_vertex[r]].label.str() + "]");

        // Identify interior entries against the Casimir family and certify the
        // d-th power identity exactly at the sample points.
        for (long t = 1; t < d; ++t) {
            int matched = -1;
            for (int cand : {static_cast<int>(t), static_cast<int>(d - t)}) {
                if (cand < 1 || cand > n - 1 || cas[cand] < 0) continue;
                bool ok = true;
                for (const auto& p : pts) {
                    Rat lhs = pow_rat(q.vertices[cas[cand]].fn->eval(p), d);
                    Rat rhs = eval_mono(q, s.entries[t].p_mono, p) * pow_rat(eval_mono(q, vg, p), t) *
                              pow_rat(eval_mono(q, vl, p), d - t);
                    if (lhs != rhs) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    matched = cand;
                    break;
                }
            }
            if (matched < 0)
                throw StructureError("orientation error: string entry " + std::to_string(t) +
                                     " does not extract to a Casimir");
            s.entries[t].phat = q.vertices[cas[matched]].fn;
        }
        s.stable_signature = stable_row_signature(b, q, r);
        strings[r] = std::move(s);
    }
    return strings;
}

Seed build_initial_seed(int n) {
    Seed s;
    s.n = n;
    s.quiver = build_Qn(n);
    s.b = to_Btilde(s.quiver);
    s.strings = build_strings(n, s.quiver, s.b);
    return s;
}

ReducedSeed diagonal_reduce(const Seed& seed) {
    ReducedSeed r;
    r.n = seed.n;
    const Quiver& q = seed.quiver;
    std::vector<int> remap(q.vertices.size(), -1);
    // Keep every g_ij and every strictly off-diagonal h_ij; f, phi and the
    // Casimirs are erased.
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        const auto& fn = q.vertices[v].label;
        bool keep = fn.kind == Kind::G || (fn.kind == Kind::H && fn.i != fn.j);
        if (!keep) continue;
        Vertex nv = q.vertices[v];
        nv.order = 1;
        remap[v] = static_cast<int>(r.quiver.vertices.size());
        r.quiver.vertices.push_back(std::move(nv));
    }
    // h_ii is identified with g_ii.
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        const auto& fn = q.vertices[v].label;
        if (fn.kind == Kind::H && fn.i == fn.j)
            remap[v] = remap[q.index_of(FamilyFunction{Kind::G, fn.i, fn.i, seed.n})];
    }
    std::map<std::pair<int, int>, int> raw;
    for (const auto& [e, m] : q.arrows) {
        int a = remap[e.first], b = remap[e.second];
        if (a < 0 || b < 0 || a == b) continue;
        raw[{a, b}] += m;
    }
    // Cancel opposite arrows created by the identification.
    for (auto& [e, m] : raw) {
        auto op = raw.find({e.second, e.first});
        if (op == raw.end() || e.first > e.second) continue;
        int c = std::min(m, op->second);
        m -= c;
        op->second -= c;
    }
    for (const auto& [e, m] : raw)
        if (m > 0) r.quiver.arrows[{e.first, e.second}] = m;
    for (const auto& v : r.quiver.vertices) r.fns.push_back(v.fn);
    return r;
}

std::pair<int, int> dual_f_image(int n, int k, int l) { return {n - k - l + 1, n - l + 1}; }

Seed build_dual_seed(int n) {
    if (n < 2) throw std::out_of_range("build_dual_seed: n < 2");
    Seed s;
    s.n = n;
    s.dual = true;
    Quiver& dq = s.quiver;
    for (const auto& fn : dual_family(n)) {
        Vertex v;
        v.label = fn;
        v.display = fn.str();
        v.fn = family_evaluator(fn);
        switch (fn.kind) {
            case Kind::Psi:
                v.kind = VertexKind::Mutable;
                if (fn.i == 1 && fn.j == 1) v.order = n;
                break;
            case Kind::H:
                v.kind = (fn.i == fn.j) ? VertexKind::Stable : VertexKind::Mutable;
                break;
            case Kind::DetU:
                v.kind = VertexKind::Stable;
                break;
            case Kind::C:
                v.kind = VertexKind::Isolated;
                break;
            default:
                throw StructureError("unexpected dual label");
        }
        dq.vertices.push_back(std::move(v));
    }

    // Induced subquiver of Q_n on the phi / f / h_ii vertices, relabeled.
    Quiver qn = build_Qn(n);
    auto image = [&](int v) -> int {
        const auto& fn = qn.vertices[v].label;
        switch (fn.kind) {
            case Kind::Phi:
                return dq.index_of(FamilyFunction{Kind::Psi, fn.i, fn.j, n});
            case Kind::F: {
                auto [i, j] = dual_f_image(n, fn.i, fn.j);
                return dq.index_of(FamilyFunction{Kind::H, i, j, n, true});
            }
            case Kind::H:
                if (fn.i == fn.j)
                    return fn.i == 1 ? dq.index_of(FamilyFunction{Kind::DetU, 0, 0, n})
                                     : dq.index_of(FamilyFunction{Kind::H, fn.i, fn.j, n, true});
                return -1;
            default:
                return -1;
        }
    };
    for (const auto& [e, m] : qn.arrows) {
        int a = image(e.first), b = image(e.second);
        if (a >= 0 && b >= 0) dq.add_arrow(a, b, m);
    }
    s.b = to_Btilde(dq);
    s.strings = build_strings(n, dq, s.b);
    return s;
}

std::string to_dot(const Quiver& q) {
    std::ostringstream os;
    os << "digraph Q {\n";
    for (const auto& v : q.vertices) {
        os << "  " << v.label.str();
        if (v.kind == VertexKind::Stable)
            os << " [shape=box]";
        else if (v.order > 1)
            os << " [shape=hexagon]";
        else if (v.kind == VertexKind::Isolated)
            os << " [shape=circle,style=dotted]";
        os << ";\n";
    }
    for (const auto& [e, m] : q.arrows)
        for (int t = 0; t < m; ++t)
            os << "  " << q.vertices[e.first].label.str() << " -> " << q.vertices[e.second].label.str()
               << ";\n";
    os << "}\n";
    return os.str();
}

std::string quiver_json(const Quiver& q, int n, const std::string& variant) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["n"] = n;
    doc["variant"] = variant;
    if (variant == "dual")
        doc["notes"] = nlohmann::ordered_json::array(
            {"detU is included as an extra stable variable to bring the dual cluster to full dimension"});
    doc["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : q.vertices) {
        nlohmann::ordered_json jv;
        jv["name"] = v.label.str();
        jv["kind"] = v.kind == VertexKind::Mutable ? "mutable"
                     : v.kind == VertexKind::Stable ? "stable"
                                                    : "isolated";
        jv["order"] = v.order;
        doc["vertices"].push_back(jv);
    }
    doc["arrows"] = nlohmann::ordered_json::array();
    for (const auto& [e, m] : q.arrows) {
        nlohmann::ordered_json ja;
        ja["from"] = q.vertices[e.first].label.str();
        ja["to"] = q.vertices[e.second].label.str();
        ja["mult"] = m;
        doc["arrows"].push_back(ja);
    }
    return doc.dump(2);
}

int find_vertex(const Quiver& q, const std::string& name) {
    std::string flat;
    for (char ch : name)
        if (ch != '_') flat += ch;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        std::string cand;
        for (char ch : q.vertices[v].label.str())
            if (ch != '_') cand += ch;
        if (cand == flat || q.vertices[v].label.str() == name || q.vertices[v].display == name)
            return static_cast<int>(v);
    }
    throw std::invalid_argument("no vertex named '" + name + "'");
}

}  // namespace dgln
