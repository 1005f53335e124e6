#include "dgln/family.hpp"

#include <stdexcept>

namespace dgln {

std::string FamilyFunction::str() const {
    auto two = [&](const char* base) {
        return std::string(base) + "_" + std::to_string(i) + "_" + std::to_string(j);
    };
    switch (kind) {
        case Kind::G:
            return two("g");
        case Kind::H:
            return on_u ? two("hU") : two("h");
        case Kind::F:
            return two("f");
        case Kind::Phi:
            return two("phi");
        case Kind::Psi:
            return two("psi");
        case Kind::C:
            return std::string(on_u ? "cU" : "c") + "_" + std::to_string(i);
        case Kind::DetU:
            return "detU";
    }
    return "?";
}

bool operator==(const FamilyFunction& a, const FamilyFunction& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j && a.n == b.n && a.on_u == b.on_u;
}

int sign_skl(int n, int k, int l) {
    if (k < 1 || l < 1 || k + l > n) throw std::out_of_range("sign_skl: indices out of range");
    int m = k + l;
    if (n % 2 == 0) {
        // period 2 in k+l: s_{n-l,l} = 1, s_{n-l-1,l} = (-1)^{l+1}
        if ((n - m) % 2 == 0) return 1;
        return (l % 2 == 0) ? -1 : 1;
    }
    // n odd, period 4 in k+l
    switch (((n - m) % 4 + 4) % 4) {
        case 0:
            return 1;  // s_{n-l,l} = 1
        case 1:
            return (l % 2 == 0) ? 1 : -1;  // (-1)^l
        case 2:
            return -1;
        default:
            return (l % 2 == 0) ? -1 : 1;  // (-1)^{l+1}
    }
}

void validate(const FamilyFunction& fn) {
    const int n = fn.n;
    if (n < 1) throw std::out_of_range("family function: n < 1");
    switch (fn.kind) {
        case Kind::G:
            if (!(1 <= fn.j && fn.j <= fn.i && fn.i <= n)) throw std::out_of_range("g_ij: need 1 <= j <= i <= n");
            return;
        case Kind::H:
            if (!(1 <= fn.i && fn.i <= fn.j && fn.j <= n)) throw std::out_of_range("h_ij: need 1 <= i <= j <= n");
            return;
        case Kind::F:
            if (!(fn.i >= 1 && fn.j >= 1 && fn.i + fn.j <= n - 1))
                throw std::out_of_range("f_kl: need k,l >= 1, k+l <= n-1");
            return;
        case Kind::Phi:
        case Kind::Psi:
            if (!(fn.i >= 1 && fn.j >= 1 && fn.i + fn.j <= n))
                throw std::out_of_range("phi/psi_kl: need k,l >= 1, k+l <= n");
            return;
        case Kind::C:
            if (!(0 <= fn.i && fn.i <= n)) throw std::out_of_range("c_r: need 0 <= r <= n");
            return;
        case Kind::DetU:
            return;
    }
}

EvalPtr family_evaluator(const FamilyFunction& fn) {
    validate(fn);
    return make_eval(fn.str(), [fn](const auto& p) { return eval_family(fn, p.X, p.Y); });
}

std::vector<FamilyFunction> enumerate_family(int n) {
    if (n < 2) throw std::out_of_range("enumerate_family: n < 2");
    std::vector<FamilyFunction> fns;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) fns.push_back({Kind::G, i, j, n});
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) fns.push_back({Kind::H, i, j, n});
    for (int k = 1; k <= n - 2; ++k)
        for (int l = 1; k + l <= n - 1; ++l) fns.push_back({Kind::F, k, l, n});
    for (int k = 1; k <= n - 1; ++k)
        for (int l = 1; k + l <= n; ++l) fns.push_back({Kind::Phi, k, l, n});
    for (int r = 1; r <= n - 1; ++r) fns.push_back({Kind::C, r, 0, n});
    return fns;
}

std::vector<FamilyFunction> dual_family(int n) {
    if (n < 2) throw std::out_of_range("dual_family: n < 2");
    std::vector<FamilyFunction> fns;
    for (int k = 1; k <= n - 1; ++k)
        for (int l = 1; k + l <= n; ++l) fns.push_back({Kind::Psi, k, l, n});
    for (int i = 2; i <= n; ++i)
        for (int j = i; j <= n; ++j) fns.push_back({Kind::H, i, j, n, true});
    fns.push_back({Kind::DetU, 0, 0, n});
    for (int r = 1; r <= n - 1; ++r) fns.push_back({Kind::C, r, 0, n, true});
    return fns;
}

namespace {

Mat random_invertible(int n, Rng& rng, long bound) {
    for (int attempt = 0; attempt < 1024; ++attempt) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Rat(rng.int_in(-bound, bound));
        if (det(m) != 0) return m;
    }
    throw ResampleError("random_invertible: exhausted attempts");
}

}  // namespace

DoublePoint sample_double_point(int n, Rng& rng, long bound) {
    if (bound < 1) throw std::invalid_argument("sample_double_point: bound < 1");
    Mat x = random_invertible(n, rng, bound);
    Mat y = random_invertible(n, rng, bound);
    return DoublePoint{std::move(x), std::move(y)};
}

DualPoint sample_dual_point(int n, Rng& rng, long bound) {
    if (bound < 1) throw std::invalid_argument("sample_dual_point: bound < 1");
    DualPoint q;
    q.n = n;
    q.bplus = Mat(n, n);
    q.bminus = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        long d = 0;
        while (d == 0) d = rng.int_in(-bound, bound);
        q.bplus(i, i) = Rat(d);
        q.bminus(i, i) = make_rat(1, d);
        for (int j = i + 1; j < n; ++j) {
            q.bplus(i, j) = Rat(rng.int_in(-bound, bound));
            q.bminus(j, i) = Rat(rng.int_in(-bound, bound));
        }
    }
    return q;
}

}  // namespace dgln
