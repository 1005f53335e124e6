#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgln/identity.hpp"
#include "dgln/mutation.hpp"
#include "testutil.hpp"

using namespace dgln;

namespace {

std::vector<Rat> random_vec(int n, Rng& rng, long bound = 7) {
    std::vector<Rat> v(n);
    for (int i = 0; i < n; ++i) v[i] = Rat(rng.int_in(-bound, bound));
    return v;
}

}  // namespace

TEST_CASE("Krylov data: shapes and the defining property of w") {
    Rng rng(70);
    int n = 4;
    Mat a = testutil::random_mat(n, rng);
    auto u = random_vec(n, rng), v = random_vec(n, rng);
    auto kd = build_krylov(a, u, v);

    // columns of Gamma are u, Au, A^2 u, ...
    CHECK(kd.gamma.column(0) == u);
    CHECK(kd.gamma.column(2) == a.apply(a.apply(u)));
    CHECK(kd.gamma1.column(0) == v);
    CHECK(kd.gamma1.column(1) == u);
    CHECK(kd.gamma2.column(0) == a.apply(v));

    // w Gamma_1 = det(Gamma_1) e_n^T
    Rat d1 = det(kd.gamma1);
    auto prod = kd.gamma1.transpose().apply(kd.w);  // row-vector times matrix
    for (int j = 0; j < n; ++j) CHECK(prod[j] == (j == n - 1 ? d1 : Rat(0)));

    // w annihilates the first n-1 columns even when det Gamma_1 = 0
    auto kd2 = build_krylov(a, u, u);
    auto prod2 = kd2.gamma1.transpose().apply(kd2.w);
    for (int j = 0; j < n - 1; ++j) CHECK(prod2[j] == 0);
}

TEST_CASE("Krylov degenerate cases") {
    // A = I: all Krylov columns coincide
    int n = 3;
    Mat a = Mat::identity(n);
    std::vector<Rat> u{Rat(1), Rat(2), Rat(3)}, v{Rat(1), Rat(0), Rat(0)};
    auto kd = build_krylov(a, u, v);
    CHECK(det(kd.gamma) == 0);

    // n = 1: Gamma_1 = [v], adjugate is [1], w = (1)
    Mat a1(1, 1);
    a1(0, 0) = Rat(5);
    auto kd1 = build_krylov(a1, {Rat(3)}, {Rat(7)});
    CHECK(kd1.w == std::vector<Rat>{Rat(1)});
    CHECK(kd1.gamma_star(0, 0) == 1);
}

TEST_CASE("the long identity holds exactly for n = 2..6") {
    Rng rng(71);
    for (int n = 2; n <= 6; ++n)
        for (int t = 0; t < 10; ++t) {
            Mat a = testutil::random_mat(n, rng);
            auto r = verify_long_identity(a, random_vec(n, rng), random_vec(n, rng));
            CAPTURE(n);
            CHECK(r.equal);
        }
}

TEST_CASE("hand-expanded n = 2 instance") {
    Mat a{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    std::vector<Rat> u{Rat(0), Rat(1)}, v{Rat(1), Rat(0)};
    auto kd = build_krylov(a, u, v);
    CHECK(kd.gamma1 == Mat::identity(2));
    Mat g2{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}};
    CHECK(kd.gamma2 == g2);
    auto r = verify_long_identity(a, u, v);
    CHECK(r.equal);
    CHECK(r.lhs == -1);  // det(1*A - 0*I) = det A = -1
    CHECK(r.rhs == -1);  // -1 * det Gamma * det Gamma* = -1 * (-1) * (-1)
}

TEST_CASE("u inside a proper invariant subspace kills both sides") {
    // block upper-triangular A with u supported on the leading block
    Rng rng(72);
    int n = 4, b = 2;
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i < b || j >= b) a(i, j) = Rat(rng.int_in(-5, 5));
    std::vector<Rat> u(n, Rat(0));
    u[0] = Rat(3);
    u[1] = Rat(-2);
    auto v = random_vec(n, rng);
    auto kd = build_krylov(a, u, v);
    CHECK(det(kd.gamma) == 0);
    auto r = verify_long_identity(a, u, v);
    CHECK(r.equal);
    CHECK(r.lhs == 0);
    CHECK(r.rhs == 0);
}

TEST_CASE("the identity holds when det Gamma_1 = 0") {
    Rng rng(73);
    int n = 3;
    Mat a = testutil::random_mat(n, rng);
    auto u = random_vec(n, rng);
    auto r = verify_long_identity(a, u, u);  // v = u makes Gamma_1 singular
    CHECK(r.equal);
}

TEST_CASE("both sides are polynomial: the identity survives jet inputs") {
    Rng rng(74);
    int n = 3;
    MatT<Jet> a(n, n);
    std::vector<Jet> u(n), v(n);
    for (int i = 0; i < n; ++i) {
        u[i] = Jet(Rat(rng.int_in(-5, 5)), Rat(rng.int_in(-5, 5)));
        v[i] = Jet(Rat(rng.int_in(-5, 5)), Rat(rng.int_in(-5, 5)));
        for (int j = 0; j < n; ++j) a(i, j) = Jet(Rat(rng.int_in(-5, 5)), Rat(rng.int_in(-5, 5)));
    }
    auto r = verify_long_identity(a, u, v);
    CHECK(r.equal);  // value and derivative parts both agree
}

TEST_CASE("corollary: exact factorization at n = 3 and n = 4") {
    Rng rng(75);
    for (int n : {3, 4}) {
        int done = 0;
        while (done < (n == 3 ? 10 : 5)) {
            DoublePoint p = sample_double_point(n, rng);
            try {
                auto r = verify_corollary(p.X, p.Y);
                CAPTURE(n);
                CHECK(r.equal);
                CHECK(r.pencil_det == r.phi11 * r.p_star);
                ++done;
            } catch (const ResampleError&) {
            }
        }
    }
}

TEST_CASE("corollary consistency: P equals the exchange value at phi11, n = 3") {
    Rng rng(76);
    int n = 3;
    MutationState st = initial_state(n);
    int v = find_vertex(st.seed.quiver, "phi11");
    int done = 0;
    while (done < 5) {
        DoublePoint p = sample_double_point(n, rng);
        try {
            auto r = verify_corollary(p.X, p.Y);
            Rat xprime = exchange_value(st, v, p);
            CHECK(r.p_star == xprime);  // measured relative sign is +1 at n = 3
            ++done;
        } catch (const ResampleError&) {
        }
    }
}

TEST_CASE("corollary rejects n = 2") {
    Rng rng(77);
    DoublePoint p = sample_double_point(2, rng);
    CHECK_THROWS_AS(verify_corollary(p.X, p.Y), std::invalid_argument);
}
