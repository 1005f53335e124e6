#include "dgln/identity.hpp"

namespace dgln {

CorollaryReport verify_corollary(const Mat& x, const Mat& y) {
    const std::size_t n = x.rows();
    if (n <= 2) throw std::invalid_argument("verify_corollary: stated for n > 2");
    const int ni = static_cast<int>(n);

    Rat phi12 = eval_family(FamilyFunction{Kind::Phi, 1, 2, ni}, x, y);
    Rat phi21 = eval_family(FamilyFunction{Kind::Phi, 2, 1, ni}, x, y);
    Rat phi11 = eval_family(FamilyFunction{Kind::Phi, 1, 1, ni}, x, y);
    if (phi11 == 0) throw ResampleError("phi_11 vanishes at sample point");

    Rat a = Rat(sign_skl(ni, 1, 2)) * phi12;
    Rat b = Rat(sign_skl(ni, 2, 1)) * phi21;
    CorollaryReport rep;
    rep.phi11 = phi11;
    rep.pencil_det = det(a * x + b * y);

    // P*_n from the Krylov side at A = X^-1 Y, u = e_n, v = e_{n-1}.
    Mat u = inverse(x) * y;
    std::vector<Rat> en(n, Rat(0)), en1(n, Rat(0));
    en[n - 1] = Rat(1);
    en1[n - 2] = Rat(1);
    auto kd = build_krylov(u, en, en1);
    int sgn = (n % 4 == 0 || n % 4 == 1) ? 1 : -1;  // (-1)^{n(n-1)/2}
    Rat dx = det(x);
    rep.p_star = Rat(sgn * sign_skl(ni, 1, 1)) * pow_rat(dx, static_cast<long>((n - 1) * (n - 2))) *
                 det(kd.gamma_star);
    rep.equal = rep.pencil_det == rep.phi11 * rep.p_star;
    return rep;
}

}  // namespace dgln
