#include "mterm/extremal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mterm/spectral.hpp"

namespace mterm {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

double weight_sum(int n, double A) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += 1.0 / ((n - k + A) * (n - k + A));
    return s;
}
}  // namespace

double compute_A(double K0) {
    if (!(K0 > 0.0)) throw std::invalid_argument("compute_A: K0 must be positive");
    return 8.0 * K0 * (K0 + 1.0);
}

double compute_C1(int n, double A) {
    if (n < 1) throw std::invalid_argument("compute_C1: n >= 1");
    if (!(A > 0.0)) throw std::invalid_argument("compute_C1: A > 0");
    return 1.0 / (two_pi * weight_sum(n, A));
}

ExtremalFunction build_fstar(const PsiFunction& psi, int n) {
    if (n < 1) throw std::invalid_argument("build_fstar: n >= 1");
    const PsiCharacteristics ch = classify(psi);
    if (ch.in_M_prime_inf != Tristate::True)
        throw std::invalid_argument(
            "build_fstar: generator not classified with bounded eta(t)-t "
            "(in_M_prime_inf = " + to_string(ch.in_M_prime_inf) + ")");

    ExtremalFunction fs;
    fs.psi = psi;
    fs.n = n;
    fs.K0 = estimate_K0(psi, 1e3, 512);
    fs.A = compute_A(fs.K0);
    fs.C1 = compute_C1(n, fs.A);
    fs.poly = TrigPoly(n);
    fs.poly.set_coeff(0, fs.C1 * psi_extended(psi, 0) /
                             (2.0 * (n + fs.A) * (n + fs.A)));
    for (int k = 1; k <= n; ++k) {
        const double c =
            fs.C1 * eval_psi(psi, k) / (2.0 * (n - k + fs.A) * (n - k + fs.A));
        fs.poly.set_coeff(k, c);
        fs.poly.set_coeff(-k, c);
    }
    return fs;
}

MembershipReport verify_membership(const ExtremalFunction& fs, double beta,
                                   double p) {
    check_norm_index(p);
    MembershipReport rep;
    const ClassParams params{fs.psi, beta, p};
    const TrigPoly d = psi_beta_derivative(fs.poly, params);
    rep.norm = lp_norm(d, p);
    rep.crude_bound = two_pi * fs.C1 * weight_sum(fs.n, fs.A);
    rep.ok = rep.norm <= 1.0 + 1e-9 && rep.norm <= rep.crude_bound + 1e-9;
    return rep;
}

MonotoneReport check_psi_n_monotone(const PsiFunction& psi, int n, double A,
                                    int grid_points) {
    if (n < 1) throw std::invalid_argument("check_psi_n_monotone: n >= 1");
    if (!(A > 0.0)) throw std::invalid_argument("check_psi_n_monotone: A > 0");
    MonotoneReport rep;
    if (n == 1) return rep;  // the interval [1, n] is a single point

    auto psi_n = [&](double t) {
        const double d = n - t + A;
        return eval_psi(psi, t) / (d * d);
    };
    double prev = psi_n(1.0);
    for (int i = 1; i < grid_points; ++i) {
        const double t = 1.0 + (n - 1.0) * i / (grid_points - 1);
        const double v = psi_n(t);
        if (v > prev * (1.0 + 1e-12) && rep.monotone) {
            rep.monotone = false;
            rep.offending_t = t;
        }
        prev = v;
    }
    for (int i = 0; i < grid_points; ++i) {
        const double t = 1.0 + (n - 1.0) * i / (grid_points - 1);
        const double ratio =
            std::abs(psi_right_derivative(psi, t)) / eval_psi(psi, t);
        if (2.0 - ratio * (n - t + A) > 1e-12) {
            rep.sign_condition = false;
            if (rep.monotone && rep.offending_t == 0.0) rep.offending_t = t;
            break;
        }
    }
    rep.ok = rep.monotone && rep.sign_condition;
    return rep;
}

double lower_bound_value(const ExtremalFunction& fs) {
    return fs.C1 * eval_psi(fs.psi, fs.n) / (2.0 * fs.A * fs.A);
}

}  // namespace mterm
