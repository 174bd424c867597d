#include "mterm/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mterm {

namespace {
// e^{+i (beta pi/2) sign k}; the kernel and class construction use the
// conjugate phase, the derivative uses this one.
cplx phase_pos(double beta, int k) {
    if (k == 0) return {1.0, 0.0};
    const double arg = beta * std::numbers::pi / 2.0 * (k > 0 ? 1.0 : -1.0);
    return std::polar(1.0, arg);
}
}  // namespace

TrigPoly kernel_poly(const PsiFunction& psi, double beta, int degree) {
    if (degree < 1) throw std::invalid_argument("kernel_poly: degree >= 1");
    TrigPoly out(degree);
    for (int k = 1; k <= degree; ++k) {
        const double half = eval_psi(psi, k) / 2.0;
        out.set_coeff(k, half * std::conj(phase_pos(beta, k)));
        out.set_coeff(-k, half * std::conj(phase_pos(beta, -k)));
    }
    return out;
}

double kernel_tail(const PsiFunction& psi, int degree) {
    if (psi.kind == PsiFunction::Kind::Power && psi.r <= 1.0)
        return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int k = degree + 1; k <= degree + 2000000; ++k) {
        const double v = eval_psi(psi, k);
        sum += v;
        if (v < 1e-18 * (sum + 1e-300)) return sum;
    }
    // slow decay: finish with an integral bound for the remainder
    if (psi.kind == PsiFunction::Kind::Power) {
        const double t0 = degree + 2000000;
        return sum + std::pow(t0, 1.0 - psi.r) / (psi.r - 1.0);
    }
    return sum;
}

TrigPoly psi_beta_derivative(const TrigPoly& f, const ClassParams& params) {
    TrigPoly out(f.degree());
    for (int k = -f.degree(); k <= f.degree(); ++k) {
        if (k == 0) continue;
        const cplx c = f.coeff(k);
        if (c == cplx{}) continue;
        out.set_coeff(k, c / eval_psi(params.psi, std::abs(k)) *
                             phase_pos(params.beta, k));
    }
    return out;
}

TrigPoly class_sample(const TrigPoly& phi, const ClassParams& params,
                      bool normalize) {
    if (!phi.is_real())
        throw std::invalid_argument("class_sample: phi must be real-valued");
    double scale = 1.0;
    if (normalize) {
        const double norm = lp_norm(phi, params.p);
        if (norm <= 0.0)
            throw std::invalid_argument("class_sample: cannot normalize zero phi");
        scale = 1.0 / norm;
    }
    TrigPoly out(phi.degree());
    for (int k = -phi.degree(); k <= phi.degree(); ++k) {
        if (k == 0) continue;
        out.set_coeff(k, scale * phi.coeff(k) * eval_psi(params.psi, std::abs(k)) *
                             std::conj(phase_pos(params.beta, k)));
    }
    // round trip: the derivative must reproduce the scaled phi minus its mean
    const TrigPoly back = psi_beta_derivative(out, params);
    for (int k = -phi.degree(); k <= phi.degree(); ++k) {
        if (k == 0) continue;
        if (std::abs(back.coeff(k) - scale * phi.coeff(k)) > 1e-10)
            throw std::logic_error("class_sample: derivative round trip failed");
    }
    return out;
}

}  // namespace mterm
