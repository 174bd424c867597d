#pragma once

#include "mterm/psi.hpp"
#include "mterm/trigpoly.hpp"

namespace mterm {

/// Parameters of a convolution class: generator psi, phase shift beta, and
/// the ball exponent p. beta is unrestricted; p in [1, inf].
struct ClassParams {
    PsiFunction psi;
    double beta = 0.0;
    double p = 2.0;
};

/// Degree-N truncation of the kernel sum_{k>=1} psi(k) cos(kt - beta*pi/2):
/// c_k = (psi(|k|)/2) e^{-i (beta pi/2) sign k}, c_0 = 0.
TrigPoly kernel_poly(const PsiFunction& psi, double beta, int degree);

/// Upper bound on the dropped kernel mass sum_{k>N} psi(k). Infinity when
/// the series diverges (Power with r <= 1).
double kernel_tail(const PsiFunction& psi, int degree);

/// Fourier-multiplier derivative: d_k = (c_k / psi(|k|)) e^{i (beta pi/2)
/// sign k} for k != 0 and d_0 = 0. Preserves realness.
TrigPoly psi_beta_derivative(const TrigPoly& f, const ClassParams& params);

/// Builds the class element with derivative phi: f_k = psi(|k|) phi_k
/// e^{-i (beta pi/2) sign k} for k != 0, f_0 = 0. With normalize set, phi is
/// first scaled to unit L_p norm, so f lands in the unit-ball class when phi
/// has zero mean. Verifies the derivative round trip internally.
TrigPoly class_sample(const TrigPoly& phi, const ClassParams& params,
                      bool normalize);

}  // namespace mterm
