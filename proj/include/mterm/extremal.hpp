#pragma once

#include <string>

#include "mterm/psi.hpp"
#include "mterm/trigpoly.hpp"

namespace mterm {

/// The extremal polynomial
///   f*(t) = C1 * ( psi(1)/(2(n+A)^2) + sum_{k=1..n} psi(k)/((n-k+A)^2) cos kt )
/// together with the constants that define it. All 2n+1 complex coefficients
/// are real and positive: c_k = C1 * psi(|k|) / (2 (n-|k|+A)^2) with the
/// psi(0) = psi(1) convention at k = 0.
struct ExtremalFunction {
    PsiFunction psi;
    int n = 1;
    double K0 = 0.0;
    double A = 0.0;
    double C1 = 0.0;
    TrigPoly poly;
};

/// Threshold constant, taken with equality: A = 8 K0 (K0 + 1). The smallest
/// admissible A gives the sharpest certified bound psi(n)/A^2.
double compute_A(double K0);

/// Largest constant with 2 pi C1 sum_{k=1..n} (n-k+A)^{-2} = 1.
double compute_C1(int n, double A);

/// Builds f* for a generator classified inside the bounded-gap family;
/// refuses otherwise, naming the failed flag.
ExtremalFunction build_fstar(const PsiFunction& psi, int n);

struct MembershipReport {
    double norm = 0.0;        // || (f*)^psi_beta ||_p on the oversampled grid
    double crude_bound = 0.0; // 2 pi C1 sum (n-k+A)^{-2}, equals 1 by construction
    bool ok = false;          // norm <= 1 + 1e-9
};

/// Verifies that the derivative of f* stays in the unit L_p ball, both
/// directly and against the crude coefficient-sum bound.
MembershipReport verify_membership(const ExtremalFunction& fs, double beta,
                                   double p);

struct MonotoneReport {
    bool monotone = true;        // psi_n nonincreasing on the probe grid
    bool sign_condition = true;  // 2 - (|psi'|/psi)(n-t+A) <= 0 pointwise
    double offending_t = 0.0;    // first failure location when not ok
    bool ok = true;
};

/// Checks that psi_n(t) = psi(t)/(n-t+A)^2 is nonincreasing on [1, n] on a
/// dense grid, plus the derivative sign condition that forces it.
MonotoneReport check_psi_n_monotone(const PsiFunction& psi, int n, double A,
                                    int grid_points = 1024);

/// The certified lower bound C1 * psi(n) / (2 A^2) on e_{2n}(f*)_s.
/// Valid for every s in [1, inf] once psi_n is nonincreasing on [1, n]
/// (n >= 2; at n = 1 the k = 0 coefficient of f* is smaller, and the
/// sharp certificate is mterm_certificate instead).
double lower_bound_value(const ExtremalFunction& fs);

}  // namespace mterm
