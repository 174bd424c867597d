#pragma once

#include <optional>
#include <string>

namespace mterm {

/// Three-valued outcome for membership classification: a finite probe grid
/// can refute a property or support it, but some patterns are undecidable.
enum class Tristate { False, True, Inconclusive };

std::string to_string(Tristate t);

/// Decreasing generator function psi on [1, inf).
///
/// Two closed-form families are supported:
///   ExpPower: psi(t) = exp(-alpha * t^r),  alpha > 0, r >= 1
///   Power:    psi(t) = t^(-r),             r > 0
/// Both are positive, nonincreasing, convex and tend to zero, so they are
/// valid generators; only the ExpPower family has bounded eta(t) - t.
struct PsiFunction {
    enum class Kind { ExpPower, Power };

    Kind kind;
    double alpha = 1.0;  // ExpPower only
    double r = 1.0;

    static PsiFunction exp_power(double alpha, double r);
    static PsiFunction power(double r);

    bool operator==(const PsiFunction&) const = default;
    std::string describe() const;
};

/// psi(t) for t >= 1. Values in [0,1) are permitted only through
/// psi_extended (the k=0 convention); here t < 1 is rejected.
double eval_psi(const PsiFunction& psi, double t);

/// Sequence value psi(k) extended to k=0 by psi(0) = psi(1).
double psi_extended(const PsiFunction& psi, int k);

/// Right derivative psi'(t+0); classical derivative for both families.
double psi_right_derivative(const PsiFunction& psi, double t);

/// Inverse function: the t >= 1 with psi(t) = y, for y in (0, psi(1)].
/// Closed form for both families.
double psi_inverse(const PsiFunction& psi, double y);

/// Inverse by monotone bisection on a geometrically grown bracket.
/// Independent of the closed forms; kept public as a cross-check route.
/// rel_tol is on the function value: |psi(t) - y| <= rel_tol * y.
double psi_inverse_bisect(const PsiFunction& psi, double y,
                          double rel_tol = 1e-12, int max_iters = 200);

/// eta(t) = psi^{-1}(psi(t) / 2), the half-decay point.
double eta(const PsiFunction& psi, double t);

/// mu(t) = t / (eta(t) - t). Throws if eta(t) - t degenerates.
double mu(const PsiFunction& psi, double t);

struct K0Options {
    double t_max = 1e3;
    int grid_points = 512;
};

/// sup of eta(t) - t over a geometric probe grid on [1, t_max]; for the
/// ExpPower family the analytic maximum (1 + ln2/alpha)^{1/r} - 1 at t = 1
/// is folded in so the constant does not inherit grid noise.
double estimate_K0(const PsiFunction& psi, double t_max, int grid_points);

/// Characteristics bundle produced by classify().
struct PsiCharacteristics {
    double K0 = 0.0;               // max of eta - t over the probe grid
    Tristate in_M = Tristate::Inconclusive;
    Tristate in_M_plus_inf = Tristate::Inconclusive;
    Tristate in_M_prime_inf = Tristate::Inconclusive;

    // grid evidence retained for reporting
    double mu_first = 0.0;
    double mu_last = 0.0;
    double eta_gap_first_decade = 0.0;  // max of eta - t on [1, 10]
    double eta_gap_last_decade = 0.0;   // max of eta - t on [t_max/10, t_max]
};

struct ClassifyOptions {
    double t_max = 1e3;
    int grid_points = 512;
    double growth_threshold = 10.0;   // mu(t_max) / mu(1) needed for "tends to inf"
    double stabilize_tol = 0.05;      // last-decade eta-gap max vs first-decade
    double decay_threshold = 0.5;     // psi(t_max) / psi(1) must fall below this
};

/// Finite-evidence classification of psi against the generator families:
/// membership in the base family (positive, nonincreasing, convex, decaying),
/// mu increasing to infinity, and bounded eta(t) - t. A grid cannot prove an
/// asymptotic property, so each flag is a Tristate.
PsiCharacteristics classify(const PsiFunction& psi,
                            const ClassifyOptions& opts = {});

}  // namespace mterm
