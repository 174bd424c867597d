#pragma once

#include <complex>
#include <vector>

namespace mterm {

using cplx = std::complex<double>;

/// Trigonometric polynomial sum_{k=-N..N} c_k e^{ikt} stored as a dense
/// two-sided coefficient array. Index k maps to slot k + N.
class TrigPoly {
public:
    TrigPoly() : degree_(0), c_(1) {}
    explicit TrigPoly(int degree) : degree_(degree), c_(2 * degree + 1) {}

    int degree() const { return degree_; }
    int size() const { return 2 * degree_ + 1; }

    cplx coeff(int k) const {
        return (k < -degree_ || k > degree_) ? cplx{} : c_[k + degree_];
    }
    void set_coeff(int k, cplx v);

    const std::vector<cplx>& raw() const { return c_; }

    /// c_{-k} == conj(c_k) for every k, within an absolute tolerance.
    bool is_real(double tol = 1e-14) const;

    /// 2*pi * sum |c_k|^2  (squared L2 norm under the unnormalized
    /// integral convention).
    double parseval_norm2_sq() const;

    /// Largest |k| with c_k != 0; 0 for the zero polynomial.
    int effective_degree() const;

    TrigPoly operator-(const TrigPoly& other) const;

private:
    int degree_;
    std::vector<cplx> c_;
};

/// Uniform samples of a 2*pi-periodic function at t_j = 2*pi*j/M.
struct GridSignal {
    int samples = 0;  // power of two
    std::vector<cplx> values;

    double t_at(int j) const;
    bool is_real(double tol = 1e-9) const;
};

/// Conjugate exponent: 1/s + 1/s' = 1, with 1 <-> inf.
/// Norm indices are plain doubles; infinity is represented by INFINITY.
double conjugate_exponent(double s);

/// Validates a norm index: s in [1, inf].
void check_norm_index(double s);

/// Sampling policy: the number of uniform samples used to evaluate norms of
/// a polynomial of the given degree. 8x oversampling for finite p, 32x for
/// the sup norm (a grid max underestimates the sup), rounded up to a power
/// of two. The factors can be overridden per experiment.
int recommended_samples(int degree, double p, int finite_factor = 8,
                        int inf_factor = 32);

/// Evaluate the polynomial at the M uniform grid points. M must be a power
/// of two with M >= 2N+1.
GridSignal synthesize(const TrigPoly& poly, int samples);

/// Discrete Fourier coefficients c_k = (1/M) sum_j v_j e^{-ik t_j} for
/// |k| <= N; exact for trig polynomials of degree <= N sampled on the same
/// grid. Requires M >= 2N+2.
TrigPoly analyze(const GridSignal& signal, int degree);

/// Fraction of the signal's mean-square energy not captured by degree-N
/// coefficients; > 1e-8 indicates aliasing in analyze().
double aliased_energy_ratio(const GridSignal& signal, int degree);

/// L_p norm by rectangle-rule quadrature: ((2pi/M) sum |v_j|^p)^(1/p);
/// max_j |v_j| for p = inf.
double lp_norm(const GridSignal& signal, double p);

/// Convenience: lp_norm of the polynomial under the sampling policy.
double lp_norm(const TrigPoly& poly, double p);

}  // namespace mterm
