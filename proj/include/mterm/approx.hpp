#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mterm/trigpoly.hpp"

namespace mterm {

enum class Method {
    Exhaustive,
    Greedy,
    GreedySwap,
    OrthogonalExhaustive,
    OrthogonalGreedy,
};

std::string to_string(Method m);

/// Thrown when an Exhaustive request would enumerate more subsets than the
/// configured cap; the caller is expected to downgrade the strategy.
struct enumeration_infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApproxOptions {
    long long enumeration_cap = 200000;  // max subsets for Exhaustive
    int irls_max_iters = 100;
    int polish_steps = 200;              // subgradient steps for s in {1, inf}
    int swap_eval_budget_per_m = 50;     // GreedySwap: at most 50*m evaluations
    bool real_coefficients = false;      // restrict fitted c_k to the real line
    int oversample_finite = 8;           // grid oversampling for finite s
    int oversample_inf = 32;             // grid oversampling for s = inf
};

struct MTermResult {
    std::vector<int> gamma;     // sorted ascending, |gamma| = m
    std::vector<cplx> coeffs;   // aligned with gamma
    double error = 0.0;         // achieved L_s value; upper bound on the infimum
    Method method = Method::Greedy;
    std::optional<double> certificate;  // duality lower bound on the true e_m
};

/// Dual function h with unit conjugate norm, orthogonal to a frequency set:
/// integral of h(t) e^{ikt} vanishes for k in `annihilated`.
struct Witness {
    TrigPoly poly;
    double s_conj = 2.0;
    std::vector<int> annihilated;
};

/// L_s norm of the partial-sum remainder: coefficients with |k| >= n kept,
/// |k| <= n-1 removed.
double fourier_sum_error(const TrigPoly& f, int n, double s);

/// Same quantity evaluated on the m-term engine's shared grid, so that it is
/// exactly comparable with best_mterm / orthogonal_mterm errors.
double fourier_sum_error_shared(const TrigPoly& f, int n, double s,
                                const ApproxOptions& opts = {});

struct CoeffFit {
    std::vector<cplx> coeffs;
    double error = 0.0;
    bool converged = true;
};

/// Inner infimum: best coefficients on a fixed frequency set. s = 2 is the
/// closed form (c_k = f_k, Parseval tail); s in (1, inf) runs iteratively
/// reweighted least squares; s in {1, inf} runs a smoothed surrogate
/// (exponent 1.01 resp. 64) followed by subgradient polish on the true
/// objective. The reported error is always the true discretized L_s norm at
/// the returned coefficients.
CoeffFit best_coeffs_on_set(const TrigPoly& f, const std::vector<int>& gamma,
                            double s, const ApproxOptions& opts = {});

/// Best m-term approximation over the index window [-N, N], N = degree(f).
/// Every strategy returns a true upper bound; Exhaustive is the desk-scale
/// oracle and refuses when the subset count exceeds the cap.
MTermResult best_mterm(const TrigPoly& f, int m, double s, Method strategy,
                       const ApproxOptions& opts = {});

/// Same subset search with coefficients pinned to the function's own
/// Fourier coefficients.
MTermResult orthogonal_mterm(const TrigPoly& f, int m, double s,
                             Method strategy, const ApproxOptions& opts = {});

/// |2*pi * sum_k f_k h_{-k}|, the exact coefficient-space value of
/// |integral f h|. Rejects witnesses that violate their invariants.
double duality_value(const TrigPoly& f, const Witness& w);

/// The proof's standard witness for |gamma| = 2n: h(t) = (1/2pi) e^{-i k* t}
/// with k* in [-n, n] \ gamma chosen to maximize |f_{k*}|.
Witness standard_witness(const std::vector<int>& gamma, int n, double s,
                         const TrigPoly& f);

/// Certified lower bound on e_m(f)_s valid for every s in [1, inf]:
/// min_{|k| <= floor((m+1)/2)} |f_k|. Any gamma of size m leaves some
/// admissible witness frequency in that range.
double mterm_certificate(const TrigPoly& f, int m);

struct ChainRow {
    int m = 0;
    double e_best = 0.0;
    double e_orth = 0.0;
    bool ok = true;
};

struct ChainReport {
    int n = 0;
    double s = 2.0;
    double E_n = 0.0;
    ChainRow rows[2];  // m = 2n-1 and m = 2n
    bool ok = true;
    std::string violation;  // empty when ok
};

/// Verifies e_m <= e_orth_m <= E_n for m in {2n-1, 2n} with all three
/// quantities evaluated on one shared grid. Relative tolerance 1e-7.
ChainReport chain_check(const TrigPoly& f, int n, double s,
                        const ApproxOptions& opts = {});

}  // namespace mterm
