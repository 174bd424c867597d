#include "mterm/psi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mterm {

std::string to_string(Tristate t) {
    switch (t) {
        case Tristate::False: return "false";
        case Tristate::True: return "true";
        default: return "inconclusive";
    }
}

PsiFunction PsiFunction::exp_power(double alpha, double r) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("ExpPower: alpha must be positive");
    if (!(r >= 1.0) || !std::isfinite(r))
        throw std::invalid_argument("ExpPower: r must be >= 1");
    return PsiFunction{Kind::ExpPower, alpha, r};
}

PsiFunction PsiFunction::power(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("Power: r must be positive");
    return PsiFunction{Kind::Power, 1.0, r};
}

std::string PsiFunction::describe() const {
    char buf[64];
    if (kind == Kind::ExpPower)
        std::snprintf(buf, sizeof buf, "exp(-%g*t^%g)", alpha, r);
    else
        std::snprintf(buf, sizeof buf, "t^(-%g)", r);
    return buf;
}

namespace {
void check_domain(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("psi: non-finite t");
    if (t < 1.0) throw std::invalid_argument("psi: t must be >= 1");
}
}  // namespace

double eval_psi(const PsiFunction& psi, double t) {
    check_domain(t);
    if (psi.kind == PsiFunction::Kind::ExpPower)
        return std::exp(-psi.alpha * std::pow(t, psi.r));
    return std::pow(t, -psi.r);
}

double psi_extended(const PsiFunction& psi, int k) {
    if (k < 0) throw std::invalid_argument("psi_extended: k must be >= 0");
    return eval_psi(psi, k == 0 ? 1.0 : static_cast<double>(k));
}

double psi_right_derivative(const PsiFunction& psi, double t) {
    check_domain(t);
    if (psi.kind == PsiFunction::Kind::ExpPower)
        return -psi.alpha * psi.r * std::pow(t, psi.r - 1.0) *
               std::exp(-psi.alpha * std::pow(t, psi.r));
    return -psi.r * std::pow(t, -psi.r - 1.0);
}

namespace {
void check_inverse_range(const PsiFunction& psi, double y) {
    if (!(y > 0.0) || !std::isfinite(y))
        throw std::invalid_argument("psi_inverse: y must be in (0, psi(1)]");
    const double top = eval_psi(psi, 1.0);
    if (y > top * (1.0 + 1e-15))
        throw std::invalid_argument("psi_inverse: y exceeds psi(1)");
}
}  // namespace

double psi_inverse(const PsiFunction& psi, double y) {
    check_inverse_range(psi, y);
    if (psi.kind == PsiFunction::Kind::ExpPower) {
        // y = exp(-alpha t^r)  =>  t = (-ln y / alpha)^(1/r)
        // (-log(y) stays finite down to the denormal range where 1/y would
        // overflow)
        const double t = std::pow(-std::log(y) / psi.alpha, 1.0 / psi.r);
        return std::max(t, 1.0);
    }
    // y = t^-r  =>  t = y^(-1/r)
    return std::max(std::pow(y, -1.0 / psi.r), 1.0);
}

double psi_inverse_bisect(const PsiFunction& psi, double y, double rel_tol,
                          int max_iters) {
    check_inverse_range(psi, y);
    // grow the bracket geometrically until psi(hi) <= y
    double lo = 1.0, hi = 2.0;
    while (eval_psi(psi, hi) > y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("psi_inverse_bisect: no bracket");
    }
    for (int i = 0; i < max_iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double v = eval_psi(psi, mid);
        if (std::abs(v - y) <= rel_tol * y) return mid;
        (v > y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double eta(const PsiFunction& psi, double t) {
    return psi_inverse(psi, eval_psi(psi, t) / 2.0);
}

double mu(const PsiFunction& psi, double t) {
    const double gap = eta(psi, t) - t;
    if (!(gap > 1e-300))
        throw std::domain_error("mu: eta(t) - t degenerates (flat psi)");
    return t / gap;
}

namespace {
std::vector<double> geometric_grid(double t_max, int points) {
    std::vector<double> g(points);
    const double ratio = std::log(t_max) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = std::exp(i * ratio);
    g.front() = 1.0;
    g.back() = t_max;
    return g;
}

// Largest probe point with psi(t) comfortably above the denormal range, so
// that eta = psi^{-1}(psi(t)/2) stays evaluable. ExpPower crosses 1e-290
// at alpha * t^r ~ 668; Power never underflows at desk scales.
double representable_t_max(const PsiFunction& psi, double t_max) {
    if (psi.kind != PsiFunction::Kind::ExpPower) return t_max;
    const double horizon = std::pow(668.0 / psi.alpha, 1.0 / psi.r);
    return std::min(t_max, std::max(horizon, 2.0));
}
}  // namespace

double estimate_K0(const PsiFunction& psi, double t_max, int grid_points) {
    if (!(t_max >= 2.0)) throw std::invalid_argument("estimate_K0: t_max >= 2");
    if (grid_points < 16) throw std::invalid_argument("estimate_K0: grid_points >= 16");
    double best = 0.0;
    for (double t : geometric_grid(representable_t_max(psi, t_max), grid_points))
        best = std::max(best, eta(psi, t) - t);
    if (psi.kind == PsiFunction::Kind::ExpPower) {
        // eta(t) - t = (t^r + ln2/alpha)^{1/r} - t is nonincreasing for r >= 1,
        // so the supremum is attained at t = 1.
        const double analytic =
            std::pow(1.0 + std::log(2.0) / psi.alpha, 1.0 / psi.r) - 1.0;
        best = std::max(best, analytic);
    }
    return best;
}

PsiCharacteristics classify(const PsiFunction& psi, const ClassifyOptions& opts) {
    if (!(opts.t_max >= 10.0)) throw std::invalid_argument("classify: t_max >= 10");
    PsiCharacteristics out;
    const double t_top = std::max(10.0, representable_t_max(psi, opts.t_max));
    const auto grid = geometric_grid(t_top, opts.grid_points);

    // --- base family: positive, nonincreasing, midpoint-convex, decaying ---
    bool positive = true, monotone = true, convex = true;
    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        vals[i] = eval_psi(psi, grid[i]);
        if (!(vals[i] > 0.0)) positive = false;
    }
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (vals[i + 1] > vals[i] * (1.0 + 1e-12)) monotone = false;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        const double mid = 0.5 * (grid[i] + grid[i + 1]);
        const double chord = 0.5 * (vals[i] + vals[i + 1]);
        if (eval_psi(psi, mid) > chord * (1.0 + 1e-12)) convex = false;
    }
    const bool decayed = vals.back() <= opts.decay_threshold * vals.front();
    if (!positive || !monotone || !convex)
        out.in_M = Tristate::False;
    else
        out.in_M = decayed ? Tristate::True : Tristate::Inconclusive;

    // --- mu monotone increasing to infinity ---
    bool mu_nondecreasing = true;
    bool early_dip_only = true;  // dips confined to t < 10
    double mu_prev = mu(psi, grid.front());
    out.mu_first = mu_prev;
    for (size_t i = 1; i < grid.size(); ++i) {
        const double m = mu(psi, grid[i]);
        if (m < mu_prev * (1.0 - 1e-9)) {
            mu_nondecreasing = false;
            if (grid[i] >= 10.0) early_dip_only = false;
        }
        mu_prev = m;
    }
    out.mu_last = mu_prev;
    const bool grows = out.mu_last > out.mu_first * opts.growth_threshold;
    if (mu_nondecreasing)
        out.in_M_plus_inf = grows ? Tristate::True : Tristate::False;
    else
        out.in_M_plus_inf = early_dip_only && grows ? Tristate::Inconclusive
                                                    : Tristate::False;

    // --- eta(t) - t bounded: the gap must stabilize across decades ---
    double gap_max = 0.0;
    for (double t : grid) {
        const double gap = eta(psi, t) - t;
        gap_max = std::max(gap_max, gap);
        if (t <= 10.0)
            out.eta_gap_first_decade = std::max(out.eta_gap_first_decade, gap);
        if (t >= t_top / 10.0)
            out.eta_gap_last_decade = std::max(out.eta_gap_last_decade, gap);
    }
    out.K0 = gap_max;
    if (psi.kind == PsiFunction::Kind::ExpPower)
        out.K0 = estimate_K0(psi, opts.t_max, opts.grid_points);

    if (out.in_M_plus_inf == Tristate::False) {
        out.in_M_prime_inf = Tristate::False;
    } else if (out.eta_gap_last_decade <=
               out.eta_gap_first_decade * (1.0 + opts.stabilize_tol)) {
        out.in_M_prime_inf = out.in_M_plus_inf == Tristate::True
                                 ? Tristate::True
                                 : Tristate::Inconclusive;
    } else if (out.eta_gap_last_decade > 2.0 * out.eta_gap_first_decade) {
        out.in_M_prime_inf = Tristate::False;
    } else {
        out.in_M_prime_inf = Tristate::Inconclusive;
    }
    return out;
}

}  // namespace mterm
