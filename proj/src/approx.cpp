#include "mterm/approx.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mterm {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Exhaustive: return "Exhaustive";
        case Method::Greedy: return "Greedy";
        case Method::GreedySwap: return "GreedySwap";
        case Method::OrthogonalExhaustive: return "OrthogonalExhaustive";
        case Method::OrthogonalGreedy: return "OrthogonalGreedy";
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// shared evaluation grid
//
// All quantities compared against each other (m-term errors, orthogonal
// errors, Fourier remainders) are evaluated on one grid per input function,
// sized for the largest index that can appear (window plus one padding
// slot). On a shared grid the discrete L_s functional is a genuine norm, so
// the definitional inequalities survive discretization exactly.
// ---------------------------------------------------------------------------

struct GridPlan {
    const TrigPoly* f = nullptr;
    double s = 2.0;
    int W = 0;  // columns available for |k| <= W
    int M = 0;
    bool use_grid = false;  // false for the exact s = 2 coefficient path
    std::vector<cplx> fsamp;
    std::vector<std::vector<cplx>> cols;  // cols[k + W][j] = e^{ik t_j}
    double total2 = 0.0;                  // sum over k of |f_k|^2
};

GridPlan make_plan(const TrigPoly& f, double s, const ApproxOptions& opts,
                   int w_extra = 1) {
    check_norm_index(s);
    GridPlan plan;
    plan.f = &f;
    plan.s = s;
    plan.W = f.degree() + w_extra;
    plan.total2 = f.parseval_norm2_sq() / two_pi;
    plan.use_grid = !(s == 2.0);
    if (plan.use_grid) {
        plan.M = recommended_samples(plan.W, s, opts.oversample_finite,
                                     opts.oversample_inf);
        plan.fsamp = synthesize(f, plan.M).values;
        plan.cols.resize(2 * plan.W + 1);
        std::vector<cplx> roots(plan.M);
        for (int l = 0; l < plan.M; ++l)
            roots[l] = std::polar(1.0, two_pi * l / plan.M);
        for (int k = -plan.W; k <= plan.W; ++k) {
            auto& col = plan.cols[k + plan.W];
            col.resize(plan.M);
            const int step = ((k % plan.M) + plan.M) % plan.M;
            int idx = 0;
            for (int j = 0; j < plan.M; ++j) {
                col[j] = roots[idx];
                idx += step;
                if (idx >= plan.M) idx -= plan.M;
            }
        }
    }
    return plan;
}

double discrete_norm(const std::vector<cplx>& v, double s) {
    double vmax = 0.0;
    for (const cplx& x : v) vmax = std::max(vmax, std::abs(x));
    if (std::isinf(s) || vmax == 0.0) return vmax;
    double acc = 0.0;
    for (const cplx& x : v) acc += std::pow(std::abs(x) / vmax, s);
    acc *= two_pi / v.size();
    return vmax * std::pow(acc, 1.0 / s);
}

// residual of the pinned-coefficient approximant on gamma
std::vector<cplx> pinned_residual(const GridPlan& plan,
                                  const std::vector<int>& gamma) {
    std::vector<cplx> r = plan.fsamp;
    for (int k : gamma) {
        if (std::abs(k) > plan.f->degree()) continue;  // pinned coeff is zero
        const cplx c = plan.f->coeff(k);
        if (c == cplx{}) continue;
        const auto& col = plan.cols[k + plan.W];
        for (int j = 0; j < plan.M; ++j) r[j] -= c * col[j];
    }
    return r;
}

double pinned_error(const GridPlan& plan, const std::vector<int>& gamma) {
    if (!plan.use_grid) {
        double kept = 0.0;
        for (int k : gamma)
            if (std::abs(k) <= plan.f->degree()) kept += std::norm(plan.f->coeff(k));
        return std::sqrt(two_pi * std::max(0.0, plan.total2 - kept));
    }
    return discrete_norm(pinned_residual(plan, gamma), plan.s);
}

// L_s error of the Fourier window [-(n-1), n-1] on the shared grid; equals
// fourier_sum_error up to the grid policy.
double window_error(const GridPlan& plan, int n) {
    std::vector<int> gamma;
    for (int k = -(n - 1); k <= n - 1; ++k) gamma.push_back(k);
    return pinned_error(plan, gamma);
}

// ---------------------------------------------------------------------------
// inner solver: best coefficients on a fixed set
// ---------------------------------------------------------------------------

struct InnerProblem {
    const GridPlan* plan;
    std::vector<int> gamma;
    Eigen::MatrixXcd E;    // M x m
    Eigen::VectorXcd fv;   // M
    bool real_coeffs = false;

    Eigen::VectorXcd residual(const Eigen::VectorXcd& c) const {
        return fv - E * c;
    }
    double true_error(const Eigen::VectorXcd& c, double s) const {
        const Eigen::VectorXcd r = residual(c);
        std::vector<cplx> v(r.data(), r.data() + r.size());
        return discrete_norm(v, s);
    }
};

InnerProblem make_inner(const GridPlan& plan, const std::vector<int>& gamma,
                        bool real_coeffs) {
    InnerProblem ip;
    ip.plan = &plan;
    ip.gamma = gamma;
    ip.real_coeffs = real_coeffs;
    const int m = static_cast<int>(gamma.size());
    ip.E.resize(plan.M, m);
    ip.fv.resize(plan.M);
    for (int j = 0; j < plan.M; ++j) ip.fv(j) = plan.fsamp[j];
    for (int l = 0; l < m; ++l) {
        const auto& col = plan.cols[gamma[l] + plan.W];
        for (int j = 0; j < plan.M; ++j) ip.E(j, l) = col[j];
    }
    return ip;
}

Eigen::VectorXcd pinned_start(const InnerProblem& ip) {
    Eigen::VectorXcd c(ip.gamma.size());
    for (size_t l = 0; l < ip.gamma.size(); ++l) {
        cplx v = ip.plan->f->coeff(ip.gamma[l]);
        if (ip.real_coeffs) v = cplx{v.real(), 0.0};
        c(static_cast<int>(l)) = v;
    }
    return c;
}

// one weighted least-squares step of IRLS for exponent p
Eigen::VectorXcd irls_step(const InnerProblem& ip, const Eigen::VectorXcd& c,
                           double p, double eps_floor) {
    const int m = static_cast<int>(ip.gamma.size());
    const Eigen::VectorXcd r = ip.residual(c);
    Eigen::VectorXd w(ip.plan->M);
    for (int j = 0; j < ip.plan->M; ++j)
        w(j) = std::pow(std::max(std::abs(r(j)), eps_floor), p - 2.0);
    const Eigen::MatrixXcd Ew = w.asDiagonal() * ip.E;
    if (ip.real_coeffs) {
        Eigen::MatrixXd A = (ip.E.adjoint() * Ew).real();
        Eigen::VectorXd b = (Ew.adjoint() * ip.fv).real();
        A.diagonal().array() += 1e-14 * (A.trace() / m + 1.0);
        const Eigen::VectorXd x = A.ldlt().solve(b);
        return x.cast<cplx>();
    }
    Eigen::MatrixXcd A = ip.E.adjoint() * Ew;
    Eigen::VectorXcd b = Ew.adjoint() * ip.fv;
    A.diagonal().array() += 1e-14 * (std::abs(A.trace()) / m + 1.0);
    return A.ldlt().solve(b);
}

// surrogate objective used for step acceptance inside IRLS
double surrogate(const InnerProblem& ip, const Eigen::VectorXcd& c, double p) {
    return ip.true_error(c, p);
}

struct FitState {
    Eigen::VectorXcd best_c;
    double best_err;
    bool converged = true;
};

void subgradient_polish(const InnerProblem& ip, double s, int steps,
                        FitState& st) {
    const int m = static_cast<int>(ip.gamma.size());
    Eigen::VectorXcd c = st.best_c;
    for (int t = 1; t <= steps; ++t) {
        const Eigen::VectorXcd r = ip.residual(c);
        Eigen::VectorXcd d = Eigen::VectorXcd::Zero(m);
        if (std::isinf(s)) {
            double peak = 0.0;
            for (int j = 0; j < ip.plan->M; ++j)
                peak = std::max(peak, std::abs(r(j)));
            if (peak <= 0.0) break;
            int count = 0;
            for (int j = 0; j < ip.plan->M; ++j) {
                if (std::abs(r(j)) >= peak * (1.0 - 1e-9)) {
                    const cplx u = r(j) / std::abs(r(j));
                    for (int l = 0; l < m; ++l) d(l) += u * std::conj(ip.E(j, l));
                    ++count;
                }
            }
            d /= static_cast<double>(count);
        } else {  // s == 1
            for (int j = 0; j < ip.plan->M; ++j) {
                const double a = std::abs(r(j));
                if (a < 1e-300) continue;
                const cplx u = r(j) / a;
                for (int l = 0; l < m; ++l) d(l) += u * std::conj(ip.E(j, l));
            }
            d /= static_cast<double>(ip.plan->M);
        }
        if (ip.real_coeffs)
            for (int l = 0; l < m; ++l) d(l) = cplx{d(l).real(), 0.0};
        const double dn = d.norm();
        if (dn < 1e-300) break;
        c += (0.3 * st.best_err / dn / std::sqrt(static_cast<double>(t))) * d;
        const double e = ip.true_error(c, s);
        if (e < st.best_err) {
            st.best_err = e;
            st.best_c = c;
        }
    }
}

CoeffFit inner_fit_grid(const GridPlan& plan, const std::vector<int>& gamma,
                        const ApproxOptions& opts) {
    const double s = plan.s;
    InnerProblem ip = make_inner(plan, gamma, opts.real_coefficients);
    if (gamma.empty()) {
        std::vector<cplx> v(plan.fsamp);
        return {{}, discrete_norm(v, s), true};
    }

    FitState st;
    st.best_c = pinned_start(ip);
    st.best_err = ip.true_error(st.best_c, s);

    // exponent schedule: the true exponent for s in (1, inf), a smoothed
    // surrogate for the nonsmooth endpoints
    std::vector<double> schedule;
    if (s == 1.0)
        schedule = {1.01};
    else if (std::isinf(s))
        schedule = {4.0, 8.0, 16.0, 32.0, 64.0};
    else
        schedule = {s};

    double eps_floor = 1e-12;
    for (const cplx& v : plan.fsamp)
        eps_floor = std::max(eps_floor, 1e-12 * std::abs(v));

    Eigen::VectorXcd c = st.best_c;
    const int iters_per_stage =
        std::max(10, opts.irls_max_iters / static_cast<int>(schedule.size()));
    bool converged = false;
    for (double p : schedule) {
        double prev = surrogate(ip, c, p);
        for (int it = 0; it < iters_per_stage; ++it) {
            const Eigen::VectorXcd target = irls_step(ip, c, p, eps_floor);
            // damped acceptance on the surrogate; full steps can overshoot
            // for large exponents
            double best_val = prev;
            Eigen::VectorXcd best_c = c;
            for (double lambda : {1.0, 0.5, 0.25, 0.125}) {
                const Eigen::VectorXcd cand = c + lambda * (target - c);
                const double val = surrogate(ip, cand, p);
                if (val < best_val) {
                    best_val = val;
                    best_c = cand;
                    break;
                }
            }
            c = best_c;
            const double te = ip.true_error(c, s);
            if (te < st.best_err) {
                st.best_err = te;
                st.best_c = c;
            }
            if (std::abs(prev - best_val) < 1e-9 * (best_val + 1e-300)) {
                converged = true;
                break;
            }
            prev = best_val;
        }
    }
    st.converged = converged || s == 1.0 || std::isinf(s);

    if (s == 1.0 || std::isinf(s))
        subgradient_polish(ip, s, opts.polish_steps, st);

    CoeffFit out;
    out.error = st.best_err;
    out.converged = st.converged;
    out.coeffs.resize(gamma.size());
    for (size_t l = 0; l < gamma.size(); ++l)
        out.coeffs[l] = st.best_c(static_cast<int>(l));
    return out;
}

// s = 2 closed form: keep the function's own coefficients (projection);
// with the real-coefficient restriction the imaginary parts become error.
CoeffFit inner_fit_exact2(const TrigPoly& f, const std::vector<int>& gamma,
                          bool real_coeffs) {
    double kept = 0.0;
    CoeffFit out;
    out.coeffs.reserve(gamma.size());
    for (int k : gamma) {
        cplx c = (std::abs(k) <= f.degree()) ? f.coeff(k) : cplx{};
        if (real_coeffs) c = cplx{c.real(), 0.0};
        if (std::abs(k) <= f.degree()) {
            const cplx fk = f.coeff(k);
            kept += std::norm(fk) - std::norm(fk - c);
        }
        out.coeffs.push_back(c);
    }
    const double total2 = f.parseval_norm2_sq() / two_pi;
    out.error = std::sqrt(two_pi * std::max(0.0, total2 - kept));
    return out;
}

CoeffFit inner_fit(const GridPlan& plan, const std::vector<int>& gamma,
                   const ApproxOptions& opts) {
    if (!plan.use_grid) return inner_fit_exact2(*plan.f, gamma, opts.real_coefficients);
    return inner_fit_grid(plan, gamma, opts);
}

// ---------------------------------------------------------------------------
// subset selection
// ---------------------------------------------------------------------------

void validate_gamma(const std::vector<int>& gamma) {
    std::vector<int> g = gamma;
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end())
        throw std::invalid_argument("gamma must consist of distinct integers");
    for (int k : g)
        if (std::abs(k) > 1 << 20)
            throw std::invalid_argument("gamma index out of range");
}

// the m largest |f_k|; ties toward smaller |k|, then positive k
std::vector<int> greedy_gamma(const TrigPoly& f, int m) {
    std::vector<int> idx;
    for (int k = -f.degree(); k <= f.degree(); ++k) idx.push_back(k);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double ma = std::abs(f.coeff(a)), mb = std::abs(f.coeff(b));
        if (ma != mb) return ma > mb;
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return a > b;
    });
    idx.resize(std::min<size_t>(idx.size(), m));
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Fourier candidate: centered window of size <= m padded (if needed) with an
// index outside the support, whose pinned coefficient is zero. Its pinned
// error therefore equals the partial-sum remainder exactly, which anchors
// the subset search at E_n.
std::vector<int> fourier_candidate(const TrigPoly& f, int m) {
    const int w = (m - 1) / 2;
    std::vector<int> gamma;
    for (int k = -w; k <= w; ++k) gamma.push_back(k);
    int pad = f.degree() + 1;
    while (static_cast<int>(gamma.size()) < m) gamma.push_back(pad++);
    return gamma;
}

long long subsets_or_above_cap(int n_items, int m, long long cap) {
    if (m < 0 || m > n_items) return 0;
    const int mm = std::min(m, n_items - m);
    long long c = 1;
    for (int i = 1; i <= mm; ++i) {
        c = c * (n_items - mm + i) / i;
        if (c > cap) return cap + 1;
    }
    return c;
}

template <typename Visit>
void for_each_subset(int n_items, int m, Visit&& visit) {
    if (m == 0) {
        std::vector<int> empty;
        visit(empty);
        return;
    }
    std::vector<int> pos(m);
    for (int i = 0; i < m; ++i) pos[i] = i;
    std::vector<int> subset(m);
    while (true) {
        visit(pos);
        int i = m - 1;
        while (i >= 0 && pos[i] == n_items - m + i) --i;
        if (i < 0) break;
        ++pos[i];
        for (int j = i + 1; j < m; ++j) pos[j] = pos[j - 1] + 1;
    }
}

struct SearchBest {
    double error = std::numeric_limits<double>::infinity();
    std::vector<int> gamma;

    void offer(double e, const std::vector<int>& g) {
        if (e < error) {
            error = e;
            gamma = g;
        }
    }
};

// Pinned-error subset search shared by best_mterm and orthogonal_mterm so
// the two operations explore identical candidate sequences.
struct SearchOutcome {
    std::vector<int> greedy;
    SearchBest pinned;  // over all candidates visited
};

SearchOutcome swap_search(const GridPlan& plan, int m,
                          const ApproxOptions& opts) {
    const TrigPoly& f = *plan.f;
    SearchOutcome out;
    out.greedy = greedy_gamma(f, m);
    out.pinned.offer(pinned_error(plan, out.greedy), out.greedy);
    if (m >= 1) {
        const auto fc = fourier_candidate(f, m);
        out.pinned.offer(pinned_error(plan, fc), fc);
    }
    if (m == 0) return out;

    std::vector<int> cur = out.greedy;
    double cur_err = pinned_error(plan, cur);
    const int n = f.degree();
    long long evals = 0;
    const long long budget = static_cast<long long>(opts.swap_eval_budget_per_m) * m;
    bool improved = true;
    while (improved && evals < budget) {
        improved = false;
        double best_err = cur_err;
        int best_i = -1, best_j = 0;
        for (size_t ii = 0; ii < cur.size() && evals < budget; ++ii) {
            for (int j = -n; j <= n && evals < budget; ++j) {
                if (std::find(cur.begin(), cur.end(), j) != cur.end()) continue;
                std::vector<int> cand = cur;
                cand[ii] = j;
                std::sort(cand.begin(), cand.end());
                const double e = pinned_error(plan, cand);
                ++evals;
                out.pinned.offer(e, cand);
                if (e < best_err * (1.0 - 1e-12)) {
                    best_err = e;
                    best_i = static_cast<int>(ii);
                    best_j = j;
                }
            }
        }
        if (best_i >= 0) {
            cur[best_i] = best_j;
            std::sort(cur.begin(), cur.end());
            cur_err = best_err;
            improved = true;
        }
    }
    return out;
}

void require_exhaustive_feasible(int n_items, int m, long long cap) {
    const long long count = subsets_or_above_cap(n_items, m, cap);
    if (count > cap)
        throw enumeration_infeasible(
            "Exhaustive subset enumeration exceeds cap (" + std::to_string(cap) +
            " subsets); downgrade the strategy");
}

std::vector<int> window_indices(const TrigPoly& f) {
    std::vector<int> w;
    for (int k = -f.degree(); k <= f.degree(); ++k) w.push_back(k);
    return w;
}

MTermResult all_kept_result(const TrigPoly& f, int m, Method tag) {
    MTermResult res;
    res.method = tag;
    res.gamma = window_indices(f);
    int pad = f.degree() + 1;
    while (static_cast<int>(res.gamma.size()) < m) res.gamma.push_back(pad++);
    for (int k : res.gamma)
        res.coeffs.push_back(std::abs(k) <= f.degree() ? f.coeff(k) : cplx{});
    res.error = 0.0;
    return res;
}

Method orthogonal_tag(Method strategy) {
    return strategy == Method::Exhaustive || strategy == Method::OrthogonalExhaustive
               ? Method::OrthogonalExhaustive
               : Method::OrthogonalGreedy;
}

Method plain_strategy(Method strategy) {
    switch (strategy) {
        case Method::OrthogonalExhaustive: return Method::Exhaustive;
        case Method::OrthogonalGreedy: return Method::Greedy;
        default: return strategy;
    }
}

}  // namespace

double mterm_certificate(const TrigPoly& f, int m) {
    if (m < 0) throw std::invalid_argument("mterm_certificate: m >= 0");
    const int n_star = (m + 1) / 2;
    double best = std::numeric_limits<double>::infinity();
    for (int k = -n_star; k <= n_star; ++k)
        best = std::min(best, std::abs(f.coeff(k)));
    return best;
}

double fourier_sum_error(const TrigPoly& f, int n, double s) {
    if (n < 1) throw std::invalid_argument("fourier_sum_error: n >= 1");
    check_norm_index(s);
    if (n > f.degree()) return 0.0;
    TrigPoly tail(f.degree());
    bool any = false;
    for (int k = -f.degree(); k <= f.degree(); ++k) {
        if (std::abs(k) >= n && f.coeff(k) != cplx{}) {
            tail.set_coeff(k, f.coeff(k));
            any = true;
        }
    }
    if (!any) return 0.0;
    return lp_norm(tail, s);
}

double fourier_sum_error_shared(const TrigPoly& f, int n, double s,
                                const ApproxOptions& opts) {
    if (n < 1) throw std::invalid_argument("fourier_sum_error_shared: n >= 1");
    const GridPlan plan = make_plan(f, s, opts);
    return window_error(plan, n);
}

CoeffFit best_coeffs_on_set(const TrigPoly& f, const std::vector<int>& gamma,
                            double s, const ApproxOptions& opts) {
    check_norm_index(s);
    validate_gamma(gamma);
    std::vector<int> g = gamma;
    std::sort(g.begin(), g.end());
    if (s == 2.0) return inner_fit_exact2(f, g, opts.real_coefficients);
    int w_extra = 1;
    for (int k : g) w_extra = std::max(w_extra, std::abs(k) - f.degree());
    const GridPlan plan = make_plan(f, s, opts, w_extra);
    return inner_fit_grid(plan, g, opts);
}

MTermResult best_mterm(const TrigPoly& f, int m, double s, Method strategy,
                       const ApproxOptions& opts) {
    check_norm_index(s);
    if (m < 0) throw std::invalid_argument("best_mterm: m >= 0");
    strategy = plain_strategy(strategy);
    const GridPlan plan = make_plan(f, s, opts);

    MTermResult res;
    res.method = strategy;
    res.certificate = mterm_certificate(f, m);

    if (m >= 2 * f.degree() + 1) {
        res = all_kept_result(f, m, strategy);
        res.certificate = mterm_certificate(f, m);
        return res;
    }
    if (m == 0) {
        res.error = plan.use_grid
                        ? discrete_norm(plan.fsamp, s)
                        : std::sqrt(two_pi * plan.total2);
        return res;
    }

    auto finish = [&](const std::vector<int>& gamma, const CoeffFit& fit) {
        res.gamma = gamma;
        res.coeffs = fit.coeffs;
        res.error = fit.error;
    };

    if (strategy == Method::Exhaustive) {
        const auto window = window_indices(f);
        require_exhaustive_feasible(static_cast<int>(window.size()), m,
                                    opts.enumeration_cap);
        SearchBest best;
        std::vector<int> gamma(m);
        for_each_subset(static_cast<int>(window.size()), m,
                        [&](const std::vector<int>& pos) {
                            for (int i = 0; i < m; ++i) gamma[i] = window[pos[i]];
                            best.offer(inner_fit(plan, gamma, opts).error, gamma);
                        });
        const auto fc = fourier_candidate(f, m);
        best.offer(inner_fit(plan, fc, opts).error, fc);
        finish(best.gamma, inner_fit(plan, best.gamma, opts));
        return res;
    }

    if (strategy == Method::Greedy) {
        const auto gamma = greedy_gamma(f, m);
        finish(gamma, inner_fit(plan, gamma, opts));
        return res;
    }

    // GreedySwap: the swap exploration ranks candidates by their pinned
    // error (cheap, and shared with the orthogonal operation); the free
    // coefficients are then fitted on the best set found and on the greedy
    // set, keeping the better of the two.
    const SearchOutcome so = swap_search(plan, m, opts);
    const CoeffFit fit_best = inner_fit(plan, so.pinned.gamma, opts);
    const CoeffFit fit_greedy = inner_fit(plan, so.greedy, opts);
    if (fit_greedy.error < fit_best.error)
        finish(so.greedy, fit_greedy);
    else
        finish(so.pinned.gamma, fit_best);
    return res;
}

MTermResult orthogonal_mterm(const TrigPoly& f, int m, double s,
                             Method strategy, const ApproxOptions& opts) {
    check_norm_index(s);
    if (m < 0) throw std::invalid_argument("orthogonal_mterm: m >= 0");
    const Method tag = orthogonal_tag(strategy);
    strategy = plain_strategy(strategy);
    const GridPlan plan = make_plan(f, s, opts);

    MTermResult res;
    res.method = tag;
    res.certificate = mterm_certificate(f, m);

    if (m >= 2 * f.degree() + 1) {
        res = all_kept_result(f, m, tag);
        res.certificate = mterm_certificate(f, m);
        return res;
    }
    if (m == 0) {
        res.error = plan.use_grid
                        ? discrete_norm(plan.fsamp, s)
                        : std::sqrt(two_pi * plan.total2);
        return res;
    }

    SearchBest best;
    if (strategy == Method::Exhaustive) {
        const auto window = window_indices(f);
        require_exhaustive_feasible(static_cast<int>(window.size()), m,
                                    opts.enumeration_cap);
        std::vector<int> gamma(m);
        for_each_subset(static_cast<int>(window.size()), m,
                        [&](const std::vector<int>& pos) {
                            for (int i = 0; i < m; ++i) gamma[i] = window[pos[i]];
                            best.offer(pinned_error(plan, gamma), gamma);
                        });
        const auto fc = fourier_candidate(f, m);
        best.offer(pinned_error(plan, fc), fc);
    } else if (strategy == Method::Greedy) {
        const auto gamma = greedy_gamma(f, m);
        best.offer(pinned_error(plan, gamma), gamma);
    } else {
        const SearchOutcome so = swap_search(plan, m, opts);
        best = so.pinned;
    }

    res.gamma = best.gamma;
    for (int k : res.gamma)
        res.coeffs.push_back(std::abs(k) <= f.degree() ? f.coeff(k) : cplx{});
    res.error = best.error;
    return res;
}

double duality_value(const TrigPoly& f, const Witness& w) {
    double hmax = 0.0;
    for (const cplx& c : w.poly.raw()) hmax = std::max(hmax, std::abs(c));
    for (int k : w.annihilated) {
        if (std::abs(w.poly.coeff(-k)) > 1e-12 * (hmax + 1e-300))
            throw std::invalid_argument(
                "duality_value: witness not orthogonal to its gamma");
    }
    const double norm = lp_norm(w.poly, w.s_conj);
    if (norm > 1.0 + 1e-9)
        throw std::invalid_argument("duality_value: witness conjugate norm > 1");
    cplx acc{};
    for (int k = -f.degree(); k <= f.degree(); ++k)
        acc += f.coeff(k) * w.poly.coeff(-k);
    return std::abs(two_pi * acc);
}

Witness standard_witness(const std::vector<int>& gamma, int n, double s,
                         const TrigPoly& f) {
    if (n < 1) throw std::invalid_argument("standard_witness: n >= 1");
    if (static_cast<int>(gamma.size()) != 2 * n)
        throw std::invalid_argument("standard_witness: |gamma| must equal 2n");
    check_norm_index(s);
    validate_gamma(gamma);
    int k_star = 0;
    bool found = false;
    double best_mag = -1.0;
    for (int k = -n; k <= n; ++k) {
        if (std::find(gamma.begin(), gamma.end(), k) != gamma.end()) continue;
        const double mag = std::abs(f.coeff(k));
        const bool better =
            mag > best_mag ||
            (mag == best_mag &&
             (std::abs(k) < std::abs(k_star) ||
              (std::abs(k) == std::abs(k_star) && k > k_star)));
        if (!found || better) {
            k_star = k;
            best_mag = mag;
            found = true;
        }
    }
    // |gamma| = 2n cannot cover the 2n+1 integers of [-n, n]
    if (!found) throw std::logic_error("standard_witness: no admissible k*");

    Witness w;
    w.poly = TrigPoly(std::max(1, std::abs(k_star)));
    w.poly.set_coeff(-k_star, 1.0 / two_pi);
    w.s_conj = conjugate_exponent(s);
    w.annihilated = gamma;
    return w;
}

ChainReport chain_check(const TrigPoly& f, int n, double s,
                        const ApproxOptions& opts) {
    if (n < 1) throw std::invalid_argument("chain_check: n >= 1");
    check_norm_index(s);
    ChainReport rep;
    rep.n = n;
    rep.s = s;

    const GridPlan plan = make_plan(f, s, opts);
    rep.E_n = window_error(plan, n);

    const auto window = window_indices(f);
    const double rel = 1e-7;
    auto leq = [&](double a, double b) { return a <= b + rel * std::abs(b) + 1e-14; };

    for (int idx = 0; idx < 2; ++idx) {
        const int m = 2 * n - 1 + idx;
        Method strat = Method::GreedySwap;
        if (s == 2.0 &&
            subsets_or_above_cap(static_cast<int>(window.size()), m,
                                 opts.enumeration_cap) <= opts.enumeration_cap)
            strat = Method::Exhaustive;
        const MTermResult e = best_mterm(f, m, s, strat, opts);
        const MTermResult o = orthogonal_mterm(f, m, s, strat, opts);
        ChainRow& row = rep.rows[idx];
        row.m = m;
        row.e_best = e.error;
        row.e_orth = o.error;
        row.ok = leq(row.e_best, row.e_orth) && leq(row.e_orth, rep.E_n);
        if (!row.ok) {
            rep.ok = false;
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "chain violated at m=%d s=%g: e=%.17g e_orth=%.17g E_n=%.17g",
                          m, s, row.e_best, row.e_orth, rep.E_n);
            rep.violation = buf;
        }
    }
    return rep;
}

}  // namespace mterm
