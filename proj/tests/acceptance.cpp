// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its own tolerances and time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mterm/approx.hpp"
#include "mterm/experiment.hpp"
#include "mterm/extremal.hpp"
#include "mterm/psi.hpp"
#include "mterm/sampling.hpp"
#include "mterm/spectral.hpp"

using namespace mterm;

namespace {

constexpr double pi = std::numbers::pi;
const double inf = std::numeric_limits<double>::infinity();
const double ln2 = std::log(2.0);

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (detail.empty()) detail = why;
    }
};

using Criterion = std::function<void(Outcome&)>;

std::vector<PsiFunction> test_family() {
    std::vector<PsiFunction> v;
    for (double a : {0.5, 1.0, 3.0})
        for (double r : {1.0, 2.0}) v.push_back(PsiFunction::exp_power(a, r));
    return v;
}

TrigPoly random_real_poly(SplitMix64& rng, int degree) {
    TrigPoly p(degree);
    p.set_coeff(0, cplx{2.0 * rng.unit() - 1.0, 0.0});
    for (int k = 1; k <= degree; ++k) {
        const cplx half{rng.unit() - 0.5, rng.unit() - 0.5};
        p.set_coeff(k, half);
        p.set_coeff(-k, std::conj(half));
    }
    return p;
}

double sorted_tail(const TrigPoly& f, int m) {
    std::vector<double> mags;
    for (int k = -f.degree(); k <= f.degree(); ++k)
        mags.push_back(std::abs(f.coeff(k)));
    std::sort(mags.begin(), mags.end());
    double acc = 0.0;
    const int drop = std::max(0, static_cast<int>(mags.size()) - m);
    for (int i = 0; i < drop; ++i) acc += mags[i] * mags[i];
    return std::sqrt(2.0 * pi * acc);
}

char scratch[256];

// 1. L2 extremal identity: e_{2n}(f*)_2 = sqrt(2pi) C1 psi(n) / (2 A^2)
//    for psi = exp(-t), n in 1..12, tolerance 1e-9 relative.
void criterion_1(Outcome& out) {
    const auto psi = PsiFunction::exp_power(1, 1);
    for (int n = 1; n <= 12; ++n) {
        const ExtremalFunction fs = build_fstar(psi, n);
        const double stated = std::sqrt(2.0 * pi) * fs.C1 * eval_psi(psi, n) /
                              (2.0 * fs.A * fs.A);
        const double parseval = sorted_tail(fs.poly, 2 * n);
        if (std::abs(parseval - stated) > 1e-9 * stated) {
            std::snprintf(scratch, sizeof scratch,
                          "n=%d: Parseval path %.12g vs stated %.12g "
                          "(smallest |c_k| sits at k=0: c_0=%.6g < c_n=%.6g)",
                          n, parseval, stated, fs.poly.coeff(0).real(),
                          fs.poly.coeff(n).real());
            out.fail(scratch);
        }
        if (n <= 3) {
            const double ex =
                best_mterm(fs.poly, 2 * n, 2.0, Method::Exhaustive).error;
            if (std::abs(ex - stated) > 1e-9 * stated) {
                std::snprintf(scratch, sizeof scratch,
                              "n=%d: exhaustive path %.12g vs stated %.12g", n,
                              ex, stated);
                out.fail(scratch);
            }
        }
    }
}

// 2. Certificate sandwich: lower_bound_value <= GreedySwap error and
//    error / certificate <= 1e3, for s in {1,2,inf}, n in 2..8, two psi.
void criterion_2(Outcome& out) {
    for (const auto& psi : {PsiFunction::exp_power(1, 1),
                            PsiFunction::exp_power(0.5, 2)}) {
        for (double s : {1.0, 2.0, inf}) {
            for (int n = 2; n <= 8; ++n) {
                const ExtremalFunction fs = build_fstar(psi, n);
                const double lb = lower_bound_value(fs);
                const double err =
                    best_mterm(fs.poly, 2 * n, s, Method::GreedySwap).error;
                if (!(lb <= err)) {
                    std::snprintf(scratch, sizeof scratch,
                                  "psi=%s s=%g n=%d: bound %.12g > error %.12g",
                                  psi.describe().c_str(), s, n, lb, err);
                    out.fail(scratch);
                }
                if (!(err / lb <= 1e3)) {
                    std::snprintf(scratch, sizeof scratch,
                                  "psi=%s s=%g n=%d: ratio %.6g > 1e3",
                                  psi.describe().c_str(), s, n, err / lb);
                    out.fail(scratch);
                }
            }
        }
    }
}

// 3. Chain: zero violations of e_{2n} <= e_orth_{2n} <= E_n (1e-7 relative)
//    over 50 seeded samples x s in {1,2,inf} x n in 2..6.
void criterion_3(Outcome& out) {
    ExperimentConfig cfg;
    cfg.psi = PsiFunction::exp_power(1, 1);
    cfg.sample_count = 50;
    cfg.sample_degree = 8;
    cfg.seed = 2024;
    cfg.n_min = 2;
    cfg.n_max = 6;
    for (double s : {1.0, 2.0, inf}) {
        cfg.s = s;
        const ChainExperimentReport rep = run_chain_experiment(cfg);
        if (rep.violations != 0) {
            std::snprintf(scratch, sizeof scratch, "s=%g: %d violations", s,
                          rep.violations);
            out.fail(scratch);
        }
    }
}

// 4. Fourier-sum order: E_n(sample)/psi(n) spread <= 50 per sample for
//    n in 4..24 over 20 seeded samples.
void criterion_4(Outcome& out) {
    const auto psi = PsiFunction::exp_power(1, 1);
    const ClassParams params{psi, 0.0, 2.0};
    const SampleOptions sopts{30, 0.25};
    for (int i = 0; i < 20; ++i) {
        const TrigPoly f = random_class_sample(4242, i, params, sopts);
        double lo = 1e300, hi = 0.0;
        for (int n = 4; n <= 24; ++n) {
            const double ratio = fourier_sum_error(f, n, 2.0) / eval_psi(psi, n);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (!(hi / lo <= 50.0)) {
            std::snprintf(scratch, sizeof scratch,
                          "sample %d: spread %.6g > 50", i, hi / lo);
            out.fail(scratch);
        }
    }
}

// 5. psi-characteristic closed forms to 1e-9; Power classified outside.
void criterion_5(Outcome& out) {
    for (const auto& psi : test_family()) {
        const double K0_closed = std::pow(1.0 + ln2 / psi.alpha, 1.0 / psi.r) - 1.0;
        if (std::abs(estimate_K0(psi, 1e3, 512) - K0_closed) > 1e-9)
            out.fail(psi.describe() + ": K0 mismatch");
        for (double t : {1.0, 2.0, 5.0, 17.0}) {
            const double eta_closed =
                std::pow(std::pow(t, psi.r) + ln2 / psi.alpha, 1.0 / psi.r);
            if (std::abs(eta(psi, t) - eta_closed) > 1e-9 * eta_closed)
                out.fail(psi.describe() + ": eta mismatch");
            const double mu_closed = t / (eta_closed - t);
            if (std::abs(mu(psi, t) - mu_closed) > 1e-9 * mu_closed)
                out.fail(psi.describe() + ": mu mismatch");
        }
    }
    for (double r : {0.5, 1.0, 2.0}) {
        if (classify(PsiFunction::power(r)).in_M_prime_inf != Tristate::False)
            out.fail("Power generator not excluded");
    }
}

// 6. psi_n monotone at the threshold A = 8 K0 (K0+1) for n <= 16; the
//    deliberate A = 0.1 control must fail.
void criterion_6(Outcome& out) {
    for (const auto& psi : test_family()) {
        const double A = compute_A(estimate_K0(psi, 1e3, 512));
        for (int n = 1; n <= 16; ++n) {
            if (!check_psi_n_monotone(psi, n, A).ok) {
                std::snprintf(scratch, sizeof scratch, "psi=%s n=%d not monotone",
                              psi.describe().c_str(), n);
                out.fail(scratch);
            }
        }
    }
    if (check_psi_n_monotone(PsiFunction::exp_power(1, 1), 8, 0.1).ok)
        out.fail("negative control at A = 0.1 unexpectedly passed");
}

// 7. Membership of f* for (beta, p) in {0, 1, 2.5} x {1, 2, inf}.
void criterion_7(Outcome& out) {
    for (const auto& psi : {PsiFunction::exp_power(1, 1),
                            PsiFunction::exp_power(0.5, 2)}) {
        for (int n : {1, 3, 8}) {
            const ExtremalFunction fs = build_fstar(psi, n);
            for (double beta : {0.0, 1.0, 2.5}) {
                for (double p : {1.0, 2.0, inf}) {
                    const MembershipReport rep = verify_membership(fs, beta, p);
                    if (!rep.ok) {
                        std::snprintf(
                            scratch, sizeof scratch,
                            "psi=%s n=%d beta=%g p=%g: norm %.12g > 1",
                            psi.describe().c_str(), n, beta, p, rep.norm);
                        out.fail(scratch);
                    }
                }
            }
        }
    }
}

// 8. s = 2 exhaustive oracle on 100 random degree <= 7 polynomials.
void criterion_8(Outcome& out) {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        const int degree = 1 + static_cast<int>(rng.next() % 7);
        const TrigPoly f = random_real_poly(rng, degree);
        const int m = static_cast<int>(rng.next() % (2 * degree + 2));
        const double got = best_mterm(f, m, 2.0, Method::Exhaustive).error;
        const double oracle = sorted_tail(f, m);
        if (std::abs(got - oracle) > 1e-10 * (oracle + 1.0)) {
            std::snprintf(scratch, sizeof scratch,
                          "trial %d (N=%d m=%d): %.15g vs oracle %.15g", trial,
                          degree, m, got, oracle);
            out.fail(scratch);
        }
    }
}

// 9. Determinism: identical configs produce byte-identical CSV at any
//    worker count.
void criterion_9(Outcome& out) {
    ExperimentConfig cfg;
    cfg.psi = PsiFunction::exp_power(1, 1);
    cfg.n_min = 2;
    cfg.n_max = 5;
    cfg.sample_count = 3;
    cfg.seed = 99;

    setenv("MTERMLAB_WORKERS", "1", 1);
    const OrderReport a = run_order_experiment(cfg);
    const OrderReport b = run_order_experiment(cfg);
    setenv("MTERMLAB_WORKERS", "4", 1);
    const OrderReport c = run_order_experiment(cfg);
    unsetenv("MTERMLAB_WORKERS");

    if (order_report_csv(a) != order_report_csv(b))
        out.fail("repeated sequential runs differ");
    if (order_report_csv(a) != order_report_csv(c))
        out.fail("worker count changed the bytes");
    if (sample_rows_csv(a) != sample_rows_csv(c))
        out.fail("worker count changed the sample table");
    if (!a.ok) out.fail("order experiment invariants failed");
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        double budget_seconds;
        Criterion fn;
    };
    const std::vector<Entry> criteria = {
        {"L2 extremal identity e_2n(f*) = sqrt(2pi) C1 psi(n)/(2A^2), n=1..12", 5.0, criterion_1},
        {"certificate sandwich, s in {1,2,inf}, n=2..8, two generators", 60.0, criterion_2},
        {"chain e_2n <= e_orth <= E_n over 50 samples x 3 metrics x n=2..6", 120.0, criterion_3},
        {"Fourier-sum order: E_n/psi(n) spread <= 50 over 20 samples", 30.0, criterion_4},
        {"psi characteristics match closed forms; Power excluded", 1.0, criterion_5},
        {"psi_n monotone at threshold; A=0.1 control fails", 1.0, criterion_6},
        {"membership of f* across beta and p", 5.0, criterion_7},
        {"s=2 exhaustive equals sorted Parseval tail on 100 polynomials", 30.0, criterion_8},
        {"byte-identical orders CSV across runs and worker counts", 120.0, criterion_9},
    };

    // the chain sweep is embarrassingly parallel; use both cores when free
    setenv("MTERMLAB_WORKERS", "2", 0);

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].fn(out);
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (elapsed > criteria[i].budget_seconds) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "runtime %.1fs exceeds %.0fs budget",
                          elapsed, criteria[i].budget_seconds);
            out.fail(buf);
        }
        std::printf("criterion %zu: %s — %s (%.2fs)%s%s\n", i + 1,
                    out.pass ? "PASS" : "FAIL", criteria[i].name, elapsed,
                    out.pass ? "" : " | ", out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n",
                criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
