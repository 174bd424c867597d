#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "mterm/psi.hpp"

using namespace mterm;

namespace {

const double ln2 = std::log(2.0);

// closed forms used as independent oracles throughout
double eta_closed(const PsiFunction& psi, double t) {
    if (psi.kind == PsiFunction::Kind::ExpPower)
        return std::pow(std::pow(t, psi.r) + ln2 / psi.alpha, 1.0 / psi.r);
    return std::pow(2.0, 1.0 / psi.r) * t;
}

std::vector<PsiFunction> exp_family() {
    std::vector<PsiFunction> v;
    for (double a : {0.5, 1.0, 3.0})
        for (double r : {1.0, 2.0}) v.push_back(PsiFunction::exp_power(a, r));
    return v;
}

std::vector<PsiFunction> all_kinds() {
    auto v = exp_family();
    for (double r : {0.5, 1.0, 2.0}) v.push_back(PsiFunction::power(r));
    return v;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = lo * std::pow(hi / lo, double(i) / (points - 1));
    return g;
}

}  // namespace

TEST_CASE("eval_psi closed forms") {
    CHECK(eval_psi(PsiFunction::exp_power(1, 1), 2.0) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(eval_psi(PsiFunction::power(2), 3.0) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(eval_psi(PsiFunction::exp_power(0.5, 2), 2.0) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("eval_psi domain errors") {
    const auto psi = PsiFunction::exp_power(1, 1);
    CHECK_THROWS_AS(eval_psi(psi, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(eval_psi(psi, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(eval_psi(psi, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(eval_psi(psi, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(PsiFunction::exp_power(-1, 1), std::invalid_argument);
    CHECK_THROWS_AS(PsiFunction::exp_power(1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(PsiFunction::power(0), std::invalid_argument);
}

TEST_CASE("psi_extended: psi(0) = psi(1)") {
    const auto psi = PsiFunction::exp_power(1, 1);
    CHECK(psi_extended(psi, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(psi_extended(psi, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(psi_extended(psi, 3) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(psi_extended(psi, -1), std::invalid_argument);
}

TEST_CASE("psi_right_derivative closed forms") {
    CHECK(psi_right_derivative(PsiFunction::exp_power(1, 1), 2.0) ==
          doctest::Approx(-std::exp(-2.0)).epsilon(1e-15));
    CHECK(psi_right_derivative(PsiFunction::power(1), 2.0) ==
          doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(psi_right_derivative(PsiFunction::exp_power(1, 2), 1.0) ==
          doctest::Approx(-2.0 * std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("psi_inverse closed forms and range checks") {
    CHECK(psi_inverse(PsiFunction::exp_power(1, 1), std::exp(-5.0)) ==
          doctest::Approx(5.0).epsilon(1e-14));
    CHECK(psi_inverse(PsiFunction::power(2), 1.0 / 16.0) ==
          doctest::Approx(4.0).epsilon(1e-14));

    // bisection oracle against the closed form t = (t0^r + ln2/alpha)^{1/r}
    const auto psi = PsiFunction::exp_power(2, 2);
    const double y = eval_psi(psi, 3.0) / 2.0;
    const double expected = std::sqrt(9.0 + ln2 / 2.0);  // ~3.0572166
    CHECK(psi_inverse(psi, y) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(psi_inverse_bisect(psi, y) == doctest::Approx(expected).epsilon(1e-9));

    CHECK_THROWS_AS(psi_inverse(psi, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(psi_inverse(psi, 2.0 * eval_psi(psi, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("bisection route agrees with the closed form everywhere") {
    for (const auto& psi : all_kinds()) {
        for (double t : log_grid(1.0, 50.0, 17)) {
            const double y = eval_psi(psi, t);
            if (y < 1e-290) continue;
            const double tb = psi_inverse_bisect(psi, y);
            CHECK(std::abs(eval_psi(psi, tb) - y) <= 1e-11 * y);
            CHECK(std::abs(tb - psi_inverse(psi, y)) <= 1e-8 * t + 1e-10);
        }
    }
}

TEST_CASE("eta examples and closed-form oracle") {
    CHECK(eta(PsiFunction::exp_power(1, 1), 5.0) ==
          doctest::Approx(5.0 + ln2).epsilon(1e-13));
    CHECK(eta(PsiFunction::power(1), 3.0) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(eta(PsiFunction::exp_power(1, 2), 2.0) ==
          doctest::Approx(std::sqrt(4.0 + ln2)).epsilon(1e-13));  // ~2.1663673

    for (const auto& psi : all_kinds())
        for (double t : log_grid(1.0, 40.0, 21)) {
            if (eval_psi(psi, t) < 1e-290) continue;
            CHECK(eta(psi, t) ==
                  doctest::Approx(eta_closed(psi, t)).epsilon(1e-11));
            CHECK(eta(psi, t) > t);
        }
}

TEST_CASE("mu examples") {
    CHECK(mu(PsiFunction::exp_power(1, 1), 7.0) ==
          doctest::Approx(7.0 / ln2).epsilon(1e-12));  // ~10.09886
    CHECK(mu(PsiFunction::power(1), 4.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double eta22 = std::sqrt(4.0 + ln2);
    CHECK(mu(PsiFunction::exp_power(1, 2), 2.0) ==
          doctest::Approx(2.0 / (eta22 - 2.0)).epsilon(1e-11));  // ~12.02159
}

TEST_CASE("estimate_K0") {
    // eta - t is the constant ln2/alpha for r = 1
    CHECK(estimate_K0(PsiFunction::exp_power(1, 1), 1e3, 512) ==
          doctest::Approx(ln2).epsilon(1e-12));
    // r = 2: the gap decreases in t, maximum at t = 1
    CHECK(estimate_K0(PsiFunction::exp_power(1, 2), 100.0, 512) ==
          doctest::Approx(std::sqrt(1.0 + ln2) - 1.0).epsilon(1e-12));
    // Power: eta - t = (2^{1/r} - 1) t grows without bound
    CHECK(estimate_K0(PsiFunction::power(1), 100.0, 512) ==
          doctest::Approx(99.0).epsilon(1e-9));

    CHECK_THROWS_AS(estimate_K0(PsiFunction::power(1), 1.0, 512),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_K0(PsiFunction::power(1), 100.0, 4),
                    std::invalid_argument);
}

TEST_CASE("estimate_K0 matches the analytic ExpPower value") {
    for (const auto& psi : exp_family()) {
        const double analytic =
            std::pow(1.0 + ln2 / psi.alpha, 1.0 / psi.r) - 1.0;
        CHECK(std::abs(estimate_K0(psi, 1e3, 512) - analytic) <= 1e-9);
        // grid scan never exceeds the analytic maximum
        for (double t : log_grid(1.0, 100.0, 101))
            CHECK(eta(psi, t) - t <= analytic * (1.0 + 1e-12));
    }
}

TEST_CASE("classify: exponential family is inside, Power is outside") {
    const auto ch = classify(PsiFunction::exp_power(1, 1));
    CHECK(ch.in_M == Tristate::True);
    CHECK(ch.in_M_plus_inf == Tristate::True);
    CHECK(ch.in_M_prime_inf == Tristate::True);
    CHECK(ch.K0 == doctest::Approx(ln2).epsilon(1e-12));

    const auto chp = classify(PsiFunction::power(2));
    CHECK(chp.in_M == Tristate::True);
    CHECK(chp.in_M_plus_inf == Tristate::False);
    CHECK(chp.in_M_prime_inf == Tristate::False);

    const auto ch3 = classify(PsiFunction::exp_power(3, 1));
    CHECK(ch3.in_M_prime_inf == Tristate::True);
    CHECK(ch3.K0 == doctest::Approx(ln2 / 3.0).epsilon(1e-12));

    for (const auto& psi : exp_family()) {
        const auto c = classify(psi);
        CHECK(c.in_M == Tristate::True);
        CHECK(c.in_M_plus_inf == Tristate::True);
        CHECK(c.in_M_prime_inf == Tristate::True);
    }
}

TEST_CASE("round trip psi_inverse(eval_psi(t)) = t on a log grid") {
    for (const auto& psi : all_kinds()) {
        for (double t : log_grid(1.0, 1e3, 61)) {
            if (psi.kind == PsiFunction::Kind::ExpPower &&
                psi.alpha * std::pow(t, psi.r) > 650)
                continue;  // underflow region
            CHECK(std::abs(psi_inverse(psi, eval_psi(psi, t)) - t) <= 1e-10 * t);
        }
    }
}

TEST_CASE("eta defining identity psi(eta(t)) = psi(t)/2") {
    for (const auto& psi : all_kinds()) {
        for (double t : log_grid(1.0, 100.0, 41)) {
            const double v = eval_psi(psi, t);
            if (v < 1e-290) continue;
            CHECK(std::abs(eval_psi(psi, eta(psi, t)) - v / 2.0) <= 1e-10 * v);
        }
    }
}

TEST_CASE("monotone and midpoint convex on probe grids") {
    for (const auto& psi : all_kinds()) {
        const auto grid = log_grid(1.0, 200.0, 101);
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            const double a = eval_psi(psi, grid[i]);
            const double b = eval_psi(psi, grid[i + 1]);
            CHECK(b <= a * (1.0 + 1e-12));
            const double mid = eval_psi(psi, 0.5 * (grid[i] + grid[i + 1]));
            CHECK(mid <= 0.5 * (a + b) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("decay-speed lemma with b = 1/K0") {
    // psi(t)/|psi'(t)| <= 4 (1 + 1/b) (eta(t) - t) with b = 1/K0, and the
    // pointwise consequence |psi'|/psi >= 1/(4 (K0+1) K0)
    for (const auto& psi : exp_family()) {
        const double K0 = estimate_K0(psi, 1e3, 512);
        for (double t : log_grid(1.0, 100.0, 81)) {
            const double v = eval_psi(psi, t);
            if (v < 1e-290) continue;
            const double dv = std::abs(psi_right_derivative(psi, t));
            const double gap = eta(psi, t) - t;
            CHECK(v / dv <= 4.0 * (1.0 + K0) * gap * (1.0 + 1e-9));
            CHECK(dv / v >= 1.0 / (4.0 * (K0 + 1.0) * K0) * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("mu positive for strictly decreasing generators") {
    for (const auto& psi : all_kinds()) CHECK(mu(psi, 2.0) > 0.0);
}
