#include "mterm/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mterm {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

int next_pow2(int m) {
    int p = 1;
    while (p < m) p <<= 1;
    return p;
}

// e^{2*pi*i*l/M} for l = 0..M-1; every entry computed directly so no phase
// error accumulates across the table.
std::vector<cplx> unit_roots(int m) {
    std::vector<cplx> w(m);
    for (int l = 0; l < m; ++l) w[l] = std::polar(1.0, two_pi * l / m);
    return w;
}
}  // namespace

void TrigPoly::set_coeff(int k, cplx v) {
    if (k < -degree_ || k > degree_)
        throw std::out_of_range("TrigPoly::set_coeff: |k| exceeds degree");
    c_[k + degree_] = v;
}

bool TrigPoly::is_real(double tol) const {
    for (int k = 0; k <= degree_; ++k)
        if (std::abs(coeff(-k) - std::conj(coeff(k))) > tol) return false;
    return true;
}

double TrigPoly::parseval_norm2_sq() const {
    double s = 0.0;
    for (const cplx& c : c_) s += std::norm(c);
    return two_pi * s;
}

int TrigPoly::effective_degree() const {
    for (int k = degree_; k > 0; --k)
        if (coeff(k) != cplx{} || coeff(-k) != cplx{}) return k;
    return 0;
}

TrigPoly TrigPoly::operator-(const TrigPoly& other) const {
    TrigPoly out(std::max(degree_, other.degree_));
    for (int k = -out.degree(); k <= out.degree(); ++k)
        out.set_coeff(k, coeff(k) - other.coeff(k));
    return out;
}

double GridSignal::t_at(int j) const { return two_pi * j / samples; }

bool GridSignal::is_real(double tol) const {
    for (const cplx& v : values)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

double conjugate_exponent(double s) {
    check_norm_index(s);
    if (s == 1.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(s)) return 1.0;
    return s / (s - 1.0);
}

void check_norm_index(double s) {
    if (std::isnan(s) || s < 1.0)
        throw std::invalid_argument("norm index must lie in [1, inf]");
}

int recommended_samples(int degree, double p, int finite_factor,
                        int inf_factor) {
    check_norm_index(p);
    const int factor = std::isinf(p) ? inf_factor : finite_factor;
    return next_pow2(std::max(2, factor * (2 * degree + 1)));
}

GridSignal synthesize(const TrigPoly& poly, int samples) {
    const int n = poly.degree();
    if (!is_pow2(samples))
        throw std::invalid_argument("synthesize: sample count must be a power of two");
    if (samples < 2 * n + 1)
        throw std::invalid_argument("synthesize: undersampled (M < 2N+1)");
    const auto w = unit_roots(samples);
    GridSignal out;
    out.samples = samples;
    out.values.assign(samples, cplx{});
    for (int k = -n; k <= n; ++k) {
        const cplx c = poly.coeff(k);
        if (c == cplx{}) continue;
        // e^{ik t_j} = w[(j*k) mod M]
        const int step = ((k % samples) + samples) % samples;
        int idx = 0;
        for (int j = 0; j < samples; ++j) {
            out.values[j] += c * w[idx];
            idx += step;
            if (idx >= samples) idx -= samples;
        }
    }
    return out;
}

TrigPoly analyze(const GridSignal& signal, int degree) {
    const int m = signal.samples;
    if (m < 2 * degree + 2)
        throw std::invalid_argument("analyze: need M >= 2N+2");
    if (static_cast<int>(signal.values.size()) != m)
        throw std::invalid_argument("analyze: sample count mismatch");
    const auto w = unit_roots(m);
    TrigPoly out(degree);
    for (int k = -degree; k <= degree; ++k) {
        const int step = (((-k) % m) + m) % m;
        cplx acc{};
        int idx = 0;
        for (int j = 0; j < m; ++j) {
            acc += signal.values[j] * w[idx];
            idx += step;
            if (idx >= m) idx -= m;
        }
        out.set_coeff(k, acc / static_cast<double>(m));
    }
    return out;
}

double aliased_energy_ratio(const GridSignal& signal, int degree) {
    const TrigPoly p = analyze(signal, degree);
    double total = 0.0;
    for (const cplx& v : signal.values) total += std::norm(v);
    total /= signal.samples;  // discrete mean square = sum |c_k|^2 over all bins
    double captured = 0.0;
    for (const cplx& c : p.raw()) captured += std::norm(c);
    if (total <= 0.0) return 0.0;
    return std::max(0.0, total - captured) / total;
}

double lp_norm(const GridSignal& signal, double p) {
    check_norm_index(p);
    if (signal.values.empty()) return 0.0;
    double vmax = 0.0;
    for (const cplx& v : signal.values) vmax = std::max(vmax, std::abs(v));
    if (std::isinf(p) || vmax == 0.0) return vmax;
    // factor out the max so |v|^p cannot overflow for large p
    double acc = 0.0;
    for (const cplx& v : signal.values) acc += std::pow(std::abs(v) / vmax, p);
    acc *= two_pi / signal.samples;
    return vmax * std::pow(acc, 1.0 / p);
}

double lp_norm(const TrigPoly& poly, double p) {
    return lp_norm(synthesize(poly, recommended_samples(poly.degree(), p)), p);
}

}  // namespace mterm
