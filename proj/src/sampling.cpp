#include "mterm/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mterm {

TrigPoly random_phi(std::uint64_t seed, int sample_index,
                    const SampleOptions& opts) {
    if (opts.degree < 1) throw std::invalid_argument("random_phi: degree >= 1");
    if (!(opts.amp_min >= 0.0 && opts.amp_min < 1.0))
        throw std::invalid_argument("random_phi: amp_min in [0, 1)");
    SplitMix64 rng(seed);
    rng.skip(2ull * opts.degree * static_cast<std::uint64_t>(sample_index));
    TrigPoly phi(opts.degree);
    for (int k = 1; k <= opts.degree; ++k) {
        const double a = opts.amp_min + (1.0 - opts.amp_min) * rng.unit();
        const double theta = 2.0 * std::numbers::pi * rng.unit();
        const cplx half = 0.5 * a * std::polar(1.0, theta);
        phi.set_coeff(k, half);
        phi.set_coeff(-k, std::conj(half));
    }
    return phi;
}

TrigPoly random_class_sample(std::uint64_t seed, int sample_index,
                             const ClassParams& params,
                             const SampleOptions& opts) {
    return class_sample(random_phi(seed, sample_index, opts), params, true);
}

}  // namespace mterm
