#pragma once

#include <cstdint>

#include "mterm/spectral.hpp"
#include "mterm/trigpoly.hpp"

namespace mterm {

/// SplitMix64. The state advances by a fixed odd increment per draw, so the
/// j-th draw of a stream is O(1)-addressable with skip(); that is what makes
/// the documented "sample index major, coefficient index minor" consumption
/// order cheap to honor from any worker.
struct SplitMix64 {
    static constexpr std::uint64_t increment = 0x9E3779B97F4A7C15ULL;

    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += increment;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform double in [0, 1): top 53 bits of the next draw
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    void skip(std::uint64_t draws) { state += draws * increment; }
};

struct SampleOptions {
    int degree = 8;
    double amp_min = 0.25;  // keeps every harmonic bounded away from zero
};

/// Random real mean-zero polynomial sum_{k=1..D} a_k cos(kt + theta_k) with
/// a_k in [amp_min, 1) and theta_k in [0, 2pi). Sample i consumes draws
/// 2*D*i .. 2*D*(i+1)-1 of the stream seeded with `seed`, in the order
/// (a_1, theta_1, a_2, theta_2, ...).
TrigPoly random_phi(std::uint64_t seed, int sample_index,
                    const SampleOptions& opts);

/// Normalized class element built from random_phi: the derivative is the
/// unit-L_p-normalized phi (mean already zero by construction).
TrigPoly random_class_sample(std::uint64_t seed, int sample_index,
                             const ClassParams& params,
                             const SampleOptions& opts);

}  // namespace mterm
