#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "ofdmlab/numerics.hpp"

namespace ofdmlab {

/// splitmix64 finalizer. Good enough mixing that (seed, tag, index) streams
/// are independent for simulation purposes.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive a child seed from a base seed, a purpose tag and up to two indices.
/// Everything random in the harness flows through this, which is what makes
/// results independent of worker count and execution order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                                 std::uint64_t index = 0, std::uint64_t sub = 0)
{
    std::uint64_t h = mix64(base ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ tag * 0xff51afd7ed558ccdULL);
    h = mix64(h ^ index * 0xc4ceb9fe1a85ec53ULL);
    h = mix64(h ^ sub * 0x2545f4914f6cdd1dULL);
    return h;
}

/// Purpose tags for derive_seed. Keeping them in one place avoids collisions.
namespace seed_tag {
inline constexpr std::uint64_t bits = 1;
inline constexpr std::uint64_t channel = 2;
inline constexpr std::uint64_t noise = 3;
inline constexpr std::uint64_t psd_draw = 4;
} // namespace seed_tag

/// Deterministic generator: splitmix64 state walk plus Box-Muller normals.
/// Hand-rolled (rather than <random> distributions) so identical seeds give
/// byte-identical streams on any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x853c49e6748fea9bULL)) {}

    std::uint64_t next_u64()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never returns 0 so log() is safe.
    double uniform01()
    {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal, Box-Muller with a cached spare.
    double gaussian()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform01()));
        const double a = 2.0 * std::numbers::pi_v<double> * uniform01();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly symmetric complex normal with total variance `variance`
    /// (i.e. variance/2 per real component).
    cplx complex_gaussian(double variance)
    {
        const double s = std::sqrt(variance * 0.5);
        const double r = std::sqrt(-2.0 * std::log(uniform01()));
        const double a = 2.0 * std::numbers::pi_v<double> * uniform01();
        return cplx(s * r * std::cos(a), s * r * std::sin(a));
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ofdmlab
