#pragma once

#include "quantset/special.hpp"

#include <cstdint>
#include <random>

namespace quantset {

/// Deterministic random source. Uniforms come straight from mt19937_64 bits and
/// normals through the inverse CDF, so streams are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on the open interval (0, 1).
    double uniform01() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() { return special::norm_quantile(uniform01()); }

    double normal(double mu, double sd) { return mu + sd * normal(); }

    /// Deterministic per-stream seed derivation (splitmix64 of master ^ stream).
    static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t x = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace quantset
