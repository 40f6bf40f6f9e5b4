#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace deltacat {

/// Deterministic random source. Bounded draws are computed from the raw
/// mt19937_64 stream, so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent substream for (seed, law, model, trial).
    static Rng substream(std::uint64_t seed, std::string_view law, std::string_view model, std::uint64_t trial) {
        std::uint64_t h = mix(seed);
        h = mix(h ^ fnv1a(law));
        h = mix(h ^ fnv1a(model));
        h = mix(h ^ trial);
        return Rng(h);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    long long uniform(long long lo, long long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(next() % span);
    }

    /// Uniform double in [lo, hi).
    double real(double lo, double hi) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    bool chance(double p) { return real(0.0, 1.0) < p; }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    /// Index drawn proportionally to `weights` (all non-negative, sum > 0).
    std::size_t weighted(const std::vector<unsigned>& weights) {
        unsigned total = 0;
        for (unsigned w : weights) total += w;
        auto r = static_cast<unsigned>(next() % total);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (r < weights[i]) return i;
            r -= weights[i];
        }
        return weights.size() - 1;
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace deltacat
