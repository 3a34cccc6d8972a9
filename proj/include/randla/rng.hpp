#pragma once

#include <cmath>
#include <cstdint>

namespace randla {

// Counter-derived random stream. Streams are cheap value types; derive() mixes
// extra keys into the state so that (seed, experiment, trial) identifies an
// independent substream. Trials can therefore run in any order, or in
// parallel, and reproduce bit-identically.
//
// Mixing is splitmix64; the stream itself iterates the same finalizer.
// Gaussians come from the Marsaglia polar transform, so a fixed stream yields
// a fixed sequence of draws (fixtures can be regenerated from seeds alone).
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(mix_key(0x9E3779B97F4A7C15ull, seed)) {}

    RngStream derived(std::uint64_t key) const {
        RngStream s(*this);
        s.state_ = mix_key(s.state_, key);
        s.has_spare_ = false;
        return s;
    }

    RngStream derived(std::uint64_t key1, std::uint64_t key2) const {
        return derived(key1).derived(key2);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1), 53 significant bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on [-1, 1]
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

    // unbiased uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    // standard normal draw, Marsaglia polar method
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = next_symmetric();
            v = next_symmetric();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

  private:
    static std::uint64_t mix_key(std::uint64_t state, std::uint64_t key) {
        state ^= key + 0x9E3779B97F4A7C15ull + (state << 6) + (state >> 2);
        std::uint64_t z = state + 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline std::uint64_t hash_label(const char* s) {
    // FNV-1a, used to key experiment substreams by label
    std::uint64_t h = 1469598103934665603ull;
    for (; *s; ++s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(*s));
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace randla
