#pragma once

#include <cstdint>
#include <random>

#include "mas/errors.hpp"

namespace mas {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic random source. The bounded draws below are implemented by
// hand because the standard distributions are allowed to differ between
// library implementations; raw engine output is not. The same (seed, stream)
// pair therefore produces the same values on every platform.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), engine_(detail::mix64(seed ^ detail::mix64(stream))) {}

    // Independent generator for a sub-task; forking the same stream id twice
    // gives the same generator.
    SplitRng fork(std::uint64_t stream) const {
        return SplitRng(seed_, detail::mix64(stream_) ^ stream);
    }

    std::uint64_t next() { return engine_(); }

    // Uniform draw from [0, bound). Modulo bias is negligible for the bounds
    // used here and keeps the draw portable.
    std::size_t uniform_index(std::size_t bound) {
        if (bound == 0) throw OutOfRange("uniform_index needs a positive bound");
        return static_cast<std::size_t>(next() % bound);
    }

    // Uniform draw from [lo, hi], both ends included.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw OutOfRange("uniform_int needs lo <= hi");
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    // Uniform draw from [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

}  // namespace mas
