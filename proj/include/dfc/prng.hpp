#pragma once

#include <cstdint>

namespace dfc {

/// PCG32: small deterministic generator with identical output on every
/// platform, used for seeded instance generation and randomized tests.
class Pcg32 {
public:
    explicit Pcg32(uint64_t seed, uint64_t stream = 0x14057b7ef767814fULL) {
        state_ = 0;
        inc_ = (stream << 1) | 1;
        next();
        state_ += seed;
        next();
    }

    uint32_t next() {
        uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        uint32_t xorshifted = uint32_t(((old >> 18) ^ old) >> 27);
        uint32_t rot = uint32_t(old >> 59);
        return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31));
    }

    /// Uniform in [lo, hi] (modulo mapping; determinism matters here, an
    /// unbiased distribution does not).
    int64_t uniform(int64_t lo, int64_t hi) {
        uint64_t span = uint64_t(hi - lo) + 1;
        return lo + int64_t(next() % span);
    }

private:
    uint64_t state_ = 0, inc_ = 0;
};

} // namespace dfc
