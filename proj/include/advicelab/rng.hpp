#pragma once

#include <array>
#include <cstdint>

#include "advicelab/bitstring.hpp"

namespace advicelab {

// Seedable, splittable deterministic generator.
//
// The core generator is xoshiro256**. The 256-bit state is expanded from the
// 64-bit seed with splitmix64. Substream i is an independent RngStream whose
// seed is mix64(seed, i) (a splitmix64 finalizer over seed + GOLDEN*(i+1)),
// so substreams depend only on (seed, i), never on how much of the parent
// stream has been consumed. All experiments derive one substream per trial,
// which makes trial results order-independent and thread-safe to compute in
// parallel.
class RngStream {
   public:
    explicit RngStream(uint64_t seed);

    uint64_t seed() const { return seed_; }
    RngStream substream(uint64_t label) const;

    uint64_t next_u64();
    // Uniform double in [0, 1), 53 random bits.
    double uniform();
    // Unbiased integer in [0, bound) via masked rejection; bound >= 1.
    uint64_t uniform_below(uint64_t bound);
    bool bernoulli(double p) { return uniform() < p; }
    // len random bits; bit j comes from bit (j % 64) of word (j / 64) of the
    // raw output stream.
    BitString random_bits(size_t len);

   private:
    uint64_t seed_;
    std::array<uint64_t, 4> state_;
};

// splitmix64 finalizer over a + GOLDEN*(b+1); used for substream derivation.
uint64_t mix64(uint64_t a, uint64_t b);

}  // namespace advicelab
