#include "advicelab/rng.hpp"

#include <bit>
#include <stdexcept>

namespace advicelab {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t splitmix64_next(uint64_t& x) {
    x += kGolden;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t mix64(uint64_t a, uint64_t b) {
    uint64_t x = a + kGolden * (b + 1);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngStream::RngStream(uint64_t seed) : seed_(seed) {
    uint64_t x = seed;
    for (auto& word : state_) {
        word = splitmix64_next(x);
    }
}

RngStream RngStream::substream(uint64_t label) const {
    return RngStream(mix64(seed_, label));
}

uint64_t RngStream::next_u64() {
    uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t RngStream::uniform_below(uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_below: bound must be >= 1");
    }
    if (bound == 1) {
        return 0;
    }
    uint64_t mask = ~uint64_t(0) >> std::countl_zero(bound - 1);
    for (;;) {
        uint64_t v = next_u64() & mask;
        if (v < bound) {
            return v;
        }
    }
}

BitString RngStream::random_bits(size_t len) {
    BitString out(len);
    uint64_t word = 0;
    for (size_t j = 0; j < len; j++) {
        if (j % 64 == 0) {
            word = next_u64();
        }
        out.set_bit(j, (word >> (j % 64)) & 1);
    }
    return out;
}

}  // namespace advicelab
