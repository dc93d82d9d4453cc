#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace advicelab {

// Fixed-length bit vector. Bit 0 is the leftmost (most significant) bit, so
// value() reads the string as a binary number written left to right. Ordering
// is length-first, then lexicographic; for equal lengths that coincides with
// numeric order.
class BitString {
   public:
    BitString() = default;
    explicit BitString(size_t n) : bits_(n, false) {}

    // n <= 64. Builds the n-bit binary expansion of value, leftmost bit most
    // significant.
    static BitString from_value(size_t n, uint64_t value);
    // Parses a string of '0'/'1' characters.
    static BitString from_string(std::string_view s);
    static BitString zeros(size_t n) { return BitString(n); }

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool bit(size_t i) const { return bits_[i]; }
    void set_bit(size_t i, bool v) { bits_[i] = v; }
    void append(bool b) { bits_.push_back(b); }

    // Integer value of the string; requires size() <= 64.
    uint64_t value() const;
    bool any() const;
    size_t popcount() const;
    bool has_prefix(const BitString& prefix) const;
    BitString prefix(size_t len) const;
    BitString concat(const BitString& other) const;

    BitString operator^(const BitString& other) const;

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }
    std::strong_ordering operator<=>(const BitString& other) const;

    std::string str() const;

   private:
    std::vector<bool> bits_;
};

}  // namespace advicelab
