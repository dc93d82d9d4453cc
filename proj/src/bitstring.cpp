#include "advicelab/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace advicelab {

BitString BitString::from_value(size_t n, uint64_t value) {
    if (n > 64) {
        throw std::invalid_argument("BitString::from_value: length over 64");
    }
    BitString out(n);
    for (size_t i = 0; i < n; i++) {
        out.bits_[i] = (value >> (n - 1 - i)) & 1;
    }
    return out;
}

BitString BitString::from_string(std::string_view s) {
    BitString out(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        if (s[i] == '1') {
            out.bits_[i] = true;
        } else if (s[i] != '0') {
            throw std::invalid_argument("BitString::from_string: non-binary character");
        }
    }
    return out;
}

uint64_t BitString::value() const {
    if (size() > 64) {
        throw std::invalid_argument("BitString::value: length over 64");
    }
    uint64_t v = 0;
    for (bool b : bits_) {
        v = (v << 1) | uint64_t(b);
    }
    return v;
}

bool BitString::any() const {
    return std::find(bits_.begin(), bits_.end(), true) != bits_.end();
}

size_t BitString::popcount() const {
    return size_t(std::count(bits_.begin(), bits_.end(), true));
}

bool BitString::has_prefix(const BitString& prefix) const {
    if (prefix.size() > size()) {
        return false;
    }
    return std::equal(prefix.bits_.begin(), prefix.bits_.end(), bits_.begin());
}

BitString BitString::prefix(size_t len) const {
    BitString out(std::min(len, size()));
    std::copy(bits_.begin(), bits_.begin() + ptrdiff_t(out.size()), out.bits_.begin());
    return out;
}

BitString BitString::concat(const BitString& other) const {
    BitString out = *this;
    out.bits_.insert(out.bits_.end(), other.bits_.begin(), other.bits_.end());
    return out;
}

BitString BitString::operator^(const BitString& other) const {
    if (size() != other.size()) {
        throw std::invalid_argument("BitString::operator^: length mismatch");
    }
    BitString out(size());
    for (size_t i = 0; i < size(); i++) {
        out.bits_[i] = bits_[i] != other.bits_[i];
    }
    return out;
}

std::strong_ordering BitString::operator<=>(const BitString& other) const {
    if (size() != other.size()) {
        return size() <=> other.size();
    }
    for (size_t i = 0; i < size(); i++) {
        if (bits_[i] != other.bits_[i]) {
            return bits_[i] ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }
    return std::strong_ordering::equal;
}

std::string BitString::str() const {
    std::string s(size(), '0');
    for (size_t i = 0; i < size(); i++) {
        if (bits_[i]) {
            s[i] = '1';
        }
    }
    return s;
}

}  // namespace advicelab
