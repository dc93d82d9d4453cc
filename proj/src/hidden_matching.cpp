#include "advicelab/hidden_matching.hpp"

#include <charconv>
#include <stdexcept>

#include "advicelab/errors.hpp"

namespace advicelab {

namespace {

size_t word_count(int n) {
    return size_t((uint64_t(1) << n) + 63) >> 6;
}

void check_n(int n) {
    if (n < 1) {
        throw std::invalid_argument("FunctionFamily: n must be >= 1");
    }
    if (n > FunctionFamily::kMaxBits) {
        throw CapacityError("FunctionFamily: n over the 24-bit table guard");
    }
}

}  // namespace

FunctionFamily::FunctionFamily(int n, uint64_t seed, std::vector<uint64_t> table)
    : n_(n), seed_(seed), table_(std::move(table)) {
    check_n(n);
    if (table_.size() != word_count(n)) {
        throw std::invalid_argument("FunctionFamily: table word count does not match n");
    }
    if (n_ < 6) {
        table_[0] &= (uint64_t(1) << (uint64_t(1) << n_)) - 1;
    }
}

FunctionFamily FunctionFamily::random(uint64_t seed, int n) {
    check_n(n);
    RngStream stream = RngStream(seed).substream(uint64_t(n));
    std::vector<uint64_t> table(word_count(n));
    for (auto& word : table) {
        word = stream.next_u64();
    }
    return FunctionFamily(n, seed, std::move(table));
}

FunctionFamily FunctionFamily::from_predicate(int n, const std::function<bool(uint64_t)>& f) {
    check_n(n);
    std::vector<uint64_t> table(word_count(n), 0);
    for (uint64_t y = 0; y < (uint64_t(1) << n); y++) {
        if (f(y)) {
            table[y >> 6] |= uint64_t(1) << (y & 63);
        }
    }
    return FunctionFamily(n, 0, std::move(table));
}

std::string FunctionFamily::serialize() const {
    static const char* digits = "0123456789abcdef";
    uint64_t bits = domain_size();
    std::string hex;
    hex.reserve((bits + 3) / 4);
    for (uint64_t base = 0; base < bits; base += 4) {
        int digit = 0;
        for (uint64_t j = 0; j < 4 && base + j < bits; j++) {
            if (eval(base + j)) {
                digit |= 8 >> j;
            }
        }
        hex.push_back(digits[digit]);
    }
    return "HM1:n=" + std::to_string(n_) + ":" + hex;
}

FunctionFamily FunctionFamily::parse(const std::string& text) {
    if (text.rfind("HM1:n=", 0) != 0) {
        throw std::invalid_argument("FunctionFamily::parse: missing HM1 header");
    }
    size_t colon = text.find(':', 6);
    if (colon == std::string::npos) {
        throw std::invalid_argument("FunctionFamily::parse: malformed header");
    }
    int n = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 6, text.data() + colon, n);
    if (ec != std::errc() || ptr != text.data() + colon) {
        throw std::invalid_argument("FunctionFamily::parse: bad n field");
    }
    check_n(n);
    std::string_view hex(text.data() + colon + 1, text.size() - colon - 1);
    uint64_t bits = uint64_t(1) << n;
    if (hex.size() != (bits + 3) / 4) {
        throw std::invalid_argument("FunctionFamily::parse: hex length does not match n");
    }
    std::vector<uint64_t> table(word_count(n), 0);
    for (uint64_t i = 0; i < hex.size(); i++) {
        char c = hex[i];
        int digit;
        if (c >= '0' && c <= '9') {
            digit = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            digit = c - 'a' + 10;
        } else {
            throw std::invalid_argument("FunctionFamily::parse: non-hex digit");
        }
        for (uint64_t j = 0; j < 4; j++) {
            uint64_t y = 4 * i + j;
            if (y < bits && (digit & (8 >> j))) {
                table[y >> 6] |= uint64_t(1) << (y & 63);
            }
        }
    }
    return FunctionFamily(n, 0, std::move(table));
}

HMOutput HMOutput::decode(const BitString& encoded) {
    if (encoded.size() < 1) {
        throw std::invalid_argument("HMOutput::decode: empty encoding");
    }
    HMOutput out;
    out.y = encoded.prefix(encoded.size() - 1);
    out.b = encoded.bit(encoded.size() - 1);
    return out;
}

bool rf_check(const FunctionFamily& f, const BitString& x, const HMOutput& out) {
    if (int(x.size()) != f.n() || out.y.size() != x.size()) {
        throw std::invalid_argument("rf_check: length mismatch");
    }
    uint64_t y = out.y.value();
    uint64_t yx = y ^ x.value();
    return (f.eval(y) != f.eval(yx)) == out.b;
}

Relation hm_relation(const FunctionFamily& f) {
    Relation r;
    r.name = "hidden_matching_n" + std::to_string(f.n());
    r.input_bits = f.n();
    r.output_bits = f.n() + 1;
    r.check = [f](const BitString& x, const BitString& encoded) {
        if (int(encoded.size()) != f.n() + 1) {
            return false;
        }
        return rf_check(f, x, HMOutput::decode(encoded));
    };
    return r;
}

std::vector<std::pair<uint64_t, uint64_t>> matching_edges(const BitString& x) {
    if (!x.any()) {
        throw std::invalid_argument("matching_edges: x = 0^n has no matching");
    }
    uint64_t xv = x.value();
    uint64_t domain = uint64_t(1) << x.size();
    std::vector<std::pair<uint64_t, uint64_t>> edges;
    edges.reserve(domain / 2);
    for (uint64_t y = 0; y < domain; y++) {
        uint64_t partner = y ^ xv;
        if (y < partner) {
            edges.emplace_back(y, partner);
        }
    }
    return edges;
}

std::pair<FunctionFamily, BitString> sample_instance_mu(int n, RngStream& rng) {
    check_n(n);
    FunctionFamily f = FunctionFamily::random(rng.next_u64(), n);
    uint64_t xv = 1 + rng.uniform_below((uint64_t(1) << n) - 1);
    return {std::move(f), BitString::from_value(size_t(n), xv)};
}

}  // namespace advicelab
