#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fuzex {

class Rng;

/// Fixed-length string of bits. Bit 0 is the first bit of the stream.
/// Internally packed little-endian into 64-bit words; the byte form used by
/// the file formats packs bits most-significant-bit-first within each byte
/// (to_bytes / from_bytes).
class BitString {
public:
    BitString() = default;
    explicit BitString(size_t nbits) : nbits_(nbits), words_(word_count(nbits), 0) {}

    static BitString zeros(size_t nbits) { return BitString(nbits); }
    static BitString ones(size_t nbits);
    static BitString random(size_t nbits, Rng& rng);
    /// Parse "0101..."; bit 0 is the leftmost character.
    static BitString from_string(std::string_view s);

    size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool bit(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set_bit(size_t i, bool v) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip_bit(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitString& operator^=(const BitString& other);
    BitString operator^(const BitString& other) const {
        BitString r = *this;
        r ^= other;
        return r;
    }
    bool operator==(const BitString&) const = default;

    size_t hamming_weight() const;
    bool is_zero() const;

    /// Bits [pos, pos+len), as a new string.
    BitString slice(size_t pos, size_t len) const;
    /// this followed by other.
    BitString concat(const BitString& other) const;

    /// Up to 64 bits starting at pos, bit pos in the result's bit 0.
    /// Reads past the end return zero bits.
    uint64_t window64(size_t pos, size_t len) const;
    void set_window64(size_t pos, size_t len, uint64_t value);

    /// MSB-first byte packing, final byte zero-padded (the on-disk form).
    std::vector<uint8_t> to_bytes() const;
    static BitString from_bytes(std::span<const uint8_t> bytes, size_t nbits);

    std::string to_string() const;
    std::span<const uint64_t> words() const { return words_; }

private:
    static size_t word_count(size_t nbits) { return (nbits + 63) / 64; }
    void mask_tail();

    size_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace fuzex
