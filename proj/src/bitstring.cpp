#include "fuzex/bitstring.hpp"

#include "fuzex/rng.hpp"

#include <bit>
#include <stdexcept>

namespace fuzex {

void BitString::mask_tail() {
    size_t rem = nbits_ & 63;
    if (rem != 0 && !words_.empty())
        words_.back() &= (uint64_t{1} << rem) - 1;
}

BitString BitString::ones(size_t nbits) {
    BitString r(nbits);
    for (auto& w : r.words_) w = ~uint64_t{0};
    r.mask_tail();
    return r;
}

BitString BitString::random(size_t nbits, Rng& rng) {
    BitString r(nbits);
    for (auto& w : r.words_) w = rng.next_u64();
    r.mask_tail();
    return r;
}

BitString BitString::from_string(std::string_view s) {
    BitString r(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        if (s[i] == '1') r.set_bit(i, true);
        else if (s[i] != '0') throw std::invalid_argument("bit string literal must be 0/1");
    }
    return r;
}

BitString& BitString::operator^=(const BitString& other) {
    if (nbits_ != other.nbits_)
        throw std::invalid_argument("bit string length mismatch in xor");
    for (size_t i = 0; i < words_.size(); i++) words_[i] ^= other.words_[i];
    return *this;
}

size_t BitString::hamming_weight() const {
    size_t w = 0;
    for (uint64_t word : words_) w += std::popcount(word);
    return w;
}

bool BitString::is_zero() const {
    for (uint64_t word : words_)
        if (word != 0) return false;
    return true;
}

BitString BitString::slice(size_t pos, size_t len) const {
    if (pos + len > nbits_) throw std::out_of_range("bit slice out of range");
    BitString r(len);
    size_t done = 0;
    while (done < len) {
        size_t chunk = std::min<size_t>(64, len - done);
        r.set_window64(done, chunk, window64(pos + done, chunk));
        done += chunk;
    }
    return r;
}

BitString BitString::concat(const BitString& other) const {
    BitString r(nbits_ + other.nbits_);
    size_t done = 0;
    while (done < nbits_) {
        size_t chunk = std::min<size_t>(64, nbits_ - done);
        r.set_window64(done, chunk, window64(done, chunk));
        done += chunk;
    }
    done = 0;
    while (done < other.nbits_) {
        size_t chunk = std::min<size_t>(64, other.nbits_ - done);
        r.set_window64(nbits_ + done, chunk, other.window64(done, chunk));
        done += chunk;
    }
    return r;
}

uint64_t BitString::window64(size_t pos, size_t len) const {
    if (len == 0) return 0;
    uint64_t out = 0;
    size_t wi = pos >> 6, off = pos & 63;
    if (wi < words_.size()) out = words_[wi] >> off;
    if (off != 0 && wi + 1 < words_.size()) out |= words_[wi + 1] << (64 - off);
    if (len < 64) out &= (uint64_t{1} << len) - 1;
    if (pos + len > nbits_ && pos < nbits_)  // clip bits past the end
        out &= (uint64_t{1} << (nbits_ - pos)) - 1;
    if (pos >= nbits_) out = 0;
    return out;
}

void BitString::set_window64(size_t pos, size_t len, uint64_t value) {
    if (len == 0) return;
    if (pos + len > nbits_) throw std::out_of_range("bit window out of range");
    if (len < 64) value &= (uint64_t{1} << len) - 1;
    size_t wi = pos >> 6, off = pos & 63;
    uint64_t lo_mask = (len < 64 ? ((uint64_t{1} << len) - 1) : ~uint64_t{0}) << off;
    words_[wi] = (words_[wi] & ~lo_mask) | ((value << off) & lo_mask);
    if (off != 0 && off + len > 64) {
        size_t hi_len = off + len - 64;
        uint64_t hi_mask = (uint64_t{1} << hi_len) - 1;
        words_[wi + 1] = (words_[wi + 1] & ~hi_mask) | ((value >> (64 - off)) & hi_mask);
    }
}

std::vector<uint8_t> BitString::to_bytes() const {
    std::vector<uint8_t> out((nbits_ + 7) / 8, 0);
    for (size_t i = 0; i < nbits_; i++)
        if (bit(i)) out[i >> 3] |= uint8_t(0x80u >> (i & 7));
    return out;
}

BitString BitString::from_bytes(std::span<const uint8_t> bytes, size_t nbits) {
    if (bytes.size() < (nbits + 7) / 8)
        throw std::invalid_argument("byte buffer too short for declared bit length");
    BitString r(nbits);
    for (size_t i = 0; i < nbits; i++)
        if (bytes[i >> 3] & (0x80u >> (i & 7))) r.set_bit(i, true);
    return r;
}

std::string BitString::to_string() const {
    std::string s(nbits_, '0');
    for (size_t i = 0; i < nbits_; i++)
        if (bit(i)) s[i] = '1';
    return s;
}

}  // namespace fuzex
