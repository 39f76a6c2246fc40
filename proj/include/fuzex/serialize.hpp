#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuzex/rfe.hpp"
#include "fuzex/sampler.hpp"
#include "fuzex/srrfe.hpp"

namespace fuzex {

/// Malformed bytes: bad magic, short buffer, inconsistent header (CLI exit 4).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally valid file bound to different parameters (CLI exit 3).
struct DigestMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All file formats share a 31-byte header:
//   magic[4] ("FEHD" helper, "FECR" CRS, "FEKY" key)
//   version u8 (0x01 = Construction 1, 0x02 = Construction 2)
//   params block, big-endian: n u32, m u16, ell u16, t u16, t' u16,
//     xi u16, lambda u16, nu u16, L u32
//   payload length u32
// Bit strings are packed MSB-first within bytes, zero-padded in the last
// byte. Index lists are explicit big-endian u32 per index.

constexpr size_t kHeaderSize = 31;

std::vector<uint8_t> serialize_helper(const RfeHelperData& helper, const ToeplitzSeed& z);
std::pair<RfeHelperData, ToeplitzSeed> parse_helper_c1(std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_helper(const SrrfeHelperData& helper);
SrrfeHelperData parse_helper_c2(std::span<const uint8_t> bytes);

/// Construction byte of a helper file (1 or 2) without a full parse.
uint8_t helper_version(std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_crs(const Crs& crs, const Params& params);
/// Returns the CRS; header params are returned through *header_out when
/// non-null so callers can digest-check against their own parameters.
Crs parse_crs(std::span<const uint8_t> bytes, Params* header_out = nullptr);

std::vector<uint8_t> serialize_key(const ExtractedKey& key, const Params& params,
                                   Construction c);
ExtractedKey parse_key(std::span<const uint8_t> bytes);

/// Sample files: 6-byte preamble "FS" + u32 big-endian bit length, then the
/// packed bits. n need not be a multiple of 8.
std::vector<uint8_t> serialize_sample(const BitString& w);
BitString parse_sample(std::span<const uint8_t> bytes);

std::vector<uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes);

}  // namespace fuzex
