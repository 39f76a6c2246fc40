#include "fuzex/serialize.hpp"

#include <cstring>
#include <fstream>

#include "fuzex/field.hpp"

namespace fuzex {

namespace {

class Writer {
public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u16(uint16_t v) {
        out_.push_back(uint8_t(v >> 8));
        out_.push_back(uint8_t(v));
    }
    void u32(uint32_t v) {
        out_.push_back(uint8_t(v >> 24));
        out_.push_back(uint8_t(v >> 16));
        out_.push_back(uint8_t(v >> 8));
        out_.push_back(uint8_t(v));
    }
    void raw(std::span<const uint8_t> bytes) {
        out_.insert(out_.end(), bytes.begin(), bytes.end());
    }
    void bits(const BitString& b) {
        auto packed = b.to_bytes();
        raw(packed);
    }
    std::vector<uint8_t> take() { return std::move(out_); }

private:
    std::vector<uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    uint8_t u8() { return take(1)[0]; }
    uint16_t u16() {
        auto b = take(2);
        return uint16_t(b[0]) << 8 | b[1];
    }
    uint32_t u32() {
        auto b = take(4);
        return uint32_t(b[0]) << 24 | uint32_t(b[1]) << 16 | uint32_t(b[2]) << 8 | b[3];
    }
    BitString bits(size_t nbits) {
        auto b = take((nbits + 7) / 8);
        BitString r = BitString::from_bytes(b, nbits);
        // padding bits in the final byte must be zero
        for (size_t i = nbits; i < b.size() * 8; i++)
            if (b[i >> 3] & (0x80u >> (i & 7)))
                throw ParseError("nonzero padding bits");
        return r;
    }
    size_t remaining() const { return bytes_.size() - pos_; }
    void expect_end() const {
        if (remaining() != 0) throw ParseError("trailing bytes after payload");
    }

private:
    std::span<const uint8_t> take(size_t k) {
        if (pos_ + k > bytes_.size()) throw ParseError("truncated file");
        auto s = bytes_.subspan(pos_, k);
        pos_ += k;
        return s;
    }

    std::span<const uint8_t> bytes_;
    size_t pos_ = 0;
};

void write_header(Writer& w, const char magic[4], uint8_t version, const Params& p,
                  uint32_t payload_len) {
    w.raw(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(magic), 4));
    w.u8(version);
    w.u32(p.n);
    w.u16(uint16_t(p.m));
    w.u16(uint16_t(p.ell));
    w.u16(uint16_t(p.t));
    w.u16(uint16_t(p.t_prime));
    w.u16(uint16_t(p.xi));
    w.u16(uint16_t(p.lambda));
    w.u16(uint16_t(p.nu));
    w.u32(p.L);
    w.u32(payload_len);
}

struct Header {
    uint8_t version = 0;
    Params params;
    uint32_t payload_len = 0;
};

Header read_header(Reader& r, const char expect_magic[4]) {
    uint8_t magic[4];
    for (auto& b : magic) b = r.u8();
    if (std::memcmp(magic, expect_magic, 4) != 0) throw ParseError("bad magic");
    Header h;
    h.version = r.u8();
    if (h.version != 1 && h.version != 2) throw ParseError("unknown version byte");
    h.params.n = r.u32();
    h.params.m = r.u16();
    h.params.ell = r.u16();
    h.params.t = r.u16();
    h.params.t_prime = r.u16();
    h.params.xi = r.u16();
    h.params.lambda = r.u16();
    h.params.nu = r.u16();
    h.params.L = r.u32();
    h.payload_len = r.u32();
    if (r.remaining() != h.payload_len) throw ParseError("payload length mismatch");
    return h;
}

// Structural header checks; the entropy-side fields (alpha, sigma, N, ...)
// do not travel in files, so only dimension arithmetic is verifiable here.
void check_header_params(const Header& h) {
    const Params& p = h.params;
    if (p.m == 0 || p.m > p.n) throw ParseError("header: need 0 < m <= n");
    if (p.ell == 0) throw ParseError("header: ell must be nonzero");
    if (p.m < p.n && p.t_prime >= p.n - p.m)
        throw ParseError("header: t' must be < n - m");
    if (h.version == 1) {
        if (p.nu != p.xi + p.t) throw ParseError("header: nu != xi + t");
    } else {
        if (p.nu != p.xi + p.t + 2 * p.lambda)
            throw ParseError("header: nu != xi + t + 2*lambda");
        if (!Field::supported(p.lambda)) throw ParseError("header: unsupported lambda");
        if (p.L % 4 != 3 || p.L < (uint64_t(p.ell) * p.nu + p.lambda - 1) / p.lambda + 4)
            throw ParseError("header: invalid MAC degree L");
    }
}

size_t packed(size_t nbits) { return (nbits + 7) / 8; }

}  // namespace

std::vector<uint8_t> serialize_helper(const RfeHelperData& helper, const ToeplitzSeed& z) {
    const Params& p = helper.params;
    size_t payload = packed(size_t(p.m) + p.nu - 1) +
                     size_t(p.ell) * (packed(p.nu) + size_t(p.m) * 4);
    Writer w;
    write_header(w, "FEHD", 1, p, uint32_t(payload));
    w.bits(z.bits);
    for (const auto& e : helper.entries) {
        w.bits(e.p);
        for (uint32_t idx : e.a.indices) w.u32(idx);
    }
    return w.take();
}

std::pair<RfeHelperData, ToeplitzSeed> parse_helper_c1(std::span<const uint8_t> bytes) {
    Reader r(bytes);
    Header h = read_header(r, "FEHD");
    if (h.version != 1) throw ParseError("not a Construction 1 helper file");
    check_header_params(h);
    const Params& p = h.params;
    ToeplitzSeed z = toeplitz_seed_from_bits(r.bits(size_t(p.m) + p.nu - 1), p.m, p.nu);
    RfeHelperData helper;
    helper.params = p;
    for (uint32_t i = 0; i < p.ell; i++) {
        RfeHelperData::Entry e;
        e.p = r.bits(p.nu);
        e.a.indices.resize(p.m);
        for (auto& idx : e.a.indices) {
            idx = r.u32();
            if (idx >= p.n) throw ParseError("index out of range");
        }
        helper.entries.push_back(std::move(e));
    }
    r.expect_end();
    return {std::move(helper), std::move(z)};
}

std::vector<uint8_t> serialize_helper(const SrrfeHelperData& helper) {
    const Params& p = helper.params;
    size_t payload = size_t(p.ell) * packed(p.nu) + packed(p.lambda);
    Writer w;
    write_header(w, "FEHD", 2, p, uint32_t(payload));
    for (const auto& block : helper.p) w.bits(block);
    Field field(p.lambda);
    w.bits(field.to_bits(helper.tag.value));
    return w.take();
}

SrrfeHelperData parse_helper_c2(std::span<const uint8_t> bytes) {
    Reader r(bytes);
    Header h = read_header(r, "FEHD");
    if (h.version != 2) throw ParseError("not a Construction 2 helper file");
    check_header_params(h);
    const Params& p = h.params;
    SrrfeHelperData helper;
    helper.params = p;
    for (uint32_t i = 0; i < p.ell; i++) helper.p.push_back(r.bits(p.nu));
    Field field(p.lambda);
    helper.tag = Tag{field.from_bits(r.bits(p.lambda), 0)};
    r.expect_end();
    return helper;
}

uint8_t helper_version(std::span<const uint8_t> bytes) {
    if (bytes.size() < 5 || std::memcmp(bytes.data(), "FEHD", 4) != 0)
        throw ParseError("not a helper-data file");
    return bytes[4];
}

std::vector<uint8_t> serialize_crs(const Crs& crs, const Params& params) {
    size_t payload = size_t(params.ell) * params.m * 4 +
                     packed(size_t(params.m) + params.nu - 1);
    Writer w;
    write_header(w, "FECR", params.lambda != 0 ? 2 : 1, params, uint32_t(payload));
    for (const auto& set : crs.index_sets)
        for (uint32_t idx : set.indices) w.u32(idx);
    w.bits(crs.seed.bits);
    return w.take();
}

Crs parse_crs(std::span<const uint8_t> bytes, Params* header_out) {
    Reader r(bytes);
    Header h = read_header(r, "FECR");
    check_header_params(h);
    const Params& p = h.params;
    Crs crs;
    crs.digest = {p.n, p.m, p.ell, p.nu};
    for (uint32_t i = 0; i < p.ell; i++) {
        IndexSet set;
        set.indices.resize(p.m);
        for (auto& idx : set.indices) {
            idx = r.u32();
            if (idx >= p.n) throw ParseError("index out of range");
        }
        crs.index_sets.push_back(std::move(set));
    }
    crs.seed = toeplitz_seed_from_bits(r.bits(size_t(p.m) + p.nu - 1), p.m, p.nu);
    r.expect_end();
    if (header_out) *header_out = p;
    return crs;
}

std::vector<uint8_t> serialize_key(const ExtractedKey& key, const Params& params,
                                   Construction c) {
    Writer w;
    write_header(w, "FEKY", uint8_t(c), params, uint32_t(packed(key.bits.size())));
    w.bits(key.bits);
    return w.take();
}

ExtractedKey parse_key(std::span<const uint8_t> bytes) {
    Reader r(bytes);
    Header h = read_header(r, "FEKY");
    check_header_params(h);
    ExtractedKey key{r.bits(h.params.xi)};
    r.expect_end();
    return key;
}

std::vector<uint8_t> serialize_sample(const BitString& w) {
    Writer wr;
    wr.u8('F');
    wr.u8('S');
    wr.u32(uint32_t(w.size()));
    wr.bits(w);
    return wr.take();
}

BitString parse_sample(std::span<const uint8_t> bytes) {
    Reader r(bytes);
    if (r.u8() != 'F' || r.u8() != 'S') throw ParseError("not a sample file");
    uint32_t nbits = r.u32();
    BitString w = r.bits(nbits);
    r.expect_end();
    return w;
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

}  // namespace fuzex
