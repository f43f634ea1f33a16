#pragma once

#include <cstdint>
#include <vector>

#include "c3p/error.hpp"

namespace c3p {

// Total frequency of every CDF table; matches the 2^-16 probability floor
// used in rate estimation so estimates and payloads agree.
constexpr uint32_t kCdfTotal = 1u << 16;

// Cumulative frequencies: cdf[0] = 0, cdf[alphabet] = 65536, strictly
// increasing (every symbol has frequency >= 1).
struct CdfTable {
    std::vector<uint32_t> cdf;

    uint32_t alphabet() const { return uint32_t(cdf.size() - 1); }
    uint32_t freq(uint32_t s) const { return cdf[s + 1] - cdf[s]; }
    void validate() const;
};

// Builds a table from a (not necessarily normalized) pmf by largest-remainder
// apportionment at 16-bit precision; ties go to the lower index and every
// symbol keeps frequency >= 1. If `escape_mass` is non-negative, one extra
// trailing symbol is appended carrying that share of the mass.
CdfTable build_cdf_table(const std::vector<double>& pmf, double escape_mass = -1.0);

// Byte-wise renormalizing range coder over 64-bit registers, carry-less in
// the style of Subbotin: when the top bytes of low and low+range disagree
// and range has shrunk below 2^32, range is clamped to the next 2^32
// boundary so emitted bytes are final. Symbol totals are fixed at 2^16.
class RangeEncoder {
public:
    void encode(const CdfTable& table, uint32_t symbol);
    // `bits` raw bits (<= 32) at probability 1/2 each.
    void encode_bypass(uint32_t value, int bits);
    // Flushes the remaining state; at most 8 tail bytes. The encoder is
    // finished afterwards and must not be reused.
    std::vector<uint8_t> finish();

private:
    void renorm();
    void encode_span(uint32_t cum, uint32_t freq, uint32_t total_bits);

    uint64_t low_ = 0;
    uint64_t range_ = ~uint64_t(0);
    std::vector<uint8_t> out_;
    bool finished_ = false;
};

class RangeDecoder {
public:
    explicit RangeDecoder(const uint8_t* data, size_t size);
    explicit RangeDecoder(const std::vector<uint8_t>& data)
        : RangeDecoder(data.data(), data.size()) {}

    uint32_t decode(const CdfTable& table);
    uint32_t decode_bypass(int bits);

    // Bytes read so far (includes the 8-byte priming read).
    size_t consumed() const { return pos_; }

private:
    void renorm();
    uint32_t decode_span(uint32_t total_bits);
    void commit_span(uint32_t cum, uint32_t freq);
    uint8_t next_byte();

    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
    uint64_t low_ = 0;
    uint64_t code_ = 0;
    uint64_t range_ = ~uint64_t(0);
};

}  // namespace c3p
