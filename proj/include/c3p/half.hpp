#pragma once

#include <cstdint>
#include <cstring>

#include "c3p/error.hpp"

namespace c3p {

// IEEE-754 binary16 conversion with round-to-nearest-even, including
// subnormal outputs. Finite values with |x| > 65504 do not fit and raise
// RangeError; the caller is expected to have validated finiteness.

inline uint16_t float_to_half(float value) {
    uint32_t f;
    std::memcpy(&f, &value, 4);
    uint32_t sign = (f >> 16) & 0x8000u;
    uint32_t exp = (f >> 23) & 0xFFu;
    uint32_t mant = f & 0x7FFFFFu;

    if (exp == 0xFF) throw RangeError("non-finite value cannot be stored as fp16");

    // Unbiased exponent, then rebias for half (15).
    int32_t e = int32_t(exp) - 127 + 15;

    if (e >= 0x1F) throw RangeError("value exceeds fp16 range");

    if (e <= 0) {
        // Subnormal half or zero: shift mantissa (with implicit leading 1 if
        // the input was normal) right and round to nearest even.
        if (e < -10) {
            // Underflows past the smallest subnormal; rounds to +/-0 except
            // exactly-half cases which still round to even (zero).
            return uint16_t(sign);
        }
        uint32_t m = mant | (exp != 0 ? 0x800000u : 0u);
        int shift = 14 - e;  // 14..24
        uint32_t kept = m >> shift;
        uint32_t rem = m & ((1u << shift) - 1);
        uint32_t half = 1u << (shift - 1);
        if (rem > half || (rem == half && (kept & 1u))) ++kept;
        return uint16_t(sign | kept);
    }

    // Normal path: keep 10 mantissa bits, round to nearest even.
    uint32_t kept = mant >> 13;
    uint32_t rem = mant & 0x1FFFu;
    uint32_t halfway = 0x1000u;
    uint32_t bits = (uint32_t(e) << 10) | kept;
    if (rem > halfway || (rem == halfway && (bits & 1u))) ++bits;
    if (bits >= 0x7C00u) throw RangeError("value exceeds fp16 range");
    return uint16_t(sign | bits);
}

inline float half_to_float(uint16_t h) {
    uint32_t sign = uint32_t(h & 0x8000u) << 16;
    uint32_t exp = (h >> 10) & 0x1Fu;
    uint32_t mant = h & 0x3FFu;
    uint32_t f;
    if (exp == 0) {
        if (mant == 0) {
            f = sign;
        } else {
            // Normalize the subnormal.
            int e = -1;
            uint32_t m = mant;
            do {
                ++e;
                m <<= 1;
            } while ((m & 0x400u) == 0);
            f = sign | uint32_t(127 - 15 - e) << 23 | (m & 0x3FFu) << 13;
        }
    } else if (exp == 0x1F) {
        f = sign | 0x7F800000u | mant << 13;
    } else {
        f = sign | (exp - 15 + 127) << 23 | mant << 13;
    }
    float v;
    std::memcpy(&v, &f, 4);
    return v;
}

// Round a double through fp16 and back; the codec stores positions this way.
inline double half_round(double x) { return double(half_to_float(float_to_half(float(x)))); }

}  // namespace c3p
