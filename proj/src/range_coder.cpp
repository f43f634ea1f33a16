#include "c3p/range_coder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace c3p {

namespace {
constexpr uint64_t kTop = uint64_t(1) << 56;
constexpr uint64_t kBot = uint64_t(1) << 32;
}  // namespace

void CdfTable::validate() const {
    if (cdf.size() < 2) throw ValidationError("CDF needs at least one symbol");
    if (cdf.front() != 0 || cdf.back() != kCdfTotal)
        throw ValidationError("CDF must span [0, 65536]");
    for (size_t i = 1; i < cdf.size(); ++i)
        if (cdf[i] <= cdf[i - 1]) throw ValidationError("CDF must be strictly increasing");
}

CdfTable build_cdf_table(const std::vector<double>& pmf, double escape_mass) {
    std::vector<double> p = pmf;
    if (escape_mass >= 0.0) p.push_back(escape_mass);
    const size_t n = p.size();
    if (n == 0) throw ValidationError("empty alphabet");
    if (n > size_t(kCdfTotal) - 1) throw RangeError("alphabet larger than 2^16 - 1 symbols");

    double sum = 0.0;
    for (double& x : p) {
        if (!std::isfinite(x)) throw NumericError("non-finite probability");
        x = std::max(x, 0.0);
        sum += x;
    }

    std::vector<uint32_t> freq(n, 0);
    std::vector<double> rem(n, 0.0);
    uint64_t assigned = 0;
    if (sum <= 0.0) {
        // Degenerate input: fall back to a uniform split.
        for (size_t i = 0; i < n; ++i) rem[i] = 1.0;
    } else {
        for (size_t i = 0; i < n; ++i) {
            double target = p[i] / sum * double(kCdfTotal);
            double fl = std::floor(target);
            freq[i] = uint32_t(fl);
            rem[i] = target - fl;
            assigned += freq[i];
        }
    }

    // Largest-remainder apportionment of the leftover units, ties to the
    // lower index.
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return rem[a] > rem[b]; });
    uint64_t deficit = kCdfTotal - assigned;
    size_t cursor = 0;
    while (deficit > 0) {
        freq[order[cursor]] += 1;
        --deficit;
        cursor = (cursor + 1) % n;
    }

    // Every symbol keeps frequency >= 1; the units come from the currently
    // largest bins (lowest index wins ties).
    for (size_t i = 0; i < n; ++i) {
        while (freq[i] == 0) {
            size_t donor = 0;
            for (size_t j = 1; j < n; ++j)
                if (freq[j] > freq[donor]) donor = j;
            if (freq[donor] < 2) throw RangeError("cannot honor minimum frequencies");
            freq[donor] -= 1;
            freq[i] += 1;
        }
    }

    CdfTable table;
    table.cdf.resize(n + 1);
    table.cdf[0] = 0;
    for (size_t i = 0; i < n; ++i) table.cdf[i + 1] = table.cdf[i] + freq[i];
    table.validate();
    return table;
}

void RangeEncoder::renorm() {
    for (;;) {
        if ((low_ ^ (low_ + range_)) < kTop) {
            // Top byte settled; emit it.
        } else if (range_ < kBot) {
            // Straddling a byte boundary with a small range: clamp the range
            // to the next 2^32 boundary, which pins the upper bytes.
            range_ = (0 - low_) & (kBot - 1);
        } else {
            break;
        }
        out_.push_back(uint8_t(low_ >> 56));
        low_ <<= 8;
        range_ <<= 8;
    }
}

void RangeEncoder::encode_span(uint32_t cum, uint32_t freq, uint32_t total_bits) {
    range_ >>= total_bits;
    low_ += uint64_t(cum) * range_;
    range_ *= freq;
    renorm();
}

void RangeEncoder::encode(const CdfTable& table, uint32_t symbol) {
    if (finished_) throw Error("encoder already finished");
    if (symbol >= table.alphabet()) throw RangeError("symbol outside alphabet");
    encode_span(table.cdf[symbol], table.freq(symbol), 16);
}

void RangeEncoder::encode_bypass(uint32_t value, int bits) {
    if (finished_) throw Error("encoder already finished");
    if (bits < 0 || bits > 32) throw RangeError("bypass width must be in [0,32]");
    if (bits == 0) return;
    if (bits > 16) {
        encode_span((value >> 16) & 0xFFFFu, 1, uint32_t(bits - 16));
        encode_span(value & 0xFFFFu, 1, 16);
    } else {
        encode_span(value & ((bits == 32) ? ~0u : ((1u << bits) - 1)), 1, uint32_t(bits));
    }
}

std::vector<uint8_t> RangeEncoder::finish() {
    if (finished_) throw Error("encoder already finished");
    finished_ = true;
    for (int i = 0; i < 8; ++i) {
        out_.push_back(uint8_t(low_ >> 56));
        low_ <<= 8;
    }
    return std::move(out_);
}

RangeDecoder::RangeDecoder(const uint8_t* data, size_t size) : data_(data), size_(size) {
    for (int i = 0; i < 8; ++i) code_ = (code_ << 8) | next_byte();
}

uint8_t RangeDecoder::next_byte() {
    if (pos_ >= size_) throw CorruptionError("entropy stream exhausted");
    return data_[pos_++];
}

void RangeDecoder::renorm() {
    for (;;) {
        if ((low_ ^ (low_ + range_)) < kTop) {
        } else if (range_ < kBot) {
            range_ = (0 - low_) & (kBot - 1);
        } else {
            break;
        }
        code_ = (code_ << 8) | next_byte();
        low_ <<= 8;
        range_ <<= 8;
    }
}

uint32_t RangeDecoder::decode_span(uint32_t total_bits) {
    range_ >>= total_bits;
    uint64_t v = (code_ - low_) / range_;
    uint64_t cap = (uint64_t(1) << total_bits) - 1;
    return uint32_t(std::min(v, cap));
}

void RangeDecoder::commit_span(uint32_t cum, uint32_t freq) {
    low_ += uint64_t(cum) * range_;
    range_ *= freq;
    renorm();
}

uint32_t RangeDecoder::decode(const CdfTable& table) {
    uint32_t v = decode_span(16);
    // Find s with cdf[s] <= v < cdf[s+1].
    auto it = std::upper_bound(table.cdf.begin(), table.cdf.end(), v);
    uint32_t s = uint32_t(it - table.cdf.begin()) - 1;
    commit_span(table.cdf[s], table.freq(s));
    return s;
}

uint32_t RangeDecoder::decode_bypass(int bits) {
    if (bits < 0 || bits > 32) throw RangeError("bypass width must be in [0,32]");
    if (bits == 0) return 0;
    if (bits > 16) {
        uint32_t hi = decode_span(uint32_t(bits - 16));
        commit_span(hi, 1);
        uint32_t lo = decode_span(16);
        commit_span(lo, 1);
        return (hi << 16) | lo;
    }
    uint32_t v = decode_span(uint32_t(bits));
    commit_span(v, 1);
    return v;
}

}  // namespace c3p
