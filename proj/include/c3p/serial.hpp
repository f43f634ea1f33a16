#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "c3p/error.hpp"

namespace c3p {

// Little-endian byte-level serialization. All on-disk formats go through
// these two helpers so byte order is handled in exactly one place.

class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u16(uint16_t v) {
        buf_.push_back(uint8_t(v));
        buf_.push_back(uint8_t(v >> 8));
    }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
    }
    void i16(int16_t v) { u16(uint16_t(v)); }
    void f32(float v) {
        uint32_t bits;
        std::memcpy(&bits, &v, 4);
        u32(bits);
    }
    void bytes(const uint8_t* p, size_t n) { buf_.insert(buf_.end(), p, p + n); }
    void bytes(const std::vector<uint8_t>& v) { bytes(v.data(), v.size()); }

    size_t size() const { return buf_.size(); }
    const std::vector<uint8_t>& data() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }

    // Patches a previously written u32 in place (for length back-fills).
    void patch_u32(size_t offset, uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.at(offset + i) = uint8_t(v >> (8 * i));
    }

private:
    std::vector<uint8_t> buf_;
};

class ByteReader {
public:
    ByteReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}
    explicit ByteReader(const std::vector<uint8_t>& v) : data_(v.data()), size_(v.size()) {}

    uint8_t u8() { return data_[need(1)]; }
    uint16_t u16() {
        size_t o = need(2);
        return uint16_t(data_[o]) | uint16_t(data_[o + 1]) << 8;
    }
    uint32_t u32() {
        size_t o = need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(data_[o + i]) << (8 * i);
        return v;
    }
    uint64_t u64() {
        size_t o = need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(data_[o + i]) << (8 * i);
        return v;
    }
    int16_t i16() { return int16_t(u16()); }
    float f32() {
        uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::vector<uint8_t> bytes(size_t n) {
        size_t o = need(n);
        return std::vector<uint8_t>(data_ + o, data_ + o + n);
    }
    void skip(size_t n) { need(n); }

    size_t pos() const { return pos_; }
    size_t remaining() const { return size_ - pos_; }
    bool exhausted() const { return pos_ >= size_; }

private:
    size_t need(size_t n) {
        if (size_ - pos_ < n) throw CorruptionError("unexpected end of data");
        size_t o = pos_;
        pos_ += n;
        return o;
    }
    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
};

inline std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open file: " + path);
    f.seekg(0, std::ios::end);
    std::streamoff n = f.tellg();
    f.seekg(0, std::ios::beg);
    std::vector<uint8_t> buf(size_t(n));
    if (n > 0) f.read(reinterpret_cast<char*>(buf.data()), n);
    if (!f) throw IoError("read failed: " + path);
    return buf;
}

inline void write_file(const std::string& path, const std::vector<uint8_t>& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot create file: " + path);
    if (!data.empty()) f.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
    if (!f) throw IoError("write failed: " + path);
}

// CRC-32 (reflected, polynomial 0xEDB88320), as used by the container
// section table.
inline uint32_t crc32(const uint8_t* data, size_t n, uint32_t seed = 0) {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    uint32_t c = ~seed;
    for (size_t i = 0; i < n; ++i) c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
    return ~c;
}

inline uint32_t crc32(const std::vector<uint8_t>& v) { return crc32(v.data(), v.size()); }

}  // namespace c3p
