#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rotorwalk::binary {

/// Little-endian writers and readers, independent of host byte order.
class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void bytes(std::string_view s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }
    void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
    void u16(std::uint16_t v) { unsigned_le(v, 2); }
    void u32(std::uint32_t v) { unsigned_le(v, 4); }
    void u64(std::uint64_t v) { unsigned_le(v, 8); }
    void i64(std::int64_t v) { unsigned_le(static_cast<std::uint64_t>(v), 8); }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }
    /// u16 length prefix followed by the bytes.
    void str16(std::string_view s) {
        if (s.size() > 0xFFFF) {
            throw std::length_error("string too long for a u16 length prefix");
        }
        u16(static_cast<std::uint16_t>(s.size()));
        bytes(s);
    }

private:
    void unsigned_le(std::uint64_t v, int width) {
        char buf[8];
        for (int i = 0; i < width; ++i) {
            buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        }
        out_.write(buf, width);
    }

    std::ostream& out_;
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::string bytes(std::size_t n) {
        std::string s(n, '\0');
        in_.read(s.data(), static_cast<std::streamsize>(n));
        check(n);
        return s;
    }
    std::uint8_t u8() { return static_cast<std::uint8_t>(unsigned_le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(unsigned_le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(unsigned_le(4)); }
    std::uint64_t u64() { return unsigned_le(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(unsigned_le(8)); }
    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::string str16() { return bytes(u16()); }

    /// Throws unless the stream is exhausted.
    void expect_end() {
        if (in_.peek() != std::char_traits<char>::eof()) {
            throw std::runtime_error("trailing bytes after record data");
        }
    }

private:
    std::uint64_t unsigned_le(int width) {
        unsigned char buf[8];
        in_.read(reinterpret_cast<char*>(buf), width);
        check(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
        }
        return v;
    }
    void check(std::size_t n) {
        if (static_cast<std::size_t>(in_.gcount()) != n) {
            throw std::runtime_error("truncated binary input");
        }
    }

    std::istream& in_;
};

}  // namespace rotorwalk::binary
