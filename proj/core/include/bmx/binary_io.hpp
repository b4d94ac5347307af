#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmx {

// Little-endian fixed-width writer. Every on-disk integer goes through here so
// the files are byte-identical across hosts.
class BinaryWriter {
public:
    explicit BinaryWriter(std::ostream& out) : out_(out) {}

    void u8(std::uint8_t v) { put(v, 1); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }

    void words(std::span<const std::uint64_t> ws) {
        for (auto w : ws) u64(w);
    }

    void bytes(std::string_view s) {
        out_.write(s.data(), static_cast<std::streamsize>(s.size()));
        written_ += s.size();
        check();
    }

    std::uint64_t written() const { return written_; }

private:
    void put(std::uint64_t v, unsigned width) {
        char buf[8];
        for (unsigned i = 0; i < width; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        out_.write(buf, width);
        written_ += width;
        check();
    }

    void check() {
        if (!out_) throw std::runtime_error("write failed");
    }

    std::ostream& out_;
    std::uint64_t written_ = 0;
};

class BinaryReader {
public:
    explicit BinaryReader(std::istream& in) : in_(in) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }

    std::vector<std::uint64_t> words(std::uint64_t count) {
        std::vector<std::uint64_t> ws;
        ws.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) ws.push_back(u64());
        return ws;
    }

    std::string bytes(std::uint64_t count) {
        std::string s(count, '\0');
        in_.read(s.data(), static_cast<std::streamsize>(count));
        if (static_cast<std::uint64_t>(in_.gcount()) != count) truncated();
        return s;
    }

private:
    std::uint64_t get(unsigned width) {
        unsigned char buf[8];
        in_.read(reinterpret_cast<char*>(buf), width);
        if (static_cast<unsigned>(in_.gcount()) != width) truncated();
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
        return v;
    }

    [[noreturn]] static void truncated() { throw std::runtime_error("unexpected end of input"); }

    std::istream& in_;
};

} // namespace bmx
