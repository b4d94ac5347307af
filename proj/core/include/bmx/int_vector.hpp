#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bmx {

class BinaryWriter;
class BinaryReader;

// Fixed-width packed unsigned integers, width in [1, 64].
class IntVector {
public:
    IntVector() = default;
    IntVector(std::size_t size, unsigned width);

    std::size_t size() const { return size_; }
    unsigned width() const { return width_; }
    std::uint64_t bit_size() const { return static_cast<std::uint64_t>(size_) * width_; }
    std::size_t size_in_bytes() const { return words_.size() * sizeof(std::uint64_t); }

    std::uint64_t operator[](std::size_t i) const {
        std::uint64_t bit = static_cast<std::uint64_t>(i) * width_;
        std::size_t w = bit >> 6;
        unsigned off = bit & 63;
        std::uint64_t v = words_[w] >> off;
        if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
        return v & mask_;
    }
    std::uint64_t at(std::size_t i) const;
    void set(std::size_t i, std::uint64_t value);
    void push_back(std::uint64_t value);

    void save(BinaryWriter& out) const;
    static IntVector load(BinaryReader& in);

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
    unsigned width_ = 1;
    std::uint64_t mask_ = 1;
};

// Number of bits needed to write v; bit_width(0) == 0.
constexpr unsigned bit_width_of(std::uint64_t v) {
    unsigned n = 0;
    while (v) {
        ++n;
        v >>= 1;
    }
    return n;
}

} // namespace bmx
