#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bmx/bit_vector.hpp"
#include "bmx/int_vector.hpp"

namespace bmx {

/*
    Directly addressable codes with a fixed chunk width b.

    Each value is cut into base-2^b chunks, least significant first. Level i
    holds the i-th chunk of every value that has one, in the order those values
    appear, and a bitmap marking which of them continue to level i + 1. A value
    is decoded by following j <- rank1(more_i, j) - 1 while the continuation bit
    is set. The value 0 takes exactly one chunk.
*/
class Dac {
public:
    struct Level {
        IntVector chunks;
        BitVector more;
    };

    Dac() = default;
    explicit Dac(std::span<const std::uint64_t> values, unsigned chunk_width = 8,
                 SamplePreset preset = SamplePreset::Default);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    unsigned chunk_width() const { return width_; }

    std::uint64_t access(std::size_t i) const;
    std::uint64_t operator[](std::size_t i) const;

    std::size_t level_count() const { return levels_.size(); }
    const Level& level(std::size_t i) const { return levels_.at(i); }
    std::size_t total_chunks() const;

    std::size_t size_in_bytes() const;

    void save(BinaryWriter& out) const;
    static Dac load(BinaryReader& in, SamplePreset preset);

private:
    std::vector<Level> levels_;
    std::size_t size_ = 0;
    unsigned width_ = 8;
};

} // namespace bmx
