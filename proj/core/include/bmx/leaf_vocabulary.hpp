#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "bmx/bit_vector.hpp"
#include "bmx/int_vector.hpp"

namespace bmx {

enum class VocabEncoding : std::uint8_t {
    Plain = 0,     // m matrices of k_L^2 bits each
    ColsFull = 1,  // column bitmap C (m*k_L bits) + one row index per column
    ColsRank = 2,  // column bitmap C + one row index per set bit of C
};

std::string_view to_string(VocabEncoding e);

/*
    Dictionary of distinct k_L x k_L leaf submatrices.

    Matrices are passed as row-major masks: bit (r * k_L + c) is cell (r, c).
    k_L is a power of two no larger than 8, so one mask fits in a word.

    The column encodings store, for every vocabulary column, whether it holds a
    one (C) and in which row (R, log2(k_L) bits per entry). They can only
    represent leaves with at most one 1 per column; building them from any other
    leaf throws std::invalid_argument.
*/
class LeafVocabulary {
public:
    static constexpr unsigned max_leaf_size = 8;

    LeafVocabulary() = default;
    LeafVocabulary(std::span<const std::uint64_t> matrices, unsigned leaf_size, VocabEncoding encoding,
                   SamplePreset preset = SamplePreset::Default);

    std::size_t size() const { return m_; }
    unsigned leaf_size() const { return leaf_; }
    VocabEncoding encoding() const { return encoding_; }

    bool bit(std::size_t e, unsigned r, unsigned c) const;
    bool unchecked_bit(std::size_t e, unsigned r, unsigned c) const;

    // Row-major mask of leaf e, reconstructed from whichever encoding is in use.
    std::uint64_t matrix(std::size_t e) const;
    std::uint64_t unchecked_matrix(std::size_t e) const;

    // Exact payload in bits: bitmaps plus packed row indices, no rank samples.
    std::uint64_t payload_bits() const;
    std::size_t size_in_bytes() const;

    const BitVector& columns() const { return bits_; }
    const IntVector& rows() const { return rows_; }

    void save(BinaryWriter& out) const;
    static LeafVocabulary load(BinaryReader& in, SamplePreset preset);

private:
    BitVector bits_;  // PLAIN: all matrix bits; COLS_*: column bitmap C
    IntVector rows_;  // COLS_*: row indices R
    std::size_t m_ = 0;
    unsigned leaf_ = 0;
    unsigned row_width_ = 1;
    VocabEncoding encoding_ = VocabEncoding::Plain;
};

} // namespace bmx
