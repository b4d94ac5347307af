#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bmx/bit_vector.hpp"
#include "bmx/dac.hpp"
#include "bmx/leaf_vocabulary.hpp"

namespace bmx {

struct Cell {
    std::uint64_t row = 0;
    std::uint64_t col = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

// A run of subdivision levels sharing the same arity; nullopt levels means
// "as many as needed" and is only allowed on the last stage.
struct K2Stage {
    unsigned k = 2;
    std::optional<unsigned> levels;

    friend bool operator==(const K2Stage&, const K2Stage&) = default;
};

struct K2Config {
    std::vector<K2Stage> stages{{4, 5}, {2, std::nullopt}};
    unsigned leaf_size = 8;  // 1 disables the leaf vocabulary
    VocabEncoding vocab_encoding = VocabEncoding::ColsFull;
    SamplePreset sampling = SamplePreset::Default;
    unsigned dac_chunk_width = 8;

    bool has_vocabulary() const { return leaf_size > 1; }
    void validate() const;

    static K2Config uniform(unsigned k, unsigned leaf_size = 1,
                            VocabEncoding encoding = VocabEncoding::ColsFull);

    void save(BinaryWriter& out) const;
    static K2Config load(BinaryReader& in);

    friend bool operator==(const K2Config&, const K2Config&) = default;
};

// Arity of each internal subdivision level for a matrix whose larger side is
// `dimension`. The padded side is the product of the arities times the leaf
// size: the smallest such value reachable with the configured stages, using
// fewer levels of a bounded stage when the matrix is small. Ties go to fewer
// levels, then to spending more levels in earlier stages.
std::vector<unsigned> plan_levels(std::uint64_t dimension, const K2Config& config);

/*
    k²-tree over an n_rows x n_cols binary matrix, padded to a square of side
    `side()`.

    Level l of the conceptual tree holds, for every 1-bit of level l - 1, the
    k_l^2 bits of its children read in row-major order. Without a vocabulary all
    levels but the last are concatenated into T and the last one (single cells)
    is L. With a vocabulary every level is in T, the last level marks non-empty
    k_L x k_L leaves, and each such leaf is replaced by a frequency-ranked id
    into a LeafVocabulary; the id sequence is stored as a Dac.

    Positions are global offsets into the concatenation T:L.
*/
class K2Tree {
public:
    K2Tree() = default;
    K2Tree(std::span<const Cell> points, std::uint64_t n_rows, std::uint64_t n_cols, K2Config config = {});

    std::uint64_t rows() const { return n_rows_; }
    std::uint64_t cols() const { return n_cols_; }
    std::uint64_t side() const { return side_; }
    const K2Config& config() const { return config_; }
    std::size_t count_ones() const { return ones_; }

    bool cell(std::uint64_t r, std::uint64_t c) const;

    // Columns c in [lo, hi] with cell (r, c) set, ascending.
    std::vector<std::uint64_t> row(std::uint64_t r, std::uint64_t lo, std::uint64_t hi,
                                   std::optional<std::size_t> limit = std::nullopt) const;
    std::vector<std::uint64_t> row(std::uint64_t r, std::optional<std::size_t> limit = std::nullopt) const;

    // Rows of the set cells of column c, ascending.
    std::vector<std::uint64_t> col(std::uint64_t c, std::optional<std::size_t> limit = std::nullopt) const;
    std::optional<std::uint64_t> first_in_col(std::uint64_t c) const;

    // Set cells in the rectangle, in depth-first submatrix order.
    std::vector<Cell> range(std::uint64_t r1, std::uint64_t r2, std::uint64_t c1, std::uint64_t c2) const;

    // Calls fn(row, col) for every set cell in the rectangle in depth-first
    // submatrix order; stops as soon as fn returns false.
    template <class Fn>
    void for_each_in_range(std::uint64_t r1, std::uint64_t r2, std::uint64_t c1, std::uint64_t c2,
                           Fn&& fn) const {
        check_range(r1, r2, c1, c2);
        visit(0, 0, 0, 0, r1, r2, c1, c2, fn);
    }

    std::uint64_t children_base(std::uint64_t p) const;

    // Layout introspection.
    std::size_t level_count() const { return arity_.size(); }
    unsigned arity(std::size_t level) const { return arity_.at(level); }
    std::uint64_t level_begin(std::size_t level) const { return begin_.at(level); }
    std::uint64_t level_end(std::size_t level) const { return begin_.at(level + 1); }
    std::uint64_t submatrix_side(std::size_t level) const { return sub_side_.at(level); }
    std::size_t level_of(std::uint64_t p) const;
    bool bit(std::uint64_t p) const { return p < t_.size() ? t_[p] : l_[p - t_.size()]; }
    std::uint64_t leaf_id_at(std::uint64_t p) const;

    bool has_vocabulary() const { return config_.has_vocabulary(); }
    const BitVector& t_bits() const { return t_; }
    const BitVector& l_bits() const { return l_; }
    const Dac& leaf_ids() const { return leaf_ids_; }
    const LeafVocabulary& vocabulary() const { return vocab_; }

    struct SpaceBreakdown {
        std::size_t t_bytes = 0;
        std::size_t l_bytes = 0;
        std::size_t leaf_id_bytes = 0;
        std::size_t vocabulary_bytes = 0;
        std::size_t total() const { return t_bytes + l_bytes + leaf_id_bytes + vocabulary_bytes; }
    };
    SpaceBreakdown space() const;
    std::size_t size_in_bytes() const { return space().total(); }

    void save(BinaryWriter& out) const;
    static K2Tree load(BinaryReader& in);

private:
    void finish_layout();
    void check_range(std::uint64_t r1, std::uint64_t r2, std::uint64_t c1, std::uint64_t c2) const;

    std::uint64_t children(std::uint64_t p, std::size_t level) const {
        std::uint64_t k = arity_[level + 1];
        return static_cast<std::uint64_t>(child_offset_[level] +
                                          static_cast<std::int64_t>(t_.rank1(p) * k * k));
    }

    template <class Fn>
    bool visit(std::size_t level, std::uint64_t base, std::uint64_t row0, std::uint64_t col0, std::uint64_t r1,
               std::uint64_t r2, std::uint64_t c1, std::uint64_t c2, Fn& fn) const {
        const std::uint64_t k = arity_[level];
        const std::uint64_t s = sub_side_[level];
        const bool last = level + 1 == arity_.size();
        const std::uint64_t i_lo = r1 > row0 ? (r1 - row0) / s : 0;
        const std::uint64_t i_hi = std::min(k - 1, (r2 - row0) / s);
        const std::uint64_t j_lo = c1 > col0 ? (c1 - col0) / s : 0;
        const std::uint64_t j_hi = std::min(k - 1, (c2 - col0) / s);
        for (std::uint64_t i = i_lo; i <= i_hi; ++i) {
            for (std::uint64_t j = j_lo; j <= j_hi; ++j) {
                const std::uint64_t pos = base + i * k + j;
                if (!bit(pos)) continue;
                const std::uint64_t rr = row0 + i * s;
                const std::uint64_t cc = col0 + j * s;
                if (!last) {
                    if (!visit(level + 1, children(pos, level), rr, cc, r1, r2, c1, c2, fn)) return false;
                } else if (!has_vocabulary()) {
                    if (!fn(rr, cc)) return false;
                } else {
                    const std::size_t e = leaf_ids_[t_.rank1(pos) - leaf_offset_];
                    const std::uint64_t ra = std::max(r1, rr), rb = std::min(r2, rr + s - 1);
                    const std::uint64_t ca = std::max(c1, cc), cb = std::min(c2, cc + s - 1);
                    const std::uint64_t leaf = vocab_.unchecked_matrix(e);
                    const std::uint64_t cols = ((std::uint64_t{2} << (cb - cc)) - 1) & ~((std::uint64_t{1} << (ca - cc)) - 1);
                    for (std::uint64_t r = ra; r <= rb; ++r) {
                        std::uint64_t line = (leaf >> ((r - rr) * s)) & cols;
                        while (line) {
                            const unsigned c = static_cast<unsigned>(std::countr_zero(line));
                            line &= line - 1;
                            if (!fn(r, cc + c)) return false;
                        }
                    }
                }
            }
        }
        return true;
    }

    K2Config config_;
    std::uint64_t n_rows_ = 0;
    std::uint64_t n_cols_ = 0;
    std::uint64_t side_ = 0;
    std::size_t ones_ = 0;

    std::vector<unsigned> arity_;
    std::vector<std::uint64_t> sub_side_;
    std::vector<std::uint64_t> begin_;
    std::vector<std::int64_t> child_offset_;
    std::uint64_t leaf_offset_ = 0;

    BitVector t_;
    BitVector l_;
    Dac leaf_ids_;
    LeafVocabulary vocab_;
};

} // namespace bmx
