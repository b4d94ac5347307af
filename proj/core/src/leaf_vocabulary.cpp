#include "bmx/leaf_vocabulary.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "bmx/binary_io.hpp"

namespace bmx {

std::string_view to_string(VocabEncoding e) {
    switch (e) {
        case VocabEncoding::Plain: return "plain";
        case VocabEncoding::ColsFull: return "cols-full";
        case VocabEncoding::ColsRank: return "cols-rank";
    }
    return "unknown";
}

namespace {

unsigned log2_of(unsigned leaf) { return static_cast<unsigned>(std::countr_zero(leaf)); }

void check_leaf_size(unsigned leaf) {
    if (leaf < 2 || leaf > LeafVocabulary::max_leaf_size || !std::has_single_bit(leaf))
        throw std::invalid_argument("leaf size must be a power of two in [2, 8]");
}

} // namespace

LeafVocabulary::LeafVocabulary(std::span<const std::uint64_t> matrices, unsigned leaf_size,
                               VocabEncoding encoding, SamplePreset preset)
    : m_(matrices.size()), leaf_(leaf_size), row_width_(std::max(1u, log2_of(leaf_size))), encoding_(encoding) {
    check_leaf_size(leaf_size);
    const std::size_t rate = sample_rate_for(preset);
    const unsigned cells = leaf_ * leaf_;

    if (encoding == VocabEncoding::Plain) {
        BitVectorBuilder b;
        for (auto mask : matrices) {
            for (unsigned i = 0; i < cells; ++i) b.push_back((mask >> i) & 1U);
        }
        bits_ = BitVector(std::move(b), rate);
        return;
    }

    BitVectorBuilder c;
    rows_ = IntVector(0, row_width_);
    for (auto mask : matrices) {
        for (unsigned col = 0; col < leaf_; ++col) {
            int row = -1;
            for (unsigned r = 0; r < leaf_; ++r) {
                if ((mask >> (r * leaf_ + col)) & 1U) {
                    if (row >= 0)
                        throw std::invalid_argument(
                            "column vocabulary encodings require at most one 1 per leaf column");
                    row = static_cast<int>(r);
                }
            }
            c.push_back(row >= 0);
            if (row >= 0 || encoding == VocabEncoding::ColsFull)
                rows_.push_back(row >= 0 ? static_cast<std::uint64_t>(row) : 0);
        }
    }
    bits_ = BitVector(std::move(c), rate);
}

bool LeafVocabulary::bit(std::size_t e, unsigned r, unsigned c) const {
    if (e >= m_ || r >= leaf_ || c >= leaf_) throw std::out_of_range("LeafVocabulary::bit");
    return unchecked_bit(e, r, c);
}

bool LeafVocabulary::unchecked_bit(std::size_t e, unsigned r, unsigned c) const {
    switch (encoding_) {
        case VocabEncoding::Plain:
            return bits_[e * leaf_ * leaf_ + r * leaf_ + c];
        case VocabEncoding::ColsFull: {
            std::size_t col = e * leaf_ + c;
            return bits_[col] && rows_[col] == r;
        }
        case VocabEncoding::ColsRank: {
            std::size_t col = e * leaf_ + c;
            return bits_[col] && rows_[bits_.rank1(col) - 1] == r;
        }
    }
    return false;
}

std::uint64_t LeafVocabulary::matrix(std::size_t e) const {
    if (e >= m_) throw std::out_of_range("LeafVocabulary::matrix");
    return unchecked_matrix(e);
}

std::uint64_t LeafVocabulary::unchecked_matrix(std::size_t e) const {
    const unsigned cells = leaf_ * leaf_;
    if (encoding_ == VocabEncoding::Plain) {
        // cells divides 64, so a leaf never straddles two words
        const std::size_t bit = e * cells;
        const std::uint64_t word = bits_.words()[bit >> 6] >> (bit & 63);
        return cells == 64 ? word : word & ((std::uint64_t{1} << cells) - 1);
    }
    const std::size_t base = e * leaf_;
    std::size_t next = encoding_ == VocabEncoding::ColsRank ? bits_.rank1_before(base) : 0;
    std::uint64_t mask = 0;
    for (unsigned c = 0; c < leaf_; ++c) {
        if (!bits_[base + c]) continue;
        const std::uint64_t r = encoding_ == VocabEncoding::ColsFull ? rows_[base + c] : rows_[next++];
        mask |= std::uint64_t{1} << (r * leaf_ + c);
    }
    return mask;
}

std::uint64_t LeafVocabulary::payload_bits() const {
    if (encoding_ == VocabEncoding::Plain) return bits_.size();
    return bits_.size() + rows_.bit_size();
}

std::size_t LeafVocabulary::size_in_bytes() const { return bits_.size_in_bytes() + rows_.size_in_bytes(); }

void LeafVocabulary::save(BinaryWriter& out) const {
    out.u8(static_cast<std::uint8_t>(encoding_));
    out.u8(static_cast<std::uint8_t>(leaf_));
    out.u64(m_);
    bits_.save(out);
    if (encoding_ != VocabEncoding::Plain) rows_.save(out);
}

LeafVocabulary LeafVocabulary::load(BinaryReader& in, SamplePreset preset) {
    LeafVocabulary v;
    auto tag = in.u8();
    if (tag > 2) throw std::runtime_error("corrupt vocabulary: unknown encoding tag");
    v.encoding_ = static_cast<VocabEncoding>(tag);
    v.leaf_ = in.u8();
    v.m_ = in.u64();
    if (v.m_ > 0 || v.leaf_ != 0) check_leaf_size(v.leaf_);
    v.row_width_ = std::max(1u, log2_of(std::max(v.leaf_, 2u)));
    v.bits_ = BitVector::load(in, sample_rate_for(preset));
    if (v.encoding_ != VocabEncoding::Plain) v.rows_ = IntVector::load(in);
    return v;
}

} // namespace bmx
