#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bmx {

class BinaryWriter;
class BinaryReader;

/*
    Rank-sample density presets.

    Samples are 64-bit cumulative counts, so a sample every 1280 bits costs
    64/1280 = 5% on top of the bit data, and a sample every 512 bits costs
    64/512 = 12.5%.
*/
enum class SamplePreset : std::uint8_t { Default = 0, Dense = 1 };

constexpr std::size_t sample_rate_for(SamplePreset preset) {
    return preset == SamplePreset::Dense ? 512 : 1280;
}

// Append-only helper for building a BitVector bit by bit or in zero-filled runs.
class BitVectorBuilder {
public:
    void push_back(bool bit);
    void append_zeros(std::size_t count);
    void set(std::size_t i);
    std::size_t size() const { return size_; }

    std::vector<std::uint64_t> take_words() && { return std::move(words_); }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

/*
    Plain bit sequence with one level of sampled rank counts.

    rank_samples_[j] holds the number of ones in [0, j * sample_rate). rank is
    answered from the sample plus a popcount over at most sample_rate bits;
    select binary-searches the samples and then scans forward.

    Rank is inclusive and 0-based: rank1(i) counts ones in [0, i].
*/
class BitVector {
public:
    BitVector() = default;
    BitVector(std::vector<std::uint64_t> words, std::size_t size, std::size_t sample_rate);
    BitVector(BitVectorBuilder&& builder, std::size_t sample_rate);
    explicit BitVector(const std::vector<bool>& bits,
                       std::size_t sample_rate = sample_rate_for(SamplePreset::Default));

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::size_t sample_rate() const { return rate_; }
    std::size_t count_ones() const { return ones_; }
    std::size_t count_zeros() const { return size_ - ones_; }

    bool access(std::size_t i) const;
    bool operator[](std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1U;
    }

    std::size_t rank1(std::size_t i) const;
    std::size_t rank0(std::size_t i) const;
    // Ones in [0, i); accepts i == size().
    std::size_t rank1_before(std::size_t i) const;

    std::size_t select1(std::size_t j) const;
    std::size_t select0(std::size_t j) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::size_t bit_bytes() const { return words_.size() * sizeof(std::uint64_t); }
    std::size_t sample_bytes() const { return samples_.size() * sizeof(std::uint64_t); }
    std::size_t size_in_bytes() const { return bit_bytes() + sample_bytes(); }

    void save(BinaryWriter& out) const;
    static BitVector load(BinaryReader& in, std::size_t sample_rate);

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    void build_samples();
    std::size_t ones_in(std::size_t begin, std::size_t end) const;

    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> samples_;
    std::size_t size_ = 0;
    std::size_t rate_ = sample_rate_for(SamplePreset::Default);
    std::size_t ones_ = 0;
};

} // namespace bmx
