#include "bmx/bit_vector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "bmx/binary_io.hpp"

namespace bmx {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Position of the r-th (1-based) set bit of w.
unsigned select_in_word(std::uint64_t w, std::size_t r) {
    for (std::size_t k = 1; k < r; ++k) w &= w - 1;
    return static_cast<unsigned>(std::countr_zero(w));
}

} // namespace

void BitVectorBuilder::push_back(bool bit) {
    if ((size_ & 63) == 0) words_.push_back(0);
    if (bit) words_.back() |= std::uint64_t{1} << (size_ & 63);
    ++size_;
}

void BitVectorBuilder::append_zeros(std::size_t count) {
    size_ += count;
    words_.resize(words_for(size_), 0);
}

void BitVectorBuilder::set(std::size_t i) {
    if (i >= size_) throw std::out_of_range("BitVectorBuilder::set");
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

BitVector::BitVector(std::vector<std::uint64_t> words, std::size_t size, std::size_t sample_rate)
    : words_(std::move(words)), size_(size), rate_(sample_rate) {
    if (rate_ == 0) throw std::invalid_argument("sample rate must be positive");
    if (words_.size() != words_for(size_)) throw std::invalid_argument("word count does not match bit length");
    if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    build_samples();
}

BitVector::BitVector(BitVectorBuilder&& builder, std::size_t sample_rate)
    : BitVector(std::vector<std::uint64_t>{}, 0, sample_rate) {
    size_ = builder.size();
    words_ = std::move(builder).take_words();
    build_samples();
}

BitVector::BitVector(const std::vector<bool>& bits, std::size_t sample_rate)
    : BitVector(std::vector<std::uint64_t>(words_for(bits.size()), 0), bits.size(), sample_rate) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    build_samples();
}

void BitVector::build_samples() {
    samples_.assign(size_ / rate_ + 1, 0);
    std::size_t acc = 0;
    for (std::size_t j = 1; j < samples_.size(); ++j) {
        acc += ones_in((j - 1) * rate_, j * rate_);
        samples_[j] = acc;
    }
    ones_ = acc + ones_in((samples_.size() - 1) * rate_, size_);
}

std::size_t BitVector::ones_in(std::size_t begin, std::size_t end) const {
    if (begin >= end) return 0;
    std::size_t wb = begin >> 6;
    std::size_t we = (end - 1) >> 6;
    std::uint64_t first = words_[wb] & (~std::uint64_t{0} << (begin & 63));
    std::uint64_t last_mask = ((end & 63) == 0) ? ~std::uint64_t{0} : (std::uint64_t{1} << (end & 63)) - 1;
    if (wb == we) return static_cast<std::size_t>(std::popcount(first & last_mask));
    std::size_t count = static_cast<std::size_t>(std::popcount(first));
    for (std::size_t w = wb + 1; w < we; ++w) count += static_cast<std::size_t>(std::popcount(words_[w]));
    return count + static_cast<std::size_t>(std::popcount(words_[we] & last_mask));
}

bool BitVector::access(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("BitVector::access");
    return (*this)[i];
}

std::size_t BitVector::rank1_before(std::size_t i) const {
    if (i > size_) throw std::out_of_range("BitVector::rank1_before");
    std::size_t block = i / rate_;
    return samples_[block] + ones_in(block * rate_, i);
}

std::size_t BitVector::rank1(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("BitVector::rank1");
    return rank1_before(i + 1);
}

std::size_t BitVector::rank0(std::size_t i) const { return i + 1 - rank1(i); }

std::size_t BitVector::select1(std::size_t j) const {
    if (j == 0 || j > ones_) throw std::out_of_range("BitVector::select1: no such occurrence");
    // Last sample strictly below j.
    auto it = std::lower_bound(samples_.begin(), samples_.end(), j);
    std::size_t block = static_cast<std::size_t>(it - samples_.begin()) - 1;
    std::size_t remaining = j - samples_[block];
    std::size_t pos = block * rate_;
    std::size_t w = pos >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (pos & 63));
    for (;;) {
        auto c = static_cast<std::size_t>(std::popcount(word));
        if (c >= remaining) return (w << 6) + select_in_word(word, remaining);
        remaining -= c;
        word = words_[++w];
    }
}

std::size_t BitVector::select0(std::size_t j) const {
    if (j == 0 || j > size_ - ones_) throw std::out_of_range("BitVector::select0: no such occurrence");
    // Binary search on zeros-before-sample, which is also non-decreasing.
    std::size_t lo = 0, hi = samples_.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (mid * rate_ - samples_[mid] < j) lo = mid;
        else hi = mid;
    }
    std::size_t remaining = j - (lo * rate_ - samples_[lo]);
    std::size_t pos = lo * rate_;
    std::size_t w = pos >> 6;
    std::uint64_t word = ~words_[w] & (~std::uint64_t{0} << (pos & 63));
    for (;;) {
        auto c = static_cast<std::size_t>(std::popcount(word));
        if (c >= remaining) return (w << 6) + select_in_word(word, remaining);
        remaining -= c;
        word = ~words_[++w];
    }
}

void BitVector::save(BinaryWriter& out) const {
    out.u64(size_);
    out.words(words_);
}

BitVector BitVector::load(BinaryReader& in, std::size_t sample_rate) {
    std::uint64_t size = in.u64();
    auto words = in.words(words_for(size));
    return BitVector(std::move(words), size, sample_rate);
}

} // namespace bmx
