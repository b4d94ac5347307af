#include "bmx/int_vector.hpp"

#include <stdexcept>

#include "bmx/binary_io.hpp"

namespace bmx {

namespace {

std::uint64_t mask_for(unsigned width) {
    return width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

std::size_t words_for(std::size_t size, unsigned width) {
    return static_cast<std::size_t>((static_cast<std::uint64_t>(size) * width + 63) / 64);
}

} // namespace

IntVector::IntVector(std::size_t size, unsigned width)
    : words_(words_for(size, width), 0), size_(size), width_(width), mask_(mask_for(width)) {
    if (width == 0 || width > 64) throw std::invalid_argument("IntVector width must be in [1, 64]");
}

std::uint64_t IntVector::at(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("IntVector::at");
    return (*this)[i];
}

void IntVector::set(std::size_t i, std::uint64_t value) {
    if (i >= size_) throw std::out_of_range("IntVector::set");
    if (value & ~mask_) throw std::invalid_argument("IntVector::set: value wider than element width");
    std::uint64_t bit = static_cast<std::uint64_t>(i) * width_;
    std::size_t w = bit >> 6;
    unsigned off = bit & 63;
    words_[w] = (words_[w] & ~(mask_ << off)) | (value << off);
    if (off + width_ > 64) {
        unsigned spill = off + width_ - 64;
        std::uint64_t hi_mask = (std::uint64_t{1} << spill) - 1;
        words_[w + 1] = (words_[w + 1] & ~hi_mask) | (value >> (64 - off));
    }
}

void IntVector::push_back(std::uint64_t value) {
    ++size_;
    words_.resize(words_for(size_, width_), 0);
    set(size_ - 1, value);
}

void IntVector::save(BinaryWriter& out) const {
    out.u8(static_cast<std::uint8_t>(width_));
    out.u64(size_);
    out.words(words_);
}

IntVector IntVector::load(BinaryReader& in) {
    unsigned width = in.u8();
    std::uint64_t size = in.u64();
    IntVector v(size, width);
    v.words_ = in.words(words_for(size, width));
    return v;
}

} // namespace bmx
