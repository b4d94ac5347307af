#include "bmx/dac.hpp"

#include <stdexcept>

#include "bmx/binary_io.hpp"

namespace bmx {

Dac::Dac(std::span<const std::uint64_t> values, unsigned chunk_width, SamplePreset preset)
    : size_(values.size()), width_(chunk_width) {
    if (chunk_width == 0 || chunk_width > 64) throw std::invalid_argument("DAC chunk width must be in [1, 64]");
    if (values.empty()) return;

    const std::uint64_t mask = chunk_width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << chunk_width) - 1;
    const std::size_t rate = sample_rate_for(preset);

    std::vector<std::uint64_t> current(values.begin(), values.end());
    std::vector<std::uint64_t> next;
    while (!current.empty()) {
        IntVector chunks(current.size(), chunk_width);
        BitVectorBuilder more;
        next.clear();
        for (std::size_t i = 0; i < current.size(); ++i) {
            std::uint64_t v = current[i];
            chunks.set(i, v & mask);
            std::uint64_t rest = chunk_width == 64 ? 0 : v >> chunk_width;
            more.push_back(rest != 0);
            if (rest != 0) next.push_back(rest);
        }
        levels_.push_back({std::move(chunks), BitVector(std::move(more), rate)});
        current.swap(next);
    }
}

std::uint64_t Dac::access(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("Dac::access");
    return (*this)[i];
}

std::uint64_t Dac::operator[](std::size_t i) const {
    std::uint64_t value = 0;
    std::size_t j = i;
    for (std::size_t l = 0;; ++l) {
        const Level& level = levels_[l];
        value |= level.chunks[j] << (l * width_);
        if (!level.more[j]) return value;
        j = level.more.rank1(j) - 1;
    }
}

std::size_t Dac::total_chunks() const {
    std::size_t total = 0;
    for (const auto& l : levels_) total += l.chunks.size();
    return total;
}

std::size_t Dac::size_in_bytes() const {
    std::size_t bytes = 0;
    for (const auto& l : levels_) bytes += l.chunks.size_in_bytes() + l.more.size_in_bytes();
    return bytes;
}

void Dac::save(BinaryWriter& out) const {
    out.u8(static_cast<std::uint8_t>(width_));
    out.u64(size_);
    out.u8(static_cast<std::uint8_t>(levels_.size()));
    for (const auto& l : levels_) {
        l.chunks.save(out);
        l.more.save(out);
    }
}

Dac Dac::load(BinaryReader& in, SamplePreset preset) {
    Dac d;
    d.width_ = in.u8();
    if (d.width_ == 0 || d.width_ > 64) throw std::runtime_error("corrupt DAC: bad chunk width");
    d.size_ = in.u64();
    std::size_t levels = in.u8();
    for (std::size_t i = 0; i < levels; ++i) {
        IntVector chunks = IntVector::load(in);
        BitVector more = BitVector::load(in, sample_rate_for(preset));
        if (chunks.size() != more.size()) throw std::runtime_error("corrupt DAC: level size mismatch");
        d.levels_.push_back({std::move(chunks), std::move(more)});
    }
    if (!d.levels_.empty() && d.levels_.front().chunks.size() != d.size_)
        throw std::runtime_error("corrupt DAC: length mismatch");
    return d;
}

} // namespace bmx
