#include "bmx/predicate_index.hpp"

#include <algorithm>
#include <stdexcept>

#include "bmx/binary_io.hpp"

namespace bmx {

PredicateIndex::PredicateIndex(std::span<const Id> sorted_predicates, Id predicate_count,
                               std::uint64_t sample_period)
    : period_(sample_period) {
    if (sample_period == 0) throw std::invalid_argument("predicate sample period must be positive");
    const std::uint64_t n = sorted_predicates.size();
    starts_.assign(predicate_count + 1, 0);
    // count per predicate, then prefix sums
    for (std::size_t i = 0; i < n; ++i) {
        Id p = sorted_predicates[i];
        if (p == 0 || p > predicate_count) throw std::out_of_range("predicate id outside [1, nP]");
        if (i > 0 && p < sorted_predicates[i - 1]) throw std::invalid_argument("predicates must be sorted");
        ++starts_[p];
    }
    for (std::size_t p = 1; p < starts_.size(); ++p) starts_[p] += starts_[p - 1];

    if (n == 0) return;
    samples_.reserve(n / period_ + 1);
    for (std::uint64_t j = 0; j <= n / period_; ++j) samples_.push_back(sorted_predicates[std::min(j * period_, n - 1)]);
}

std::uint64_t PredicateIndex::select(Id p) const {
    if (p == 0 || p > predicate_count()) throw std::out_of_range("PredicateIndex::select");
    return starts_[p - 1];
}

std::pair<std::uint64_t, std::uint64_t> PredicateIndex::column_range(Id p) const {
    if (p == 0 || p > predicate_count()) throw std::out_of_range("PredicateIndex::column_range");
    return {starts_[p - 1], starts_[p]};
}

Id PredicateIndex::rank(std::uint64_t i) const {
    if (i >= columns()) throw std::out_of_range("PredicateIndex::rank");
    const std::uint64_t j = i / period_;
    const Id lo = samples_[j];
    const Id hi = j + 1 < samples_.size() ? samples_[j + 1] : predicate_count();
    // rightmost predicate p in [lo, hi] with starts_[p - 1] <= i
    auto first = starts_.begin() + static_cast<std::ptrdiff_t>(lo - 1);
    auto last = starts_.begin() + static_cast<std::ptrdiff_t>(hi);
    auto it = std::upper_bound(first, last, i);
    return static_cast<Id>(it - starts_.begin());
}

void PredicateIndex::save(BinaryWriter& out) const {
    out.u64(period_);
    out.u64(starts_.size());
    out.words(starts_);
    out.u64(samples_.size());
    out.words(samples_);
}

PredicateIndex PredicateIndex::load(BinaryReader& in) {
    PredicateIndex idx;
    idx.period_ = in.u64();
    if (idx.period_ == 0) throw std::runtime_error("corrupt predicate index: zero sample period");
    idx.starts_ = in.words(in.u64());
    idx.samples_ = in.words(in.u64());
    if (!std::is_sorted(idx.starts_.begin(), idx.starts_.end()))
        throw std::runtime_error("corrupt predicate index: starts not sorted");
    std::uint64_t n = idx.columns();
    std::uint64_t expected = n == 0 ? 0 : n / idx.period_ + 1;
    if (idx.samples_.size() != expected) throw std::runtime_error("corrupt predicate index: sample count");
    for (auto p : idx.samples_) {
        if (p == 0 || p > idx.predicate_count()) throw std::runtime_error("corrupt predicate index: sample value");
    }
    return idx;
}

} // namespace bmx
