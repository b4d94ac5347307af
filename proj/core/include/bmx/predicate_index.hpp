#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bmx/triple.hpp"

namespace bmx {

class BinaryWriter;
class BinaryReader;

/*
    Column ranges of each predicate in a (p,o,s)-sorted triple sequence.

    starts_[p - 1] is the first column of predicate p and starts_[nP] == n,
    so predicate p owns [starts_[p - 1], starts_[p]). samples_[j] is the
    predicate owning column min(j * d, n - 1); a rank lookup binary-searches
    starts_ only between the two samples that bracket the column.
*/
class PredicateIndex {
public:
    static constexpr std::uint64_t default_sample_period = 1024;

    PredicateIndex() = default;
    PredicateIndex(std::span<const Id> sorted_predicates, Id predicate_count,
                   std::uint64_t sample_period = default_sample_period);

    Id predicate_count() const { return starts_.empty() ? 0 : starts_.size() - 1; }
    std::uint64_t columns() const { return starts_.empty() ? 0 : starts_.back(); }
    std::uint64_t sample_period() const { return period_; }

    // First column of predicate p.
    std::uint64_t select(Id p) const;
    // Predicate owning column i.
    Id rank(std::uint64_t i) const;
    // [begin, end) columns of predicate p; empty for unused predicates.
    std::pair<std::uint64_t, std::uint64_t> column_range(Id p) const;

    const std::vector<std::uint64_t>& starts() const { return starts_; }
    const std::vector<Id>& samples() const { return samples_; }

    std::size_t size_in_bytes() const { return (starts_.size() + samples_.size()) * sizeof(std::uint64_t); }

    void save(BinaryWriter& out) const;
    static PredicateIndex load(BinaryReader& in);

private:
    std::vector<std::uint64_t> starts_;
    std::vector<Id> samples_;
    std::uint64_t period_ = default_sample_period;
};

} // namespace bmx
