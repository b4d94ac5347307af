#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "bmx/bmatrix.hpp"
#include "bmx/dictionary.hpp"
#include "bmx/pattern.hpp"

namespace bmx {

struct BenchOptions {
    // A shape's query set is replayed until both limits are reached.
    std::size_t min_reps = 3;
    double min_seconds = 0.2;
    // Include dictionary decoding of every result in the timed region.
    bool decode = false;
};

struct BenchRow {
    Shape shape = Shape::xxx;
    std::size_t queries = 0;
    std::uint64_t results = 0;  // per replay of the query set
    std::size_t reps = 0;
    double seconds = 0;
    double us_per_query = 0;
    double us_per_result = 0;  // 0 when the set produced no results
};

// One row per shape present, fixed-predicate shapes first, then
// unbound-predicate shapes, then full scans.
std::vector<BenchRow> run_bench(const BMatrixStore& store, std::span<const TriplePattern> queries,
                                const BenchOptions& options, const Dictionary* dictionary = nullptr);

// Tab-separated report with a fixed header line.
void write_bench_report(std::ostream& out, std::span<const BenchRow> rows);

// Aggregate time per result over all rows.
double overall_us_per_result(std::span<const BenchRow> rows);

} // namespace bmx
