#include "bmx/bench.hpp"

#include <chrono>
#include <iomanip>
#include <map>

namespace bmx {

namespace {

int shape_rank(Shape s) {
    for (std::size_t i = 0; i < all_shapes.size(); ++i)
        if (all_shapes[i] == s) return static_cast<int>(i);
    return 0;
}

} // namespace

std::vector<BenchRow> run_bench(const BMatrixStore& store, std::span<const TriplePattern> queries,
                                const BenchOptions& options, const Dictionary* dictionary) {
    using clock = std::chrono::steady_clock;
    std::map<int, std::vector<TriplePattern>> by_shape;
    for (const auto& q : queries) by_shape[shape_rank(shape_of(q))].push_back(q);

    std::vector<BenchRow> rows;
    volatile std::size_t sink = 0;
    for (const auto& [rank, set] : by_shape) {
        BenchRow row;
        row.shape = all_shapes[static_cast<std::size_t>(rank)];
        row.queries = set.size();
        auto start = clock::now();
        double elapsed = 0;
        do {
            std::uint64_t results = 0;
            for (const auto& q : set) {
                auto found = evaluate(store, q);
                results += found.size();
                if (options.decode && dictionary) {
                    for (const auto& t : found) {
                        if (auto raw = dictionary->decode(t)) sink = sink + raw->object.size();
                    }
                }
            }
            row.results = results;
            ++row.reps;
            elapsed = std::chrono::duration<double>(clock::now() - start).count();
        } while (row.reps < options.min_reps || elapsed < options.min_seconds);
        row.seconds = elapsed;
        const double us = elapsed * 1e6 / static_cast<double>(row.reps);
        row.us_per_query = row.queries ? us / static_cast<double>(row.queries) : 0;
        row.us_per_result = row.results ? us / static_cast<double>(row.results) : 0;
        rows.push_back(row);
    }
    return rows;
}

void write_bench_report(std::ostream& out, std::span<const BenchRow> rows) {
    out << "family\tshape\tqueries\tresults\treps\tus_per_query\tus_per_result\n";
    auto flags = out.flags();
    for (const auto& r : rows) {
        out << family_name(family_of(r.shape)) << '\t' << shape_name(r.shape) << '\t' << r.queries << '\t'
            << r.results << '\t' << r.reps << '\t' << std::fixed << std::setprecision(4) << r.us_per_query << '\t'
            << r.us_per_result << '\n';
        out.flags(flags);
    }
}

double overall_us_per_result(std::span<const BenchRow> rows) {
    double us = 0;
    double results = 0;
    for (const auto& r : rows) {
        us += r.us_per_result * static_cast<double>(r.results);
        results += static_cast<double>(r.results);
    }
    return results > 0 ? us / results : 0;
}

} // namespace bmx
