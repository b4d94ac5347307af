#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bmx/pattern.hpp"
#include "bmx/triple.hpp"

namespace bmx {

struct Dataset {
    std::vector<IdTriple> triples;  // deduplicated
    Dimensions dims;
};

struct ZipfOptions {
    std::size_t triples = 10'000;
    Id subjects = 2'000;
    Id objects = 4'000;
    Id predicates = 100;
    double skew = 1.0;
    std::uint64_t seed = 1;
};

// Independent Zipf draws for subject, predicate and object; low ids are the
// most frequent. Not every declared id is guaranteed to be used.
Dataset generate_zipf(const ZipfOptions& options);

struct ClusteredOptions {
    std::size_t triples = 1'000'000;
    Id predicates = 1'000;
    std::size_t cluster_size = 64;
    std::uint64_t seed = 7;
};

// Entity-like data: subjects come in clusters that share a small predicate
// vocabulary and draw most objects from a block of ids owned by the cluster,
// plus a few globally popular objects.
Dataset generate_clustered(const ClusteredOptions& options);

// Random patterns of one shape. Bound slots are copied from a random triple
// with probability hit_ratio, otherwise drawn uniformly from the id space.
std::vector<TriplePattern> sample_patterns(const Dataset& data, Shape shape, std::size_t count, std::mt19937_64& rng,
                                           double hit_ratio = 0.8);

} // namespace bmx
