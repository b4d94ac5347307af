#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bmx/bmatrix.hpp"
#include "bmx/dictionary.hpp"
#include "bmx/ntriples.hpp"
#include "bmx/oracle.hpp"

namespace bmx {

struct EncodedInput {
    std::vector<IdTriple> triples;
    std::vector<RawTriple> unknown;  // statements with a term the dictionary lacks
    ParseStats parse;
};

// Parses an N-Triples file and encodes it with an existing dictionary.
EncodedInput encode_ntriples(const Dictionary& dictionary, const std::filesystem::path& path,
                             const ParseOptions& options = {});

struct VerifyOptions {
    std::size_t samples_per_shape = 200;
    std::uint64_t seed = 1;
};

struct VerifyResult {
    bool ok = true;
    std::size_t patterns_checked = 0;
    std::string reproducer;  // filled on the first mismatch
};

// Full-scan equality first, then random patterns of every shape compared
// against the oracle, including result order.
VerifyResult verify_store(const BMatrixStore& store, const oracle::TripleList& reference,
                          const VerifyOptions& options = {});

} // namespace bmx
