#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>

#include "bmx/bmatrix.hpp"
#include "bmx/dictionary.hpp"

namespace bmx {

/*
    Store file layout, all integers little-endian:

      "BMX1"  u16 version  u8 integer width (8)
      u64 n, nSO, nS, nO, nP, predicate sample period d
      u64 merge_sorted threshold, merge_unsorted threshold
      ST k2 config, OT k2 config
      dictionary: SO, S-only, O-only, P pools (count, offsets, bytes)
      predicate index: d, AP, rankP
      ST tree, OT tree

    Rank/select samples are rebuilt on load.
*/
inline constexpr char store_magic[4] = {'B', 'M', 'X', '1'};
inline constexpr std::uint16_t store_version = 1;

struct StoreFile {
    Dictionary dictionary;
    BMatrixStore store;
};

// A dictionary with no terms is allowed for id-only stores; otherwise its id
// spaces must match the store's dimensions.
std::uint64_t write_store(std::ostream& out, const Dictionary& dictionary, const BMatrixStore& store);
StoreFile read_store(std::istream& in);

std::uint64_t save_store(const std::filesystem::path& path, const Dictionary& dictionary, const BMatrixStore& store);
StoreFile load_store(const std::filesystem::path& path);

} // namespace bmx
