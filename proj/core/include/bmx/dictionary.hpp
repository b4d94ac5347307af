#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bmx/ntriples.hpp"
#include "bmx/triple.hpp"

namespace bmx {

class BinaryWriter;
class BinaryReader;

// Sorted, immutable set of strings stored as one byte blob plus offsets.
class StringPool {
public:
    StringPool() = default;
    explicit StringPool(std::vector<std::string> sorted_unique);

    std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::string_view operator[](std::size_t i) const {
        return std::string_view(bytes_).substr(offsets_[i], offsets_[i + 1] - offsets_[i]);
    }
    // Index of `term`, if present.
    std::optional<std::size_t> find(std::string_view term) const;

    std::size_t size_in_bytes() const { return bytes_.size() + offsets_.size() * sizeof(std::uint64_t); }

    void save(BinaryWriter& out) const;
    static StringPool load(BinaryReader& in);

private:
    std::string bytes_;
    std::vector<std::uint64_t> offsets_;
};

/*
    Four-category term dictionary.

    Terms used both as subject and object (SO) get ids 1..nSO in both roles.
    Subject-only terms continue at nSO+1..nS, object-only terms at nSO+1..nO,
    so subject and object ids above nSO overlap numerically but name different
    terms. Predicates are numbered 1..nP independently. Each category is sorted
    lexicographically.
*/
class Dictionary {
public:
    Dictionary() = default;
    Dictionary(StringPool shared, StringPool subjects_only, StringPool objects_only, StringPool predicates);

    Id shared_count() const { return so_.size(); }
    Id subject_count() const { return so_.size() + s_.size(); }
    Id object_count() const { return so_.size() + o_.size(); }
    Id predicate_count() const { return p_.size(); }
    Dimensions dimensions() const { return {subject_count(), object_count(), predicate_count()}; }

    std::optional<Id> subject_id(std::string_view term) const;
    std::optional<Id> object_id(std::string_view term) const;
    std::optional<Id> predicate_id(std::string_view term) const;

    std::optional<std::string_view> subject(Id id) const;
    std::optional<std::string_view> object(Id id) const;
    std::optional<std::string_view> predicate(Id id) const;

    std::optional<IdTriple> encode(const RawTriple& t) const;
    std::optional<RawTriple> decode(const IdTriple& t) const;

    const StringPool& shared_pool() const { return so_; }
    const StringPool& subject_pool() const { return s_; }
    const StringPool& object_pool() const { return o_; }
    const StringPool& predicate_pool() const { return p_; }

    std::size_t size_in_bytes() const;

    void save(BinaryWriter& out) const;
    static Dictionary load(BinaryReader& in);

private:
    StringPool so_;
    StringPool s_;
    StringPool o_;
    StringPool p_;
};

/*
    Streaming dictionary construction. Terms are interned as they arrive; the
    final classification and numbering happen in finish(), which also returns
    the encoded, deduplicated triples.
*/
class DictionaryBuilder {
public:
    void add(const RawTriple& t);
    std::size_t added() const { return triples_.size(); }

    std::pair<Dictionary, std::vector<IdTriple>> finish() &&;

private:
    std::uint32_t intern_node(const std::string& term, std::uint8_t role);
    std::uint32_t intern_predicate(const std::string& term);

    std::unordered_map<std::string, std::uint32_t> node_ids_;
    std::vector<std::string> nodes_;
    std::vector<std::uint8_t> roles_;  // bit 0: subject, bit 1: object
    std::unordered_map<std::string, std::uint32_t> predicate_ids_;
    std::vector<std::string> predicates_;
    struct Local {
        std::uint32_t s, p, o;
    };
    std::vector<Local> triples_;
};

std::pair<Dictionary, std::vector<IdTriple>> build_dictionary(const std::vector<RawTriple>& triples);

} // namespace bmx
