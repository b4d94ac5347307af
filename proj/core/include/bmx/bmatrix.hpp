#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bmx/k2_tree.hpp"
#include "bmx/predicate_index.hpp"
#include "bmx/triple.hpp"

namespace bmx {

// Result-size cutoffs for choosing between per-result probes and a second
// traversal plus merge. At or below the threshold, probes are used.
struct Thresholds {
    std::size_t merge_sorted = 10;    // (s,?,o)
    std::size_t merge_unsorted = 10;  // (?,p,?)

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct StoreConfig {
    K2Config subject_tree;
    K2Config object_tree;
    std::uint64_t predicate_sample_period = PredicateIndex::default_sample_period;
    Thresholds thresholds;

    // Same tree layout for both matrices.
    static StoreConfig with_trees(const K2Config& tree) {
        StoreConfig c;
        c.subject_tree = tree;
        c.object_tree = tree;
        return c;
    }
};

struct PredicateObject {
    Id p = 0;
    Id o = 0;
    friend bool operator==(const PredicateObject&, const PredicateObject&) = default;
};

struct SubjectPredicate {
    Id s = 0;
    Id p = 0;
    friend bool operator==(const SubjectPredicate&, const SubjectPredicate&) = default;
};

struct SubjectObject {
    Id s = 0;
    Id o = 0;
    friend bool operator==(const SubjectObject&, const SubjectObject&) = default;
};

/*
    Triples sorted by (p,o,s); column i of both matrices is triple i.

    ST (nS x n) has cell (s - 1, i) set and OT (nO x n) has cell (o - 1, i) set,
    so each column of either matrix holds exactly one 1. The predicate of a
    column comes from the PredicateIndex.

    All bound ids must lie in [1, nS], [1, nP], [1, nO]; queries on an empty
    store return empty results for any id.
*/
class BMatrixStore {
public:
    BMatrixStore() = default;
    BMatrixStore(std::vector<IdTriple> triples, Dimensions dims, StoreConfig config = {});

    std::uint64_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    const Dimensions& dimensions() const { return dims_; }
    const Thresholds& thresholds() const { return thresholds_; }
    void set_thresholds(Thresholds t) { thresholds_ = t; }

    const K2Tree& subject_tree() const { return st_; }
    const K2Tree& object_tree() const { return ot_; }
    const PredicateIndex& predicates() const { return pidx_; }

    bool contains(Id s, Id p, Id o) const;                          // (s,p,o)
    std::vector<Id> objects_of(Id s, Id p) const;                   // (s,p,?)
    std::vector<Id> subjects_of(Id p, Id o) const;                  // (?,p,o)
    std::vector<Id> predicates_between(Id s, Id o) const;           // (s,?,o)
    std::vector<PredicateObject> subject_triples(Id s) const;       // (s,?,?)
    std::vector<SubjectPredicate> object_triples(Id o) const;       // (?,?,o)
    std::vector<SubjectObject> predicate_triples(Id p) const;       // (?,p,?)
    std::vector<IdTriple> all_triples() const;                      // (?,?,?)

    struct SpaceBreakdown {
        K2Tree::SpaceBreakdown subject_tree;
        K2Tree::SpaceBreakdown object_tree;
        std::size_t predicate_index = 0;
        std::size_t total() const { return subject_tree.total() + object_tree.total() + predicate_index; }
    };
    SpaceBreakdown space() const;

    // Reassembles a store from deserialized parts, checking that they agree.
    static BMatrixStore assemble(Dimensions dims, K2Tree subject_tree, K2Tree object_tree, PredicateIndex predicates,
                                 Thresholds thresholds);

private:
    void check_subject(Id s) const;
    void check_object(Id o) const;
    void check_predicate(Id p) const;
    Id object_at(std::uint64_t column) const;
    Id subject_at(std::uint64_t column) const;

    Dimensions dims_;
    std::uint64_t n_ = 0;
    K2Tree st_;
    K2Tree ot_;
    PredicateIndex pidx_;
    Thresholds thresholds_;
};

} // namespace bmx
