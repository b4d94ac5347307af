#pragma once

#include <vector>

#include "bmx/bmatrix.hpp"
#include "bmx/triple.hpp"

// Brute-force reference answers: a linear scan over the sorted triple list.
// Nothing here touches the succinct structures.
namespace bmx::oracle {

class TripleList {
public:
    TripleList() = default;
    explicit TripleList(std::vector<IdTriple> triples);

    const std::vector<IdTriple>& triples() const { return triples_; }
    std::size_t size() const { return triples_.size(); }

private:
    std::vector<IdTriple> triples_;  // deduplicated, (p,o,s) order
};

// Matching triples in (p,o,s) order, i.e. store column order.
std::vector<IdTriple> match(const TripleList& tl, const TriplePattern& pattern);

bool contains(const TripleList& tl, Id s, Id p, Id o);
std::vector<Id> objects_of(const TripleList& tl, Id s, Id p);
std::vector<Id> subjects_of(const TripleList& tl, Id p, Id o);
std::vector<Id> predicates_between(const TripleList& tl, Id s, Id o);
std::vector<PredicateObject> subject_triples(const TripleList& tl, Id s);
std::vector<SubjectPredicate> object_triples(const TripleList& tl, Id o);
std::vector<SubjectObject> predicate_triples(const TripleList& tl, Id p);

} // namespace bmx::oracle
