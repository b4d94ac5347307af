#include "bmx/oracle.hpp"

#include <algorithm>

namespace bmx::oracle {

TripleList::TripleList(std::vector<IdTriple> triples) : triples_(std::move(triples)) {
    std::sort(triples_.begin(), triples_.end(), PosOrder{});
    triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
}

std::vector<IdTriple> match(const TripleList& tl, const TriplePattern& pattern) {
    std::vector<IdTriple> out;
    for (const auto& t : tl.triples()) {
        if (pattern.s && t.s != *pattern.s) continue;
        if (pattern.p && t.p != *pattern.p) continue;
        if (pattern.o && t.o != *pattern.o) continue;
        out.push_back(t);
    }
    return out;
}

bool contains(const TripleList& tl, Id s, Id p, Id o) { return !match(tl, {s, p, o}).empty(); }

std::vector<Id> objects_of(const TripleList& tl, Id s, Id p) {
    std::vector<Id> out;
    for (const auto& t : match(tl, {s, p, std::nullopt})) out.push_back(t.o);
    return out;
}

std::vector<Id> subjects_of(const TripleList& tl, Id p, Id o) {
    std::vector<Id> out;
    for (const auto& t : match(tl, {std::nullopt, p, o})) out.push_back(t.s);
    return out;
}

std::vector<Id> predicates_between(const TripleList& tl, Id s, Id o) {
    std::vector<Id> out;
    for (const auto& t : match(tl, {s, std::nullopt, o})) out.push_back(t.p);
    return out;
}

std::vector<PredicateObject> subject_triples(const TripleList& tl, Id s) {
    std::vector<PredicateObject> out;
    for (const auto& t : match(tl, {s, std::nullopt, std::nullopt})) out.push_back({t.p, t.o});
    return out;
}

std::vector<SubjectPredicate> object_triples(const TripleList& tl, Id o) {
    std::vector<SubjectPredicate> out;
    for (const auto& t : match(tl, {std::nullopt, std::nullopt, o})) out.push_back({t.s, t.p});
    return out;
}

std::vector<SubjectObject> predicate_triples(const TripleList& tl, Id p) {
    std::vector<SubjectObject> out;
    for (const auto& t : match(tl, {std::nullopt, p, std::nullopt})) out.push_back({t.s, t.o});
    return out;
}

} // namespace bmx::oracle
