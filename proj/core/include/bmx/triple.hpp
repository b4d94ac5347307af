#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <tuple>

namespace bmx {

using Id = std::uint64_t;

// Dictionary-encoded triple; every id is 1-based.
struct IdTriple {
    Id s = 0;
    Id p = 0;
    Id o = 0;

    friend bool operator==(const IdTriple&, const IdTriple&) = default;
};

// Column order of the store: predicate, then object, then subject.
struct PosOrder {
    bool operator()(const IdTriple& a, const IdTriple& b) const {
        return std::tie(a.p, a.o, a.s) < std::tie(b.p, b.o, b.s);
    }
};

struct Dimensions {
    Id subjects = 0;
    Id objects = 0;
    Id predicates = 0;

    friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

// Triple pattern in id space; an empty slot is unbound.
struct TriplePattern {
    std::optional<Id> s;
    std::optional<Id> p;
    std::optional<Id> o;

    friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

} // namespace bmx
