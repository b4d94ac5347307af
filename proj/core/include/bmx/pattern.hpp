#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bmx/bmatrix.hpp"
#include "bmx/dictionary.hpp"
#include "bmx/triple.hpp"

namespace bmx {

// The eight bound/unbound combinations; `?` marks an unbound slot.
enum class Shape : std::uint8_t { SPO, SPx, xPO, SxO, Sxx, xxO, xPx, xxx };

inline constexpr std::array<Shape, 8> all_shapes{Shape::SPO, Shape::SPx, Shape::xPO, Shape::xPx,
                                                 Shape::SxO, Shape::Sxx, Shape::xxO, Shape::xxx};

enum class Family : std::uint8_t { FixedPredicate, UnboundPredicate, FullScan };

std::string_view shape_name(Shape shape);
std::optional<Shape> parse_shape(std::string_view name);
Family family_of(Shape shape);
std::string_view family_name(Family family);
Shape shape_of(const TriplePattern& pattern);

struct PatternTerm {
    enum class Kind : std::uint8_t { Unbound, Term, NumericId };
    Kind kind = Kind::Unbound;
    std::string text;  // canonical term text for Kind::Term
    Id id = 0;         // for Kind::NumericId

    friend bool operator==(const PatternTerm&, const PatternTerm&) = default;
};

/*
    Textual triple pattern: three slots, each an N-Triples term, a numeric id
    written `#42`, or `?` (optionally `?name`). A trailing `.` is accepted.
*/
struct PatternSpec {
    std::array<PatternTerm, 3> terms;

    static PatternSpec parse(std::string_view line);
    static PatternSpec from_ids(const TriplePattern& pattern);
    Shape shape() const;
    std::string to_string() const;

    friend bool operator==(const PatternSpec&, const PatternSpec&) = default;
};

class TermNotFound : public std::runtime_error {
public:
    TermNotFound(std::string_view role, std::string_view term)
        : std::runtime_error("term not found: " + std::string(role) + " " + std::string(term)) {}
};

// Maps bound terms to ids. Throws TermNotFound for unknown terms and
// std::out_of_range for numeric ids outside the dictionary's id space.
TriplePattern resolve(const PatternSpec& spec, const Dictionary& dictionary);
// Same, but numeric ids are checked against `ids`; used for id-only stores.
TriplePattern resolve(const PatternSpec& spec, const Dictionary& dictionary, const Dimensions& ids);

// Runs the query for the pattern's shape; results come back as full triples
// in store column order.
std::vector<IdTriple> evaluate(const BMatrixStore& store, const TriplePattern& pattern);

// Reads one pattern per non-blank, non-comment line.
std::vector<PatternSpec> read_patterns(std::istream& in);

} // namespace bmx
