#include "bmx/pattern.hpp"

#include <cctype>
#include <charconv>
#include <istream>

#include "bmx/ntriples.hpp"

namespace bmx {

namespace {

constexpr std::array<std::string_view, 8> shape_names{"spo", "sp?", "?po", "s?o", "s??", "??o", "?p?", "???"};

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::size_t skip_ws(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_ws(s[pos])) ++pos;
    return pos;
}

std::size_t parse_slot(std::string_view line, std::size_t pos, PatternTerm& term) {
    pos = skip_ws(line, pos);
    if (pos >= line.size()) throw std::invalid_argument("pattern needs three terms");
    if (line[pos] == '?') {
        term.kind = PatternTerm::Kind::Unbound;
        while (pos < line.size() && !is_ws(line[pos])) ++pos;
        return pos;
    }
    if (line[pos] == '#') {
        std::size_t end = pos + 1;
        while (end < line.size() && !is_ws(line[end])) ++end;
        std::string_view digits = line.substr(pos + 1, end - pos - 1);
        Id id = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || id == 0)
            throw std::invalid_argument("numeric term must be #<positive id>");
        term.kind = PatternTerm::Kind::NumericId;
        term.id = id;
        return end;
    }
    term.kind = PatternTerm::Kind::Term;
    term.text.clear();
    return read_term(line, pos, term.text);
}

std::optional<Id> resolve_slot(const PatternTerm& term, std::string_view role, const Dictionary& dict,
                               Id limit, std::optional<Id> (Dictionary::*lookup)(std::string_view) const) {
    switch (term.kind) {
        case PatternTerm::Kind::Unbound: return std::nullopt;
        case PatternTerm::Kind::NumericId:
            if (term.id > limit) throw std::out_of_range(std::string(role) + " id out of range");
            return term.id;
        case PatternTerm::Kind::Term:
            if (auto id = (dict.*lookup)(term.text)) return id;
            throw TermNotFound(role, format_term(term.text));
    }
    return std::nullopt;
}

std::vector<IdTriple> with_s_p(Id s, Id p, const std::vector<Id>& objects) {
    std::vector<IdTriple> out;
    out.reserve(objects.size());
    for (auto o : objects) out.push_back({s, p, o});
    return out;
}

} // namespace

std::string_view shape_name(Shape shape) { return shape_names[static_cast<std::size_t>(shape)]; }

std::optional<Shape> parse_shape(std::string_view name) {
    for (std::size_t i = 0; i < shape_names.size(); ++i)
        if (shape_names[i] == name) return static_cast<Shape>(i);
    return std::nullopt;
}

Family family_of(Shape shape) {
    switch (shape) {
        case Shape::SPO:
        case Shape::SPx:
        case Shape::xPO:
        case Shape::xPx: return Family::FixedPredicate;
        case Shape::SxO:
        case Shape::Sxx:
        case Shape::xxO: return Family::UnboundPredicate;
        case Shape::xxx: return Family::FullScan;
    }
    return Family::FullScan;
}

std::string_view family_name(Family family) {
    switch (family) {
        case Family::FixedPredicate: return "fixed-predicate";
        case Family::UnboundPredicate: return "unbound-predicate";
        case Family::FullScan: return "full-scan";
    }
    return "unknown";
}

Shape shape_of(const TriplePattern& p) {
    const bool s = p.s.has_value(), pr = p.p.has_value(), o = p.o.has_value();
    if (s && pr && o) return Shape::SPO;
    if (s && pr) return Shape::SPx;
    if (pr && o) return Shape::xPO;
    if (s && o) return Shape::SxO;
    if (s) return Shape::Sxx;
    if (o) return Shape::xxO;
    if (pr) return Shape::xPx;
    return Shape::xxx;
}

PatternSpec PatternSpec::parse(std::string_view line) {
    PatternSpec spec;
    std::size_t pos = 0;
    for (auto& t : spec.terms) pos = parse_slot(line, pos, t);
    pos = skip_ws(line, pos);
    if (pos < line.size() && line[pos] == '.') pos = skip_ws(line, pos + 1);
    if (pos < line.size() && line[pos] != '#') throw std::invalid_argument("unexpected text after pattern");
    return spec;
}

PatternSpec PatternSpec::from_ids(const TriplePattern& pattern) {
    PatternSpec spec;
    const std::array<std::optional<Id>, 3> slots{pattern.s, pattern.p, pattern.o};
    for (std::size_t i = 0; i < 3; ++i) {
        if (slots[i]) {
            spec.terms[i].kind = PatternTerm::Kind::NumericId;
            spec.terms[i].id = *slots[i];
        }
    }
    return spec;
}

Shape PatternSpec::shape() const {
    TriplePattern p;
    auto bound = [](const PatternTerm& t) { return t.kind == PatternTerm::Kind::Unbound ? std::nullopt : std::optional<Id>(1); };
    p.s = bound(terms[0]);
    p.p = bound(terms[1]);
    p.o = bound(terms[2]);
    return shape_of(p);
}

std::string PatternSpec::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i) out.push_back(' ');
        const auto& t = terms[i];
        switch (t.kind) {
            case PatternTerm::Kind::Unbound: out.push_back('?'); break;
            case PatternTerm::Kind::NumericId: out += "#" + std::to_string(t.id); break;
            case PatternTerm::Kind::Term: out += format_term(t.text); break;
        }
    }
    return out;
}

TriplePattern resolve(const PatternSpec& spec, const Dictionary& dict) { return resolve(spec, dict, dict.dimensions()); }

TriplePattern resolve(const PatternSpec& spec, const Dictionary& dict, const Dimensions& ids) {
    TriplePattern p;
    p.s = resolve_slot(spec.terms[0], "subject", dict, ids.subjects, &Dictionary::subject_id);
    p.p = resolve_slot(spec.terms[1], "predicate", dict, ids.predicates, &Dictionary::predicate_id);
    p.o = resolve_slot(spec.terms[2], "object", dict, ids.objects, &Dictionary::object_id);
    return p;
}

std::vector<IdTriple> evaluate(const BMatrixStore& store, const TriplePattern& q) {
    switch (shape_of(q)) {
        case Shape::SPO:
            if (store.contains(*q.s, *q.p, *q.o)) return {{*q.s, *q.p, *q.o}};
            return {};
        case Shape::SPx: return with_s_p(*q.s, *q.p, store.objects_of(*q.s, *q.p));
        case Shape::xPO: {
            std::vector<IdTriple> out;
            for (auto s : store.subjects_of(*q.p, *q.o)) out.push_back({s, *q.p, *q.o});
            return out;
        }
        case Shape::SxO: {
            std::vector<IdTriple> out;
            for (auto p : store.predicates_between(*q.s, *q.o)) out.push_back({*q.s, p, *q.o});
            return out;
        }
        case Shape::Sxx: {
            std::vector<IdTriple> out;
            for (auto [p, o] : store.subject_triples(*q.s)) out.push_back({*q.s, p, o});
            return out;
        }
        case Shape::xxO: {
            std::vector<IdTriple> out;
            for (auto [s, p] : store.object_triples(*q.o)) out.push_back({s, p, *q.o});
            return out;
        }
        case Shape::xPx: {
            std::vector<IdTriple> out;
            for (auto [s, o] : store.predicate_triples(*q.p)) out.push_back({s, *q.p, o});
            return out;
        }
        case Shape::xxx: return store.all_triples();
    }
    return {};
}

std::vector<PatternSpec> read_patterns(std::istream& in) {
    std::vector<PatternSpec> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = skip_ws(line, 0);
        if (pos == line.size()) continue;
        if (line[pos] == '#' && (pos + 1 == line.size() || !std::isdigit(static_cast<unsigned char>(line[pos + 1]))))
            continue;
        try {
            out.push_back(PatternSpec::parse(line));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("query line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

} // namespace bmx
