#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bmx {

// Terms in canonical text form: IRIs without angle brackets, blank nodes as
// "_:label", literals with their quotes and any "@lang" / "^^<datatype>"
// suffix. Escapes are decoded.
struct RawTriple {
    std::string subject;
    std::string predicate;
    std::string object;

    friend bool operator==(const RawTriple&, const RawTriple&) = default;
};

struct ParseDiagnostic {
    std::size_t line = 0;
    std::string message;
};

class NTriplesError : public std::runtime_error {
public:
    NTriplesError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ParseOptions {
    bool strict = false;  // throw NTriplesError on the first malformed line
    bool gzip = false;    // input file is gzip-compressed
};

struct ParseStats {
    std::size_t lines = 0;
    std::size_t triples = 0;
    std::vector<ParseDiagnostic> diagnostics;
};

using TripleSink = std::function<void(RawTriple&&)>;

// Reads one term starting at `pos` (leading whitespace skipped) into `out`
// and returns the position just past it. Throws std::invalid_argument on
// malformed input.
std::size_t read_term(std::string_view text, std::size_t pos, std::string& out);

// nullopt for blank and comment-only lines; std::invalid_argument on a
// malformed statement.
std::optional<RawTriple> parse_ntriples_line(std::string_view line);

ParseStats parse_ntriples(std::istream& in, const TripleSink& sink, const ParseOptions& options = {});
ParseStats parse_ntriples_file(const std::filesystem::path& path, const TripleSink& sink,
                               const ParseOptions& options = {});

std::string format_term(std::string_view term);
std::string format_triple(const RawTriple& t);

} // namespace bmx
