#include "bmx/ntriples.hpp"

#include <zlib.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace bmx {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::size_t skip_ws(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_ws(s[pos])) ++pos;
    return pos;
}

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point in escape");
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes \uXXXX or \UXXXXXXXX starting at s[pos] == '\\'; returns position after it.
std::size_t read_uchar(std::string_view s, std::size_t pos, std::string& out) {
    std::size_t digits = s[pos + 1] == 'u' ? 4 : 8;
    if (pos + 2 + digits > s.size()) fail("truncated unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
        char c = s[pos + 2 + i];
        cp <<= 4;
        if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
        else fail("bad hex digit in unicode escape");
    }
    append_utf8(out, cp);
    return pos + 2 + digits;
}

std::size_t read_iri(std::string_view s, std::size_t pos, std::string& out) {
    ++pos;  // '<'
    for (;;) {
        if (pos >= s.size()) fail("unterminated IRI");
        char c = s[pos];
        if (c == '>') return pos + 1;
        if (c == '\\') {
            if (pos + 1 < s.size() && (s[pos + 1] == 'u' || s[pos + 1] == 'U')) {
                pos = read_uchar(s, pos, out);
                continue;
            }
            fail("invalid escape in IRI");
        }
        if (is_ws(c) || c == '<' || c == '"') fail("invalid character in IRI");
        out.push_back(c);
        ++pos;
    }
}

bool is_label_char(char c) { return !is_ws(c) && c != '<' && c != '"' && c != '#'; }

std::size_t read_blank(std::string_view s, std::size_t pos, std::string& out) {
    if (pos + 1 >= s.size() || s[pos + 1] != ':') fail("expected '_:' blank node");
    std::size_t end = pos + 2;
    while (end < s.size() && is_label_char(s[end])) ++end;
    // a trailing '.' belongs to the statement terminator
    while (end > pos + 2 && s[end - 1] == '.') --end;
    if (end == pos + 2) fail("empty blank node label");
    out.append(s.substr(pos, end - pos));
    return end;
}

std::size_t read_literal(std::string_view s, std::size_t pos, std::string& out) {
    out.push_back('"');
    ++pos;
    for (;;) {
        if (pos >= s.size()) fail("unterminated literal");
        char c = s[pos];
        if (c == '"') break;
        if (c == '\n' || c == '\r') fail("raw line break in literal");
        if (c != '\\') {
            out.push_back(c);
            ++pos;
            continue;
        }
        if (pos + 1 >= s.size()) fail("truncated escape in literal");
        char e = s[pos + 1];
        switch (e) {
            case 't': out.push_back('\t'); break;
            case 'b': out.push_back('\b'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 'f': out.push_back('\f'); break;
            case '"': out.push_back('"'); break;
            case '\'': out.push_back('\''); break;
            case '\\': out.push_back('\\'); break;
            case 'u':
            case 'U': pos = read_uchar(s, pos, out); continue;
            default: fail(std::string("invalid escape \\") + e + " in literal");
        }
        pos += 2;
    }
    out.push_back('"');
    ++pos;
    if (pos < s.size() && s[pos] == '@') {
        std::size_t end = pos + 1;
        while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '-')) ++end;
        if (end == pos + 1 || !std::isalpha(static_cast<unsigned char>(s[pos + 1]))) fail("malformed language tag");
        out.append(s.substr(pos, end - pos));
        return end;
    }
    if (pos + 1 < s.size() && s[pos] == '^' && s[pos + 1] == '^') {
        pos += 2;
        if (pos >= s.size() || s[pos] != '<') fail("datatype must be an IRI");
        out.append("^^<");
        pos = read_iri(s, pos, out);
        out.push_back('>');
    }
    return pos;
}

void append_iri_escaped(std::string& out, std::string_view iri) {
    static const char* hex = "0123456789ABCDEF";
    for (char ch : iri) {
        auto c = static_cast<unsigned char>(ch);
        if (c <= 0x20 || ch == '<' || ch == '>' || ch == '"' || ch == '{' || ch == '}' || ch == '|' ||
            ch == '^' || ch == '`' || ch == '\\') {
            out += "\\u00";
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        } else {
            out.push_back(ch);
        }
    }
}

// Line source over either a std::istream or a gzip stream.
class LineSource {
public:
    virtual ~LineSource() = default;
    virtual bool next(std::string& line) = 0;
};

class StreamLines : public LineSource {
public:
    explicit StreamLines(std::istream& in) : in_(in) {}
    bool next(std::string& line) override { return static_cast<bool>(std::getline(in_, line)); }

private:
    std::istream& in_;
};

class GzipLines : public LineSource {
public:
    explicit GzipLines(const std::filesystem::path& path) : file_(gzopen(path.string().c_str(), "rb")) {
        if (!file_) throw std::runtime_error("cannot open " + path.string());
    }
    ~GzipLines() override { gzclose(file_); }
    GzipLines(const GzipLines&) = delete;
    GzipLines& operator=(const GzipLines&) = delete;

    bool next(std::string& line) override {
        line.clear();
        for (;;) {
            if (pos_ == len_) {
                int n = gzread(file_, buf_, sizeof(buf_));
                if (n < 0) throw std::runtime_error("gzip read error");
                if (n == 0) return !line.empty();
                len_ = static_cast<std::size_t>(n);
                pos_ = 0;
            }
            const char* start = buf_ + pos_;
            const void* nl = std::memchr(start, '\n', len_ - pos_);
            if (nl) {
                std::size_t take = static_cast<std::size_t>(static_cast<const char*>(nl) - start);
                line.append(start, take);
                pos_ += take + 1;
                return true;
            }
            line.append(start, len_ - pos_);
            pos_ = len_;
        }
    }

private:
    gzFile file_;
    char buf_[1 << 16];
    std::size_t pos_ = 0;
    std::size_t len_ = 0;
};

ParseStats parse_lines(LineSource& src, const TripleSink& sink, const ParseOptions& options) {
    ParseStats stats;
    std::string line;
    while (src.next(line)) {
        ++stats.lines;
        try {
            if (auto t = parse_ntriples_line(line)) {
                ++stats.triples;
                sink(std::move(*t));
            }
        } catch (const std::invalid_argument& e) {
            if (options.strict) throw NTriplesError(stats.lines, e.what());
            stats.diagnostics.push_back({stats.lines, e.what()});
        }
    }
    return stats;
}

} // namespace

std::size_t read_term(std::string_view text, std::size_t pos, std::string& out) {
    pos = skip_ws(text, pos);
    if (pos >= text.size()) fail("expected a term");
    switch (text[pos]) {
        case '<': return read_iri(text, pos, out);
        case '_': return read_blank(text, pos, out);
        case '"': return read_literal(text, pos, out);
        default: fail("expected '<', '_:' or '\"' to start a term");
    }
}

std::optional<RawTriple> parse_ntriples_line(std::string_view line) {
    std::size_t pos = skip_ws(line, 0);
    if (pos == line.size() || line[pos] == '#') return std::nullopt;

    RawTriple t;
    pos = skip_ws(line, pos);
    if (line[pos] == '"') fail("subject cannot be a literal");
    pos = read_term(line, pos, t.subject);
    pos = skip_ws(line, pos);
    if (pos >= line.size() || line[pos] != '<') fail("predicate must be an IRI");
    pos = read_term(line, pos, t.predicate);
    pos = read_term(line, pos, t.object);
    pos = skip_ws(line, pos);
    if (pos >= line.size() || line[pos] != '.') fail("expected '.' at end of statement");
    pos = skip_ws(line, pos + 1);
    if (pos < line.size() && line[pos] != '#') fail("unexpected text after '.'");
    return t;
}

ParseStats parse_ntriples(std::istream& in, const TripleSink& sink, const ParseOptions& options) {
    StreamLines src(in);
    return parse_lines(src, sink, options);
}

ParseStats parse_ntriples_file(const std::filesystem::path& path, const TripleSink& sink,
                               const ParseOptions& options) {
    if (options.gzip) {
        GzipLines src(path);
        return parse_lines(src, sink, options);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse_ntriples(in, sink, options);
}

std::string format_term(std::string_view term) {
    std::string out;
    if (term.starts_with('"')) {
        std::size_t close = term.rfind('"');
        if (close == 0) throw std::invalid_argument("malformed literal term");
        out.push_back('"');
        for (char c : term.substr(1, close - 1)) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                default: out.push_back(c);
            }
        }
        out.push_back('"');
        out.append(term.substr(close + 1));
        return out;
    }
    if (term.starts_with("_:")) return std::string(term);
    out.push_back('<');
    append_iri_escaped(out, term);
    out.push_back('>');
    return out;
}

std::string format_triple(const RawTriple& t) {
    return format_term(t.subject) + " " + format_term(t.predicate) + " " + format_term(t.object) + " .";
}

} // namespace bmx
