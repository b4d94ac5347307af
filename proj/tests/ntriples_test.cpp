#include <bmx/ntriples.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <zlib.h>

using bmx::parse_ntriples_line;
using bmx::RawTriple;

TEST(NTriples, MinimalStatement) {
    auto t = parse_ntriples_line("<a> <p> <b> .");
    ASSERT_TRUE(t);
    EXPECT_EQ(*t, (RawTriple{"a", "p", "b"}));
}

TEST(NTriples, LanguageLiteral) {
    auto t = parse_ntriples_line("<a> <p> \"x\"@en .");
    ASSERT_TRUE(t);
    EXPECT_EQ(t->object, "\"x\"@en");
}

TEST(NTriples, TypedLiteralAndBlankNodes) {
    auto t = parse_ntriples_line("_:b0 <http://ex.org/p> \"42\"^^<http://www.w3.org/2001/XMLSchema#int> .");
    ASSERT_TRUE(t);
    EXPECT_EQ(t->subject, "_:b0");
    EXPECT_EQ(t->object, "\"42\"^^<http://www.w3.org/2001/XMLSchema#int>");
}

TEST(NTriples, CommentsAndBlankLines) {
    EXPECT_FALSE(parse_ntriples_line("# comment"));
    EXPECT_FALSE(parse_ntriples_line("   "));
    EXPECT_FALSE(parse_ntriples_line(""));
    auto t = parse_ntriples_line("<a> <p> <b> . # trailing");
    ASSERT_TRUE(t);
}

TEST(NTriples, EscapesAreDecoded) {
    auto t = parse_ntriples_line(R"(<a> <p> "tab\there \"q\" é \U0001F600" .)");
    ASSERT_TRUE(t);
    EXPECT_EQ(t->object, "\"tab\there \"q\" \xC3\xA9 \xF0\x9F\x98\x80\"");
}

TEST(NTriples, MalformedLines) {
    EXPECT_THROW(parse_ntriples_line("<a> <p> <b>"), std::invalid_argument);
    EXPECT_THROW(parse_ntriples_line("<a> <p> ."), std::invalid_argument);
    EXPECT_THROW(parse_ntriples_line("<a <p> <b> ."), std::invalid_argument);
    EXPECT_THROW(parse_ntriples_line("\"lit\" <p> <b> ."), std::invalid_argument);
    EXPECT_THROW(parse_ntriples_line("<a> _:x <b> ."), std::invalid_argument);
    EXPECT_THROW(parse_ntriples_line("<a> <p> \"open ."), std::invalid_argument);
    EXPECT_THROW(parse_ntriples_line("<a> <p> <b> . extra"), std::invalid_argument);
}

TEST(NTriples, StreamSkipsAndReports) {
    std::istringstream in("<a> <p> <b> .\nnot a triple\n\n<b> <p> <a> .\n");
    std::vector<RawTriple> got;
    auto stats = bmx::parse_ntriples(in, [&](RawTriple&& t) { got.push_back(std::move(t)); });
    EXPECT_EQ(got.size(), 2u);
    EXPECT_EQ(stats.lines, 4u);
    EXPECT_EQ(stats.triples, 2u);
    ASSERT_EQ(stats.diagnostics.size(), 1u);
    EXPECT_EQ(stats.diagnostics[0].line, 2u);
}

TEST(NTriples, StrictModeThrowsWithLine) {
    std::istringstream in("<a> <p> <b> .\n<a> <p>\n");
    bmx::ParseOptions opts;
    opts.strict = true;
    try {
        bmx::parse_ntriples(in, [](RawTriple&&) {}, opts);
        FAIL() << "expected NTriplesError";
    } catch (const bmx::NTriplesError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(NTriples, FormatRoundTrips) {
    for (std::string line : {R"(<http://a/b> <http://p> "say \"hi\"\n"@en-GB .)", R"(_:x <p> <o> .)",
                             R"(<s> <p> "1"^^<http://t> .)", R"(<s> <p> "back\\slash" .)"}) {
        auto t = parse_ntriples_line(line);
        ASSERT_TRUE(t) << line;
        auto again = parse_ntriples_line(bmx::format_triple(*t));
        ASSERT_TRUE(again);
        EXPECT_EQ(*again, *t) << line;
    }
}

TEST(NTriples, ReadsGzipFiles) {
    auto path = std::filesystem::temp_directory_path() / "bmx_ntriples_test.nt.gz";
    const std::string text = "<a> <p> <b> .\n<b> <p> \"c\" .\n";
    gzFile gz = gzopen(path.string().c_str(), "wb");
    ASSERT_NE(gz, nullptr);
    gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
    gzclose(gz);

    bmx::ParseOptions opts;
    opts.gzip = true;
    std::vector<RawTriple> got;
    auto stats = bmx::parse_ntriples_file(path, [&](RawTriple&& t) { got.push_back(std::move(t)); }, opts);
    std::filesystem::remove(path);
    EXPECT_EQ(stats.triples, 2u);
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[1].object, "\"c\"");
}

TEST(NTriples, MissingFileThrows) {
    EXPECT_THROW(bmx::parse_ntriples_file("/nonexistent/file.nt", [](RawTriple&&) {}), std::runtime_error);
}
