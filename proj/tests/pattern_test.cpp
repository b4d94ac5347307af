#include <bmx/dictionary.hpp>
#include <bmx/oracle.hpp>
#include <bmx/pattern.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace bmx;

TEST(Pattern, ParsesTermsIdsAndVariables) {
    auto p = PatternSpec::parse("?x <http://p> \"v\"@en .");
    EXPECT_EQ(p.terms[0].kind, PatternTerm::Kind::Unbound);
    EXPECT_EQ(p.terms[1].kind, PatternTerm::Kind::Term);
    EXPECT_EQ(p.terms[1].text, "http://p");
    EXPECT_EQ(p.terms[2].text, "\"v\"@en");
    EXPECT_EQ(p.shape(), Shape::xPO);

    auto q = PatternSpec::parse("#3 ? #7");
    EXPECT_EQ(q.terms[0].kind, PatternTerm::Kind::NumericId);
    EXPECT_EQ(q.terms[0].id, 3u);
    EXPECT_EQ(q.shape(), Shape::SxO);
    EXPECT_EQ(PatternSpec::parse(q.to_string()), q);
}

TEST(Pattern, RejectsMalformed) {
    EXPECT_THROW(PatternSpec::parse("? ?"), std::invalid_argument);
    EXPECT_THROW(PatternSpec::parse("#0 ? ?"), std::invalid_argument);
    EXPECT_THROW(PatternSpec::parse("? ? ? ?"), std::invalid_argument);
}

TEST(Pattern, ShapeNamesAndFamilies) {
    for (auto s : all_shapes) EXPECT_EQ(parse_shape(shape_name(s)), s);
    EXPECT_EQ(family_of(Shape::SPx), Family::FixedPredicate);
    EXPECT_EQ(family_of(Shape::xPx), Family::FixedPredicate);
    EXPECT_EQ(family_of(Shape::SxO), Family::UnboundPredicate);
    EXPECT_EQ(family_of(Shape::xxx), Family::FullScan);
    EXPECT_FALSE(parse_shape("s"));
}

TEST(Pattern, ResolveAgainstDictionary) {
    auto [d, triples] = build_dictionary({{"a", "p", "b"}, {"b", "p", "a"}});
    auto q = resolve(PatternSpec::parse("<a> <p> ?"), d);
    EXPECT_EQ(q.s, 1u);
    EXPECT_EQ(q.p, 1u);
    EXPECT_FALSE(q.o);
    EXPECT_THROW(resolve(PatternSpec::parse("<zz> ? ?"), d), TermNotFound);
    EXPECT_THROW(resolve(PatternSpec::parse("#9 ? ?"), d), std::out_of_range);
}

TEST(Pattern, EvaluateMatchesOracleForEveryShape) {
    std::vector<IdTriple> t{{1, 1, 1}, {2, 1, 2}, {1, 2, 2}, {2, 2, 1}, {3, 1, 2}};
    BMatrixStore store(t, {3, 2, 2});
    oracle::TripleList tl(t);
    for (Id s = 1; s <= 3; ++s)
        for (Id p = 1; p <= 2; ++p)
            for (Id o = 1; o <= 2; ++o)
                for (int mask = 0; mask < 8; ++mask) {
                    TriplePattern q;
                    if (mask & 1) q.s = s;
                    if (mask & 2) q.p = p;
                    if (mask & 4) q.o = o;
                    ASSERT_EQ(evaluate(store, q), oracle::match(tl, q));
                }
}

TEST(Pattern, ReadPatternsSkipsCommentsButNotIds) {
    std::istringstream in("# header\n\n#1 ? ?\n  ? <p> ? .\n");
    auto v = read_patterns(in);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].shape(), Shape::Sxx);
    EXPECT_EQ(v[1].shape(), Shape::xPx);
}
