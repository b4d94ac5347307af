#include <bmx/bmatrix.hpp>
#include <bmx/oracle.hpp>
#include <bmx/synthetic.hpp>

#include <gtest/gtest.h>

#include <random>

using bmx::BMatrixStore;
using bmx::Id;
using bmx::IdTriple;
using bmx::PredicateObject;
using bmx::SubjectObject;
using bmx::SubjectPredicate;

namespace {

// Hand example: two subjects, two predicates, two objects.
BMatrixStore example_store(bmx::StoreConfig cfg = {}) {
    std::vector<IdTriple> t{{1, 1, 1}, {2, 1, 2}, {1, 2, 2}, {2, 2, 1}};
    cfg.predicate_sample_period = 2;
    return BMatrixStore(t, {2, 2, 2}, cfg);
}

std::vector<std::uint64_t> row_of(const bmx::K2Tree& t, std::uint64_t r) { return t.row(r); }

} // namespace

TEST(BMatrix, ExampleMatrices) {
    auto s = example_store();
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(row_of(s.subject_tree(), 0), (std::vector<std::uint64_t>{0, 3}));
    EXPECT_EQ(row_of(s.subject_tree(), 1), (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(row_of(s.object_tree(), 0), (std::vector<std::uint64_t>{0, 2}));
    EXPECT_EQ(row_of(s.object_tree(), 1), (std::vector<std::uint64_t>{1, 3}));
    EXPECT_EQ(s.predicates().starts(), (std::vector<std::uint64_t>{0, 2, 4}));
    EXPECT_EQ(s.predicates().samples(), (std::vector<Id>{1, 2, 2}));
}

TEST(BMatrix, ExampleQueries) {
    auto s = example_store();
    EXPECT_TRUE(s.contains(1, 1, 1));
    EXPECT_FALSE(s.contains(1, 1, 2));

    EXPECT_EQ(s.objects_of(2, 2), (std::vector<Id>{1}));
    EXPECT_EQ(s.objects_of(1, 1), (std::vector<Id>{1}));

    EXPECT_EQ(s.subjects_of(1, 2), (std::vector<Id>{2}));
    EXPECT_EQ(s.subjects_of(2, 1), (std::vector<Id>{2}));

    EXPECT_EQ(s.predicates_between(1, 2), (std::vector<Id>{2}));
    EXPECT_EQ(s.predicates_between(1, 1), (std::vector<Id>{1}));
    EXPECT_EQ(s.predicates_between(2, 2), (std::vector<Id>{1}));

    EXPECT_EQ(s.subject_triples(1), (std::vector<PredicateObject>{{1, 1}, {2, 2}}));
    EXPECT_EQ(s.subject_triples(2), (std::vector<PredicateObject>{{1, 2}, {2, 1}}));

    EXPECT_EQ(s.object_triples(1), (std::vector<SubjectPredicate>{{1, 1}, {2, 2}}));
    EXPECT_EQ(s.object_triples(2), (std::vector<SubjectPredicate>{{2, 1}, {1, 2}}));

    EXPECT_EQ(s.predicate_triples(2), (std::vector<SubjectObject>{{2, 1}, {1, 2}}));
    EXPECT_EQ(s.predicate_triples(1), (std::vector<SubjectObject>{{1, 1}, {2, 2}}));

    EXPECT_EQ(s.all_triples(), (std::vector<IdTriple>{{1, 1, 1}, {2, 1, 2}, {2, 2, 1}, {1, 2, 2}}));
}

TEST(BMatrix, ExampleUnderEveryStrategy) {
    for (std::size_t t : {0u, 1u, 10u, 4u}) {
        auto s = example_store();
        s.set_thresholds({t, t});
        EXPECT_EQ(s.predicates_between(2, 2), (std::vector<Id>{1}));
        EXPECT_EQ(s.predicate_triples(2), (std::vector<SubjectObject>{{2, 1}, {1, 2}}));
    }
}

TEST(BMatrix, UnusedIdsGiveEmptyResults) {
    std::vector<IdTriple> t{{1, 2, 1}};
    BMatrixStore s(t, {3, 3, 3});
    EXPECT_TRUE(s.objects_of(3, 2).empty());
    EXPECT_TRUE(s.subject_triples(2).empty());
    EXPECT_TRUE(s.object_triples(3).empty());
    EXPECT_TRUE(s.predicate_triples(1).empty());
    EXPECT_TRUE(s.predicate_triples(3).empty());
    EXPECT_TRUE(s.predicates_between(3, 3).empty());
}

TEST(BMatrix, OutOfRangeIdsAreRejected) {
    auto s = example_store();
    EXPECT_THROW(s.subjects_of(1, 3), std::out_of_range);
    EXPECT_THROW(s.objects_of(0, 1), std::out_of_range);
    EXPECT_THROW(s.predicate_triples(3), std::out_of_range);
    EXPECT_THROW(BMatrixStore(std::vector<IdTriple>{{3, 1, 1}}, {2, 2, 2}), std::out_of_range);
}

TEST(BMatrix, EmptyStore) {
    BMatrixStore s(std::vector<IdTriple>{}, {0, 0, 0});
    EXPECT_EQ(s.size(), 0u);
    EXPECT_FALSE(s.contains(1, 1, 1));
    EXPECT_TRUE(s.objects_of(5, 5).empty());
    EXPECT_TRUE(s.all_triples().empty());
}

TEST(BMatrix, SingleTriple) {
    BMatrixStore s(std::vector<IdTriple>{{1, 1, 1}}, {1, 1, 1});
    EXPECT_EQ(s.all_triples(), (std::vector<IdTriple>{{1, 1, 1}}));
}

TEST(BMatrix, DuplicatesAndInputOrderDoNotMatter) {
    std::vector<IdTriple> a{{2, 1, 2}, {1, 1, 1}, {2, 1, 2}, {1, 2, 2}, {2, 2, 1}};
    BMatrixStore s(a, {2, 2, 2});
    EXPECT_EQ(s.size(), 4u);
    EXPECT_EQ(s.all_triples(), example_store().all_triples());
}

TEST(BMatrix, RandomDataAgainstOracle) {
    std::mt19937_64 rng(33);
    for (int round = 0; round < 6; ++round) {
        bmx::ZipfOptions zo;
        zo.triples = 3000;
        zo.subjects = 400;
        zo.objects = 700;
        zo.predicates = round % 2 ? 5 : 60;
        zo.seed = 100 + round;
        auto data = bmx::generate_zipf(zo);
        BMatrixStore s(data.triples, data.dims);
        bmx::oracle::TripleList tl(data.triples);
        ASSERT_EQ(s.all_triples(), tl.triples());
        for (int q = 0; q < 300; ++q) {
            const auto& t = data.triples[rng() % data.triples.size()];
            Id rs = 1 + rng() % data.dims.subjects, ro = 1 + rng() % data.dims.objects;
            Id rp = 1 + rng() % data.dims.predicates;
            ASSERT_EQ(s.contains(t.s, t.p, ro), bmx::oracle::contains(tl, t.s, t.p, ro));
            ASSERT_EQ(s.objects_of(t.s, t.p), bmx::oracle::objects_of(tl, t.s, t.p));
            ASSERT_EQ(s.subjects_of(t.p, t.o), bmx::oracle::subjects_of(tl, t.p, t.o));
            ASSERT_EQ(s.predicates_between(t.s, t.o), bmx::oracle::predicates_between(tl, t.s, t.o));
            ASSERT_EQ(s.predicates_between(rs, ro), bmx::oracle::predicates_between(tl, rs, ro));
            ASSERT_EQ(s.subject_triples(rs), bmx::oracle::subject_triples(tl, rs));
            ASSERT_EQ(s.object_triples(ro), bmx::oracle::object_triples(tl, ro));
            ASSERT_EQ(s.predicate_triples(rp), bmx::oracle::predicate_triples(tl, rp));
        }
    }
}

TEST(BMatrix, SpaceAccountsForAllParts) {
    auto s = example_store();
    auto sp = s.space();
    EXPECT_EQ(sp.subject_tree.total(), s.subject_tree().space().total());
    EXPECT_EQ(sp.predicate_index, s.predicates().size_in_bytes());
    EXPECT_EQ(sp.total(), sp.subject_tree.total() + sp.object_tree.total() + sp.predicate_index);
}
