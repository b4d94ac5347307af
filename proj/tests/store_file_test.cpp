#include <bmx/store_file.hpp>
#include <bmx/synthetic.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace bmx;

TEST(StoreFile, RoundTripWithDictionary) {
    auto [dict, triples] = build_dictionary({{"a", "p", "b"}, {"b", "p", "\"x\""}, {"a", "q", "a"}});
    BMatrixStore store(triples, dict.dimensions());
    std::stringstream ss;
    auto bytes = write_store(ss, dict, store);
    EXPECT_EQ(bytes, ss.str().size());
    EXPECT_EQ(ss.str().substr(0, 4), "BMX1");
    auto back = read_store(ss);
    EXPECT_EQ(back.store.all_triples(), store.all_triples());
    EXPECT_EQ(back.dictionary.subject_id("b"), dict.subject_id("b"));
    EXPECT_EQ(back.store.thresholds(), store.thresholds());
}

TEST(StoreFile, RoundTripKeepsConfiguration) {
    ZipfOptions zo;
    zo.triples = 2000;
    auto data = generate_zipf(zo);
    K2Config tree;
    tree.vocab_encoding = VocabEncoding::ColsRank;
    tree.sampling = SamplePreset::Dense;
    auto cfg = StoreConfig::with_trees(tree);
    cfg.predicate_sample_period = 37;
    cfg.thresholds = {3, 50};
    BMatrixStore store(data.triples, data.dims, cfg);
    std::stringstream ss;
    write_store(ss, Dictionary{}, store);
    auto back = read_store(ss);
    EXPECT_EQ(back.store.subject_tree().config(), tree);
    EXPECT_EQ(back.store.predicates().sample_period(), 37u);
    EXPECT_EQ(back.store.thresholds(), (Thresholds{3, 50}));
    EXPECT_EQ(back.store.all_triples(), store.all_triples());
    EXPECT_EQ(back.store.space().total(), store.space().total());
}

TEST(StoreFile, EmptyStore) {
    BMatrixStore store(std::vector<IdTriple>{}, {0, 0, 0});
    std::stringstream ss;
    write_store(ss, Dictionary{}, store);
    auto back = read_store(ss);
    EXPECT_EQ(back.store.size(), 0u);
}

TEST(StoreFile, RejectsGarbageAndTruncation) {
    std::stringstream bad("NOPE1234");
    EXPECT_THROW(read_store(bad), std::runtime_error);

    auto [dict, triples] = build_dictionary({{"a", "p", "b"}});
    BMatrixStore store(triples, dict.dimensions());
    std::stringstream ss;
    write_store(ss, dict, store);
    std::string s = ss.str();
    for (std::size_t cut : {std::size_t{5}, s.size() / 2, s.size() - 1}) {
        std::stringstream part(s.substr(0, cut));
        EXPECT_THROW(read_store(part), std::runtime_error) << cut;
    }
}

TEST(StoreFile, MismatchedDictionaryIsRejected) {
    auto [dict, triples] = build_dictionary({{"a", "p", "b"}});
    BMatrixStore store(std::vector<IdTriple>{{1, 1, 1}, {2, 1, 1}}, {2, 1, 1});
    std::stringstream ss;
    EXPECT_THROW(write_store(ss, dict, store), std::invalid_argument);
}
