#include <bmx/binary_io.hpp>
#include <bmx/dac.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using bmx::Dac;

namespace {

std::vector<std::uint64_t> chunks(const Dac::Level& l) {
    std::vector<std::uint64_t> v;
    for (std::size_t i = 0; i < l.chunks.size(); ++i) v.push_back(l.chunks[i]);
    return v;
}

std::string bits(const bmx::BitVector& b) {
    std::string s;
    for (std::size_t i = 0; i < b.size(); ++i) s += b[i] ? '1' : '0';
    return s;
}

} // namespace

TEST(Dac, SmallValuesUseOneLevel) {
    std::vector<std::uint64_t> v{0, 1, 2};
    Dac d(v, 2);
    ASSERT_EQ(d.level_count(), 1u);
    EXPECT_EQ(chunks(d.level(0)), v);
    EXPECT_EQ(bits(d.level(0).more), "000");
}

TEST(Dac, HandChunkedLayout) {
    // 5 = 01|01, 1 = 01, 9 = 10|01 in base 4
    std::vector<std::uint64_t> v{5, 1, 9};
    Dac d(v, 2);
    ASSERT_EQ(d.level_count(), 2u);
    EXPECT_EQ(chunks(d.level(0)), (std::vector<std::uint64_t>{1, 1, 1}));
    EXPECT_EQ(bits(d.level(0).more), "101");
    EXPECT_EQ(chunks(d.level(1)), (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(bits(d.level(1).more), "00");
    EXPECT_EQ(d[2], 9u);
    EXPECT_EQ(d[0], 5u);
    EXPECT_EQ(d[1], 1u);
}

TEST(Dac, SingleZero) {
    for (unsigned b : {1u, 3u, 8u}) {
        std::vector<std::uint64_t> v{0};
        Dac d(v, b);
        EXPECT_EQ(d.access(0), 0u);
        EXPECT_EQ(d.total_chunks(), 1u);
    }
}

TEST(Dac, AccessOutOfRangeThrows) {
    std::vector<std::uint64_t> v{1, 2};
    Dac d(v);
    EXPECT_THROW(d.access(2), std::out_of_range);
}

TEST(Dac, RandomRoundTrip) {
    std::mt19937_64 rng(9);
    for (unsigned b : {1u, 2u, 4u, 8u, 13u}) {
        std::vector<std::uint64_t> v(2000);
        for (auto& x : v) x = rng() >> (rng() % 64);
        v[7] = ~0ULL;
        Dac d(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) ASSERT_EQ(d[i], v[i]) << "b=" << b;

        std::stringstream ss;
        bmx::BinaryWriter w(ss);
        d.save(w);
        bmx::BinaryReader r(ss);
        auto e = Dac::load(r, bmx::SamplePreset::Dense);
        ASSERT_EQ(e.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i) ASSERT_EQ(e[i], v[i]);
    }
}

TEST(Dac, EmptySequence) {
    Dac d(std::span<const std::uint64_t>{});
    EXPECT_TRUE(d.empty());
    EXPECT_EQ(d.level_count(), 0u);
}
