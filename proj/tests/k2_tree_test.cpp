#include <bmx/binary_io.hpp>
#include <bmx/k2_tree.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using bmx::Cell;
using bmx::K2Config;
using bmx::K2Tree;
using bmx::VocabEncoding;

namespace {

std::string bits(const bmx::BitVector& b) {
    std::string s;
    for (std::size_t i = 0; i < b.size(); ++i) s += b[i] ? '1' : '0';
    return s;
}

struct Dense {
    std::uint64_t rows, cols;
    std::vector<char> cells;
    bool at(std::uint64_t r, std::uint64_t c) const { return cells[r * cols + c]; }
};

Dense random_matrix(std::mt19937_64& rng, std::uint64_t rows, std::uint64_t cols, double density,
                    std::vector<Cell>& points) {
    Dense d{rows, cols, std::vector<char>(rows * cols, 0)};
    std::bernoulli_distribution coin(density);
    points.clear();
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t c = 0; c < cols; ++c)
            if (coin(rng)) {
                d.cells[r * cols + c] = 1;
                points.push_back({r, c});
            }
    std::shuffle(points.begin(), points.end(), rng);
    return d;
}

std::vector<K2Config> configs() {
    std::vector<K2Config> out;
    out.push_back(K2Config::uniform(2));
    out.push_back(K2Config::uniform(4));
    out.push_back(K2Config::uniform(3));
    out.push_back(K2Config{});
    K2Config hybrid;
    hybrid.stages = {{4, 2}, {2, std::nullopt}};
    hybrid.leaf_size = 1;
    out.push_back(hybrid);
    for (auto enc : {VocabEncoding::Plain, VocabEncoding::ColsFull, VocabEncoding::ColsRank}) {
        for (unsigned leaf : {2u, 4u}) {
            K2Config c = hybrid;
            c.leaf_size = leaf;
            c.vocab_encoding = enc;
            out.push_back(c);
        }
    }
    return out;
}

// Column-sparse variant so the column encodings can be used.
std::vector<Cell> one_per_column(std::mt19937_64& rng, std::uint64_t rows, std::uint64_t cols) {
    std::vector<Cell> pts;
    for (std::uint64_t c = 0; c < cols; ++c)
        if (rng() % 4) pts.push_back({rng() % rows, c});
    return pts;
}

} // namespace

TEST(K2Tree, SingleCellLayout) {
    std::vector<Cell> pts{{0, 0}};
    K2Tree t(pts, 4, 4, K2Config::uniform(2));
    EXPECT_EQ(bits(t.t_bits()), "1000");
    EXPECT_EQ(bits(t.l_bits()), "1000");
    EXPECT_TRUE(t.cell(0, 0));
    EXPECT_FALSE(t.cell(3, 3));
}

TEST(K2Tree, EmptyMatrixLayout) {
    K2Tree t(std::span<const Cell>{}, 4, 4, K2Config::uniform(2));
    EXPECT_EQ(bits(t.t_bits()), "0000");
    EXPECT_EQ(t.l_bits().size(), 0u);
    EXPECT_FALSE(t.cell(2, 1));
    EXPECT_TRUE(t.col(0).empty());
    EXPECT_TRUE(t.row(3).empty());
}

TEST(K2Tree, FullMatrixLayout) {
    std::vector<Cell> pts;
    for (std::uint64_t r = 0; r < 4; ++r)
        for (std::uint64_t c = 0; c < 4; ++c) pts.push_back({r, c});
    K2Tree t(pts, 4, 4, K2Config::uniform(2));
    EXPECT_EQ(bits(t.t_bits()), "1111");
    EXPECT_EQ(bits(t.l_bits()), "1111111111111111");
    EXPECT_EQ(t.row(2, 1, 2), (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(t.col(3), (std::vector<std::uint64_t>{0, 1, 2, 3}));
    EXPECT_EQ(t.range(1, 1, 0, 1), (std::vector<Cell>{{1, 0}, {1, 1}}));
}

TEST(K2Tree, ChildrenBase) {
    std::vector<Cell> one{{0, 0}};
    K2Tree a(one, 4, 4, K2Config::uniform(2));
    EXPECT_EQ(a.children_base(0), 4u);
    EXPECT_THROW(a.children_base(1), std::invalid_argument);

    std::vector<Cell> all;
    for (std::uint64_t r = 0; r < 4; ++r)
        for (std::uint64_t c = 0; c < 4; ++c) all.push_back({r, c});
    K2Tree b(all, 4, 4, K2Config::uniform(2));
    EXPECT_EQ(b.children_base(3), 16u);
    EXPECT_EQ(b.children_base(0), 4u);
    EXPECT_THROW(b.children_base(4), std::invalid_argument);
}

TEST(K2Tree, SmallQueries) {
    std::vector<Cell> pts{{0, 0}};
    K2Tree t(pts, 4, 4, K2Config::uniform(2));
    EXPECT_EQ(t.row(0, 0, 3), (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(t.col(0, 1), (std::vector<std::uint64_t>{0}));
    EXPECT_TRUE(t.row(2, 1, 3).empty());
    EXPECT_TRUE(t.range(1, 3, 0, 3).empty());
}

TEST(K2Tree, RejectsOutOfBounds) {
    std::vector<Cell> pts{{4, 0}};
    EXPECT_THROW(K2Tree(pts, 4, 4, K2Config::uniform(2)), std::out_of_range);
    std::vector<Cell> ok{{1, 1}};
    K2Tree t(ok, 3, 5, K2Config::uniform(2));
    EXPECT_THROW(t.cell(3, 0), std::out_of_range);
    EXPECT_THROW(t.row(0, 2, 1), std::invalid_argument);
}

TEST(K2Tree, ZeroDimensionIsEmpty) {
    K2Tree t(std::span<const Cell>{}, 0, 10, K2Config{});
    EXPECT_EQ(t.count_ones(), 0u);
    EXPECT_EQ(t.level_count(), 0u);
}

TEST(K2Tree, PlanLevels) {
    K2Config def;
    // 4^5 * 2^r * 8 must cover the dimension
    EXPECT_EQ(bmx::plan_levels(8192, def), (std::vector<unsigned>{4, 4, 4, 4, 4}));
    EXPECT_EQ(bmx::plan_levels(8193, def), (std::vector<unsigned>{4, 4, 4, 4, 4, 2}));
    EXPECT_EQ(bmx::plan_levels(1, K2Config::uniform(2)), (std::vector<unsigned>{2}));
    EXPECT_EQ(bmx::plan_levels(4, K2Config::uniform(2)), (std::vector<unsigned>{2, 2}));
    EXPECT_EQ(bmx::plan_levels(5, K2Config::uniform(2)), (std::vector<unsigned>{2, 2, 2}));
    // a small matrix needs fewer of the bounded upper levels
    EXPECT_EQ(bmx::plan_levels(64, def), (std::vector<unsigned>{4, 2}));
}

TEST(K2Tree, ConfigValidation) {
    K2Config c;
    c.stages = {{2, std::nullopt}, {4, 2}};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = K2Config{};
    c.leaf_size = 3;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = K2Config{};
    c.stages = {{1, 2}};
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(K2Tree, RandomMatricesAgainstDenseOracle) {
    std::mt19937_64 rng(21);
    for (const auto& cfg : configs()) {
        for (int round = 0; round < 6; ++round) {
            const std::uint64_t rows = 1 + rng() % 70, cols = 1 + rng() % 70;
            std::vector<Cell> pts;
            Dense d{rows, cols, std::vector<char>(rows * cols, 0)};
            if (cfg.has_vocabulary() && cfg.vocab_encoding != VocabEncoding::Plain) {
                pts = one_per_column(rng, rows, cols);
                for (auto p : pts) d.cells[p.row * cols + p.col] = 1;
            } else {
                d = random_matrix(rng, rows, cols, round % 2 ? 0.05 : 0.4, pts);
            }
            K2Tree t(pts, rows, cols, cfg);
            ASSERT_GE(t.side(), std::max(rows, cols));
            std::set<Cell> want(pts.begin(), pts.end());
            ASSERT_EQ(t.count_ones(), want.size());
            for (std::uint64_t r = 0; r < rows; ++r)
                for (std::uint64_t c = 0; c < cols; ++c) ASSERT_EQ(t.cell(r, c), d.at(r, c));
            for (std::uint64_t r = 0; r < rows; ++r) {
                std::vector<std::uint64_t> exp;
                for (std::uint64_t c = 0; c < cols; ++c)
                    if (d.at(r, c)) exp.push_back(c);
                ASSERT_EQ(t.row(r), exp);
                if (!exp.empty()) ASSERT_EQ(t.row(r, 1), std::vector<std::uint64_t>{exp.front()});
            }
            for (std::uint64_t c = 0; c < cols; ++c) {
                std::vector<std::uint64_t> exp;
                for (std::uint64_t r = 0; r < rows; ++r)
                    if (d.at(r, c)) exp.push_back(r);
                ASSERT_EQ(t.col(c), exp);
                ASSERT_EQ(t.first_in_col(c), exp.empty() ? std::nullopt : std::optional(exp.front()));
            }
            for (int q = 0; q < 20; ++q) {
                std::uint64_t r1 = rng() % rows, r2 = rng() % rows, c1 = rng() % cols, c2 = rng() % cols;
                if (r1 > r2) std::swap(r1, r2);
                if (c1 > c2) std::swap(c1, c2);
                auto got = t.range(r1, r2, c1, c2);
                std::set<Cell> gs(got.begin(), got.end());
                ASSERT_EQ(gs.size(), got.size());
                std::set<Cell> exp;
                for (auto p : want)
                    if (p.row >= r1 && p.row <= r2 && p.col >= c1 && p.col <= c2) exp.insert(p);
                ASSERT_EQ(gs, exp);
                auto lo = std::min(c1, c2);
                std::vector<std::uint64_t> rowexp;
                for (std::uint64_t c = lo; c <= c2; ++c)
                    if (d.at(r1, c)) rowexp.push_back(c);
                ASSERT_EQ(t.row(r1, c1, c2), rowexp);
            }
        }
    }
}

TEST(K2Tree, RangeCallbackStopsEarly) {
    std::vector<Cell> pts;
    for (std::uint64_t i = 0; i < 10; ++i) pts.push_back({i, i});
    K2Tree t(pts, 10, 10, K2Config::uniform(2));
    int calls = 0;
    t.for_each_in_range(0, 9, 0, 9, [&](std::uint64_t, std::uint64_t) { return ++calls < 3; });
    EXPECT_EQ(calls, 3);
}

TEST(K2Tree, VocabularyIdsAreFrequencyRanked) {
    // three identical leaves and one different leaf
    std::vector<Cell> pts{{0, 0}, {0, 2}, {0, 4}, {1, 7}};
    K2Config cfg = K2Config::uniform(2, 2, VocabEncoding::Plain);
    K2Tree t(pts, 8, 8, cfg);
    ASSERT_EQ(t.vocabulary().size(), 2u);
    EXPECT_EQ(t.vocabulary().matrix(0), 1u);
    std::vector<std::uint64_t> ids;
    for (std::size_t i = 0; i < t.leaf_ids().size(); ++i) ids.push_back(t.leaf_ids()[i]);
    EXPECT_EQ(ids, (std::vector<std::uint64_t>{0, 0, 0, 1}));
}

TEST(K2Tree, ChildNavigationReconstructsSubmatrices) {
    std::mt19937_64 rng(8);
    for (const auto& cfg : configs()) {
        std::vector<Cell> pts;
        const std::uint64_t n = 40;
        if (cfg.has_vocabulary() && cfg.vocab_encoding != VocabEncoding::Plain) pts = one_per_column(rng, n, n);
        else random_matrix(rng, n, n, 0.1, pts);
        K2Tree t(pts, n, n, cfg);
        std::set<Cell> set(pts.begin(), pts.end());
        auto occupied = [&](std::uint64_t r0, std::uint64_t c0, std::uint64_t side) {
            for (auto p : set)
                if (p.row >= r0 && p.row < r0 + side && p.col >= c0 && p.col < c0 + side) return true;
            return false;
        };
        // walk every internal node, tracking its submatrix origin
        struct Node {
            std::uint64_t pos, r0, c0;
            std::size_t level;
        };
        std::vector<Node> stack;
        const unsigned k0 = t.arity(0);
        for (unsigned i = 0; i < k0 * k0; ++i)
            stack.push_back({i, (i / k0) * t.submatrix_side(0), (i % k0) * t.submatrix_side(0), 0});
        std::size_t checked = 0;
        while (!stack.empty()) {
            auto nd = stack.back();
            stack.pop_back();
            const bool occ = occupied(nd.r0, nd.c0, t.submatrix_side(nd.level));
            ASSERT_EQ(t.bit(nd.pos), occ);
            if (!occ || nd.level + 1 == t.level_count()) continue;
            const std::uint64_t base = t.children_base(nd.pos);
            const unsigned k = t.arity(nd.level + 1);
            const std::uint64_t s = t.submatrix_side(nd.level + 1);
            ASSERT_EQ(t.level_of(base), nd.level + 1);
            for (unsigned i = 0; i < k * k; ++i)
                stack.push_back({base + i, nd.r0 + (i / k) * s, nd.c0 + (i % k) * s, nd.level + 1});
            ++checked;
        }
        EXPECT_GT(checked, 0u);
    }
}

TEST(K2Tree, SaveLoadRoundTrip) {
    std::mt19937_64 rng(12);
    for (const auto& cfg : configs()) {
        std::vector<Cell> pts = one_per_column(rng, 50, 90);
        K2Tree t(pts, 50, 90, cfg);
        std::stringstream ss;
        bmx::BinaryWriter w(ss);
        t.save(w);
        bmx::BinaryReader r(ss);
        auto u = K2Tree::load(r);
        EXPECT_EQ(u.config(), cfg);
        EXPECT_EQ(u.side(), t.side());
        for (std::uint64_t c = 0; c < 90; ++c) ASSERT_EQ(u.col(c), t.col(c));
        EXPECT_EQ(u.space().total(), t.space().total());
    }
}

TEST(K2Tree, TruncatedInputIsRejected) {
    std::vector<Cell> pts{{1, 2}, {3, 3}};
    K2Tree t(pts, 8, 8, K2Config{});
    std::stringstream ss;
    bmx::BinaryWriter w(ss);
    t.save(w);
    std::string s = ss.str();
    std::stringstream cut(s.substr(0, s.size() - 3));
    bmx::BinaryReader r(cut);
    EXPECT_THROW(K2Tree::load(r), std::runtime_error);
}
