#include "bmx/k2_tree.hpp"

#include <bit>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "bmx/binary_io.hpp"

namespace bmx {

namespace {

constexpr std::uint64_t max_side = std::uint64_t{1} << 32;

// a * b saturating at max_side + 1.
std::uint64_t capped_mul(std::uint64_t a, std::uint64_t b) {
    if (a > 0 && b > (max_side + 1) / a) return max_side + 1;
    return std::min(a * b, max_side + 1);
}

} // namespace

void K2Config::validate() const {
    if (stages.empty()) throw std::invalid_argument("k2 config needs at least one stage");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (stages[i].k < 2 || stages[i].k > 16) throw std::invalid_argument("stage arity must be in [2, 16]");
        if (!stages[i].levels && i + 1 != stages.size())
            throw std::invalid_argument("only the last stage may use the remaining levels");
    }
    if (leaf_size == 0 || !std::has_single_bit(leaf_size) || leaf_size > LeafVocabulary::max_leaf_size)
        throw std::invalid_argument("leaf size must be 1 (no vocabulary) or a power of two up to 8");
    if (dac_chunk_width == 0 || dac_chunk_width > 64) throw std::invalid_argument("DAC chunk width must be in [1, 64]");
}

K2Config K2Config::uniform(unsigned k, unsigned leaf_size, VocabEncoding encoding) {
    K2Config c;
    c.stages = {{k, std::nullopt}};
    c.leaf_size = leaf_size;
    c.vocab_encoding = encoding;
    return c;
}

void K2Config::save(BinaryWriter& out) const {
    out.u8(static_cast<std::uint8_t>(stages.size()));
    for (const auto& s : stages) {
        out.u8(static_cast<std::uint8_t>(s.k));
        out.u8(s.levels ? 1 : 0);
        out.u32(s.levels.value_or(0));
    }
    out.u8(static_cast<std::uint8_t>(leaf_size));
    out.u8(static_cast<std::uint8_t>(vocab_encoding));
    out.u8(static_cast<std::uint8_t>(sampling));
    out.u8(static_cast<std::uint8_t>(dac_chunk_width));
}

K2Config K2Config::load(BinaryReader& in) {
    K2Config c;
    c.stages.clear();
    std::size_t n = in.u8();
    for (std::size_t i = 0; i < n; ++i) {
        K2Stage s;
        s.k = in.u8();
        bool bounded = in.u8() != 0;
        std::uint32_t levels = in.u32();
        if (bounded) s.levels = levels;
        c.stages.push_back(s);
    }
    c.leaf_size = in.u8();
    auto enc = in.u8();
    auto sampling = in.u8();
    if (enc > 2 || sampling > 1) throw std::runtime_error("corrupt k2 config");
    c.vocab_encoding = static_cast<VocabEncoding>(enc);
    c.sampling = static_cast<SamplePreset>(sampling);
    c.dac_chunk_width = in.u8();
    c.validate();
    return c;
}

std::vector<unsigned> plan_levels(std::uint64_t dimension, const K2Config& config) {
    config.validate();
    const std::uint64_t leaf = config.has_vocabulary() ? config.leaf_size : 1;
    const std::uint64_t target = std::max<std::uint64_t>(1, (dimension + leaf - 1) / leaf);
    if (target > max_side) throw std::invalid_argument("k2-tree side exceeds 2^32");

    const bool open = !config.stages.back().levels.has_value();
    const std::size_t fixed = open ? config.stages.size() - 1 : config.stages.size();
    const unsigned open_k = open ? config.stages.back().k : 0;

    std::vector<unsigned> counts(fixed, 0);
    std::vector<unsigned> best_counts;
    unsigned best_extra = 0;
    std::uint64_t best_side = 0;
    unsigned best_levels = 0;
    bool found = false;

    for (;;) {
        std::uint64_t prod = 1;
        unsigned levels = 0;
        for (std::size_t i = 0; i < fixed; ++i) {
            for (unsigned c = 0; c < counts[i]; ++c) prod = capped_mul(prod, config.stages[i].k);
            levels += counts[i];
        }
        unsigned extra = 0;
        bool ok = true;
        if (open) {
            while (prod < target || levels + extra == 0) {
                prod = capped_mul(prod, open_k);
                ++extra;
            }
        } else {
            ok = prod >= target && levels > 0;
        }
        if (ok && prod <= max_side) {
            unsigned total = levels + extra;
            // counts are enumerated in increasing lexicographic order, so a
            // later equal candidate spends more levels in earlier stages.
            if (!found || prod < best_side || (prod == best_side && total <= best_levels)) {
                found = true;
                best_side = prod;
                best_levels = total;
                best_counts = counts;
                best_extra = extra;
            }
        }
        // odometer over the bounded stages, last stage fastest
        std::size_t i = fixed;
        bool advanced = false;
        while (i-- > 0) {
            if (counts[i] < *config.stages[i].levels) {
                ++counts[i];
                std::fill(counts.begin() + static_cast<std::ptrdiff_t>(i) + 1, counts.end(), 0);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    if (!found) throw std::invalid_argument("matrix is too large for the configured k2-tree levels");

    std::vector<unsigned> arity;
    for (std::size_t i = 0; i < fixed; ++i) arity.insert(arity.end(), best_counts[i], config.stages[i].k);
    arity.insert(arity.end(), best_extra, open_k);
    if (capped_mul(best_side, leaf) > max_side) throw std::invalid_argument("k2-tree side exceeds 2^32");
    return arity;
}

K2Tree::K2Tree(std::span<const Cell> points, std::uint64_t n_rows, std::uint64_t n_cols, K2Config config)
    : config_(std::move(config)), n_rows_(n_rows), n_cols_(n_cols) {
    config_.validate();
    for (const auto& p : points) {
        if (p.row >= n_rows_ || p.col >= n_cols_) throw std::out_of_range("k2-tree point outside matrix bounds");
    }
    if (n_rows_ == 0 || n_cols_ == 0) {
        side_ = 0;
        finish_layout();
        return;
    }

    arity_ = plan_levels(std::max(n_rows_, n_cols_), config_);
    const std::size_t height = arity_.size();
    const std::uint64_t leaf = has_vocabulary() ? config_.leaf_size : 1;

    side_ = leaf;
    for (auto k : arity_) side_ *= k;

    sub_side_.assign(height, 0);
    std::uint64_t s = side_;
    for (std::size_t l = 0; l < height; ++l) {
        s /= arity_[l];
        sub_side_[l] = s;
    }

    // weight[l]: place value of the level-l child digit in the cell key.
    std::vector<std::uint64_t> weight(height + 1, 1);
    weight[height] = 1;
    std::uint64_t w = leaf * leaf;
    for (std::size_t l = height; l-- > 0;) {
        weight[l] = w;
        w *= std::uint64_t{arity_[l]} * arity_[l];
    }

    std::vector<std::uint64_t> keys;
    keys.reserve(points.size());
    for (const auto& p : points) {
        std::uint64_t key = (p.row % leaf) * leaf + (p.col % leaf);
        for (std::size_t l = 0; l < height; ++l) {
            std::uint64_t k = arity_[l];
            std::uint64_t digit = ((p.row / sub_side_[l]) % k) * k + (p.col / sub_side_[l]) % k;
            key += digit * weight[l];
        }
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    ones_ = keys.size();

    const std::size_t rate = sample_rate_for(config_.sampling);
    BitVectorBuilder t;
    BitVectorBuilder l_bits;
    const std::size_t t_levels = has_vocabulary() ? height : height - 1;

    for (std::size_t l = 0; l < height; ++l) {
        BitVectorBuilder& out = l < t_levels ? t : l_bits;
        const std::uint64_t fanout = std::uint64_t{arity_[l]} * arity_[l];
        if (l == 0) {
            std::size_t base = out.size();
            out.append_zeros(fanout);
            for (auto key : keys) out.set(base + (key / weight[0]) % fanout);
            continue;
        }
        const std::uint64_t parent_weight = weight[l - 1];
        std::uint64_t parent = std::numeric_limits<std::uint64_t>::max();
        std::size_t base = 0;
        for (auto key : keys) {
            std::uint64_t pk = key / parent_weight;
            if (pk != parent) {
                parent = pk;
                base = out.size();
                out.append_zeros(fanout);
            }
            out.set(base + (key / weight[l]) % fanout);
        }
    }
    t_ = BitVector(std::move(t), rate);
    l_ = BitVector(std::move(l_bits), rate);

    if (has_vocabulary()) {
        const std::uint64_t cells = leaf * leaf;
        std::vector<std::uint64_t> masks;
        std::uint64_t current = std::numeric_limits<std::uint64_t>::max();
        for (auto key : keys) {
            if (key / cells != current) {
                current = key / cells;
                masks.push_back(0);
            }
            masks.back() |= std::uint64_t{1} << (key % cells);
        }

        struct Entry {
            std::size_t count = 0;
            std::size_t first = 0;
        };
        std::unordered_map<std::uint64_t, Entry> freq;
        std::vector<std::uint64_t> distinct;
        for (std::size_t i = 0; i < masks.size(); ++i) {
            auto [it, inserted] = freq.try_emplace(masks[i], Entry{0, i});
            if (inserted) distinct.push_back(masks[i]);
            ++it->second.count;
        }
        std::sort(distinct.begin(), distinct.end(), [&](std::uint64_t a, std::uint64_t b) {
            const Entry& ea = freq[a];
            const Entry& eb = freq[b];
            if (ea.count != eb.count) return ea.count > eb.count;
            return ea.first < eb.first;
        });
        std::unordered_map<std::uint64_t, std::uint64_t> id_of;
        id_of.reserve(distinct.size());
        for (std::size_t i = 0; i < distinct.size(); ++i) id_of.emplace(distinct[i], i);
        std::vector<std::uint64_t> ids;
        ids.reserve(masks.size());
        for (auto m : masks) ids.push_back(id_of[m]);

        vocab_ = LeafVocabulary(distinct, config_.leaf_size, config_.vocab_encoding, config_.sampling);
        leaf_ids_ = Dac(ids, config_.dac_chunk_width, config_.sampling);
    }
    finish_layout();
}

void K2Tree::finish_layout() {
    const std::size_t height = arity_.size();
    begin_.assign(height + 1, 0);
    child_offset_.assign(height, 0);
    leaf_offset_ = 0;
    if (height == 0) return;

    std::vector<std::uint64_t> ones_before(height, 0);
    std::uint64_t pos = 0;
    std::uint64_t nodes = 1;  // 1-bits at the previous level; the root counts as one
    for (std::size_t l = 0; l < height; ++l) {
        begin_[l] = pos;
        ones_before[l] = pos <= t_.size() ? t_.rank1_before(pos) : t_.count_ones();
        std::uint64_t fanout = std::uint64_t{arity_[l]} * arity_[l];
        pos += nodes * fanout;
        if (pos > t_.size() + l_.size()) throw std::runtime_error("corrupt k2-tree: level exceeds bitmaps");
        if (pos <= t_.size()) nodes = t_.rank1_before(pos) - ones_before[l];
        else nodes = 0;
    }
    begin_[height] = pos;
    if (pos != t_.size() + l_.size()) throw std::runtime_error("corrupt k2-tree: bitmap sizes do not match levels");

    for (std::size_t l = 0; l + 1 < height; ++l) {
        std::int64_t fanout = static_cast<std::int64_t>(arity_[l + 1]) * arity_[l + 1];
        child_offset_[l] =
            static_cast<std::int64_t>(begin_[l + 1]) - fanout * static_cast<std::int64_t>(ones_before[l] + 1);
    }
    leaf_offset_ = ones_before[height - 1] + 1;
}

void K2Tree::check_range(std::uint64_t r1, std::uint64_t r2, std::uint64_t c1, std::uint64_t c2) const {
    if (r1 > r2 || c1 > c2) throw std::invalid_argument("k2-tree query range is inverted");
    if (r2 >= n_rows_ || c2 >= n_cols_) throw std::out_of_range("k2-tree query range outside matrix bounds");
}

bool K2Tree::cell(std::uint64_t r, std::uint64_t c) const {
    if (r >= n_rows_ || c >= n_cols_) throw std::out_of_range("k2-tree cell outside matrix bounds");
    std::uint64_t base = 0;
    const std::size_t height = arity_.size();
    for (std::size_t l = 0;; ++l) {
        const std::uint64_t k = arity_[l];
        const std::uint64_t s = sub_side_[l];
        const std::uint64_t pos = base + ((r / s) % k) * k + (c / s) % k;
        if (!bit(pos)) return false;
        if (l + 1 == height) {
            if (!has_vocabulary()) return true;
            std::size_t e = leaf_ids_[t_.rank1(pos) - leaf_offset_];
            return vocab_.unchecked_bit(e, static_cast<unsigned>(r % s), static_cast<unsigned>(c % s));
        }
        base = children(pos, l);
    }
}

std::vector<std::uint64_t> K2Tree::row(std::uint64_t r, std::uint64_t lo, std::uint64_t hi,
                                       std::optional<std::size_t> limit) const {
    std::vector<std::uint64_t> out;
    if (limit && *limit == 0) {
        check_range(r, r, lo, hi);
        return out;
    }
    for_each_in_range(r, r, lo, hi, [&](std::uint64_t, std::uint64_t c) {
        out.push_back(c);
        return !limit || out.size() < *limit;
    });
    return out;
}

std::vector<std::uint64_t> K2Tree::row(std::uint64_t r, std::optional<std::size_t> limit) const {
    if (n_cols_ == 0) throw std::out_of_range("k2-tree has no columns");
    return row(r, 0, n_cols_ - 1, limit);
}

std::vector<std::uint64_t> K2Tree::col(std::uint64_t c, std::optional<std::size_t> limit) const {
    if (n_rows_ == 0) throw std::out_of_range("k2-tree has no rows");
    std::vector<std::uint64_t> out;
    if (limit && *limit == 0) {
        check_range(0, n_rows_ - 1, c, c);
        return out;
    }
    for_each_in_range(0, n_rows_ - 1, c, c, [&](std::uint64_t r, std::uint64_t) {
        out.push_back(r);
        return !limit || out.size() < *limit;
    });
    return out;
}

std::optional<std::uint64_t> K2Tree::first_in_col(std::uint64_t c) const {
    auto rows = col(c, 1);
    if (rows.empty()) return std::nullopt;
    return rows.front();
}

std::vector<Cell> K2Tree::range(std::uint64_t r1, std::uint64_t r2, std::uint64_t c1, std::uint64_t c2) const {
    std::vector<Cell> out;
    for_each_in_range(r1, r2, c1, c2, [&](std::uint64_t r, std::uint64_t c) {
        out.push_back({r, c});
        return true;
    });
    return out;
}

std::size_t K2Tree::level_of(std::uint64_t p) const {
    if (arity_.empty() || p >= begin_.back()) throw std::out_of_range("position outside the tree");
    auto it = std::upper_bound(begin_.begin(), begin_.end(), p);
    return static_cast<std::size_t>(it - begin_.begin()) - 1;
}

std::uint64_t K2Tree::children_base(std::uint64_t p) const {
    std::size_t level = level_of(p);
    if (level + 1 >= arity_.size()) throw std::invalid_argument("children_base: node is on the last level");
    if (!t_[p]) throw std::invalid_argument("children_base: node is a 0-bit and has no children");
    return children(p, level);
}

std::uint64_t K2Tree::leaf_id_at(std::uint64_t p) const {
    if (!has_vocabulary()) throw std::logic_error("leaf_id_at: tree has no vocabulary");
    if (level_of(p) + 1 != arity_.size() || !t_[p]) throw std::invalid_argument("leaf_id_at: not a leaf 1-bit");
    return leaf_ids_[t_.rank1(p) - leaf_offset_];
}

K2Tree::SpaceBreakdown K2Tree::space() const {
    SpaceBreakdown s;
    s.t_bytes = t_.size_in_bytes();
    s.l_bytes = l_.size_in_bytes();
    s.leaf_id_bytes = leaf_ids_.size_in_bytes();
    s.vocabulary_bytes = vocab_.size_in_bytes();
    return s;
}

void K2Tree::save(BinaryWriter& out) const {
    config_.save(out);
    out.u64(n_rows_);
    out.u64(n_cols_);
    out.u64(side_);
    out.u64(ones_);
    out.u8(static_cast<std::uint8_t>(arity_.size()));
    for (auto k : arity_) out.u8(static_cast<std::uint8_t>(k));
    t_.save(out);
    if (has_vocabulary()) {
        leaf_ids_.save(out);
        vocab_.save(out);
    } else {
        l_.save(out);
    }
}

K2Tree K2Tree::load(BinaryReader& in) {
    K2Tree t;
    t.config_ = K2Config::load(in);
    t.n_rows_ = in.u64();
    t.n_cols_ = in.u64();
    t.side_ = in.u64();
    t.ones_ = in.u64();
    std::size_t height = in.u8();
    for (std::size_t i = 0; i < height; ++i) {
        unsigned k = in.u8();
        if (k < 2) throw std::runtime_error("corrupt k2-tree: arity below 2");
        t.arity_.push_back(k);
    }
    const std::size_t rate = sample_rate_for(t.config_.sampling);
    t.t_ = BitVector::load(in, rate);
    if (t.has_vocabulary()) {
        t.leaf_ids_ = Dac::load(in, t.config_.sampling);
        t.vocab_ = LeafVocabulary::load(in, t.config_.sampling);
        t.l_ = BitVector(std::vector<std::uint64_t>{}, 0, rate);
    } else {
        t.l_ = BitVector::load(in, rate);
    }

    std::uint64_t side = height ? (t.has_vocabulary() ? t.config_.leaf_size : 1) : 0;
    for (auto k : t.arity_) side *= k;
    if (side != t.side_) throw std::runtime_error("corrupt k2-tree: side does not match levels");
    t.sub_side_.assign(height, 0);
    std::uint64_t s = side;
    for (std::size_t l = 0; l < height; ++l) {
        s /= t.arity_[l];
        t.sub_side_[l] = s;
    }
    t.finish_layout();
    return t;
}

} // namespace bmx
