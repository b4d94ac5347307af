#include "bmx/dictionary.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bmx/binary_io.hpp"

namespace bmx {

StringPool::StringPool(std::vector<std::string> sorted_unique) {
    offsets_.reserve(sorted_unique.size() + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < sorted_unique.size(); ++i) {
        if (i > 0 && !(sorted_unique[i - 1] < sorted_unique[i]))
            throw std::invalid_argument("StringPool input must be sorted and unique");
        bytes_ += sorted_unique[i];
        offsets_.push_back(bytes_.size());
    }
}

std::optional<std::size_t> StringPool::find(std::string_view term) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto cmp = (*this)[mid].compare(term);
        if (cmp == 0) return mid;
        if (cmp < 0) lo = mid + 1;
        else hi = mid;
    }
    return std::nullopt;
}

void StringPool::save(BinaryWriter& out) const {
    out.u64(size());
    if (offsets_.empty()) {
        out.u64(0);
    } else {
        out.words(offsets_);
    }
    out.bytes(bytes_);
}

StringPool StringPool::load(BinaryReader& in) {
    StringPool pool;
    std::uint64_t count = in.u64();
    pool.offsets_ = in.words(count + 1);
    for (std::size_t i = 1; i < pool.offsets_.size(); ++i) {
        if (pool.offsets_[i] < pool.offsets_[i - 1]) throw std::runtime_error("corrupt string pool offsets");
    }
    if (pool.offsets_.front() != 0) throw std::runtime_error("corrupt string pool offsets");
    pool.bytes_ = in.bytes(pool.offsets_.back());
    if (count == 0) pool.offsets_.clear();
    return pool;
}

Dictionary::Dictionary(StringPool shared, StringPool subjects_only, StringPool objects_only, StringPool predicates)
    : so_(std::move(shared)), s_(std::move(subjects_only)), o_(std::move(objects_only)), p_(std::move(predicates)) {}

std::optional<Id> Dictionary::subject_id(std::string_view term) const {
    if (auto i = so_.find(term)) return *i + 1;
    if (auto i = s_.find(term)) return shared_count() + *i + 1;
    return std::nullopt;
}

std::optional<Id> Dictionary::object_id(std::string_view term) const {
    if (auto i = so_.find(term)) return *i + 1;
    if (auto i = o_.find(term)) return shared_count() + *i + 1;
    return std::nullopt;
}

std::optional<Id> Dictionary::predicate_id(std::string_view term) const {
    if (auto i = p_.find(term)) return *i + 1;
    return std::nullopt;
}

std::optional<std::string_view> Dictionary::subject(Id id) const {
    if (id == 0 || id > subject_count()) return std::nullopt;
    return id <= shared_count() ? so_[id - 1] : s_[id - shared_count() - 1];
}

std::optional<std::string_view> Dictionary::object(Id id) const {
    if (id == 0 || id > object_count()) return std::nullopt;
    return id <= shared_count() ? so_[id - 1] : o_[id - shared_count() - 1];
}

std::optional<std::string_view> Dictionary::predicate(Id id) const {
    if (id == 0 || id > predicate_count()) return std::nullopt;
    return p_[id - 1];
}

std::optional<IdTriple> Dictionary::encode(const RawTriple& t) const {
    auto s = subject_id(t.subject);
    auto p = predicate_id(t.predicate);
    auto o = object_id(t.object);
    if (!s || !p || !o) return std::nullopt;
    return IdTriple{*s, *p, *o};
}

std::optional<RawTriple> Dictionary::decode(const IdTriple& t) const {
    auto s = subject(t.s);
    auto p = predicate(t.p);
    auto o = object(t.o);
    if (!s || !p || !o) return std::nullopt;
    return RawTriple{std::string(*s), std::string(*p), std::string(*o)};
}

std::size_t Dictionary::size_in_bytes() const {
    return so_.size_in_bytes() + s_.size_in_bytes() + o_.size_in_bytes() + p_.size_in_bytes();
}

void Dictionary::save(BinaryWriter& out) const {
    so_.save(out);
    s_.save(out);
    o_.save(out);
    p_.save(out);
}

Dictionary Dictionary::load(BinaryReader& in) {
    auto so = StringPool::load(in);
    auto s = StringPool::load(in);
    auto o = StringPool::load(in);
    auto p = StringPool::load(in);
    return Dictionary(std::move(so), std::move(s), std::move(o), std::move(p));
}

std::uint32_t DictionaryBuilder::intern_node(const std::string& term, std::uint8_t role) {
    auto [it, inserted] = node_ids_.try_emplace(term, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) {
        if (nodes_.size() == std::numeric_limits<std::uint32_t>::max()) throw std::length_error("too many terms");
        nodes_.push_back(term);
        roles_.push_back(0);
    }
    roles_[it->second] |= role;
    return it->second;
}

std::uint32_t DictionaryBuilder::intern_predicate(const std::string& term) {
    auto [it, inserted] = predicate_ids_.try_emplace(term, static_cast<std::uint32_t>(predicates_.size()));
    if (inserted) predicates_.push_back(term);
    return it->second;
}

void DictionaryBuilder::add(const RawTriple& t) {
    Local l;
    l.s = intern_node(t.subject, 1);
    l.p = intern_predicate(t.predicate);
    l.o = intern_node(t.object, 2);
    triples_.push_back(l);
}

std::pair<Dictionary, std::vector<IdTriple>> DictionaryBuilder::finish() && {
    std::vector<std::uint32_t> shared, subj, obj;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        switch (roles_[i]) {
            case 3: shared.push_back(i); break;
            case 1: subj.push_back(i); break;
            default: obj.push_back(i); break;
        }
    }
    auto by_text = [&](const std::vector<std::string>& names) {
        return [&names](std::uint32_t a, std::uint32_t b) { return names[a] < names[b]; };
    };
    std::sort(shared.begin(), shared.end(), by_text(nodes_));
    std::sort(subj.begin(), subj.end(), by_text(nodes_));
    std::sort(obj.begin(), obj.end(), by_text(nodes_));

    std::vector<Id> subject_id(nodes_.size(), 0), object_id(nodes_.size(), 0);
    auto take = [&](const std::vector<std::uint32_t>& order, Id first, std::vector<Id>* a, std::vector<Id>* b) {
        std::vector<std::string> texts;
        texts.reserve(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (a) (*a)[order[k]] = first + k;
            if (b) (*b)[order[k]] = first + k;
            texts.push_back(std::move(nodes_[order[k]]));
        }
        return StringPool(std::move(texts));
    };
    const Id n_shared = shared.size();
    StringPool so = take(shared, 1, &subject_id, &object_id);
    StringPool s = take(subj, n_shared + 1, &subject_id, nullptr);
    StringPool o = take(obj, n_shared + 1, nullptr, &object_id);

    std::vector<std::uint32_t> porder(predicates_.size());
    std::iota(porder.begin(), porder.end(), 0);
    std::sort(porder.begin(), porder.end(), by_text(predicates_));
    std::vector<Id> predicate_id(predicates_.size(), 0);
    std::vector<std::string> ptexts;
    for (std::size_t k = 0; k < porder.size(); ++k) {
        predicate_id[porder[k]] = k + 1;
        ptexts.push_back(std::move(predicates_[porder[k]]));
    }
    StringPool p(std::move(ptexts));

    std::vector<IdTriple> encoded;
    encoded.reserve(triples_.size());
    for (const auto& t : triples_) encoded.push_back({subject_id[t.s], predicate_id[t.p], object_id[t.o]});
    std::sort(encoded.begin(), encoded.end(), PosOrder{});
    encoded.erase(std::unique(encoded.begin(), encoded.end()), encoded.end());

    return {Dictionary(std::move(so), std::move(s), std::move(o), std::move(p)), std::move(encoded)};
}

std::pair<Dictionary, std::vector<IdTriple>> build_dictionary(const std::vector<RawTriple>& triples) {
    DictionaryBuilder b;
    for (const auto& t : triples) b.add(t);
    return std::move(b).finish();
}

} // namespace bmx
