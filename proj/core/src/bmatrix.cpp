#include "bmx/bmatrix.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace bmx {

BMatrixStore::BMatrixStore(std::vector<IdTriple> triples, Dimensions dims, StoreConfig config)
    : dims_(dims), thresholds_(config.thresholds) {
    for (const auto& t : triples) {
        if (t.s == 0 || t.s > dims.subjects || t.p == 0 || t.p > dims.predicates || t.o == 0 || t.o > dims.objects)
            throw std::out_of_range("triple id outside declared dimensions");
    }
    std::sort(triples.begin(), triples.end(), PosOrder{});
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    n_ = triples.size();

    std::vector<Cell> st_cells, ot_cells;
    std::vector<Id> preds;
    st_cells.reserve(n_);
    ot_cells.reserve(n_);
    preds.reserve(n_);
    for (std::uint64_t i = 0; i < n_; ++i) {
        st_cells.push_back({triples[i].s - 1, i});
        ot_cells.push_back({triples[i].o - 1, i});
        preds.push_back(triples[i].p);
    }
    triples.clear();
    triples.shrink_to_fit();

    st_ = K2Tree(st_cells, dims.subjects, n_, config.subject_tree);
    ot_ = K2Tree(ot_cells, dims.objects, n_, config.object_tree);
    pidx_ = PredicateIndex(preds, dims.predicates, config.predicate_sample_period);
}

BMatrixStore BMatrixStore::assemble(Dimensions dims, K2Tree subject_tree, K2Tree object_tree,
                                    PredicateIndex predicates, Thresholds thresholds) {
    const std::uint64_t n = predicates.columns();
    if (predicates.predicate_count() != dims.predicates)
        throw std::runtime_error("predicate index does not match predicate count");
    if (subject_tree.rows() != dims.subjects || object_tree.rows() != dims.objects)
        throw std::runtime_error("tree rows do not match term counts");
    if (n > 0 && (subject_tree.cols() != n || object_tree.cols() != n))
        throw std::runtime_error("tree columns do not match triple count");
    if (subject_tree.count_ones() != n || object_tree.count_ones() != n)
        throw std::runtime_error("trees must hold exactly one 1 per column");
    BMatrixStore store;
    store.dims_ = dims;
    store.n_ = n;
    store.st_ = std::move(subject_tree);
    store.ot_ = std::move(object_tree);
    store.pidx_ = std::move(predicates);
    store.thresholds_ = thresholds;
    return store;
}

void BMatrixStore::check_subject(Id s) const {
    if (s == 0 || s > dims_.subjects) throw std::out_of_range("subject id out of range");
}

void BMatrixStore::check_object(Id o) const {
    if (o == 0 || o > dims_.objects) throw std::out_of_range("object id out of range");
}

void BMatrixStore::check_predicate(Id p) const {
    if (p == 0 || p > dims_.predicates) throw std::out_of_range("predicate id out of range");
}

Id BMatrixStore::object_at(std::uint64_t column) const { return *ot_.first_in_col(column) + 1; }

Id BMatrixStore::subject_at(std::uint64_t column) const { return *st_.first_in_col(column) + 1; }

bool BMatrixStore::contains(Id s, Id p, Id o) const {
    if (empty()) return false;
    check_subject(s);
    check_predicate(p);
    check_object(o);
    auto [begin, end] = pidx_.column_range(p);
    if (begin == end) return false;
    bool found = false;
    st_.for_each_in_range(s - 1, s - 1, begin, end - 1, [&](std::uint64_t, std::uint64_t col) {
        found = ot_.cell(o - 1, col);
        return !found;
    });
    return found;
}

std::vector<Id> BMatrixStore::objects_of(Id s, Id p) const {
    std::vector<Id> out;
    if (empty()) return out;
    check_subject(s);
    check_predicate(p);
    auto [begin, end] = pidx_.column_range(p);
    if (begin == end) return out;
    for (auto col : st_.row(s - 1, begin, end - 1)) out.push_back(object_at(col));
    return out;
}

std::vector<Id> BMatrixStore::subjects_of(Id p, Id o) const {
    std::vector<Id> out;
    if (empty()) return out;
    check_predicate(p);
    check_object(o);
    auto [begin, end] = pidx_.column_range(p);
    if (begin == end) return out;
    for (auto col : ot_.row(o - 1, begin, end - 1)) out.push_back(subject_at(col));
    return out;
}

std::vector<Id> BMatrixStore::predicates_between(Id s, Id o) const {
    std::vector<Id> out;
    if (empty()) return out;
    check_subject(s);
    check_object(o);
    std::vector<std::uint64_t> cols = ot_.row(o - 1);
    std::vector<std::uint64_t> hits;
    if (cols.size() <= thresholds_.merge_sorted) {
        for (auto col : cols) {
            if (st_.cell(s - 1, col)) hits.push_back(col);
        }
    } else {
        std::vector<std::uint64_t> subject_cols = st_.row(s - 1);
        std::set_intersection(cols.begin(), cols.end(), subject_cols.begin(), subject_cols.end(),
                              std::back_inserter(hits));
    }
    out.reserve(hits.size());
    for (auto col : hits) out.push_back(pidx_.rank(col));
    return out;
}

std::vector<PredicateObject> BMatrixStore::subject_triples(Id s) const {
    std::vector<PredicateObject> out;
    if (empty()) return out;
    check_subject(s);
    for (auto col : st_.row(s - 1)) out.push_back({pidx_.rank(col), object_at(col)});
    return out;
}

std::vector<SubjectPredicate> BMatrixStore::object_triples(Id o) const {
    std::vector<SubjectPredicate> out;
    if (empty()) return out;
    check_object(o);
    for (auto col : ot_.row(o - 1)) out.push_back({subject_at(col), pidx_.rank(col)});
    return out;
}

std::vector<SubjectObject> BMatrixStore::predicate_triples(Id p) const {
    std::vector<SubjectObject> out;
    if (empty()) return out;
    check_predicate(p);
    auto [begin, end] = pidx_.column_range(p);
    if (begin == end) return out;

    std::vector<Cell> subjects = st_.range(0, dims_.subjects - 1, begin, end - 1);
    auto by_col = [](const Cell& a, const Cell& b) { return a.col < b.col; };
    std::sort(subjects.begin(), subjects.end(), by_col);
    out.reserve(subjects.size());
    if (subjects.size() <= thresholds_.merge_unsorted) {
        for (const auto& c : subjects) out.push_back({c.row + 1, object_at(c.col)});
        return out;
    }
    std::vector<Cell> objects = ot_.range(0, dims_.objects - 1, begin, end - 1);
    std::sort(objects.begin(), objects.end(), by_col);
    // one 1 per column in both trees: the sorted lists pair up column by column
    std::size_t j = 0;
    for (const auto& c : subjects) {
        while (j < objects.size() && objects[j].col < c.col) ++j;
        if (j < objects.size() && objects[j].col == c.col) out.push_back({c.row + 1, objects[j].row + 1});
    }
    return out;
}

std::vector<IdTriple> BMatrixStore::all_triples() const {
    std::vector<IdTriple> out;
    out.reserve(n_);
    for (Id p = 1; p <= dims_.predicates && !empty(); ++p) {
        for (const auto& so : predicate_triples(p)) out.push_back({so.s, p, so.o});
    }
    return out;
}

BMatrixStore::SpaceBreakdown BMatrixStore::space() const {
    return {st_.space(), ot_.space(), pidx_.size_in_bytes()};
}

} // namespace bmx
