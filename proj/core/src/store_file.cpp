#include "bmx/store_file.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "bmx/binary_io.hpp"

namespace bmx {

std::uint64_t write_store(std::ostream& out, const Dictionary& dictionary, const BMatrixStore& store) {
    const bool id_only = dictionary.subject_count() == 0 && dictionary.object_count() == 0 &&
                         dictionary.predicate_count() == 0;
    if (!id_only && dictionary.dimensions() != store.dimensions())
        throw std::invalid_argument("dictionary does not match store dimensions");

    BinaryWriter w(out);
    w.bytes(std::string_view(store_magic, 4));
    w.u16(store_version);
    w.u8(8);
    const auto& dims = store.dimensions();
    w.u64(store.size());
    w.u64(dictionary.shared_count());
    w.u64(dims.subjects);
    w.u64(dims.objects);
    w.u64(dims.predicates);
    w.u64(store.predicates().sample_period());
    w.u64(store.thresholds().merge_sorted);
    w.u64(store.thresholds().merge_unsorted);
    store.subject_tree().config().save(w);
    store.object_tree().config().save(w);
    dictionary.save(w);
    store.predicates().save(w);
    store.subject_tree().save(w);
    store.object_tree().save(w);
    return w.written();
}

StoreFile read_store(std::istream& in) {
    BinaryReader r(in);
    if (r.bytes(4) != std::string_view(store_magic, 4)) throw std::runtime_error("not a BMX store file");
    if (auto v = r.u16(); v != store_version)
        throw std::runtime_error("unsupported store version " + std::to_string(v));
    if (r.u8() != 8) throw std::runtime_error("unsupported integer width");

    const std::uint64_t n = r.u64();
    const std::uint64_t n_shared = r.u64();
    Dimensions dims;
    dims.subjects = r.u64();
    dims.objects = r.u64();
    dims.predicates = r.u64();
    const std::uint64_t period = r.u64();
    Thresholds th;
    th.merge_sorted = r.u64();
    th.merge_unsorted = r.u64();
    K2Config st_config = K2Config::load(r);
    K2Config ot_config = K2Config::load(r);

    Dictionary dict = Dictionary::load(r);
    PredicateIndex pidx = PredicateIndex::load(r);
    K2Tree st = K2Tree::load(r);
    K2Tree ot = K2Tree::load(r);

    if (pidx.columns() != n || pidx.sample_period() != period) throw std::runtime_error("corrupt store header");
    if (!(st.config() == st_config) || !(ot.config() == ot_config))
        throw std::runtime_error("tree config does not match header");
    const bool id_only = dict.subject_count() == 0 && dict.object_count() == 0 && dict.predicate_count() == 0;
    if (!id_only && (dict.dimensions() != dims || dict.shared_count() != n_shared))
        throw std::runtime_error("dictionary does not match header");

    return {std::move(dict), BMatrixStore::assemble(dims, std::move(st), std::move(ot), std::move(pidx), th)};
}

std::uint64_t save_store(const std::filesystem::path& path, const Dictionary& dictionary, const BMatrixStore& store) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    auto bytes = write_store(out, dictionary, store);
    out.close();
    if (!out) throw std::runtime_error("error writing " + path.string());
    return bytes;
}

StoreFile load_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_store(in);
}

} // namespace bmx
