#include "bmx/verify.hpp"

#include <random>
#include <sstream>

#include "bmx/pattern.hpp"
#include "bmx/synthetic.hpp"

namespace bmx {

namespace {

std::string describe(const std::vector<IdTriple>& ts) {
    std::ostringstream out;
    out << ts.size() << " triple(s)";
    std::size_t shown = 0;
    for (const auto& t : ts) {
        if (shown++ == 8) {
            out << " ...";
            break;
        }
        out << " (" << t.s << "," << t.p << "," << t.o << ")";
    }
    return out.str();
}

} // namespace

EncodedInput encode_ntriples(const Dictionary& dictionary, const std::filesystem::path& path,
                             const ParseOptions& options) {
    EncodedInput in;
    in.parse = parse_ntriples_file(
        path,
        [&](RawTriple&& t) {
            if (auto ids = dictionary.encode(t)) in.triples.push_back(*ids);
            else in.unknown.push_back(std::move(t));
        },
        options);
    return in;
}

VerifyResult verify_store(const BMatrixStore& store, const oracle::TripleList& reference,
                          const VerifyOptions& options) {
    VerifyResult result;
    auto fail = [&](const TriplePattern& q, const std::vector<IdTriple>& expected, const std::vector<IdTriple>& actual) {
        std::ostringstream out;
        out << "pattern: " << PatternSpec::from_ids(q).to_string() << " [" << shape_name(shape_of(q)) << "]\n"
            << "expected: " << describe(expected) << "\n"
            << "actual:   " << describe(actual) << "\n";
        result.ok = false;
        result.reproducer = out.str();
    };

    const TriplePattern scan;
    auto all = evaluate(store, scan);
    ++result.patterns_checked;
    if (all != reference.triples()) {
        fail(scan, reference.triples(), all);
        return result;
    }

    Dataset data{reference.triples(), store.dimensions()};
    std::mt19937_64 rng(options.seed);
    for (Shape shape : all_shapes) {
        if (shape == Shape::xxx) continue;
        for (const auto& q : sample_patterns(data, shape, options.samples_per_shape, rng)) {
            auto expected = oracle::match(reference, q);
            auto actual = evaluate(store, q);
            ++result.patterns_checked;
            if (actual != expected) {
                fail(q, expected, actual);
                return result;
            }
        }
    }
    return result;
}

} // namespace bmx
