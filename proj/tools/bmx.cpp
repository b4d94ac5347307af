// bmx: build, query, verify, inspect and benchmark BMatrix RDF stores.

#include <CLI11.hpp>

#include <bmx/bench.hpp>
#include <bmx/dictionary.hpp>
#include <bmx/ntriples.hpp>
#include <bmx/oracle.hpp>
#include <bmx/pattern.hpp>
#include <bmx/store_file.hpp>
#include <bmx/synthetic.hpp>
#include <bmx/verify.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <filesystem>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_mismatch = 2;

bmx::Thresholds parse_thresholds(const std::string& text, bmx::Thresholds fallback) {
    if (text.empty()) return fallback;
    bmx::Thresholds t;
    char comma = 0;
    std::istringstream in(text);
    if (!(in >> t.merge_sorted)) throw std::invalid_argument("--thresholds expects N or N,M");
    if (in >> comma) {
        if (comma != ',' || !(in >> t.merge_unsorted)) throw std::invalid_argument("--thresholds expects N or N,M");
    } else {
        t.merge_unsorted = t.merge_sorted;
    }
    return t;
}

double per_triple(std::size_t bytes, std::uint64_t n) { return n ? static_cast<double>(bytes) / n : 0.0; }

void print_tree_space(std::ostream& out, const char* name, const bmx::K2Tree& tree, std::uint64_t n) {
    auto s = tree.space();
    out << std::left << std::setw(22) << name << std::right << std::setw(14) << s.total() << std::setw(10)
        << std::fixed << std::setprecision(3) << per_triple(s.total(), n) << "   (T " << s.t_bytes << ", L "
        << s.l_bytes << ", leaf ids " << s.leaf_id_bytes << ", vocabulary " << s.vocabulary_bytes << " / "
        << tree.vocabulary().size() << " leaves)\n";
}

void print_stats(std::ostream& out, const bmx::Dictionary& dict, const bmx::BMatrixStore& store,
                 std::uint64_t file_bytes) {
    const auto n = store.size();
    const auto& d = store.dimensions();
    out << "triples               " << n << "\n"
        << "subjects              " << d.subjects << "  (shared with objects: " << dict.shared_count() << ")\n"
        << "objects               " << d.objects << "\n"
        << "predicates            " << d.predicates << "\n"
        << "thresholds            " << store.thresholds().merge_sorted << "," << store.thresholds().merge_unsorted
        << "\n\n";
    out << std::left << std::setw(22) << "component" << std::right << std::setw(14) << "bytes" << std::setw(10)
        << "B/triple" << "\n";
    print_tree_space(out, "ST", store.subject_tree(), n);
    print_tree_space(out, "OT", store.object_tree(), n);
    const auto space = store.space();
    out << std::left << std::setw(22) << "predicate index" << std::right << std::setw(14) << space.predicate_index
        << std::setw(10) << per_triple(space.predicate_index, n) << "\n";
    out << std::left << std::setw(22) << "structures total" << std::right << std::setw(14) << space.total()
        << std::setw(10) << per_triple(space.total(), n) << "\n";
    out << std::left << std::setw(22) << "dictionary" << std::right << std::setw(14) << dict.size_in_bytes()
        << std::setw(10) << per_triple(dict.size_in_bytes(), n) << "\n";
    if (file_bytes) out << std::left << std::setw(22) << "store file" << std::right << std::setw(14) << file_bytes << "\n";
    out.unsetf(std::ios::fixed);
}

void report_diagnostics(const bmx::ParseStats& stats, const std::string& path) {
    for (const auto& d : stats.diagnostics) std::cerr << path << ":" << d.line << ": " << d.message << "\n";
}

struct BuildArgs {
    std::vector<std::string> inputs;
    std::string output;
    unsigned k1 = 4;
    unsigned k1_levels = 5;
    unsigned k2 = 2;
    unsigned leaf = 8;
    std::string vocab = "cols-full";
    std::string sample = "default";
    std::uint64_t d = bmx::PredicateIndex::default_sample_period;
    std::string thresholds;
    bool gzip = false;
    bool strict = false;
};

int run_build(const BuildArgs& a) {
    bmx::K2Config tree;
    tree.stages = {{a.k1, a.k1_levels}, {a.k2, std::nullopt}};
    if (a.vocab == "off") {
        tree.leaf_size = 1;
    } else {
        tree.leaf_size = a.leaf;
        if (a.vocab == "plain") tree.vocab_encoding = bmx::VocabEncoding::Plain;
        else if (a.vocab == "cols-full") tree.vocab_encoding = bmx::VocabEncoding::ColsFull;
        else if (a.vocab == "cols-rank") tree.vocab_encoding = bmx::VocabEncoding::ColsRank;
        else throw std::invalid_argument("unknown --vocab " + a.vocab);
    }
    tree.sampling = a.sample == "dense" ? bmx::SamplePreset::Dense : bmx::SamplePreset::Default;
    bmx::StoreConfig config = bmx::StoreConfig::with_trees(tree);
    config.predicate_sample_period = a.d;
    config.thresholds = parse_thresholds(a.thresholds, {});

    bmx::DictionaryBuilder builder;
    bmx::ParseOptions popts;
    popts.gzip = a.gzip;
    popts.strict = a.strict;
    std::size_t skipped = 0;
    for (const auto& path : a.inputs) {
        auto stats = bmx::parse_ntriples_file(path, [&](bmx::RawTriple&& t) { builder.add(t); }, popts);
        report_diagnostics(stats, path);
        skipped += stats.diagnostics.size();
    }
    const std::size_t statements = builder.added();
    auto [dict, triples] = std::move(builder).finish();
    const auto dims = dict.dimensions();
    bmx::BMatrixStore store(std::move(triples), dims, config);
    const auto bytes = bmx::save_store(a.output, dict, store);

    std::cout << "read " << statements << " statements (" << skipped << " malformed lines skipped), "
              << store.size() << " distinct triples\n\n";
    print_stats(std::cout, dict, store, bytes);
    return exit_ok;
}

int run_query(const std::string& path, const std::vector<std::string>& pattern_args, bool ids, bool count_only,
              bool tsv, const std::string& thresholds) {
    auto file = bmx::load_store(path);
    file.store.set_thresholds(parse_thresholds(thresholds, file.store.thresholds()));
    std::string text;
    for (const auto& p : pattern_args) text += p + " ";
    auto spec = bmx::PatternSpec::parse(text);

    bmx::TriplePattern q;
    try {
        q = bmx::resolve(spec, file.dictionary, file.store.dimensions());
    } catch (const bmx::TermNotFound& e) {
        std::cerr << e.what() << "\n";
        if (count_only) std::cout << 0 << "\n";
        return exit_error;
    }
    auto results = bmx::evaluate(file.store, q);
    if (count_only) {
        std::cout << results.size() << "\n";
        return exit_ok;
    }
    const char sep = tsv ? '\t' : ' ';
    for (const auto& t : results) {
        if (ids) {
            std::cout << t.s << sep << t.p << sep << t.o << (tsv ? "" : " .") << "\n";
            continue;
        }
        auto raw = file.dictionary.decode(t);
        if (!raw) throw std::runtime_error("store has no dictionary entry for a result; use --ids");
        if (tsv) {
            std::cout << bmx::format_term(raw->subject) << '\t' << bmx::format_term(raw->predicate) << '\t'
                      << bmx::format_term(raw->object) << "\n";
        } else {
            std::cout << bmx::format_triple(*raw) << "\n";
        }
    }
    return exit_ok;
}

int run_verify(const std::string& store_path, const std::string& input, std::size_t samples, std::uint64_t seed,
               bool gzip) {
    auto file = bmx::load_store(store_path);
    bmx::ParseOptions popts;
    popts.gzip = gzip;
    auto encoded = bmx::encode_ntriples(file.dictionary, input, popts);
    report_diagnostics(encoded.parse, input);
    if (!encoded.unknown.empty()) {
        std::cout << "FAIL: " << encoded.unknown.size() << " input statement(s) use terms missing from the store\n"
                  << "first: " << bmx::format_triple(encoded.unknown.front()) << "\n";
        return exit_mismatch;
    }
    bmx::oracle::TripleList reference(std::move(encoded.triples));
    bmx::VerifyOptions vopts;
    vopts.samples_per_shape = samples;
    vopts.seed = seed;
    auto result = bmx::verify_store(file.store, reference, vopts);
    if (!result.ok) {
        std::cout << "FAIL after " << result.patterns_checked << " pattern(s)\n" << result.reproducer;
        return exit_mismatch;
    }
    std::cout << "OK: " << reference.size() << " triples, " << result.patterns_checked << " patterns checked\n";
    return exit_ok;
}

int run_bench_cmd(const std::string& store_path, const std::string& queries_path, const bmx::BenchOptions& opts,
                  const std::string& thresholds) {
    auto file = bmx::load_store(store_path);
    file.store.set_thresholds(parse_thresholds(thresholds, file.store.thresholds()));
    std::ifstream in(queries_path);
    if (!in) throw std::runtime_error("cannot open " + queries_path);
    std::vector<bmx::TriplePattern> queries;
    std::size_t unresolved = 0;
    for (const auto& spec : bmx::read_patterns(in)) {
        try {
            queries.push_back(bmx::resolve(spec, file.dictionary, file.store.dimensions()));
        } catch (const bmx::TermNotFound&) {
            ++unresolved;
        }
    }
    if (unresolved) std::cerr << "skipped " << unresolved << " query(ies) with unknown terms\n";
    auto rows = bmx::run_bench(file.store, queries, opts, &file.dictionary);
    bmx::write_bench_report(std::cout, rows);
    return exit_ok;
}

int run_gen_queries(const std::string& store_path, const std::string& shape_arg, std::size_t count,
                    std::uint64_t seed) {
    auto file = bmx::load_store(store_path);
    bmx::Dataset data{file.store.all_triples(), file.store.dimensions()};
    std::mt19937_64 rng(seed);
    std::vector<bmx::Shape> shapes;
    if (shape_arg == "all") {
        for (auto s : bmx::all_shapes)
            if (s != bmx::Shape::xxx) shapes.push_back(s);
    } else if (auto s = bmx::parse_shape(shape_arg)) {
        shapes.push_back(*s);
    } else {
        throw std::invalid_argument("unknown shape " + shape_arg);
    }
    for (auto s : shapes) {
        for (const auto& q : bmx::sample_patterns(data, s, count, rng, 1.0))
            std::cout << bmx::PatternSpec::from_ids(q).to_string() << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bmx - compressed RDF triple store on two k2-trees"};
    app.require_subcommand(1);

    BuildArgs b;
    auto* build = app.add_subcommand("build", "Build a store from N-Triples files");
    build->add_option("inputs", b.inputs, "N-Triples input files")->required()->check(CLI::ExistingFile);
    build->add_option("-o,--output", b.output, "Output store file")->required();
    build->add_option("--k1", b.k1, "Arity of the upper levels")->capture_default_str();
    build->add_option("--k1-levels", b.k1_levels, "Number of upper levels")->capture_default_str();
    build->add_option("--k2", b.k2, "Arity of the remaining levels")->capture_default_str();
    build->add_option("--leaf", b.leaf, "Leaf vocabulary matrix side (2, 4 or 8)")->capture_default_str();
    build->add_option("--vocab", b.vocab, "Leaf vocabulary encoding")
        ->check(CLI::IsMember({"plain", "cols-full", "cols-rank", "off"}))
        ->capture_default_str();
    build->add_option("--sample", b.sample, "Rank sampling preset (default = 5%, dense = 12.5%)")
        ->check(CLI::IsMember({"default", "dense"}))
        ->capture_default_str();
    build->add_option("--d", b.d, "Predicate rank sampling period")->capture_default_str();
    build->add_option("--thresholds", b.thresholds, "Merge thresholds: (s?o)[,(?p?)]");
    build->add_flag("--gzip", b.gzip, "Inputs are gzip-compressed");
    build->add_flag("--strict", b.strict, "Abort on the first malformed line");

    std::string store_path, input_path, thresholds, shape = "all";
    std::vector<std::string> pattern;
    bool ids = false, count_only = false, tsv = false, gzip = false;
    std::size_t samples = 200, count = 500;
    std::uint64_t seed = 1;

    auto* query = app.add_subcommand("query", "Answer one triple pattern, e.g. '?' '<p>' '?'");
    query->add_option("store", store_path, "Store file")->required()->check(CLI::ExistingFile);
    query->add_option("pattern", pattern, "Subject, predicate and object (term, #id or ?)")->required()->expected(1, 4);
    query->add_flag("--ids", ids, "Print numeric ids instead of terms");
    query->add_flag("--count-only", count_only, "Print only the number of results");
    query->add_flag("--tsv", tsv, "Tab-separated output");
    query->add_option("--thresholds", thresholds, "Override merge thresholds");

    auto* verify = app.add_subcommand("verify", "Check a store against its N-Triples source");
    verify->add_option("store", store_path, "Store file")->required()->check(CLI::ExistingFile);
    verify->add_option("input", input_path, "Original N-Triples file")->required()->check(CLI::ExistingFile);
    verify->add_option("--samples", samples, "Random patterns per shape")->capture_default_str();
    verify->add_option("--seed", seed, "Random seed")->capture_default_str();
    verify->add_flag("--gzip", gzip, "Input is gzip-compressed");

    auto* stats = app.add_subcommand("stats", "Print counts and space per component");
    stats->add_option("store", store_path, "Store file")->required()->check(CLI::ExistingFile);

    bmx::BenchOptions bench_opts;
    std::string queries_path;
    auto* bench = app.add_subcommand("bench", "Time a query file, grouped by pattern shape");
    bench->add_option("store", store_path, "Store file")->required()->check(CLI::ExistingFile);
    bench->add_option("queries", queries_path, "One pattern per line")->required()->check(CLI::ExistingFile);
    bench->add_option("--min-reps", bench_opts.min_reps, "Minimum replays per shape")->capture_default_str();
    bench->add_option("--min-time", bench_opts.min_seconds, "Minimum seconds per shape")->capture_default_str();
    bench->add_option("--thresholds", thresholds, "Override merge thresholds");
    bench->add_flag("--decode", bench_opts.decode, "Include dictionary decoding in the timing");

    auto* gen = app.add_subcommand("gen-queries", "Sample #id patterns from a store's own triples");
    gen->add_option("store", store_path, "Store file")->required()->check(CLI::ExistingFile);
    gen->add_option("--shape", shape, "Shape (spo, sp?, ?po, s?o, s??, ??o, ?p?) or all")->capture_default_str();
    gen->add_option("--count", count, "Patterns per shape")->capture_default_str();
    gen->add_option("--seed", seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_error;
    }

    try {
        if (*build) return run_build(b);
        if (*query) return run_query(store_path, pattern, ids, count_only, tsv, thresholds);
        if (*verify) return run_verify(store_path, input_path, samples, seed, gzip);
        if (*stats) {
            auto file = bmx::load_store(store_path);
            print_stats(std::cout, file.dictionary, file.store, std::filesystem::file_size(store_path));
            return exit_ok;
        }
        if (*bench) return run_bench_cmd(store_path, queries_path, bench_opts, thresholds);
        if (*gen) return run_gen_queries(store_path, shape, count, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
