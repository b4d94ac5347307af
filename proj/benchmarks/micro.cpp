#include <bmx/bit_vector.hpp>
#include <bmx/dac.hpp>
#include <bmx/k2_tree.hpp>
#include <bmx/pattern.hpp>
#include <bmx/synthetic.hpp>

#include <benchmark/benchmark.h>

#include <map>
#include <random>

namespace {

bmx::BitVector random_bits(std::size_t n, double density, bmx::SamplePreset preset) {
    std::mt19937_64 rng(1);
    std::bernoulli_distribution coin(density);
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = coin(rng);
    return bmx::BitVector(bits, bmx::sample_rate_for(preset));
}

std::vector<std::size_t> random_positions(std::size_t count, std::size_t limit) {
    std::mt19937_64 rng(2);
    std::vector<std::size_t> v(count);
    for (auto& x : v) x = rng() % limit;
    return v;
}

void BM_Rank1(benchmark::State& state) {
    const auto preset = static_cast<bmx::SamplePreset>(state.range(0));
    const auto bv = random_bits(1 << 24, 0.5, preset);
    const auto pos = random_positions(1 << 16, bv.size());
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bv.rank1(pos[i++ & 0xFFFF]));
    }
    state.SetLabel(preset == bmx::SamplePreset::Dense ? "dense" : "default");
}
BENCHMARK(BM_Rank1)->Arg(0)->Arg(1);

void BM_Select1(benchmark::State& state) {
    const auto preset = static_cast<bmx::SamplePreset>(state.range(0));
    const auto bv = random_bits(1 << 24, 0.5, preset);
    const auto pos = random_positions(1 << 16, bv.count_ones());
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bv.select1(1 + pos[i++ & 0xFFFF]));
    }
}
BENCHMARK(BM_Select1)->Arg(0)->Arg(1);

void BM_DacAccess(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::geometric_distribution<std::uint64_t> geo(0.01);
    std::vector<std::uint64_t> values(1 << 20);
    for (auto& v : values) v = geo(rng);
    const bmx::Dac dac(values, static_cast<unsigned>(state.range(0)));
    const auto pos = random_positions(1 << 16, values.size());
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dac[pos[i++ & 0xFFFF]]);
    }
}
BENCHMARK(BM_DacAccess)->Arg(2)->Arg(4)->Arg(8);

const bmx::Dataset& dataset() {
    static const bmx::Dataset d = [] {
        bmx::ClusteredOptions o;
        o.triples = 200'000;
        return bmx::generate_clustered(o);
    }();
    return d;
}

const bmx::BMatrixStore& store(bmx::VocabEncoding enc) {
    static std::map<int, bmx::BMatrixStore> stores;
    auto it = stores.find(static_cast<int>(enc));
    if (it == stores.end()) {
        bmx::K2Config tree;
        tree.vocab_encoding = enc;
        it = stores.emplace(static_cast<int>(enc),
                            bmx::BMatrixStore(dataset().triples, dataset().dims, bmx::StoreConfig::with_trees(tree)))
                 .first;
    }
    return it->second;
}

void BM_Query(benchmark::State& state) {
    const auto shape = bmx::all_shapes[static_cast<std::size_t>(state.range(0))];
    const auto enc = static_cast<bmx::VocabEncoding>(state.range(1));
    const auto& s = store(enc);
    std::mt19937_64 rng(4);
    const auto queries = bmx::sample_patterns(dataset(), shape, 256, rng, 1.0);
    std::size_t i = 0, results = 0;
    for (auto _ : state) {
        auto r = bmx::evaluate(s, queries[i++ & 255]);
        results += r.size();
        benchmark::DoNotOptimize(r.data());
    }
    state.counters["results"] = benchmark::Counter(static_cast<double>(results), benchmark::Counter::kIsRate);
    state.SetLabel(std::string(bmx::shape_name(shape)) + " " + std::string(bmx::to_string(enc)));
}
BENCHMARK(BM_Query)->ArgsProduct({{0, 1, 2, 3, 4, 5, 6}, {0, 1, 2}});

} // namespace

BENCHMARK_MAIN();
