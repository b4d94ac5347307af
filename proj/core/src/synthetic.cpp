#include "bmx/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmx {

namespace {

std::discrete_distribution<Id> zipf(Id n, double skew) {
    std::vector<double> w(n);
    for (Id i = 0; i < n; ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), skew);
    return std::discrete_distribution<Id>(w.begin(), w.end());
}

void finish(Dataset& d) {
    std::sort(d.triples.begin(), d.triples.end(), PosOrder{});
    d.triples.erase(std::unique(d.triples.begin(), d.triples.end()), d.triples.end());
}

} // namespace

Dataset generate_zipf(const ZipfOptions& opt) {
    if (opt.subjects == 0 || opt.objects == 0 || opt.predicates == 0)
        throw std::invalid_argument("dimensions must be positive");
    const double capacity = static_cast<double>(opt.subjects) * static_cast<double>(opt.objects) *
                            static_cast<double>(opt.predicates);
    if (static_cast<double>(opt.triples) > capacity / 4) throw std::invalid_argument("too many triples for dimensions");

    std::mt19937_64 rng(opt.seed);
    auto ds = zipf(opt.subjects, opt.skew);
    auto dp = zipf(opt.predicates, opt.skew);
    auto dobj = zipf(opt.objects, opt.skew);
    Dataset d;
    d.dims = {opt.subjects, opt.objects, opt.predicates};
    while (d.triples.size() < opt.triples) {
        std::size_t missing = opt.triples - d.triples.size();
        for (std::size_t i = 0; i < missing + missing / 8 + 1; ++i)
            d.triples.push_back({ds(rng) + 1, dp(rng) + 1, dobj(rng) + 1});
        finish(d);
    }
    d.triples.resize(opt.triples);
    return d;
}

Dataset generate_clustered(const ClusteredOptions& opt) {
    if (opt.cluster_size == 0 || opt.predicates < 16) throw std::invalid_argument("bad clustered dataset options");
    std::mt19937_64 rng(opt.seed);

    const Id popular = 1'000;               // globally shared objects (types, common literals)
    const std::size_t schema = 12;          // predicates per cluster
    const std::size_t block = 2 * opt.cluster_size;  // object ids owned per cluster
    auto popular_dist = zipf(popular, 1.1);
    auto predicate_dist = zipf(opt.predicates, 0.8);
    std::geometric_distribution<int> extra_degree(1.0 / 8.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Dataset d;
    d.triples.reserve(opt.triples + opt.triples / 8);
    std::vector<Id> cluster_predicates;
    Id subject = 0;
    Id max_object = popular;
    while (d.triples.size() < opt.triples) {
        const Id cluster = subject / opt.cluster_size;
        if (subject % opt.cluster_size == 0) {
            cluster_predicates.clear();
            while (cluster_predicates.size() < schema) {
                Id p = predicate_dist(rng) + 1;
                if (std::find(cluster_predicates.begin(), cluster_predicates.end(), p) == cluster_predicates.end())
                    cluster_predicates.push_back(p);
            }
        }
        ++subject;
        const int degree = 1 + extra_degree(rng);
        const std::size_t first = d.triples.size();
        for (int k = 0, tries = 0; k < degree && d.triples.size() < opt.triples && tries < 4 * degree; ++tries) {
            // earlier schema predicates are used more often
            std::size_t idx = static_cast<std::size_t>(std::floor(std::pow(unit(rng), 2.0) * schema));
            Id p = cluster_predicates[std::min(idx, schema - 1)];
            Id o;
            double r = unit(rng);
            if (r < 0.3) {
                o = popular_dist(rng) + 1;
            } else {
                std::uniform_int_distribution<Id> local(0, block - 1);
                o = popular + cluster * block + local(rng) + 1;
            }
            const IdTriple t{subject, p, o};
            if (std::find(d.triples.begin() + first, d.triples.end(), t) != d.triples.end()) continue;
            max_object = std::max(max_object, o);
            d.triples.push_back(t);
            ++k;
        }
    }
    d.dims = {subject, max_object, opt.predicates};
    finish(d);
    return d;
}

std::vector<TriplePattern> sample_patterns(const Dataset& data, Shape shape, std::size_t count, std::mt19937_64& rng,
                                           double hit_ratio) {
    std::vector<TriplePattern> out;
    out.reserve(count);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<Id> any_s(1, std::max<Id>(1, data.dims.subjects));
    std::uniform_int_distribution<Id> any_p(1, std::max<Id>(1, data.dims.predicates));
    std::uniform_int_distribution<Id> any_o(1, std::max<Id>(1, data.dims.objects));
    const bool bind_s = shape == Shape::SPO || shape == Shape::SPx || shape == Shape::SxO || shape == Shape::Sxx;
    const bool bind_p = shape == Shape::SPO || shape == Shape::SPx || shape == Shape::xPO || shape == Shape::xPx;
    const bool bind_o = shape == Shape::SPO || shape == Shape::xPO || shape == Shape::SxO || shape == Shape::xxO;
    for (std::size_t i = 0; i < count; ++i) {
        TriplePattern q;
        if (!data.triples.empty() && unit(rng) < hit_ratio) {
            std::uniform_int_distribution<std::size_t> pick(0, data.triples.size() - 1);
            const IdTriple& t = data.triples[pick(rng)];
            if (bind_s) q.s = t.s;
            if (bind_p) q.p = t.p;
            if (bind_o) q.o = t.o;
        } else {
            if (bind_s) q.s = any_s(rng);
            if (bind_p) q.p = any_p(rng);
            if (bind_o) q.o = any_o(rng);
        }
        out.push_back(q);
    }
    return out;
}

} // namespace bmx
