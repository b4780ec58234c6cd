#pragma once

#include <abl/errors.hpp>
#include <abl/graph.hpp>
#include <abl/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace abl {

// Bipartite pair (A,B) inside a host graph; sides are disjoint vertex lists.
struct BipartitePairView {
    const Graph* host = nullptr;
    std::vector<int> a_side;
    std::vector<int> b_side;
};

// Per-A-vertex weights in [0,1], parallel to view.a_side.
struct WeightedPair {
    BipartitePairView view;
    std::vector<double> omega;
};

inline WeightedPair unit_weighted(BipartitePairView view)
{
    WeightedPair p;
    p.omega.assign(view.a_side.size(), 1.0);
    p.view = std::move(view);
    return p;
}

namespace detail {

inline std::vector<char> side_flags(int n, const std::vector<int>& side)
{
    std::vector<char> f(static_cast<std::size_t>(n), 0);
    for (int v : side) f[static_cast<std::size_t>(v)] = 1;
    return f;
}

inline long long count_in(const Graph& g, int v, const std::vector<char>& flags)
{
    long long c = 0;
    for (int u : g.neighbors(v)) c += flags[static_cast<std::size_t>(u)];
    return c;
}

} // namespace detail

inline double density(const BipartitePairView& p)
{
    if (p.a_side.empty() || p.b_side.empty()) throw EmptySideError("empty pair side");
    const auto bf = detail::side_flags(p.host->n(), p.b_side);
    long long e = 0;
    for (int v : p.a_side) e += detail::count_in(*p.host, v, bf);
    return static_cast<double>(e) / (static_cast<double>(p.a_side.size()) * static_cast<double>(p.b_side.size()));
}

inline double density(const Graph& host, const std::vector<int>& a, const std::vector<int>& b)
{
    return density(BipartitePairView{&host, a, b});
}

// weighted density d_w(A',B') = sum_{x in A'} w(x)|N(x,B')| / (|A'||B'|)
inline double weighted_density(const WeightedPair& p, const std::vector<int>& a_prime,
                               const std::vector<int>& b_prime)
{
    if (a_prime.empty() || b_prime.empty()) throw EmptySideError("empty subset side");
    std::vector<double> weight(static_cast<std::size_t>(p.view.host->n()), -1.0);
    for (std::size_t k = 0; k < p.view.a_side.size(); ++k)
        weight[static_cast<std::size_t>(p.view.a_side[k])] = p.omega[k];
    const auto bf = detail::side_flags(p.view.host->n(), b_prime);
    double num = 0.0;
    for (int x : a_prime) {
        double w = weight[static_cast<std::size_t>(x)];
        if (w < 0.0) throw DimensionError("subset vertex not on the weighted side");
        num += w * static_cast<double>(detail::count_in(*p.view.host, x, bf));
    }
    return num / (static_cast<double>(a_prime.size()) * static_cast<double>(b_prime.size()));
}

enum class ProbeStrategy { Uniform, Mixed };

struct ProbeReport {
    bool pass = true;
    double base_density = 0.0;
    double max_deviation = 0.0;
    std::vector<int> witness_a; // violating subsets, empty when pass
    std::vector<int> witness_b;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string strategy;
};

// Randomized falsifier for eps-regularity: samples qualifying subset pairs
// (|A'| >= eps|A|, |B'| >= eps|B|) and reports the worst observed density
// deviation. Uniform trials use inclusion sampling with rejection below the
// size floor; Mixed alternates in neighborhood-derived subsets, which catch
// block-structured irregularities that uniform subsets average away.
// A pass is evidence, not proof.
inline ProbeReport sample_regularity_probe(const BipartitePairView& p, double eps, int trials,
                                           std::uint64_t seed,
                                           ProbeStrategy strategy = ProbeStrategy::Mixed)
{
    if (trials < 1) throw SizeError("trials must be >= 1");
    ProbeReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.strategy = strategy == ProbeStrategy::Uniform ? "uniform" : "mixed";
    rep.base_density = density(p);

    const Graph& g = *p.host;
    const auto af = detail::side_flags(g.n(), p.a_side);
    const auto bf = detail::side_flags(g.n(), p.b_side);
    const std::size_t floor_a = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(p.a_side.size())));
    const std::size_t floor_b = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(p.b_side.size())));

    Rng rng(seed);
    auto uniform_subset = [&](const std::vector<int>& side, std::size_t floor_sz) {
        std::vector<int> sub;
        for (int attempt = 0; attempt < 64; ++attempt) {
            sub.clear();
            for (int v : side)
                if (rng.bernoulli(0.5)) sub.push_back(v);
            if (sub.size() >= std::max<std::size_t>(floor_sz, 1)) return sub;
        }
        return side; // degenerate floor; fall back to the full side
    };
    auto neighborhood_subset = [&](const std::vector<int>& side, const std::vector<char>& in_side,
                                   const std::vector<int>& other, std::size_t floor_sz) {
        const int pivot = other[static_cast<std::size_t>(rng.index(other.size()))];
        std::vector<int> sub;
        for (int u : g.neighbors(pivot))
            if (in_side[static_cast<std::size_t>(u)]) sub.push_back(u);
        if (sub.size() >= std::max<std::size_t>(floor_sz, 1) && sub.size() < side.size()) return sub;
        std::vector<int> comp;
        std::vector<char> f(static_cast<std::size_t>(g.n()), 0);
        for (int u : sub) f[static_cast<std::size_t>(u)] = 1;
        for (int v : side)
            if (!f[static_cast<std::size_t>(v)]) comp.push_back(v);
        if (comp.size() >= std::max<std::size_t>(floor_sz, 1)) return comp;
        return uniform_subset(side, floor_sz);
    };

    for (int t = 0; t < trials; ++t) {
        std::vector<int> sa, sb;
        if (strategy == ProbeStrategy::Mixed && t % 2 == 1) {
            sa = neighborhood_subset(p.a_side, af, p.b_side, floor_a);
            sb = neighborhood_subset(p.b_side, bf, p.a_side, floor_b);
        } else {
            sa = uniform_subset(p.a_side, floor_a);
            sb = uniform_subset(p.b_side, floor_b);
        }
        const double d = density(g, sa, sb);
        const double dev = std::fabs(d - rep.base_density);
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            if (dev > eps) {
                rep.witness_a = sa;
                rep.witness_b = sb;
            }
        }
    }
    rep.pass = rep.max_deviation <= eps;
    return rep;
}

// Weighted analog of the probe: worst observed |d_w(A,B) - d_w(A',B')| over
// sampled qualifying subset pairs.
inline ProbeReport weighted_sample_probe(const WeightedPair& p, double eps, int trials,
                                         std::uint64_t seed,
                                         ProbeStrategy strategy = ProbeStrategy::Mixed)
{
    if (trials < 1) throw SizeError("trials must be >= 1");
    ProbeReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.strategy = strategy == ProbeStrategy::Uniform ? "uniform" : "mixed";
    rep.base_density = weighted_density(p, p.view.a_side, p.view.b_side);

    const Graph& g = *p.view.host;
    const auto af = detail::side_flags(g.n(), p.view.a_side);
    const auto bf = detail::side_flags(g.n(), p.view.b_side);
    const std::size_t floor_a =
        static_cast<std::size_t>(std::ceil(eps * static_cast<double>(p.view.a_side.size())));
    const std::size_t floor_b =
        static_cast<std::size_t>(std::ceil(eps * static_cast<double>(p.view.b_side.size())));

    Rng rng(seed);
    auto uniform_subset = [&](const std::vector<int>& side, std::size_t floor_sz) {
        std::vector<int> sub;
        for (int attempt = 0; attempt < 64; ++attempt) {
            sub.clear();
            for (int v : side)
                if (rng.bernoulli(0.5)) sub.push_back(v);
            if (sub.size() >= std::max<std::size_t>(floor_sz, 1)) return sub;
        }
        return side;
    };
    auto neighborhood_subset = [&](const std::vector<int>& side, const std::vector<char>& in_side,
                                   const std::vector<int>& other, std::size_t floor_sz) {
        const int pivot = other[static_cast<std::size_t>(rng.index(other.size()))];
        std::vector<int> sub;
        for (int u : g.neighbors(pivot))
            if (in_side[static_cast<std::size_t>(u)]) sub.push_back(u);
        if (sub.size() >= std::max<std::size_t>(floor_sz, 1) && sub.size() < side.size()) return sub;
        std::vector<char> f(static_cast<std::size_t>(g.n()), 0);
        for (int u : sub) f[static_cast<std::size_t>(u)] = 1;
        std::vector<int> comp;
        for (int v : side)
            if (!f[static_cast<std::size_t>(v)]) comp.push_back(v);
        if (comp.size() >= std::max<std::size_t>(floor_sz, 1)) return comp;
        return uniform_subset(side, floor_sz);
    };

    for (int t = 0; t < trials; ++t) {
        std::vector<int> sa, sb;
        if (strategy == ProbeStrategy::Mixed && t % 2 == 1) {
            sa = neighborhood_subset(p.view.a_side, af, p.view.b_side, floor_a);
            sb = neighborhood_subset(p.view.b_side, bf, p.view.a_side, floor_b);
        } else {
            sa = uniform_subset(p.view.a_side, floor_a);
            sb = uniform_subset(p.view.b_side, floor_b);
        }
        const double d = weighted_density(p, sa, sb);
        const double dev = std::fabs(d - rep.base_density);
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            if (dev > eps) {
                rep.witness_a = sa;
                rep.witness_b = sb;
            }
        }
    }
    rep.pass = rep.max_deviation <= eps;
    return rep;
}

struct DegCodegThresholds {
    double deg_dev;    // per-vertex degree deviation, as a fraction of n
    double deg_frac;   // tolerated fraction of deviating vertices
    double codeg_dev;  // per-pair co-degree deviation, as a fraction of n
    double codeg_frac; // tolerated fraction of deviating pairs
};

inline DegCodegThresholds verbatim_degcodeg_thresholds(double eps)
{
    return {std::pow(eps, 14), std::pow(eps, 12), std::pow(eps, 9), std::pow(eps, 6)};
}

struct TestReport {
    bool pass = false;
    bool pass_degree = false;
    bool pass_codegree = false;
    double weighted_density_full = 0.0;
    long long deviating_vertices = 0;
    long long deviating_pairs = 0;
    long long n = 0;
    DegCodegThresholds thresholds{};
    bool verbatim_thresholds = true;
    int clamped_weights = 0;    // weights raised to eps before testing
    double verdict_eps = 0.0;   // implied weighted regularity of the tested pair
    double original_verdict_eps = 0.0; // doubled when clamping modified weights
};

// Degree/co-degree sufficient test for weighted regularity: if few vertices
// deviate in weighted degree and few pairs deviate in weighted co-degree,
// the pair is weighted 3eps-regular. Thresholds default to the verbatim
// powers of eps, which are vacuous at small n; callers may override and the
// report records which thresholds were used.
inline TestReport weighted_degcodeg_test(const WeightedPair& p, double eps,
                                         std::optional<DegCodegThresholds> override_thresholds = std::nullopt)
{
    const std::size_t n = p.view.a_side.size();
    if (n != p.view.b_side.size()) throw SizeError("degree/co-degree test needs |A| == |B|");
    if (static_cast<double>(n) < std::pow(eps, -6.0) && !override_thresholds)
        throw SizeError("n below eps^-6; supply override thresholds for desk-scale runs");

    TestReport rep;
    rep.n = static_cast<long long>(n);
    rep.thresholds = override_thresholds ? *override_thresholds : verbatim_degcodeg_thresholds(eps);
    rep.verbatim_thresholds = !override_thresholds;

    std::vector<double> w = p.omega;
    for (double& x : w)
        if (x < eps) {
            x = eps;
            ++rep.clamped_weights;
        }

    // neighborhoods of the A side restricted to B, as bitsets over B positions
    const int words = static_cast<int>((n + 63) / 64);
    std::vector<std::uint64_t> bits(n * static_cast<std::size_t>(words), 0);
    {
        std::vector<int> b_index(static_cast<std::size_t>(p.view.host->n()), -1);
        for (std::size_t j = 0; j < n; ++j)
            b_index[static_cast<std::size_t>(p.view.b_side[j])] = static_cast<int>(j);
        for (std::size_t i = 0; i < n; ++i)
            for (int u : p.view.host->neighbors(p.view.a_side[i])) {
                int j = b_index[static_cast<std::size_t>(u)];
                if (j >= 0)
                    bits[i * static_cast<std::size_t>(words) + static_cast<std::size_t>(j / 64)] |=
                        (1ULL << (j % 64));
            }
    }
    std::vector<long long> deg(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        long long d = 0;
        for (int k = 0; k < words; ++k)
            d += __builtin_popcountll(bits[i * static_cast<std::size_t>(words) + static_cast<std::size_t>(k)]);
        deg[i] = d;
    }

    double dw = 0.0;
    for (std::size_t i = 0; i < n; ++i) dw += w[i] * static_cast<double>(deg[i]);
    dw /= static_cast<double>(n) * static_cast<double>(n);
    rep.weighted_density_full = dw;

    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(w[i] * static_cast<double>(deg[i]) - dw * nd) > rep.thresholds.deg_dev * nd)
            ++rep.deviating_vertices;
    rep.pass_degree = static_cast<double>(rep.deviating_vertices) < rep.thresholds.deg_frac * nd;

    const double pair_total = nd * (nd - 1.0) / 2.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long long co = 0;
            const std::uint64_t* bi = &bits[i * static_cast<std::size_t>(words)];
            const std::uint64_t* bj = &bits[j * static_cast<std::size_t>(words)];
            for (int k = 0; k < words; ++k) co += __builtin_popcountll(bi[k] & bj[k]);
            if (std::fabs(w[i] * w[j] * static_cast<double>(co) - dw * dw * nd) >=
                rep.thresholds.codeg_dev * nd)
                ++rep.deviating_pairs;
        }
    rep.pass_codegree = static_cast<double>(rep.deviating_pairs) <= rep.thresholds.codeg_frac * pair_total;

    rep.pass = rep.pass_degree && rep.pass_codegree;
    rep.verdict_eps = 3.0 * eps;
    rep.original_verdict_eps = rep.clamped_weights > 0 ? 6.0 * eps : 3.0 * eps;
    return rep;
}

struct SubpairResult {
    WeightedPair pair;
    double eps_prime = 0.0; // max{2 eps, eps/gamma}
};

// Restriction of a weighted pair to subsets of declared relative size gamma,
// carrying forward the inherited regularity bound.
inline SubpairResult subpair(const WeightedPair& p, const std::vector<int>& a_prime,
                             const std::vector<int>& b_prime, double eps, double gamma)
{
    if (gamma < eps) throw TooSmallError("gamma below eps");
    if (static_cast<double>(a_prime.size()) < gamma * static_cast<double>(p.view.a_side.size()) ||
        static_cast<double>(b_prime.size()) < gamma * static_cast<double>(p.view.b_side.size()))
        throw TooSmallError("subset below the gamma size floor");

    std::vector<double> weight(static_cast<std::size_t>(p.view.host->n()), -1.0);
    for (std::size_t k = 0; k < p.view.a_side.size(); ++k)
        weight[static_cast<std::size_t>(p.view.a_side[k])] = p.omega[k];

    SubpairResult out;
    out.eps_prime = std::max(2.0 * eps, eps / gamma);
    out.pair.view.host = p.view.host;
    out.pair.view.a_side = a_prime;
    out.pair.view.b_side = b_prime;
    out.pair.omega.reserve(a_prime.size());
    for (int x : a_prime) {
        double w = weight[static_cast<std::size_t>(x)];
        if (w < 0.0) throw DimensionError("subset vertex not on the weighted side");
        out.pair.omega.push_back(w);
    }
    return out;
}

struct SuperRegularReport {
    bool min_degree_ok = false;  // deg(v, other side) >= delta * |other side|, both sides
    bool half_floor_ok = false;  // the delta/2 floor, tracked separately
    double density_value = 0.0;
    ProbeReport probe;
    bool ok() const { return min_degree_ok && probe.pass; }
};

inline SuperRegularReport super_regular_check(const BipartitePairView& p, double eps, double delta,
                                              int trials = 200, std::uint64_t seed = 1,
                                              ProbeStrategy strategy = ProbeStrategy::Mixed)
{
    SuperRegularReport rep;
    rep.density_value = density(p);
    const auto af = detail::side_flags(p.host->n(), p.a_side);
    const auto bf = detail::side_flags(p.host->n(), p.b_side);
    rep.min_degree_ok = true;
    rep.half_floor_ok = true;
    for (int v : p.a_side) {
        const double d = static_cast<double>(detail::count_in(*p.host, v, bf));
        if (d < delta * static_cast<double>(p.b_side.size())) rep.min_degree_ok = false;
        if (d < 0.5 * delta * static_cast<double>(p.b_side.size())) rep.half_floor_ok = false;
    }
    for (int v : p.b_side) {
        const double d = static_cast<double>(detail::count_in(*p.host, v, af));
        if (d < delta * static_cast<double>(p.a_side.size())) rep.min_degree_ok = false;
        if (d < 0.5 * delta * static_cast<double>(p.a_side.size())) rep.half_floor_ok = false;
    }
    rep.probe = sample_regularity_probe(p, eps, trials, seed, strategy);
    return rep;
}

struct TupleWitness {
    int cls = 0;
    std::vector<int> tuple;
    double fraction = 0.0;
};

struct TupleConditionReport {
    bool pass = true;
    double min_fraction = 1.0;
    bool exhaustive = false;
    long long tuples_checked = 0;
    std::vector<TupleWitness> witnesses; // capped
};

// Checks that every (a+1)-tuple outside V_i has a common neighborhood of at
// least iota|V_i| inside V_i. Exhaustive when the tuple count is small,
// sampled otherwise.
inline TupleConditionReport tuple_condition_check(const RPartitionedGraph& host, int a, double iota,
                                                  long long sample, std::uint64_t seed,
                                                  long long exhaustive_budget = 10'000'000)
{
    if (sample < 1) throw SizeError("sample must be >= 1");
    const Graph& g = host.graph;
    const int n = g.n();
    const int r = host.partition.r();
    const int k = a + 1;

    double total = 1.0;
    for (int i = 0; i < k; ++i) total *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    TupleConditionReport rep;
    rep.exhaustive = total * r <= static_cast<double>(exhaustive_budget);

    std::vector<char> in_class(static_cast<std::size_t>(n), 0);
    auto eval_tuple = [&](int cls, const std::vector<int>& tuple) {
        const auto& vi = host.partition.cls(cls);
        int common = 0;
        for (int v : vi) {
            bool all = true;
            for (int u : tuple)
                if (!g.has_edge(u, v)) {
                    all = false;
                    break;
                }
            common += all;
        }
        const double frac = static_cast<double>(common) / static_cast<double>(vi.size());
        rep.min_fraction = std::min(rep.min_fraction, frac);
        ++rep.tuples_checked;
        if (frac < iota) {
            rep.pass = false;
            if (rep.witnesses.size() < 16) rep.witnesses.push_back({cls, tuple, frac});
        }
    };

    for (int cls = 0; cls < r; ++cls) {
        for (char& f : in_class) f = 0;
        for (int v : host.partition.cls(cls)) in_class[static_cast<std::size_t>(v)] = 1;
        std::vector<int> outside;
        for (int v = 0; v < n; ++v)
            if (!in_class[static_cast<std::size_t>(v)]) outside.push_back(v);
        if (static_cast<int>(outside.size()) < k) continue;

        if (rep.exhaustive) {
            std::vector<int> idx(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
            std::vector<int> tuple(static_cast<std::size_t>(k));
            for (;;) {
                for (int i = 0; i < k; ++i)
                    tuple[static_cast<std::size_t>(i)] = outside[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
                eval_tuple(cls, tuple);
                int i = k - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<int>(outside.size()) - k + i) --i;
                if (i < 0) break;
                ++idx[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < k; ++j)
                    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
        } else {
            Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(cls));
            for (long long t = 0; t < sample; ++t) {
                auto picks = rng.sample_indices(static_cast<int>(outside.size()), k);
                std::vector<int> tuple;
                tuple.reserve(static_cast<std::size_t>(k));
                for (int i : picks) tuple.push_back(outside[static_cast<std::size_t>(i)]);
                eval_tuple(cls, tuple);
            }
        }
    }
    return rep;
}

} // namespace abl
