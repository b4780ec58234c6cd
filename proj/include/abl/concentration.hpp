#pragma once

#include <abl/errors.hpp>
#include <abl/graph.hpp>
#include <abl/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace abl {

// A sequence of 0-1 draws whose conditional success probability may depend on
// the full history but must stay inside [p1, p2]. Every emitted probability
// is asserted against the bounds.
struct DependentBernoulliProcess {
    int n = 0;
    double p1 = 0.0;
    double p2 = 1.0;
    std::function<double(const std::vector<std::uint8_t>&)> prob;
    std::string name;
};

inline DependentBernoulliProcess independent_process(int n, double p)
{
    return {n, p, p, [p](const std::vector<std::uint8_t>&) { return p; }, "independent"};
}

// switches between the extremes depending on the last outcome
inline DependentBernoulliProcess alternating_process(int n, double p1, double p2)
{
    return {n, p1, p2,
            [p1, p2](const std::vector<std::uint8_t>& h) {
                if (h.empty()) return (p1 + p2) / 2.0;
                return h.back() ? p1 : p2;
            },
            "alternating"};
}

// drifts with the running mean: many successes push the probability down
inline DependentBernoulliProcess contrarian_process(int n, double p1, double p2)
{
    return {n, p1, p2,
            [p1, p2](const std::vector<std::uint8_t>& h) {
                if (h.empty()) return p2;
                double mean = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
                return p1 + (p2 - p1) * (1.0 - mean);
            },
            "contrarian"};
}

// parity of the history picks an extreme
inline DependentBernoulliProcess parity_process(int n, double p1, double p2)
{
    return {n, p1, p2,
            [p1, p2](const std::vector<std::uint8_t>& h) {
                long ones = std::accumulate(h.begin(), h.end(), 0L);
                return (ones % 2 == 0) ? p2 : p1;
            },
            "parity"};
}

inline std::vector<std::uint8_t> run_process(const DependentBernoulliProcess& proc, Rng& rng)
{
    std::vector<std::uint8_t> h;
    h.reserve(static_cast<std::size_t>(proc.n));
    for (int i = 0; i < proc.n; ++i) {
        const double p = proc.prob(h);
        if (p < proc.p1 - 1e-12 || p > proc.p2 + 1e-12)
            throw Error("process emitted a conditional probability outside [p1,p2]");
        h.push_back(rng.bernoulli(p) ? 1 : 0);
    }
    return h;
}

// one-sided Wilson interval limits at z standard errors
inline double wilson_upper(double phat, long long m, double z = 3.0)
{
    if (m <= 0) return 1.0;
    const double zz = z * z / static_cast<double>(m);
    return (phat + zz / 2.0 + z * std::sqrt(phat * (1.0 - phat) / static_cast<double>(m) + zz * zz / 4.0 / (z * z))) /
           (1.0 + zz);
}

inline double wilson_lower(double phat, long long m, double z = 3.0)
{
    if (m <= 0) return 0.0;
    const double zz = z * z / static_cast<double>(m);
    return std::max(0.0, (phat + zz / 2.0 -
                          z * std::sqrt(phat * (1.0 - phat) / static_cast<double>(m) + zz * zz / 4.0 / (z * z))) /
                             (1.0 + zz));
}

struct TailReport {
    std::string process;
    double bound = 0.0;    // claimed tail bound
    double estimate = 0.0; // Monte-Carlo estimate
    double ci_low = 0.0;
    double ci_high = 0.0;
    long long trials = 0;
    bool pass = false;
};

struct PseudoChernoffReport {
    TailReport lower_tail; // P[A <= (1-c) p1 n] vs exp(-c^2 p1 n / 3)
    TailReport upper_tail; // P[A >= (1+c) p2 n] vs exp(-c^2 p2 n / 3)
    bool pass = false;
};

// Monte-Carlo check of the two history-bounded tail inequalities. A claim
// fails only when even the 3-SE Wilson lower limit of the estimated tail
// exceeds the bound.
inline PseudoChernoffReport pseudo_chernoff_validate(const DependentBernoulliProcess& proc, double c,
                                                     long long trials, std::uint64_t seed)
{
    if (!(c > 0.0 && c <= 1.0)) throw DimensionError("c must be in (0,1]");
    if (!(0.0 <= proc.p1 && proc.p1 <= proc.p2 && proc.p2 <= 1.0))
        throw DimensionError("need 0 <= p1 <= p2 <= 1");
    const double n = static_cast<double>(proc.n);
    long long low_hits = 0, high_hits = 0;
    Rng rng(seed);
    for (long long t = 0; t < trials; ++t) {
        const auto h = run_process(proc, rng);
        const long sum = std::accumulate(h.begin(), h.end(), 0L);
        if (static_cast<double>(sum) <= (1.0 - c) * proc.p1 * n) ++low_hits;
        if (static_cast<double>(sum) >= (1.0 + c) * proc.p2 * n) ++high_hits;
    }
    PseudoChernoffReport rep;
    auto fill = [&](TailReport& tr, long long hits, double bound) {
        tr.process = proc.name;
        tr.trials = trials;
        tr.estimate = static_cast<double>(hits) / static_cast<double>(trials);
        tr.ci_low = wilson_lower(tr.estimate, trials);
        tr.ci_high = wilson_upper(tr.estimate, trials);
        tr.bound = bound;
        tr.pass = tr.ci_low <= bound;
    };
    fill(rep.lower_tail, low_hits, std::exp(-c * c / 3.0 * proc.p1 * n));
    fill(rep.upper_tail, high_hits, std::exp(-c * c / 3.0 * proc.p2 * n));
    rep.pass = rep.lower_tail.pass && rep.upper_tail.pass;
    return rep;
}

// classical two-sided bound for independent draws, as a baseline sanity check
inline TailReport classical_chernoff_validate(int n, double p, double c, long long trials,
                                              std::uint64_t seed)
{
    auto proc = independent_process(n, p);
    Rng rng(seed);
    long long hits = 0;
    for (long long t = 0; t < trials; ++t) {
        const auto h = run_process(proc, rng);
        const long sum = std::accumulate(h.begin(), h.end(), 0L);
        if (std::fabs(static_cast<double>(sum) - p * n) >= c * p * n) ++hits;
    }
    TailReport tr;
    tr.process = "independent";
    tr.trials = trials;
    tr.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    tr.ci_low = wilson_lower(tr.estimate, trials);
    tr.ci_high = wilson_upper(tr.estimate, trials);
    tr.bound = std::exp(-c * c / 3.0 * p * static_cast<double>(n));
    tr.pass = tr.ci_low <= tr.bound;
    return tr;
}

// m disjoint index sets of size at most a
struct DisjointFamily {
    std::vector<std::vector<int>> sets;

    void validate(int n, int a) const
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (const auto& s : sets) {
            if (s.empty() || static_cast<int>(s.size()) > a)
                throw DimensionError("family set size outside [1,a]");
            for (int i : s) {
                if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)])
                    throw DimensionError("family sets must be disjoint subsets of [n]");
                seen[static_cast<std::size_t>(i)] = 1;
            }
        }
    }
};

struct TupleChernoffReport {
    TailReport success; // P[count >= p^a m / 2] vs 1 - 2 exp(-p^a m / 12)
    int a = 0;
    long long m = 0;
    double threshold = 0.0;
    bool pass = false;
};

// Monte-Carlo check that all-ones sets are plentiful: with probability at
// least 1 - 2 exp(-p^a m / 12), at least half the expected p^a fraction of
// the family is fully switched on.
inline TupleChernoffReport tuple_chernoff_validate(const DependentBernoulliProcess& proc,
                                                   const DisjointFamily& family, double p,
                                                   long long trials, std::uint64_t seed)
{
    int a = 0;
    for (const auto& s : family.sets) a = std::max(a, static_cast<int>(s.size()));
    family.validate(proc.n, a);
    const long long m = static_cast<long long>(family.sets.size());
    const double pam = std::pow(p, a) * static_cast<double>(m);

    Rng rng(seed);
    long long hits = 0;
    for (long long t = 0; t < trials; ++t) {
        const auto h = run_process(proc, rng);
        long long count = 0;
        for (const auto& s : family.sets) {
            bool all = true;
            for (int i : s)
                if (!h[static_cast<std::size_t>(i)]) {
                    all = false;
                    break;
                }
            count += all;
        }
        if (static_cast<double>(count) >= 0.5 * pam) ++hits;
    }
    TupleChernoffReport rep;
    rep.a = a;
    rep.m = m;
    rep.threshold = 0.5 * pam;
    rep.success.process = proc.name;
    rep.success.trials = trials;
    rep.success.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    rep.success.ci_low = wilson_lower(rep.success.estimate, trials);
    rep.success.ci_high = wilson_upper(rep.success.estimate, trials);
    rep.success.bound = 1.0 - 2.0 * std::exp(-pam / 12.0);
    rep.success.pass = rep.success.ci_high >= rep.success.bound;
    rep.pass = rep.success.pass;
    return rep;
}

// Adversary for the tuple bound: inside-set draws honor the conditional floor
// p whenever all earlier members of the same set succeeded, and sink to
// p_punish otherwise; outside-set draws roam freely in [p_punish, p].
inline DependentBernoulliProcess tuple_adversary_process(int n, const DisjointFamily& family, double p,
                                                         double p_punish)
{
    std::vector<int> set_of(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < family.sets.size(); ++k)
        for (int i : family.sets[k]) set_of[static_cast<std::size_t>(i)] = static_cast<int>(k);
    auto sets = family.sets;
    return {n, p_punish, p,
            [set_of, sets, p, p_punish](const std::vector<std::uint8_t>& h) {
                const int i = static_cast<int>(h.size());
                const int k = set_of[static_cast<std::size_t>(i)];
                if (k < 0) return p_punish; // outside the family
                for (int j : sets[static_cast<std::size_t>(k)]) {
                    if (j >= i) break;
                    if (!h[static_cast<std::size_t>(j)]) return p_punish;
                }
                return p;
            },
            "tuple-adversary"};
}

// Iterated swap-repair equitable coloring: greedy proper coloring with
// Delta+1 classes, then rebalancing by single moves and short alternating
// move paths, restarting from a reshuffled greedy order when stuck.
inline Partition equitable_coloring(const Graph& g)
{
    const int n = g.n();
    const int k = g.max_degree() + 1;
    if (n == 0) return Partition(std::vector<std::vector<int>>{});

    Rng rng(0xec01u);
    const int lo = n / k, hi = (n % k == 0) ? n / k : n / k + 1;

    auto movable = [&](const std::vector<int>& color, int v, int to) {
        for (int u : g.neighbors(v))
            if (color[static_cast<std::size_t>(u)] == to) return false;
        return true;
    };

    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        if (attempt > 0) rng.shuffle(order);

        std::vector<int> color(static_cast<std::size_t>(n), -1);
        std::vector<int> size(static_cast<std::size_t>(k), 0);
        for (int v : order) {
            std::vector<char> used(static_cast<std::size_t>(k), 0);
            for (int u : g.neighbors(v))
                if (color[static_cast<std::size_t>(u)] >= 0)
                    used[static_cast<std::size_t>(color[static_cast<std::size_t>(u)])] = 1;
            int best = -1;
            for (int c = 0; c < k; ++c)
                if (!used[static_cast<std::size_t>(c)] && (best < 0 || size[static_cast<std::size_t>(c)] < size[static_cast<std::size_t>(best)]))
                    best = c;
            color[static_cast<std::size_t>(v)] = best;
            ++size[static_cast<std::size_t>(best)];
        }

        // rebalance until every class size lies in [lo, hi]
        bool ok = true;
        for (int round = 0; round < 4 * n * k; ++round) {
            int big = 0, small = 0;
            for (int c = 0; c < k; ++c) {
                if (size[static_cast<std::size_t>(c)] > size[static_cast<std::size_t>(big)]) big = c;
                if (size[static_cast<std::size_t>(c)] < size[static_cast<std::size_t>(small)]) small = c;
            }
            if (size[static_cast<std::size_t>(big)] - size[static_cast<std::size_t>(small)] <= 1 &&
                size[static_cast<std::size_t>(small)] >= lo && size[static_cast<std::size_t>(big)] <= hi)
                break;

            // BFS over classes: which classes can currently send a vertex where
            std::vector<int> prev_class(static_cast<std::size_t>(k), -2);
            std::vector<int> via_vertex(static_cast<std::size_t>(k), -1);
            std::vector<int> frontier{big};
            prev_class[static_cast<std::size_t>(big)] = -1;
            bool moved = false;
            while (!frontier.empty() && !moved) {
                std::vector<int> next;
                for (int from : frontier) {
                    for (int v = 0; v < n && !moved; ++v) {
                        if (color[static_cast<std::size_t>(v)] != from) continue;
                        for (int to = 0; to < k; ++to) {
                            if (prev_class[static_cast<std::size_t>(to)] != -2 || to == from) continue;
                            if (!movable(color, v, to)) continue;
                            prev_class[static_cast<std::size_t>(to)] = from;
                            via_vertex[static_cast<std::size_t>(to)] = v;
                            if (size[static_cast<std::size_t>(to)] < size[static_cast<std::size_t>(big)] - 1 ||
                                size[static_cast<std::size_t>(to)] < lo) {
                                // unwind the path, executing the moves end-first
                                int cur = to;
                                while (prev_class[static_cast<std::size_t>(cur)] != -1) {
                                    const int w = via_vertex[static_cast<std::size_t>(cur)];
                                    color[static_cast<std::size_t>(w)] = cur;
                                    ++size[static_cast<std::size_t>(cur)];
                                    cur = prev_class[static_cast<std::size_t>(cur)];
                                    --size[static_cast<std::size_t>(cur)];
                                }
                                moved = true;
                                break;
                            }
                            next.push_back(to);
                        }
                    }
                }
                frontier = std::move(next);
            }
            if (!moved) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        int mx = 0, mn = n;
        for (int c = 0; c < k; ++c) {
            mx = std::max(mx, size[static_cast<std::size_t>(c)]);
            mn = std::min(mn, size[static_cast<std::size_t>(c)]);
        }
        if (mx - mn > 1) continue;
        return Partition::from_class_of(color, k);
    }
    throw ConstructionFailed("equitable coloring did not stabilize");
}

} // namespace abl
