#pragma once

#include <abl/concentration.hpp>
#include <abl/embed_search.hpp>
#include <abl/json_io.hpp>
#include <abl/pipeline.hpp>

#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace abl {

// ---------------------------------------------------------------------------
// experiment drivers behind the CLI subcommands; configs are plain JSON

// target built from vertex-disjoint copies of a small r-chromatic graph,
// classes striped by a proper coloring of the copy
struct FactorTarget {
    Graph graph;
    Partition partition;
    int r = 0;
};

inline FactorTarget make_factor_target(const Graph& f, int copies, int r)
{
    // proper coloring of f with r colors, greedy (f is small)
    std::vector<int> color(static_cast<std::size_t>(f.n()), -1);
    for (int v = 0; v < f.n(); ++v) {
        std::vector<char> used(static_cast<std::size_t>(r), 0);
        for (int u : f.neighbors(v))
            if (color[static_cast<std::size_t>(u)] >= 0) used[static_cast<std::size_t>(color[static_cast<std::size_t>(u)])] = 1;
        for (int c = 0; c < r; ++c)
            if (!used[static_cast<std::size_t>(c)]) {
                color[static_cast<std::size_t>(v)] = c;
                break;
            }
        if (color[static_cast<std::size_t>(v)] < 0)
            throw DimensionError("factor graph is not r-colorable with r = " + std::to_string(r));
    }
    FactorTarget out;
    out.r = r;
    out.graph = f_factor_target(f, copies);
    std::vector<int> cls(static_cast<std::size_t>(out.graph.n()));
    for (int c = 0; c < copies; ++c)
        for (int v = 0; v < f.n(); ++v)
            cls[static_cast<std::size_t>(c * f.n() + v)] = color[static_cast<std::size_t>(v)];
    out.partition = Partition::from_class_of(cls, r);
    return out;
}

// Restriction families as random subsets of each cluster; the restricted
// vertices are chosen from the earliest ordering positions, pairwise
// non-adjacent, skipping the stable ending.
inline ImageRestrictions build_restrictions(const BlowupInstance& inst, const StableEnding& se,
                                            int per_class, int family_count, int family_size,
                                            std::uint64_t seed)
{
    const int r = inst.target.partition.r();
    ImageRestrictions ir = ImageRestrictions::none(inst.target.graph.n(), r);
    if (per_class <= 0 || family_count <= 0) return ir;
    Rng rng(seed);
    for (int i = 0; i < r; ++i) {
        const auto& vi = inst.host.partition.cls(i);
        for (int k = 0; k < family_count; ++k) {
            auto picks = rng.sample_indices(static_cast<int>(vi.size()), family_size);
            std::vector<int> fam;
            fam.reserve(picks.size());
            for (int idx : picks) fam.push_back(vi[static_cast<std::size_t>(idx)]);
            std::sort(fam.begin(), fam.end());
            ir.families[static_cast<std::size_t>(i)].push_back(std::move(fam));
        }
    }
    std::vector<char> in_w(static_cast<std::size_t>(inst.target.graph.n()), 0);
    for (int v : se.w) in_w[static_cast<std::size_t>(v)] = 1;
    std::vector<char> blocked(static_cast<std::size_t>(inst.target.graph.n()), 0);
    const auto cls = inst.target.partition.class_of(inst.target.graph.n());
    std::vector<int> taken(static_cast<std::size_t>(r), 0);
    for (int x : se.ordering.order) {
        const int i = cls[static_cast<std::size_t>(x)];
        if (taken[static_cast<std::size_t>(i)] >= per_class) continue;
        if (in_w[static_cast<std::size_t>(x)] || blocked[static_cast<std::size_t>(x)]) continue;
        ir.assignment[static_cast<std::size_t>(x)] = taken[static_cast<std::size_t>(i)] % family_count;
        ++taken[static_cast<std::size_t>(i)];
        blocked[static_cast<std::size_t>(x)] = 1;
        for (int y : inst.target.graph.neighbors(x)) blocked[static_cast<std::size_t>(y)] = 1;
    }
    return ir;
}

struct SeedSweepResult {
    json per_seed = json::array();
    int successes = 0;
    int total = 0;
    double rate() const { return total == 0 ? 0.0 : static_cast<double>(successes) / total; }
};

// fans a per-seed job across workers; reports are merged in seed order
template <typename Job>
SeedSweepResult sweep_seeds(const std::vector<std::uint64_t>& seeds, int threads, Job job)
{
    SeedSweepResult out;
    out.total = static_cast<int>(seeds.size());
    std::vector<json> reports(seeds.size());
    std::vector<char> ok(seeds.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= seeds.size()) return;
            bool success = false;
            reports[k] = job(seeds[k], success);
            ok[k] = success;
        }
    };
    const int nt = std::max(1, threads);
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        out.per_seed.push_back(reports[k]);
        out.successes += ok[k];
    }
    return out;
}

inline std::vector<std::uint64_t> seeds_from_json(const json& cfg, int default_count = 20)
{
    if (cfg.contains("seeds")) return cfg["seeds"].get<std::vector<std::uint64_t>>();
    const int count = cfg.value("seed_count", default_count);
    const std::uint64_t base = cfg.value("seed", 1ULL);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) seeds[static_cast<std::size_t>(i)] = base + static_cast<std::uint64_t>(i);
    return seeds;
}

// kind: embed — factor target into a fresh blow-up host per seed
inline json run_embed_experiment(const json& cfg, int threads = 1)
{
    const Graph f = graph_from_spec(cfg.value("f", std::string("complete:3")));
    const int r = cfg.value("r", 3);
    const int copies = cfg.value("copies", 400);
    const double p = cfg.value("pair_density", 0.5);
    ConstantsLedger ledger = ledger_from_json(cfg.at("constants"), cfg.value("mode", "practical"));
    PipelineOptions opt;
    opt.stable_mu = cfg.value("stable_mu", 0.0);
    opt.spanning = cfg.value("spanning", true);
    opt.retries = cfg.value("retries", 3);
    opt.monitor_checkpoints = cfg.value("monitor_checkpoints", 0);
    if (cfg.contains("monitor_thresholds")) {
        const auto& t = cfg["monitor_thresholds"];
        opt.monitor_thresholds = DegCodegThresholds{t.value("deg_dev", 0.1), t.value("deg_frac", 0.1),
                                                    t.value("codeg_dev", 0.1), t.value("codeg_frac", 0.1)};
        opt.monitor_eps = cfg.value("monitor_eps", 0.1);
    }
    opt.monitor_probe_trials = cfg.value("monitor_probe_trials", opt.monitor_probe_trials);

    FactorTarget target = make_factor_target(f, copies, r);
    const json rcfg = cfg.value("restrictions", json::object());
    const auto seeds = seeds_from_json(cfg);

    auto sweep = sweep_seeds(seeds, threads, [&](std::uint64_t seed, bool& success) {
        BlowupInstance inst;
        inst.target.graph = target.graph;
        inst.target.reduced = complete_graph(r);
        inst.target.partition = target.partition;
        BlowupHostSpec spec;
        spec.reduced = complete_graph(r);
        for (int i = 0; i < r; ++i) spec.cluster_sizes.push_back(target.partition.size_of(i));
        spec.pair_density = p;
        spec.rng_seed = seed * 7919 + 13;
        inst.host = blowup_host(spec).rpg;

        StableEnding se = prepare_stable_ordering(inst, ledger, opt.stable_mu);
        ImageRestrictions ir = build_restrictions(
            inst, se, rcfg.value("per_class", 0), rcfg.value("family_count", 0),
            rcfg.value("family_size", 0), rcfg.value("seed", seed ^ 0xaaULL));
        auto res = pipeline_embed_with(inst, ledger, ir, seed, opt, se);
        success = res.success;
        json rep = to_json(res, /*include_phi=*/false);
        rep["seed"] = seed;
        return rep;
    });

    return json{{"kind", "embed"},
                {"ledger", to_json(ledger)},
                {"per_seed", sweep.per_seed},
                {"successes", sweep.successes},
                {"seeds_run", sweep.total},
                {"success_rate", sweep.rate()}};
}

// kind: ffactor — K_r^(k) host built directly; the factor splits into k
// chunks of l_i * r copies each, every chunk embedded into its own block
inline json run_ffactor_experiment(const json& cfg, int threads = 1)
{
    const Graph f = graph_from_spec(cfg.value("f", std::string("complete:3")));
    const int r = cfg.value("r", 3);
    const int k = cfg.value("k", 2);
    const int total_copies = cfg.value("copies", 600); // multiple of r preferred
    const double p = cfg.value("pair_density", 0.5);
    ConstantsLedger ledger = ledger_from_json(cfg.at("constants"), cfg.value("mode", "practical"));
    PipelineOptions opt;
    opt.stable_mu = cfg.value("stable_mu", 0.0);
    opt.retries = cfg.value("retries", 3);

    // chunk accounting: copies per block differ by at most r
    const int per_block = total_copies / k;
    std::vector<int> block_copies(static_cast<std::size_t>(k), per_block);
    int rem = total_copies - per_block * k;
    for (int i = 0; rem > 0; ++i, --rem) ++block_copies[static_cast<std::size_t>(i)];

    const auto seeds = seeds_from_json(cfg);
    auto sweep = sweep_seeds(seeds, threads, [&](std::uint64_t seed, bool& success) {
        json blocks = json::array();
        bool all_ok = true;
        long long embedded_vertices = 0;
        for (int b = 0; b < k; ++b) {
            FactorTarget target = make_factor_target(f, block_copies[static_cast<std::size_t>(b)], r);
            BlowupInstance inst;
            inst.target.graph = target.graph;
            inst.target.reduced = complete_graph(r);
            inst.target.partition = target.partition;
            BlowupHostSpec spec;
            spec.reduced = complete_graph(r);
            for (int i = 0; i < r; ++i) spec.cluster_sizes.push_back(target.partition.size_of(i));
            spec.pair_density = p;
            spec.rng_seed = seed * 104729 + static_cast<std::uint64_t>(b);
            inst.host = blowup_host(spec).rpg;
            auto ir = ImageRestrictions::none(inst.target.graph.n(), r);
            auto res = pipeline_embed(inst, ledger, ir, seed ^ (static_cast<std::uint64_t>(b) << 32), opt);
            all_ok = all_ok && res.success;
            if (res.success) embedded_vertices += inst.target.graph.n();
            blocks.push_back(json{{"block", b},
                                  {"copies", block_copies[static_cast<std::size_t>(b)]},
                                  {"success", res.success},
                                  {"failure_kind", res.failure_kind},
                                  {"attempts", res.attempts}});
        }
        success = all_ok;
        return json{{"seed", seed},
                    {"success", all_ok},
                    {"blocks", blocks},
                    {"embedded_vertices", embedded_vertices},
                    {"target_vertices", static_cast<long long>(total_copies) * f.n()}};
    });

    return json{{"kind", "ffactor"},
                {"ledger", to_json(ledger)},
                {"block_copies", block_copies},
                {"per_seed", sweep.per_seed},
                {"successes", sweep.successes},
                {"seeds_run", sweep.total},
                {"success_rate", sweep.rate()}};
}

// kind: universality — one random host per seed, a family of sparse targets
// equitably colored and embedded through the full pipeline
inline json run_universality_experiment(const json& cfg, int threads = 1)
{
    const int n = cfg.value("n", 400);
    const double p = cfg.value("p", 0.5);
    const json base_constants = cfg.at("constants");
    const int retries = cfg.value("retries", 3);
    const double stable_mu = cfg.value("stable_mu", 0.35);
    const int target_count = cfg.value("targets", 20);
    const int forest_max_deg = cfg.value("forest_max_deg", 5);
    const int graph_max_deg = cfg.value("graph_max_deg", 5);

    const auto seeds = seeds_from_json(cfg, 1);
    auto sweep = sweep_seeds(seeds, threads, [&](std::uint64_t seed, bool& success) {
        Graph host_graph = gnp(n, p, seed * 31 + 5);
        json targets = json::array();
        int ok_count = 0;
        Rng trng(seed ^ 0x7a6e5ULL);
        for (int t = 0; t < target_count; ++t) {
            const bool forest = t % 2 == 0;
            Graph target = forest ? random_forest(n, forest_max_deg, trng.next())
                                  : random_bounded_degree_graph(n, graph_max_deg,
                                                                static_cast<int>(0.45 * n), trng.next());
            Partition coloring = equitable_coloring(target);
            const int kcls = coloring.r();

            // host clusters sized to the coloring, random balanced split
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            Rng prng(seed * 613 + static_cast<std::uint64_t>(t));
            prng.shuffle(perm);
            std::vector<std::vector<int>> hcls(static_cast<std::size_t>(kcls));
            std::size_t at = 0;
            for (int i = 0; i < kcls; ++i)
                for (int c = 0; c < coloring.size_of(i); ++c)
                    hcls[static_cast<std::size_t>(i)].push_back(perm[at++]);

            BlowupInstance inst;
            inst.target.graph = target;
            inst.target.reduced = complete_graph(kcls);
            inst.target.partition = coloring;
            inst.host.graph = host_graph;
            inst.host.reduced = complete_graph(kcls);
            inst.host.partition = Partition(std::move(hcls));

            json constants = base_constants;
            constants["r"] = kcls;
            constants["Delta_R"] = kcls;
            constants["delta"] = p;
            ConstantsLedger ledger = ledger_from_json(constants, "practical");

            PipelineOptions opt;
            opt.stable_mu = stable_mu;
            opt.retries = retries;
            auto ir = ImageRestrictions::none(n, kcls);
            json entry;
            entry["index"] = t;
            entry["family"] = forest ? "forest" : "bounded_degree";
            entry["classes"] = kcls;
            try {
                auto res = pipeline_embed(inst, ledger, ir, seed * 911 + static_cast<std::uint64_t>(t), opt);
                entry["success"] = res.success;
                entry["measured_a"] = res.measured_a;
                entry["attempts"] = res.attempts;
                entry["failure_kind"] = res.failure_kind;
                ok_count += res.success;
            } catch (const Error& e) {
                entry["success"] = false;
                entry["error"] = e.what();
            }
            targets.push_back(entry);
        }
        success = ok_count == target_count;
        return json{{"seed", seed},
                    {"targets", targets},
                    {"target_successes", ok_count},
                    {"target_count", target_count},
                    {"target_rate", static_cast<double>(ok_count) / target_count}};
    });

    double rate_sum = 0.0;
    for (const auto& s : sweep.per_seed) rate_sum += s.value("target_rate", 0.0);
    return json{{"kind", "universality"},
                {"per_seed", sweep.per_seed},
                {"seeds_run", sweep.total},
                {"target_rate", sweep.total ? rate_sum / sweep.total : 0.0}};
}

// kind: optimality — block-host constructions, their degree/distance/
// regularity facts, the two non-embeddability checks, and domination bounds
inline json run_optimality_experiment(const json& cfg)
{
    json out{{"kind", "optimality"}};

    {
        const int n = cfg.value("n", 2000);
        const int k = cfg.value("k", 10);
        const std::uint64_t seed = cfg.value("seed", 7ULL);
        auto inst = optimality_gk(n, k, seed);

        bool degrees_ok = true;
        for (int v = 0; v < inst.host.n(); ++v) degrees_ok = degrees_ok && inst.host.degree(v) == n / 2;

        // dist(W_1, W_2) > 2 iff N(N(W_1)) avoids W_2
        std::vector<char> reach(static_cast<std::size_t>(inst.host.n()), 0);
        for (int w : inst.w_blocks[0])
            for (int u : inst.host.neighbors(w)) reach[static_cast<std::size_t>(u)] = 1;
        std::vector<char> reach2(static_cast<std::size_t>(inst.host.n()), 0);
        for (int u = 0; u < inst.host.n(); ++u)
            if (reach[static_cast<std::size_t>(u)])
                for (int v : inst.host.neighbors(u)) reach2[static_cast<std::size_t>(v)] = 1;
        bool distance_ok = true;
        for (int w : inst.w_blocks[1]) distance_ok = distance_ok && !reach2[static_cast<std::size_t>(w)];

        BipartitePairView pair;
        pair.host = &inst.host;
        for (int v = 0; v < n; ++v) pair.a_side.push_back(v);
        for (int v = n; v < 2 * n; ++v) pair.b_side.push_back(v);
        // uniform subsets: the blocks sit exactly at deviation 1/k, which the
        // degree/co-degree oracle accounts for through its pair fractions
        auto probe = sample_regularity_probe(pair, cfg.value("probe_eps", 0.1),
                                             cfg.value("probe_trials", 300), seed ^ 0x9dULL,
                                             ProbeStrategy::Uniform);
        auto degcodeg = weighted_degcodeg_test(
            unit_weighted(pair), cfg.value("probe_eps", 0.1),
            DegCodegThresholds{cfg.value("degcodeg_dev", 0.05), cfg.value("degcodeg_frac", 0.01),
                               cfg.value("codeg_dev", 0.05), cfg.value("codeg_frac", 2.2 / k)});
        out["gk"] = json{{"n", n},
                         {"k", k},
                         {"degrees_ok", degrees_ok},
                         {"distance_ok", distance_ok},
                         {"probe", to_json(probe)},
                         {"degcodeg", to_json(degcodeg)}};
    }

    {
        const int n = cfg.value("tiny_n", 16);
        const int k = cfg.value("tiny_k", 4);
        auto inst = optimality_gk(n, k, cfg.value("tiny_seed", 3ULL));
        const bool tree_embeds = tree_embedding_exists(inst.tree, inst.host);
        std::vector<std::vector<int>> allowed(static_cast<std::size_t>(inst.star.n()));
        for (int i = 0; i < k; ++i)
            allowed[static_cast<std::size_t>(i + 1)] = inst.star_leaf_allowed[static_cast<std::size_t>(i)];
        const bool star_embeds = tree_embedding_exists(inst.star, inst.host, &allowed);
        const bool star_free_embeds = tree_embedding_exists(inst.star, inst.host);
        out["tiny"] = json{{"n", n},
                           {"k", k},
                           {"tree_embeds", tree_embeds},
                           {"restricted_star_embeds", star_embeds},
                           {"unrestricted_star_embeds", star_free_embeds}};
    }

    {
        const int n = cfg.value("dom_n", 25);
        const double p = cfg.value("dom_p", 0.9);
        const double eps = cfg.value("dom_eps", 0.1);
        Graph g = gnp(n, p, cfg.value("dom_seed", 11ULL));
        auto bounds = domination_number(g, cfg.value("dom_exact_limit", 26));
        const double printed_bound = (1.0 - eps) * p * std::log(static_cast<double>(n));
        out["domination"] = json{{"n", n},
                                 {"p", p},
                                 {"bounds", to_json(bounds)},
                                 {"printed_bound", printed_bound},
                                 {"exceeds_printed_bound", bounds.lower > printed_bound}};
    }
    return out;
}

// kind: validate — the concentration suite
inline json run_validate_experiment(const json& cfg)
{
    const int n = cfg.value("n", 200);
    const long long trials = cfg.value("trials", 100000LL);
    const std::uint64_t seed = cfg.value("seed", 3ULL);
    const double c = cfg.value("c", 0.5);
    const double p1 = cfg.value("p1", 0.3);
    const double p2 = cfg.value("p2", 0.7);

    json out{{"kind", "validate"}, {"n", n}, {"trials", trials}};
    bool all = true;

    auto classical = classical_chernoff_validate(n, 0.5, c, trials, seed);
    all = all && classical.pass;
    out["classical"] = to_json(classical);

    json pseudo = json::array();
    std::uint64_t s = seed;
    for (auto proc : {independent_process(n, 0.5), alternating_process(n, p1, p2),
                      contrarian_process(n, p1, p2), parity_process(n, p1, p2)}) {
        auto rep = pseudo_chernoff_validate(proc, c, trials, ++s);
        all = all && rep.pass;
        json entry = to_json(rep);
        entry["process"] = proc.name;
        pseudo.push_back(entry);
    }
    out["pseudo"] = pseudo;

    DisjointFamily fam;
    for (int i = 0; 3 * i + 1 < n; ++i) fam.sets.push_back({3 * i, 3 * i + 1});
    json tuple = json::array();
    {
        auto rep = tuple_chernoff_validate(independent_process(n, 0.5), fam, 0.5, trials, ++s);
        all = all && rep.pass;
        json entry = to_json(rep);
        entry["process"] = "independent";
        tuple.push_back(entry);
    }
    {
        auto rep = tuple_chernoff_validate(tuple_adversary_process(n, fam, 0.5, 0.1), fam, 0.5,
                                           trials, ++s);
        all = all && rep.pass;
        json entry = to_json(rep);
        entry["process"] = "tuple-adversary";
        tuple.push_back(entry);
    }
    {
        DisjointFamily singles;
        for (int i = 0; i < n / 2; ++i) singles.sets.push_back({i});
        auto rep = tuple_chernoff_validate(independent_process(n, 0.5), singles, 0.5, trials, ++s);
        all = all && rep.pass;
        json entry = to_json(rep);
        entry["process"] = "singleton-family";
        tuple.push_back(entry);
    }
    out["tuple"] = tuple;

    {
        const int count = cfg.value("coloring_samples", 50);
        Rng rng(seed ^ 0xc01ULL);
        int good = 0;
        for (int t = 0; t < count; ++t) {
            const int nn = 20 + rng.index(180);
            Graph g = random_bounded_degree_graph(nn, 2 + rng.index(9), 2 * nn, rng.next());
            auto part = equitable_coloring(g);
            bool ok = part.covers(g.n()) && part.r() <= g.max_degree() + 1;
            int mx = 0, mn = g.n();
            for (int i = 0; i < part.r(); ++i) {
                ok = ok && is_stable_set(g, part.cls(i));
                mx = std::max(mx, part.size_of(i));
                mn = std::min(mn, part.size_of(i));
            }
            ok = ok && mx - mn <= 1;
            good += ok;
        }
        all = all && good == count;
        out["equitable_coloring"] = json{{"samples", count}, {"good", good}};
    }

    out["pass"] = all;
    return out;
}

} // namespace abl
