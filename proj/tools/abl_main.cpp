#include <abl/experiments.hpp>
#include <abl/json_io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace abl;
namespace fs = std::filesystem;

namespace {

struct GlobalArgs {
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    std::string mode = "practical";
    int threads = 1;
};

void write_report(const GlobalArgs& g, const std::string& name, const json& j)
{
    fs::create_directories(g.out_dir);
    const std::string path = (fs::path(g.out_dir) / name).string();
    write_json_file(path, j);
    std::cout << "wrote " << path << '\n';
}

// per-seed files next to the aggregate, keyed by the seed value
void write_sweep_report(const GlobalArgs& g, const std::string& stem, const json& rep)
{
    if (rep.contains("per_seed"))
        for (const auto& s : rep["per_seed"])
            if (s.contains("seed"))
                write_report(g, stem + "_seed_" + std::to_string(s["seed"].get<std::uint64_t>()) + ".json", s);
    write_report(g, stem + "_report.json", rep);
}

json load_config(const std::string& path, const GlobalArgs& g)
{
    json cfg = load_json_file(path);
    if (!cfg.contains("mode")) cfg["mode"] = g.mode;
    if (!cfg.contains("seed")) cfg["seed"] = g.seed;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"embedding engine for arrangeable targets in super-regular hosts"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalArgs g;
    app.add_option("--out", g.out_dir, "output directory for reports");
    app.add_option("--seed", g.seed, "base seed when the config gives none");
    app.add_option("--mode", g.mode, "ledger mode: paper|practical")
        ->check(CLI::IsMember({"paper", "practical"}));
    app.add_option("--threads", g.threads, "worker threads for seed sweeps");

    std::string config_path;

    auto* cmd_embed = app.add_subcommand("embed", "factor target into blow-up hosts, full pipeline");
    cmd_embed->add_option("--config", config_path, "experiment JSON")->required();

    auto* cmd_ffactor = app.add_subcommand("ffactor", "factor split across blocks of a clique blow-up");
    cmd_ffactor->add_option("--config", config_path, "experiment JSON")->required();

    auto* cmd_universality =
        app.add_subcommand("universality", "sparse-target sweep into random hosts");
    cmd_universality->add_option("--config", config_path, "experiment JSON")->required();

    auto* cmd_optimality = app.add_subcommand("optimality", "block-host constructions and their limits");
    cmd_optimality->add_option("--config", config_path, "experiment JSON")->required();

    auto* cmd_validate = app.add_subcommand("validate", "concentration-inequality validation suite");
    cmd_validate->add_option("--config", config_path, "experiment JSON (optional)");

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "generate instances");
    std::string gen_kind = "gnp";
    int gen_n = 100, gen_k = 4, gen_copies = 10;
    double gen_p = 0.5;
    std::string gen_out = "graph.txt";
    std::string gen_f = "complete:3";
    std::string gen_sizes = "";
    cmd_gen->add_option("--kind", gen_kind, "gnp|blowup|gk|ffactor")
        ->check(CLI::IsMember({"gnp", "blowup", "gk", "ffactor"}));
    cmd_gen->add_option("--n", gen_n, "vertex count (per side for gk)");
    cmd_gen->add_option("--k", gen_k, "block count for gk");
    cmd_gen->add_option("--p", gen_p, "edge/pair density");
    cmd_gen->add_option("--f", gen_f, "factor/reduced graph spec");
    cmd_gen->add_option("--copies", gen_copies, "factor copies");
    cmd_gen->add_option("--cluster-sizes", gen_sizes, "comma list for blowup");
    cmd_gen->add_option("--graph-out", gen_out, "edge-list output path");
    std::string gen_config;
    cmd_gen->add_option("--config", gen_config, "JSON spec file overriding the flags");

    // order
    auto* cmd_order = app.add_subcommand("order", "degeneracy ordering and arrangeability");
    std::string order_graph;
    std::string order_partition;
    int order_kappa = 1, order_delta_r = 0;
    double order_mu = 0.0;
    cmd_order->add_option("--graph", order_graph, "edge-list file")->required();
    cmd_order->add_option("--partition", order_partition, "partition JSON for a stable ending");
    cmd_order->add_option("--kappa", order_kappa, "balance bound");
    cmd_order->add_option("--delta-r", order_delta_r, "strict reduced-degree bound (0 = derive)");
    cmd_order->add_option("--mu", order_mu, "stable ending share (0 = formula)");

    // check
    auto* cmd_check = app.add_subcommand("check", "validate files against the core predicates");
    std::string check_kind = "r-partition";
    std::string check_graph, check_reduced, check_partition, check_host, check_phi;
    double check_eps = 0.1, check_delta = 0.25, check_iota = 0.1;
    int check_a = 1, check_trials = 200;
    cmd_check->add_option("--kind", check_kind, "r-partition|super-regular|tuple|embedding|arrangeable")
        ->check(CLI::IsMember({"r-partition", "super-regular", "tuple", "embedding", "arrangeable"}));
    cmd_check->add_option("--graph", check_graph, "edge-list file");
    cmd_check->add_option("--reduced", check_reduced, "reduced graph edge-list");
    cmd_check->add_option("--partition", check_partition, "partition JSON");
    cmd_check->add_option("--host", check_host, "host edge-list (embedding check)");
    cmd_check->add_option("--phi", check_phi, "embedding JSON (array)");
    cmd_check->add_option("--eps", check_eps, "regularity tolerance");
    cmd_check->add_option("--delta", check_delta, "density floor");
    cmd_check->add_option("--iota", check_iota, "tuple-condition floor");
    cmd_check->add_option("--a", check_a, "arrangeability / tuple order");
    cmd_check->add_option("--trials", check_trials, "probe trials");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_embed->parsed()) {
            json rep = run_embed_experiment(load_config(config_path, g), g.threads);
            write_sweep_report(g, "embed", rep);
            return 0;
        }
        if (cmd_ffactor->parsed()) {
            json rep = run_ffactor_experiment(load_config(config_path, g), g.threads);
            write_sweep_report(g, "ffactor", rep);
            return 0;
        }
        if (cmd_universality->parsed()) {
            json rep = run_universality_experiment(load_config(config_path, g), g.threads);
            write_sweep_report(g, "universality", rep);
            return 0;
        }
        if (cmd_optimality->parsed()) {
            json rep = run_optimality_experiment(load_config(config_path, g));
            write_report(g, "optimality_report.json", rep);
            return 0;
        }
        if (cmd_validate->parsed()) {
            json cfg = config_path.empty() ? json{{"seed", g.seed}} : load_config(config_path, g);
            json rep = run_validate_experiment(cfg);
            write_report(g, "validate_report.json", rep);
            return rep.value("pass", false) ? 0 : 1;
        }
        if (cmd_gen->parsed()) {
            if (!gen_config.empty()) {
                json spec = load_json_file(gen_config);
                gen_kind = spec.value("kind", gen_kind);
                gen_n = spec.value("n", gen_n);
                gen_k = spec.value("k", gen_k);
                gen_p = spec.value("p", gen_p);
                gen_f = spec.value("f", gen_f);
                gen_copies = spec.value("copies", gen_copies);
                gen_out = spec.value("graph_out", gen_out);
                g.seed = spec.value("seed", g.seed);
                if (spec.contains("cluster_sizes")) {
                    gen_sizes.clear();
                    for (const auto& v : spec["cluster_sizes"])
                        gen_sizes += (gen_sizes.empty() ? "" : ",") + std::to_string(v.get<int>());
                }
            }
            json meta{{"kind", gen_kind}, {"seed", g.seed}};
            if (gen_kind == "gnp") {
                Graph out = gnp(gen_n, gen_p, g.seed);
                save_graph_file(gen_out, out);
                meta["n"] = gen_n;
                meta["p"] = gen_p;
                meta["edges"] = out.edge_count();
            } else if (gen_kind == "blowup") {
                BlowupHostSpec spec;
                spec.reduced = graph_from_spec(gen_f);
                if (gen_sizes.empty()) {
                    spec.cluster_sizes.assign(static_cast<std::size_t>(spec.reduced.n()), gen_n);
                } else {
                    std::stringstream ss(gen_sizes);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) spec.cluster_sizes.push_back(std::stoi(tok));
                }
                spec.pair_density = gen_p;
                spec.rng_seed = g.seed;
                spec.check_eps = check_eps;
                spec.check_delta = gen_p / 2.0;
                auto host = blowup_host(spec);
                save_graph_file(gen_out, host.rpg.graph);
                meta["partition"] = to_json(host.rpg.partition);
                json checks = json::array();
                for (const auto& c : host.checks)
                    checks.push_back(json{{"i", c.i}, {"j", c.j}, {"report", to_json(c.report)}});
                meta["pair_checks"] = checks;
            } else if (gen_kind == "gk") {
                auto inst = optimality_gk(gen_n, gen_k, g.seed);
                save_graph_file(gen_out, inst.host);
                save_graph_file(gen_out + ".tree", inst.tree);
                meta["n"] = gen_n;
                meta["k"] = gen_k;
                meta["tree_file"] = gen_out + ".tree";
            } else { // ffactor
                Graph f = graph_from_spec(gen_f);
                Graph out = f_factor_target(f, gen_copies);
                save_graph_file(gen_out, out);
                meta["copies"] = gen_copies;
                meta["f"] = gen_f;
            }
            meta["graph_file"] = gen_out;
            write_report(g, "gen_meta.json", meta);
            return 0;
        }
        if (cmd_order->parsed()) {
            Graph h = load_graph_file(order_graph);
            auto ord = heuristic_ordering(h);
            json rep{{"order", ord.order}, {"a", ord.a}};
            if (!order_partition.empty()) {
                RPartitionedGraph rpg;
                rpg.graph = h;
                rpg.partition = partition_from_json(load_json_file(order_partition));
                rpg.reduced = complete_graph(rpg.partition.r());
                const int dr = order_delta_r > 0 ? order_delta_r : rpg.partition.r();
                auto se = stable_ending_reorder(rpg, ord, order_kappa, dr, order_mu);
                rep["stable_ending"] = to_json(se);
            }
            write_report(g, "order_report.json", rep);
            return 0;
        }
        if (cmd_check->parsed()) {
            json rep{{"kind", check_kind}};
            bool ok = false;
            if (check_kind == "r-partition") {
                Graph graph = load_graph_file(check_graph);
                Graph reduced = load_graph_file(check_reduced);
                Partition part = partition_from_json(load_json_file(check_partition));
                ok = check_r_partition(graph, reduced, part);
            } else if (check_kind == "super-regular") {
                Graph graph = load_graph_file(check_graph);
                Partition part = partition_from_json(load_json_file(check_partition));
                if (part.r() != 2) throw DimensionError("super-regular check needs two classes");
                BipartitePairView pair{&graph, part.cls(0), part.cls(1)};
                auto r = super_regular_check(pair, check_eps, check_delta, check_trials, g.seed);
                rep["report"] = to_json(r);
                ok = r.ok();
            } else if (check_kind == "tuple") {
                RPartitionedGraph rpg;
                rpg.graph = load_graph_file(check_graph);
                rpg.partition = partition_from_json(load_json_file(check_partition));
                rpg.reduced = check_reduced.empty() ? complete_graph(rpg.partition.r())
                                                    : load_graph_file(check_reduced);
                auto r = tuple_condition_check(rpg, check_a, check_iota, check_trials, g.seed);
                rep["report"] = to_json(r);
                ok = r.pass;
            } else if (check_kind == "embedding") {
                Graph target = load_graph_file(check_graph);
                Graph host = load_graph_file(check_host);
                auto phi = load_json_file(check_phi).get<std::vector<int>>();
                auto r = verify_embedding(target, host, phi);
                rep["report"] = to_json(r);
                ok = r.pass;
            } else { // arrangeable
                Graph graph = load_graph_file(check_graph);
                auto ord = heuristic_ordering(graph);
                rep["measured_a"] = ord.a;
                rep["order"] = ord.order;
                ok = verify_arrangeable(graph, ord.order, check_a);
            }
            rep["pass"] = ok;
            write_report(g, "check_report.json", rep);
            std::cout << (ok ? "pass" : "fail") << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
