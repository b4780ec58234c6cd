#pragma once

#include <abl/completion.hpp>
#include <abl/concentration.hpp>
#include <abl/generators.hpp>
#include <abl/ledger.hpp>
#include <abl/pipeline.hpp>
#include <abl/regularity.hpp>

#include <json.hpp>

#include <fstream>
#include <string>

namespace abl {

using nlohmann::json;

inline json to_json(const Partition& p) { return json(p.classes()); }

inline Partition partition_from_json(const json& j)
{
    return Partition(j.get<std::vector<std::vector<int>>>());
}

inline json to_json(const ArrangeableOrdering& o)
{
    return json{{"order", o.order}, {"a", o.a}};
}

inline json to_json(const StableEnding& se)
{
    return json{{"order", se.ordering.order}, {"a", se.ordering.a}, {"mu", se.mu}, {"W", se.w}};
}

inline json to_json(const ProbeReport& r)
{
    return json{{"pass", r.pass},
                {"base_density", r.base_density},
                {"max_deviation", r.max_deviation},
                {"witness_A", r.witness_a},
                {"witness_B", r.witness_b},
                {"trials", r.trials},
                {"seed", r.seed},
                {"strategy", r.strategy}};
}

inline json to_json(const DegCodegThresholds& t)
{
    return json{{"deg_dev", t.deg_dev},
                {"deg_frac", t.deg_frac},
                {"codeg_dev", t.codeg_dev},
                {"codeg_frac", t.codeg_frac}};
}

inline json to_json(const TestReport& r)
{
    return json{{"pass", r.pass},
                {"pass_degree", r.pass_degree},
                {"pass_codegree", r.pass_codegree},
                {"weighted_density", r.weighted_density_full},
                {"deviating_vertices", r.deviating_vertices},
                {"deviating_pairs", r.deviating_pairs},
                {"n", r.n},
                {"thresholds", to_json(r.thresholds)},
                {"verbatim_thresholds", r.verbatim_thresholds},
                {"clamped_weights", r.clamped_weights},
                {"verdict_eps", r.verdict_eps},
                {"original_verdict_eps", r.original_verdict_eps}};
}

inline json to_json(const SuperRegularReport& r)
{
    return json{{"ok", r.ok()},
                {"min_degree_ok", r.min_degree_ok},
                {"half_floor_ok", r.half_floor_ok},
                {"density", r.density_value},
                {"probe", to_json(r.probe)}};
}

inline json to_json(const TupleConditionReport& r)
{
    json ws = json::array();
    for (const auto& w : r.witnesses)
        ws.push_back(json{{"class", w.cls}, {"tuple", w.tuple}, {"fraction", w.fraction}});
    return json{{"pass", r.pass},
                {"min_fraction", r.min_fraction},
                {"exhaustive", r.exhaustive},
                {"tuples_checked", r.tuples_checked},
                {"witnesses", ws}};
}

inline json to_json(const ConstantsLedger& l)
{
    return json{{"mode", l.mode == LedgerMode::Paper ? "paper" : "practical"},
                {"C", l.cap_c},
                {"a", l.a},
                {"Delta_R", l.delta_r},
                {"kappa", l.kappa},
                {"r", l.r},
                {"delta", static_cast<double>(l.delta)},
                {"c", static_cast<double>(l.c)},
                {"mu", static_cast<double>(l.mu)},
                {"gamma", static_cast<double>(l.gamma)},
                {"lambda", static_cast<double>(l.lambda)},
                {"eps_prime", static_cast<double>(l.eps_prime)},
                {"eps", static_cast<double>(l.eps)},
                {"alpha", static_cast<double>(l.alpha)},
                {"xi", static_cast<double>(l.xi)},
                {"log10_eps", l.eps > 0 ? static_cast<double>(std::log10(l.eps)) : 0.0},
                {"log10_xi", l.xi > 0 ? static_cast<double>(std::log10(l.xi)) : 0.0},
                {"n0", static_cast<double>(l.n0)},
                {"n0_overflow", l.n0_overflow},
                {"chain_ok", l.chain_ok},
                {"eps1_ok", l.eps1_ok},
                {"underflow", l.underflow},
                {"iota", l.iota},
                {"filter_eps", l.filter_tolerance()},
                {"init_eps", l.init_tolerance()}};
}

inline json to_json(const EnvelopeStats& e)
{
    return json{{"checked", e.checked},
                {"ordinary_violations", e.ordinary_violations},
                {"special_violations", e.special_violations},
                {"restricted_floor_violations", e.restricted_floor_violations}};
}

inline json to_json(const EmbedReport& r)
{
    return json{{"success", r.success},
                {"failure_kind", r.failure_kind},
                {"failure_detail", r.failure_detail},
                {"t_reached", r.t_reached},
                {"horizon", r.horizon},
                {"queue_sizes", r.queue_sizes},
                {"pool_sizes_min", r.pool_sizes_min},
                {"pool_floor_violations", r.pool_floor_violations},
                {"special_embeddings", r.special_embeddings},
                {"envelopes", to_json(r.envelopes)},
                {"filter_eps_used", r.filter_eps_used},
                {"init_eps_used", r.init_eps_used}};
}

inline json to_json(const VerificationReport& r)
{
    return json{{"pass", r.pass},
                {"edge_violations", r.edge_violations},
                {"injectivity_violations", r.injectivity_violations},
                {"class_violations", r.class_violations},
                {"restriction_violations", r.restriction_violations},
                {"details", r.details}};
}

inline json to_json(const MonitorReport& r)
{
    return json{{"pass", r.pass}, {"degcodeg", to_json(r.degcodeg)}, {"probe", to_json(r.probe)}};
}

inline json to_json(const PipelineResult& r, bool include_phi = true)
{
    json attempts = json::array();
    for (const auto& a : r.attempt_log)
        attempts.push_back(json{{"phase1", to_json(a.phase1)},
                                {"matchings_perfect", a.matchings_perfect},
                                {"failure_kind", a.failure_kind},
                                {"failure_detail", a.failure_detail}});
    json monitors = json::array();
    for (const auto& m : r.monitors) monitors.push_back(to_json(m));
    json out{{"success", r.success},
             {"attempts", r.attempts},
             {"measured_a", r.measured_a},
             {"stable_mu", r.stable_mu},
             {"horizon", r.horizon},
             {"leftover", r.leftover},
             {"attempt_log", attempts},
             {"monitors", monitors},
             {"verification", to_json(r.verification)},
             {"failure_kind", r.failure_kind}};
    if (r.tuple_mode) {
        out["tuple_report"] = to_json(r.tuple_report);
        out["likely_threshold"] = r.likely_threshold;
        out["fstar_min_right_frac"] = r.fstar_min_right_frac;
    }
    if (include_phi && r.success) out["phi"] = r.phi;
    return out;
}

inline json to_json(const TailReport& r)
{
    return json{{"process", r.process}, {"bound", r.bound},   {"estimate", r.estimate},
                {"ci_low", r.ci_low},   {"ci_high", r.ci_high}, {"trials", r.trials},
                {"pass", r.pass}};
}

inline json to_json(const PseudoChernoffReport& r)
{
    return json{{"pass", r.pass},
                {"lower_tail", to_json(r.lower_tail)},
                {"upper_tail", to_json(r.upper_tail)}};
}

inline json to_json(const TupleChernoffReport& r)
{
    return json{{"pass", r.pass},
                {"a", r.a},
                {"m", r.m},
                {"threshold", r.threshold},
                {"success", to_json(r.success)}};
}

inline json to_json(const DominationBounds& b)
{
    return json{{"lower", b.lower}, {"upper", b.upper}, {"exact", b.exact}};
}

// ledger from the "constants" object of a run config
inline ConstantsLedger ledger_from_json(const json& j, const std::string& mode)
{
    if (mode == "paper") {
        PaperLedgerInputs in;
        in.cap_c = j.value("C", 0);
        in.a = j.value("a", 1);
        in.delta_r = j.value("Delta_R", 2);
        in.kappa = j.value("kappa", 1);
        in.r = j.value("r", 1);
        in.delta = j.value("delta", 0.5);
        in.c = j.value("c", 1.0);
        in.mu = j.value("mu", 0.1);
        return make_paper_ledger(in);
    }
    PracticalLedgerInputs in;
    in.cap_c = j.value("C", 0);
    in.a = j.value("a", 1);
    in.delta_r = j.value("Delta_R", 2);
    in.kappa = j.value("kappa", 1);
    in.r = j.value("r", 1);
    in.delta = j.value("delta", 0.5);
    in.c = j.value("c", 1.0);
    in.mu = j.value("mu", 0.1);
    in.gamma = j.value("gamma", 0.0);
    in.lambda = j.value("lambda", 0.0);
    in.eps_prime = j.value("eps_prime", 0.0);
    in.eps = j.value("eps", 0.0);
    in.alpha = j.value("alpha", 0.0);
    in.xi = j.value("xi", 0.0);
    in.iota = j.value("iota", 0.0);
    in.filter_eps = j.value("filter_eps", 0.0);
    in.init_eps = j.value("init_eps", 0.0);
    return make_practical_ledger(in);
}

inline json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << '\n';
}

inline Graph load_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return load_edge_list(in);
}

inline void save_graph_file(const std::string& path, const Graph& g)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    save_edge_list(g, out);
}

// small textual graph constructors: "complete:4", "path:6", "cycle:5",
// "star:7", "file:/some/path"
inline Graph graph_from_spec(const std::string& spec)
{
    auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "file") return load_graph_file(arg);
    const int n = std::stoi(arg);
    if (kind == "complete") return complete_graph(n);
    if (kind == "path") return path_graph(n);
    if (kind == "cycle") return cycle_graph(n);
    if (kind == "star") return star_graph(n);
    throw ParseError("unknown graph spec '" + spec + "'");
}

} // namespace abl
