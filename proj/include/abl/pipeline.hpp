#pragma once

#include <abl/arrangeability.hpp>
#include <abl/completion.hpp>
#include <abl/ledger.hpp>
#include <abl/rga.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace abl {

struct PipelineOptions {
    double stable_mu = 0.0;   // 0 = the default formula 1/(10 a (kappa Delta_R)^2)
    bool spanning = true;     // run the matching completion stage
    int retries = 1;          // attempts per seed (fresh sub-seed each)
    int monitor_checkpoints = 0; // auxiliary-regularity checkpoints per class, 0 = off
    double monitor_eps = 0.0;    // eps' for the monitors; 0 = ledger value
    std::optional<DegCodegThresholds> monitor_thresholds;
    int monitor_probe_trials = 200;
};

struct AttemptOutcome {
    EmbedReport phase1;
    bool matchings_perfect = false;
    std::string failure_kind;
    std::string failure_detail;
};

struct PipelineResult {
    bool success = false;
    int attempts = 0;
    int measured_a = 0;       // arrangeability of the stable-ended ordering
    double stable_mu = 0.0;
    long horizon = 0;
    long leftover = 0;
    std::vector<AttemptOutcome> attempt_log;
    std::vector<MonitorReport> monitors; // successful attempt only
    VerificationReport verification;
    std::vector<int> phi;
    std::string failure_kind; // of the last attempt when unsuccessful
    // tuple-condition mode, active when the ledger carries iota > 0
    bool tuple_mode = false;
    TupleConditionReport tuple_report;
    std::vector<double> fstar_min_right_frac; // per class, at the final clock
    double likely_threshold = 0.0;            // iota / 2
};

inline StableEnding prepare_stable_ordering(const BlowupInstance& inst, const ConstantsLedger& ledger,
                                            double stable_mu = 0.0)
{
    ArrangeableOrdering base = heuristic_ordering(inst.target.graph);
    return stable_ending_reorder(inst.target, base, ledger.kappa, ledger.delta_r, stable_mu);
}

// The full embedding pipeline on a prepared stable-ended ordering: phase-one
// randomized embedding, optional auxiliary-regularity monitors, per-class
// perfect matchings, assembly, and an independent verification rescan.
// Probabilistic failures consume a retry with a derived seed.
inline PipelineResult pipeline_embed_with(const BlowupInstance& inst, ConstantsLedger ledger,
                                          const ImageRestrictions& ir, std::uint64_t seed,
                                          const PipelineOptions& opt, const StableEnding& se)
{
    PipelineResult res;
    const int n = inst.target.graph.n();
    const ArrangeableOrdering& ordering = se.ordering;
    res.measured_a = ordering.a;
    res.stable_mu = se.mu;
    res.leftover = static_cast<long>(se.w.size());
    res.horizon = n - res.leftover;
    // the weight exponent and the important-set bound key off the
    // arrangeability of the ordering actually in use
    ledger.a = std::max(ledger.a, ordering.a);

    validate_restrictions(inst, ir, ledger);
    const ImportantSets imp = important_sets(inst, ledger, ir, ordering);

    if (ledger.iota > 0.0) {
        res.tuple_mode = true;
        res.likely_threshold = ledger.iota / 2.0;
        res.tuple_report = tuple_condition_check(inst.host, ledger.a, ledger.iota,
                                                 /*sample=*/2000, seed ^ 0x70f1ULL);
        if (!res.tuple_report.pass) {
            res.failure_kind = "tuple_condition";
            return res;
        }
    }

    Rng seeder(seed);
    const int attempts = std::max(1, opt.retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        const std::uint64_t attempt_seed = seeder.fork(static_cast<std::uint64_t>(attempt)).next();
        AttemptOutcome log;
        try {
            EmbeddingState st = initialise(inst, ledger, ir, ordering, attempt_seed);
            attach_important(st, imp);
            log.phase1 = run_almost_spanning(st, inst, ledger, ir, ordering, res.horizon);
            if (!log.phase1.success) {
                log.failure_kind = log.phase1.failure_kind;
                log.failure_detail = log.phase1.failure_detail;
                res.attempt_log.push_back(std::move(log));
                continue;
            }

            if (opt.monitor_checkpoints > 0) {
                res.monitors.clear();
                const double meps = opt.monitor_eps > 0.0 ? opt.monitor_eps
                                                          : static_cast<double>(ledger.eps_prime);
                for (int i = 0; i < inst.target.partition.r(); ++i)
                    for (int c = 1; c <= opt.monitor_checkpoints; ++c) {
                        const long t = std::max<long>(1, res.horizon * c / opt.monitor_checkpoints);
                        AuxiliaryGraph aux = build_auxiliary(st, inst, ledger, ir, ordering, i, t);
                        res.monitors.push_back(monitor_ri(aux, meps, opt.monitor_thresholds,
                                                          opt.monitor_probe_trials, attempt_seed ^ 0xab5u));
                    }
            }

            if (!opt.spanning) {
                res.success = true;
                log.matchings_perfect = true;
                res.attempt_log.push_back(std::move(log));
                res.phi = st.phi;
                res.verification = verify_embedding(inst.target.graph, inst.host.graph, st.phi,
                                                    &inst.target.partition, &inst.host.partition, &ir,
                                                    /*allow_partial=*/true);
                res.success = res.verification.pass;
                break;
            }

            std::vector<MatchingResult> matchings;
            bool all_perfect = true;
            res.fstar_min_right_frac.assign(static_cast<std::size_t>(inst.target.partition.r()), 1.0);
            for (int i = 0; i < inst.target.partition.r(); ++i) {
                AuxiliaryGraph full = build_auxiliary(st, inst, ledger, ir, ordering, i, st.t);
                AuxiliaryGraph fstar = restrict_to_free(full, st);
                if (!fstar.right.empty()) {
                    std::vector<int> rdeg(fstar.right.size(), 0);
                    for (const auto& row : fstar.adj)
                        for (int j : row) ++rdeg[static_cast<std::size_t>(j)];
                    int mn = static_cast<int>(fstar.left.size());
                    for (int d : rdeg) mn = std::min(mn, d);
                    res.fstar_min_right_frac[static_cast<std::size_t>(i)] =
                        static_cast<double>(mn) / static_cast<double>(fstar.left.size());
                }
                MatchingResult m = perfect_matching(fstar);
                all_perfect = all_perfect && m.perfect;
                matchings.push_back(std::move(m));
                if (!all_perfect) break;
            }
            log.matchings_perfect = all_perfect;
            if (!all_perfect) {
                log.failure_kind = "imperfect_matching";
                res.attempt_log.push_back(std::move(log));
                continue;
            }

            res.phi = complete_embedding(st, inst, matchings);
            res.verification = verify_embedding(inst.target.graph, inst.host.graph, res.phi,
                                                &inst.target.partition, &inst.host.partition, &ir);
            res.attempt_log.push_back(std::move(log));
            res.success = res.verification.pass;
            break;
        } catch (const InitFailure& e) {
            log.failure_kind = "init_failure";
            log.failure_detail = e.what();
        } catch (const QueueOverflow& e) {
            log.failure_kind = "queue_overflow";
            log.failure_detail = e.what();
        } catch (const EmptyPool& e) {
            log.failure_kind = "empty_pool";
            log.failure_detail = e.what();
        }
        res.attempt_log.push_back(std::move(log));
    }
    res.attempts = static_cast<int>(res.attempt_log.size());
    if (!res.success && !res.attempt_log.empty())
        res.failure_kind = res.attempt_log.back().failure_kind;
    return res;
}

inline PipelineResult pipeline_embed(const BlowupInstance& inst, const ConstantsLedger& ledger,
                                     const ImageRestrictions& ir, std::uint64_t seed,
                                     const PipelineOptions& opt = {})
{
    const StableEnding se = prepare_stable_ordering(inst, ledger, opt.stable_mu);
    return pipeline_embed_with(inst, ledger, ir, seed, opt, se);
}

} // namespace abl
