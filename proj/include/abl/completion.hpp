#pragma once

#include <abl/bipartite_matching.hpp>
#include <abl/errors.hpp>
#include <abl/graph.hpp>
#include <abl/regularity.hpp>
#include <abl/rga.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace abl {

// Bipartite record of candidate membership for one cluster: left side target
// vertices, right side host vertices, an edge whenever the host vertex sits
// in the target vertex's candidate set at time t. Weights compensate for the
// number of embedded predecessors.
struct AuxiliaryGraph {
    int cls = 0;
    long t = 0;
    std::vector<int> left;  // target vertices
    std::vector<int> right; // host vertices
    std::vector<std::vector<int>> adj; // per left position, positions into right
    std::vector<double> weight;        // omega_t per left position
    // bipartite materialization: vertices [0,|left|) then [|left|, |left|+|right|)
    Graph bipartite;

    WeightedPair view() const
    {
        WeightedPair p;
        p.view.host = &bipartite;
        p.view.a_side.resize(left.size());
        for (std::size_t i = 0; i < left.size(); ++i) p.view.a_side[i] = static_cast<int>(i);
        p.view.b_side.resize(right.size());
        for (std::size_t j = 0; j < right.size(); ++j)
            p.view.b_side[j] = static_cast<int>(left.size() + j);
        p.omega = weight;
        return p;
    }
};

namespace detail {

inline void materialize_bipartite(AuxiliaryGraph& aux)
{
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < aux.adj.size(); ++i)
        for (int j : aux.adj[i]) e.emplace_back(static_cast<int>(i), static_cast<int>(aux.left.size()) + j);
    aux.bipartite = Graph(static_cast<int>(aux.left.size() + aux.right.size()), std::move(e));
}

} // namespace detail

// Materializes F_i(t) by recomputing every candidate set from the embedding
// history, with weights omega_t(x) = delta^(a - pi(t,x)).
inline AuxiliaryGraph build_auxiliary(const EmbeddingState& st, const BlowupInstance& inst,
                                      const ConstantsLedger& ledger, const ImageRestrictions& ir,
                                      const ArrangeableOrdering& ordering, int cls, long t)
{
    if (t > st.t) throw DimensionError("auxiliary time beyond the clock");
    AuxiliaryGraph aux;
    aux.cls = cls;
    aux.t = t;
    aux.left = inst.target.partition.cls(cls);
    aux.right = inst.host.partition.cls(cls);
    std::vector<int> right_index(static_cast<std::size_t>(inst.host.graph.n()), -1);
    for (std::size_t j = 0; j < aux.right.size(); ++j)
        right_index[static_cast<std::size_t>(aux.right[j])] = static_cast<int>(j);

    aux.adj.resize(aux.left.size());
    aux.weight.resize(aux.left.size());
    for (std::size_t i = 0; i < aux.left.size(); ++i) {
        const int x = aux.left[i];
        const auto cand = recompute_candidate_set(st, inst, ir, ordering, x, t);
        aux.adj[i].reserve(cand.size());
        for (int v : cand) aux.adj[i].push_back(right_index[static_cast<std::size_t>(v)]);
        int pi_t = 0;
        for (int y : ordering.left_neighbors[static_cast<std::size_t>(x)])
            if (st.embed_time[static_cast<std::size_t>(y)] > 0 && st.embed_time[static_cast<std::size_t>(y)] < t)
                ++pi_t;
        aux.weight[i] = std::pow(static_cast<double>(ledger.delta), ledger.a - pi_t);
    }
    detail::materialize_bipartite(aux);
    return aux;
}

struct MonitorReport {
    TestReport degcodeg;
    ProbeReport probe;
    bool pass = false;
};

// The weighted-regularity event for one auxiliary graph: the degree/co-degree
// sufficient test plus a sampled weighted probe. Diagnostic only.
inline MonitorReport monitor_ri(const AuxiliaryGraph& aux, double eps_prime,
                                std::optional<DegCodegThresholds> thresholds = std::nullopt,
                                int probe_trials = 200, std::uint64_t seed = 1)
{
    MonitorReport rep;
    WeightedPair p = aux.view();
    rep.degcodeg = weighted_degcodeg_test(p, eps_prime, thresholds);
    rep.probe = weighted_sample_probe(p, eps_prime, probe_trials, seed);
    rep.pass = rep.degcodeg.pass && rep.probe.pass;
    return rep;
}

// F_i* = the auxiliary graph induced on the unembedded left vertices and the
// free right vertices. Balanced by construction in spanning mode.
inline AuxiliaryGraph restrict_to_free(const AuxiliaryGraph& aux, const EmbeddingState& st)
{
    AuxiliaryGraph out;
    out.cls = aux.cls;
    out.t = aux.t;
    std::vector<int> right_keep(aux.right.size(), -1);
    for (std::size_t j = 0; j < aux.right.size(); ++j)
        if (st.host_free[static_cast<std::size_t>(aux.right[j])]) {
            right_keep[j] = static_cast<int>(out.right.size());
            out.right.push_back(aux.right[j]);
        }
    for (std::size_t i = 0; i < aux.left.size(); ++i) {
        if (st.phi[static_cast<std::size_t>(aux.left[i])] >= 0) continue;
        out.left.push_back(aux.left[i]);
        std::vector<int> row;
        for (int j : aux.adj[i])
            if (right_keep[static_cast<std::size_t>(j)] >= 0)
                row.push_back(right_keep[static_cast<std::size_t>(j)]);
        out.adj.push_back(std::move(row));
        out.weight.push_back(aux.weight[i]);
    }
    if (out.left.size() != out.right.size())
        throw UnbalancedError("leftover sides differ in class " + std::to_string(aux.cls) + ": " +
                              std::to_string(out.left.size()) + " vs " + std::to_string(out.right.size()));
    detail::materialize_bipartite(out);
    return out;
}

struct MatchingResult {
    bool perfect = false;
    std::vector<std::pair<int, int>> pairs;  // (target vertex, host vertex)
    std::vector<int> hall_violator;          // target vertices, when not perfect
    std::vector<int> violator_neighborhood;  // their joint host neighborhood
};

// Maximum matching on an auxiliary graph; a non-perfect outcome returns a
// genuine Hall violator (|N(S)| < |S|, checked exactly).
inline MatchingResult perfect_matching(const AuxiliaryGraph& aux)
{
    MatchingResult res;
    BipartiteMatcher m(aux.adj, static_cast<int>(aux.right.size()));
    const int matched = m.solve();
    if (matched == static_cast<int>(aux.left.size())) {
        res.perfect = true;
        for (std::size_t i = 0; i < aux.left.size(); ++i)
            res.pairs.emplace_back(aux.left[i], aux.right[static_cast<std::size_t>(m.left_match()[i])]);
        return res;
    }
    const auto s = m.hall_violator();
    std::vector<char> nb(aux.right.size(), 0);
    for (int i : s) {
        res.hall_violator.push_back(aux.left[static_cast<std::size_t>(i)]);
        for (int j : aux.adj[static_cast<std::size_t>(i)]) nb[static_cast<std::size_t>(j)] = 1;
    }
    for (std::size_t j = 0; j < aux.right.size(); ++j)
        if (nb[j]) res.violator_neighborhood.push_back(aux.right[j]);
    if (res.violator_neighborhood.size() >= res.hall_violator.size())
        throw Error("extracted violator is not a Hall violator"); // matcher invariant
    return res;
}

// Extends the phase-one embedding by the per-class matchings into a full
// bijection. The unembedded leftovers must form a stable set, and every
// matched pair must respect the final candidate sets.
inline std::vector<int> complete_embedding(EmbeddingState& st, const BlowupInstance& inst,
                                           const std::vector<MatchingResult>& matchings)
{
    const Graph& h = inst.target.graph;
    std::vector<int> leftover;
    for (int x = 0; x < h.n(); ++x)
        if (st.phi[static_cast<std::size_t>(x)] < 0) leftover.push_back(x);
    if (!is_stable_set(h, leftover))
        throw StabilityViolation("unembedded leftovers span an edge of the target");

    for (const auto& m : matchings) {
        if (!m.perfect) throw MatchEdgeInvalid("non-perfect matching fed to completion");
        for (auto [x, v] : m.pairs) {
            if (st.phi[static_cast<std::size_t>(x)] >= 0) throw MatchEdgeInvalid("matched vertex already embedded");
            if (!st.host_free[static_cast<std::size_t>(v)]) throw MatchEdgeInvalid("matched host vertex already used");
            const auto& cx = st.cand[static_cast<std::size_t>(x)];
            if (!std::binary_search(cx.begin(), cx.end(), v))
                throw MatchEdgeInvalid("matched pair outside the candidate set");
            st.phi[static_cast<std::size_t>(x)] = v;
            st.embed_time[static_cast<std::size_t>(x)] = st.t;
            st.host_free[static_cast<std::size_t>(v)] = 0;
        }
    }
    for (int x = 0; x < h.n(); ++x)
        if (st.phi[static_cast<std::size_t>(x)] < 0)
            throw MatchEdgeInvalid("vertex left unembedded after completion");
    return st.phi;
}

struct VerificationReport {
    bool pass = true;
    long long edge_violations = 0;
    long long injectivity_violations = 0;
    long long class_violations = 0;
    long long restriction_violations = 0;
    std::vector<std::string> details; // capped
};

// Independent full rescan of an embedding: injectivity, class respect, edge
// preservation, and image-restriction membership. With allow_partial,
// unembedded vertices (-1) are skipped and only embedded structure counts.
inline VerificationReport verify_embedding(const Graph& h, const Graph& g, const std::vector<int>& phi,
                                           const Partition* target_partition = nullptr,
                                           const Partition* host_partition = nullptr,
                                           const ImageRestrictions* ir = nullptr,
                                           bool allow_partial = false)
{
    VerificationReport rep;
    auto note = [&](std::string s) {
        if (rep.details.size() < 32) rep.details.push_back(std::move(s));
        rep.pass = false;
    };
    if (static_cast<int>(phi.size()) != h.n()) {
        note("phi size mismatch");
        return rep;
    }
    std::vector<int> hits(static_cast<std::size_t>(g.n()), 0);
    for (int x = 0; x < h.n(); ++x) {
        const int v = phi[static_cast<std::size_t>(x)];
        if (v < 0 && allow_partial) continue;
        if (v < 0 || v >= g.n()) {
            ++rep.injectivity_violations;
            note("image out of range for " + std::to_string(x));
            continue;
        }
        if (++hits[static_cast<std::size_t>(v)] > 1) {
            ++rep.injectivity_violations;
            note("image " + std::to_string(v) + " reused");
        }
    }
    for (int x = 0; x < h.n(); ++x)
        for (int y : h.neighbors(x)) {
            if (x > y) continue;
            const int u = phi[static_cast<std::size_t>(x)];
            const int v = phi[static_cast<std::size_t>(y)];
            if (allow_partial && (u < 0 || v < 0)) continue;
            if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) continue;
            if (!g.has_edge(u, v)) {
                ++rep.edge_violations;
                note("edge " + std::to_string(x) + "-" + std::to_string(y) + " not preserved");
            }
        }
    if (target_partition && host_partition) {
        const auto hc = target_partition->class_of(h.n());
        const auto gc = host_partition->class_of(g.n());
        for (int x = 0; x < h.n(); ++x) {
            const int v = phi[static_cast<std::size_t>(x)];
            if (v < 0 || v >= g.n()) continue;
            if (hc[static_cast<std::size_t>(x)] != gc[static_cast<std::size_t>(v)]) {
                ++rep.class_violations;
                note("vertex " + std::to_string(x) + " embedded outside its cluster");
            }
        }
    }
    if (ir && !ir->assignment.empty() && target_partition) {
        const auto hc = target_partition->class_of(h.n());
        for (int x = 0; x < h.n(); ++x) {
            if (ir->empty_for(x)) continue;
            const int v = phi[static_cast<std::size_t>(x)];
            if (v < 0 || v >= g.n()) continue;
            const auto& fam = ir->families[static_cast<std::size_t>(hc[static_cast<std::size_t>(x)])]
                                          [static_cast<std::size_t>(ir->assignment[static_cast<std::size_t>(x)])];
            if (!std::binary_search(fam.begin(), fam.end(), v)) {
                ++rep.restriction_violations;
                note("vertex " + std::to_string(x) + " embedded outside its image restriction");
            }
        }
    }
    return rep;
}

} // namespace abl
