#pragma once

#include <abl/arrangeability.hpp>
#include <abl/errors.hpp>
#include <abl/graph.hpp>
#include <abl/ledger.hpp>
#include <abl/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace abl {

// Target graph H and host graph G over a shared reduced graph, with matching
// cluster sizes |X_i| = |V_i|.
struct BlowupInstance {
    RPartitionedGraph target;
    RPartitionedGraph host;
};

// Per-class families of permissible image restrictions and the assignment of
// restricted target vertices to family members.
struct ImageRestrictions {
    // families[i] = {I_{i,1}, ..., I_{i,C}}, sorted host-vertex lists
    std::vector<std::vector<std::vector<int>>> families;
    // assignment[x] = index into families[class of x], or -1 when unrestricted
    std::vector<int> assignment;

    bool empty_for(int x) const
    {
        return assignment.empty() || assignment[static_cast<std::size_t>(x)] < 0;
    }
    static ImageRestrictions none(int h_vertices, int r)
    {
        ImageRestrictions ir;
        ir.families.resize(static_cast<std::size_t>(r));
        ir.assignment.assign(static_cast<std::size_t>(h_vertices), -1);
        return ir;
    }
};

// Validates the restriction budgets: |S_i| <= alpha n_i, the restricted
// neighborhoods stay below alpha n_j on reduced edges, and every family
// member has size at least c n_i.
inline void validate_restrictions(const BlowupInstance& inst, const ImageRestrictions& ir,
                                  const ConstantsLedger& ledger)
{
    const Partition& xp = inst.target.partition;
    const int r = xp.r();
    if (static_cast<int>(ir.families.size()) != r) throw DimensionError("restriction families per class");
    const auto cls = xp.class_of(inst.target.graph.n());
    std::vector<int> s_count(static_cast<std::size_t>(r), 0);
    for (int x = 0; x < inst.target.graph.n(); ++x)
        if (!ir.empty_for(x)) {
            int i = cls[static_cast<std::size_t>(x)];
            int k = ir.assignment[static_cast<std::size_t>(x)];
            if (k >= static_cast<int>(ir.families[static_cast<std::size_t>(i)].size()))
                throw DimensionError("restriction index out of range");
            ++s_count[static_cast<std::size_t>(i)];
        }
    for (int i = 0; i < r; ++i) {
        const double ni = xp.size_of(i);
        if (s_count[static_cast<std::size_t>(i)] > static_cast<double>(ledger.alpha) * ni + 1e-9)
            throw DimensionError("restricted set exceeds alpha n_i in class " + std::to_string(i));
        if (static_cast<int>(ir.families[static_cast<std::size_t>(i)].size()) > ledger.cap_c)
            throw DimensionError("more than C families in class " + std::to_string(i));
        for (const auto& fam : ir.families[static_cast<std::size_t>(i)])
            if (static_cast<double>(fam.size()) < static_cast<double>(ledger.c) * ni - 1e-9)
                throw TooSmallError("image restriction below c n_i in class " + std::to_string(i));
    }
    // neighborhood budget of the restricted set, per reduced edge
    std::vector<std::vector<char>> nbhd(static_cast<std::size_t>(r),
                                        std::vector<char>(static_cast<std::size_t>(inst.target.graph.n()), 0));
    for (int x = 0; x < inst.target.graph.n(); ++x)
        if (!ir.empty_for(x)) {
            int i = cls[static_cast<std::size_t>(x)];
            for (int y : inst.target.graph.neighbors(x))
                nbhd[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)] = 1;
        }
    for (int i = 0; i < r; ++i)
        for (int j : inst.target.reduced.neighbors(i)) {
            long long cnt = 0;
            for (int y : xp.cls(j)) cnt += nbhd[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)];
            if (static_cast<double>(cnt) > static_cast<double>(ledger.alpha) * xp.size_of(j) + 1e-9)
                throw DimensionError("N(S_i) exceeds alpha n_j on reduced edge " + std::to_string(i) + "-" +
                                     std::to_string(j));
        }
}

struct ImportantSets {
    std::vector<char> x_star;             // flag per target vertex
    std::vector<std::vector<int>> l_star; // protected ending per class
    bool bound_ok = true;                 // |X_i^*| <= a lambda n_i + alpha n_i per class
};

// L*_i = the last ceil(lambda n_i) vertices of X_i \ N(S) in the ordering;
// X*_i = N^-(L*_i) union S_i. Important vertices are embedded into the
// special pools.
inline ImportantSets important_sets(const BlowupInstance& inst, const ConstantsLedger& ledger,
                                    const ImageRestrictions& ir, const ArrangeableOrdering& ordering)
{
    const Graph& h = inst.target.graph;
    const int n = h.n();
    const int r = inst.target.partition.r();
    const auto cls = inst.target.partition.class_of(n);

    std::vector<char> near_s(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        if (!ir.empty_for(x))
            for (int y : h.neighbors(x)) near_s[static_cast<std::size_t>(y)] = 1;

    ImportantSets out;
    out.x_star.assign(static_cast<std::size_t>(n), 0);
    out.l_star.resize(static_cast<std::size_t>(r));

    std::vector<std::vector<int>> eligible(static_cast<std::size_t>(r)); // X_i \ N(S) in ordering order
    for (int x : ordering.order)
        if (!near_s[static_cast<std::size_t>(x)])
            eligible[static_cast<std::size_t>(cls[static_cast<std::size_t>(x)])].push_back(x);

    std::vector<long long> xstar_count(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
        const long long ni = inst.target.partition.size_of(i);
        const long long want = static_cast<long long>(
            std::ceil(static_cast<double>(ledger.lambda) * static_cast<double>(ni) - 1e-12));
        auto& el = eligible[static_cast<std::size_t>(i)];
        if (static_cast<long long>(el.size()) < want)
            throw NotEnoughVertices("class " + std::to_string(i) + " has fewer than lambda n_i vertices outside N(S)");
        out.l_star[static_cast<std::size_t>(i)].assign(el.end() - want, el.end());
        for (int x : out.l_star[static_cast<std::size_t>(i)])
            for (int y : ordering.left_neighbors[static_cast<std::size_t>(x)])
                if (!out.x_star[static_cast<std::size_t>(y)]) {
                    out.x_star[static_cast<std::size_t>(y)] = 1;
                    ++xstar_count[static_cast<std::size_t>(cls[static_cast<std::size_t>(y)])];
                }
    }
    for (int x = 0; x < n; ++x)
        if (!ir.empty_for(x) && !out.x_star[static_cast<std::size_t>(x)]) {
            out.x_star[static_cast<std::size_t>(x)] = 1;
            ++xstar_count[static_cast<std::size_t>(cls[static_cast<std::size_t>(x)])];
        }
    for (int i = 0; i < r; ++i) {
        const double ni = inst.target.partition.size_of(i);
        const double cap = ledger.a * (static_cast<double>(ledger.lambda) * ni + 1.0) +
                           static_cast<double>(ledger.alpha) * ni;
        if (static_cast<double>(xstar_count[static_cast<std::size_t>(i)]) > cap) out.bound_ok = false;
    }
    return out;
}

// Mutable state of one embedding run.
struct EmbeddingState {
    long t = 1; // clock; vertex order[t-1] is embedded at time t
    long horizon = 0;

    std::vector<int> order;      // stable-ended ordering of H
    std::vector<int> position;   // h vertex -> ordering position
    std::vector<int> phi;        // h -> g, -1 while unembedded
    std::vector<long> embed_time; // h -> time, 0 while unembedded

    std::vector<std::vector<int>> cand; // C_{t,x}, sorted host vertices
    std::vector<char> host_free;
    std::vector<char> host_special;
    std::vector<int> special_size; // |V_i^sp| per class

    std::vector<int> pi;        // embedded-predecessor counts
    std::vector<char> in_queue; // ever-critical flags (monotone)
    std::vector<long long> queue_size;

    std::vector<char> x_star;
    std::vector<std::vector<int>> l_star;

    std::vector<int> avail_ord; // |C_x cap free cap ordinary|
    std::vector<int> avail_sp;  // |C_x cap free cap special|

    std::vector<int> h_class;
    std::vector<int> g_class;
    // host adjacency bucketed by class, so candidate filtering only walks
    // neighbors inside the class under inspection
    std::vector<std::vector<std::vector<int>>> host_adj_by_class;

    Rng rng;
};

enum class PoolKind { Ordinary, Special };

struct StepOutcome {
    int h_vertex = -1;
    int image = -1;
    PoolKind pool = PoolKind::Ordinary;
    int pool_size = 0; // |A(x)| the image was drawn from
};

namespace detail {

inline std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace detail

// Initialisation: sample the special pools, set the starting candidate sets,
// and run the two balance checks. Throws InitFailure when a check fails.
inline EmbeddingState initialise(const BlowupInstance& inst, const ConstantsLedger& ledger,
                                 const ImageRestrictions& ir, const ArrangeableOrdering& ordering,
                                 std::uint64_t rng_seed)
{
    const Graph& h = inst.target.graph;
    const Graph& g = inst.host.graph;
    const int n = h.n();
    const int r = inst.target.partition.r();
    if (g.n() != n) throw DimensionError("target and host orders differ");
    for (int i = 0; i < r; ++i)
        if (inst.target.partition.size_of(i) != inst.host.partition.size_of(i))
            throw DimensionError("cluster sizes differ in class " + std::to_string(i));

    EmbeddingState st;
    st.rng = Rng(rng_seed);
    st.order = ordering.order;
    st.position.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) st.position[static_cast<std::size_t>(st.order[static_cast<std::size_t>(i)])] = i;
    st.phi.assign(static_cast<std::size_t>(n), -1);
    st.embed_time.assign(static_cast<std::size_t>(n), 0);
    st.host_free.assign(static_cast<std::size_t>(n), 1);
    st.host_special.assign(static_cast<std::size_t>(n), 0);
    st.special_size.assign(static_cast<std::size_t>(r), 0);
    st.pi.assign(static_cast<std::size_t>(n), 0);
    st.in_queue.assign(static_cast<std::size_t>(n), 0);
    st.queue_size.assign(static_cast<std::size_t>(r), 0);
    st.h_class = inst.target.partition.class_of(n);
    st.g_class = inst.host.partition.class_of(n);

    st.host_adj_by_class.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        st.host_adj_by_class[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(r));
        for (int u : g.neighbors(v))
            st.host_adj_by_class[static_cast<std::size_t>(v)][static_cast<std::size_t>(st.g_class[static_cast<std::size_t>(u)])]
                .push_back(u);
    }

    // special pools: floor(mu/10 n_i) random vertices per cluster
    for (int i = 0; i < r; ++i) {
        const auto& vi = inst.host.partition.cls(i);
        const int want = static_cast<int>(std::floor(static_cast<double>(ledger.mu) / 10.0 *
                                                     static_cast<double>(vi.size())));
        st.special_size[static_cast<std::size_t>(i)] = want;
        auto picks = st.rng.sample_indices(static_cast<int>(vi.size()), want);
        for (int idx : picks) st.host_special[static_cast<std::size_t>(vi[static_cast<std::size_t>(idx)])] = 1;
    }

    // starting candidate sets
    st.cand.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        const int i = st.h_class[static_cast<std::size_t>(x)];
        if (ir.empty_for(x)) {
            st.cand[static_cast<std::size_t>(x)] = inst.host.partition.cls(i);
            std::sort(st.cand[static_cast<std::size_t>(x)].begin(), st.cand[static_cast<std::size_t>(x)].end());
        } else {
            st.cand[static_cast<std::size_t>(x)] =
                ir.families[static_cast<std::size_t>(i)][static_cast<std::size_t>(ir.assignment[static_cast<std::size_t>(x)])];
        }
    }

    // balance check between each vertex's special and full cross-neighborhoods
    const double tol = ledger.init_tolerance();
    for (int i = 0; i < r; ++i)
        for (int v : inst.host.partition.cls(i))
            for (int j : inst.host.reduced.neighbors(i)) {
                long long in_sp = 0, in_all = 0;
                for (int u : st.host_adj_by_class[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)]) {
                    ++in_all;
                    in_sp += st.host_special[static_cast<std::size_t>(u)];
                }
                const double nj = inst.host.partition.size_of(j);
                const double spj = st.special_size[static_cast<std::size_t>(j)];
                if (spj <= 0) throw InitFailure("empty special pool in class " + std::to_string(j), j, v);
                const double dev = std::fabs(static_cast<double>(in_sp) / spj - static_cast<double>(in_all) / nj);
                if (dev > tol)
                    throw InitFailure("special/full neighborhood balance " + std::to_string(dev) +
                                          " exceeds tolerance " + std::to_string(tol),
                                      i, v);
            }

    // restricted vertices must keep enough special candidates
    for (int x = 0; x < n; ++x) {
        if (ir.empty_for(x)) continue;
        const int i = st.h_class[static_cast<std::size_t>(x)];
        long long in_sp = 0;
        for (int v : st.cand[static_cast<std::size_t>(x)]) in_sp += st.host_special[static_cast<std::size_t>(v)];
        const double floor_needed = (1.0 / 20.0) * static_cast<double>(ledger.c) *
                                    static_cast<double>(ledger.mu) *
                                    static_cast<double>(inst.target.partition.size_of(i));
        if (static_cast<double>(in_sp) < floor_needed)
            throw InitFailure("restricted vertex keeps " + std::to_string(in_sp) +
                                  " special candidates, floor " + std::to_string(floor_needed),
                              i, x);
    }

    // availability counters
    st.avail_ord.assign(static_cast<std::size_t>(n), 0);
    st.avail_sp.assign(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (int v : st.cand[static_cast<std::size_t>(x)])
            (st.host_special[static_cast<std::size_t>(v)] ? st.avail_sp : st.avail_ord)[static_cast<std::size_t>(x)]++;

    return st;
}

inline void attach_important(EmbeddingState& st, const ImportantSets& imp)
{
    st.x_star = imp.x_star;
    st.l_star = imp.l_star;
}

// One step of the embedding stage: filter the pool by the candidate-splitting
// conditions for every successor, draw the image, intersect the successors'
// candidate sets, and update the critical queue.
inline StepOutcome embed_step(EmbeddingState& st, const BlowupInstance& inst,
                              const ConstantsLedger& ledger, const ArrangeableOrdering& ordering)
{
    const Graph& g = inst.host.graph;
    const int x = st.order[static_cast<std::size_t>(st.t - 1)];
    const int cx = st.h_class[static_cast<std::size_t>(x)];
    const double eps_f = ledger.filter_tolerance();
    const double delta = static_cast<double>(ledger.delta);

    const bool special_route = (!st.x_star.empty() && st.x_star[static_cast<std::size_t>(x)]) ||
                               st.in_queue[static_cast<std::size_t>(x)];

    // available candidates in the routed pool
    std::vector<int> pool;
    pool.reserve(st.cand[static_cast<std::size_t>(x)].size());
    for (int v : st.cand[static_cast<std::size_t>(x)])
        if (st.host_free[static_cast<std::size_t>(v)] &&
            st.host_special[static_cast<std::size_t>(v)] == (special_route ? 1 : 0))
            pool.push_back(v);

    // successors still to come; their candidate sets must keep splitting at
    // ratio delta within the filter tolerance
    std::vector<int> successors;
    for (int y : ordering.right_neighbors[static_cast<std::size_t>(x)])
        if (st.phi[static_cast<std::size_t>(y)] < 0) successors.push_back(y);

    std::vector<char> keep(pool.size(), 1);
    std::vector<int> count_ord(pool.size()), count_sp(pool.size());
    std::vector<char> mark(static_cast<std::size_t>(g.n()), 0);
    for (int y : successors) {
        const int cy = st.h_class[static_cast<std::size_t>(y)];
        long long c_ord = 0, c_sp = 0;
        for (int u : st.cand[static_cast<std::size_t>(y)]) {
            mark[static_cast<std::size_t>(u)] = 1;
            (st.host_special[static_cast<std::size_t>(u)] ? c_sp : c_ord)++;
        }
        const double lo_ord = (delta - eps_f) * static_cast<double>(c_ord);
        const double hi_ord = (delta + eps_f) * static_cast<double>(c_ord);
        const double lo_sp = (delta - eps_f) * static_cast<double>(c_sp);
        const double hi_sp = (delta + eps_f) * static_cast<double>(c_sp);
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (!keep[k]) continue;
            long long no = 0, ns = 0;
            for (int u : st.host_adj_by_class[static_cast<std::size_t>(pool[k])][static_cast<std::size_t>(cy)])
                if (mark[static_cast<std::size_t>(u)])
                    (st.host_special[static_cast<std::size_t>(u)] ? ns : no)++;
            if (static_cast<double>(no) < lo_ord || static_cast<double>(no) > hi_ord ||
                static_cast<double>(ns) < lo_sp || static_cast<double>(ns) > hi_sp)
                keep[k] = 0;
        }
        for (int u : st.cand[static_cast<std::size_t>(y)]) mark[static_cast<std::size_t>(u)] = 0;
    }

    std::vector<int> choice;
    choice.reserve(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k)
        if (keep[k]) choice.push_back(pool[k]);
    if (choice.empty())
        throw EmptyPool("no admissible image for vertex " + std::to_string(x) + " at time " +
                            std::to_string(st.t),
                        x, st.t);

    const int image = choice[static_cast<std::size_t>(st.rng.index(choice.size()))];

    // commit
    st.phi[static_cast<std::size_t>(x)] = image;
    st.embed_time[static_cast<std::size_t>(x)] = st.t;
    st.host_free[static_cast<std::size_t>(image)] = 0;

    std::vector<int> touched; // vertices whose availability changed
    const int ci = st.g_class[static_cast<std::size_t>(image)];
    for (int y : inst.target.partition.cls(ci)) {
        if (st.phi[static_cast<std::size_t>(y)] >= 0) continue;
        const auto& cy = st.cand[static_cast<std::size_t>(y)];
        if (std::binary_search(cy.begin(), cy.end(), image)) {
            (st.host_special[static_cast<std::size_t>(image)] ? st.avail_sp : st.avail_ord)[static_cast<std::size_t>(y)]--;
            touched.push_back(y);
        }
    }

    // successor candidate sets shrink to the image's neighborhood
    for (int y : successors) {
        const int cy = st.h_class[static_cast<std::size_t>(y)];
        auto& cset = st.cand[static_cast<std::size_t>(y)];
        cset = detail::intersect_sorted(cset, st.host_adj_by_class[static_cast<std::size_t>(image)][static_cast<std::size_t>(cy)]);
        st.pi[static_cast<std::size_t>(y)]++;
        int ao = 0, as = 0;
        for (int v : cset)
            if (st.host_free[static_cast<std::size_t>(v)])
                (st.host_special[static_cast<std::size_t>(v)] ? as : ao)++;
        st.avail_ord[static_cast<std::size_t>(y)] = ao;
        st.avail_sp[static_cast<std::size_t>(y)] = as;
        touched.push_back(y);
    }

    // the critical queue collects ordinary vertices whose ordinary
    // availability fell below gamma n_i
    bool queue_changed = false;
    for (int y : touched) {
        if (st.phi[static_cast<std::size_t>(y)] >= 0 || st.in_queue[static_cast<std::size_t>(y)]) continue;
        if (!st.x_star.empty() && st.x_star[static_cast<std::size_t>(y)]) continue;
        const int cy = st.h_class[static_cast<std::size_t>(y)];
        const double gn = static_cast<double>(ledger.gamma) *
                          static_cast<double>(inst.target.partition.size_of(cy));
        if (static_cast<double>(st.avail_ord[static_cast<std::size_t>(y)]) < gn) {
            st.in_queue[static_cast<std::size_t>(y)] = 1;
            st.queue_size[static_cast<std::size_t>(cy)]++;
            queue_changed = true;
        }
    }
    ++st.t; // the step committed; halting checks follow the update
    if (queue_changed)
        for (int i = 0; i < inst.target.partition.r(); ++i) {
            const double cap = static_cast<double>(ledger.eps_prime) *
                               static_cast<double>(inst.target.partition.size_of(i));
            if (static_cast<double>(st.queue_size[static_cast<std::size_t>(i)]) > cap)
                throw QueueOverflow("critical queue in class " + std::to_string(i) + " exceeded eps' n_i",
                                    i, st.t - 1);
        }

    StepOutcome out;
    out.h_vertex = x;
    out.image = image;
    out.pool = special_route ? PoolKind::Special : PoolKind::Ordinary;
    out.pool_size = static_cast<int>(choice.size());
    return out;
}

// Recomputes C_{t,x} from scratch: the base set intersected with the host
// neighborhoods of every predecessor embedded before time t. Serves as the
// independent oracle for the incrementally maintained sets.
inline std::vector<int> recompute_candidate_set(const EmbeddingState& st, const BlowupInstance& inst,
                                                const ImageRestrictions& ir,
                                                const ArrangeableOrdering& ordering, int x, long t)
{
    const int i = st.h_class[static_cast<std::size_t>(x)];
    std::vector<int> base;
    if (ir.empty_for(x)) {
        base = inst.host.partition.cls(i);
        std::sort(base.begin(), base.end());
    } else {
        base = ir.families[static_cast<std::size_t>(i)][static_cast<std::size_t>(ir.assignment[static_cast<std::size_t>(x)])];
    }
    for (int y : ordering.left_neighbors[static_cast<std::size_t>(x)]) {
        if (st.embed_time[static_cast<std::size_t>(y)] == 0 || st.embed_time[static_cast<std::size_t>(y)] >= t)
            continue;
        const int img = st.phi[static_cast<std::size_t>(y)];
        base = detail::intersect_sorted(base, st.host_adj_by_class[static_cast<std::size_t>(img)][static_cast<std::size_t>(i)]);
    }
    return base;
}

struct EnvelopeStats {
    long long checked = 0;
    long long ordinary_violations = 0;
    long long special_violations = 0;
    long long restricted_floor_violations = 0; // |C^sp| < (9/10) gamma n_i for x in S
};

// Candidate-size envelopes relative to the pool bases, at the filter
// tolerance actually in force.
inline EnvelopeStats envelope_check(const EmbeddingState& st, const BlowupInstance& inst,
                                    const ConstantsLedger& ledger, const ImageRestrictions& ir)
{
    EnvelopeStats es;
    const double delta = static_cast<double>(ledger.delta);
    const double eps_f = ledger.filter_tolerance();
    const int n = inst.target.graph.n();
    for (int x = 0; x < n; ++x) {
        if (st.phi[static_cast<std::size_t>(x)] >= 0) continue;
        const int i = st.h_class[static_cast<std::size_t>(x)];
        const double ni = inst.target.partition.size_of(i);
        long long c_ord = 0, c_sp = 0;
        for (int v : st.cand[static_cast<std::size_t>(x)])
            (st.host_special[static_cast<std::size_t>(v)] ? c_sp : c_ord)++;
        ++es.checked;
        const int p = st.pi[static_cast<std::size_t>(x)];
        if (ir.empty_for(x)) {
            const double base_ord = ni - st.special_size[static_cast<std::size_t>(i)];
            const double base_sp = st.special_size[static_cast<std::size_t>(i)];
            const double lo = std::pow(std::max(0.0, delta - eps_f), p);
            const double hi = std::pow(delta + eps_f, p);
            if (static_cast<double>(c_ord) < base_ord * lo - 1e-9 ||
                static_cast<double>(c_ord) > base_ord * hi + 1e-9)
                ++es.ordinary_violations;
            if (static_cast<double>(c_sp) < base_sp * lo - 1e-9 ||
                static_cast<double>(c_sp) > base_sp * hi + 1e-9)
                ++es.special_violations;
        } else {
            if (static_cast<double>(c_sp) < 0.9 * static_cast<double>(ledger.gamma) * ni)
                ++es.restricted_floor_violations;
        }
    }
    return es;
}

struct EmbedReport {
    bool success = false;
    std::string failure_kind; // empty on success
    std::string failure_detail;
    long t_reached = 0;
    long horizon = 0;
    std::vector<long long> queue_sizes;
    std::vector<int> pool_sizes_min; // per class, min |A(x)| observed
    long long pool_floor_violations = 0; // steps drawing from fewer than (gamma/2) n_i images
    long long special_embeddings = 0;
    EnvelopeStats envelopes;
    double filter_eps_used = 0.0;
    double init_eps_used = 0.0;
};

// Runs the embedding stage through the first `embed_count` vertices of the
// ordering (the almost-spanning prefix). Failures are outcomes, not errors.
inline EmbedReport run_almost_spanning(EmbeddingState& st, const BlowupInstance& inst,
                                       const ConstantsLedger& ledger, const ImageRestrictions& ir,
                                       const ArrangeableOrdering& ordering, long embed_count)
{
    EmbedReport rep;
    rep.horizon = embed_count;
    rep.filter_eps_used = ledger.filter_tolerance();
    rep.init_eps_used = ledger.init_tolerance();
    const int r = inst.target.partition.r();
    rep.pool_sizes_min.assign(static_cast<std::size_t>(r), inst.target.graph.n());
    st.horizon = embed_count;
    try {
        while (st.t <= embed_count) {
            StepOutcome so = embed_step(st, inst, ledger, ordering);
            const int cls = st.h_class[static_cast<std::size_t>(so.h_vertex)];
            rep.pool_sizes_min[static_cast<std::size_t>(cls)] =
                std::min(rep.pool_sizes_min[static_cast<std::size_t>(cls)], so.pool_size);
            rep.special_embeddings += so.pool == PoolKind::Special;
            if (static_cast<double>(so.pool_size) <
                0.5 * static_cast<double>(ledger.gamma) *
                    static_cast<double>(inst.target.partition.size_of(cls)))
                ++rep.pool_floor_violations;
        }
        rep.success = true;
    } catch (const QueueOverflow& e) {
        rep.failure_kind = "queue_overflow";
        rep.failure_detail = e.what();
    } catch (const EmptyPool& e) {
        rep.failure_kind = "empty_pool";
        rep.failure_detail = e.what();
    }
    rep.t_reached = st.t - 1;
    rep.queue_sizes = st.queue_size;
    rep.envelopes = envelope_check(st, inst, ledger, ir);
    return rep;
}

} // namespace abl
