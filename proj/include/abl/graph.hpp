#pragma once

#include <abl/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace abl {

// Immutable undirected simple graph over dense vertex indices 0..n-1.
// Adjacency lists are sorted; construction deduplicates and rejects loops.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<std::pair<int, int>> edges) : adj_(static_cast<std::size_t>(n))
    {
        if (n < 0) throw DimensionError("negative vertex count");
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw ParseError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
            if (u == v) throw LoopError("self-loop at vertex " + std::to_string(u));
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        edge_count_ = 0;
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
            edge_count_ += a.size();
        }
        edge_count_ /= 2;
    }

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    bool has_edge(int u, int v) const
    {
        const auto& a = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(a.begin(), a.end(), v);
    }

    int max_degree() const
    {
        int d = 0;
        for (int v = 0; v < n(); ++v) d = std::max(d, degree(v));
        return d;
    }

    int min_degree() const
    {
        if (n() == 0) return 0;
        int d = degree(0);
        for (int v = 1; v < n(); ++v) d = std::min(d, degree(v));
        return d;
    }

    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        out.reserve(edge_count_);
        for (int u = 0; u < n(); ++u)
            for (int v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    std::vector<std::vector<int>> adj_;
    std::size_t edge_count_ = 0;
};

inline int co_degree(const Graph& g, int u, int v)
{
    const auto& a = g.neighbors(u);
    const auto& b = g.neighbors(v);
    int count = 0;
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
        if (*it < *jt) ++it;
        else if (*jt < *it) ++jt;
        else { ++count; ++it; ++jt; }
    }
    return count;
}

// Edge-list text format: header "n m", then one "u v" per line.
// '#' starts a comment; blank lines are skipped. Duplicate edges collapse.
inline Graph load_edge_list(std::istream& in)
{
    std::string line;
    long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long a, b;
        if (!(ls >> a)) continue; // blank or comment-only line
        if (!(ls >> b)) throw ParseError("expected two integers: '" + line + "'");
        long trail;
        if (ls >> trail) throw ParseError("trailing tokens: '" + line + "'");
        if (n < 0) {
            if (a < 0 || b < 0) throw ParseError("negative counts in header");
            n = a;
            m = b;
            edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        if (a == b) throw LoopError("self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw ParseError("vertex out of range: '" + line + "'");
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    if (n < 0) throw ParseError("missing 'n m' header");
    return Graph(static_cast<int>(n), std::move(edges));
}

inline Graph load_edge_list(const std::string& text)
{
    std::istringstream in(text);
    return load_edge_list(in);
}

inline void save_edge_list(const Graph& g, std::ostream& out)
{
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Graph& g)
{
    std::ostringstream out;
    save_edge_list(g, out);
    return out.str();
}

// Vertex partition into classes; class_of maps each vertex to its class.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<std::vector<int>> classes) : classes_(std::move(classes)) {}

    static Partition from_class_of(const std::vector<int>& class_of, int r)
    {
        std::vector<std::vector<int>> cls(static_cast<std::size_t>(r));
        for (int v = 0; v < static_cast<int>(class_of.size()); ++v) {
            int c = class_of[static_cast<std::size_t>(v)];
            if (c < 0 || c >= r) throw DimensionError("class index out of range");
            cls[static_cast<std::size_t>(c)].push_back(v);
        }
        return Partition(std::move(cls));
    }

    int r() const { return static_cast<int>(classes_.size()); }
    const std::vector<int>& cls(int i) const { return classes_[static_cast<std::size_t>(i)]; }
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int size_of(int i) const { return static_cast<int>(classes_[static_cast<std::size_t>(i)].size()); }

    int total() const
    {
        int t = 0;
        for (const auto& c : classes_) t += static_cast<int>(c.size());
        return t;
    }

    // true iff the classes are disjoint and cover exactly [0,n)
    bool covers(int n) const
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (const auto& c : classes_)
            for (int v : c) {
                if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
                seen[static_cast<std::size_t>(v)] = 1;
            }
        for (char s : seen)
            if (!s) return false;
        return true;
    }

    // n_j <= kappa * n_i for all i, j
    bool kappa_balanced(double kappa) const
    {
        for (int i = 0; i < r(); ++i)
            for (int j = 0; j < r(); ++j)
                if (size_of(j) > kappa * size_of(i)) return false;
        return true;
    }

    std::vector<int> class_of(int n) const
    {
        std::vector<int> out(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < r(); ++i)
            for (int v : cls(i)) out[static_cast<std::size_t>(v)] = i;
        return out;
    }

private:
    std::vector<std::vector<int>> classes_;
};

// Graph together with a reduced graph R and a partition such that every
// edge crosses two distinct classes joined in R.
struct RPartitionedGraph {
    Graph graph;
    Graph reduced;
    Partition partition;
};

inline bool check_r_partition(const Graph& g, const Graph& reduced, const Partition& p)
{
    if (!p.covers(g.n())) throw DimensionError("partition does not cover the vertex set");
    if (p.r() != reduced.n()) throw DimensionError("reduced graph order != number of classes");
    const std::vector<int> cls = p.class_of(g.n());
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.neighbors(u)) {
            if (u > v) continue;
            int i = cls[static_cast<std::size_t>(u)];
            int j = cls[static_cast<std::size_t>(v)];
            if (i == j || !reduced.has_edge(i, j)) return false;
        }
    return true;
}

} // namespace abl
