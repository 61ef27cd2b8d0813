#pragma once

// Projection complex P_K and quasi-tree of spaces C_K over a finite
// ProjectionSystem: members become sampled paths, adjacent members get a
// weight-1 bridge between snapped projection midpoints. Shortest paths give
// the graph metric, against which the distance-formula upper bound and the
// four-point hyperbolicity defect are probed.

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <queue>
#include <random>
#include <vector>

#include "ckgeo/errors.hpp"
#include "ckgeo/projections.hpp"

namespace ckgeo {

// [t]_K, boundary inclusive
inline double truncate(double t, double K) { return t >= K ? t : 0.0; }

// unweighted adjacency on members: Y ~ Z iff no third member sees them far apart
inline std::vector<std::array<int, 2>> build_projection_complex(const ProjectionSystem& sys,
                                                               double K) {
    if (K <= 4.0 * sys.estimate_xi()) {
        throw KTooSmall("build_projection_complex: need K > 4 * estimated xi");
    }
    std::vector<std::array<int, 2>> edges;
    int n = sys.size();
    for (int Y = 0; Y < n; ++Y) {
        for (int Z = Y + 1; Z < n; ++Z) {
            bool adjacent = true;
            for (int W = 0; W < n && adjacent; ++W) {
                if (W == Y || W == Z) continue;
                adjacent = sys.dY(W, Y, Z) <= K;
            }
            if (adjacent) edges.push_back({Y, Z});
        }
    }
    return edges;
}

struct QuasiTreeGraph {
    struct Vertex {
        int member = 0;
        double coord = 0.0;
    };

    double K = 0.0;
    double h = 0.25;
    std::vector<Vertex> vertices;
    std::vector<std::vector<std::pair<int, double>>> adj;  // (neighbor, weight)
    std::vector<std::vector<int>> samples;                 // per member, ascending coord

    int add_vertex(int member, double coord) {
        vertices.push_back({member, coord});
        adj.emplace_back();
        if (member >= (int)samples.size()) samples.resize(member + 1);
        samples[member].push_back((int)vertices.size() - 1);
        return (int)vertices.size() - 1;
    }

    void add_edge(int u, int v, double w) {
        adj[u].push_back({v, w});
        adj[v].push_back({u, w});
    }

    // nearest sample of the member to the coordinate; ties toward lower coord
    int nearest_sample(int member, double coord) const {
        const auto& ss = samples[member];
        int best = ss.front();
        for (int i : ss) {
            if (std::abs(vertices[i].coord - coord) < std::abs(vertices[best].coord - coord)) {
                best = i;
            }
        }
        return best;
    }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto& a : adj) total += a.size();
        return total / 2;
    }
};

// C_K(Y) on the truncation. Member coordinate ranges default to the hull of
// all incoming projection intervals; explicit ranges override (needed when a
// member receives no projections).
inline QuasiTreeGraph build_quasi_tree(const ProjectionSystem& sys, double K, double h = 0.25,
                                       std::vector<Interval> ranges = {}) {
    if (h <= 0.0) throw InvalidParams("build_quasi_tree: spacing must be positive");
    if (K <= 4.0 * sys.estimate_xi()) {
        throw KTooSmall("build_quasi_tree: need K > 4 * estimated xi");
    }
    int n = sys.size();
    if (ranges.empty()) {
        ranges.assign(n, Interval{0.0, 0.0});
        for (int Y = 0; Y < n; ++Y) {
            bool first = true;
            for (int X = 0; X < n; ++X) {
                if (X == Y) continue;
                const Interval& iv = sys.pi(Y, X);
                if (first) {
                    ranges[Y] = iv;
                    first = false;
                } else {
                    ranges[Y] = {std::min(ranges[Y].lo, iv.lo), std::max(ranges[Y].hi, iv.hi)};
                }
            }
        }
    }
    QuasiTreeGraph g;
    g.K = K;
    g.h = h;
    g.samples.resize(n);
    for (int Y = 0; Y < n; ++Y) {
        double lo = ranges[Y].lo, hi = ranges[Y].hi;
        int steps = std::max(1, (int)std::ceil((hi - lo) / h));
        double step = (hi - lo) / steps;
        int prev = -1;
        for (int i = 0; i <= steps; ++i) {
            int v = g.add_vertex(Y, lo + step * i);
            if (prev >= 0) g.add_edge(prev, v, step);
            prev = v;
        }
    }
    for (const auto& [Y, Z] : build_projection_complex(sys, K)) {
        int u = g.nearest_sample(Y, sys.pi(Y, Z).midpoint());
        int v = g.nearest_sample(Z, sys.pi(Z, Y).midpoint());
        g.add_edge(u, v, 1.0);
    }
    return g;
}

inline std::vector<double> dijkstra(const QuasiTreeGraph& g, int src) {
    std::vector<double> dist(g.vertices.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (auto [v, w] : g.adj[u]) {
            if (d + w < dist[v]) {
                dist[v] = d + w;
                pq.push({dist[v], v});
            }
        }
    }
    return dist;
}

inline double graph_distance(const QuasiTreeGraph& g, int x, int z) {
    double d = dijkstra(g, x)[z];
    if (std::isinf(d)) throw Disconnected("graph_distance: vertices in different components");
    return d;
}

struct DistanceFormulaResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

// d_C(x,z) <= 6K + 4 * sum_Y [d_Y(x,z)]_K over the truncation
inline DistanceFormulaResult check_distance_formula(const QuasiTreeGraph& g,
                                                    const ProjectionSystem& sys, int x, int z,
                                                    double K) {
    DistanceFormulaResult r;
    r.lhs = graph_distance(g, x, z);
    PointRef px{g.vertices[x].member, g.vertices[x].coord};
    PointRef pz{g.vertices[z].member, g.vertices[z].coord};
    double sum = 0.0;
    for (int Y = 0; Y < sys.size(); ++Y) sum += truncate(sys.dY(Y, px, pz), K);
    r.rhs = 6.0 * K + 4.0 * sum;
    r.pass = r.lhs <= r.rhs;
    return r;
}

// max four-point defect (s1 - s2)/2 over n seeded quadruples from a bounded
// source pool; Dijkstra runs once per pool vertex
inline double delta_four_point(const QuasiTreeGraph& g, int n, unsigned long seed = 1,
                               int pool_size = 48) {
    if (n < 4) throw InvalidParams("delta_four_point: need at least 4 samples");
    int total = (int)g.vertices.size();
    int p = std::min(pool_size, total);
    std::vector<int> pool(p);
    for (int i = 0; i < p; ++i) pool[i] = (int)((long long)i * total / p);
    std::vector<std::vector<double>> dist(p);
    for (int i = 0; i < p; ++i) dist[i] = dijkstra(g, pool[i]);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, p - 1);
    double delta = 0.0;
    for (int it = 0; it < n; ++it) {
        int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        double s0 = dist[a][pool[b]] + dist[c][pool[d]];
        double s1 = dist[a][pool[c]] + dist[b][pool[d]];
        double s2 = dist[a][pool[d]] + dist[b][pool[c]];
        std::array<double, 3> s = {s0, s1, s2};
        std::sort(s.begin(), s.end());
        if (std::isinf(s[2])) continue;  // disconnected truncation: skip
        delta = std::max(delta, (s[2] - s[1]) / 2.0);
    }
    return delta;
}

// whitespace-separated edge list: one "u v weight" line per edge
inline void write_edge_list(std::ostream& os, const QuasiTreeGraph& g) {
    for (int u = 0; u < (int)g.adj.size(); ++u) {
        for (auto [v, w] : g.adj[u]) {
            if (u < v) os << u << " " << v << " " << w << "\n";
        }
    }
}

}  // namespace ckgeo
