#ifndef STEPUP_CONSTRUCTIONS_HPP
#define STEPUP_CONSTRUCTIONS_HPP

#include <stepup/hypergraph.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepup {

/// Hypergraph plus a vertex order; order[r] is the vertex of rank r.
struct OrderedHypergraph {
    Hypergraph hypergraph;
    std::vector<Vertex> order;

    std::vector<std::size_t> ranks() const {
        std::vector<std::size_t> r(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) r.at(order[i]) = i;
        return r;
    }

    bool order_is_bijection() const {
        if (order.size() != hypergraph.vertex_count()) return false;
        std::vector<bool> seen(order.size(), false);
        for (auto v : order) {
            if (v >= order.size() || seen[v]) return false;
            seen[v] = true;
        }
        return true;
    }
};

struct Expansion {
    Hypergraph hypergraph;
    std::vector<Vertex> new_vertex; // new_vertex[i] = v_e for edge i of the source
};

/**
 * H+: adds a fresh vertex v_e to every edge e. Old vertices keep their labels;
 * v_e for the i-th edge (in sorted edge order) is |V(H)| + i.
 */
inline Expansion expansion(const Hypergraph& h) {
    const std::size_t n = h.vertex_count();
    Expansion out{Hypergraph(h.uniformity() + 1, n + h.edge_count()), {}};
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        Edge e = h.edges()[i];
        const auto ve = static_cast<Vertex>(n + i);
        e.push_back(ve);
        out.hypergraph.add_edge(std::move(e));
        out.new_vertex.push_back(ve);
    }
    return out;
}

/// Ordered expansion with every v_e first (in edge order), then the old vertices ascending.
inline OrderedHypergraph ordered_expansion(const Hypergraph& h) {
    Expansion ex = expansion(h);
    OrderedHypergraph out{std::move(ex.hypergraph), {}};
    for (auto v : ex.new_vertex) out.order.push_back(v);
    for (Vertex v = 0; v < h.vertex_count(); ++v) out.order.push_back(v);
    return out;
}

/// Each v_e is the smallest vertex (in the order) of e + {v_e}.
inline bool is_ordered_expansion(const OrderedHypergraph& oh, const Expansion& ex) {
    if (!oh.order_is_bijection() || !(oh.hypergraph == ex.hypergraph)) return false;
    const auto rank = oh.ranks();
    for (auto ve : ex.new_vertex) {
        for (const auto& e : oh.hypergraph.edges()) {
            if (!std::binary_search(e.begin(), e.end(), ve)) continue;
            for (auto v : e)
                if (rank[v] < rank[ve]) return false;
        }
    }
    return true;
}

/**
 * Lines of PG(2, q) for prime q. Points are the 1-dimensional subspaces of
 * F_q^3, represented by the vector whose first nonzero coordinate is 1 and
 * numbered in lexicographic order of that representative. Lines are the
 * point sets orthogonal to a normalized vector, in the same order.
 */
inline Hypergraph pg_lines(unsigned q) {
    if (q != 2 && q != 3 && q != 5 && q != 7)
        throw std::invalid_argument("pg_lines: q must be a small prime (2, 3, 5 or 7), got " + std::to_string(q));
    std::vector<std::array<unsigned, 3>> points;
    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b)
            for (unsigned c = 0; c < q; ++c) {
                const std::array<unsigned, 3> v{a, b, c};
                unsigned first = 0;
                for (auto x : v)
                    if (x) {
                        first = x;
                        break;
                    }
                if (first == 1) points.push_back(v);
            }
    Hypergraph h(q + 1, points.size());
    for (const auto& normal : points) {
        Edge line;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            if ((normal[0] * p[0] + normal[1] * p[1] + normal[2] * p[2]) % q == 0)
                line.push_back(static_cast<Vertex>(i));
        }
        h.add_edge(std::move(line));
    }
    return h;
}

/// The Fano plane F_3 = PG(2, 2).
inline Hypergraph fano_plane() { return pg_lines(2); }

/// F_4 = lines of PG(2, 3): 13 points, 13 lines of size 4.
inline Hypergraph f4() { return pg_lines(3); }

/**
 * G_1 is a single 4-edge; G_k is two copies of G_{k-1} (on the low and high
 * halves of {0..2^{k+1}-1}) plus every 4-set meeting each copy in exactly two vertices.
 */
inline Hypergraph g_k(std::size_t k) {
    if (k < 1) throw std::invalid_argument("g_k: k must be >= 1");
    if (k > 5) throw std::invalid_argument("g_k: k > 5 is too large to materialize (limit 64 vertices)");
    Hypergraph g(4, 4, {{0, 1, 2, 3}});
    for (std::size_t level = 2; level <= k; ++level) {
        const auto half = static_cast<Vertex>(g.vertex_count());
        Hypergraph next(4, 2 * half);
        std::vector<Edge> edges;
        for (const auto& e : g.edges()) edges.push_back(e);
        for (const auto& e : g.edges()) {
            Edge s;
            for (auto v : e) s.push_back(v + half);
            edges.push_back(std::move(s));
        }
        for (Vertex a = 0; a < half; ++a)
            for (Vertex b = a + 1; b < half; ++b)
                for (Vertex c = half; c < 2 * half; ++c)
                    for (Vertex d = c + 1; d < 2 * half; ++d) edges.push_back({a, b, c, d});
        std::sort(edges.begin(), edges.end());
        for (auto& e : edges) next.add_edge(std::move(e));
        g = std::move(next);
    }
    return g;
}

/**
 * Every A inside V(H) such that each edge lies fully inside A or fully outside
 * it, or (for 4-uniform H) meets A and its complement in exactly two vertices.
 * For 4-graphs the allowed |A cap e| are {0, 2, 4}. Returned as bitmasks.
 */
inline std::vector<std::uint64_t> parity_partition_scan(const Hypergraph& h, std::size_t max_vertices = 25) {
    const std::size_t n = h.vertex_count();
    if (n > max_vertices) throw std::invalid_argument("parity_partition_scan: too many vertices for a 2^n scan");
    const std::size_t k = h.uniformity();
    std::vector<bool> allowed(k + 1, false);
    allowed[0] = true;
    allowed[k] = true;
    if (k == 4) allowed[2] = true;
    const auto& masks = h.edge_masks();
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
        bool ok = true;
        for (auto m : masks) {
            if (!allowed[static_cast<std::size_t>(__builtin_popcountll(a & m))]) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(a);
    }
    return out;
}

} // namespace stepup

#endif // STEPUP_CONSTRUCTIONS_HPP
