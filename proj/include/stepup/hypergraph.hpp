#ifndef STEPUP_HYPERGRAPH_HPP
#define STEPUP_HYPERGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace stepup {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

/**
 * k-uniform hypergraph on vertices 0..n-1. Edges are stored sorted, without
 * duplicates, in lexicographic order. When n <= 64 each edge also has a
 * bitmask, which the exact searches rely on.
 */
class Hypergraph {
public:
    Hypergraph() = default;

    Hypergraph(std::size_t k, std::size_t n) : k_(k), n_(n) {
        if (k < 1) throw std::invalid_argument("uniformity must be positive");
    }

    Hypergraph(std::size_t k, std::size_t n, std::vector<Edge> edges) : Hypergraph(k, n) {
        for (auto& e : edges) add_edge(std::move(e));
    }

    /// Adds an edge; returns false if it was already present.
    bool add_edge(Edge e) {
        std::sort(e.begin(), e.end());
        if (e.size() != k_)
            throw std::invalid_argument("edge has " + std::to_string(e.size()) + " vertices, expected " +
                                        std::to_string(k_));
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("edge has a repeated vertex");
        if (!e.empty() && e.back() >= n_)
            throw std::invalid_argument("edge vertex " + std::to_string(e.back()) + " out of range (n = " +
                                        std::to_string(n_) + ")");
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it != edges_.end() && *it == e) return false;
        const auto pos = it - edges_.begin();
        edges_.insert(it, e);
        if (n_ <= 64) masks_.insert(masks_.begin() + pos, mask_of(e));
        return true;
    }

    bool has_edge(Edge e) const {
        std::sort(e.begin(), e.end());
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    std::size_t uniformity() const { return k_; }
    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool fits_mask() const { return n_ <= 64; }

    /// Bitmask per edge; requires n <= 64.
    const std::vector<std::uint64_t>& edge_masks() const {
        if (!fits_mask()) throw std::invalid_argument("bitmask view needs at most 64 vertices");
        return masks_;
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(n_, 0);
        for (const auto& e : edges_)
            for (auto v : e) ++d[v];
        return d;
    }

    bool operator==(const Hypergraph& o) const {
        return k_ == o.k_ && n_ == o.n_ && edges_ == o.edges_;
    }

    static std::uint64_t mask_of(const Edge& e) {
        std::uint64_t m = 0;
        for (auto v : e) m |= std::uint64_t{1} << v;
        return m;
    }

private:
    std::size_t k_ = 2;
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> masks_;
};

// ---------------------------------------------------------------------------
// Structural queries
// ---------------------------------------------------------------------------

/// Every two distinct edges share at most one vertex.
inline bool is_linear(const Hypergraph& h) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                if (!seen.emplace(e[i], e[j]).second) return false;
    }
    return true;
}

namespace detail {

class BergeCycleFinder {
public:
    BergeCycleFinder(const Hypergraph& h, std::size_t max_len) : h_(h), max_len_(max_len) {
        incident_.resize(h.vertex_count());
        for (std::size_t i = 0; i < h.edge_count(); ++i)
            for (auto v : h.edges()[i]) incident_[v].push_back(i);
        edge_used_.assign(h.edge_count(), false);
        vertex_used_.assign(h.vertex_count(), false);
    }

    bool has_cycle() {
        for (Vertex start = 0; start < h_.vertex_count(); ++start) {
            start_ = start;
            vertex_used_[start] = true;
            if (extend(start, 1)) return true;
            vertex_used_[start] = false;
        }
        return false;
    }

private:
    // Path start = v_1, e_1, v_2, ..., v_len = cur. Every vertex on the path is >= start,
    // so each cycle is found from its smallest vertex.
    bool extend(Vertex cur, std::size_t len) {
        for (auto ei : incident_[cur]) {
            if (edge_used_[ei]) continue;
            const auto& e = h_.edges()[ei];
            // Close the cycle with this edge.
            if (len >= 2 && std::binary_search(e.begin(), e.end(), start_)) return true;
            if (len == max_len_) continue;
            edge_used_[ei] = true;
            for (auto w : e) {
                if (w <= start_ || vertex_used_[w]) continue;
                vertex_used_[w] = true;
                if (extend(w, len + 1)) return true;
                vertex_used_[w] = false;
            }
            edge_used_[ei] = false;
        }
        return false;
    }

    const Hypergraph& h_;
    std::size_t max_len_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<bool> edge_used_;
    std::vector<bool> vertex_used_;
    Vertex start_ = 0;
};

} // namespace detail

/**
 * True iff H has no Berge cycle of length 2..g: distinct vertices v_1..v_l and
 * distinct edges e_1..e_l with {v_i, v_{i+1 mod l}} contained in e_i.
 */
inline bool berge_girth_exceeds(const Hypergraph& h, std::size_t g) {
    if (g < 2) throw std::invalid_argument("girth bound must be at least 2");
    return !detail::BergeCycleFinder(h, g).has_cycle();
}

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

/// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_k_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    Edge c(k);
    std::iota(c.begin(), c.end(), Vertex{0});
    while (true) {
        f(static_cast<const Edge&>(c));
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

inline Hypergraph complement(const Hypergraph& h) {
    Hypergraph out(h.uniformity(), h.vertex_count());
    std::vector<Edge> edges;
    for_each_k_subset(h.vertex_count(), h.uniformity(), [&](const Edge& e) {
        if (!h.has_edge(e)) edges.push_back(e);
    });
    // Generated in lexicographic order, so appends keep the edge list sorted.
    for (auto& e : edges) out.add_edge(std::move(e));
    return out;
}

/// Relabels v -> n-1-v.
inline Hypergraph reverse(const Hypergraph& h) {
    Hypergraph out(h.uniformity(), h.vertex_count());
    const auto n = static_cast<Vertex>(h.vertex_count());
    for (const auto& e : h.edges()) {
        Edge r;
        r.reserve(e.size());
        for (auto v : e) r.push_back(n - 1 - v);
        out.add_edge(std::move(r));
    }
    return out;
}

/// Image of H under an injective vertex map into a host on `n` vertices.
inline Hypergraph relabel(const Hypergraph& h, const std::vector<Vertex>& map, std::size_t n) {
    Hypergraph out(h.uniformity(), n);
    for (const auto& e : h.edges()) {
        Edge r;
        for (auto v : e) r.push_back(map.at(v));
        out.add_edge(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text and JSON formats
// ---------------------------------------------------------------------------

/// Header "k n m", then m lines of k ascending vertex indices. '#' starts a comment.
inline void write_text(std::ostream& os, const Hypergraph& h) {
    os << h.uniformity() << ' ' << h.vertex_count() << ' ' << h.edge_count() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << '\n';
    }
}

inline std::string to_text(const Hypergraph& h) {
    std::ostringstream os;
    write_text(os, h);
    return os.str();
}

inline Hypergraph read_text(std::istream& is) {
    std::vector<long long> nums;
    std::string line;
    while (std::getline(is, line)) {
        if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("hypergraph text: bad token '" + tok + "'");
            }
            if (pos != tok.size() || v < 0) throw std::invalid_argument("hypergraph text: bad token '" + tok + "'");
            nums.push_back(v);
        }
    }
    if (nums.size() < 3) throw std::invalid_argument("hypergraph text: missing 'k n m' header");
    const auto k = static_cast<std::size_t>(nums[0]);
    const auto n = static_cast<std::size_t>(nums[1]);
    const auto m = static_cast<std::size_t>(nums[2]);
    if (nums.size() != 3 + k * m)
        throw std::invalid_argument("hypergraph text: expected " + std::to_string(m) + " edges of size " +
                                    std::to_string(k));
    Hypergraph h(k, n);
    for (std::size_t i = 0; i < m; ++i) {
        Edge e;
        for (std::size_t j = 0; j < k; ++j) e.push_back(static_cast<Vertex>(nums[3 + i * k + j]));
        if (!std::is_sorted(e.begin(), e.end()))
            throw std::invalid_argument("hypergraph text: edge " + std::to_string(i) + " is not ascending");
        if (!h.add_edge(std::move(e)))
            throw std::invalid_argument("hypergraph text: duplicate edge " + std::to_string(i));
    }
    return h;
}

inline Hypergraph from_text(const std::string& s) {
    std::istringstream is(s);
    return read_text(is);
}

inline nlohmann::json to_json(const Hypergraph& h) {
    nlohmann::json j;
    j["k"] = h.uniformity();
    j["n"] = h.vertex_count();
    j["edges"] = h.edges();
    return j;
}

inline Hypergraph from_json(const nlohmann::json& j) {
    Hypergraph h(j.at("k").get<std::size_t>(), j.at("n").get<std::size_t>());
    for (const auto& e : j.at("edges")) {
        if (!h.add_edge(e.get<Edge>())) throw std::invalid_argument("hypergraph json: duplicate edge");
    }
    return h;
}

} // namespace stepup

#endif // STEPUP_HYPERGRAPH_HPP
