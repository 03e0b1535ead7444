#ifndef STEPUP_EMBEDDING_HPP
#define STEPUP_EMBEDDING_HPP

#include <stepup/hypergraph.hpp>

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace stepup {

struct EmbeddingWitness {
    std::vector<Vertex> mapping; // pattern vertex -> host vertex
};

enum class SearchOutcome { found, proven_absent, budget_exhausted };

inline const char* to_string(SearchOutcome o) {
    switch (o) {
    case SearchOutcome::found: return "found";
    case SearchOutcome::proven_absent: return "proven-absent";
    case SearchOutcome::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

struct EmbeddingResult {
    SearchOutcome outcome = SearchOutcome::proven_absent;
    std::optional<EmbeddingWitness> witness;
    std::uint64_t nodes = 0;
};

/// Every pattern edge maps onto a host edge and the map is injective.
inline bool is_valid_embedding(const Hypergraph& pattern, const Hypergraph& host, const EmbeddingWitness& w) {
    if (w.mapping.size() != pattern.vertex_count()) return false;
    std::unordered_set<Vertex> image;
    for (auto v : w.mapping) {
        if (v >= host.vertex_count() || !image.insert(v).second) return false;
    }
    for (const auto& e : pattern.edges()) {
        Edge img;
        for (auto v : e) img.push_back(w.mapping[v]);
        if (!host.has_edge(img)) return false;
    }
    return true;
}

namespace detail {

/**
 * Backtracking embedding search (not induced). Host and pattern must fit in
 * 64 vertices. Domains are bitmasks; for every pattern edge with some mapped
 * vertices, the candidates for an unmapped vertex are restricted to the host
 * vertices that share an edge with the image of the mapped part
 * (forward checking). Next vertex: smallest domain, ties by pattern degree.
 */
class EmbeddingSearch {
public:
    EmbeddingSearch(const Hypergraph& pattern, const Hypergraph& host, std::chrono::milliseconds budget)
        : pattern_(pattern), host_(host), deadline_(std::chrono::steady_clock::now() + budget) {
        if (!host.fits_mask() || !pattern.fits_mask())
            throw std::invalid_argument("contains_copy supports at most 64 vertices");
        for (auto m : host.edge_masks()) {
            host_edges_.insert(m);
            // Index every proper non-empty subset of each edge by the union of co-occurring vertices.
            const auto verts = bits(m);
            const std::size_t k = verts.size();
            for (std::uint32_t sub = 1; sub + 1 < (1u << k); ++sub) {
                std::uint64_t key = 0;
                for (std::size_t i = 0; i < k; ++i)
                    if (sub >> i & 1) key |= std::uint64_t{1} << verts[i];
                link_[key] |= m & ~key;
            }
        }
        host_deg_ = host.degrees();
        pat_deg_ = pattern.degrees();
        pat_incident_.resize(pattern.vertex_count());
        for (std::size_t i = 0; i < pattern.edge_count(); ++i)
            for (auto v : pattern.edges()[i]) pat_incident_[v].push_back(i);
        map_.assign(pattern.vertex_count(), unmapped);
    }

    EmbeddingResult run() {
        EmbeddingResult r;
        const auto status = extend(0, 0);
        r.nodes = nodes_;
        if (status == Status::found) {
            r.outcome = SearchOutcome::found;
            r.witness = EmbeddingWitness{map_};
        } else if (status == Status::timeout) {
            r.outcome = SearchOutcome::budget_exhausted;
        } else {
            r.outcome = SearchOutcome::proven_absent;
        }
        return r;
    }

private:
    enum class Status { found, absent, timeout };
    static constexpr Vertex unmapped = ~Vertex{0};

    static std::vector<Vertex> bits(std::uint64_t m) {
        std::vector<Vertex> out;
        for (; m; m &= m - 1) out.push_back(static_cast<Vertex>(std::countr_zero(m)));
        return out;
    }

    std::uint64_t all_host() const {
        return host_.vertex_count() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << host_.vertex_count()) - 1);
    }

    std::uint64_t domain(Vertex u, std::uint64_t used) const {
        std::uint64_t d = all_host() & ~used;
        for (auto ei : pat_incident_[u]) {
            std::uint64_t key = 0;
            for (auto w : pattern_.edges()[ei])
                if (map_[w] != unmapped) key |= std::uint64_t{1} << map_[w];
            if (key == 0) continue;
            auto it = link_.find(key);
            if (it == link_.end()) return 0;
            d &= it->second;
        }
        std::uint64_t out = 0;
        for (auto m = d; m; m &= m - 1) {
            const int v = std::countr_zero(m);
            if (host_deg_[static_cast<std::size_t>(v)] >= pat_deg_[u]) out |= std::uint64_t{1} << v;
        }
        return out;
    }

    bool edges_ok(Vertex u) const {
        for (auto ei : pat_incident_[u]) {
            std::uint64_t img = 0;
            bool complete = true;
            for (auto w : pattern_.edges()[ei]) {
                if (map_[w] == unmapped) {
                    complete = false;
                    break;
                }
                img |= std::uint64_t{1} << map_[w];
            }
            if (complete && !host_edges_.count(img)) return false;
        }
        return true;
    }

    Status extend(std::size_t depth, std::uint64_t used) {
        if (depth == pattern_.vertex_count()) return Status::found;
        if ((++nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_) return Status::timeout;

        Vertex best = unmapped;
        std::uint64_t best_dom = 0;
        int best_size = 65;
        for (Vertex u = 0; u < pattern_.vertex_count(); ++u) {
            if (map_[u] != unmapped) continue;
            const auto d = domain(u, used);
            const int sz = std::popcount(d);
            if (sz == 0) return Status::absent;
            if (sz < best_size || (sz == best_size && pat_deg_[u] > pat_deg_[best])) {
                best = u;
                best_dom = d;
                best_size = sz;
            }
        }
        bool timed_out = false;
        for (auto m = best_dom; m; m &= m - 1) {
            const auto v = static_cast<Vertex>(std::countr_zero(m));
            map_[best] = v;
            if (edges_ok(best)) {
                const auto s = extend(depth + 1, used | (std::uint64_t{1} << v));
                if (s == Status::found) return s;
                if (s == Status::timeout) timed_out = true;
            }
            map_[best] = unmapped;
            if (timed_out) return Status::timeout;
        }
        return Status::absent;
    }

    const Hypergraph& pattern_;
    const Hypergraph& host_;
    std::chrono::steady_clock::time_point deadline_;
    std::unordered_set<std::uint64_t> host_edges_;
    std::unordered_map<std::uint64_t, std::uint64_t> link_;
    std::vector<std::size_t> host_deg_;
    std::vector<std::size_t> pat_deg_;
    std::vector<std::vector<std::size_t>> pat_incident_;
    std::vector<Vertex> map_;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

/**
 * Searches for a (not necessarily induced) copy of `pattern` in `host`.
 * Three-valued: found (with witness), proven absent, or budget exhausted.
 */
inline EmbeddingResult contains_copy(const Hypergraph& pattern, const Hypergraph& host,
                                     std::chrono::milliseconds budget = std::chrono::seconds(10)) {
    if (pattern.uniformity() != host.uniformity())
        throw std::invalid_argument("contains_copy: uniformity mismatch");
    if (pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count())
        return EmbeddingResult{SearchOutcome::proven_absent, std::nullopt, 0};
    auto r = detail::EmbeddingSearch(pattern, host, budget).run();
    if (r.witness && !is_valid_embedding(pattern, host, *r.witness))
        throw std::logic_error("contains_copy produced an invalid witness");
    return r;
}

} // namespace stepup

#endif // STEPUP_EMBEDDING_HPP
