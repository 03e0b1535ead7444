#ifndef STEPUP_INDEPENDENCE_HPP
#define STEPUP_INDEPENDENCE_HPP

#include <stepup/hypergraph.hpp>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stepup {

struct IndependenceResult {
    std::size_t size = 0;
    std::vector<Vertex> witness; // sorted
};

namespace detail {

/**
 * Branch and bound over bitmasks.
 *
 * State: chosen set I and candidate set P (vertices that can still be added
 * without completing an edge). Branch on the candidate of highest residual
 * degree: include it (drop every candidate that would now complete an edge)
 * or exclude it. Upper bound: |I| + |P| minus one per residual edge in a
 * greedy packing of pairwise disjoint residual edges inside P, since each such
 * residual edge must miss at least one of its vertices.
 */
class IndependenceSolver {
public:
    explicit IndependenceSolver(const Hypergraph& h) : n_(h.vertex_count()) {
        if (!h.fits_mask()) throw std::invalid_argument("independence_number supports at most 64 vertices");
        masks_ = h.edge_masks();
        incident_.resize(n_);
        for (std::size_t i = 0; i < masks_.size(); ++i) {
            for (auto m = masks_[i]; m; m &= m - 1) incident_[static_cast<std::size_t>(std::countr_zero(m))].push_back(i);
        }
    }

    IndependenceResult solve() {
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
        std::uint64_t cand = all;
        // Edges of size 1 forbid their vertex outright.
        for (auto m : masks_)
            if (std::popcount(m) == 1) cand &= ~m;
        best_ = 0;
        best_set_ = 0;
        search(0, cand);
        IndependenceResult r;
        r.size = static_cast<std::size_t>(std::popcount(best_set_));
        for (auto m = best_set_; m; m &= m - 1) r.witness.push_back(static_cast<Vertex>(std::countr_zero(m)));
        return r;
    }

private:
    int packing_bound(std::uint64_t chosen, std::uint64_t cand) const {
        std::uint64_t covered = 0;
        int packed = 0;
        for (auto m : masks_) {
            const std::uint64_t rest = m & ~chosen;
            if ((rest & ~cand) != 0) continue; // needs an excluded vertex: harmless
            if (rest & covered) continue;
            covered |= rest;
            ++packed;
        }
        return std::popcount(cand) - packed;
    }

    void search(std::uint64_t chosen, std::uint64_t cand) {
        const int have = std::popcount(chosen);
        if (have > best_) {
            best_ = have;
            best_set_ = chosen;
        }
        if (cand == 0) return;
        if (have + std::popcount(cand) <= best_) return;
        if (have + packing_bound(chosen, cand) <= best_) return;

        // Highest residual degree: edges still avoidable only through candidates.
        int pick = -1;
        std::size_t pick_deg = 0;
        for (auto m = cand; m; m &= m - 1) {
            const int v = std::countr_zero(m);
            std::size_t deg = 0;
            for (auto ei : incident_[static_cast<std::size_t>(v)]) {
                if ((masks_[ei] & ~chosen & ~cand) == 0) ++deg;
            }
            if (pick < 0 || deg > pick_deg) {
                pick = v;
                pick_deg = deg;
            }
        }
        const std::uint64_t bit = std::uint64_t{1} << pick;

        // Include.
        const std::uint64_t chosen_in = chosen | bit;
        std::uint64_t cand_in = cand & ~bit;
        for (auto ei : incident_[static_cast<std::size_t>(pick)]) {
            const std::uint64_t rest = masks_[ei] & ~chosen_in;
            if (std::popcount(rest) == 1) cand_in &= ~rest;
        }
        search(chosen_in, cand_in);

        // Exclude.
        search(chosen, cand & ~bit);
    }

    std::size_t n_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::vector<std::size_t>> incident_;
    int best_ = 0;
    std::uint64_t best_set_ = 0;
};

} // namespace detail

/// Exact independence number alpha(H) with a maximizing set. Requires n <= 64.
inline IndependenceResult independence_number(const Hypergraph& h) {
    return detail::IndependenceSolver(h).solve();
}

/// True iff no edge of H lies inside `set`.
inline bool is_independent(const Hypergraph& h, const std::vector<Vertex>& set) {
    std::vector<Vertex> s = set;
    std::sort(s.begin(), s.end());
    for (const auto& e : h.edges())
        if (std::includes(s.begin(), s.end(), e.begin(), e.end())) return false;
    return true;
}

} // namespace stepup

#endif // STEPUP_INDEPENDENCE_HPP
