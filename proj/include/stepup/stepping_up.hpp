#ifndef STEPUP_STEPPING_UP_HPP
#define STEPUP_STEPPING_UP_HPP

#include <stepup/binary_structure.hpp>
#include <stepup/hypergraph.hpp>
#include <stepup/structure_types.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepup {

namespace detail {

inline Edge to_edge(const IntSet& s) {
    Edge e;
    for (auto x : s) e.push_back(static_cast<Vertex>(x));
    return e;
}

inline IntSet to_int_set(const Edge& e) {
    return IntSet(std::vector<std::uint64_t>(e.begin(), e.end()));
}

// Levels of the spine of a monotone tree, read directly off the tree.
inline Edge spine_levels(const BinaryStructureTree& b, bool go_left) {
    Edge out;
    int i = b.root_index();
    while (!b.node(i).is_leaf()) {
        out.push_back(static_cast<Vertex>(b.node(i).level));
        i = go_left ? b.node(i).left : b.node(i).right;
    }
    return out;
}

} // namespace detail

/// b(e) increasing and L(e) is an edge of g1.
inline bool left_step_edge(const IntSet& e, const Hypergraph& g1) {
    if (e.size() < 2) return false;
    const BinaryStructureTree b(e);
    if (!is_increasing(b)) return false;
    const Edge levels = detail::spine_levels(b, true);
    if (levels.size() != g1.uniformity()) return false;
    for (auto l : levels)
        if (l >= g1.vertex_count()) return false;
    return g1.has_edge(levels);
}

/// b(e) decreasing and {N-1-l : l in L(e)} is an edge of g2.
inline bool right_step_edge(const IntSet& e, const Hypergraph& g2, std::size_t N) {
    if (e.size() < 2) return false;
    const BinaryStructureTree b(e);
    if (!is_decreasing(b)) return false;
    Edge levels = detail::spine_levels(b, false);
    if (levels.size() != g2.uniformity()) return false;
    for (auto& l : levels) {
        if (l >= N) return false;
        l = static_cast<Vertex>(N - 1 - l);
    }
    return g2.has_edge(levels);
}

/**
 * Stepping up of (G1, G2, T): a k-graph on {0..2^N-1} whose edges are the
 * left stepping-up of G1, the right stepping-up of G2, and every k-set of some
 * type in T. Membership is an oracle; materialization enumerates all k-sets.
 */
class SteppedUpGraph {
public:
    SteppedUpGraph(Hypergraph g1, Hypergraph g2, std::vector<TypeTree> family, std::size_t N)
        : g1_(std::move(g1)), g2_(std::move(g2)), family_(std::move(family)), N_(N) {
        if (g1_.uniformity() != g2_.uniformity())
            throw std::invalid_argument("stepping up: G1 and G2 must have the same uniformity");
        k_ = g1_.uniformity() + 1;
        if (k_ < 3) throw std::invalid_argument("stepping up needs output uniformity k >= 3");
        if (g1_.vertex_count() != N_ || g2_.vertex_count() != N_)
            throw std::invalid_argument("stepping up: G1 and G2 must live on N vertices");
        if (N_ >= 32) throw std::invalid_argument("stepping up: N too large");
        for (const auto& t : family_)
            if (t.size() != k_)
                throw std::invalid_argument("stepping up: type " + t.to_string() + " has size " +
                                            std::to_string(t.size()) + ", expected " + std::to_string(k_));
    }

    std::size_t N() const { return N_; }
    std::size_t uniformity() const { return k_; }
    std::size_t vertex_count() const { return std::size_t{1} << N_; }
    const Hypergraph& g1() const { return g1_; }
    const Hypergraph& g2() const { return g2_; }
    const std::vector<TypeTree>& family() const { return family_; }

    enum class Part { none, left, right, typed };

    /// Which part of the union an edge belongs to (first match in left, right, typed order).
    Part classify(const IntSet& e) const {
        if (e.size() != k_) return Part::none;
        if (!e.empty() && e.max() >= vertex_count()) return Part::none;
        if (left_step_edge(e, g1_)) return Part::left;
        if (right_step_edge(e, g2_, N_)) return Part::right;
        const BinaryStructureTree b(e);
        for (const auto& t : family_)
            if (is_of_type(b, t)) return Part::typed;
        return Part::none;
    }

    bool contains(const IntSet& e) const { return classify(e) != Part::none; }
    bool contains(const Edge& e) const { return contains(detail::to_int_set(e)); }

    /// Number of candidate k-sets a materialization has to scan.
    double candidate_count() const {
        double c = 1;
        const double n = static_cast<double>(vertex_count());
        for (std::size_t i = 0; i < k_; ++i) c = c * (n - static_cast<double>(i)) / static_cast<double>(i + 1);
        return c;
    }

    /**
     * Enumerates every k-subset of {0..2^N-1}; refuses when that exceeds
     * `max_candidates`. Also asserts that the three parts of the union are
     * pairwise disjoint where theory says they must be.
     */
    Hypergraph materialize(double max_candidates = 1e7) const {
        if (candidate_count() > max_candidates)
            throw std::length_error("stepping up: " + std::to_string(candidate_count()) +
                                    " candidates exceed the materialization budget");
        bool all_non_monotone = true;
        for (const auto& t : family_)
            if (is_monotone_type(t)) all_non_monotone = false;

        Hypergraph out(k_, vertex_count());
        for_each_k_subset(vertex_count(), k_, [&](const Edge& e) {
            const IntSet s = detail::to_int_set(e);
            const bool l = left_step_edge(s, g1_);
            const bool r = right_step_edge(s, g2_, N_);
            bool t = false;
            const BinaryStructureTree b(s);
            for (const auto& ty : family_)
                if (is_of_type(b, ty)) t = true;
            if (l && r) throw std::logic_error("left and right stepping-ups overlap at k >= 3");
            if (all_non_monotone && t && (l || r))
                throw std::logic_error("typed part overlaps a monotone part for a non-monotone family");
            if (l || r || t) out.add_edge(e);
        });
        return out;
    }

private:
    Hypergraph g1_, g2_;
    std::vector<TypeTree> family_;
    std::size_t N_;
    std::size_t k_ = 0;
};

inline SteppedUpGraph step_up(const Hypergraph& g1, const Hypergraph& g2, std::vector<TypeTree> family,
                              std::optional<std::size_t> N = std::nullopt) {
    return SteppedUpGraph(g1, g2, std::move(family), N.value_or(g1.vertex_count()));
}

/// step_up(G, G, {T_{2,k-2}, T_{k-2,2}}) on N = |V(G)|.
inline SteppedUpGraph prop_step_up(const Hypergraph& g, std::size_t k) {
    if (k < 4) throw std::invalid_argument("prop_step_up needs k >= 4 (every type of size <= 3 is monotone)");
    if (g.uniformity() != k - 1) throw std::invalid_argument("prop_step_up: G must have uniformity k-1");
    std::vector<TypeTree> family{make_Tab(2, k - 2)};
    if (k != 4) family.push_back(make_Tab(k - 2, 2));
    return SteppedUpGraph(g, g, std::move(family), g.vertex_count());
}

} // namespace stepup

#endif // STEPUP_STEPPING_UP_HPP
