#ifndef STEPUP_BINARY_STRUCTURE_HPP
#define STEPUP_BINARY_STRUCTURE_HPP

#include <stepup/int_set.hpp>

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepup {

/// Position of the most significant binary digit where a and b differ.
inline int delta(std::uint64_t a, std::uint64_t b) {
    if (a == b) throw std::invalid_argument("delta of equal integers is undefined");
    return std::bit_width(a ^ b) - 1;
}

/// Top splitting level: largest l such that floor(s / 2^l) takes >= 2 values on S.
inline int top_splitting_level(const IntSet& s) {
    if (s.size() < 2) throw std::invalid_argument("top splitting level needs at least two elements");
    // All elements share the digits above the highest digit where min and max differ.
    return delta(s.min(), s.max());
}

/// Left subset (digit l(S) equal to 0) and right subset (digit equal to 1).
inline std::pair<IntSet, IntSet> split(const IntSet& s) {
    const int level = top_splitting_level(s);
    const std::uint64_t bit = std::uint64_t{1} << level;
    std::vector<std::uint64_t> left, right;
    for (auto x : s) (x & bit ? right : left).push_back(x);
    return {IntSet(std::move(left)), IntSet(std::move(right))};
}

/// delta_i = delta(s_i, s_{i+1}) over consecutive elements.
inline std::vector<int> delta_sequence(const IntSet& s) {
    if (s.size() < 2) throw std::invalid_argument("delta sequence needs at least two elements");
    std::vector<int> out;
    out.reserve(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) out.push_back(delta(s[i], s[i + 1]));
    return out;
}

enum class Monotonicity { increasing, decreasing, both, neither };

inline const char* to_string(Monotonicity m) {
    switch (m) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::decreasing: return "decreasing";
    case Monotonicity::both: return "both";
    case Monotonicity::neither: return "neither";
    }
    return "?";
}

/**
 * Binary structure b(S): the weighted rooted ordered binary tree obtained by
 * splitting S at its top splitting level until every part is a singleton.
 *
 * Nodes live in a flat arena; node 0 is the root. Leaves carry their element,
 * internal nodes carry the level at which they split.
 */
class BinaryStructureTree {
public:
    static constexpr int npos = -1;

    struct Node {
        std::size_t weight = 1;
        int level = npos;          // npos for leaves
        std::uint64_t element = 0; // meaningful for leaves only
        int left = npos;
        int right = npos;

        bool is_leaf() const { return left == npos; }
    };

    explicit BinaryStructureTree(const IntSet& s) {
        if (s.empty()) throw std::invalid_argument("binary structure of the empty set is undefined");
        nodes_.reserve(2 * s.size() - 1);
        build(s.values());
    }

    const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    const Node& root() const { return nodes_.front(); }
    int root_index() const { return 0; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t leaf_count() const { return root().weight; }
    const std::vector<Node>& nodes() const { return nodes_; }

    /// Levels of internal nodes in in-order (left to right), i.e. the delta sequence.
    std::vector<int> internal_levels_in_order() const {
        std::vector<int> out;
        in_order(0, [&](const Node& n) {
            if (!n.is_leaf()) out.push_back(n.level);
        });
        return out;
    }

    std::vector<std::uint64_t> leaves_in_order() const {
        std::vector<std::uint64_t> out;
        in_order(0, [&](const Node& n) {
            if (n.is_leaf()) out.push_back(n.element);
        });
        return out;
    }

    /// Shape as a parenthesized literal with weight-1 leaves, e.g. "((1,(1,1)),(1,1))".
    std::string shape() const { return shape_of(0); }

    /// Indented text rendering, one node per line.
    std::string to_text() const {
        std::ostringstream os;
        text_of(0, 0, os);
        return os.str();
    }

    /// Graphviz rendering; internal nodes annotated with their splitting level.
    std::string to_dot() const {
        std::ostringstream os;
        os << "digraph binary_structure {\n  node [shape=circle];\n";
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            os << "  n" << i << " [label=\"" << n.weight << '"';
            if (n.is_leaf()) os << ", xlabel=\"" << n.element << '"';
            else os << ", xlabel=\"l=" << n.level << '"';
            os << "];\n";
        }
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            if (n.is_leaf()) continue;
            os << "  n" << i << " -> n" << n.left << ";\n";
            os << "  n" << i << " -> n" << n.right << ";\n";
        }
        os << "}\n";
        return os.str();
    }

private:
    int build(std::span<const std::uint64_t> elems) {
        const int idx = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[idx].weight = elems.size();
        if (elems.size() == 1) {
            nodes_[idx].element = elems.front();
            return idx;
        }
        const int level = delta(elems.front(), elems.back());
        const std::uint64_t bit = std::uint64_t{1} << level;
        // Sorted and sharing all digits above `level`, so the right subset is a suffix.
        std::size_t cut = 0;
        while (!(elems[cut] & bit)) ++cut;
        nodes_[idx].level = level;
        const int l = build(elems.subspan(0, cut));
        const int r = build(elems.subspan(cut));
        nodes_[idx].left = l;
        nodes_[idx].right = r;
        return idx;
    }

    template <class F>
    void in_order(int i, F&& f) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        if (n.is_leaf()) {
            f(n);
            return;
        }
        in_order(n.left, f);
        f(n);
        in_order(n.right, f);
    }

    std::string shape_of(int i) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        if (n.is_leaf()) return "1";
        return "(" + shape_of(n.left) + "," + shape_of(n.right) + ")";
    }

    void text_of(int i, int depth, std::ostringstream& os) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        os << std::string(static_cast<std::size_t>(2 * depth), ' ');
        if (n.is_leaf()) {
            os << "leaf w=1 [" << n.element << "]\n";
            return;
        }
        os << "node w=" << n.weight << " l=" << n.level << '\n';
        text_of(n.left, depth + 1, os);
        text_of(n.right, depth + 1, os);
    }

    std::vector<Node> nodes_;
};

inline BinaryStructureTree binary_structure(const IntSet& s) { return BinaryStructureTree(s); }

/// Increasing: every internal right child is a leaf. Decreasing: every internal left child is a leaf.
inline Monotonicity classify_monotone(const BinaryStructureTree& b) {
    bool inc = true, dec = true;
    for (const auto& n : b.nodes()) {
        if (n.is_leaf()) continue;
        if (!b.node(n.right).is_leaf()) inc = false;
        if (!b.node(n.left).is_leaf()) dec = false;
    }
    if (inc && dec) return Monotonicity::both;
    if (inc) return Monotonicity::increasing;
    if (dec) return Monotonicity::decreasing;
    return Monotonicity::neither;
}

inline bool is_increasing(const BinaryStructureTree& b) {
    auto m = classify_monotone(b);
    return m == Monotonicity::increasing || m == Monotonicity::both;
}

inline bool is_decreasing(const BinaryStructureTree& b) {
    auto m = classify_monotone(b);
    return m == Monotonicity::decreasing || m == Monotonicity::both;
}

/**
 * L(S) for a set with monotone binary structure: follow the spine (towards the
 * left for increasing, right for decreasing) and collect splitting levels.
 */
inline IntSet level_set(const IntSet& s) {
    if (s.empty()) throw std::invalid_argument("level set of the empty set is undefined");
    const BinaryStructureTree b(s);
    const auto kind = classify_monotone(b);
    if (kind == Monotonicity::neither)
        throw std::invalid_argument("level set requires a monotone binary structure: " + s.to_string());
    const bool go_left = kind != Monotonicity::decreasing;
    std::vector<std::uint64_t> levels;
    int i = b.root_index();
    while (!b.node(i).is_leaf()) {
        levels.push_back(static_cast<std::uint64_t>(b.node(i).level));
        i = go_left ? b.node(i).left : b.node(i).right;
    }
    return IntSet(std::move(levels));
}

} // namespace stepup

#endif // STEPUP_BINARY_STRUCTURE_HPP
