#ifndef STEPUP_STRUCTURE_TYPES_HPP
#define STEPUP_STRUCTURE_TYPES_HPP

#include <stepup/binary_structure.hpp>
#include <stepup/int_set.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stepup {

/**
 * A type of binary structure: an ordered binary tree whose leaves carry
 * positive weights and whose internal weights are the sums of their children.
 *
 * Stored as a flat arena with the root at index 0. Internal weights are always
 * derived, never supplied, so the summing invariant holds by construction.
 */
class TypeTree {
public:
    static constexpr int npos = -1;

    struct Node {
        std::size_t weight = 1;
        int left = npos;
        int right = npos;
        bool is_leaf() const { return left == npos; }
    };

    static TypeTree leaf(std::size_t weight) {
        if (weight == 0) throw std::invalid_argument("type leaf weight must be positive");
        TypeTree t;
        t.nodes_.push_back(Node{weight, npos, npos});
        return t;
    }

    static TypeTree join(const TypeTree& left, const TypeTree& right) {
        TypeTree t;
        t.nodes_.push_back(Node{left.size() + right.size(), npos, npos});
        t.nodes_[0].left = t.append(left, 0);
        t.nodes_[0].right = t.append(right, 0);
        return t;
    }

    std::size_t size() const { return nodes_.front().weight; }
    const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    const Node& root() const { return nodes_.front(); }
    bool is_leaf() const { return root().is_leaf(); }
    std::size_t node_count() const { return nodes_.size(); }

    TypeTree left() const { return subtree(root().left); }
    TypeTree right() const { return subtree(root().right); }

    TypeTree subtree(int i) const {
        if (i == npos) throw std::logic_error("subtree of a leaf");
        TypeTree t;
        t.append(*this, i);
        return t;
    }

    /// Depth: number of edges on the longest root-to-leaf path.
    int depth() const { return depth_of(0); }

    std::string to_string() const { return serialize(0); }

    bool operator==(const TypeTree& o) const { return to_string() == o.to_string(); }

private:
    int append(const TypeTree& src, int i) {
        const Node& n = src.nodes_[static_cast<std::size_t>(i)];
        const int idx = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{n.weight, npos, npos});
        if (!n.is_leaf()) {
            const int l = append(src, n.left);
            const int r = append(src, n.right);
            nodes_[static_cast<std::size_t>(idx)].left = l;
            nodes_[static_cast<std::size_t>(idx)].right = r;
        }
        return idx;
    }

    int depth_of(int i) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        if (n.is_leaf()) return 0;
        return 1 + std::max(depth_of(n.left), depth_of(n.right));
    }

    std::string serialize(int i) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        if (n.is_leaf()) return std::to_string(n.weight);
        return "(" + serialize(n.left) + "," + serialize(n.right) + ")";
    }

    std::vector<Node> nodes_;
};

namespace detail {

class TypeParser {
public:
    explicit TypeParser(std::string_view text) : text_(text) {}

    TypeTree parse_all() {
        TypeTree t = parse();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return t;
    }

    TypeTree parse() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] == '(') {
            ++pos_;
            TypeTree l = parse();
            expect(',');
            TypeTree r = parse();
            expect(')');
            return TypeTree::join(l, r);
        }
        if (!std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected integer or '('");
        std::size_t w = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            w = w * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            if (w > (std::size_t{1} << 40)) fail("leaf weight too large");
            ++pos_;
        }
        if (w == 0) fail("leaf weight must be positive");
        return TypeTree::leaf(w);
    }

    /// Comma-separated list of types at the top level, e.g. "(2,2),(1,(2,1))".
    std::vector<TypeTree> parse_list() {
        std::vector<TypeTree> out;
        skip_ws();
        if (pos_ == text_.size()) return out;
        out.push_back(parse());
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            out.push_back(parse());
            skip_ws();
        }
        if (pos_ != text_.size()) fail("trailing characters");
        return out;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("malformed type literal '" + std::string(text_) + "' at " +
                                    std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Grammar: TYPE := INT | "(" TYPE "," TYPE ")". Internal weights are computed.
inline TypeTree parse_type(std::string_view text) { return detail::TypeParser(text).parse_all(); }

inline std::vector<TypeTree> parse_type_list(std::string_view text) {
    return detail::TypeParser(text).parse_list();
}

inline std::string serialize_type(const TypeTree& t) { return t.to_string(); }

/// T_{a,b}: root with two leaf children of weights a and b.
inline TypeTree make_Tab(std::size_t a, std::size_t b) {
    return TypeTree::join(TypeTree::leaf(a), TypeTree::leaf(b));
}

enum class Direction { increasing, decreasing };

/**
 * All-weight-1 caterpillar with m leaves. Increasing: every right child is a
 * single leaf, so a set is of this type iff its binary structure is increasing.
 */
inline TypeTree make_caterpillar(Direction dir, std::size_t m) {
    if (m == 0) throw std::invalid_argument("caterpillar needs at least one leaf");
    TypeTree t = TypeTree::leaf(1);
    for (std::size_t i = 1; i < m; ++i) {
        t = dir == Direction::increasing ? TypeTree::join(t, TypeTree::leaf(1))
                                         : TypeTree::join(TypeTree::leaf(1), t);
    }
    return t;
}

/// The shape of b(S) as an all-weight-1 type.
inline TypeTree shape_type(const BinaryStructureTree& b) { return parse_type(b.shape()); }

namespace detail {

inline bool matches(const BinaryStructureTree& b, int bi, const TypeTree& t, int ti) {
    const auto& tn = t.node(ti);
    const auto& bn = b.node(bi);
    if (tn.weight != bn.weight) return false;
    if (tn.is_leaf()) return true;
    if (bn.is_leaf()) return false;
    return matches(b, bn.left, t, tn.left) && matches(b, bn.right, t, tn.right);
}

} // namespace detail

/// T is a truncation of b(S) at an antichain, with matching weights.
inline bool is_of_type(const BinaryStructureTree& b, const TypeTree& t) {
    if (b.leaf_count() != t.size())
        throw std::invalid_argument("is_of_type: |S| = " + std::to_string(b.leaf_count()) +
                                    " but size(T) = " + std::to_string(t.size()));
    return detail::matches(b, b.root_index(), t, 0);
}

inline bool is_of_type(const IntSet& s, const TypeTree& t) {
    if (s.size() != t.size())
        throw std::invalid_argument("is_of_type: |S| = " + std::to_string(s.size()) +
                                    " but size(T) = " + std::to_string(t.size()));
    return is_of_type(BinaryStructureTree(s), t);
}

namespace detail {

// Spine towards `left` (or right); the off-spine children must be weight-1 leaves
// and the spine ends at a leaf of arbitrary weight.
inline bool is_caterpillar_truncation(const TypeTree& t, bool spine_left) {
    int i = 0;
    while (!t.node(i).is_leaf()) {
        const auto& n = t.node(i);
        const int off = spine_left ? n.right : n.left;
        if (!t.node(off).is_leaf() || t.node(off).weight != 1) return false;
        i = spine_left ? n.left : n.right;
    }
    return true;
}

} // namespace detail

/**
 * Whether some set with monotone binary structure is of type T. Truncations of
 * an increasing caterpillar are exactly the left spines whose right children
 * are weight-1 leaves (the deepest leaf may be heavy); mirror for decreasing.
 */
inline bool is_monotone_type(const TypeTree& t) {
    return detail::is_caterpillar_truncation(t, true) || detail::is_caterpillar_truncation(t, false);
}

/**
 * Canonical form for containment questions: every weight-2 subtree is (1,1)
 * in any binary structure, so (1,1) and 2 are interchangeable. Rewrites each
 * (1,1) into the leaf 2.
 */
inline TypeTree canonical_type(const TypeTree& t) {
    if (t.is_leaf()) return t;
    if (t.size() == 2) return TypeTree::leaf(2);
    return TypeTree::join(canonical_type(t.left()), canonical_type(t.right()));
}

/// Every type of the given size, in a fixed order. `canonical` drops (1,1) in favour of 2.
inline std::vector<TypeTree> enumerate_types(std::size_t size, bool canonical = false) {
    std::vector<TypeTree> out;
    if (size == 0) return out;
    out.push_back(TypeTree::leaf(size));
    if (canonical && size <= 2) return out;
    for (std::size_t a = 1; a < size; ++a) {
        const auto ls = enumerate_types(a, canonical);
        const auto rs = enumerate_types(size - a, canonical);
        for (const auto& l : ls)
            for (const auto& r : rs) out.push_back(TypeTree::join(l, r));
    }
    return out;
}

} // namespace stepup

#endif // STEPUP_STRUCTURE_TYPES_HPP
