#ifndef STEPUP_AVOIDANCE_HPP
#define STEPUP_AVOIDANCE_HPP

#include <stepup/binary_structure.hpp>
#include <stepup/int_set.hpp>
#include <stepup/structure_types.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace stepup {

/// f(n1, n2, family): largest set avoiding increasing n1-sets, decreasing n2-sets and every type in family.
struct AvoidanceQuery {
    std::size_t n1 = 2;
    std::size_t n2 = 2;
    std::vector<TypeTree> family;
};

enum class AvoidanceStatus { computed, budget_exhausted };

struct AvoidanceResult {
    AvoidanceStatus status = AvoidanceStatus::computed;
    std::size_t value = 0;
    IntSet witness;            // |witness| == value
    std::size_t universe_bits = 0; // witness lies in {0..2^bits-1}
    std::size_t states = 0;
};

namespace detail {

struct BudgetExceeded {};

/**
 * Memoized recursion on (n1, n2, canonical family).
 *
 * A set S with |S| >= 2 avoids T = (T_L, T_R) iff both halves avoid T and not
 * (S_Left contains T_L and S_Right contains T_R). So every internal type picks
 * a blocking side, which adds T_L to the left family or T_R to the right one.
 * The monotone constraints are the caterpillars (C^inc_{n1-1}, 1) and
 * (1, C^dec_{n2-1}); their only viable blocking sides send n1-1 to the left
 * half and n2-1 to the right half. Leaf types of weight w cap the size at w-1.
 */
class AvoidanceDp {
public:
    explicit AvoidanceDp(std::size_t max_states) : max_states_(max_states) {}

    std::size_t solve(std::size_t n1, std::size_t n2, const std::vector<TypeTree>& family) {
        return value(n1, n2, normalize(family));
    }

    /// Reconstructs a witness set of maximum size from the memo trace.
    std::pair<std::vector<std::uint64_t>, std::size_t> witness(std::size_t n1, std::size_t n2,
                                                               const std::vector<TypeTree>& family) {
        return realize(n1, n2, normalize(family));
    }

    std::size_t states() const { return memo_.size(); }

private:
    using Family = std::vector<std::string>; // sorted canonical literals

    struct Entry {
        std::size_t value = 0;
        bool split = false;
        Family left, right;
    };

    static Family normalize(const std::vector<TypeTree>& family) {
        std::set<std::string> s;
        for (const auto& t : family) s.insert(canonical_type(t).to_string());
        return Family(s.begin(), s.end());
    }

    static std::string key_of(std::size_t n1, std::size_t n2, const Family& f) {
        std::string k = std::to_string(n1) + "|" + std::to_string(n2);
        for (const auto& t : f) k += "|" + t;
        return k;
    }

    std::size_t value(std::size_t n1, std::size_t n2, const Family& fam) { return entry(n1, n2, fam).value; }

    const Entry& entry(std::size_t n1, std::size_t n2, const Family& fam) {
        const std::string key = key_of(n1, n2, fam);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (memo_.size() >= max_states_) throw BudgetExceeded{};

        constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
        std::size_t cap = inf;
        if (n1 <= 2) cap = std::min(cap, n1 - 1);
        if (n2 <= 2) cap = std::min(cap, n2 - 1);
        std::vector<TypeTree> internal;
        for (const auto& lit : fam) {
            TypeTree t = parse_type(lit);
            if (t.is_leaf()) cap = std::min(cap, t.size() - 1);
            else internal.push_back(std::move(t));
        }

        Entry e;
        if (cap <= 1) {
            e.value = cap;
        } else {
            std::size_t best = 1;
            std::set<std::pair<Family, Family>> tried;
            const std::size_t m = internal.size();
            if (m > 20) throw BudgetExceeded{};
            for (std::uint32_t choice = 0; choice < (1u << m); ++choice) {
                std::set<std::string> lf(fam.begin(), fam.end()), rf(fam.begin(), fam.end());
                for (std::size_t i = 0; i < m; ++i) {
                    if (choice >> i & 1) rf.insert(canonical_type(internal[i].right()).to_string());
                    else lf.insert(canonical_type(internal[i].left()).to_string());
                }
                Family L(lf.begin(), lf.end()), R(rf.begin(), rf.end());
                if (!tried.emplace(L, R).second) continue;
                const std::size_t a = value(n1 - 1, n2, L);
                if (a == 0) continue;
                const std::size_t b = value(n1, n2 - 1, R);
                if (b == 0) continue;
                if (a + b > best) {
                    best = a + b;
                    e.split = true;
                    e.left = std::move(L);
                    e.right = std::move(R);
                }
            }
            e.value = std::min(best, cap);
        }
        return memo_.emplace(key, std::move(e)).first->second;
    }

    // Returns (elements, bits) with elements inside {0..2^bits-1} and b(elements) equal to the traced shape.
    std::pair<std::vector<std::uint64_t>, std::size_t> realize(std::size_t n1, std::size_t n2, const Family& fam) {
        const Entry en = entry(n1, n2, fam);
        if (en.value == 0) return {{}, 0};
        if (!en.split || en.value == 1) return {{0}, 0};
        auto [ls, lbits] = realize(n1 - 1, n2, en.left);
        auto [rs, rbits] = realize(n1, n2 - 1, en.right);
        const std::size_t top = std::max(lbits, rbits);
        std::vector<std::uint64_t> out = ls;
        for (auto x : rs) out.push_back((std::uint64_t{1} << top) | x);
        // Leaf-type caps: any subset of an avoiding set still avoids.
        out.resize(en.value);
        return {out, top + 1};
    }

    std::size_t max_states_;
    std::unordered_map<std::string, Entry> memo_;
};

} // namespace detail

/**
 * Exact f(n1, n2, family) by dynamic programming over families of forbidden
 * types, with a witness set realizing the maximum.
 */
inline AvoidanceResult f_exact(const AvoidanceQuery& q, std::size_t max_states = 2'000'000) {
    if (q.n1 < 1 || q.n2 < 1) throw std::invalid_argument("f: n1 and n2 must be positive");
    detail::AvoidanceDp dp(max_states);
    AvoidanceResult r;
    try {
        r.value = dp.solve(q.n1, q.n2, q.family);
        auto [elems, bits] = dp.witness(q.n1, q.n2, q.family);
        r.witness = IntSet(std::move(elems));
        r.universe_bits = bits;
    } catch (const detail::BudgetExceeded&) {
        r.status = AvoidanceStatus::budget_exhausted;
        r.value = 0;
    }
    r.states = dp.states();
    return r;
}

/// True iff `s` contains a forbidden subset for the query (direct subset check).
inline bool violates(const IntSet& s, const AvoidanceQuery& q) {
    const std::size_t n = s.size();
    if (n > 62) throw std::invalid_argument("violates: set too large for exhaustive subset check");
    std::set<std::size_t> sizes{q.n1, q.n2};
    for (const auto& t : q.family) sizes.insert(t.size());
    for (std::size_t w : sizes) {
        if (w > n || w == 0) continue;
        // Iterate w-subsets of indices via Gosper's hack.
        std::uint64_t sub = (std::uint64_t{1} << w) - 1;
        const std::uint64_t limit = std::uint64_t{1} << n;
        while (sub < limit) {
            std::vector<std::uint64_t> elems;
            for (auto m = sub; m; m &= m - 1) elems.push_back(s[static_cast<std::size_t>(std::countr_zero(m))]);
            const IntSet x(std::move(elems));
            const BinaryStructureTree b(x);
            if (w == q.n1 && is_increasing(b)) return true;
            if (w == q.n2 && is_decreasing(b)) return true;
            for (const auto& t : q.family)
                if (t.size() == w && is_of_type(b, t)) return true;
            const std::uint64_t c = sub & -sub;
            const std::uint64_t r = sub + c;
            sub = (((r ^ sub) >> 2) / c) | r;
        }
    }
    return false;
}

namespace detail {

/// Depth-first search over subsets of {0..2^m-1}, checking each new element against all forbidden subsets it completes.
class AvoidanceBruteForce {
public:
    AvoidanceBruteForce(const AvoidanceQuery& q, std::size_t m) : q_(q), universe_(std::size_t{1} << m) {
        if (m > 6) throw std::invalid_argument("f_bruteforce: universe bits must be <= 6");
        sizes_.insert(q.n1);
        sizes_.insert(q.n2);
        for (const auto& t : q.family) sizes_.insert(t.size());
    }

    std::size_t run() {
        chosen_.clear();
        best_ = 0;
        dfs(0);
        return best_;
    }

private:
    bool forbidden(std::uint64_t mask) {
        if (auto it = cache_.find(mask); it != cache_.end()) return it->second;
        const IntSet x = IntSet::from_mask(mask);
        const BinaryStructureTree b(x);
        const std::size_t w = x.size();
        bool bad = (w == q_.n1 && is_increasing(b)) || (w == q_.n2 && is_decreasing(b));
        for (const auto& t : q_.family)
            if (!bad && t.size() == w && is_of_type(b, t)) bad = true;
        cache_.emplace(mask, bad);
        return bad;
    }

    // Does chosen_ + {x} contain a forbidden subset through x?
    bool completes(std::size_t x) {
        const std::uint64_t xbit = std::uint64_t{1} << x;
        for (std::size_t w : sizes_) {
            if (w == 0 || w - 1 > chosen_.size()) continue;
            if (any_subset(w - 1, 0, xbit)) return true;
        }
        return false;
    }

    bool any_subset(std::size_t need, std::size_t from, std::uint64_t acc) {
        if (need == 0) return forbidden(acc);
        for (std::size_t i = from; i + need <= chosen_.size(); ++i)
            if (any_subset(need - 1, i + 1, acc | (std::uint64_t{1} << chosen_[i]))) return true;
        return false;
    }

    void dfs(std::size_t next) {
        best_ = std::max(best_, chosen_.size());
        if (chosen_.size() + (universe_ - next) <= best_) return;
        for (std::size_t x = next; x < universe_; ++x) {
            if (chosen_.size() + (universe_ - x) <= best_) return;
            if (completes(x)) continue;
            chosen_.push_back(x);
            dfs(x + 1);
            chosen_.pop_back();
        }
    }

    const AvoidanceQuery& q_;
    std::size_t universe_;
    std::set<std::size_t> sizes_;
    std::vector<std::size_t> chosen_;
    std::size_t best_ = 0;
    std::unordered_map<std::uint64_t, bool> cache_;
};

} // namespace detail

/// Maximum |S| over S inside {0..2^m-1} avoiding the query, by direct subset checks.
inline std::size_t f_bruteforce(const AvoidanceQuery& q, std::size_t m) {
    if (q.n1 < 1 || q.n2 < 1) throw std::invalid_argument("f: n1 and n2 must be positive");
    return detail::AvoidanceBruteForce(q, m).run();
}

/**
 * Upper bound (a_min-1)(n2-2) + (b_min-1)(n1-2) + 2k for families holding some
 * T_{a,b} with a+b = k; a_min, b_min range over those members.
 */
inline std::size_t depth1_bound(const AvoidanceQuery& q) {
    if (q.n1 < 2 || q.n2 < 2) throw std::invalid_argument("depth1_bound needs n1, n2 >= 2");
    std::optional<std::size_t> a_min, b_min, k;
    for (const auto& raw : q.family) {
        const TypeTree t = canonical_type(raw);
        if (t.is_leaf()) continue;
        const TypeTree l = t.left(), r = t.right();
        if (!l.is_leaf() || !r.is_leaf()) continue;
        a_min = std::min(a_min.value_or(l.size()), l.size());
        b_min = std::min(b_min.value_or(r.size()), r.size());
        k = t.size();
    }
    if (!k) throw std::invalid_argument("depth1_bound: family has no member of shape T_{a,b}");
    return (*a_min - 1) * (q.n2 - 2) + (*b_min - 1) * (q.n1 - 2) + 2 * *k;
}

/// g(n, T) = max over n1 + n2 = n (n1, n2 >= 1) of f(n1, n2, {T}).
inline std::size_t g_max(std::size_t n, const TypeTree& t) {
    if (n < 2) throw std::invalid_argument("g_max needs n >= 2");
    std::size_t best = 0;
    for (std::size_t n1 = 1; n1 < n; ++n1) {
        const auto r = f_exact({n1, n - n1, {t}});
        if (r.status != AvoidanceStatus::computed) throw std::runtime_error("g_max: state budget exhausted");
        best = std::max(best, r.value);
    }
    return best;
}

struct RecursionCheck {
    std::size_t g_n = 0;
    std::size_t g_prev = 0;
    std::size_t g_left = 0;
    std::size_t g_right = 0;
    bool holds = false;
};

/// g(n,T) <= g(n-1,T) + max{g(n-1,T_Left), g(n-1,T_Right)} with exact values.
inline RecursionCheck depth_recursion_check(std::size_t n, const TypeTree& t) {
    if (t.is_leaf()) throw std::invalid_argument("depth recursion needs a splittable type");
    if (n < 3) throw std::invalid_argument("depth recursion needs n >= 3");
    RecursionCheck c;
    c.g_n = g_max(n, t);
    c.g_prev = g_max(n - 1, t);
    c.g_left = g_max(n - 1, t.left());
    c.g_right = g_max(n - 1, t.right());
    c.holds = c.g_n <= c.g_prev + std::max(c.g_left, c.g_right);
    return c;
}

} // namespace stepup

#endif // STEPUP_AVOIDANCE_HPP
