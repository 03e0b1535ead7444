#ifndef STEPUP_DYADIC_HPP
#define STEPUP_DYADIC_HPP

#include <stepup/binary_structure.hpp>
#include <stepup/int_set.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepup {

enum class Side : std::uint8_t { L, R };

inline char to_char(Side s) { return s == Side::L ? 'L' : 'R'; }
inline Side opposite(Side s) { return s == Side::L ? Side::R : Side::L; }

enum class TieRule { prefer_left, prefer_right };

/**
 * Result of repeatedly splitting the residual set and peeling off its smaller
 * half. Parts and colors are 0-indexed here: parts[i] is A_{i+1}, residuals[i]
 * is B_i (residuals[0] = A), split_levels[i] = l(B_i) for every i < t-1.
 */
struct DyadicDecomposition {
    IntSet base;
    std::vector<IntSet> parts;
    std::vector<Side> colors;
    std::vector<IntSet> residuals;
    std::vector<int> split_levels;

    std::size_t t() const { return parts.size(); }

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> out;
        for (const auto& p : parts) out.push_back(p.size());
        return out;
    }

    /// 1-based index i(x) of the part containing x.
    std::size_t part_of(std::uint64_t x) const {
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (parts[i].contains(x)) return i + 1;
        throw std::invalid_argument("element " + std::to_string(x) + " is not in the decomposed set");
    }
};

/// Size-profile check: |A_i| <= (|A_i| + ... + |A_t|) / 2 for i < t and |A_t| = 1.
inline bool is_dyadic_profile(const std::vector<std::size_t>& sizes) {
    if (sizes.empty() || sizes.back() != 1) return false;
    std::size_t rest = 0;
    for (auto s : sizes) rest += s;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        if (sizes[i] == 0 || 2 * sizes[i] > rest) return false;
        rest -= sizes[i];
    }
    return true;
}

/// Parts partition A, the half bound holds and the last part is a singleton.
inline bool is_dyadic(const IntSet& a, const std::vector<IntSet>& parts) {
    std::vector<std::uint64_t> all;
    std::vector<std::size_t> sizes;
    for (const auto& p : parts) {
        all.insert(all.end(), p.begin(), p.end());
        sizes.push_back(p.size());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
    if (all != a.vector()) return false;
    return is_dyadic_profile(sizes);
}

inline DyadicDecomposition dyadic_decompose(const IntSet& a, TieRule tie = TieRule::prefer_left) {
    if (a.empty()) throw std::invalid_argument("dyadic decomposition of the empty set");
    DyadicDecomposition d;
    d.base = a;
    IntSet b = a;
    while (true) {
        d.residuals.push_back(b);
        if (b.size() == 1) {
            d.parts.push_back(b);
            // B_{t-1} is the half not taken at the previous step.
            d.colors.push_back(d.colors.empty() ? Side::L : opposite(d.colors.back()));
            break;
        }
        d.split_levels.push_back(top_splitting_level(b));
        auto [left, right] = split(b);
        bool take_left = left.size() < right.size() ||
                         (left.size() == right.size() && tie == TieRule::prefer_left);
        d.parts.push_back(take_left ? left : right);
        d.colors.push_back(take_left ? Side::L : Side::R);
        b = take_left ? right : left;
    }
    return d;
}

/// Full check of every structural invariant of a decomposition.
inline bool decomposition_invariants_hold(const DyadicDecomposition& d) {
    if (!is_dyadic(d.base, d.parts)) return false;
    const std::size_t t = d.t();
    if (d.colors.size() != t || d.residuals.size() != t || d.split_levels.size() + 1 != t) return false;
    if (d.residuals[0] != d.base) return false;
    for (std::size_t i = 0; i + 1 < t; ++i) {
        const IntSet& prev = d.residuals[i];
        if (prev.size() < 2 || top_splitting_level(prev) != d.split_levels[i]) return false;
        auto [left, right] = split(prev);
        const IntSet& part = d.parts[i];
        const IntSet& next = d.residuals[i + 1];
        const bool part_left = part == left && next == right;
        const bool part_right = part == right && next == left;
        if (!part_left && !part_right) return false;
        if ((d.colors[i] == Side::L) != part_left) return false;
        if (part.size() > next.size()) return false;
    }
    return d.parts.back().size() == 1;
}

/**
 * The ordering pi: u >_pi v iff i(u) < i(v); inside one part, ascending value.
 * Returned from pi-smallest to pi-largest, i.e. A_t first and A_1 last.
 */
inline std::vector<std::uint64_t> ordering_pi(const DyadicDecomposition& d) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = d.t(); i-- > 0;) out.insert(out.end(), d.parts[i].begin(), d.parts[i].end());
    return out;
}

/// u >_pi v.
inline bool pi_greater(const DyadicDecomposition& d, std::uint64_t u, std::uint64_t v) {
    const auto iu = d.part_of(u), iv = d.part_of(v);
    if (iu != iv) return iu < iv;
    return u > v;
}

/// Index set I is 1-based, as a list of distinct part indices.
inline bool greedy_bound_check(const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& index_set) {
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    std::size_t removed = 0;
    for (auto i : index_set) {
        if (i < 1 || i > sizes.size()) throw std::invalid_argument("greedy_bound_check: index out of range");
        removed += sizes[i - 1];
    }
    const std::size_t k = index_set.size();
    const std::size_t floor_part = k >= 64 ? 0 : total >> k;
    return total - removed >= floor_part;
}

inline bool greedy_bound_check(const DyadicDecomposition& d, const std::vector<std::size_t>& index_set) {
    return greedy_bound_check(d.sizes(), index_set);
}

struct TwoColorWitness {
    std::optional<Side> side; // empty would falsify the two-coloring bound
};

/**
 * Finds X in {L, R} such that for every I of size s-1, the elements outside
 * parts in I with color X number at least floor(|A| / 2^{2s-1}). Enumerates
 * every I. Requires 1 <= s < t/2.
 */
inline std::optional<Side> two_color_bound_witness(const std::vector<std::size_t>& sizes,
                                                   const std::vector<Side>& colors, std::size_t s) {
    const std::size_t t = sizes.size();
    if (colors.size() != t) throw std::invalid_argument("two_color_bound_witness: one color per part");
    if (s < 1 || 2 * s >= t) throw std::invalid_argument("two_color_bound_witness needs 1 <= s < t/2");
    std::size_t total = 0;
    for (auto x : sizes) total += x;
    const std::size_t shift = 2 * s - 1;
    const std::size_t threshold = shift >= 64 ? 0 : total >> shift;

    for (Side x : {Side::L, Side::R}) {
        std::size_t colored = 0;
        for (std::size_t i = 0; i < t; ++i)
            if (colors[i] == x) colored += sizes[i];
        // Enumerate every (s-1)-subset of parts.
        std::vector<std::size_t> idx(s - 1);
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        bool ok = true;
        while (true) {
            std::size_t removed = 0;
            for (auto i : idx)
                if (colors[i] == x) removed += sizes[i];
            if (colored - removed < threshold) {
                ok = false;
                break;
            }
            std::size_t j = idx.size();
            while (j > 0 && idx[j - 1] == t - idx.size() + j - 1) --j;
            if (j == 0) break;
            ++idx[j - 1];
            for (std::size_t q = j; q < idx.size(); ++q) idx[q] = idx[q - 1] + 1;
        }
        if (ok) return x;
    }
    return std::nullopt;
}

inline std::optional<Side> two_color_bound_witness(const DyadicDecomposition& d, const std::vector<Side>& colors,
                                                   std::size_t s) {
    return two_color_bound_witness(d.sizes(), colors, s);
}

/// Calls f on every dyadic size profile summing to n (parts listed A_1..A_t).
inline void for_each_dyadic_profile(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t rest) {
        if (rest == 1) {
            cur.push_back(1);
            f(cur);
            cur.pop_back();
            return;
        }
        for (std::size_t a = 1; 2 * a <= rest; ++a) {
            cur.push_back(a);
            rec(rest - a);
            cur.pop_back();
        }
    };
    if (n >= 1) rec(n);
}

struct LemmaSweep {
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
};

/// Greedy bound over every dyadic profile of size <= max_size and every I.
inline LemmaSweep verify_greedy_bound(std::size_t max_size) {
    LemmaSweep r;
    for (std::size_t n = 1; n <= max_size; ++n) {
        for_each_dyadic_profile(n, [&](const std::vector<std::size_t>& sizes) {
            const std::size_t t = sizes.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
                std::vector<std::size_t> idx;
                for (std::size_t i = 0; i < t; ++i)
                    if (mask >> i & 1) idx.push_back(i + 1);
                ++r.cases;
                if (!greedy_bound_check(sizes, idx)) ++r.violations;
            }
        });
    }
    return r;
}

/// Two-coloring bound over every profile of size <= max_size, every coloring and every s < t/2.
inline LemmaSweep verify_two_color_bound(std::size_t max_size) {
    LemmaSweep r;
    for (std::size_t n = 1; n <= max_size; ++n) {
        for_each_dyadic_profile(n, [&](const std::vector<std::size_t>& sizes) {
            const std::size_t t = sizes.size();
            std::vector<Side> colors(t);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
                for (std::size_t i = 0; i < t; ++i) colors[i] = (mask >> i & 1) ? Side::R : Side::L;
                for (std::size_t s = 1; 2 * s < t; ++s) {
                    ++r.cases;
                    if (!two_color_bound_witness(sizes, colors, s)) ++r.violations;
                }
            }
        });
    }
    return r;
}

} // namespace stepup

#endif // STEPUP_DYADIC_HPP
