#ifndef STEPUP_TRANSVERSAL_HPP
#define STEPUP_TRANSVERSAL_HPP

#include <stepup/binary_structure.hpp>
#include <stepup/constructions.hpp>
#include <stepup/dyadic.hpp>
#include <stepup/hypergraph.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace stepup {

/**
 * Oriented s-graph. Each edge is an ordered tuple: position j holds the vertex
 * mapped to j+1 by the edge's bijection onto [s].
 */
struct OrientedHypergraph {
    std::size_t s = 3;
    std::size_t n = 0;
    std::vector<std::vector<Vertex>> edges;

    void validate() const {
        if (s < 1) throw std::invalid_argument("oriented hypergraph: s must be positive");
        std::set<Edge> seen;
        for (const auto& t : edges) {
            if (t.size() != s) throw std::invalid_argument("oriented hypergraph: tuple of wrong size");
            Edge sorted = t;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw std::invalid_argument("oriented hypergraph: repeated vertex in a tuple");
            if (!sorted.empty() && sorted.back() >= n) throw std::invalid_argument("oriented hypergraph: vertex out of range");
            if (!seen.insert(sorted).second) throw std::invalid_argument("oriented hypergraph: duplicate underlying edge");
        }
    }

    Hypergraph underlying() const {
        Hypergraph h(s, n);
        for (const auto& t : edges) h.add_edge(t);
        return h;
    }
};

inline nlohmann::json to_json(const OrientedHypergraph& h) {
    return nlohmann::json{{"s", h.s}, {"n", h.n}, {"edges", h.edges}};
}

inline OrientedHypergraph oriented_from_json(const nlohmann::json& j) {
    OrientedHypergraph h;
    h.s = j.at("s").get<std::size_t>();
    h.n = j.at("n").get<std::size_t>();
    h.edges = j.at("edges").get<std::vector<std::vector<Vertex>>>();
    h.validate();
    return h;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SearchConfig {
    std::size_t n = 12;
    std::size_t s = 3;
    double c = 0.05;
    std::uint64_t seed = 1;
    std::size_t max_attempts = 1000;
    std::optional<std::size_t> girth; // reject samples with a Berge cycle of length <= girth

    double edge_probability() const {
        return c * std::pow(static_cast<double>(n), 2.0 - static_cast<double>(s));
    }

    void validate() const {
        if (s < 2 || n < s) throw std::invalid_argument("search config: need 2 <= s <= n");
        const double p = edge_probability();
        if (!(p > 0.0) || p > 1.0)
            throw std::invalid_argument("search config: edge probability p = c*n^(2-s) = " + std::to_string(p) +
                                        " must lie in (0, 1]");
    }
};

/// Portable draws on top of mt19937_64 (whose output sequence is fixed by the standard).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below(0)");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do x = gen_();
        while (x >= limit);
        return x % bound;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    bool coin() { return gen_() >> 63; }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

/// Each s-set becomes an edge with probability p, with an independent uniform orientation.
inline OrientedHypergraph sample_oriented(const SearchConfig& cfg, Rng& rng) {
    cfg.validate();
    const double p = cfg.edge_probability();
    OrientedHypergraph h{cfg.s, cfg.n, {}};
    for_each_k_subset(cfg.n, cfg.s, [&](const Edge& e) {
        if (rng.uniform01() < p) {
            std::vector<Vertex> t = e;
            rng.shuffle(t);
            h.edges.push_back(std::move(t));
        }
    });
    return h;
}

inline OrientedHypergraph sample_oriented(const SearchConfig& cfg) {
    Rng rng(cfg.seed);
    return sample_oriented(cfg, rng);
}

struct SampleReport {
    std::optional<OrientedHypergraph> graph;
    std::size_t attempts = 0;
    std::size_t rejected_nonlinear = 0;
    std::size_t rejected_girth = 0;
};

/// Resamples until the underlying s-graph is linear (and passes the girth filter when set).
inline SampleReport sample_linear_oriented(const SearchConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    SampleReport r;
    while (r.attempts < cfg.max_attempts) {
        ++r.attempts;
        auto h = sample_oriented(cfg, rng);
        const auto u = h.underlying();
        if (!is_linear(u)) {
            ++r.rejected_nonlinear;
            continue;
        }
        if (cfg.girth && !berge_girth_exceeds(u, *cfg.girth)) {
            ++r.rejected_girth;
            continue;
        }
        r.graph = std::move(h);
        break;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Ordered monochromatic transversal edges
// ---------------------------------------------------------------------------

/**
 * A (partition, coloring, ordering) triple over V(H0) = {0..n-1}.
 * part[v] is the 0-based part index, colors[i] the color of part i, and
 * rank[v] the position of v in the ordering (0 = smallest).
 */
struct DyadicTriple {
    std::vector<std::size_t> part;
    std::vector<Side> colors;
    std::vector<std::size_t> rank;
};

/// Edge whose vertices sit in distinct parts of one color and whose tuple order agrees with the ordering.
inline bool is_ordered_monochromatic_transversal(const std::vector<Vertex>& tuple, const DyadicTriple& x) {
    std::set<std::size_t> parts;
    for (auto v : tuple) parts.insert(x.part[v]);
    if (parts.size() != tuple.size()) return false;
    const Side c = x.colors[x.part[tuple.front()]];
    for (auto v : tuple)
        if (x.colors[x.part[v]] != c) return false;
    for (std::size_t j = 0; j + 1 < tuple.size(); ++j)
        if (x.rank[tuple[j]] >= x.rank[tuple[j + 1]]) return false;
    return true;
}

inline bool has_ordered_monochromatic_transversal_edge(const OrientedHypergraph& h, const DyadicTriple& x) {
    for (const auto& t : h.edges)
        if (is_ordered_monochromatic_transversal(t, x)) return true;
    return false;
}

/// The triple is admissible: parts form a dyadic partition of {0..n-1} and the ordering is a bijection.
inline bool is_admissible_triple(std::size_t n, const DyadicTriple& x) {
    if (x.part.size() != n || x.rank.size() != n) return false;
    const std::size_t t = x.colors.size();
    std::vector<std::size_t> sizes(t, 0);
    for (auto p : x.part) {
        if (p >= t) return false;
        ++sizes[p];
    }
    if (!is_dyadic_profile(sizes)) return false;
    std::vector<bool> seen(n, false);
    for (auto r : x.rank) {
        if (r >= n || seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

enum class Verdict { verified, refuted, budget_exhausted };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::refuted: return "refuted";
    case Verdict::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

struct TransversalVerification {
    Verdict verdict = Verdict::verified;
    std::optional<DyadicTriple> counterexample;
    std::uint64_t partitions_checked = 0;
};

namespace detail {

// Searches for an ordering in which no candidate tuple is increasing. Vertices
// are placed from smallest rank upwards; a tuple stays "on track" while its
// placed vertices are exactly a prefix of the tuple.
class OrderAvoider {
public:
    OrderAvoider(std::size_t n, std::vector<std::vector<Vertex>> tuples,
                 std::chrono::steady_clock::time_point deadline)
        : n_(n), tuples_(std::move(tuples)), incident_(n), placed_(n, false), rank_(n, 0), deadline_(deadline) {
        for (std::size_t i = 0; i < tuples_.size(); ++i)
            for (std::size_t j = 0; j < tuples_[i].size(); ++j) incident_[tuples_[i][j]].push_back({i, j});
        progress_.assign(tuples_.size(), 0);
        dead_.assign(tuples_.size(), false);
    }

    struct TimedOut {};

    /// Ranks of an avoiding ordering, or nullopt if none exists. Throws TimedOut past the deadline.
    std::optional<std::vector<std::size_t>> find() {
        if (place(0)) return rank_;
        return std::nullopt;
    }

private:
    bool place(std::size_t pos) {
        if (pos == n_) return true;
        if ((++nodes_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_) throw TimedOut{};
        for (Vertex v = 0; v < n_; ++v) {
            if (placed_[v]) continue;
            // Placing v: tuples where v is the next expected vertex advance, the rest die.
            bool completes = false;
            for (auto [ti, j] : incident_[v])
                if (!dead_[ti] && progress_[ti] == j && j + 1 == tuples_[ti].size()) completes = true;
            if (completes) continue;
            std::vector<std::size_t> advanced, killed;
            for (auto [ti, j] : incident_[v]) {
                if (dead_[ti]) continue;
                if (progress_[ti] == j) {
                    ++progress_[ti];
                    advanced.push_back(ti);
                } else {
                    dead_[ti] = true;
                    killed.push_back(ti);
                }
            }
            placed_[v] = true;
            rank_[v] = pos;
            if (place(pos + 1)) return true;
            placed_[v] = false;
            for (auto ti : advanced) --progress_[ti];
            for (auto ti : killed) dead_[ti] = false;
        }
        return false;
    }

    std::size_t n_;
    std::vector<std::vector<Vertex>> tuples_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident_;
    std::vector<bool> placed_;
    std::vector<std::size_t> rank_;
    std::vector<std::size_t> progress_;
    std::vector<bool> dead_;
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t nodes_ = 0;
};

// Calls f(part) for every assignment of {0..n-1} to parts 0..t-1 with the given sizes.
template <class F>
bool for_each_assignment(std::size_t n, const std::vector<std::size_t>& sizes, F&& f) {
    std::vector<std::size_t> part(n, 0), left = sizes;
    auto rec = [&](auto& self, std::size_t v) -> bool {
        if (v == n) return f(static_cast<const std::vector<std::size_t>&>(part));
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (left[i] == 0) continue;
            --left[i];
            part[v] = i;
            const bool go_on = self(self, v + 1);
            ++left[i];
            if (!go_on) return false;
        }
        return true;
    };
    return rec(rec, 0);
}

} // namespace detail

/**
 * Exhaustive check of the ordered-monochromatic-transversal-edge property over
 * every dyadic partition of V(H0) (abstract ordered partitions with a dyadic
 * size profile), every coloring and every ordering. Returns the first
 * counterexample found, or budget exhaustion if `budget` elapses first.
 */
inline TransversalVerification verify_transversal_property(
    const OrientedHypergraph& h, std::chrono::milliseconds budget = std::chrono::seconds(60)) {
    h.validate();
    const auto deadline = std::chrono::steady_clock::now() + budget;
    TransversalVerification out;
    const std::size_t n = h.n;
    if (n == 0) return out;
    std::vector<std::vector<std::size_t>> profiles;
    for_each_dyadic_profile(n, [&](const std::vector<std::size_t>& p) { profiles.push_back(p); });

    for (const auto& sizes : profiles) {
        const std::size_t t = sizes.size();
        const bool finished = detail::for_each_assignment(n, sizes, [&](const std::vector<std::size_t>& part) {
            ++out.partitions_checked;
            if ((out.partitions_checked & 0xff) == 1 && std::chrono::steady_clock::now() >= deadline) {
                out.verdict = Verdict::budget_exhausted;
                return false;
            }
            std::vector<Side> colors(t);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
                for (std::size_t i = 0; i < t; ++i) colors[i] = (mask >> i & 1) ? Side::R : Side::L;
                std::vector<std::vector<Vertex>> candidates;
                for (const auto& tup : h.edges) {
                    std::set<std::size_t> ps;
                    bool mono = true;
                    for (auto v : tup) {
                        ps.insert(part[v]);
                        if (colors[part[v]] != colors[part[tup.front()]]) mono = false;
                    }
                    if (mono && ps.size() == tup.size()) candidates.push_back(tup);
                }
                std::optional<std::vector<std::size_t>> order;
                try {
                    order = detail::OrderAvoider(n, std::move(candidates), deadline).find();
                } catch (const detail::OrderAvoider::TimedOut&) {
                    out.verdict = Verdict::budget_exhausted;
                    return false;
                }
                if (order) {
                    out.verdict = Verdict::refuted;
                    out.counterexample = DyadicTriple{part, colors, *order};
                    return false;
                }
            }
            return true;
        });
        if (!finished) return out;
    }
    return out;
}

/**
 * Restatement straight from the definition, for cross-checking on tiny
 * inputs: every function V -> [t] whose fibres form a dyadic partition, every
 * coloring, every permutation.
 */
inline TransversalVerification naive_transversal_check(const OrientedHypergraph& h) {
    h.validate();
    const std::size_t n = h.n;
    if (n > 6) throw std::invalid_argument("naive_transversal_check is limited to n <= 6");
    TransversalVerification out;
    for (std::size_t t = 1; t <= n; ++t) {
        std::vector<std::size_t> part(n, 0);
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= t;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (std::size_t v = 0; v < n; ++v) {
                part[v] = c % t;
                c /= t;
            }
            std::vector<std::size_t> sizes(t, 0);
            for (auto p : part) ++sizes[p];
            if (!is_dyadic_profile(sizes)) continue;
            ++out.partitions_checked;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
                std::vector<Side> colors(t);
                for (std::size_t i = 0; i < t; ++i) colors[i] = (mask >> i & 1) ? Side::R : Side::L;
                std::vector<std::size_t> perm(n);
                std::iota(perm.begin(), perm.end(), std::size_t{0});
                do {
                    // perm lists vertices from smallest to largest.
                    DyadicTriple x{part, colors, std::vector<std::size_t>(n)};
                    for (std::size_t r = 0; r < n; ++r) x.rank[perm[r]] = r;
                    if (!has_ordered_monochromatic_transversal_edge(h, x)) {
                        out.verdict = Verdict::refuted;
                        out.counterexample = x;
                        return out;
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
    }
    return out;
}

/// Uniformly random size profile, assignment, coloring and ordering.
inline DyadicTriple random_triple(std::size_t n, Rng& rng) {
    std::vector<std::size_t> sizes;
    std::size_t rest = n;
    while (rest > 1) {
        const std::size_t a = 1 + rng.below(rest / 2);
        sizes.push_back(a);
        rest -= a;
    }
    if (rest == 1) sizes.push_back(1);
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < sizes.size(); ++i) slots.insert(slots.end(), sizes[i], i);
    rng.shuffle(slots);
    DyadicTriple x;
    x.part = slots;
    x.colors.resize(sizes.size());
    for (auto& c : x.colors) c = rng.coin() ? Side::R : Side::L;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm);
    x.rank.resize(n);
    for (std::size_t r = 0; r < n; ++r) x.rank[perm[r]] = r;
    return x;
}

struct TransversalStats {
    std::size_t trials = 0;
    std::size_t admitting = 0;
    double fraction() const { return trials ? static_cast<double>(admitting) / static_cast<double>(trials) : 0.0; }
};

/// Fraction of random triples that admit an ordered monochromatic transversal edge.
inline TransversalStats estimate_transversal_fraction(const OrientedHypergraph& h, std::size_t trials, Rng& rng) {
    TransversalStats st;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto x = random_triple(h.n, rng);
        ++st.trials;
        if (has_ordered_monochromatic_transversal_edge(h, x)) ++st.admitting;
    }
    return st;
}

/**
 * Number of unordered s-sets meeting s distinct parts that share one color:
 * the elementary symmetric polynomial e_s of the part sizes, per color.
 */
inline std::uint64_t count_potential_edges(const std::vector<std::size_t>& sizes, const std::vector<Side>& colors,
                                           std::size_t s) {
    if (sizes.size() != colors.size()) throw std::invalid_argument("count_potential_edges: one color per part");
    std::uint64_t total = 0;
    for (Side x : {Side::L, Side::R}) {
        std::vector<std::uint64_t> e(s + 1, 0);
        e[0] = 1;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (colors[i] != x) continue;
            for (std::size_t j = s; j >= 1; --j) e[j] += e[j - 1] * sizes[i];
        }
        total += e[s];
    }
    return total;
}

// ---------------------------------------------------------------------------
// Blow-up and the chain map
// ---------------------------------------------------------------------------

struct BlowupResult {
    Hypergraph hypergraph;
    std::size_t duplicate_edges = 0; // nonzero only when H0 is not linear
};

/// Places a copy of F< in each oriented edge, sending the rank-i vertex of F< to tuple position i.
inline BlowupResult blowup(const OrientedHypergraph& h0, const OrderedHypergraph& f) {
    h0.validate();
    if (f.hypergraph.vertex_count() != h0.s)
        throw std::invalid_argument("blowup: F< has " + std::to_string(f.hypergraph.vertex_count()) +
                                    " vertices, H0 edges have " + std::to_string(h0.s));
    if (!f.order_is_bijection()) throw std::invalid_argument("blowup: F< order is not a bijection");
    const auto rank = f.ranks();
    BlowupResult out{Hypergraph(f.hypergraph.uniformity(), h0.n), 0};
    for (const auto& tup : h0.edges) {
        for (const auto& fe : f.hypergraph.edges()) {
            Edge img;
            for (auto v : fe) img.push_back(tup[rank[v]]);
            if (!out.hypergraph.add_edge(std::move(img))) ++out.duplicate_edges;
        }
    }
    return out;
}

/**
 * phi*(x) = l(B_{i(x)-1}) for the right-colored case, and N-1-l(B_{i(x)-1})
 * for the left-colored case. Needs |B_{i(x)-1}| >= 2, i.e. i(x) < t.
 */
inline std::int64_t phi_star(const DyadicDecomposition& d, std::uint64_t x, Side side, std::size_t N) {
    const std::size_t i = d.part_of(x);
    if (i >= d.t()) throw std::invalid_argument("phi_star: x lies in the final singleton part");
    const auto level = static_cast<std::int64_t>(d.split_levels[i - 1]);
    return side == Side::R ? level : static_cast<std::int64_t>(N) - 1 - level;
}

struct ChainCheck {
    bool structure_ok = false; // increasing for an all-R chain, decreasing for all-L
    bool levels_ok = false;    // L equals the recorded split levels of the chain's tail
};

/**
 * Chain x_0..x_{k-1} with strictly decreasing part indices and every x_j
 * (j >= 1) in a part of color `side`. Checks the binary structure and L.
 */
inline ChainCheck check_chain(const DyadicDecomposition& d, const std::vector<std::uint64_t>& chain, Side side) {
    if (chain.size() < 2) throw std::invalid_argument("check_chain: need at least two elements");
    for (std::size_t j = 0; j + 1 < chain.size(); ++j)
        if (d.part_of(chain[j]) <= d.part_of(chain[j + 1]))
            throw std::invalid_argument("check_chain: part indices must strictly decrease");
    for (std::size_t j = 1; j < chain.size(); ++j)
        if (d.colors[d.part_of(chain[j]) - 1] != side) throw std::invalid_argument("check_chain: wrong color");

    const IntSet s(std::vector<std::uint64_t>(chain.begin(), chain.end()));
    const BinaryStructureTree b(s);
    ChainCheck c;
    c.structure_ok = side == Side::R ? is_increasing(b) : is_decreasing(b);
    if (!c.structure_ok) return c;
    std::vector<std::uint64_t> expected;
    for (std::size_t j = 1; j < chain.size(); ++j)
        expected.push_back(static_cast<std::uint64_t>(phi_star(d, chain[j], Side::R, 0)));
    c.levels_ok = level_set(s) == IntSet(std::move(expected));
    return c;
}

} // namespace stepup

#endif // STEPUP_TRANSVERSAL_HPP
