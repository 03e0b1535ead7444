#ifndef STEPUP_INT_SET_HPP
#define STEPUP_INT_SET_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stepup {

/**
 * Finite set of non-negative integers, kept sorted and duplicate-free.
 * Elements are 64-bit; every desk-scale object here lives below 2^63.
 */
class IntSet {
public:
    using value_type = std::uint64_t;

    IntSet() = default;

    IntSet(std::initializer_list<value_type> values) : elems_(values) {
        normalize();
    }

    explicit IntSet(std::vector<value_type> values) : elems_(std::move(values)) {
        normalize();
    }

    /// Builds a set from a bitmask over {0..63}.
    static IntSet from_mask(std::uint64_t mask) {
        std::vector<value_type> v;
        while (mask) {
            v.push_back(static_cast<value_type>(__builtin_ctzll(mask)));
            mask &= mask - 1;
        }
        IntSet s;
        s.elems_ = std::move(v);
        return s;
    }

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    value_type operator[](std::size_t i) const { return elems_[i]; }
    value_type min() const { return elems_.front(); }
    value_type max() const { return elems_.back(); }

    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    std::span<const value_type> values() const { return elems_; }
    const std::vector<value_type>& vector() const { return elems_; }

    bool contains(value_type x) const {
        return std::binary_search(elems_.begin(), elems_.end(), x);
    }

    bool operator==(const IntSet&) const = default;
    auto operator<=>(const IntSet&) const = default;

    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) os << ',';
            os << elems_[i];
        }
        os << '}';
        return os.str();
    }

private:
    void normalize() {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    std::vector<value_type> elems_;
};

/// Parses "5,6,7" (optionally wrapped in braces, whitespace allowed).
inline IntSet parse_int_set(std::string_view text) {
    std::vector<IntSet::value_type> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(token, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer in set: '" + token + "'");
        }
        if (pos != token.size() || token.front() == '-')
            throw std::invalid_argument("bad integer in set: '" + token + "'");
        out.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == ',' ) {
            if (token.empty()) throw std::invalid_argument("empty element in set literal");
            flush();
        } else if (c == '{' || c == '}' || c == ' ' || c == '\t') {
            continue;
        } else {
            token.push_back(c);
        }
    }
    flush();
    std::vector<IntSet::value_type> sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate element in set literal");
    return IntSet(std::move(out));
}

} // namespace stepup

#endif // STEPUP_INT_SET_HPP
