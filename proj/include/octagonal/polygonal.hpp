#pragma once

// Generalized polygonal numbers and representation by octagonal forms
// a_1 P8(x_1) + ... + a_k P8(x_k), P8(x) = 3x^2 - 2x.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <new>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "checked.hpp"

namespace octagonal {

/// P_m(x) = ((m-2)x^2 - (m-4)x) / 2 evaluated exactly; throws OverflowError
/// instead of wrapping.
inline int64_t pm_value(int64_t m, int64_t x) {
    if (m < 3) throw PreconditionError("polygonal order must be >= 3");
    const int64_t sq = checked::mul(x, x);
    const int64_t twice = checked::sub(checked::mul(m - 2, sq), checked::mul(m - 4, x));
    return twice / 2;  // (m-2)x^2 - (m-4)x = (m-2)x(x-1) + 2x is always even
}

inline int64_t p8(int64_t x) { return pm_value(8, x); }

/// The argument visited at step i of the sequence 0, 1, -1, 2, -2, ...
/// Octagonal values are strictly increasing along this sequence.
constexpr int64_t octagonal_argument(int64_t i) { return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2); }

/// True iff w = P8(x) for some integer x (P8 is injective on Z).
inline bool is_octagonal(int64_t w) {
    if (w < 0) return false;
    return is_square(checked::add(1, checked::mul(3, w)));
}

/// The unique x with P8(x) = w; requires is_octagonal(w).
inline int64_t octagonal_root(int64_t w) {
    const int64_t t = isqrt(1 + 3 * w);
    return (1 + t) % 3 == 0 ? (1 + t) / 3 : (1 - t) / 3;
}

/// Sorted list of {P8(x) : x in Z} ∩ [0, bound].
inline std::vector<int64_t> octagonal_values_up_to(int64_t bound) {
    if (bound < 0) throw PreconditionError("bound must be nonnegative");
    std::vector<int64_t> out;
    for (int64_t i = 0;; ++i) {
        const int64_t v = p8(octagonal_argument(i));
        if (v > bound) break;
        out.push_back(v);
    }
    return out;
}

/// A non-decreasing list of positive coefficients (a_1 <= ... <= a_k), k >= 1.
class CoefficientVector {
public:
    CoefficientVector() = default;
    CoefficientVector(std::initializer_list<int64_t> c) : CoefficientVector(std::vector<int64_t>(c)) {}
    explicit CoefficientVector(std::vector<int64_t> c) : coeffs_(std::move(c)) {
        if (coeffs_.empty()) throw PreconditionError("coefficient vector must be nonempty");
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] < 1) throw PreconditionError("coefficients must be positive");
            if (i > 0 && coeffs_[i] < coeffs_[i - 1])
                throw PreconditionError("coefficients must be non-decreasing");
        }
    }

    /// Sorts the input first.
    static CoefficientVector from_unsorted(std::vector<int64_t> c) {
        std::sort(c.begin(), c.end());
        return CoefficientVector(std::move(c));
    }

    /// Parses "2,3,4,5" (order-insensitive).
    static CoefficientVector parse(const std::string& text) {
        std::vector<int64_t> c;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) throw PreconditionError("empty coefficient in '" + text + "'");
            std::size_t used = 0;
            int64_t value = 0;
            try {
                value = std::stoll(item, &used);
            } catch (const std::exception&) {
                throw PreconditionError("bad coefficient '" + item + "'");
            }
            if (used != item.size()) throw PreconditionError("bad coefficient '" + item + "'");
            c.push_back(value);
        }
        return from_unsorted(std::move(c));
    }

    std::size_t size() const { return coeffs_.size(); }
    int64_t operator[](std::size_t i) const { return coeffs_[i]; }
    int64_t front() const { return coeffs_.front(); }
    int64_t back() const { return coeffs_.back(); }
    auto begin() const { return coeffs_.begin(); }
    auto end() const { return coeffs_.end(); }
    std::span<const int64_t> values() const { return coeffs_; }

    int64_t sum() const {
        int64_t s = 0;
        for (auto c : coeffs_) s = checked::add(s, c);
        return s;
    }

    /// a * g: g inserted after the last entry <= g.
    CoefficientVector insert(int64_t g) const {
        if (g < 1) throw PreconditionError("coefficients must be positive");
        std::vector<int64_t> c = coeffs_;
        c.insert(std::upper_bound(c.begin(), c.end(), g), g);
        return CoefficientVector(std::move(c));
    }

    /// Removes the entry at index i (k >= 2).
    CoefficientVector erase(std::size_t i) const {
        std::vector<int64_t> c = coeffs_;
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
        return CoefficientVector(std::move(c));
    }

    CoefficientVector scaled(int64_t factor) const {
        std::vector<int64_t> c = coeffs_;
        for (auto& x : c) x = checked::mul(x, factor);
        return CoefficientVector(std::move(c));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coeffs_[i]);
        }
        return s;
    }

    bool operator==(const CoefficientVector&) const = default;
    auto operator<=>(const CoefficientVector& o) const {
        // shorter first, then lexicographic
        if (coeffs_.size() != o.coeffs_.size()) return coeffs_.size() <=> o.coeffs_.size();
        return coeffs_ <=> o.coeffs_;
    }

private:
    std::vector<int64_t> coeffs_;
};

/// Bit array marking R(a) ∩ [0, bound].
class RepresentationSieve {
public:
    static constexpr int64_t kMaxBound = int64_t{1} << 36;

    RepresentationSieve(CoefficientVector coeffs, int64_t bound) : coeffs_(std::move(coeffs)), bound_(bound) {
        if (bound < 0) throw PreconditionError("bound must be nonnegative");
        if (bound > kMaxBound) throw ResourceError("sieve bound " + std::to_string(bound) + " exceeds the memory limit");
        try {
            words_.assign(static_cast<std::size_t>(bound / 64 + 1), 0);
        } catch (const std::bad_alloc&) {
            throw ResourceError("out of memory allocating sieve of bound " + std::to_string(bound));
        }
        words_[0] = 1;  // the empty sum
        for (auto a : coeffs_) convolve(a);
    }

    const CoefficientVector& coeffs() const { return coeffs_; }
    int64_t bound() const { return bound_; }

    bool test(int64_t v) const {
        if (v < 0 || v > bound_) throw PreconditionError("value outside sieve range");
        return (words_[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1U;
    }
    bool operator[](int64_t v) const { return test(v); }

    /// Sieve of coeffs * g at the same bound, derived incrementally.
    RepresentationSieve extended(int64_t g) const {
        RepresentationSieve out(*this);
        out.coeffs_ = coeffs_.insert(g);
        out.convolve(g);
        return out;
    }

    /// Smallest v in [lo, hi] with bit[v] == 0.
    std::optional<int64_t> first_missing(int64_t lo, int64_t hi) const {
        hi = std::min(hi, bound_);
        for (int64_t v = std::max<int64_t>(lo, 0); v <= hi;) {
            const auto w = static_cast<std::size_t>(v >> 6);
            const uint64_t holes = ~words_[w] >> (v & 63);
            if (holes != 0) {
                const int64_t cand = v + __builtin_ctzll(holes);
                return cand <= hi ? std::optional<int64_t>(cand) : std::nullopt;
            }
            v = static_cast<int64_t>((w + 1) << 6);
        }
        return std::nullopt;
    }

    /// Smallest v in [lo, hi] with bit[v] == 1.
    std::optional<int64_t> first_present(int64_t lo, int64_t hi) const {
        hi = std::min(hi, bound_);
        for (int64_t v = std::max<int64_t>(lo, 0); v <= hi; ++v)
            if (test(v)) return v;
        return std::nullopt;
    }

    std::vector<int64_t> missing(int64_t lo, int64_t hi) const {
        std::vector<int64_t> out;
        hi = std::min(hi, bound_);
        for (int64_t v = std::max<int64_t>(lo, 0); v <= hi; ++v)
            if (!test(v)) out.push_back(v);
        return out;
    }

    /// True iff every bit set here is also set in other (same bound).
    bool subset_of(const RepresentationSieve& other) const {
        if (other.bound_ != bound_) throw PreconditionError("sieves have different bounds");
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    std::span<const uint64_t> words() const { return words_; }

private:
    void convolve(int64_t a) {
        const std::vector<uint64_t> base = words_;
        for (int64_t i = 1;; ++i) {
            const int64_t shift = checked::mul(a, p8(octagonal_argument(i)));
            if (shift > bound_) break;
            or_shifted(base, shift);
        }
        mask_tail();
    }

    void or_shifted(const std::vector<uint64_t>& src, int64_t shift) {
        const auto ws = static_cast<std::size_t>(shift >> 6);
        const unsigned bs = static_cast<unsigned>(shift & 63);
        const std::size_t n = words_.size();
        if (bs == 0) {
            for (std::size_t i = n; i-- > ws;) words_[i] |= src[i - ws];
        } else {
            for (std::size_t i = n; i-- > ws + 1;)
                words_[i] |= (src[i - ws] << bs) | (src[i - ws - 1] >> (64 - bs));
            words_[ws] |= src[0] << bs;
        }
    }

    void mask_tail() {
        const unsigned used = static_cast<unsigned>((bound_ & 63) + 1);
        if (used < 64) words_.back() &= (uint64_t{1} << used) - 1;
    }

    CoefficientVector coeffs_;
    int64_t bound_;
    std::vector<uint64_t> words_;
};

inline RepresentationSieve build_sieve(const CoefficientVector& a, int64_t bound) { return {a, bound}; }

namespace detail {

// DFS over coefficients in descending order; the last one is solved directly.
inline bool search(std::span<const int64_t> desc, int64_t remaining, std::vector<int64_t>* args) {
    const int64_t a = desc.front();
    if (desc.size() == 1) {
        if (remaining % a != 0 || !is_octagonal(remaining / a)) return false;
        if (args) args->push_back(octagonal_root(remaining / a));
        return true;
    }
    for (int64_t i = 0;; ++i) {
        const int64_t x = octagonal_argument(i);
        const int64_t term = checked::mul(a, p8(x));
        if (term > remaining) return false;
        if (args) args->push_back(x);
        if (search(desc.subspan(1), remaining - term, args)) return true;
        if (args) args->pop_back();
    }
}

}  // namespace detail

/// (x_1, ..., x_k) in the coefficient order of a with sum a_i P8(x_i) = v,
/// or nullopt when v is not represented.
inline std::optional<std::vector<int64_t>> witness(const CoefficientVector& a, int64_t v) {
    if (v < 0) throw PreconditionError("value must be nonnegative");
    std::vector<int64_t> desc(a.begin(), a.end());
    std::reverse(desc.begin(), desc.end());
    std::vector<int64_t> args;
    if (!detail::search(desc, v, &args)) return std::nullopt;
    std::reverse(args.begin(), args.end());
    return args;
}

inline bool represents(const CoefficientVector& a, int64_t v) {
    if (v < 0) throw PreconditionError("value must be nonnegative");
    std::vector<int64_t> desc(a.begin(), a.end());
    std::reverse(desc.begin(), desc.end());
    return detail::search(desc, v, nullptr);
}

/// {v in [lo, hi] : v not in R(a)}.
inline std::vector<int64_t> missing_in_range(const CoefficientVector& a, int64_t lo, int64_t hi) {
    if (lo < 0 || lo > hi) throw PreconditionError("need 0 <= lo <= hi");
    return build_sieve(a, hi).missing(lo, hi);
}

inline int64_t form_value(const CoefficientVector& a, std::span<const int64_t> x) {
    if (x.size() != a.size()) throw PreconditionError("argument count mismatch");
    int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], p8(x[i])));
    return s;
}

}  // namespace octagonal
