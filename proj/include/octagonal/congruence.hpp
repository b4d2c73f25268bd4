#pragma once

// Congruence conditions under which a value is →₃-represented by a fixed
// diagonal form, written as executable predicates.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "checked.hpp"

namespace octagonal {

/// v = 2^(2t + offset) (8b + residue) for some t, b >= 0.
inline bool is_two_power_form(int64_t v, int offset, int residue) {
    if (v <= 0) return false;
    int e = 0;
    while ((v & 1) == 0) {
        v >>= 1;
        ++e;
    }
    return e >= offset && (e - offset) % 2 == 0 && v % 8 == residue;
}

/// v = c * h^2 for some positive integer h.
inline bool is_scaled_square(int64_t v, int64_t c) { return v > 0 && v % c == 0 && is_square(v / c); }

struct CongruenceLemma {
    std::string name;
    std::vector<int64_t> diagonal;
    std::function<bool(int64_t)> qualifies;
};

inline const std::vector<CongruenceLemma>& congruence_lemmas() {
    static const std::vector<CongruenceLemma> lemmas = {
        {"lem111", {1, 1, 1}, [](int64_t v) { return v > 0 && v % 3 == 0 && !is_two_power_form(v, 0, 7); }},
        {"lem123", {1, 2, 3}, [](int64_t v) { return v > 0 && v % 6 == 0 && !is_two_power_form(v, 1, 5); }},
        {"lem113", {1, 1, 3}, [](int64_t v) { return v > 0 && (v % 12 == 5 || v % 12 == 8); }},
        {"lem233", {2, 3, 3}, [](int64_t v) { return v > 0 && (v % 24 == 8 || v % 24 == 14); }},
        {"lem346", {3, 4, 6},
         [](int64_t v) {
             return v >= 13 && (v % 24 == 16 || v % 24 == 22) && !is_two_power_form(v, 1, 7) && !is_square(v);
         }},
        {"lem234", {2, 3, 4},
         [](int64_t v) {
             if (v <= 0 || v % 3 != 0) return false;
             const bool first = v % 16 == 2 || v % 64 == 8 || v % 64 == 24 || v % 64 == 56;
             const bool second = v % 9 == 3 && !is_two_power_form(v, 1, 5) && !is_scaled_square(v, 3);
             return first || second;
         }},
        {"lem334", {3, 3, 4}, [](int64_t v) { return v >= 10 && v % 24 == 7; }},
        {"lem356", {3, 5, 6},
         [](int64_t v) { return v >= 14 && (v % 48 == 8 || v % 48 == 32 || v % 48 == 38) && v % 5 != 0; }},
        {"lem3456", {3, 4, 5, 6},
         [](int64_t v) {
             if (v <= 0 || v % 3 != 0) return false;
             const int64_t r16 = v % 16;
             const bool first = v > 99 && r16 != 1 && r16 != 2 && r16 != 7 && r16 != 9 && r16 != 14 && r16 != 15;
             const bool second = v > 24 && v % 18 == 6;
             const bool third = v % 18 == 0 && r16 != 14;
             return first || second || third;
         }},
    };
    return lemmas;
}

inline const CongruenceLemma& congruence_lemma(const std::string& name) {
    for (const auto& l : congruence_lemmas())
        if (l.name == name) return l;
    throw PreconditionError("unknown congruence lemma '" + name + "'");
}

}  // namespace octagonal
