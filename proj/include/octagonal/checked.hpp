#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace octagonal {

class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

namespace checked {

inline int64_t add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline int64_t sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline int64_t mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

}  // namespace checked

// floor(sqrt(v)) for v >= 0, exact.
inline int64_t isqrt(int64_t v) {
    if (v < 0) throw PreconditionError("isqrt of a negative value");
    if (v < 2) return v;
    auto r = static_cast<int64_t>(__builtin_sqrtl(static_cast<long double>(v)));
    while (static_cast<__int128>(r) * r > v) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= v) ++r;
    return r;
}

inline bool is_square(int64_t v) {
    if (v < 0) return false;
    const int64_t r = isqrt(v);
    return r * r == v;
}

// Euclidean remainder in [0, m).
inline int64_t mod(int64_t x, int64_t m) {
    const int64_t r = x % m;
    return r < 0 ? r + m : r;
}

inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

}  // namespace octagonal
