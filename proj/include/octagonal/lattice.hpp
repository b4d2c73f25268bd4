#pragma once

// Integral ternary lattices given by Gram matrices: evaluation, bounded
// representation, representation with coordinates prime to 3, and the
// residue-transfer machinery (R(M,N,d), R(N,d,a), R_M(N,d,a)).

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "checked.hpp"
#include "polygonal.hpp"

namespace octagonal {

using Vec3 = std::array<int64_t, 3>;
using Mat3 = std::array<std::array<int64_t, 3>, 3>;  // row-major

inline constexpr int64_t kDefaultEnumerationBudget = 100'000'000;

inline Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Mat3 scaled(const Mat3& m, int64_t s) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = checked::mul(m[i][j], s);
    return r;
}

inline Mat3 multiply(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int64_t s = 0;
            for (int k = 0; k < 3; ++k) s = checked::add(s, checked::mul(a[i][k], b[k][j]));
            r[i][j] = s;
        }
    return r;
}

inline Mat3 transpose(const Mat3& a) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
    return r;
}

inline Vec3 mat_vec(const Mat3& t, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i) {
        int64_t s = 0;
        for (int k = 0; k < 3; ++k) s = checked::add(s, checked::mul(t[i][k], v[k]));
        r[i] = s;
    }
    return r;
}

inline int64_t determinant(const Mat3& m) {
    const __int128 d = static_cast<__int128>(m[0][0]) * (static_cast<__int128>(m[1][1]) * m[2][2] -
                                                         static_cast<__int128>(m[1][2]) * m[2][1]) -
                       static_cast<__int128>(m[0][1]) * (static_cast<__int128>(m[1][0]) * m[2][2] -
                                                         static_cast<__int128>(m[1][2]) * m[2][0]) +
                       static_cast<__int128>(m[0][2]) * (static_cast<__int128>(m[1][0]) * m[2][1] -
                                                         static_cast<__int128>(m[1][1]) * m[2][0]);
    if (d > INT64_MAX || d < INT64_MIN) throw OverflowError("determinant overflow");
    return static_cast<int64_t>(d);
}

/// Symmetric positive definite integer 3x3 Gram matrix.
class GramMatrix {
public:
    explicit GramMatrix(const Mat3& m) : m_(m) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (m[i][j] != m[j][i]) throw PreconditionError("Gram matrix must be symmetric");
        const int64_t m1 = m[0][0];
        const int64_t m2 = checked::sub(checked::mul(m[0][0], m[1][1]), checked::mul(m[0][1], m[1][0]));
        if (m1 <= 0 || m2 <= 0 || determinant(m) <= 0)
            throw PreconditionError("Gram matrix must be positive definite");
    }

    static GramMatrix diagonal(int64_t a, int64_t b, int64_t c) { return GramMatrix(Mat3{{{a, 0, 0}, {0, b, 0}, {0, 0, c}}}); }

    const Mat3& entries() const { return m_; }
    int64_t operator()(int i, int j) const { return m_[i][j]; }
    int64_t det() const { return determinant(m_); }
    bool operator==(const GramMatrix&) const = default;

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < 3; ++i) {
            s += i ? ";" : "";
            for (int j = 0; j < 3; ++j) s += (j ? "," : "") + std::to_string(m_[i][j]);
        }
        return s + "]";
    }

private:
    Mat3 m_;
};

/// B(x, y) = ᵗx M y.
inline int64_t bilinear(const GramMatrix& m, const Vec3& x, const Vec3& y) {
    int64_t s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s = checked::add(s, checked::mul(checked::mul(x[i], m(i, j)), y[j]));
    return s;
}

inline int64_t gram_value(const GramMatrix& m, const Vec3& v) { return bilinear(m, v, v); }

/// Calls visit(x) for every x in Z^3 with ᵗxMx == value; stops early when
/// visit returns false. Cost is one exact quadratic solve per (x2, x3)
/// pair inside the ellipsoid; exceeding `budget` pairs raises ResourceError.
inline void for_each_representation(const GramMatrix& gm, int64_t value, const std::function<bool(const Vec3&)>& visit,
                                    int64_t budget = kDefaultEnumerationBudget) {
    if (value < 0) return;
    const auto& m = gm.entries();
    const int64_t a = m[0][0], b = m[0][1], c = m[0][2], e = m[1][1], f = m[1][2], i = m[2][2];
    const int64_t det = gm.det();
    const int64_t D = a * e - b * b;  // > 0
    const int64_t E = a * f - b * c;
    const int64_t F = a * i - c * c;
    // max x3^2 on the ellipsoid is value * (a e - b^2) / det
    const int64_t x3max = isqrt(checked::mul(value, D) / det);
    int64_t visited = 0;
    for (int64_t x3 = -x3max; x3 <= x3max; ++x3) {
        // D x2^2 + 2 E x3 x2 + F x3^2 <= a value
        const __int128 disc = static_cast<__int128>(E) * E * x3 * x3 -
                              static_cast<__int128>(D) * (static_cast<__int128>(F) * x3 * x3 - static_cast<__int128>(a) * value);
        if (disc < 0) continue;
        if (disc > INT64_MAX) throw OverflowError("ellipsoid bound overflow");
        const int64_t s = isqrt(static_cast<int64_t>(disc));
        const int64_t ex3 = checked::mul(E, x3);
        const int64_t lo = ceil_div(-ex3 - s - 1, D);
        const int64_t hi = floor_div(-ex3 + s + 1, D);
        for (int64_t x2 = lo; x2 <= hi; ++x2) {
            if (++visited > budget) throw ResourceError("ellipsoid enumeration exceeded budget");
            // a x1^2 + 2 p x1 + q = 0
            const int64_t p = checked::add(checked::mul(b, x2), checked::mul(c, x3));
            const int64_t q = checked::sub(
                checked::add(checked::add(checked::mul(checked::mul(e, x2), x2), checked::mul(checked::mul(2 * f, x2), x3)),
                             checked::mul(checked::mul(i, x3), x3)),
                value);
            const int64_t d1 = checked::sub(checked::mul(p, p), checked::mul(a, q));
            if (d1 < 0 || !is_square(d1)) continue;
            const int64_t r = isqrt(d1);
            for (int64_t num : {-p - r, -p + r}) {
                if (num % a != 0) continue;
                if (!visit(Vec3{num / a, x2, x3})) return;
                if (r == 0) break;
            }
        }
    }
}

inline bool represents_lattice(const GramMatrix& m, int64_t value) {
    if (value == 0) return true;
    bool found = false;
    for_each_representation(m, value, [&](const Vec3&) {
        found = true;
        return false;
    });
    return found;
}

/// r(value, M): number of x in Z^3 with ᵗxMx == value.
inline int64_t count_representations(const GramMatrix& m, int64_t value) {
    int64_t n = 0;
    for_each_representation(m, value, [&](const Vec3&) {
        ++n;
        return true;
    });
    return n;
}

namespace detail {

inline bool coprime3_search(std::span<const int64_t> diag, int64_t remaining, std::vector<int64_t>& ys) {
    const int64_t b = diag.front();
    if (diag.size() == 1) {
        if (remaining <= 0 || remaining % b != 0) return false;
        const int64_t q = remaining / b;
        if (!is_square(q)) return false;
        const int64_t y = isqrt(q);
        if (y % 3 == 0) return false;
        ys.push_back(y);
        return true;
    }
    for (int64_t y = 1;; ++y) {
        if (y % 3 == 0) continue;
        const int64_t term = checked::mul(b, checked::mul(y, y));
        if (term > remaining) return false;
        ys.push_back(y);
        if (coprime3_search(diag.subspan(1), remaining - term, ys)) return true;
        ys.pop_back();
    }
}

}  // namespace detail

/// A vector (y_1, ..., y_k), every y_i prime to 3, with sum b_i y_i^2 == value.
inline std::optional<std::vector<int64_t>> coprime3_witness(std::span<const int64_t> diag, int64_t value) {
    if (diag.empty()) throw PreconditionError("empty diagonal form");
    for (auto b : diag)
        if (b < 1) throw PreconditionError("diagonal entries must be positive");
    std::vector<int64_t> ys;
    if (!detail::coprime3_search(diag, value, ys)) return std::nullopt;
    return ys;
}

/// value →₃ ⟨b_1, ..., b_k⟩.
inline bool represents_coprime3(std::span<const int64_t> diag, int64_t value) {
    return coprime3_witness(diag, value).has_value();
}

inline bool represents_coprime3(std::initializer_list<int64_t> diag, int64_t value) {
    return represents_coprime3(std::span<const int64_t>(diag.begin(), diag.size()), value);
}

/// u → p8(a) decided through 3u + Σa_i →₃ ⟨a_1, ..., a_k⟩.
inline bool octagonal_via_lattice(const CoefficientVector& a, int64_t u) {
    if (u < 0) throw PreconditionError("value must be nonnegative");
    return represents_coprime3(a.values(), checked::add(checked::mul(3, u), a.sum()));
}

/// For v ≡ 0 mod 3 with x^2 + 2y^2 = v solvable, a solution with xy prime
/// to 3 (searched with y ascending, x >= 0), or nullopt if none exists.
inline std::optional<std::pair<int64_t, int64_t>> jones_strengthen(int64_t v) {
    if (v <= 0 || v % 3 != 0) throw PreconditionError("value must be a positive multiple of 3");
    bool solvable = false;
    std::optional<std::pair<int64_t, int64_t>> best;
    for (int64_t y = 0; 2 * y * y <= v; ++y) {
        const int64_t rest = v - 2 * y * y;
        if (!is_square(rest)) continue;
        solvable = true;
        const int64_t x = isqrt(rest);
        if (x % 3 != 0 && y % 3 != 0) {
            best = std::pair{x, y};
            break;
        }
    }
    if (!solvable) throw PreconditionError("x^2 + 2y^2 = " + std::to_string(v) + " has no solution");
    return best;
}

struct TwoThreesParams {
    int64_t l, alpha, beta;
    bool operator==(const TwoThreesParams&) const = default;
};

/// l = lcm(a,b), α = (a+b) l^2 / (ab), β = (α - a - b - 6) / 3, for a ≡ b ≢ 0 mod 3.
inline TwoThreesParams two_threes_params(int64_t a, int64_t b) {
    if (a < 1 || b < 1) throw PreconditionError("coefficients must be positive");
    if (mod(a, 3) == 0 || mod(a, 3) != mod(b, 3)) throw PreconditionError("need a ≡ b ≢ 0 mod 3");
    const int64_t l = std::lcm(a, b);
    const int64_t num = checked::mul(checked::add(a, b), checked::mul(l, l));
    const int64_t ab = checked::mul(a, b);
    if (num % ab != 0) throw PreconditionError("α is not an integer");
    const int64_t alpha = num / ab;
    const int64_t rest = alpha - a - b - 6;
    if (mod(rest, 3) != 0) throw PreconditionError("β is not an integer");
    return {l, alpha, rest / 3};
}

/// u - αP8(w) - β is nonnegative, ≡ 2 mod 3 and represented by ⟨1,1,3(a+b)⟩;
/// this forces u → p8(3,3,a,b).
inline bool two_threes_sufficient(int64_t a, int64_t b, int64_t u, int64_t w) {
    const auto p = two_threes_params(a, b);
    const int64_t v = checked::sub(checked::sub(u, checked::mul(p.alpha, p8(w))), p.beta);
    if (v < 0 || mod(v, 3) != 2) return false;
    return represents_lattice(GramMatrix::diagonal(1, 1, 3 * (a + b)), v);
}

// ---------------------------------------------------------------------------
// Residue transfer

struct ResidueVectorLess {
    bool operator()(const Vec3& x, const Vec3& y) const { return x < y; }
};
using ResidueSet = std::set<Vec3, ResidueVectorLess>;

inline Vec3 reduce(const Vec3& v, int64_t d) { return {mod(v[0], d), mod(v[1], d), mod(v[2], d)}; }

inline Mat3 reduce(const Mat3& t, int64_t d) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = mod(t[i][j], d);
    return r;
}

/// R(N, d, a) = {v in H_d^3 : ᵗvNv ≡ a mod d}.
inline ResidueSet residues(const GramMatrix& n, int64_t d, int64_t a) {
    if (d < 1 || a < 0 || a >= d) throw PreconditionError("need 0 <= a < d");
    ResidueSet out;
    for (int64_t x = 0; x < d; ++x)
        for (int64_t y = 0; y < d; ++y)
            for (int64_t z = 0; z < d; ++z)
                if (mod(gram_value(n, {x, y, z}), d) == a) out.insert({x, y, z});
    return out;
}

/// Lexicographic order on matrices.
struct MatrixLess {
    bool operator()(const Mat3& x, const Mat3& y) const { return x < y; }
};

/// R(M, N, d) = {T in M_3(Z) : ᵗT M T = d^2 N}, returned sorted.
inline std::vector<Mat3> transfer_matrices(const GramMatrix& m, const GramMatrix& n, int64_t d,
                                           int64_t budget = kDefaultEnumerationBudget) {
    if (d < 1) throw PreconditionError("d must be positive");
    const int64_t d2 = checked::mul(d, d);
    std::array<std::vector<Vec3>, 3> cols;
    int64_t remaining = budget;
    for (int j = 0; j < 3; ++j) {
        const int64_t target = checked::mul(d2, n(j, j));
        for_each_representation(
            m, target,
            [&](const Vec3& x) {
                cols[j].push_back(x);
                return true;
            },
            remaining);
        remaining -= static_cast<int64_t>(cols[j].size());
    }
    const int64_t t01 = checked::mul(d2, n(0, 1)), t02 = checked::mul(d2, n(0, 2)), t12 = checked::mul(d2, n(1, 2));
    std::vector<Mat3> out;
    for (const auto& c0 : cols[0])
        for (const auto& c1 : cols[1]) {
            if (bilinear(m, c0, c1) != t01) continue;
            for (const auto& c2 : cols[2]) {
                if (bilinear(m, c0, c2) != t02 || bilinear(m, c1, c2) != t12) continue;
                out.push_back(Mat3{{{c0[0], c1[0], c2[0]}, {c0[1], c1[1], c2[1]}, {c0[2], c1[2], c2[2]}}});
            }
        }
    std::sort(out.begin(), out.end(), MatrixLess{});
    return out;
}

inline bool is_transfer(const GramMatrix& m, const GramMatrix& n, int64_t d, const Mat3& t) {
    const Mat3 lhs = multiply(multiply(transpose(t), m.entries()), t);
    return lhs == scaled(n.entries(), checked::mul(d, d));
}

/// Outcome of splitting R(N,d,a) into vectors that transfer into M and the rest.
struct TransferAnalysis {
    ResidueSet all;   // R(N, d, a)
    ResidueSet good;  // R_M(N, d, a)
    ResidueSet bad;   // R(N, d, a) - R_M(N, d, a)
    std::size_t transfer_count = 0;
};

inline TransferAnalysis analyze_transfer(const GramMatrix& m, const GramMatrix& n, int64_t d, int64_t a,
                                         int64_t budget = kDefaultEnumerationBudget) {
    TransferAnalysis out;
    out.all = residues(n, d, a);
    const auto ts = transfer_matrices(m, n, d, budget);
    out.transfer_count = ts.size();
    std::set<Mat3, MatrixLess> reduced_set;
    for (const auto& t : ts) reduced_set.insert(reduce(t, d));
    const std::vector<Mat3> reduced(reduced_set.begin(), reduced_set.end());
    for (const auto& v : out.all) {
        bool ok = false;
        for (const auto& t : reduced) {
            bool zero = true;
            for (int i = 0; i < 3 && zero; ++i) zero = (t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2]) % d == 0;
            if (zero) {
                ok = true;
                break;
            }
        }
        (ok ? out.good : out.bad).insert(v);
    }
    return out;
}

/// N ≺_{d,a} M.
inline bool check_prec(const GramMatrix& m, const GramMatrix& n, int64_t d, int64_t a,
                       int64_t budget = kDefaultEnumerationBudget) {
    return analyze_transfer(m, n, d, a, budget).bad.empty();
}

}  // namespace octagonal
