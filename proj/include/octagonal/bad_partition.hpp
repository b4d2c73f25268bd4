#pragma once

// Verification of bad-vector partitions: residue vectors of N that do not
// transfer into M are pushed around by infinite-order similitudes T_i of N,
// leaving only the square classes ᵗw_i N w_i along their fixed axes.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace octagonal {

class BadPartitionError : public std::runtime_error {
public:
    enum class Condition {
        Partition,      // blocks do not cover the bad set exactly
        NotSimilitude,  // ᵗT N T != d^2 N
        FiniteOrder,    // condition (i)
        Orbit,          // condition (ii)
        NoEigenvector,
    };

    BadPartitionError(Condition c, std::size_t block, Vec3 witness, const std::string& what)
        : std::runtime_error(what), condition(c), block(block), witness(witness) {}

    Condition condition;
    std::size_t block;
    Vec3 witness;
};

struct TransferInstance {
    std::string name;
    GramMatrix M;
    GramMatrix N;
    int64_t d = 1;
    int64_t a = 0;
    std::vector<ResidueSet> partition;  // empty: one block holding the whole bad set
    std::vector<Mat3> transforms;       // integral T_i with ᵗT_i N T_i = d^2 N
};

struct BadPartitionReport {
    ResidueSet bad;
    std::vector<Vec3> axes;           // w_i
    std::vector<int64_t> excluded;    // ᵗw_i N w_i
};

/// True iff (1/d) T has infinite order. A finite-order rational 3x3 matrix
/// has order 1, 2, 3, 4 or 6, so T^k == d^k I is tested for k <= 6.
inline bool has_infinite_order(const Mat3& t, int64_t d) {
    using Wide = std::array<std::array<__int128, 3>, 3>;
    Wide p{}, base{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p[i][j] = base[i][j] = t[i][j];
    __int128 scale = d;
    for (int k = 1; k <= 6; ++k) {
        bool is_identity = true;
        for (int i = 0; i < 3 && is_identity; ++i)
            for (int j = 0; j < 3 && is_identity; ++j) is_identity = p[i][j] == (i == j ? scale : 0);
        if (is_identity) return false;
        if (k == 6) break;
        Wide next{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) next[i][j] += p[i][l] * base[l][j];
        p = next;
        scale *= d;
    }
    return true;
}

/// Primitive w with (1/d) T w = det((1/d) T) w, first nonzero entry positive.
/// Requires the eigenspace to be a line.
inline std::optional<Vec3> similitude_axis(const Mat3& t, int64_t d) {
    const int64_t det = determinant(t);
    const int64_t d3 = checked::mul(checked::mul(d, d), d);
    if (det != d3 && det != -d3) return std::nullopt;
    const int64_t lambda = det / d3 * d;
    Mat3 k = t;
    for (int i = 0; i < 3; ++i) k[i][i] = checked::sub(k[i][i], lambda);
    // rank 2: the kernel is spanned by the cross product of two independent rows
    for (int r1 = 0; r1 < 3; ++r1)
        for (int r2 = r1 + 1; r2 < 3; ++r2) {
            const auto& x = k[r1];
            const auto& y = k[r2];
            Vec3 w{checked::sub(checked::mul(x[1], y[2]), checked::mul(x[2], y[1])),
                   checked::sub(checked::mul(x[2], y[0]), checked::mul(x[0], y[2])),
                   checked::sub(checked::mul(x[0], y[1]), checked::mul(x[1], y[0]))};
            if (w == Vec3{0, 0, 0}) continue;
            const int64_t g = std::gcd(std::gcd(w[0], w[1]), w[2]);
            for (auto& c : w) c /= g;
            for (auto c : w) {
                if (c == 0) continue;
                if (c < 0)
                    for (auto& e : w) e = -e;
                break;
            }
            if (mat_vec(k, w) != Vec3{0, 0, 0}) return std::nullopt;
            return w;
        }
    return std::nullopt;  // rank <= 1
}

/// Checks both conditions for every block and returns the excluded square
/// classes. Throws BadPartitionError naming the first violation.
inline BadPartitionReport check_bad_partition(const TransferInstance& inst,
                                              int64_t budget = kDefaultEnumerationBudget) {
    using C = BadPartitionError::Condition;
    const int64_t d = inst.d;
    const auto analysis = analyze_transfer(inst.M, inst.N, d, inst.a, budget);
    BadPartitionReport report;
    report.bad = analysis.bad;

    std::vector<ResidueSet> blocks = inst.partition;
    if (blocks.empty()) blocks.push_back(analysis.bad);
    if (blocks.size() != inst.transforms.size())
        throw BadPartitionError(C::Partition, 0, {}, inst.name + ": one transform is needed per block");
    ResidueSet covered;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (const auto& v : blocks[i]) {
            if (!analysis.bad.contains(v))
                throw BadPartitionError(C::Partition, i, v, inst.name + ": block contains a vector outside the bad set");
            if (!covered.insert(v).second)
                throw BadPartitionError(C::Partition, i, v, inst.name + ": blocks overlap");
        }
    if (covered.size() != analysis.bad.size()) {
        for (const auto& v : analysis.bad)
            if (!covered.contains(v))
                throw BadPartitionError(C::Partition, 0, v, inst.name + ": bad vector not covered by any block");
    }

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Mat3& t = inst.transforms[i];
        if (!is_transfer(inst.N, inst.N, d, t))
            throw BadPartitionError(C::NotSimilitude, i, {}, inst.name + ": T is not in R(N,N,d)");
        if (!has_infinite_order(t, d))
            throw BadPartitionError(C::FiniteOrder, i, {}, inst.name + ": (1/d)T has finite order");
        const Mat3 tr = reduce(t, d);
        for (const auto& v : blocks[i]) {
            const Vec3 tv = mat_vec(t, v);
            if (mod(tv[0], d) || mod(tv[1], d) || mod(tv[2], d))
                throw BadPartitionError(C::Orbit, i, v, inst.name + ": (1/d)Tv is not integral");
            const Vec3 base{tv[0] / d, tv[1] / d, tv[2] / d};
            // (1/d) T (v + d s) = (1/d) T v + T s for every lift, s in H_d^3
            for (int64_t x = 0; x < d; ++x)
                for (int64_t y = 0; y < d; ++y)
                    for (int64_t z = 0; z < d; ++z) {
                        Vec3 img{};
                        for (int r = 0; r < 3; ++r) img[r] = mod(base[r] + tr[r][0] * x + tr[r][1] * y + tr[r][2] * z, d);
                        if (!blocks[i].contains(img) && !analysis.good.contains(img))
                            throw BadPartitionError(C::Orbit, i, v, inst.name + ": orbit leaves P_i ∪ R_M(N,d,a)");
                    }
        }
        auto w = similitude_axis(t, d);
        if (!w) throw BadPartitionError(C::NoEigenvector, i, {}, inst.name + ": no rational axis for (1/d)T");
        report.axes.push_back(*w);
        report.excluded.push_back(gram_value(inst.N, *w));
    }
    return report;
}

}  // namespace octagonal
