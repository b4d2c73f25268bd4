#include "octagonal/polygonal.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace {

using namespace octagonal;

TEST(PolygonalValue, Examples) {
    EXPECT_EQ(pm_value(8, 0), 0);
    EXPECT_EQ(pm_value(8, 2), 8);
    EXPECT_EQ(pm_value(8, -2), 16);
    EXPECT_EQ(pm_value(3, 3), 6);
    EXPECT_EQ(pm_value(4, 5), 25);
    for (int64_t x = -50; x <= 50; ++x) EXPECT_EQ(p8(x), 3 * x * x - 2 * x);
}

TEST(PolygonalValue, RejectsSmallOrder) { EXPECT_THROW(pm_value(2, 1), PreconditionError); }

TEST(PolygonalValue, OverflowIsReported) {
    EXPECT_THROW(p8(int64_t{1} << 40), OverflowError);
    EXPECT_THROW(pm_value(8, -(int64_t{1} << 40)), OverflowError);
}

TEST(PolygonalValue, ArgumentOrderIsIncreasing) {
    int64_t prev = -1;
    for (int64_t i = 0; i < 100; ++i) {
        const int64_t v = p8(octagonal_argument(i));
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(PolygonalValue, OctagonalTest) {
    const auto vals = octagonal_values_up_to(5000);
    std::set<int64_t> s(vals.begin(), vals.end());
    for (int64_t w = 0; w <= 5000; ++w) {
        EXPECT_EQ(is_octagonal(w), s.contains(w)) << w;
        if (is_octagonal(w)) EXPECT_EQ(p8(octagonal_root(w)), w);
    }
    EXPECT_FALSE(is_octagonal(-1));
}

TEST(OctagonalValues, Examples) {
    EXPECT_EQ(octagonal_values_up_to(25), (std::vector<int64_t>{0, 1, 5, 8, 16, 21}));
    EXPECT_EQ(octagonal_values_up_to(0), (std::vector<int64_t>{0}));
    EXPECT_EQ(octagonal_values_up_to(40), (std::vector<int64_t>{0, 1, 5, 8, 16, 21, 33, 40}));
}

TEST(CoefficientVector, Validation) {
    EXPECT_THROW(CoefficientVector(std::vector<int64_t>{}), PreconditionError);
    EXPECT_THROW(CoefficientVector({0, 1}), PreconditionError);
    EXPECT_THROW(CoefficientVector({3, 2}), PreconditionError);
    EXPECT_EQ(CoefficientVector::parse("5,2,3"), CoefficientVector({2, 3, 5}));
    EXPECT_THROW(CoefficientVector::parse("2,,3"), PreconditionError);
    EXPECT_THROW(CoefficientVector::parse("2,x"), PreconditionError);
    EXPECT_EQ(CoefficientVector({2, 2, 3}).to_string(), "2,2,3");
    EXPECT_EQ(CoefficientVector({2, 3, 4, 5}).sum(), 14);
}

TEST(CoefficientVector, OrderShorterFirst) {
    EXPECT_LT(CoefficientVector({9, 9}), CoefficientVector({1, 1, 1}));
    EXPECT_LT(CoefficientVector({2, 3}), CoefficientVector({2, 4}));
}

TEST(Sieve, SingleVariable) {
    const auto s = build_sieve({1}, 25);
    std::vector<int64_t> set;
    for (int64_t v = 0; v <= 25; ++v)
        if (s[v]) set.push_back(v);
    EXPECT_EQ(set, (std::vector<int64_t>{0, 1, 5, 8, 16, 21}));
}

TEST(Sieve, TableExamples) {
    const auto a = build_sieve({2, 2, 2, 3}, 20);
    EXPECT_FALSE(a[8]);
    EXPECT_FALSE(a[11]);
    const auto b = build_sieve({2, 2, 3, 4}, 100);
    EXPECT_TRUE(b[0]);
    EXPECT_FALSE(b[1]);
    for (int64_t v = 2; v <= 100; ++v) EXPECT_TRUE(b[v]) << v;
}

TEST(Sieve, BasicInvariants) {
    const CoefficientVector a{3, 7, 11};
    const auto s = build_sieve(a, 500);
    EXPECT_TRUE(s[0]);
    for (auto c : a) EXPECT_TRUE(s[c]);
    EXPECT_THROW(s.test(501), PreconditionError);
    EXPECT_THROW(s.test(-1), PreconditionError);
}

TEST(Sieve, ResourceLimit) {
    EXPECT_THROW(build_sieve({1}, RepresentationSieve::kMaxBound + 1), ResourceError);
    EXPECT_THROW(build_sieve({1}, -1), PreconditionError);
}

TEST(Sieve, WordBoundaries) {
    for (int64_t bound : {0, 1, 62, 63, 64, 65, 127, 128, 1000}) {
        const auto s = build_sieve({1}, bound);
        const auto o = oracle::represented({1}, bound);
        for (int64_t v = 0; v <= bound; ++v) EXPECT_EQ(s[v], o[static_cast<std::size_t>(v)]) << bound << " " << v;
        EXPECT_EQ(s.missing(0, bound).size(),
                  static_cast<std::size_t>(std::count(o.begin(), o.end(), false)));
    }
}

TEST(Sieve, FirstMissingAndPresent) {
    const auto s = build_sieve({2, 2, 2, 3}, 200);
    EXPECT_EQ(s.first_missing(2, 200), 8);
    EXPECT_EQ(s.first_missing(9, 200), 11);
    EXPECT_EQ(s.first_missing(12, 200), std::nullopt);
    EXPECT_EQ(s.first_present(1, 1), std::nullopt);
    EXPECT_EQ(s.first_present(1, 5), 2);
}

TEST(Represents, Examples) {
    EXPECT_FALSE(represents({2, 2, 2, 3}, 8));
    EXPECT_FALSE(represents({2, 2, 2, 3}, 11));
    EXPECT_TRUE(represents({1, 1, 3, 3}, 7));
    EXPECT_TRUE(oracle::represented({1, 1, 3, 3}, 7)[7]);
    EXPECT_TRUE(represents({5}, 0));
    EXPECT_THROW(represents({5}, -1), PreconditionError);
}

TEST(Witness, Examples) {
    EXPECT_EQ(witness({1}, 5), (std::vector<int64_t>{-1}));
    EXPECT_EQ(witness({2, 3}, 5), (std::vector<int64_t>{1, 1}));
    EXPECT_EQ(witness({2, 2, 2, 3}, 8), std::nullopt);
    EXPECT_EQ(witness({4}, 0), (std::vector<int64_t>{0}));
}

TEST(MissingInRange, Examples) {
    EXPECT_EQ(missing_in_range({2, 3, 4, 6}, 2, 100), (std::vector<int64_t>{18}));
    EXPECT_EQ(missing_in_range({3, 4, 5, 6, 9}, 3, 200), (std::vector<int64_t>{36}));
    EXPECT_EQ(missing_in_range({1}, 0, 4), (std::vector<int64_t>{2, 3, 4}));
    EXPECT_THROW(missing_in_range({1}, 5, 4), PreconditionError);
}

// 200 random forms, k <= 4, coefficients <= 6, values <= 300.
TEST(Property, OracleEquivalence) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> len(1, 4), coef(1, 6);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int64_t> c(static_cast<std::size_t>(len(rng)));
        for (auto& x : c) x = coef(rng);
        const auto a = CoefficientVector::from_unsorted(c);
        const std::vector<int64_t> sorted(a.begin(), a.end());
        const auto expect = oracle::represented(sorted, 300);
        const auto sieve = build_sieve(a, 300);
        for (int64_t v = 0; v <= 300; ++v) {
            const bool want = expect[static_cast<std::size_t>(v)];
            if (sieve[v] != want || represents(a, v) != want) ++mismatches;
        }
    }
    EXPECT_EQ(mismatches, 0);
}

TEST(Property, WitnessSoundness) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(1, 5), coef(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int64_t> c(static_cast<std::size_t>(len(rng)));
        for (auto& x : c) x = coef(rng);
        const auto a = CoefficientVector::from_unsorted(c);
        const auto sieve = build_sieve(a, 400);
        for (int64_t v = 0; v <= 400; ++v) {
            const auto w = witness(a, v);
            ASSERT_EQ(w.has_value(), sieve[v]) << a.to_string() << " " << v;
            if (w) EXPECT_EQ(form_value(a, *w), v);
        }
    }
}

TEST(Property, WitnessIsDeterministic) {
    for (int64_t v = 0; v < 200; ++v) EXPECT_EQ(witness({2, 3, 5, 7}, v), witness({2, 3, 5, 7}, v));
}

TEST(Property, MonotoneGrowth) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> len(1, 4), coef(1, 20);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int64_t> c(static_cast<std::size_t>(len(rng)));
        for (auto& x : c) x = coef(rng);
        const auto a = CoefficientVector::from_unsorted(c);
        const int64_t g = coef(rng);
        const auto base = build_sieve(a, 2000);
        const auto bigger = build_sieve(a.insert(g), 2000);
        EXPECT_TRUE(base.subset_of(bigger));
        const auto derived = base.extended(g);
        EXPECT_EQ(derived.coeffs(), a.insert(g));
        EXPECT_TRUE(std::equal(derived.words().begin(), derived.words().end(), bigger.words().begin()));
    }
}

TEST(Property, Scaling) {
    for (const CoefficientVector a : {CoefficientVector{1}, CoefficientVector{2, 3}, CoefficientVector{1, 2, 5}}) {
        const auto base = build_sieve(a, 1000);
        for (int64_t c = 1; c <= 5; ++c) {
            const auto s = build_sieve(a.scaled(c), 1000);
            for (int64_t v = 0; v <= 1000; ++v) EXPECT_EQ(s[v], v % c == 0 && base[v / c]) << c << " " << v;
        }
    }
}

}  // namespace
