// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. All comparisons are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "octagonal/bad_partition.hpp"
#include "octagonal/congruence.hpp"
#include "octagonal/escalation.hpp"
#include "octagonal/fixtures.hpp"
#include "octagonal/lattice.hpp"
#include "octagonal/tables.hpp"
#include "oracles.hpp"

namespace {

using namespace octagonal;
using CV = CoefficientVector;

std::string data_path(const std::string& name) { return std::string(OCTAGONAL_DATA_DIR) + "/" + name; }

struct Check {
    std::ostringstream notes;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) notes << what;
            else notes << "; " << what;
            ok = false;
        }
    }
};

template <class T>
std::string show(const std::vector<T>& v) {
    std::ostringstream s;
    s << "{";
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str() + "}";
}

void escalation_two(Check& c) {
    const auto t = run_escalation(2, kDefaultBound);
    c.expect(t.terminated_at == 6, "l(2) = " + std::to_string(t.terminated_at));
    if (t.terminated_at < 6) return;
    auto sz = [&](int k, const char* which) {
        const auto& d = t.depth(k);
        const std::string w = which;
        return w == "E" ? d.E.size() : w == "U" ? d.U.size() : w == "NU" ? d.NU.size() : d.A.size();
    };
    const struct {
        int k;
        const char* set;
        std::size_t want;
    } counts[] = {{3, "E", 2},  {4, "E", 9},   {4, "U", 3},  {5, "E", 52}, {5, "U", 49}, {5, "NU", 39},
                  {5, "A", 3},  {6, "E", 30},  {6, "U", 30}, {6, "NU", 15}, {6, "A", 0}};
    for (const auto& x : counts)
        c.expect(sz(x.k, x.set) == x.want, std::string("|") + x.set + "(" + std::to_string(x.k) +
                                               ")| = " + std::to_string(sz(x.k, x.set)));
    c.expect(t.depth(4).U == std::vector<CV>{{2, 2, 3, 4}, {2, 3, 4, 5}, {2, 3, 4, 8}}, "U(4) differs");
    std::vector<int64_t> p3, p4;
    for (const auto& a : t.depth(3).A) p3.push_back(t.depth(3).psi.at(a).value);
    for (const auto& a : t.depth(4).A) p4.push_back(t.depth(4).psi.at(a).value);
    std::multiset<int64_t> s4(p4.begin(), p4.end());
    c.expect(std::multiset<int64_t>(p3.begin(), p3.end()) == std::multiset<int64_t>{6, 8}, "depth 3 truants " + show(p3));
    c.expect(s4 == std::multiset<int64_t>{8, 9, 14, 11, 12, 18}, "depth 4 truants " + show(p4));
}

void census(Check& c) {
    const std::size_t want[] = {0, 0, 57, 147, 22};
    for (int n = 2; n <= 4; ++n) {
        const auto rows = load_table(data_path("table" + std::to_string(n) + ".txt"));
        const auto count = table_census(rows);
        c.expect(count == want[n], "table " + std::to_string(n) + " census " + std::to_string(count));
        const auto r = verify_table(rows, n, run_escalation(n));
        c.expect(r.equal, "table " + std::to_string(n) + " differs from escalation (" +
                              std::to_string(r.only_in_table.size()) + " only in table, " +
                              std::to_string(r.only_in_trace.size()) + " only in trace)");
    }
}

void criterion_sets(Check& c) {
    const std::vector<std::vector<int64_t>> want{{2, 3, 4, 6, 8, 9, 11, 12, 14, 18},
                                                 {3, 4, 5, 6, 13, 14, 16, 17, 21, 22, 27, 36},
                                                 {4, 5, 6, 7, 8, 23, 28}};
    for (int64_t n = 2; n <= 10; ++n) {
        std::vector<int64_t> expect;
        if (n <= 4) expect = want[static_cast<std::size_t>(n - 2)];
        else
            for (int64_t v = n; v <= 2 * n; ++v) expect.push_back(v);
        const auto got = criterion_set(run_escalation(n)).values;
        c.expect(got == expect, "C(" + std::to_string(n) + ") = " + show(got));
    }
}

void z_table(Check& c) {
    const auto rows = load_table(data_path("table1.txt"));
    c.expect(rows.size() == 26, std::to_string(rows.size()) + " rows");
    for (const auto& row : rows) {
        const auto r = verify_Z(row, kDefaultBound);
        c.expect(r.ok, r.coeffs.to_string() + " gives " + show(r.actual));
    }
}

void families(Check& c) {
    for (int64_t n = 5; n <= 12; ++n) {
        const auto t = run_escalation(n);
        const auto crit = criterion_set(t);
        c.expect(check_tight_universal(family_g(n), n, crit).tight(), "g_" + std::to_string(n) + " not tight");
        c.expect(check_tight_universal(family_h(n), n, crit).tight(), "h_" + std::to_string(n) + " not tight");
        if (n <= 8)
            c.expect(t.depth(static_cast<int>(n) + 1).NU == std::vector<CV>{family_g(n), family_h(n)},
                     "NU(" + std::to_string(n + 1) + ") differs");
    }
}

void prec_fixtures(Check& c) {
    const auto fx = load_fixtures(data_path("fixtures.txt"));
    c.expect(fx.prec.size() >= 20, std::to_string(fx.prec.size()) + " instances");
    for (const auto& f : fx.prec)
        c.expect(check_prec(f.M, f.N, f.d, f.a), f.name + " a=" + std::to_string(f.a));
}

void bad_fixtures(Check& c) {
    const auto fx = load_fixtures(data_path("fixtures.txt"));
    for (const auto& f : fx.bad) {
        try {
            const auto r = check_bad_partition(f.instance);
            c.expect(r.excluded == f.excluded, f.instance.name + " excluded " + show(r.excluded));
            if (f.expected_bad) c.expect(r.bad == *f.expected_bad, f.instance.name + " bad set differs");
        } catch (const BadPartitionError& e) {
            c.expect(false, e.what());
        }
    }
    const auto& first = fx.bad.front();
    c.expect(first.excluded == std::vector<int64_t>{12}, "first lem234 class");
    c.expect(fx.bad[1].excluded == std::vector<int64_t>{3}, "second lem234 class");
    auto corrupted = first.instance;
    corrupted.transforms = {scaled(identity3(), corrupted.d)};
    bool failed = false;
    try {
        check_bad_partition(corrupted);
    } catch (const BadPartitionError& e) {
        failed = e.condition == BadPartitionError::Condition::FiniteOrder;
    }
    c.expect(failed, "corrupted instance did not fail condition (i)");
}

void property_suites(Check& c) {
    int failures = 0;
    for (int64_t v = 3; v <= 10000; v += 3) {
        bool solvable = false;
        for (int64_t y = 0; 2 * y * y <= v && !solvable; ++y) solvable = is_square(v - 2 * y * y);
        if (solvable && !jones_strengthen(v)) ++failures;
    }
    c.expect(failures == 0, "Jones fails " + std::to_string(failures));
    for (const auto& lemma : congruence_lemmas()) {
        int bad = 0;
        for (int64_t v = 1; v <= 10000; ++v)
            if (lemma.qualifies(v) && !represents_coprime3(lemma.diagonal, v)) ++bad;
        c.expect(bad == 0, lemma.name + " fails " + std::to_string(bad));
    }
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> len(1, 5), coef(1, 10), val(0, 200);
    int mismatches = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<int64_t> co(static_cast<std::size_t>(len(rng)));
        for (auto& x : co) x = coef(rng);
        const auto a = CV::from_unsorted(co);
        const int64_t u = val(rng);
        if (represents(a, u) != octagonal_via_lattice(a, u)) ++mismatches;
    }
    c.expect(mismatches == 0, "correspondence mismatches " + std::to_string(mismatches));
    const auto s2233 = build_sieve({2, 2, 3, 3}, 10000);
    int gaps = 0;
    for (int64_t u = 1; u <= 10000; ++u)
        if (u % 4 != 1 && u != 11 && u != 14 && !s2233[u]) ++gaps;
    c.expect(gaps == 0, "p8(2,2,3,3) gaps " + std::to_string(gaps));
    for (int64_t t : {1, 2, 3, 5, 6, 7, 9, 10}) {
        const auto s = build_sieve(CV::from_unsorted({2, 2, 3, 3, t}), 2000);
        c.expect(!s.first_missing(t + 15, 2000), "p8(2,2,3,3," + std::to_string(t) + ") gap");
    }
}

void oracle_equivalence(Check& c) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> len(1, 4), coef(1, 6);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int64_t> co(static_cast<std::size_t>(len(rng)));
        for (auto& x : co) x = coef(rng);
        const auto a = CV::from_unsorted(co);
        const auto want = oracle::represented(std::vector<int64_t>(a.begin(), a.end()), 300);
        const auto sieve = build_sieve(a, 300);
        for (int64_t v = 0; v <= 300; ++v)
            if (sieve[v] != want[static_cast<std::size_t>(v)]) ++mismatches;
    }
    c.expect(mismatches == 0, "mismatches " + std::to_string(mismatches));
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"escalation n=2 cardinalities and truants", escalation_two},
        {"census 57/147/22 and set equality with escalation", census},
        {"criterion sets C(2..10)", criterion_sets},
        {"Z-sets of all 26 rows at bound 50000", z_table},
        {"g_n, h_n tight for n=5..12; sole NU(n+1) members for n=5..8", families},
        {"prec instances hold", prec_fixtures},
        {"bad-partition instances and negative control", bad_fixtures},
        {"property suites up to 10^4", property_suites},
        {"sieve vs brute force on 200 random forms", oracle_equivalence},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " (" << ms
                  << " ms)";
        if (!c.ok) std::cout << " -- " << c.notes.str();
        std::cout << "\n";
        failed += !c.ok;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
