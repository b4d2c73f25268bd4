#pragma once

// Escalation over octagonal forms: truants, the E/U/NU/A recursion and the
// finite criterion set C(n) for tight T(n)-universality.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "polygonal.hpp"

namespace octagonal {

inline constexpr int64_t kDefaultBound = 50000;

class EscalationError : public std::runtime_error {
public:
    explicit EscalationError(const std::string& what) : std::runtime_error(what) {}
};

struct PsiResult {
    enum class Kind { Finite, BoundCertifiedInfinite };
    Kind kind = Kind::Finite;
    int64_t value = 0;  // the truant, or the certifying bound

    static PsiResult finite(int64_t v) { return {Kind::Finite, v}; }
    static PsiResult infinite(int64_t bound) { return {Kind::BoundCertifiedInfinite, bound}; }
    bool is_finite() const { return kind == Kind::Finite; }
    bool operator==(const PsiResult&) const = default;
};

inline CoefficientVector insert_sorted(const CoefficientVector& a, int64_t g) { return a.insert(g); }

/// b ≺ a: b is a proper sub-multiset of a (both sorted, so order is preserved).
inline bool is_proper_subsequence(const CoefficientVector& b, const CoefficientVector& a) {
    if (b.size() >= a.size()) return false;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size() && j < b.size(); ++i)
        if (a[i] == b[j]) ++j;
    return j == b.size();
}

inline PsiResult psi_from_sieve(const RepresentationSieve& sieve, int64_t n) {
    if (auto v = sieve.first_missing(n, sieve.bound())) return PsiResult::finite(*v);
    return PsiResult::infinite(sieve.bound());
}

/// Smallest v >= n not represented by p8(a), searched up to bound.
inline PsiResult psi(const CoefficientVector& a, int64_t n, int64_t bound = kDefaultBound) {
    if (n < 1) throw PreconditionError("n must be >= 1");
    if (bound < 2 * n) throw PreconditionError("bound must be >= 2n");
    return psi_from_sieve(build_sieve(a, bound), n);
}

/// The admissible next coefficients {g : n <= g <= psi - n} ∪ {psi}.
inline std::vector<int64_t> escalation_coefficients(int64_t psi_value, int64_t n) {
    if (psi_value < n) throw PreconditionError("truant must be >= n");
    std::vector<int64_t> g;
    for (int64_t x = n; x <= psi_value - n; ++x) g.push_back(x);
    if (g.empty() || g.back() != psi_value) g.push_back(psi_value);
    return g;
}

inline std::vector<CoefficientVector> escalation_children(const CoefficientVector& a, int64_t psi_value,
                                                          int64_t n) {
    std::vector<CoefficientVector> out;
    for (auto g : escalation_coefficients(psi_value, n)) out.push_back(a.insert(g));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct DepthRecord {
    int k = 0;
    std::vector<CoefficientVector> E, U, NU, A;  // each sorted
    std::map<CoefficientVector, PsiResult> psi;  // for every member of E
};

struct EscalationTrace {
    int64_t n = 0;
    int64_t bound = 0;
    std::vector<DepthRecord> depths;  // depths[k-1] holds depth k
    int terminated_at = 0;            // the first l with A(l) empty

    const DepthRecord& depth(int k) const {
        if (k < 1 || k > static_cast<int>(depths.size())) throw PreconditionError("depth out of range");
        return depths[static_cast<std::size_t>(k - 1)];
    }
};

struct EscalationOptions {
    int64_t bound = kDefaultBound;
    unsigned jobs = 1;
    int depth_limit = 0;  // 0 selects 3n + 10
};

namespace detail {

inline std::vector<CoefficientVector> new_members(const std::vector<CoefficientVector>& universal,
                                                  const std::vector<DepthRecord>& earlier) {
    std::vector<CoefficientVector> out;
    for (const auto& a : universal) {
        bool is_new = true;
        for (const auto& rec : earlier) {
            for (const auto& b : rec.U) {
                if (is_proper_subsequence(b, a)) {
                    is_new = false;
                    break;
                }
            }
            if (!is_new) break;
        }
        if (is_new) out.push_back(a);
    }
    return out;
}

}  // namespace detail

inline EscalationTrace run_escalation(int64_t n, const EscalationOptions& opt = {}) {
    if (n < 1) throw PreconditionError("n must be >= 1");
    if (opt.bound < 2 * n) throw PreconditionError("bound must be >= 2n");
    const int limit = opt.depth_limit > 0 ? opt.depth_limit : static_cast<int>(3 * n + 10);

    EscalationTrace trace;
    trace.n = n;
    trace.bound = opt.bound;

    std::vector<RepresentationSieve> sieves;
    sieves.push_back(build_sieve(CoefficientVector{n}, opt.bound));

    for (int k = 1;; ++k) {
        if (k > limit)
            throw EscalationError("escalation exceeded depth limit " + std::to_string(limit) +
                                  "; the bound is probably too small");
        DepthRecord rec;
        rec.k = k;
        for (const auto& s : sieves) rec.E.push_back(s.coeffs());

        std::vector<PsiResult> results(sieves.size());
        parallel_for(sieves.size(), opt.jobs, [&](std::size_t i) { results[i] = psi_from_sieve(sieves[i], n); });

        std::vector<std::size_t> alive;
        for (std::size_t i = 0; i < sieves.size(); ++i) {
            rec.psi.emplace(rec.E[i], results[i]);
            if (results[i].is_finite()) {
                rec.A.push_back(rec.E[i]);
                alive.push_back(i);
            } else {
                rec.U.push_back(rec.E[i]);
            }
        }
        rec.NU = detail::new_members(rec.U, trace.depths);
        trace.depths.push_back(std::move(rec));

        if (alive.empty()) {
            trace.terminated_at = k;
            return trace;
        }

        // Children keyed by vector; the first parent (in sorted order) that
        // produces a child supplies its sieve.
        std::map<CoefficientVector, std::pair<std::size_t, int64_t>> children;
        for (auto i : alive) {
            const auto& parent = sieves[i].coeffs();
            for (auto g : escalation_coefficients(results[i].value, n))
                children.try_emplace(parent.insert(g), i, g);
        }
        std::vector<std::pair<std::size_t, int64_t>> jobs;
        jobs.reserve(children.size());
        for (const auto& [child, src] : children) jobs.push_back(src);

        std::vector<std::optional<RepresentationSieve>> next(jobs.size());
        parallel_for(jobs.size(), opt.jobs,
                     [&](std::size_t j) { next[j].emplace(sieves[jobs[j].first].extended(jobs[j].second)); });
        sieves.clear();
        for (auto& s : next) sieves.push_back(std::move(*s));
    }
}

inline EscalationTrace run_escalation(int64_t n, int64_t bound) {
    EscalationOptions opt;
    opt.bound = bound;
    return run_escalation(n, opt);
}

/// NU(k).
inline const std::vector<CoefficientVector>& new_tight_list(const EscalationTrace& trace, int k) {
    return trace.depth(k).NU;
}

/// ∪_k NU(k), sorted.
inline std::vector<CoefficientVector> all_new_tight(const EscalationTrace& trace) {
    std::vector<CoefficientVector> out;
    for (const auto& rec : trace.depths) out.insert(out.end(), rec.NU.begin(), rec.NU.end());
    std::sort(out.begin(), out.end());
    return out;
}

struct CriterionSet {
    int64_t n = 0;
    std::vector<int64_t> values;  // sorted, deduplicated
};

/// C(n) = {n} ∪ {psi(a) : a in A(k), k < l}.
inline CriterionSet criterion_set(const EscalationTrace& trace) {
    if (trace.terminated_at == 0) throw PreconditionError("trace did not terminate");
    CriterionSet c;
    c.n = trace.n;
    c.values.push_back(trace.n);
    for (const auto& rec : trace.depths)
        for (const auto& a : rec.A) c.values.push_back(rec.psi.at(a).value);
    std::sort(c.values.begin(), c.values.end());
    c.values.erase(std::unique(c.values.begin(), c.values.end()), c.values.end());
    return c;
}

struct Verdict {
    enum class Kind { Tight, RepresentsBelowN, MissesCriterion, MissesInBound };
    Kind kind = Kind::Tight;
    int64_t value = 0;  // smallest offending value; 0 for Tight

    bool tight() const { return kind == Kind::Tight; }
    bool operator==(const Verdict&) const = default;
};

inline std::string to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Tight: return "Tight";
        case Verdict::Kind::RepresentsBelowN: return "RepresentsBelowN";
        case Verdict::Kind::MissesCriterion: return "MissesCriterion";
        case Verdict::Kind::MissesInBound: return "MissesInBound";
    }
    return "?";
}

inline Verdict check_tight_universal(const CoefficientVector& a, int64_t n, const CriterionSet& c,
                                     int64_t bound = kDefaultBound) {
    if (c.n != n) throw PreconditionError("criterion set belongs to a different n");
    int64_t top = bound;
    if (!c.values.empty()) top = std::max(top, c.values.back());
    const auto sieve = build_sieve(a, top);
    if (auto v = sieve.first_present(1, n - 1)) return {Verdict::Kind::RepresentsBelowN, *v};
    for (auto v : c.values)
        if (!sieve[v]) return {Verdict::Kind::MissesCriterion, v};
    if (auto v = sieve.first_missing(n, bound)) return {Verdict::Kind::MissesInBound, *v};
    return {};
}

}  // namespace octagonal
