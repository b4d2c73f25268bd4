#pragma once

// Declarative classification tables and their verification.
//
// One record per line, '#' starts a comment:
//
//   prefix=2,2,2,3 expect=Z:8,11          Z-set row (empty list means ∅)
//   prefix=2,2,2,3 slot=5..8!7 expect=tight:2
//   prefix=2,2,2,3,3 slot=3,11 expect=tight:2
//
// A slot is a last coefficient ranging over lo..hi minus the values after
// '!', or over an explicit list. Slot values must be >= the last prefix
// entry so every expansion is already sorted.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "escalation.hpp"
#include "polygonal.hpp"

namespace octagonal {

class TableError : public std::runtime_error {
public:
    explicit TableError(const std::string& what) : std::runtime_error(what) {}
};

struct TableSlot {
    std::vector<int64_t> values;  // the admissible last coefficients, ascending
};

struct TableRow {
    enum class Kind { ZSet, Tight };
    std::vector<int64_t> prefix;
    std::optional<TableSlot> slot;
    Kind kind = Kind::Tight;
    int64_t n = 0;             // for Tight
    std::vector<int64_t> z;    // for ZSet
    int line = 0;

    std::string to_string() const;
};

namespace table_detail {

inline std::vector<int64_t> int_list(const std::string& s, const std::string& ctx) {
    std::vector<int64_t> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size()) throw TableError(ctx + ": '" + tok + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

inline std::string join(const std::vector<int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline TableSlot parse_slot(const std::string& s, const std::string& ctx) {
    TableSlot slot;
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        slot.values = int_list(s, ctx);
    } else {
        const auto bang = s.find('!');
        const auto lo = int_list(s.substr(0, dots), ctx);
        const auto hi = int_list(s.substr(dots + 2, bang == std::string::npos ? std::string::npos : bang - dots - 2), ctx);
        if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw TableError(ctx + ": bad slot range");
        std::vector<int64_t> excluded;
        if (bang != std::string::npos) excluded = int_list(s.substr(bang + 1), ctx);
        for (auto x : excluded)
            if (x < lo[0] || x > hi[0]) throw TableError(ctx + ": excluded value outside the slot range");
        for (int64_t g = lo[0]; g <= hi[0]; ++g)
            if (std::find(excluded.begin(), excluded.end(), g) == excluded.end()) slot.values.push_back(g);
    }
    std::sort(slot.values.begin(), slot.values.end());
    slot.values.erase(std::unique(slot.values.begin(), slot.values.end()), slot.values.end());
    if (slot.values.empty()) throw TableError(ctx + ": empty slot");
    return slot;
}

}  // namespace table_detail

inline std::string TableRow::to_string() const {
    std::string s = "prefix=" + table_detail::join(prefix);
    if (slot) s += " slot=" + table_detail::join(slot->values);
    if (kind == Kind::Tight) s += " expect=tight:" + std::to_string(n);
    else s += " expect=Z:" + table_detail::join(z);
    return s;
}

inline TableRow parse_table_row(const std::string& text, int line = 0) {
    const std::string ctx = "table line " + std::to_string(line);
    TableRow row;
    row.line = line;
    bool have_prefix = false, have_expect = false;
    std::stringstream ss(text);
    std::string field;
    while (ss >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw TableError(ctx + ": expected key=value, got '" + field + "'");
        const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "prefix") {
            row.prefix = table_detail::int_list(value, ctx);
            have_prefix = true;
        } else if (key == "slot") {
            row.slot = table_detail::parse_slot(value, ctx);
        } else if (key == "expect") {
            if (value.rfind("tight:", 0) == 0) {
                const auto n = table_detail::int_list(value.substr(6), ctx);
                if (n.size() != 1 || n[0] < 1) throw TableError(ctx + ": bad tight index");
                row.kind = TableRow::Kind::Tight;
                row.n = n[0];
            } else if (value.rfind("Z:", 0) == 0) {
                row.kind = TableRow::Kind::ZSet;
                row.z = table_detail::int_list(value.substr(2), ctx);
                std::sort(row.z.begin(), row.z.end());
            } else {
                throw TableError(ctx + ": unknown expectation '" + value + "'");
            }
            have_expect = true;
        } else {
            throw TableError(ctx + ": unknown key '" + key + "'");
        }
    }
    if (!have_prefix || row.prefix.empty()) throw TableError(ctx + ": missing prefix");
    if (!have_expect) throw TableError(ctx + ": missing expect");
    if (!std::is_sorted(row.prefix.begin(), row.prefix.end()) || row.prefix.front() < 1)
        throw TableError(ctx + ": prefix must be positive and non-decreasing");
    if (row.slot && row.slot->values.front() < row.prefix.back())
        throw TableError(ctx + ": slot values must be >= the last prefix entry");
    if (row.kind == TableRow::Kind::ZSet && row.slot) throw TableError(ctx + ": Z rows take no slot");
    return row;
}

inline std::vector<TableRow> parse_table(std::istream& in) {
    std::vector<TableRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(parse_table_row(line, lineno));
    }
    return rows;
}

inline std::vector<TableRow> load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableError("cannot open table file " + path);
    return parse_table(in);
}

inline std::vector<CoefficientVector> expand_row(const TableRow& row) {
    std::vector<CoefficientVector> out;
    if (!row.slot) {
        out.emplace_back(row.prefix);
        return out;
    }
    for (auto g : row.slot->values) {
        auto v = row.prefix;
        v.push_back(g);
        out.emplace_back(std::move(v));
    }
    return out;
}

/// Every vector of the table, sorted and deduplicated.
inline std::vector<CoefficientVector> expand_table(const std::vector<TableRow>& table) {
    std::set<CoefficientVector> all;
    for (const auto& row : table)
        for (auto& v : expand_row(row)) all.insert(std::move(v));
    return {all.begin(), all.end()};
}

inline std::size_t table_census(const std::vector<TableRow>& table) { return expand_table(table).size(); }

struct TableReport {
    bool equal = false;
    std::size_t table_size = 0;
    std::size_t trace_size = 0;
    std::vector<CoefficientVector> only_in_table;
    std::vector<CoefficientVector> only_in_trace;
};

/// Compares the expanded table with the union of NU(k) from an escalation trace.
inline TableReport verify_table(const std::vector<TableRow>& table, int64_t n, const std::vector<CoefficientVector>& new_tight) {
    for (const auto& row : table)
        if (row.kind != TableRow::Kind::Tight || row.n != n)
            throw PreconditionError("table line " + std::to_string(row.line) + " is not a tight:" + std::to_string(n) + " row");
    const auto expanded = expand_table(table);
    std::vector<CoefficientVector> traced = new_tight;
    std::sort(traced.begin(), traced.end());
    traced.erase(std::unique(traced.begin(), traced.end()), traced.end());
    TableReport r;
    r.table_size = expanded.size();
    r.trace_size = traced.size();
    std::set_difference(expanded.begin(), expanded.end(), traced.begin(), traced.end(), std::back_inserter(r.only_in_table));
    std::set_difference(traced.begin(), traced.end(), expanded.begin(), expanded.end(), std::back_inserter(r.only_in_trace));
    r.equal = r.only_in_table.empty() && r.only_in_trace.empty();
    return r;
}

inline TableReport verify_table(const std::vector<TableRow>& table, int64_t n, const EscalationTrace& trace) {
    if (trace.n != n) throw PreconditionError("trace belongs to a different n");
    return verify_table(table, n, all_new_tight(trace));
}

struct ZReport {
    bool ok = false;
    CoefficientVector coeffs;
    std::vector<int64_t> expected;
    std::vector<int64_t> actual;
};

/// missing_in_range(a, a_1, B) against the row's Z.
inline ZReport verify_Z(const TableRow& row, int64_t bound = kDefaultBound) {
    if (row.kind != TableRow::Kind::ZSet) throw PreconditionError("not a Z row");
    CoefficientVector a(row.prefix);
    const int64_t top = row.z.empty() ? 0 : row.z.back();
    if (bound < 10 * (top + 1)) throw PreconditionError("bound too small for this Z row");
    auto actual = missing_in_range(a, a.front(), bound);
    const bool ok = actual == row.z;
    return {ok, std::move(a), row.z, std::move(actual)};
}

/// (n, n, n+1, ..., 2n-1)
inline CoefficientVector family_g(int64_t n) {
    if (n < 1) throw PreconditionError("n must be >= 1");
    std::vector<int64_t> v{n};
    for (int64_t x = n; x <= 2 * n - 1; ++x) v.push_back(x);
    return CoefficientVector(std::move(v));
}

/// (n, n+1, ..., 2n)
inline CoefficientVector family_h(int64_t n) {
    if (n < 1) throw PreconditionError("n must be >= 1");
    std::vector<int64_t> v;
    for (int64_t x = n; x <= 2 * n; ++x) v.push_back(x);
    return CoefficientVector(std::move(v));
}

/// FNV-1a, 64 bit.
inline uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TableError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

}  // namespace octagonal
