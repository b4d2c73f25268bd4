#pragma once

// Lattice fixture files.
//
// A fixture file is a list of sections. A section starts with a header line
// naming its kind (`[prec]`, `[bad]`, `[genus]`, `[identity]`) followed by
// `key = value` lines. Payloads are integers only: a list is separated by
// spaces or commas, matrix rows and vector lists by `;`. Lines starting
// with `#` are comments. Every section carries `name` and `lemma`.
//
//   [prec]      M, N (3x3), d, a (one or more residues)
//   [bad]       M, N, d, a, T (one line per block), block (optional, one
//               line per block; omitted means a single block holding the
//               whole bad set), excluded (expected classes), badset
//               (optional expected bad set)
//   [genus]     class (one line per isometry class)
//   [identity]  M, D (diagonal), A (rows are linear forms): ᵗA D A = M

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bad_partition.hpp"
#include "lattice.hpp"

namespace octagonal {

class FixtureError : public std::runtime_error {
public:
    explicit FixtureError(const std::string& what) : std::runtime_error(what) {}
};

struct FixtureSection {
    std::string kind;
    int line = 0;
    std::vector<std::pair<std::string, std::string>> entries;

    std::vector<std::string> all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries)
            if (k == key) out.push_back(v);
        return out;
    }

    bool has(const std::string& key) const { return !all(key).empty(); }

    const std::string& one(const std::string& key) const {
        const std::string* found = nullptr;
        for (const auto& [k, v] : entries) {
            if (k != key) continue;
            if (found) throw FixtureError(where() + ": duplicate key '" + key + "'");
            found = &v;
        }
        if (!found) throw FixtureError(where() + ": missing key '" + key + "'");
        return *found;
    }

    std::string where() const { return "fixture section at line " + std::to_string(line); }
};

namespace fixture_detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<int64_t> integers(const std::string& text, const std::string& context) {
    std::vector<int64_t> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t used = 0;
        int64_t v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw FixtureError(context + ": '" + token + "' is not an integer");
        out.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == ',') flush();
        else token += ch;
    }
    flush();
    return out;
}

inline std::vector<std::vector<int64_t>> rows(const std::string& text, const std::string& context) {
    std::vector<std::vector<int64_t>> out;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';'))
        if (!trim(row).empty()) out.push_back(integers(row, context));
    return out;
}

inline Mat3 matrix(const std::string& text, const std::string& context) {
    const auto r = rows(text, context);
    if (r.size() != 3) throw FixtureError(context + ": expected 3 matrix rows");
    Mat3 m{};
    for (int i = 0; i < 3; ++i) {
        if (r[i].size() != 3) throw FixtureError(context + ": expected 3 entries per row");
        for (int j = 0; j < 3; ++j) m[i][j] = r[i][j];
    }
    return m;
}

inline GramMatrix gram(const std::string& text, const std::string& context) {
    try {
        return GramMatrix(matrix(text, context));
    } catch (const PreconditionError& e) {
        throw FixtureError(context + ": " + e.what());
    }
}

inline ResidueSet vectors(const std::string& text, const std::string& context) {
    ResidueSet out;
    for (const auto& r : rows(text, context)) {
        if (r.size() != 3) throw FixtureError(context + ": expected 3-vectors");
        out.insert({r[0], r[1], r[2]});
    }
    return out;
}

inline int64_t scalar(const std::string& text, const std::string& context) {
    const auto v = integers(text, context);
    if (v.size() != 1) throw FixtureError(context + ": expected a single integer");
    return v[0];
}

}  // namespace fixture_detail

inline std::vector<FixtureSection> parse_fixture_sections(std::istream& in) {
    std::vector<FixtureSection> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = fixture_detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw FixtureError("line " + std::to_string(lineno) + ": bad section header");
            out.push_back({t.substr(1, t.size() - 2), lineno, {}});
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw FixtureError("line " + std::to_string(lineno) + ": expected key = value");
        if (out.empty()) throw FixtureError("line " + std::to_string(lineno) + ": entry outside a section");
        out.back().entries.emplace_back(fixture_detail::trim(t.substr(0, eq)), fixture_detail::trim(t.substr(eq + 1)));
    }
    return out;
}

struct PrecFixture {
    std::string name, lemma;
    GramMatrix M, N;
    int64_t d;
    int64_t a;
};

struct BadFixture {
    TransferInstance instance;
    std::string lemma;
    std::vector<int64_t> excluded;
    std::optional<ResidueSet> expected_bad;
};

struct GenusFixture {
    std::string name, lemma;
    std::vector<GramMatrix> classes;
};

struct IdentityFixture {
    std::string name, lemma;
    GramMatrix M;
    Vec3 diagonal;
    Mat3 forms;  // row i is the i-th linear form

    /// ᵗA diag(D) A
    Mat3 expanded() const {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) r[i][j] += forms[k][i] * diagonal[k] * forms[k][j];
        return r;
    }
};

struct FixtureSet {
    std::vector<PrecFixture> prec;
    std::vector<BadFixture> bad;
    std::vector<GenusFixture> genus;
    std::vector<IdentityFixture> identity;
};

inline FixtureSet parse_fixtures(std::istream& in) {
    using namespace fixture_detail;
    FixtureSet set;
    for (const auto& s : parse_fixture_sections(in)) {
        const std::string ctx = s.where();
        const std::string name = s.one("name");
        const std::string lemma = s.one("lemma");
        if (s.kind == "prec") {
            const auto m = gram(s.one("M"), ctx);
            const auto n = gram(s.one("N"), ctx);
            const int64_t d = scalar(s.one("d"), ctx);
            for (auto a : integers(s.one("a"), ctx)) {
                if (d < 1 || a < 0 || a >= d) throw FixtureError(ctx + ": need 0 <= a < d");
                set.prec.push_back({name, lemma, m, n, d, a});
            }
        } else if (s.kind == "bad") {
            BadFixture f{{name, gram(s.one("M"), ctx), gram(s.one("N"), ctx), scalar(s.one("d"), ctx),
                          scalar(s.one("a"), ctx), {}, {}},
                         lemma, integers(s.one("excluded"), ctx), std::nullopt};
            for (const auto& t : s.all("T")) f.instance.transforms.push_back(matrix(t, ctx));
            for (const auto& b : s.all("block")) f.instance.partition.push_back(vectors(b, ctx));
            if (s.has("badset")) f.expected_bad = vectors(s.one("badset"), ctx);
            set.bad.push_back(std::move(f));
        } else if (s.kind == "genus") {
            GenusFixture g{name, lemma, {}};
            for (const auto& c : s.all("class")) g.classes.push_back(gram(c, ctx));
            if (g.classes.empty()) throw FixtureError(ctx + ": genus needs at least one class");
            const int64_t det = g.classes.front().det();
            for (const auto& c : g.classes)
                if (c.det() != det) throw FixtureError(ctx + ": genus classes have different determinants");
            set.genus.push_back(std::move(g));
        } else if (s.kind == "identity") {
            const auto dv = integers(s.one("D"), ctx);
            if (dv.size() != 3) throw FixtureError(ctx + ": D must have 3 entries");
            set.identity.push_back({name, lemma, gram(s.one("M"), ctx), {dv[0], dv[1], dv[2]}, matrix(s.one("A"), ctx)});
        } else {
            throw FixtureError(ctx + ": unknown section kind '" + s.kind + "'");
        }
    }
    return set;
}

inline FixtureSet load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture file " + path);
    return parse_fixtures(in);
}

}  // namespace octagonal
