// octagonal: command line front end.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or resource error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "octagonal/bad_partition.hpp"
#include "octagonal/congruence.hpp"
#include "octagonal/escalation.hpp"
#include "octagonal/fixtures.hpp"
#include "octagonal/lattice.hpp"
#include "octagonal/tables.hpp"

#ifndef OCTAGONAL_DATA_DIR
#define OCTAGONAL_DATA_DIR "data"
#endif

namespace {

using json = nlohmann::ordered_json;
using namespace octagonal;
using CV = CoefficientVector;

struct Options {
    std::string coeffs;
    int64_t n = 0;
    int64_t bound = kDefaultBound;
    std::string out;
    unsigned jobs = 1;
    std::string fixtures;
    std::string data_dir = OCTAGONAL_DATA_DIR;
    std::string trace;
    std::string target;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(const CV& a) { return json(std::vector<int64_t>(a.begin(), a.end())); }

json to_json(const std::vector<CV>& v) {
    json arr = json::array();
    for (const auto& a : v) arr.push_back(to_json(a));
    return arr;
}

json to_json(const PsiResult& p) {
    if (p.is_finite()) return {{"kind", "finite"}, {"value", p.value}};
    return {{"kind", "bound_certified_infinite"}, {"bound", p.value}};
}

// A verification step collects counterexamples and a human-readable line.
struct Step {
    std::string name;
    bool ok = true;
    json details = json::object();
    json counterexamples = json::array();

    void fail(json witness) {
        ok = false;
        counterexamples.push_back(std::move(witness));
    }
};

class Runner {
public:
    explicit Runner(Options o) : opt_(std::move(o)) {}

    CV coeffs() const {
        if (opt_.coeffs.empty()) throw UsageError("--coeffs is required");
        return CV::parse(opt_.coeffs);
    }

    int64_t n() const {
        if (opt_.n < 1) throw UsageError("--n must be given and >= 1");
        return opt_.n;
    }

    EscalationOptions escalation_options() const {
        EscalationOptions e;
        e.bound = opt_.bound;
        e.jobs = opt_.jobs;
        return e;
    }

    std::string data(const std::string& name) const { return opt_.data_dir + "/" + name; }
    std::string fixtures_path() const { return opt_.fixtures.empty() ? data("fixtures.txt") : opt_.fixtures; }

    int sieve(json& inputs, json& results) {
        const CV a = coeffs();
        inputs = {{"coeffs", to_json(a)}, {"bound", opt_.bound}};
        const auto s = build_sieve(a, opt_.bound);
        const auto missing = s.missing(0, opt_.bound);
        results = {{"missing_count", missing.size()}, {"missing", missing}};
        std::cout << "p8(" << a.to_string() << ") missing in [0, " << opt_.bound << "]: ";
        for (std::size_t i = 0; i < missing.size() && i < 100; ++i) std::cout << (i ? "," : "") << missing[i];
        if (missing.size() > 100) std::cout << ",... (" << missing.size() << " values)";
        std::cout << "\n";
        return 0;
    }

    int psi_cmd(json& inputs, json& results) {
        const CV a = coeffs();
        inputs = {{"coeffs", to_json(a)}, {"n", n()}, {"bound", opt_.bound}};
        const auto p = psi(a, n(), opt_.bound);
        results = to_json(p);
        if (p.is_finite()) std::cout << "psi = " << p.value << "\n";
        else std::cout << "psi = infinity (no gap in [" << n() << ", " << opt_.bound << "])\n";
        return 0;
    }

    int escalate(json& inputs, json& results) {
        inputs = {{"n", n()}, {"bound", opt_.bound}, {"jobs", opt_.jobs}};
        const auto t = run_escalation(n(), escalation_options());
        json depths = json::array();
        std::cout << "k      |E|    |U|   |NU|    |A|\n";
        for (const auto& rec : t.depths) {
            json psi_map = json::array();
            for (const auto& [a, p] : rec.psi) psi_map.push_back({{"coeffs", to_json(a)}, {"psi", to_json(p)}});
            depths.push_back({{"k", rec.k},
                              {"E", to_json(rec.E)},
                              {"U", to_json(rec.U)},
                              {"NU", to_json(rec.NU)},
                              {"A", to_json(rec.A)},
                              {"psi", psi_map}});
            std::printf("%-3d %6zu %6zu %6zu %6zu\n", rec.k, rec.E.size(), rec.U.size(), rec.NU.size(), rec.A.size());
        }
        const auto c = criterion_set(t);
        results = {{"terminated_at", t.terminated_at},
                   {"new_tight_count", all_new_tight(t).size()},
                   {"criterion_set", c.values},
                   {"depths", depths}};
        std::cout << "l(" << n() << ") = " << t.terminated_at << ", " << all_new_tight(t).size()
                  << " new tight forms\n";
        return 0;
    }

    int criterion(json& inputs, json& results) {
        inputs = {{"n", n()}, {"bound", opt_.bound}};
        const auto c = criterion_set(run_escalation(n(), escalation_options()));
        results = {{"criterion_set", c.values}};
        std::cout << "C(" << n() << ") = {";
        for (std::size_t i = 0; i < c.values.size(); ++i) std::cout << (i ? "," : "") << c.values[i];
        std::cout << "}\n";
        return 0;
    }

    int check(json& inputs, json& results) {
        const CV a = coeffs();
        inputs = {{"coeffs", to_json(a)}, {"n", n()}, {"bound", opt_.bound}};
        const auto c = criterion_set(run_escalation(n(), escalation_options()));
        const auto v = check_tight_universal(a, n(), c, opt_.bound);
        results = {{"verdict", to_string(v.kind)}, {"criterion_set", c.values}};
        if (!v.tight()) {
            results["value"] = v.value;
            results["counterexamples"] = json::array({v.value});
        }
        std::cout << "p8(" << a.to_string() << "), n = " << n() << ": " << to_string(v.kind);
        if (!v.tight()) std::cout << " (" << v.value << ")";
        std::cout << "\n";
        return v.tight() ? 0 : 1;
    }

    int verify(json& inputs, json& results) {
        inputs = {{"target", opt_.target}, {"bound", opt_.bound}, {"data_dir", opt_.data_dir}};
        if (!opt_.trace.empty()) inputs["trace"] = opt_.trace;
        std::vector<Step> steps;
        const std::string& t = opt_.target;
        const bool all = t == "all";
        if (all || t == "z-table") steps.push_back(z_table());
        for (int k = 2; k <= 4; ++k)
            if (all || t == "t" + std::to_string(k)) steps.push_back(table_step(k));
        if (all || t == "thm5") steps.push_back(families());
        if (all || t == "lemmas") {
            steps.push_back(prec_step());
            steps.push_back(bad_step());
            steps.push_back(congruence_step());
        }
        json arr = json::array();
        bool ok = true;
        for (auto& s : steps) {
            ok = ok && s.ok;
            arr.push_back({{"name", s.name},
                           {"status", s.ok ? "pass" : "fail"},
                           {"details", s.details},
                           {"counterexamples", s.counterexamples}});
        }
        results = {{"steps", arr}};
        return ok ? 0 : 1;
    }

private:
    Step z_table() {
        Step s{"z-table"};
        const auto rows = load_table(data("table1.txt"));
        std::size_t passed = 0;
        for (const auto& row : rows) {
            const auto r = verify_Z(row, opt_.bound);
            if (r.ok) ++passed;
            else s.fail({{"coeffs", to_json(r.coeffs)}, {"expected", r.expected}, {"actual", r.actual}});
        }
        s.details = {{"rows", rows.size()}, {"passed", passed}};
        report(s, std::to_string(passed) + "/" + std::to_string(rows.size()) + " rows pass");
        return s;
    }

    std::vector<CV> new_tight_from_trace(int64_t n) {
        std::ifstream in(opt_.trace);
        if (!in) throw UsageError("cannot open trace file " + opt_.trace);
        json j = json::parse(in);
        if (j.value("schema", 0) != 1 || j.value("command", "") != "escalate")
            throw UsageError(opt_.trace + " is not an escalate report");
        if (j["inputs"]["n"].get<int64_t>() != n) throw UsageError(opt_.trace + " is for a different n");
        std::vector<CV> out;
        for (const auto& d : j["results"]["depths"])
            for (const auto& a : d["NU"]) out.emplace_back(a.get<std::vector<int64_t>>());
        return out;
    }

    Step table_step(int k) {
        Step s{"t" + std::to_string(k)};
        const auto rows = load_table(data("table" + std::to_string(k) + ".txt"));
        const bool from_file = !opt_.trace.empty();
        const auto nu = from_file ? new_tight_from_trace(k) : all_new_tight(run_escalation(k, escalation_options()));
        const auto r = verify_table(rows, k, nu);
        for (const auto& a : r.only_in_table) s.fail({{"only_in_table", to_json(a)}});
        for (const auto& a : r.only_in_trace) s.fail({{"only_in_escalation", to_json(a)}});
        s.details = {{"table_forms", r.table_size}, {"escalation_forms", r.trace_size}, {"equal", r.equal},
                     {"source", from_file ? "trace" : "escalation"}};
        report(s, "table " + std::to_string(k) + ": " + std::to_string(r.table_size) + " forms, escalation " +
                      std::to_string(r.trace_size) + (r.equal ? ", equal" : ", different"));
        return s;
    }

    Step families() {
        Step s{"thm5"};
        for (int64_t n = 5; n <= 12; ++n) {
            const auto t = run_escalation(n, escalation_options());
            const auto c = criterion_set(t);
            for (const auto& a : {family_g(n), family_h(n)}) {
                const auto v = check_tight_universal(a, n, c, opt_.bound);
                if (!v.tight()) s.fail({{"coeffs", to_json(a)}, {"verdict", to_string(v.kind)}, {"value", v.value}});
            }
            if (n <= 8 && t.depth(static_cast<int>(n) + 1).NU != std::vector<CV>{family_g(n), family_h(n)})
                s.fail({{"n", n}, {"NU", to_json(t.depth(static_cast<int>(n) + 1).NU)}});
        }
        s.details = {{"n_range", {5, 12}}};
        report(s, "g_n and h_n for n = 5..12");
        return s;
    }

    Step prec_step() {
        Step s{"prec"};
        const auto fx = load_fixtures(fixtures_path());
        for (const auto& f : fx.prec)
            if (!check_prec(f.M, f.N, f.d, f.a)) s.fail({{"name", f.name}, {"a", f.a}});
        s.details = {{"instances", fx.prec.size()}};
        report(s, std::to_string(fx.prec.size()) + " transfer instances");
        return s;
    }

    Step bad_step() {
        Step s{"bad-partition"};
        const auto fx = load_fixtures(fixtures_path());
        json excluded = json::array();
        for (const auto& f : fx.bad) {
            try {
                const auto r = check_bad_partition(f.instance);
                excluded.push_back({{"name", f.instance.name}, {"excluded", r.excluded}});
                if (r.excluded != f.excluded) s.fail({{"name", f.instance.name}, {"excluded", r.excluded}});
                if (f.expected_bad && r.bad != *f.expected_bad) s.fail({{"name", f.instance.name}, {"bad_set", "differs"}});
            } catch (const BadPartitionError& e) {
                s.fail({{"name", f.instance.name}, {"error", e.what()},
                        {"witness", {e.witness[0], e.witness[1], e.witness[2]}}});
            }
        }
        s.details = {{"instances", fx.bad.size()}, {"classes", excluded}};
        report(s, std::to_string(fx.bad.size()) + " bad-vector partitions");
        return s;
    }

    Step congruence_step() {
        Step s{"congruence"};
        const int64_t top = std::min<int64_t>(opt_.bound, 10000);
        for (const auto& l : congruence_lemmas())
            for (int64_t v = 1; v <= top; ++v)
                if (l.qualifies(v) && !represents_coprime3(l.diagonal, v)) s.fail({{"lemma", l.name}, {"value", v}});
        s.details = {{"lemmas", congruence_lemmas().size()}, {"up_to", top}};
        report(s, std::to_string(congruence_lemmas().size()) + " congruence lemmas up to " + std::to_string(top));
        return s;
    }

    static void report(const Step& s, const std::string& line) {
        std::cout << (s.ok ? "PASS  " : "FAIL  ") << s.name << ": " << line << "\n";
        for (std::size_t i = 0; i < s.counterexamples.size() && i < 10; ++i)
            std::cout << "      " << s.counterexamples[i].dump() << "\n";
    }

    Options opt_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sums of generalized octagonal numbers: representation, escalation and table verification"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* cmd, bool coeffs, bool n) {
        if (coeffs) cmd->add_option("--coeffs", opt.coeffs, "Comma separated coefficients");
        if (n) cmd->add_option("--n", opt.n, "Start of the target set T(n)");
        cmd->add_option("--bound", opt.bound, "Search bound")->capture_default_str();
        cmd->add_option("--out", opt.out, "Write a JSON report here");
        cmd->add_option("--jobs", opt.jobs, "Worker threads")->capture_default_str();
        cmd->add_option("--data-dir", opt.data_dir, "Directory with tables and fixtures")->capture_default_str();
        cmd->add_option("--fixtures", opt.fixtures, "Fixture file (default: <data-dir>/fixtures.txt)");
    };
    auto* sieve = app.add_subcommand("sieve", "List values not represented in [0, bound]");
    common(sieve, true, false);
    auto* check = app.add_subcommand("check", "Decide tight T(n)-universality");
    common(check, true, true);
    auto* psi = app.add_subcommand("psi", "Smallest value >= n not represented");
    common(psi, true, true);
    auto* escalate = app.add_subcommand("escalate", "Run the escalation for n");
    common(escalate, false, true);
    auto* criterion = app.add_subcommand("criterion", "Print the criterion set C(n)");
    common(criterion, false, true);
    auto* verify = app.add_subcommand("verify", "Verify tables, families and lattice lemmas");
    common(verify, false, false);
    verify->add_option("target", opt.target, "What to verify")
        ->required()
        ->check(CLI::IsMember({"z-table", "t2", "t3", "t4", "thm5", "lemmas", "all"}));
    verify->add_option("--trace", opt.trace, "Escalate JSON report to compare tables against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (opt.jobs < 1) opt.jobs = 1;

    const auto start = std::chrono::steady_clock::now();
    json inputs = json::object(), results = json::object();
    std::string command = app.get_subcommands().front()->get_name();
    int rc = 2;
    try {
        Runner r(opt);
        if (command == "sieve") rc = r.sieve(inputs, results);
        else if (command == "check") rc = r.check(inputs, results);
        else if (command == "psi") rc = r.psi_cmd(inputs, results);
        else if (command == "escalate") rc = r.escalate(inputs, results);
        else if (command == "criterion") rc = r.criterion(inputs, results);
        else rc = r.verify(inputs, results);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (!opt.out.empty()) {
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        json report = {{"schema", 1},
                       {"command", command},
                       {"inputs", inputs},
                       {"results", results},
                       {"status", rc == 0 ? "pass" : "fail"},
                       {"bound_used", opt.bound},
                       {"elapsed_ms", ms}};
        std::ofstream out(opt.out);
        if (!out) {
            std::cerr << "error: cannot write " << opt.out << "\n";
            return 2;
        }
        out << report.dump(2) << "\n";
    }
    return rc;
}
