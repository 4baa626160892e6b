#include "galindex/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "galindex/report.hpp"

namespace galindex::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot open output file: " + path);
    out << doc.dump(2) << "\n";
}

int cmd_analyze(const std::string& spec_path, bool with_oracle, unsigned precision,
                unsigned long budget, unsigned threads, const std::string& json_path) {
    const ExtensionSpec spec = load_extension_spec(spec_path);
    AnalysisOptions opts;
    opts.with_oracle = with_oracle;
    opts.precision = precision;
    opts.budget = budget;
    opts.threads = threads;
    const ReportDocument doc = analyze(spec, opts);
    std::cout << render_report_text(doc);
    if (!json_path.empty())
        write_json(json_path, report_to_json(doc));
    return doc.agree ? kExitOk : kExitDisagreement;
}

int cmd_sweep(unsigned long p, unsigned e_max, unsigned f, const std::string& json_path) {
    const SweepResult s = sweep_profiles(p, e_max, f);
    std::cout << "p=" << p << " f_K=" << f << "  (" << s.rows.size() << " profiles)\n";
    std::cout << "   e    t   a  t0   mu  v_p(m)  sum n_i  free  bound\n";
    for (const auto& r : s.rows) {
        std::ostringstream line;
        line.width(4);
        std::cout << "  ";
        std::cout.width(3);
        std::cout << r.e;
        std::cout.width(5);
        std::cout << r.t;
        std::cout.width(4);
        std::cout << r.a;
        std::cout.width(4);
        std::cout << r.t0;
        std::cout.width(5);
        std::cout << r.mu;
        std::cout.width(8);
        std::cout << r.v_p_m;
        std::cout.width(9);
        std::cout << r.sum_n;
        std::cout << (r.free ? "  free" : "    no");
        std::cout << "  " << r.bound.num << "/" << r.bound.den << "\n";
    }
    if (!json_path.empty())
        write_json(json_path, sweep_to_json(s));
    if (!s.violations.empty()) {
        for (const auto& v : s.violations)
            std::cerr << "invariant violation: " << v << "\n";
        return kExitDisagreement;
    }
    return kExitOk;
}

int cmd_catalog_verify(unsigned long budget, unsigned precision, unsigned threads,
                       bool inject_mismatch, const std::string& entry) {
    AnalysisOptions opts;
    opts.budget = budget;
    opts.precision = precision;
    opts.threads = threads;
    const std::vector<CatalogOutcome> outcomes = verify_catalog(opts, inject_mismatch, entry);
    bool all = true;
    for (const auto& oc : outcomes) {
        std::cout << (oc.pass ? "PASS " : "FAIL ") << oc.name << ": " << oc.detail << "\n";
        all = all && oc.pass;
    }
    std::cout << (all ? "catalog: all entries verified\n" : "catalog: mismatches found\n");
    return all ? kExitOk : kExitDisagreement;
}

int cmd_global(unsigned long degree, const std::vector<std::string>& ram_args,
               const std::string& json_path) {
    std::map<unsigned long, std::pair<unsigned, unsigned long>> ram;
    for (const std::string& arg : ram_args) {
        // format p:n,d
        const auto colon = arg.find(':');
        const auto comma = arg.find(',');
        if (colon == std::string::npos || comma == std::string::npos || comma < colon)
            throw InputError("ram spec must look like p:n,d");
        try {
            const unsigned long p = std::stoul(arg.substr(0, colon));
            const unsigned n = (unsigned)std::stoul(arg.substr(colon + 1, comma - colon - 1));
            const unsigned long d = std::stoul(arg.substr(comma + 1));
            ram[p] = {n, d};
        } catch (const std::exception&) {
            throw InputError("ram spec must look like p:n,d");
        }
    }
    const auto vals = global_abelian_valuation(degree, ram);
    nlohmann::json j;
    for (const auto& [p, v] : vals) {
        std::cout << "v_" << p << "(m) = " << v << "\n";
        j[std::to_string(p)] = v;
    }
    if (!json_path.empty())
        write_json(json_path, j);
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"minimal indices of free group-ring submodules in rings of integers "
                 "of p-adic fields"};
    app.require_subcommand(1);

    std::string spec_path, json_path;
    bool with_oracle = false;
    unsigned precision = 0;
    unsigned long budget = 10000000;
    unsigned threads = 0;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "analyze one extension spec");
    analyze_cmd->add_option("--spec", spec_path, "extension spec JSON file")->required();
    analyze_cmd->add_flag("--oracle", with_oracle, "also run the exhaustive oracle");
    analyze_cmd->add_option("--precision", precision, "base working precision");
    analyze_cmd->add_option("--budget", budget, "oracle enumeration budget");
    analyze_cmd->add_option("--threads", threads, "worker threads (1 = serial)");
    analyze_cmd->add_option("--json", json_path, "write the report as JSON");

    unsigned long sweep_p = 3;
    unsigned e_max = 10, sweep_f = 1;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "closed forms over all valid jumps for p, e <= e-max");
    sweep_cmd->add_option("--p", sweep_p, "prime")->required();
    sweep_cmd->add_option("--e-max", e_max, "largest absolute ramification index of K")
        ->required();
    sweep_cmd->add_option("--f", sweep_f, "inertia degree of K");
    sweep_cmd->add_option("--json", json_path, "write the table as JSON");

    bool inject_mismatch = false;
    std::string catalog_entry;
    CLI::App* catalog_cmd =
        app.add_subcommand("catalog-verify", "run the built-in catalog against the oracle");
    catalog_cmd->add_option("--budget", budget, "oracle enumeration budget");
    catalog_cmd->add_option("--precision", precision, "base working precision");
    catalog_cmd->add_option("--threads", threads, "worker threads (1 = serial)");
    catalog_cmd->add_option("--entry", catalog_entry, "verify a single entry by name");
    catalog_cmd
        ->add_flag("--inject-mismatch", inject_mismatch,
                   "corrupt one expectation (failure-path test mode)")
        ->group("");

    unsigned long degree = 0;
    std::vector<std::string> ram_args;
    CLI::App* global_cmd =
        app.add_subcommand("global", "per-prime valuations for an abelian extension of Q");
    global_cmd->add_option("--degree", degree, "[L:Q]")->required();
    global_cmd->add_option("--ram", ram_args, "ramified prime as p:n,d (e_p = p^n d)")
        ->required();
    global_cmd->add_option("--json", json_path, "write the valuations as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (app.got_subcommand(analyze_cmd))
            return cmd_analyze(spec_path, with_oracle, precision, budget, threads, json_path);
        if (app.got_subcommand(sweep_cmd))
            return cmd_sweep(sweep_p, e_max, sweep_f, json_path);
        if (app.got_subcommand(catalog_cmd))
            return cmd_catalog_verify(budget, precision, threads, inject_mismatch, catalog_entry);
        if (app.got_subcommand(global_cmd))
            return cmd_global(degree, ram_args, json_path);
        return kExitInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const ResourceError& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitResource;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitDisagreement;
    }
}

} // namespace galindex::cli
