// Command-line front end. All domain work goes through the C API in
// lhc/lhc.h; this file only shuttles JSON and renders output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lhc/lhc.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;        // requested computation succeeded
constexpr int kExitNegative = 1;  // ran fine but the answer is negative
constexpr int kExitUsage = 2;     // bad arguments, bad files, validation

struct HypergraphDeleter {
    void operator()(lhc_hypergraph* h) const { lhc_hypergraph_free(h); }
};
using HypergraphPtr = std::unique_ptr<lhc_hypergraph, HypergraphDeleter>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text << "\n";
}

[[noreturn]] void die_api(const std::string& what) {
    std::cerr << "error: " << what << ": " << lhc_last_error() << "\n";
    std::exit(kExitUsage);
}

HypergraphPtr load_instance(const std::string& path) {
    lhc_hypergraph* h = nullptr;
    if (lhc_hypergraph_from_json(read_file(path).c_str(), &h) != LHC_OK)
        die_api("loading " + path);
    return HypergraphPtr(h);
}

std::string take_string(char* s) {
    std::string out(s);
    lhc_string_free(s);
    return out;
}

// Options shared by every subcommand that executes the protocol.
struct AlgoOptions {
    double alpha = 0.125;
    double dangerous_frac = -1.0;
    std::uint32_t u = 3;
    std::uint32_t beta = 0;
    std::uint32_t epochs = 0;
    std::uint32_t exhaustive_cap = 20;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "bias threshold fraction (default 1/8)");
        cmd->add_option("--dangerous-frac", dangerous_frac,
                        "dangerous threshold fraction (default: alpha)");
        cmd->add_option("--u", u, "locality parameter; each phase gossips 6u+2 rounds");
        cmd->add_option("--beta", beta, "phases per epoch (0 = ceil(log2 n))");
        cmd->add_option("--epochs", epochs, "number of epochs (0 = ceil(log2 n))");
        cmd->add_option("--exhaustive-cap", exhaustive_cap,
                        "max undecided vertices for exhaustive recoloring");
    }

    void fill(json& cfg) const {
        cfg["alpha"] = alpha;
        cfg["dangerous_frac"] = dangerous_frac;
        cfg["u"] = u;
        cfg["beta"] = beta;
        cfg["num_epochs"] = epochs;
        cfg["exhaustive_cap"] = exhaustive_cap;
    }
};

std::string render_run_table(const json& r) {
    std::ostringstream os;
    os << "outcome:          " << r.at("outcome").get<std::string>() << "\n";
    os << "executed phases:  " << r.at("executed_phases") << " of " << r.at("x") << "\n";
    os << "rounds:           " << r.at("total_rounds") << " (" << r.at("y") << " per phase)\n";
    os << "infeasible:       " << r.at("infeasible_pieces") << " pieces\n";
    os << "skeleton series:  " << r.at("skeleton_series").dump() << "\n";
    std::string colors;
    for (const auto& c : r.at("coloring")) colors += c.get<std::string>();
    os << "coloring:         " << colors;
    if (r.at("outcome").get<std::string>() == "exhausted")
        os << "\nactive edges:     " << r.at("active_edges").dump();
    return os.str();
}

std::string render_experiment_csv(const json& r) {
    std::ostringstream os;
    const std::string kind = r.at("experiment").get<std::string>();
    if (kind == "success-rate") {
        os << "seed,success,executed_phases,total_rounds,infeasible_pieces\n";
        for (const auto& rec : r.at("records"))
            os << rec.at("seed") << "," << (rec.at("success").get<bool>() ? 1 : 0) << ","
               << rec.at("executed_phases") << "," << rec.at("total_rounds") << ","
               << rec.at("infeasible_pieces") << "\n";
    } else if (kind == "claim") {
        os << "ell,freq,ratio\n";
        const auto& freq = r.at("freq");
        const auto& ratios = r.at("ratios");
        for (std::size_t l = 0; l < freq.size(); ++l) {
            os << (l + 1) << "," << freq[l].dump() << ",";
            if (l > 0) os << ratios[l - 1].dump();
            os << "\n";
        }
    } else { // shrinkage
        os << "trial,epoch,max_skeleton\n";
        const auto& series = r.at("series");
        for (std::size_t t = 0; t < series.size(); ++t)
            for (std::size_t i = 0; i < series[t].size(); ++i)
                os << t << "," << i << "," << series[t][i].dump() << "\n";
    }
    std::string out = os.str();
    if (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

std::string render_experiment_table(const json& r) {
    std::ostringstream os;
    const std::string kind = r.at("experiment").get<std::string>();
    os << "experiment:       " << kind << "\n";
    os << "trials:           " << r.at("trials") << "\n";
    if (kind == "success-rate") {
        os << "successes:        " << r.at("successes") << "\n";
        os << "success rate:     " << r.at("success_rate") << "\n";
        os << "mean phases:      " << r.at("mean_phases_to_success") << "\n";
        os << "infeasible:       " << r.at("structurally_infeasible").dump();
    } else if (kind == "claim") {
        os << "freq by phase:    " << r.at("freq").dump() << "\n";
        os << "decay ratios:     " << r.at("ratios").dump() << "\n";
        os << "fitted ratio:     " << r.at("fitted_ratio") << "\n";
        os << "monotone:         " << (r.at("monotone").get<bool>() ? "yes" : "no");
    } else {
        os << "monotone frac:    " << r.at("monotone_fraction") << "\n";
        os << "halving frac:     " << r.at("halving_fraction") << "\n";
        os << "final zero frac:  " << r.at("final_zero_fraction") << "\n";
        os << "mean by epoch:    " << r.at("mean_by_epoch").dump();
    }
    return os.str();
}

std::string render(const json& r, const std::string& format, bool experiment) {
    if (format == "json") return r.dump(2);
    if (format == "csv") {
        if (!experiment) throw std::runtime_error("csv output is for experiments");
        return render_experiment_csv(r);
    }
    // table
    return experiment ? render_experiment_table(r) : render_run_table(r);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed bi-chromatic hypergraph coloring toolkit"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_family;
    std::uint32_t gen_n = 32, gen_delta = 8, gen_max_degree = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "-";
    gen->add_option("--family", gen_family,
                    "uniform_random | bounded_degree | path_chain | grid | adversarial_biased")
        ->required();
    gen->add_option("--n", gen_n, "vertex (and edge) count");
    gen->add_option("--delta", gen_delta, "edge size");
    gen->add_option("--seed", gen_seed, "generator seed");
    auto* gen_max_degree_opt = gen->add_option(
        "--max-degree", gen_max_degree, "bounded_degree intersection-degree cap (default delta^2)");
    gen->add_option("--out", gen_out, "output path ('-' = stdout)");

    // --- run ---------------------------------------------------------------
    auto* runc = app.add_subcommand("run", "execute the protocol on an instance");
    std::string run_instance, run_seq, run_format = "json", run_out = "-";
    std::uint64_t run_seed = 1;
    bool run_traces = false;
    AlgoOptions run_algo;
    runc->add_option("--instance", run_instance, "hypergraph JSON file")->required();
    runc->add_option("--coloring-seq", run_seq, "coloring sequence JSON file (omit to seed)");
    runc->add_option("--seed", run_seed, "seed for the drawn coloring sequence");
    runc->add_flag("--traces", run_traces, "include per-phase traces");
    run_algo.attach(runc);
    runc->add_option("--format", run_format, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
    runc->add_option("--out", run_out, "output path ('-' = stdout)");

    // --- experiment --------------------------------------------------------
    auto* exp = app.add_subcommand("experiment", "run a statistics experiment");
    exp->require_subcommand(1);
    std::string exp_instance, exp_format = "json", exp_out = "-";
    std::uint32_t exp_trials = 100, exp_ell = 3;
    std::uint64_t exp_seed = 1;
    AlgoOptions exp_algo;
    std::vector<CLI::App*> exp_kinds;
    for (const char* name : {"success-rate", "claim", "shrinkage"})
        exp_kinds.push_back(exp->add_subcommand(name));
    for (CLI::App* kind : exp_kinds) {
        kind->add_option("--instance", exp_instance, "hypergraph JSON file")->required();
        kind->add_option("--trials", exp_trials, "number of seeded trials");
        kind->add_option("--seed", exp_seed, "master seed");
        exp_algo.attach(kind);
        kind->add_option("--format", exp_format, "json | csv | table")
            ->check(CLI::IsMember({"json", "csv", "table"}));
        kind->add_option("--out", exp_out, "output path ('-' = stdout)");
    }
    exp_kinds[1]->add_option("--ell-max", exp_ell, "phases tracked by the claim experiment");

    // --- search-colorings ----------------------------------------------------
    auto* search = app.add_subcommand("search-colorings",
                                      "find one sequence succeeding on every instance");
    std::vector<std::string> search_universe;
    std::uint64_t search_budget = 100000, search_seed = 1;
    std::string search_format = "json", search_out = "-";
    AlgoOptions search_algo;
    search->add_option("--instance", search_universe,
                       "hypergraph JSON files (repeat once per universe member)")
        ->required()
        ->expected(-1);
    search->add_option("--budget", search_budget, "max candidate sequences");
    search->add_option("--seed", search_seed, "seed for any random restarts");
    search_algo.attach(search);
    search->add_option("--format", search_format, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
    search->add_option("--out", search_out, "output path ('-' = stdout)");

    // --- oracle --------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "brute-force 2-colorability check");
    std::string oracle_instance, oracle_format = "json", oracle_out = "-";
    oracle->add_option("--instance", oracle_instance, "hypergraph JSON file")->required();
    oracle->add_option("--format", oracle_format, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
    oracle->add_option("--out", oracle_out, "output path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            json spec{{"family", gen_family}, {"n", gen_n}, {"delta", gen_delta},
                      {"seed", gen_seed}};
            if (gen_max_degree_opt->count()) spec["max_degree"] = gen_max_degree;
            lhc_hypergraph* h = nullptr;
            if (lhc_generate(spec.dump().c_str(), &h) != LHC_OK) die_api("generating");
            HypergraphPtr holder(h);
            char* text = nullptr;
            if (lhc_hypergraph_to_json(h, &text) != LHC_OK) die_api("serializing");
            write_output(gen_out, json::parse(take_string(text)).dump(2));
            return kExitOk;
        }

        if (runc->parsed()) {
            HypergraphPtr h = load_instance(run_instance);
            json cfg;
            run_algo.fill(cfg);
            cfg["include_traces"] = run_traces;
            if (!run_seq.empty())
                cfg["colorings"] = json::parse(read_file(run_seq));
            else
                cfg["seed"] = run_seed;
            char* text = nullptr;
            if (lhc_run(h.get(), cfg.dump().c_str(), &text) != LHC_OK) die_api("running");
            json result = json::parse(take_string(text));
            write_output(run_out, render(result, run_format, false));
            return result.at("outcome").get<std::string>() == "success" ? kExitOk
                                                                        : kExitNegative;
        }

        if (exp->parsed()) {
            const char* kinds[] = {"success-rate", "claim", "shrinkage"};
            std::string kind;
            for (std::size_t i = 0; i < 3; ++i)
                if (exp_kinds[i]->parsed()) kind = kinds[i];
            HypergraphPtr h = load_instance(exp_instance);
            json cfg{{"experiment", kind}, {"trials", exp_trials}, {"seed", exp_seed}};
            if (kind == "claim") cfg["ell_max"] = exp_ell;
            exp_algo.fill(cfg);
            char* text = nullptr;
            if (lhc_experiment(h.get(), cfg.dump().c_str(), &text) != LHC_OK)
                die_api("experiment");
            write_output(exp_out, render(json::parse(take_string(text)), exp_format, true));
            return kExitOk;
        }

        if (search->parsed()) {
            std::vector<HypergraphPtr> holders;
            std::vector<const lhc_hypergraph*> raw;
            for (const auto& path : search_universe) {
                holders.push_back(load_instance(path));
                raw.push_back(holders.back().get());
            }
            json cfg{{"budget", search_budget}, {"seed", search_seed}};
            search_algo.fill(cfg);
            char* text = nullptr;
            if (lhc_search_colorings(raw.data(), raw.size(), cfg.dump().c_str(), &text) !=
                LHC_OK)
                die_api("search");
            json result = json::parse(take_string(text));
            if (search_format == "table") {
                std::ostringstream os;
                os << "found:            " << (result.at("found").get<bool>() ? "yes" : "no")
                   << "\n";
                os << "tried:            " << result.at("tried") << " of " << result.at("budget")
                   << "\n";
                os << "space exhausted:  "
                   << (result.at("exhausted_space").get<bool>() ? "yes" : "no");
                write_output(search_out, os.str());
            } else {
                write_output(search_out, result.dump(2));
            }
            return result.at("found").get<bool>() ? kExitOk : kExitNegative;
        }

        if (oracle->parsed()) {
            HypergraphPtr h = load_instance(oracle_instance);
            char* text = nullptr;
            if (lhc_oracle_bichromatic(h.get(), &text) != LHC_OK) die_api("oracle");
            json result = json::parse(take_string(text));
            if (oracle_format == "table") {
                std::ostringstream os;
                os << "feasible:         " << (result.at("feasible").get<bool>() ? "yes" : "no")
                   << "\n";
                os << "tried:            " << result.at("tried") << "\n";
                std::string colors;
                for (const auto& c : result.at("coloring")) colors += c.get<std::string>();
                os << "coloring:         " << (colors.empty() ? "-" : colors);
                write_output(oracle_out, os.str());
            } else {
                write_output(oracle_out, result.dump(2));
            }
            return result.at("feasible").get<bool>() ? kExitOk : kExitNegative;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
