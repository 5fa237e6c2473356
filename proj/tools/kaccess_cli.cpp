// kaccess: command-line laboratory for k-accessibility percolation on
// rooted trees. See README.md for the tree file format and config grammar.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kaccess/accessibility.hpp"
#include "kaccess/closure.hpp"
#include "kaccess/hk.hpp"
#include "kaccess/rng.hpp"
#include "kaccess/scan.hpp"
#include "kaccess/skip_sets.hpp"
#include "kaccess/theta.hpp"
#include "kaccess/tree.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw kaccess::IoError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw kaccess::IoError("cannot read file: " + path);
    return buf.str();
}

kaccess::LabeledTree load_tree(const std::string& path)
{
    return kaccess::parse_tree_file(read_file(path));
}

ordered_json witness_json(const kaccess::Witness& w)
{
    ordered_json j;
    if (!w.selected.empty())
        j["selected"] = w.selected;
    j["selected_depths"] = w.selected_depths;
    if (!w.leaf_path.empty() || w.selected.empty())
        j["leaf_path"] = w.leaf_path;
    return j;
}

ordered_json estimate_json(const kaccess::ThetaEstimate& est, int n, int height, int k, unsigned workers)
{
    ordered_json j;
    j["n"] = n;
    j["h"] = height;
    j["k"] = k;
    j["trials"] = est.trials;
    j["accessible"] = est.accessible;
    j["blocked"] = est.blocked;
    j["undecided"] = est.undecided;
    j["theta_lo"] = est.theta_lo;
    j["theta_hi"] = est.theta_hi;
    j["wilson_lo"] = est.wilson_lo;
    j["wilson_hi"] = est.wilson_hi;
    j["z"] = est.z;
    j["master_seed"] = est.master_seed;
    j["budget"] = est.budget == kaccess::kUnboundedBudget ? 0 : est.budget;
    j["workers"] = workers;
    j["seed_mixer"] = "splitmix64";
    return j;
}

struct CheckArgs
{
    std::string tree_path;
    std::vector<double> labels;
    int k = 1;
};

int run_check(const CheckArgs& args)
{
    ordered_json out;
    if (!args.labels.empty())
    {
        const auto positions = kaccess::check_path_witness(args.labels, args.k);
        out["k"] = args.k;
        out["verdict"] = positions ? "accessible" : "blocked";
        if (positions)
            out["selected_positions"] = *positions;
    }
    else
    {
        const auto lt = load_tree(args.tree_path);
        if (!lt.labeling)
            throw std::invalid_argument("tree file has no rank line; 'check' needs a labeled tree");
        const auto outcome = kaccess::is_k_accessible(lt.tree, *lt.labeling, args.k);
        out["k"] = args.k;
        out["verdict"] = kaccess::to_string(outcome.verdict);
        out["nodes_visited"] = outcome.nodes_visited;
        if (outcome.witness)
        {
            out["witness"] = witness_json(*outcome.witness);
            if (!kaccess::validate_witness(lt.tree, *lt.labeling, args.k, *outcome.witness))
                throw std::logic_error("produced witness failed validation");
        }
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_exact(const std::string& tree_path, int k, int cap)
{
    const auto lt = load_tree(tree_path);
    const auto theta = kaccess::exact_theta(lt.tree, k, cap);
    ordered_json out;
    out["k"] = k;
    out["vertices"] = lt.tree.vertex_count();
    out["theta"] = theta.str();
    out["theta_value"] = theta.value();
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_estimate(int n, int height, int k, std::uint64_t trials, std::uint64_t seed, std::uint64_t budget,
                 unsigned workers)
{
    const std::uint64_t b = budget == 0 ? kaccess::kUnboundedBudget : budget;
    const auto est = kaccess::monte_carlo_theta(n, height, k, trials, seed, b, workers);
    std::cout << estimate_json(est, n, height, k, workers).dump(2) << "\n";
    return kExitOk;
}

int run_closure(const std::string& tree_path, int k)
{
    const auto lt = load_tree(tree_path);
    const auto dag = kaccess::k_transitive_closure(lt.tree, k);
    dag.validate();
    ordered_json out;
    out["k"] = k;
    out["vertices"] = dag.vertex_count();
    out["source"] = dag.source;
    out["sinks"] = dag.sinks;
    out["adjacency"] = dag.adjacency;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_hk(int n, int height, int k, std::uint64_t cap, int truncate)
{
    const auto hk = kaccess::build_hk(n, height, k, cap, truncate);
    ordered_json out;
    out["n"] = n;
    out["h"] = height;
    out["k"] = k;
    out["vertices"] = hk.tree.vertex_count();
    int leaves = 0;
    for (int v = 0; v < hk.tree.vertex_count(); ++v)
        if (hk.tree.is_leaf(v))
            ++leaves;
    out["leaves"] = leaves;
    out["height"] = hk.tree.height();
    out["parents"] = hk.tree.parents();
    out["t_depth"] = hk.t_depth;

    // Degree report: internal vertices grouped by underlying depth.
    ordered_json degrees = ordered_json::array();
    const bool truncated = truncate >= 0;
    for (int l = 0; l < height; ++l)
    {
        std::size_t count = 0;
        std::size_t matching = 0;
        std::size_t expected = 0;
        for (int v = 0; v < hk.tree.vertex_count(); ++v)
        {
            if (hk.t_depth[v] != l)
                continue;
            ++count;
            expected = hk.expected_degree(v);
            if (hk.tree.children(v).size() == expected)
                ++matching;
        }
        if (count == 0)
            continue;
        ordered_json row;
        row["t_depth"] = l;
        row["vertices"] = count;
        row["expected_degree"] = expected;
        row["matching"] = matching;
        degrees.push_back(std::move(row));
        if (!truncated && matching != count)
            throw std::logic_error("degree mismatch at underlying depth " + std::to_string(l));
    }
    out["degree_report"] = std::move(degrees);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_scan_cmd(const std::string& config_path, const std::string& out_override, unsigned workers_override)
{
    auto config = kaccess::load_scan_config(config_path);
    if (!out_override.empty())
        config.out = out_override;
    if (workers_override > 0)
        config.workers = workers_override;
    const auto rows = kaccess::run_scan(config);
    std::cout << kaccess::rows_to_csv(rows);
    std::cerr << "wrote " << config.out << ".csv, .json, .resolved.cfg (" << rows.size() << " rows)\n";
    return kExitOk;
}

int run_expansion_bound(int n, int height, int k, const std::string& mode, std::uint64_t trials, std::uint64_t seed)
{
    const bool exact = mode == "exact";
    const auto report = kaccess::run_expansion_bound_check(n, height, k, exact, trials, seed);
    ordered_json out;
    out["mode"] = exact ? "exact" : "mc";
    out["n"] = n;
    out["h"] = height;
    out["k"] = k;
    if (exact)
    {
        out["theta_tree"] = report.theta_tree.str();
        out["theta_expansion"] = report.theta_expansion.str();
    }
    else
    {
        out["trials"] = report.trials;
        out["master_seed"] = report.master_seed;
        out["p_tree"] = report.p_tree;
        out["p_expansion"] = report.p_expansion;
        out["combined_se"] = report.combined_se;
    }
    out["holds"] = report.holds;
    std::cout << out.dump(2) << "\n";
    return report.holds ? kExitOk : kExitAssertion;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"k-accessibility percolation on rooted trees"};
    app.require_subcommand(1);

    // check
    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "decide k-accessibility of a labeled tree or label path");
    auto* check_tree = check->add_option("--tree", check_args.tree_path, "tree file (parents + ranks)");
    auto* check_labels = check->add_option("--labels", check_args.labels, "comma-separated path labels")
                             ->delimiter(',');
    check->add_option("-k,--k", check_args.k, "max depth gap between selected vertices")->required();
    check_tree->excludes(check_labels);

    // exact
    std::string exact_tree;
    int exact_k = 1;
    int exact_cap = 9;
    auto* exact = app.add_subcommand("exact", "exact probability over all labelings");
    exact->add_option("--tree", exact_tree, "tree file")->required();
    exact->add_option("-k,--k", exact_k, "max depth gap")->required();
    exact->add_option("--cap", exact_cap, "max vertices for enumeration");

    // estimate
    int est_n = 1, est_h = 0, est_k = 1;
    std::uint64_t est_trials = 1000, est_seed = 1, est_budget = 1'000'000;
    unsigned est_workers = 1;
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate on the complete n-ary tree");
    estimate->add_option("-n,--arity", est_n, "arity")->required();
    estimate->add_option("-H,--height", est_h, "height")->required();
    estimate->add_option("-k,--k", est_k, "max depth gap")->required();
    estimate->add_option("--trials", est_trials, "trial count");
    estimate->add_option("--seed", est_seed, "master seed");
    estimate->add_option("--budget", est_budget, "label evaluations per trial, 0 = unbounded");
    estimate->add_option("--workers", est_workers, "worker threads (does not affect results)");

    // closure
    std::string closure_tree;
    int closure_k = 1;
    auto* closure = app.add_subcommand("closure", "k-step transitive closure as a DAG dump");
    closure->add_option("--tree", closure_tree, "tree file")->required();
    closure->add_option("-k,--k", closure_k, "max depth gap")->required();

    // hk
    int hk_n = 1, hk_h = 0, hk_k = 1, hk_truncate = -1;
    std::uint64_t hk_cap = 1'000'000;
    auto* hk = app.add_subcommand("hk", "skip-annotated expansion tree dump with degree report");
    hk->add_option("-n,--arity", hk_n, "arity")->required();
    hk->add_option("-H,--height", hk_h, "height")->required();
    hk->add_option("-k,--k", hk_k, "max depth gap")->required();
    hk->add_option("--cap", hk_cap, "vertex cap");
    hk->add_option("--truncate", hk_truncate, "keep expansion depths <= this bound (-1 = off)");

    // scan
    std::string scan_config;
    std::string scan_out;
    unsigned scan_workers = 0;
    auto* scan = app.add_subcommand("scan", "threshold scan driven by a config file");
    scan->add_option("config", scan_config, "config file")->required();
    scan->add_option("--out", scan_out, "override the config's output prefix");
    scan->add_option("--workers", scan_workers, "override the config's worker count");

    // expansion-bound
    int eb_n = 1, eb_h = 0, eb_k = 1;
    std::string eb_mode;
    std::uint64_t eb_trials = 10'000, eb_seed = 1;
    auto* expansion_bound = app.add_subcommand("expansion-bound", "expansion-tree upper bound check");
    expansion_bound->add_option("-n,--arity", eb_n, "arity")->required();
    expansion_bound->add_option("-H,--height", eb_h, "height")->required();
    expansion_bound->add_option("-k,--k", eb_k, "max depth gap")->required();
    expansion_bound->add_option("--mode", eb_mode, "exact | mc")->required()
        ->check(CLI::IsMember({"exact", "mc"}));
    expansion_bound->add_option("--trials", eb_trials, "trials per side (mc mode)");
    expansion_bound->add_option("--seed", eb_seed, "master seed (mc mode)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (check->parsed())
        {
            if (check_args.labels.empty() && check_args.tree_path.empty())
                throw std::invalid_argument("check needs --tree or --labels");
            return run_check(check_args);
        }
        if (exact->parsed())
            return run_exact(exact_tree, exact_k, exact_cap);
        if (estimate->parsed())
            return run_estimate(est_n, est_h, est_k, est_trials, est_seed, est_budget, est_workers);
        if (closure->parsed())
            return run_closure(closure_tree, closure_k);
        if (hk->parsed())
            return run_hk(hk_n, hk_h, hk_k, hk_cap, hk_truncate);
        if (scan->parsed())
            return run_scan_cmd(scan_config, scan_out, scan_workers);
        if (expansion_bound->parsed())
            return run_expansion_bound(eb_n, eb_h, eb_k, eb_mode, eb_trials, eb_seed);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    }
    catch (const kaccess::IoError& e)
    {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::logic_error& e)
    {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return kExitAssertion;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
