#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "socialucb/config.hpp"
#include "socialucb/io.hpp"
#include "socialucb/version.hpp"

namespace socialucb {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out;
    std::string seed;
    std::string policy;
    std::string trials;
    bool quiet = false;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_policy) {
    cmd.add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
    cmd.add_option("--set", o.sets, "override one key (key=value), repeatable");
    cmd.add_option("--out", o.out, "output directory (overrides out_dir)");
    cmd.add_option("--seed", o.seed, "master seed (overrides master_seed)");
    if (with_policy) {
        cmd.add_option("--policy", o.policy,
                       "social_ucb | random_walk | exploit_only | mab_only");
    }
    cmd.add_option("--trials", o.trials, "number of Monte Carlo trials K");
    cmd.add_flag("--quiet", o.quiet, "suppress progress output");
}

SimConfig resolve(const CommonOptions& o) {
    std::vector<std::string> overrides = o.sets;
    if (!o.out.empty()) overrides.push_back("out_dir=" + o.out);
    if (!o.seed.empty()) overrides.push_back("master_seed=" + o.seed);
    if (!o.policy.empty()) overrides.push_back("policy=" + o.policy);
    if (!o.trials.empty()) overrides.push_back("trials=" + o.trials);
    if (o.config_path.empty()) return parse_config_text("", overrides);
    return parse_config(o.config_path, overrides);
}

void write_summary_file(const fs::path& path, std::span<const io::SummaryRow> rows,
                        std::vector<io::OutputFile>& inventory) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    io::write_summary(out, rows);
    out.close();
    if (!out) throw std::runtime_error("write failed for " + path.string());
    inventory.push_back({path.string(), rows.size()});
}

// One experiment into `dir`: simulation outputs, summary.csv, manifest.json.
io::SummaryRow run_one(const SimConfig& config, const fs::path& dir, const CommonOptions& o,
                       std::ostream& out) {
    const std::string started = io::utc_timestamp();
    std::vector<io::OutputFile> inventory;
    const ExperimentResult result = io::run_to_directory(config, dir, inventory);
    const io::SummaryRow row = io::summary_row(result);
    write_summary_file(dir / "summary.csv", std::span(&row, 1), inventory);
    io::write_manifest(dir / "manifest.json", config, started, io::utc_timestamp(), inventory);
    if (!o.quiet) {
        out << row.policy << ": mean final cum fitness " << io::fixed6(row.mean_final_cum_fitness);
        if (row.ci95) out << " +/- " << io::fixed6(*row.ci95);
        out << ", mean final cum regret " << io::fixed6(row.mean_final_cum_regret) << " -> "
            << dir.string() << '\n';
    }
    return row;
}

int cmd_run(const CommonOptions& o, std::ostream& out) {
    const SimConfig config = resolve(o);
    run_one(config, config.out_dir, o, out);
    return 0;
}

int cmd_compare(const CommonOptions& o, std::ostream& out) {
    const SimConfig base = resolve(o);
    const fs::path root = base.out_dir;
    std::vector<io::SummaryRow> rows;
    std::vector<io::OutputFile> inventory;
    for (PolicyKind p : kAllPolicies) {
        SimConfig config = base;
        config.policy = p;
        config.out_dir = (root / std::string(to_string(p))).string();
        rows.push_back(run_one(config, config.out_dir, o, out));
    }
    write_summary_file(root / "summary.csv", rows, inventory);
    if (!o.quiet) out << "summary -> " << (root / "summary.csv").string() << '\n';
    return 0;
}

int cmd_sweep(const CommonOptions& o, const std::vector<std::string>& p_frags,
              const std::vector<std::string>& sigma_scales, std::ostream& out) {
    const SimConfig base = resolve(o);
    const fs::path root = base.out_dir;

    // Resolve and validate every cell before any simulation starts.
    std::vector<SimConfig> cells;
    for (const auto& pf : p_frags) {
        for (const auto& ss : sigma_scales) {
            SimConfig config = base;
            apply_setting(config, "p_frag", pf);
            apply_setting(config, "sigma_scale", ss);
            config.validate();
            const std::string name = "p_frag-" + config_value(config, "p_frag") + "_sigma_scale-" +
                                     config_value(config, "sigma_scale");
            config.out_dir = (root / name).string();
            cells.push_back(config);
        }
    }

    fs::create_directories(root);
    const fs::path table_path = root / "sweep_summary.csv";
    std::ofstream table(table_path, std::ios::binary | std::ios::trunc);
    if (!table) throw std::runtime_error("cannot open " + table_path.string() + " for writing");
    table << "p_frag,sigma_scale," << io::kSummaryHeader << '\n';
    for (const auto& config : cells) {
        const io::SummaryRow row = run_one(config, config.out_dir, o, out);
        table << config_value(config, "p_frag") << ',' << config_value(config, "sigma_scale") << ','
              << row.policy << ',' << io::fixed6(row.mean_final_cum_fitness) << ','
              << (row.ci95 ? io::fixed6(*row.ci95) : std::string()) << ','
              << io::fixed6(row.mean_final_cum_regret) << '\n';
    }
    table.close();
    if (!table) throw std::runtime_error("write failed for " + table_path.string());
    return 0;
}

int cmd_validate(const CommonOptions& o, std::ostream& out) {
    out << to_config_text(resolve(o));
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Social-UCB agent-based network simulator", "socialucb"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOptions run_opts, compare_opts, sweep_opts, validate_opts;
    std::vector<std::string> p_frags, sigma_scales;

    auto* run = app.add_subcommand("run", "run one experiment");
    add_common(*run, run_opts, true);
    auto* compare = app.add_subcommand("compare", "run all four policies on shared seeds");
    add_common(*compare, compare_opts, false);
    auto* sweep = app.add_subcommand("sweep", "grid over p_frag x sigma_scale");
    add_common(*sweep, sweep_opts, true);
    sweep->add_option("--p-frag", p_frags, "comma-separated p_frag values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--sigma-scale", sigma_scales, "comma-separated sigma_scale values")
        ->required()
        ->delimiter(',');
    auto* validate = app.add_subcommand("validate", "parse and echo the resolved config");
    add_common(*validate, validate_opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*run) return cmd_run(run_opts, out);
        if (*compare) return cmd_compare(compare_opts, out);
        if (*sweep) return cmd_sweep(sweep_opts, p_frags, sigma_scales, out);
        return cmd_validate(validate_opts, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace socialucb
