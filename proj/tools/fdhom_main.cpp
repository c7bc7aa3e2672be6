// fdhom: depth-based homogeneity testing for functional samples.
//
// Subcommands: depth, test, simulate, derive. Exit codes: 0 ok, 2 usage,
// 3 data error, 4 numeric error. Errors print a JSON diagnostic on stderr.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdhom/csv_io.hpp"
#include "fdhom/gp_sim.hpp"
#include "fdhom/manifest.hpp"
#include "fdhom/rng.hpp"
#include "fdhom/version.hpp"

namespace {

using nlohmann::json;

constexpr std::uint64_t kDepthSeedStream = 0x646570ULL;

const std::map<std::string, fdhom::DepthKind> kDepthNames = {
    {"fm", fdhom::DepthKind::FraimanMuniz},
    {"hmodal", fdhom::DepthKind::HModal},
    {"rpd", fdhom::DepthKind::RandomProjection},
    {"bd", fdhom::DepthKind::Band},
    {"mbd", fdhom::DepthKind::ModifiedBand},
};

const std::map<std::string, fdhom::StatisticKind> kStatNames = {
    {"p1", fdhom::StatisticKind::P1},
    {"p2", fdhom::StatisticKind::P2},
    {"p3", fdhom::StatisticKind::P3},
    {"p4", fdhom::StatisticKind::P4},
};

std::string depth_name(fdhom::DepthKind kind) {
    for (const auto& [name, k] : kDepthNames) {
        if (k == kind) return name;
    }
    return "?";
}

std::string stat_name_lower(fdhom::StatisticKind kind) {
    for (const auto& [name, k] : kStatNames) {
        if (k == kind) return name;
    }
    return "?";
}

// The replayable command string omits --threads: thread count is an
// execution knob that never changes output bytes, so it has no place in the
// reproducibility record.
std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--threads=", 0) == 0) continue;
        if (arg == "--threads") {
            ++i;  // skip its value too
            continue;
        }
        if (!out.empty()) out += ' ';
        out += arg;
    }
    return out;
}

// Writes to a file, or stdout for "-".
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw fdhom::ParseError("cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

json depth_spec_json(const fdhom::DepthSpec& spec) {
    return {
        {"kind", depth_name(spec.kind)},
        {"bandwidth_percentile", spec.bandwidth_percentile},
        {"projection_count", spec.projection_count},
        {"band_order", spec.band_order},
        {"rng_seed", spec.rng_seed},
    };
}

// Shared flag bundles -------------------------------------------------------

struct DepthFlags {
    std::string depth;
    double bandwidth_percentile = 15.0;
    int projections = 50;

    void attach(CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--depth", depth, "Depth measure: fm|hmodal|rpd|bd|mbd")
                        ->check(CLI::IsMember({"fm", "hmodal", "rpd", "bd", "mbd"}));
        if (required) opt->required();
        cmd->add_option("--bw-percentile", bandwidth_percentile,
                        "Bandwidth percentile for hmodal/rpd (default 15)");
        cmd->add_option("--projections", projections, "Projection count for rpd (default 50)");
    }

    fdhom::DepthSpec spec(std::uint64_t seed) const {
        fdhom::DepthSpec s;
        s.kind = kDepthNames.at(depth);
        s.bandwidth_percentile = bandwidth_percentile;
        s.projection_count = projections;
        s.rng_seed = fdhom::rng::derive(seed, kDepthSeedStream);
        s.validate();
        return s;
    }
};

struct CommonFlags {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = "-";

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Master seed (default 0)");
        cmd->add_option("--threads", threads, "Worker threads, 0 = all cores (default 0)");
        cmd->add_option("--out", out, "Output path, '-' for stdout (default '-')");
    }
};

// depth ---------------------------------------------------------------------

struct DepthCommand {
    std::string input;
    DepthFlags depth;
    CommonFlags common;

    int run(const std::string& command_line) const {
        const fdhom::FunctionalSample sample = fdhom::load_sample_csv(input);
        const fdhom::DepthSpec spec = depth.spec(common.seed);
        const fdhom::DepthVector depths =
            fdhom::compute_depth(sample, spec, fdhom::DegeneratePolicy::Throw);

        fdhom::RunManifest manifest;
        manifest.command = command_line;
        manifest.tool_version = fdhom::kVersion;
        manifest.master_seed = common.seed;
        manifest.config = {{"depth", depth_spec_json(spec)}};
        manifest.input_digests.emplace_back(input, fdhom::digest_file(input));

        OutputTarget target(common.out);
        std::ostream& os = target.stream();
        os << "# " << manifest.comment_line() << "\n";
        os << "curve,depth\n";
        for (std::size_t i = 0; i < depths.values.size(); ++i) {
            const std::string label =
                sample.labels().empty() ? std::to_string(i) : sample.labels()[i];
            os << label << "," << fdhom::format_double(depths.values[i]) << "\n";
        }
        return 0;
    }
};

// test ----------------------------------------------------------------------

struct TestCommand {
    std::string input_f;
    std::string input_g;
    DepthFlags depth;
    CommonFlags common;
    std::string stat;
    int bootstrap = 1000;
    double alpha = 0.05;
    std::string json_out;

    int run(const std::string& command_line) const {
        const fdhom::FunctionalSample f = fdhom::load_sample_csv(input_f);
        const fdhom::FunctionalSample g = fdhom::load_sample_csv(input_g);

        fdhom::TestConfig cfg;
        cfg.depth = depth.spec(common.seed);
        cfg.statistic = kStatNames.at(stat);
        cfg.bootstrap_count = bootstrap;
        cfg.alpha = alpha;
        cfg.rng_seed = common.seed;
        cfg.threads = common.threads;
        cfg.validate();

        const fdhom::TestResult result = fdhom::bootstrap_test(f, g, cfg);

        fdhom::RunManifest manifest;
        manifest.command = command_line;
        manifest.tool_version = fdhom::kVersion;
        manifest.master_seed = common.seed;
        manifest.config = {
            {"depth", depth_spec_json(cfg.depth)},
            {"statistic", stat},
            {"bootstrap_count", cfg.bootstrap_count},
            {"alpha", cfg.alpha},
        };
        manifest.input_digests.emplace_back(input_f, fdhom::digest_file(input_f));
        manifest.input_digests.emplace_back(input_g, fdhom::digest_file(input_g));

        json out = {
            {"manifest", manifest.to_json()},
            {"statistic", stat},
            {"depth", depth.depth},
            {"observed", result.observed},
            {"critical_value", result.critical_value},
            {"reject", result.reject},
            {"tail", result.tail == fdhom::Tail::Lower ? "lower" : "upper"},
            {"bootstrap_values", result.bootstrap_values},
        };

        OutputTarget target(common.out);
        std::ostream& os = target.stream();
        os << "statistic  depth    value            CV               Rej.\n";
        os << fdhom::statistic_name(cfg.statistic) << "         " << depth.depth;
        for (std::size_t i = depth.depth.size(); i < 9; ++i) os << ' ';
        std::string value = fdhom::format_double(result.observed);
        std::string cv = fdhom::format_double(result.critical_value);
        value.resize(std::max<std::size_t>(value.size(), 16), ' ');
        cv.resize(std::max<std::size_t>(cv.size(), 16), ' ');
        os << value << " " << cv << " " << (result.reject ? "Yes" : "No") << "\n";

        if (!json_out.empty()) {
            OutputTarget jtarget(json_out);
            jtarget.stream() << out.dump(2) << "\n";
        } else {
            os << out.dump(2) << "\n";
        }
        return 0;
    }
};

// simulate ------------------------------------------------------------------

struct SimulateCommand {
    std::string preset_table;  // table1 | table2 | power
    std::string scale = "desk";
    std::vector<std::string> depth_list;
    std::vector<std::string> stat_list;
    std::vector<double> etas = {0.0, 0.1, 0.25, 1.0};
    int reps = -1;
    int bootstrap = -1;
    double alpha = 0.05;
    std::size_t grid_size = 30;
    std::size_t curves = 50;
    double bandwidth_percentile = 15.0;
    int projections = 50;
    CommonFlags common;

    std::vector<fdhom::DepthSpec> depth_specs() const {
        std::vector<std::string> names = depth_list;
        if (names.empty() || (names.size() == 1 && names[0] == "all")) {
            names = {"fm", "hmodal", "rpd", "bd", "mbd"};
        }
        std::vector<fdhom::DepthSpec> specs;
        for (const std::string& name : names) {
            if (!kDepthNames.count(name)) {
                throw CLI::ValidationError("--depths", "unknown depth '" + name + "'");
            }
            fdhom::DepthSpec s;
            s.kind = kDepthNames.at(name);
            s.bandwidth_percentile = bandwidth_percentile;
            s.projection_count = projections;
            s.rng_seed = fdhom::rng::derive(common.seed, kDepthSeedStream);
            specs.push_back(s);
        }
        return specs;
    }

    std::vector<fdhom::StatisticKind> stat_kinds() const {
        std::vector<std::string> names = stat_list;
        if (names.empty() || (names.size() == 1 && names[0] == "all")) {
            names = {"p1", "p2", "p3", "p4"};
        }
        std::vector<fdhom::StatisticKind> kinds;
        for (const std::string& name : names) {
            if (!kStatNames.count(name)) {
                throw CLI::ValidationError("--stats", "unknown statistic '" + name + "'");
            }
            kinds.push_back(kStatNames.at(name));
        }
        return kinds;
    }

    fdhom::SimConfig sim_config() const {
        fdhom::SimConfig cfg;
        cfg.grid_size = grid_size;
        cfg.curves_per_sample = curves;
        if (scale == "paper") {
            cfg.replications = 100;
            cfg.test.bootstrap_count = 1000;
        } else {
            cfg.replications = preset_table == "table1" ? 25 : 40;
            cfg.test.bootstrap_count = 500;
        }
        if (reps > 0) cfg.replications = reps;
        if (bootstrap > 0) cfg.test.bootstrap_count = bootstrap;
        cfg.test.alpha = alpha;
        cfg.test.rng_seed = common.seed;
        cfg.threads = common.threads;
        return cfg;
    }

    int run(const std::string& command_line) const {
        const fdhom::SimConfig cfg = sim_config();
        const auto depths = depth_specs();
        const auto stats = stat_kinds();

        fdhom::RunManifest manifest;
        manifest.command = command_line;
        manifest.tool_version = fdhom::kVersion;
        manifest.master_seed = common.seed;
        json depth_cfg = json::array();
        for (const auto& d : depths) depth_cfg.push_back(depth_spec_json(d));
        json stat_cfg = json::array();
        for (const auto s : stats) stat_cfg.push_back(stat_name_lower(s));
        manifest.config = {
            {"table", preset_table},
            {"preset", scale},
            {"replications", cfg.replications},
            {"bootstrap_count", cfg.test.bootstrap_count},
            {"alpha", cfg.test.alpha},
            {"grid_size", cfg.grid_size},
            {"curves_per_sample", cfg.curves_per_sample},
            {"depths", depth_cfg},
            {"statistics", stat_cfg},
            {"etas", etas},
        };

        OutputTarget target(common.out);
        std::ostream& os = target.stream();
        os << "# " << manifest.comment_line() << "\n";

        if (preset_table == "power") {
            if (depths.size() != 1 || stats.size() != 1) {
                throw CLI::ValidationError("simulate power",
                                           "needs exactly one depth and one statistic");
            }
            const auto points = fdhom::power_sweep(etas, depths[0], stats[0], cfg);
            os << "eta,rejections,replications\n";
            for (const auto& p : points) {
                os << fdhom::format_double(p.eta) << "," << p.rejections << ","
                   << p.replications << "\n";
            }
            return 0;
        }

        const auto cells = preset_table == "table1" ? fdhom::reproduce_table1(depths, stats, cfg)
                                                    : fdhom::reproduce_null_power(depths, stats, cfg);
        os << "depth";
        if (preset_table == "table1") os << ",scenario";
        for (const auto s : stats) os << "," << fdhom::statistic_name(s);
        os << "\n";

        // Cells arrive in (depth, scenario, stat) loop order; emit wide rows.
        const std::size_t per_row = stats.size();
        for (std::size_t i = 0; i < cells.size(); i += per_row) {
            os << depth_name(cells[i].depth);
            if (preset_table == "table1") os << "," << cells[i].sample_index;
            for (std::size_t s = 0; s < per_row; ++s) {
                const auto& cell = cells[i + s];
                if (preset_table == "table1") {
                    os << "," << cell.rejections;
                } else {
                    os << ","
                       << fdhom::format_double(static_cast<double>(cell.rejections) /
                                               static_cast<double>(cell.replications));
                }
            }
            os << "\n";
        }
        return 0;
    }
};

// derive ----------------------------------------------------------------------

struct DeriveCommand {
    std::string input;
    int order = 1;
    CommonFlags common;

    int run(const std::string& command_line) const {
        const fdhom::FunctionalSample sample = fdhom::load_sample_csv(input);
        const fdhom::FunctionalSample derived = fdhom::finite_difference(sample, order);

        fdhom::RunManifest manifest;
        manifest.command = command_line;
        manifest.tool_version = fdhom::kVersion;
        manifest.master_seed = common.seed;
        manifest.config = {{"order", order}};
        manifest.input_digests.emplace_back(input, fdhom::digest_file(input));

        OutputTarget target(common.out);
        fdhom::save_sample_csv(target.stream(), derived, manifest.comment_line());
        return 0;
    }
};

void print_error(const std::string& kind, const std::string& message) {
    json diag = {{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << diag.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth-based two-sample homogeneity testing for functional data"};
    app.set_version_flag("--version", std::string(fdhom::kVersion));
    app.require_subcommand(1);

    DepthCommand depth_cmd;
    auto* depth_app = app.add_subcommand("depth", "Per-curve depths of a sample");
    depth_app->add_option("sample", depth_cmd.input, "Sample CSV path")->required();
    depth_cmd.depth.attach(depth_app, true);
    depth_cmd.common.attach(depth_app);

    TestCommand test_cmd;
    auto* test_app = app.add_subcommand("test", "Bootstrap homogeneity test of two samples");
    test_app->add_option("sample_f", test_cmd.input_f, "Reference sample CSV")->required();
    test_app->add_option("sample_g", test_cmd.input_g, "Test sample CSV")->required();
    test_cmd.depth.attach(test_app, true);
    test_app->add_option("--stat", test_cmd.stat, "Statistic: p1|p2|p3|p4")
        ->check(CLI::IsMember({"p1", "p2", "p3", "p4"}))
        ->required();
    test_app->add_option("--bootstrap", test_cmd.bootstrap, "Bootstrap resamples (default 1000)");
    test_app->add_option("--alpha", test_cmd.alpha, "Significance level (default 0.05)");
    test_app->add_option("--json", test_cmd.json_out, "Write the JSON result here instead of stdout");
    test_cmd.common.attach(test_app);

    SimulateCommand sim_cmd;
    auto* sim_app = app.add_subcommand("simulate", "Gaussian-process rejection studies");
    sim_app->add_option("table", sim_cmd.preset_table, "Which study: table1|table2|power")
        ->check(CLI::IsMember({"table1", "table2", "power"}))
        ->required();
    sim_app->add_option("--preset", sim_cmd.scale, "Scale preset: paper|desk (default desk)")
        ->check(CLI::IsMember({"paper", "desk"}));
    sim_app->add_option("--depths", sim_cmd.depth_list,
                        "Depths to run (comma list of fm,hmodal,rpd,bd,mbd or 'all')")
        ->delimiter(',');
    sim_app->add_option("--stats", sim_cmd.stat_list,
                        "Statistics to run (comma list of p1..p4 or 'all')")
        ->delimiter(',');
    sim_app->add_option("--etas", sim_cmd.etas, "Mean shifts for the power sweep")
        ->delimiter(',');
    sim_app->add_option("--reps", sim_cmd.reps, "Replications (overrides preset)");
    sim_app->add_option("--bootstrap", sim_cmd.bootstrap, "Bootstrap resamples (overrides preset)");
    sim_app->add_option("--alpha", sim_cmd.alpha, "Significance level (default 0.05)");
    sim_app->add_option("--grid-size", sim_cmd.grid_size, "Grid points per curve (default 30)");
    sim_app->add_option("--curves", sim_cmd.curves, "Curves per sample (default 50)");
    sim_app->add_option("--bw-percentile", sim_cmd.bandwidth_percentile,
                        "Bandwidth percentile for hmodal/rpd (default 15)");
    sim_app->add_option("--projections", sim_cmd.projections,
                        "Projection count for rpd (default 50)");
    sim_cmd.common.attach(sim_app);

    DeriveCommand derive_cmd;
    auto* derive_app = app.add_subcommand("derive", "Finite-difference derivative of a sample");
    derive_app->add_option("sample", derive_cmd.input, "Sample CSV path")->required();
    derive_app->add_option("--order", derive_cmd.order, "Derivative order (default 1)");
    derive_cmd.common.attach(derive_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    }

    const std::string command_line = join_args(argc, argv);
    try {
        if (depth_app->parsed()) return depth_cmd.run(command_line);
        if (test_app->parsed()) return test_cmd.run(command_line);
        if (sim_app->parsed()) return sim_cmd.run(command_line);
        if (derive_app->parsed()) return derive_cmd.run(command_line);
        print_error("usage", "no subcommand given");
        return 2;
    } catch (const CLI::ValidationError& e) {
        print_error("usage", e.what());
        return 2;
    } catch (const fdhom::ParseError& e) {
        print_error("data", e.what());
        return 3;
    } catch (const fdhom::ContractError& e) {
        print_error("data", e.what());
        return 3;
    } catch (const fdhom::DegenerateInputError& e) {
        print_error("data", e.what());
        return 3;
    } catch (const fdhom::DegenerateSampleError& e) {
        print_error("numeric", e.what());
        return 4;
    } catch (const fdhom::NumericError& e) {
        print_error("numeric", e.what());
        return 4;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 4;
    }
}
