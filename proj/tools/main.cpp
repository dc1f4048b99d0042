// poesim: command-line front end for the distributed hypothesis testing
// simulator. Subcommands: check (validate a config and report scenario
// facts), run (one seeded run), batch (all seeds, optionally comparing
// protocols). Flags override config keys; the flag always wins.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "poesim/config.hpp"
#include "poesim/io.hpp"
#include "poesim/rng.hpp"
#include "poesim/version.hpp"

namespace fs = std::filesystem;
using namespace poesim;

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string seeds_range;  // "A..B"
    std::string protocol;
    std::optional<double> alpha;
    std::optional<std::int64_t> horizon;
    std::string out_dir;
    std::string trace;
};

void add_common_options(CLI::App* cmd, Overrides& overrides) {
    cmd->add_option("--config", overrides.config_path, "experiment config file (JSON)")
        ->required();
    cmd->add_option("--seed", overrides.seed, "single run seed (overrides config seeds)");
    cmd->add_option("--seeds", overrides.seeds_range, "seed range A..B (overrides config seeds)");
    cmd->add_option("--protocol", overrides.protocol,
                    "protocol: poe | poe-fc | min-rule (disables config compare list)");
    cmd->add_option("--alpha", overrides.alpha, "rounding threshold parameter in (0,1)");
    cmd->add_option("--horizon", overrides.horizon, "number of rounds");
    cmd->add_option("--out", overrides.out_dir, "output directory");
    cmd->add_option("--trace", overrides.trace, "trace verbosity: full | epoch | off");
}

ExperimentConfig load_with_overrides(const Overrides& overrides) {
    ExperimentConfig config = parse_config_file(overrides.config_path);
    if (!overrides.protocol.empty()) {
        const auto protocol = protocol_from_name(overrides.protocol);
        if (!protocol) {
            throw std::invalid_argument("--protocol: expected poe | poe-fc | min-rule");
        }
        config.protocol.protocol = *protocol;
        config.compare_protocols.clear();
    }
    if (overrides.alpha) {
        if (!(*overrides.alpha > 0.0) || !(*overrides.alpha < 1.0)) {
            throw std::invalid_argument("--alpha: must lie in (0,1)");
        }
        config.protocol.alpha = *overrides.alpha;
    }
    if (overrides.horizon) {
        if (*overrides.horizon < 1) throw std::invalid_argument("--horizon: must be >= 1");
        config.horizon = *overrides.horizon;
    }
    if (!overrides.out_dir.empty()) config.out_dir = overrides.out_dir;
    if (!overrides.trace.empty()) {
        const auto mode = trace_mode_from_name(overrides.trace);
        if (!mode) throw std::invalid_argument("--trace: expected auto | full | epoch | off");
        config.trace = *mode;
    }
    if (!overrides.seeds_range.empty()) {
        const auto sep = overrides.seeds_range.find("..");
        if (sep == std::string::npos) throw std::invalid_argument("--seeds: expected A..B");
        const std::uint64_t from = std::stoull(overrides.seeds_range.substr(0, sep));
        const std::uint64_t to = std::stoull(overrides.seeds_range.substr(sep + 2));
        if (to < from) throw std::invalid_argument("--seeds: range is empty");
        config.seeds.clear();
        for (std::uint64_t s = from; s <= to; ++s) config.seeds.push_back(s);
    }
    if (overrides.seed) config.seeds = {*overrides.seed};
    return config;
}

std::vector<Protocol> protocols_to_run(const ExperimentConfig& config) {
    if (!config.compare_protocols.empty()) return config.compare_protocols;
    return {config.protocol.protocol};
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << contents;
}

void write_manifest(const fs::path& out_dir, const char* command,
                    const ExperimentConfig& config, const std::vector<std::string>& outputs) {
    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["config"] = config_to_json(config);
    manifest["outputs"] = outputs;
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

int cmd_check(const Overrides& overrides) {
    const ExperimentConfig config = load_with_overrides(overrides);
    const std::uint64_t seed = config.seeds.front();
    bool ok = true;

    // Model: explicit tables may fail identifiability; the generator retries
    // internally and fails only if its attempt budget runs out.
    HypothesisModel model;
    try {
        if (config.model.tables) {
            model = HypothesisModel::from_tables(*config.model.tables);
        } else {
            const std::uint64_t model_seed = config.model.fixed_seed
                                                 ? *config.model.fixed_seed
                                                 : mix_seed(seed, kModelStream);
            model = make_identifiable_permutation_model(*config.model.generator, model_seed);
        }
        std::cout << "model: n=" << model.num_agents << " agents, m=" << model.num_states
                  << " states\n";
        const auto identifiability = check_global_identifiability(model);
        if (identifiability.identifiable) {
            std::cout << "global identifiability: OK\n";
        } else {
            const auto [p, q] = *identifiability.witness;
            std::cout << "global identifiability: FAIL — no agent distinguishes states "
                      << p + 1 << " and " << q + 1 << "\n";
            ok = false;
        }
    } catch (const std::exception& error) {
        std::cout << "model: FAIL — " << error.what() << "\n";
        return 1;
    }

    try {
        const PreparedScenario scenario =
            prepare_scenario(config, config.protocol.protocol, seed);
        const bool connected = scenario.metrics.all_pairs_reachable();
        std::cout << "graph: " << (connected ? "strongly connected" : "NOT strongly connected")
                  << ", diameter " << scenario.metrics.diameter << "\n";
        if (!connected) ok = false;
        const int diameter = scenario.metrics.diameter;
        std::cout << "min epoch length: poe > " << diameter << " (i.e. >= "
                  << min_epoch_length(Protocol::Poe, diameter) << "), poe-fc >= "
                  << min_epoch_length(Protocol::PoeFc, diameter) << ", min-rule >= "
                  << min_epoch_length(Protocol::MinRule, diameter) << "\n";
        std::cout << "schedule (" << protocol_name(scenario.protocol.protocol)
                  << "): " << scenario.schedule.starts.size() << " epoch starts in [0,"
                  << config.horizon << "], lengths " << scenario.schedule.min_length() << ".."
                  << scenario.schedule.max_length() << "\n";
    } catch (const std::exception& error) {
        std::cout << "graph: FAIL — " << error.what() << "\n";
        return 1;
    }

    std::cout << (ok ? "check: OK" : "check: FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_run(const Overrides& overrides) {
    const ExperimentConfig config = load_with_overrides(overrides);
    const std::uint64_t seed = config.seeds.front();
    const Protocol protocol = protocols_to_run(config).front();

    const PreparedScenario scenario = prepare_scenario(config, protocol, seed);
    RunOptions options;
    options.trace = config.trace;
    options.trace_agents = config.trace_agents;
    const RunRecord record = run(scenario.model, scenario.graph, scenario.protocol,
                                 scenario.schedule, scenario.true_state, scenario.horizon, seed,
                                 options);

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);
    std::vector<std::string> outputs;
    {
        std::ostringstream buffer;
        write_summary_csv(buffer, {record});
        write_file(out_dir / "summary.csv", buffer.str());
        outputs.push_back("summary.csv");
    }
    if (record.trace_mode_used != TraceMode::Off) {
        std::ostringstream buffer;
        write_trace_csv(buffer, record);
        write_file(out_dir / "trace.csv", buffer.str());
        outputs.push_back("trace.csv");
    }
    if (!scenario.positions.empty()) {
        std::ostringstream buffer;
        write_positions_csv(buffer, scenario.positions);
        write_file(out_dir / "positions.csv", buffer.str());
        outputs.push_back("positions.csv");
    }
    write_manifest(out_dir, "run", config, outputs);

    std::cout << protocol_name(protocol) << " seed=" << seed << ": ";
    if (record.converged()) {
        std::cout << "converged at t=" << record.convergence_step;
        if (!record.bits_per_agent_at_convergence.empty()) {
            std::cout << " (bits/agent " << record.bits_per_agent_at_convergence.front() << ")";
        }
    } else {
        std::cout << "did not converge within horizon " << record.horizon;
    }
    std::cout << "; outputs in " << out_dir.string() << "\n";
    return 0;
}

int cmd_batch(const Overrides& overrides) {
    const ExperimentConfig config = load_with_overrides(overrides);
    const std::vector<Protocol> protocols = protocols_to_run(config);

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);
    std::vector<std::string> outputs;
    std::vector<RunRecord> all_records;
    std::vector<std::pair<std::string, BatchAggregates>> aggregate_rows;

    for (Protocol protocol : protocols) {
        std::vector<RunRecord> records;
        for (std::uint64_t seed : config.seeds) {
            const PreparedScenario scenario = prepare_scenario(config, protocol, seed);
            RunOptions options;
            options.trace = config.trace;
            options.trace_agents = config.trace_agents;
            RunRecord record = run(scenario.model, scenario.graph, scenario.protocol,
                                   scenario.schedule, scenario.true_state, scenario.horizon, seed,
                                   options);
            if (record.trace_mode_used != TraceMode::Off) {
                const std::string name = std::string("trace_") + protocol_name(protocol) +
                                         "_seed" + std::to_string(seed) + ".csv";
                std::ostringstream buffer;
                write_trace_csv(buffer, record);
                write_file(out_dir / name, buffer.str());
                outputs.push_back(name);
            }
            if (!scenario.positions.empty()) {
                const std::string name = "positions_seed" + std::to_string(seed) + ".csv";
                if (!fs::exists(out_dir / name)) {  // same for every protocol
                    std::ostringstream buffer;
                    write_positions_csv(buffer, scenario.positions);
                    write_file(out_dir / name, buffer.str());
                    outputs.push_back(name);
                }
            }
            records.push_back(std::move(record));
        }
        const BatchAggregates aggregates = aggregate_runs(records);
        std::cout << protocol_name(protocol) << ": " << aggregates.num_converged << "/"
                  << aggregates.num_runs << " converged, median convergence "
                  << aggregates.convergence_median << ", median wrapper onset "
                  << aggregates.wrapper_median << ", median total bits "
                  << aggregates.total_bits_median << "\n";
        aggregate_rows.emplace_back(protocol_name(protocol), aggregates);
        for (RunRecord& record : records) all_records.push_back(std::move(record));
    }

    {
        std::ostringstream buffer;
        write_summary_csv(buffer, all_records);
        write_file(out_dir / "summary.csv", buffer.str());
        outputs.push_back("summary.csv");
    }
    {
        std::ostringstream buffer;
        write_aggregates_csv(buffer, aggregate_rows);
        write_file(out_dir / "aggregates.csv", buffer.str());
        outputs.push_back("aggregates.csv");
    }
    write_manifest(out_dir, "batch", config, outputs);
    std::cout << "outputs in " << out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"poesim — finite-time distributed hypothesis testing simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Overrides check_overrides;
    Overrides run_overrides;
    Overrides batch_overrides;
    CLI::App* check = app.add_subcommand(
        "check", "validate a config: identifiability, connectivity, epoch requirements");
    add_common_options(check, check_overrides);
    CLI::App* run_cmd =
        app.add_subcommand("run", "execute one seeded run and write trace/summary files");
    add_common_options(run_cmd, run_overrides);
    CLI::App* batch = app.add_subcommand(
        "batch", "execute all seeds (and compared protocols); write summaries + aggregates");
    add_common_options(batch, batch_overrides);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_overrides);
        if (run_cmd->parsed()) return cmd_run(run_overrides);
        if (batch->parsed()) return cmd_batch(batch_overrides);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
