#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "poesim/graph.hpp"
#include "poesim/model.hpp"
#include "poesim/schedule.hpp"
#include "poesim/sim.hpp"

// Experiment configs: the JSON file format driving the CLI, scenario
// preparation (generator resolution with per-run sub-seeds), and the
// config-level run entry points. All user-facing indices (states, agents,
// graph nodes) are 1-based in files; everything is 0-based internally.

namespace poesim {

struct ModelSpec {
    // Exactly one of the two is set.
    std::optional<std::vector<std::vector<std::vector<double>>>> tables;  // [agent][state][signal]
    std::optional<PermutationModelSpec> generator;
    // Generator only: pin the draw; absent means "derive from the run seed".
    std::optional<std::uint64_t> fixed_seed;

    bool operator==(const ModelSpec&) const = default;
};

struct GraphSpec {
    enum class Kind { Geometric, Ring, Complete, EdgeList };
    Kind kind = Kind::Ring;
    int num_nodes = 0;
    double radius = 0.0;                       // geometric
    int max_attempts = 100;                    // geometric connectivity retries
    std::vector<std::pair<int, int>> edges;    // edge list (0-based internally)
    std::optional<std::uint64_t> fixed_seed;   // geometric

    bool operator==(const GraphSpec&) const = default;
};

struct ExperimentConfig {
    ModelSpec model;
    GraphSpec graph;
    ProtocolConfig protocol;
    std::optional<ScheduleSpec> schedule;      // absent -> per-protocol default
    // Batch comparison: run each listed protocol over the same seeds.
    // Empty means "just protocol".
    std::vector<Protocol> compare_protocols;
    int true_state = 0;                        // 0-based internally
    std::int64_t horizon = 1000;
    std::vector<std::uint64_t> seeds = {1};
    std::string out_dir = "out";
    TraceMode trace = TraceMode::Auto;
    std::vector<int> trace_agents;             // 0-based internally; empty = all

    bool operator==(const ExperimentConfig&) const = default;
};

// Parse + validate. Diagnostics name the offending key. Throws
// std::invalid_argument (config errors) or std::runtime_error (I/O).
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

const char* trace_mode_name(TraceMode mode);
std::optional<TraceMode> trace_mode_from_name(std::string_view name);

// A config with generators resolved into concrete objects for one run seed.
// Generator sub-seeds derive from the run seed (kGraphStream / kModelStream
// salts) unless the config pinned them.
struct PreparedScenario {
    HypothesisModel model;
    DirectedGraph graph;
    std::vector<std::array<double, 2>> positions;  // empty unless geometric
    GraphMetrics metrics;
    ProtocolConfig protocol;
    EpochSchedule schedule;
    int true_state = 0;
    std::int64_t horizon = 0;
};

PreparedScenario prepare_scenario(const ExperimentConfig& config, Protocol protocol,
                                  std::uint64_t run_seed);

// Prepare + run, honoring the config's trace settings.
RunRecord run_scenario(const ExperimentConfig& config, Protocol protocol, std::uint64_t run_seed);

// Independent runs over a seed list, plus their aggregate statistics.
struct BatchResult {
    std::vector<RunRecord> records;
    BatchAggregates aggregates;
};

BatchResult run_batch(const ExperimentConfig& config, Protocol protocol,
                      const std::vector<std::uint64_t>& seeds);

}  // namespace poesim
