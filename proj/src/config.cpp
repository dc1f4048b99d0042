#include "poesim/config.hpp"

#include <fstream>
#include <stdexcept>

#include "poesim/rng.hpp"

namespace poesim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw std::invalid_argument("config: " + key + ": " + what);
}

const json& require(const json& parent, const std::string& path, const char* key) {
    const auto it = parent.find(key);
    if (it == parent.end()) fail(path + key, "missing required key");
    return *it;
}

template <typename T>
T get_as(const json& node, const std::string& key, const char* type_name) {
    try {
        return node.get<T>();
    } catch (const json::exception&) {
        fail(key, std::string("expected ") + type_name);
    }
}

template <typename T>
T get_or(const json& parent, const std::string& path, const char* key, T fallback,
         const char* type_name) {
    const auto it = parent.find(key);
    if (it == parent.end()) return fallback;
    return get_as<T>(*it, path + key, type_name);
}

std::vector<std::uint64_t> parse_seeds(const json& node, const std::string& key) {
    std::vector<std::uint64_t> seeds;
    if (node.is_string()) {
        // "A..B", inclusive on both ends
        const std::string text = node.get<std::string>();
        const auto sep = text.find("..");
        if (sep == std::string::npos) fail(key, "expected \"A..B\" or a list of integers");
        try {
            const std::uint64_t from = std::stoull(text.substr(0, sep));
            const std::uint64_t to = std::stoull(text.substr(sep + 2));
            if (to < from) fail(key, "range is empty");
            for (std::uint64_t s = from; s <= to; ++s) seeds.push_back(s);
        } catch (const std::invalid_argument&) {
            fail(key, "expected \"A..B\" or a list of integers");
        }
    } else if (node.is_array()) {
        for (const auto& entry : node) {
            seeds.push_back(get_as<std::uint64_t>(entry, key, "integer seed"));
        }
    } else {
        fail(key, "expected \"A..B\" or a list of integers");
    }
    if (seeds.empty()) fail(key, "needs at least one seed");
    return seeds;
}

ModelSpec parse_model(const json& node) {
    ModelSpec spec;
    const bool has_tables = node.contains("likelihoods");
    const bool has_generator = node.contains("generator");
    if (has_tables == has_generator) {
        fail("model", "set exactly one of 'likelihoods' or 'generator'");
    }
    if (has_tables) {
        spec.tables = get_as<std::vector<std::vector<std::vector<double>>>>(
            node["likelihoods"], "model.likelihoods", "[agent][state][signal] number array");
        // Validate eagerly so bad tables are reported at parse time.
        HypothesisModel::from_tables(*spec.tables);
    } else {
        const json& generator = node["generator"];
        PermutationModelSpec perm;
        perm.rows = get_as<std::vector<std::vector<double>>>(
            require(generator, "model.generator.", "rows"), "model.generator.rows",
            "list of distribution rows");
        const auto pattern = get_as<std::vector<int>>(
            require(generator, "model.generator.", "pattern"), "model.generator.pattern",
            "list of 1-based row indices");
        perm.pattern.reserve(pattern.size());
        for (int row_index : pattern) {
            if (row_index < 1 || row_index > static_cast<int>(perm.rows.size())) {
                fail("model.generator.pattern", "row index " + std::to_string(row_index) +
                                                    " out of range (1-based)");
            }
            perm.pattern.push_back(row_index - 1);
        }
        perm.num_agents = get_as<int>(require(generator, "model.generator.", "num_agents"),
                                      "model.generator.num_agents", "integer");
        perm.max_attempts =
            get_or<int>(generator, "model.generator.", "max_attempts", 100, "integer");
        if (generator.contains("seed")) {
            spec.fixed_seed = get_as<std::uint64_t>(generator["seed"], "model.generator.seed",
                                                    "integer seed");
        }
        spec.generator = std::move(perm);
        // Dry-run one draw so row/pattern problems surface at parse time.
        make_permutation_model(*spec.generator, 0);
    }
    return spec;
}

GraphSpec parse_graph(const json& node) {
    GraphSpec spec;
    const std::string kind =
        get_as<std::string>(require(node, "graph.", "kind"), "graph.kind", "string");
    if (kind == "geometric") {
        spec.kind = GraphSpec::Kind::Geometric;
        spec.num_nodes = get_as<int>(require(node, "graph.", "num_nodes"), "graph.num_nodes",
                                     "integer");
        spec.radius =
            get_as<double>(require(node, "graph.", "radius"), "graph.radius", "number");
        spec.max_attempts = get_or<int>(node, "graph.", "max_attempts", 100, "integer");
        if (node.contains("seed")) {
            spec.fixed_seed = get_as<std::uint64_t>(node["seed"], "graph.seed", "integer seed");
        }
    } else if (kind == "ring" || kind == "complete") {
        spec.kind = kind == "ring" ? GraphSpec::Kind::Ring : GraphSpec::Kind::Complete;
        spec.num_nodes = get_as<int>(require(node, "graph.", "num_nodes"), "graph.num_nodes",
                                     "integer");
    } else if (kind == "edges") {
        spec.kind = GraphSpec::Kind::EdgeList;
        spec.num_nodes = get_as<int>(require(node, "graph.", "num_nodes"), "graph.num_nodes",
                                     "integer");
        const auto pairs = get_as<std::vector<std::vector<int>>>(
            require(node, "graph.", "edges"), "graph.edges", "list of [from,to] pairs");
        for (const auto& pair : pairs) {
            if (pair.size() != 2) fail("graph.edges", "each edge must be a [from,to] pair");
            spec.edges.emplace_back(pair[0] - 1, pair[1] - 1);  // 1-based on disk
        }
        // Validate indices/duplicates eagerly.
        DirectedGraph::from_edges(spec.num_nodes, spec.edges);
    } else {
        fail("graph.kind", "expected geometric | ring | complete | edges");
    }
    if (spec.num_nodes < 1) fail("graph.num_nodes", "must be >= 1");
    return spec;
}

}  // namespace

const char* trace_mode_name(TraceMode mode) {
    switch (mode) {
        case TraceMode::Auto:
            return "auto";
        case TraceMode::Full:
            return "full";
        case TraceMode::EpochEnds:
            return "epoch";
        case TraceMode::Off:
            return "off";
    }
    throw std::logic_error("trace_mode_name: unreachable");
}

std::optional<TraceMode> trace_mode_from_name(std::string_view name) {
    if (name == "auto") return TraceMode::Auto;
    if (name == "full") return TraceMode::Full;
    if (name == "epoch") return TraceMode::EpochEnds;
    if (name == "off") return TraceMode::Off;
    return std::nullopt;
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
    ExperimentConfig config;
    config.model = parse_model(require(doc, "", "model"));
    config.graph = parse_graph(require(doc, "", "graph"));

    if (doc.contains("protocol")) {
        const json& protocol = doc["protocol"];
        const std::string name =
            get_or<std::string>(protocol, "protocol.", "name", "poe", "string");
        const auto parsed = protocol_from_name(name);
        if (!parsed) fail("protocol.name", "expected poe | poe-fc | min-rule");
        config.protocol.protocol = *parsed;
        config.protocol.alpha = get_or<double>(protocol, "protocol.", "alpha", 1e-3, "number");
        if (!(config.protocol.alpha > 0.0) || !(config.protocol.alpha < 1.0)) {
            fail("protocol.alpha", "must lie in (0,1)");
        }
        config.protocol.bits_per_entry =
            get_or<int>(protocol, "protocol.", "bits_per_entry", 64, "integer");
        if (config.protocol.bits_per_entry < 1) fail("protocol.bits_per_entry", "must be >= 1");
        config.protocol.minrule_include_own_mu =
            get_or<bool>(protocol, "protocol.", "minrule_include_own_mu", false, "boolean");
        if (protocol.contains("schedule")) {
            const std::string text = get_as<std::string>(protocol["schedule"],
                                                         "protocol.schedule", "schedule string");
            try {
                config.schedule = parse_schedule_spec(text);
            } catch (const std::invalid_argument& error) {
                fail("protocol.schedule", error.what());
            }
        }
        if (protocol.contains("compare")) {
            const auto names = get_as<std::vector<std::string>>(
                protocol["compare"], "protocol.compare", "list of protocol names");
            for (const std::string& entry : names) {
                const auto compared = protocol_from_name(entry);
                if (!compared) fail("protocol.compare", "unknown protocol '" + entry + "'");
                config.compare_protocols.push_back(*compared);
            }
        }
    }

    if (doc.contains("run")) {
        const json& run = doc["run"];
        const int true_state = get_or<int>(run, "run.", "true_state", 1, "integer");
        if (true_state < 1) fail("run.true_state", "must be >= 1 (1-based state index)");
        config.true_state = true_state - 1;
        config.horizon = get_or<std::int64_t>(run, "run.", "horizon", 1000, "integer");
        if (config.horizon < 1) fail("run.horizon", "must be >= 1");
        if (run.contains("seeds")) config.seeds = parse_seeds(run["seeds"], "run.seeds");
        config.out_dir = get_or<std::string>(run, "run.", "out_dir", "out", "string");
        const std::string trace =
            get_or<std::string>(run, "run.", "trace", "auto", "string");
        const auto mode = trace_mode_from_name(trace);
        if (!mode) fail("run.trace", "expected auto | full | epoch | off");
        config.trace = *mode;
        if (run.contains("trace_agents")) {
            const auto agents = get_as<std::vector<int>>(run["trace_agents"], "run.trace_agents",
                                                         "list of 1-based agent indices");
            for (int agent : agents) {
                if (agent < 1) fail("run.trace_agents", "indices are 1-based");
                config.trace_agents.push_back(agent - 1);
            }
        }
    }

    // Cross-field checks that do not need generator resolution.
    const int num_states = config.model.tables
                               ? static_cast<int>((*config.model.tables)[0].size())
                               : static_cast<int>(config.model.generator->pattern.size());
    if (config.true_state >= num_states) {
        fail("run.true_state", "exceeds the number of states (" + std::to_string(num_states) +
                                   ")");
    }
    const int num_agents = config.model.tables ? static_cast<int>(config.model.tables->size())
                                               : config.model.generator->num_agents;
    if (num_agents != config.graph.num_nodes) {
        fail("graph.num_nodes", "graph has " + std::to_string(config.graph.num_nodes) +
                                    " nodes but the model has " + std::to_string(num_agents) +
                                    " agents");
    }
    for (int agent : config.trace_agents) {
        if (agent >= num_agents) fail("run.trace_agents", "agent index out of range");
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& error) {
        throw std::invalid_argument("config: " + path + " is not valid JSON: " + error.what());
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    json doc;
    json model;
    if (config.model.tables) {
        model["likelihoods"] = *config.model.tables;
    } else {
        json generator;
        generator["rows"] = config.model.generator->rows;
        std::vector<int> pattern;
        for (int row_index : config.model.generator->pattern) pattern.push_back(row_index + 1);
        generator["pattern"] = pattern;
        generator["num_agents"] = config.model.generator->num_agents;
        generator["max_attempts"] = config.model.generator->max_attempts;
        if (config.model.fixed_seed) generator["seed"] = *config.model.fixed_seed;
        model["generator"] = std::move(generator);
    }
    doc["model"] = std::move(model);

    json graph;
    switch (config.graph.kind) {
        case GraphSpec::Kind::Geometric:
            graph["kind"] = "geometric";
            graph["num_nodes"] = config.graph.num_nodes;
            graph["radius"] = config.graph.radius;
            graph["max_attempts"] = config.graph.max_attempts;
            if (config.graph.fixed_seed) graph["seed"] = *config.graph.fixed_seed;
            break;
        case GraphSpec::Kind::Ring:
            graph["kind"] = "ring";
            graph["num_nodes"] = config.graph.num_nodes;
            break;
        case GraphSpec::Kind::Complete:
            graph["kind"] = "complete";
            graph["num_nodes"] = config.graph.num_nodes;
            break;
        case GraphSpec::Kind::EdgeList: {
            graph["kind"] = "edges";
            graph["num_nodes"] = config.graph.num_nodes;
            json edges = json::array();
            for (const auto& [from, to] : config.graph.edges) {
                edges.push_back({from + 1, to + 1});
            }
            graph["edges"] = std::move(edges);
            break;
        }
    }
    doc["graph"] = std::move(graph);

    json protocol;
    protocol["name"] = protocol_name(config.protocol.protocol);
    protocol["alpha"] = config.protocol.alpha;
    protocol["bits_per_entry"] = config.protocol.bits_per_entry;
    protocol["minrule_include_own_mu"] = config.protocol.minrule_include_own_mu;
    if (config.schedule) protocol["schedule"] = schedule_spec_to_string(*config.schedule);
    if (!config.compare_protocols.empty()) {
        json names = json::array();
        for (Protocol entry : config.compare_protocols) names.push_back(protocol_name(entry));
        protocol["compare"] = std::move(names);
    }
    doc["protocol"] = std::move(protocol);

    json run;
    run["true_state"] = config.true_state + 1;
    run["horizon"] = config.horizon;
    run["seeds"] = config.seeds;
    run["out_dir"] = config.out_dir;
    run["trace"] = trace_mode_name(config.trace);
    if (!config.trace_agents.empty()) {
        std::vector<int> agents;
        for (int agent : config.trace_agents) agents.push_back(agent + 1);
        run["trace_agents"] = agents;
    }
    doc["run"] = std::move(run);
    return doc;
}

PreparedScenario prepare_scenario(const ExperimentConfig& config, Protocol protocol,
                                  std::uint64_t run_seed) {
    PreparedScenario scenario;
    if (config.model.tables) {
        scenario.model = HypothesisModel::from_tables(*config.model.tables);
    } else {
        const std::uint64_t model_seed =
            config.model.fixed_seed ? *config.model.fixed_seed : mix_seed(run_seed, kModelStream);
        scenario.model = make_identifiable_permutation_model(*config.model.generator, model_seed);
    }

    switch (config.graph.kind) {
        case GraphSpec::Kind::Geometric: {
            const std::uint64_t graph_seed = config.graph.fixed_seed
                                                 ? *config.graph.fixed_seed
                                                 : mix_seed(run_seed, kGraphStream);
            GeometricGraph geometric = generate_geometric_connected(
                config.graph.num_nodes, config.graph.radius, graph_seed,
                config.graph.max_attempts);
            scenario.graph = std::move(geometric.graph);
            scenario.positions = std::move(geometric.positions);
            break;
        }
        case GraphSpec::Kind::Ring:
            scenario.graph = make_ring(config.graph.num_nodes);
            break;
        case GraphSpec::Kind::Complete:
            scenario.graph = make_complete(config.graph.num_nodes);
            break;
        case GraphSpec::Kind::EdgeList:
            scenario.graph = DirectedGraph::from_edges(config.graph.num_nodes, config.graph.edges);
            break;
    }

    scenario.metrics = all_pairs_distances(scenario.graph);
    scenario.protocol = config.protocol;
    scenario.protocol.protocol = protocol;
    const ScheduleSpec spec =
        config.schedule ? *config.schedule : default_schedule(protocol, scenario.metrics.diameter);
    scenario.schedule = make_schedule(spec, config.horizon);
    scenario.true_state = config.true_state;
    scenario.horizon = config.horizon;
    return scenario;
}

RunRecord run_scenario(const ExperimentConfig& config, Protocol protocol, std::uint64_t run_seed) {
    const PreparedScenario scenario = prepare_scenario(config, protocol, run_seed);
    RunOptions options;
    options.trace = config.trace;
    options.trace_agents = config.trace_agents;
    return run(scenario.model, scenario.graph, scenario.protocol, scenario.schedule,
               scenario.true_state, scenario.horizon, run_seed, options);
}

BatchResult run_batch(const ExperimentConfig& config, Protocol protocol,
                      const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw std::invalid_argument("run_batch: needs at least one seed");
    BatchResult result;
    result.records.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        result.records.push_back(run_scenario(config, protocol, seed));
    }
    result.aggregates = aggregate_runs(result.records);
    return result;
}

}  // namespace poesim
