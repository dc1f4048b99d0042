// Python bindings for the core operations: model diagnostics, belief
// primitives, graph construction, schedules, and the simulation engine.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "poesim/config.hpp"
#include "poesim/io.hpp"
#include "poesim/sim.hpp"
#include "poesim/version.hpp"

namespace py = pybind11;
using namespace poesim;

namespace {

Protocol parse_protocol(const std::string& name) {
    const auto protocol = protocol_from_name(name);
    if (!protocol) throw std::invalid_argument("unknown protocol '" + name + "'");
    return *protocol;
}

TraceMode parse_trace(const std::string& name) {
    const auto mode = trace_mode_from_name(name);
    if (!mode) throw std::invalid_argument("unknown trace mode '" + name + "'");
    return *mode;
}

RunRecord run_py(const HypothesisModel& model, const DirectedGraph& graph,
                 const std::string& protocol, int true_state, std::int64_t horizon,
                 std::uint64_t seed, double alpha, const std::string& schedule,
                 int bits_per_entry, const std::string& trace) {
    ProtocolConfig config;
    config.protocol = parse_protocol(protocol);
    config.alpha = alpha;
    config.bits_per_entry = bits_per_entry;
    const GraphMetrics metrics = all_pairs_distances(graph);
    const ScheduleSpec spec = schedule.empty()
                                  ? default_schedule(config.protocol, metrics.diameter)
                                  : parse_schedule_spec(schedule);
    RunOptions options;
    options.trace = parse_trace(trace);
    return run(model, graph, config, make_schedule(spec, horizon), true_state, horizon, seed,
               options);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-time distributed hypothesis testing: process-of-elimination "
              "protocols, the min-rule baseline, and a deterministic round engine.";
    m.attr("__version__") = kVersion;

    py::register_exception<std::invalid_argument>(m, "ConfigError", PyExc_ValueError);

    py::class_<HypothesisModel>(m, "HypothesisModel")
        .def(py::init([](std::vector<std::vector<std::vector<double>>> tables) {
                 return HypothesisModel::from_tables(std::move(tables));
             }),
             py::arg("likelihoods"), "Per-agent likelihood tables [agent][state][signal].")
        .def_readonly("num_states", &HypothesisModel::num_states)
        .def_readonly("num_agents", &HypothesisModel::num_agents)
        .def("row", &HypothesisModel::row, py::arg("agent"), py::arg("state"))
        .def_static(
            "permutation",
            [](std::vector<std::vector<double>> rows, std::vector<int> pattern, int num_agents,
               std::uint64_t seed, bool identifiable) {
                PermutationModelSpec spec;
                spec.rows = std::move(rows);
                spec.pattern = std::move(pattern);
                spec.num_agents = num_agents;
                return identifiable ? make_identifiable_permutation_model(spec, seed)
                                    : make_permutation_model(spec, seed);
            },
            py::arg("rows"), py::arg("pattern"), py::arg("num_agents"), py::arg("seed"),
            py::arg("identifiable") = true,
            "Base rows + per-state pattern (0-based); agents past the first get "
            "seeded random state permutations.");

    py::class_<DirectedGraph>(m, "DirectedGraph")
        .def(py::init([](int num_nodes, std::vector<std::pair<int, int>> edges) {
                 return DirectedGraph::from_edges(num_nodes, std::move(edges));
             }),
             py::arg("num_nodes"), py::arg("edges"))
        .def_readonly("num_nodes", &DirectedGraph::num_nodes)
        .def_readonly("edges", &DirectedGraph::edges)
        .def("is_strongly_connected",
             [](const DirectedGraph& graph) { return is_strongly_connected(graph); })
        .def("diameter",
             [](const DirectedGraph& graph) { return all_pairs_distances(graph).diameter; })
        .def("distances",
             [](const DirectedGraph& graph) {
                 const GraphMetrics metrics = all_pairs_distances(graph);
                 std::vector<std::vector<int>> rows(static_cast<std::size_t>(graph.num_nodes));
                 for (int i = 0; i < graph.num_nodes; ++i) {
                     for (int j = 0; j < graph.num_nodes; ++j) {
                         rows[static_cast<std::size_t>(i)].push_back(metrics.distance(i, j));
                     }
                 }
                 return rows;
             },
             "Hop-count matrix; -1 marks unreachable pairs.")
        .def_static("ring", &make_ring, py::arg("num_nodes"))
        .def_static("complete", &make_complete, py::arg("num_nodes"))
        .def_static(
            "geometric",
            [](int num_nodes, double radius, std::uint64_t seed, bool connected,
               int max_attempts) {
                GeometricGraph geometric =
                    connected ? generate_geometric_connected(num_nodes, radius, seed,
                                                             max_attempts)
                              : generate_geometric(num_nodes, radius, seed);
                return py::make_tuple(geometric.graph, geometric.positions, geometric.attempts);
            },
            py::arg("num_nodes"), py::arg("radius"), py::arg("seed"),
            py::arg("connected") = true, py::arg("max_attempts") = 100,
            "Returns (graph, positions, attempts).");

    m.def("kl_divergence", &kl_divergence, py::arg("p"), py::arg("q"),
          "KL divergence in nats with the 0*ln(0/q)=0 convention.");
    m.def(
        "indistinguishable_set",
        [](const HypothesisModel& model, int agent, int anchor) {
            return indistinguishable_set(model, agent, anchor).members;
        },
        py::arg("model"), py::arg("agent"), py::arg("anchor"),
        "States the agent cannot tell apart from the anchor (0-based).");
    m.def(
        "check_global_identifiability",
        [](const HypothesisModel& model) {
            const IdentifiabilityResult result = check_global_identifiability(model);
            return py::make_tuple(result.identifiable,
                                  result.witness ? py::cast(*result.witness) : py::none());
        },
        py::arg("model"), "Returns (identifiable, witness_pair_or_None).");

    m.def("bayes_update", &bayes_update, py::arg("prior"), py::arg("likelihood_column"));
    m.def("round_beliefs", &round_beliefs, py::arg("pi"), py::arg("alpha"));
    m.def("intersect", &intersect, py::arg("vectors"));
    m.def("normalize_candidates", &normalize_candidates, py::arg("psi"));
    m.def("argmax_indicator", &argmax_indicator, py::arg("mu"));
    m.def("finite_time_wrap", &finite_time_wrap, py::arg("mu"));

    m.def(
        "make_schedule",
        [](const std::string& spec, std::int64_t horizon) {
            return make_schedule(parse_schedule_spec(spec), horizon).starts;
        },
        py::arg("spec"), py::arg("horizon"),
        "Epoch start times for a spec like 'linear', 'constant:22', 'exponential:2'.");

    m.def(
        "generate_sample_path",
        [](const HypothesisModel& model, int true_state, std::int64_t horizon,
           std::uint64_t seed) {
            return generate_sample_path(model, true_state, horizon, seed).signals;
        },
        py::arg("model"), py::arg("true_state"), py::arg("horizon"), py::arg("seed"));

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("true_state", &RunRecord::true_state)
        .def_readonly("horizon", &RunRecord::horizon)
        .def_readonly("diameter", &RunRecord::diameter)
        .def_readonly("convergence_step", &RunRecord::convergence_step)
        .def_readonly("separation_step", &RunRecord::separation_step)
        .def_readonly("wrapper_step", &RunRecord::wrapper_step)
        .def_readonly("total_network_bits", &RunRecord::total_network_bits)
        .def_readonly("bits_per_agent", &RunRecord::bits_per_agent)
        .def_readonly("bits_per_agent_at_convergence",
                      &RunRecord::bits_per_agent_at_convergence)
        .def_readonly("emitters_per_step", &RunRecord::emitters_per_step)
        .def_readonly("final_mu", &RunRecord::final_mu)
        .def_readonly("trace_times", &RunRecord::trace_times)
        .def_readonly("mu_trace", &RunRecord::mu_trace)
        .def("converged", &RunRecord::converged)
        .def("trace_csv",
             [](const RunRecord& record) {
                 std::ostringstream out;
                 write_trace_csv(out, record);
                 return out.str();
             })
        .def("__repr__", [](const RunRecord& record) {
            std::ostringstream out;
            out << "RunRecord(protocol=" << protocol_name(record.protocol)
                << ", seed=" << record.seed << ", convergence_step=" << record.convergence_step
                << ")";
            return out.str();
        });

    m.def("run", &run_py, py::arg("model"), py::arg("graph"), py::arg("protocol"),
          py::arg("true_state"), py::arg("horizon"), py::arg("seed"), py::arg("alpha") = 1e-3,
          py::arg("schedule") = std::string(), py::arg("bits_per_entry") = 64,
          py::arg("trace") = std::string("auto"),
          "One deterministic seeded run. true_state is 0-based; schedule '' picks the "
          "protocol default.");

    m.def(
        "run_config",
        [](const std::string& path, std::uint64_t seed, const std::string& protocol) {
            const ExperimentConfig config = parse_config_file(path);
            const Protocol chosen =
                protocol.empty() ? config.protocol.protocol : parse_protocol(protocol);
            return run_scenario(config, chosen, seed);
        },
        py::arg("path"), py::arg("seed"), py::arg("protocol") = std::string(),
        "Run one seed of an experiment config file.");

    py::class_<BatchAggregates>(m, "BatchAggregates")
        .def_readonly("num_runs", &BatchAggregates::num_runs)
        .def_readonly("num_converged", &BatchAggregates::num_converged)
        .def_readonly("success_rate", &BatchAggregates::success_rate)
        .def_readonly("convergence_median", &BatchAggregates::convergence_median)
        .def_readonly("convergence_q25", &BatchAggregates::convergence_q25)
        .def_readonly("convergence_q75", &BatchAggregates::convergence_q75)
        .def_readonly("convergence_min", &BatchAggregates::convergence_min)
        .def_readonly("convergence_max", &BatchAggregates::convergence_max)
        .def_readonly("separation_median", &BatchAggregates::separation_median)
        .def_readonly("wrapper_median", &BatchAggregates::wrapper_median)
        .def_readonly("total_bits_median", &BatchAggregates::total_bits_median)
        .def_readonly("agent_bits_at_convergence_median",
                      &BatchAggregates::agent_bits_at_convergence_median);

    m.def(
        "run_config_batch",
        [](const std::string& path, std::vector<std::uint64_t> seeds,
           const std::string& protocol) {
            const ExperimentConfig config = parse_config_file(path);
            const Protocol chosen =
                protocol.empty() ? config.protocol.protocol : parse_protocol(protocol);
            BatchResult result = run_batch(config, chosen, seeds.empty() ? config.seeds : seeds);
            return py::make_tuple(std::move(result.records), result.aggregates);
        },
        py::arg("path"), py::arg("seeds") = std::vector<std::uint64_t>{},
        py::arg("protocol") = std::string(),
        "Run a seed batch of a config file; returns (records, aggregates).");
}
