#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "poesim/beliefs.hpp"
#include "poesim/graph.hpp"
#include "poesim/model.hpp"
#include "poesim/protocols.hpp"
#include "poesim/schedule.hpp"

// Synchronous discrete-time engine: seeded sample paths, lockstep rounds,
// message routing, bit accounting, convergence detection, and traces.

namespace poesim {

enum class Protocol { Poe, PoeFc, MinRule };

const char* protocol_name(Protocol protocol);
std::optional<Protocol> protocol_from_name(std::string_view name);

struct ProtocolConfig {
    Protocol protocol = Protocol::Poe;
    double alpha = 1e-3;
    // Bits charged per probability entry when a protocol ships belief
    // vectors (min-rule). Candidate vectors cost 1 bit per state.
    int bits_per_entry = 64;
    bool minrule_include_own_mu = false;

    bool operator==(const ProtocolConfig&) const = default;
};

// Schedule used when a config names none: PoE runs diameter-free linear
// epochs, PoE-FC constant epochs of twice the diameter, min-rule every step.
ScheduleSpec default_schedule(Protocol protocol, int diameter);

// Smallest epoch length each protocol needs on a graph of this diameter.
std::int64_t min_epoch_length(Protocol protocol, int diameter);

struct SamplePath {
    std::uint64_t seed = 0;
    int true_state = 0;
    std::vector<std::vector<int>> signals;  // [agent][t], t in [0, horizon)
};

// Per-agent i.i.d. streams from l_i(. | true_state). Agent substreams are
// derived as mix_seed(seed, agent), so streams are stable under changes to
// the number of agents or the horizon.
SamplePath generate_sample_path(const HypothesisModel& model, int true_state, std::int64_t horizon,
                                std::uint64_t seed);

enum class TraceMode { Auto, Full, EpochEnds, Off };

struct RunOptions {
    TraceMode trace = TraceMode::Auto;
    std::vector<int> trace_agents;  // empty = all agents
    // Negative-test overrides; every precondition is enforced unless its
    // flag is raised.
    bool allow_nonidentifiable_model = false;
    bool allow_disconnected_graph = false;
};

inline constexpr std::int64_t kNever = -1;

struct RunRecord {
    std::uint64_t seed = 0;
    int true_state = 0;
    std::int64_t horizon = 0;
    int num_agents = 0;
    int num_states = 0;
    int diameter = 0;
    Protocol protocol = Protocol::Poe;

    // First step from which the condition holds through the horizon
    // (kNever otherwise):
    std::int64_t convergence_step = kNever;  // every mu equals the true-state indicator
    std::int64_t separation_step = kNever;   // every rounded pi equals its ground-truth set
    std::int64_t wrapper_step = kNever;      // every argmax indicator equals the true state

    // Accounting.
    std::vector<std::int32_t> emitters_per_step;        // agents emitting at round t
    std::vector<std::uint64_t> network_bits_per_step;   // link-level bits sent at round t
    std::vector<std::uint64_t> bits_per_agent;          // cumulative broadcast bits at horizon
    std::vector<std::uint64_t> bits_per_agent_at_convergence;  // empty if never converged
    std::uint64_t total_network_bits = 0;

    // Final state and (possibly decimated) mu trace.
    std::vector<BeliefVector> final_mu;
    TraceMode trace_mode_used = TraceMode::Off;
    std::vector<int> trace_agents;                    // recorded agents
    std::vector<std::int64_t> trace_times;
    std::vector<std::vector<BeliefVector>> mu_trace;  // [time][trace agent]
    std::vector<std::vector<std::uint64_t>> bits_trace;  // cumulative per trace agent

    bool converged() const { return convergence_step != kNever; }

    bool operator==(const RunRecord&) const = default;
};

// One seeded run. Deterministic in all inputs. Preconditions (strongly
// connected graph, globally identifiable model, protocol epoch-length
// requirements) are checked before any round executes; exhausting the
// horizon without convergence is a valid outcome, not an error.
RunRecord run(const HypothesisModel& model, const DirectedGraph& graph,
              const ProtocolConfig& protocol, const EpochSchedule& schedule, int true_state,
              std::int64_t horizon, std::uint64_t seed, const RunOptions& options = {});

// Median/quantile summaries over a batch of independent runs. Step
// statistics are taken over the runs where the event happened; bit totals
// cover every run.
struct BatchAggregates {
    int num_runs = 0;
    int num_converged = 0;
    double success_rate = 0.0;
    double convergence_median = -1.0;
    double convergence_q25 = -1.0;
    double convergence_q75 = -1.0;
    std::int64_t convergence_min = kNever;
    std::int64_t convergence_max = kNever;
    double separation_median = -1.0;
    double wrapper_median = -1.0;
    double total_bits_median = -1.0;
    // Per-run mean over agents of cumulative bits at convergence.
    double agent_bits_at_convergence_median = -1.0;
};

BatchAggregates aggregate_runs(const std::vector<RunRecord>& runs);

}  // namespace poesim
