#include "poesim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "poesim/rng.hpp"

namespace poesim {

const char* protocol_name(Protocol protocol) {
    switch (protocol) {
        case Protocol::Poe:
            return "poe";
        case Protocol::PoeFc:
            return "poe-fc";
        case Protocol::MinRule:
            return "min-rule";
    }
    throw std::logic_error("protocol_name: unreachable");
}

std::optional<Protocol> protocol_from_name(std::string_view name) {
    if (name == "poe") return Protocol::Poe;
    if (name == "poe-fc") return Protocol::PoeFc;
    if (name == "min-rule") return Protocol::MinRule;
    return std::nullopt;
}

ScheduleSpec default_schedule(Protocol protocol, int diameter) {
    ScheduleSpec spec;
    switch (protocol) {
        case Protocol::Poe:
            spec.kind = ScheduleKind::Linear;  // diameter-free
            break;
        case Protocol::PoeFc:
            spec.kind = ScheduleKind::Constant;
            spec.constant_length = std::max<std::int64_t>(2 * diameter, 1);
            break;
        case Protocol::MinRule:
            spec.kind = ScheduleKind::Constant;
            spec.constant_length = 1;  // communicate every step
            break;
    }
    return spec;
}

std::int64_t min_epoch_length(Protocol protocol, int diameter) {
    switch (protocol) {
        case Protocol::Poe:
            return diameter + 1;  // strictly longer than the diameter
        case Protocol::PoeFc:
            return std::max<std::int64_t>(2 * diameter, 1);
        case Protocol::MinRule:
            return 1;
    }
    throw std::logic_error("min_epoch_length: unreachable");
}

SamplePath generate_sample_path(const HypothesisModel& model, int true_state, std::int64_t horizon,
                                std::uint64_t seed) {
    if (!model.state_in_range(true_state)) {
        throw std::invalid_argument("sample path: true state out of range");
    }
    if (horizon < 1) throw std::invalid_argument("sample path: horizon must be >= 1");
    SamplePath path;
    path.seed = seed;
    path.true_state = true_state;
    path.signals.resize(static_cast<std::size_t>(model.num_agents));
    for (int agent = 0; agent < model.num_agents; ++agent) {
        const auto& row = model.row(agent, true_state);
        std::mt19937_64 gen(mix_seed(seed, static_cast<std::uint64_t>(agent)));
        auto& stream = path.signals[static_cast<std::size_t>(agent)];
        stream.reserve(static_cast<std::size_t>(horizon));
        for (std::int64_t t = 0; t < horizon; ++t) {
            stream.push_back(sample_categorical(gen, row));
        }
    }
    return path;
}

namespace {

// Latest time at which a per-step condition failed; the stable onset is one
// past it. Conditions are evaluated at every t in [0, horizon].
struct StableOnset {
    std::int64_t last_bad = -1;

    void observe(std::int64_t t, bool holds) {
        if (!holds) last_bad = t;
    }
    std::int64_t onset(std::int64_t horizon) const {
        return last_bad >= horizon ? kNever : last_bad + 1;
    }
};

std::vector<std::int64_t> trace_time_set(TraceMode mode, const EpochSchedule& schedule,
                                         std::int64_t horizon) {
    std::vector<std::int64_t> times;
    switch (mode) {
        case TraceMode::Off:
            break;
        case TraceMode::Full:
            times.reserve(static_cast<std::size_t>(horizon) + 1);
            for (std::int64_t t = 0; t <= horizon; ++t) times.push_back(t);
            break;
        case TraceMode::EpochEnds:
            // mu only changes at epoch boundaries; record those plus the ends.
            times = schedule.starts;
            if (times.empty() || times.back() != horizon) times.push_back(horizon);
            break;
        case TraceMode::Auto:
            throw std::logic_error("trace_time_set: Auto must be resolved by the caller");
    }
    return times;
}

}  // namespace

RunRecord run(const HypothesisModel& model, const DirectedGraph& graph,
              const ProtocolConfig& protocol, const EpochSchedule& schedule, int true_state,
              std::int64_t horizon, std::uint64_t seed, const RunOptions& options) {
    const int n = model.num_agents;
    const int m = model.num_states;
    if (graph.num_nodes != n) {
        throw std::invalid_argument("run: graph has " + std::to_string(graph.num_nodes) +
                                    " nodes but the model has " + std::to_string(n) + " agents");
    }
    if (!model.state_in_range(true_state)) {
        throw std::invalid_argument("run: true state out of range");
    }
    if (horizon < 1) throw std::invalid_argument("run: horizon must be >= 1");

    // Preconditions, all reported before any round executes.
    const GraphMetrics metrics = all_pairs_distances(graph);
    if (!metrics.all_pairs_reachable() && !options.allow_disconnected_graph) {
        throw std::runtime_error("run: graph is not strongly connected");
    }
    if (!options.allow_nonidentifiable_model) {
        const auto identifiability = check_global_identifiability(model);
        if (!identifiability.identifiable) {
            const auto [p, q] = *identifiability.witness;
            throw std::runtime_error("run: model is not globally identifiable; no agent "
                                     "distinguishes states " +
                                     std::to_string(p + 1) + " and " + std::to_string(q + 1));
        }
    }
    const int diameter = metrics.diameter;
    const auto epoch_lengths = schedule.lengths();
    if (protocol.protocol == Protocol::Poe) {
        const bool long_enough =
            std::any_of(epoch_lengths.begin(), epoch_lengths.end(),
                        [&](std::int64_t length) { return length > diameter; });
        if (!long_enough) {
            throw std::runtime_error(
                "run: poe needs at least one epoch longer than the graph diameter (" +
                std::to_string(diameter) + ") to complete within the horizon");
        }
    }
    if (protocol.protocol == Protocol::PoeFc) {
        const std::int64_t required = min_epoch_length(Protocol::PoeFc, diameter);
        if (epoch_lengths.empty() || schedule.min_length() < required) {
            throw std::runtime_error("run: poe-fc needs every epoch length >= twice the graph "
                                     "diameter (>= " +
                                     std::to_string(required) + ")");
        }
    }

    const SamplePath path = generate_sample_path(model, true_state, horizon, seed);

    RunRecord record;
    record.seed = seed;
    record.true_state = true_state;
    record.horizon = horizon;
    record.num_agents = n;
    record.num_states = m;
    record.diameter = diameter;
    record.protocol = protocol.protocol;
    record.emitters_per_step.assign(static_cast<std::size_t>(horizon), 0);
    record.network_bits_per_step.assign(static_cast<std::size_t>(horizon), 0);
    record.bits_per_agent.assign(static_cast<std::size_t>(n), 0);

    TraceMode mode = options.trace;
    if (mode == TraceMode::Auto) {
        mode = n <= 50 ? TraceMode::Full : TraceMode::EpochEnds;
    }
    record.trace_mode_used = mode;
    record.trace_agents = options.trace_agents;
    if (record.trace_agents.empty() && mode != TraceMode::Off) {
        record.trace_agents.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) record.trace_agents[static_cast<std::size_t>(i)] = i;
    }
    for (int agent : record.trace_agents) {
        if (agent < 0 || agent >= n) {
            throw std::invalid_argument("run: trace agent index out of range");
        }
    }
    const std::vector<std::int64_t> trace_times = trace_time_set(mode, schedule, horizon);
    record.trace_times = trace_times;
    std::size_t next_trace = 0;

    // Ground-truth indistinguishable sets for the separation detector; the
    // simulator knows the truth, the agents never do.
    std::vector<CandidateVector> truth(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        truth[static_cast<std::size_t>(i)] =
            indistinguishable_set(model, i, true_state).indicator(m);
    }

    std::vector<AgentState> agents(static_cast<std::size_t>(n), AgentState::initial(m));

    const std::uint64_t payload_bits =
        protocol.protocol == Protocol::MinRule
            ? static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(protocol.bits_per_entry)
            : static_cast<std::uint64_t>(m);

    StableOnset convergence;
    StableOnset separation;
    StableOnset wrapper;
    std::int64_t converged_snapshot_time = kNever;

    const auto observe = [&](std::int64_t t) {
        bool all_converged = true;
        bool all_separated = true;
        bool all_wrapped = true;
        for (int i = 0; i < n; ++i) {
            const AgentState& agent = agents[static_cast<std::size_t>(i)];
            if (all_converged && !is_indicator_of(agent.mu, true_state)) all_converged = false;
            if (all_separated &&
                round_beliefs(agent.pi, protocol.alpha) != truth[static_cast<std::size_t>(i)]) {
                all_separated = false;
            }
            if (all_wrapped) {
                const CandidateVector wrapped = finite_time_wrap(agent.mu);
                if (!wrapped[static_cast<std::size_t>(true_state)]) all_wrapped = false;
            }
            if (!all_converged && !all_separated && !all_wrapped) break;
        }
        convergence.observe(t, all_converged);
        separation.observe(t, all_separated);
        wrapper.observe(t, all_wrapped);
        if (all_converged && converged_snapshot_time <= convergence.last_bad) {
            converged_snapshot_time = t;
            record.bits_per_agent_at_convergence = record.bits_per_agent;
        }
        if (next_trace < trace_times.size() && trace_times[next_trace] == t) {
            ++next_trace;
            auto& mu_row = record.mu_trace.emplace_back();
            auto& bits_row = record.bits_trace.emplace_back();
            mu_row.reserve(record.trace_agents.size());
            bits_row.reserve(record.trace_agents.size());
            for (int agent : record.trace_agents) {
                mu_row.push_back(agents[static_cast<std::size_t>(agent)].mu);
                bits_row.push_back(record.bits_per_agent[static_cast<std::size_t>(agent)]);
            }
        }
    };

    observe(0);

    // Reusable round buffers: snapshots of this round's emissions, taken
    // after every agent's begin phase and before any finish phase.
    std::vector<CandidateVector> psi_out(static_cast<std::size_t>(n));
    std::vector<BeliefVector> mu_out(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> emitted(static_cast<std::size_t>(n), 0);
    std::vector<const CandidateVector*> candidate_inbox;
    std::vector<const BeliefVector*> belief_inbox;
    std::vector<double> column(static_cast<std::size_t>(m));

    for (std::int64_t t = 0; t < horizon; ++t) {
        std::int32_t emitter_count = 0;
        std::uint64_t round_network_bits = 0;
        for (int i = 0; i < n; ++i) {
            AgentState& agent = agents[static_cast<std::size_t>(i)];
            bool emits = false;
            switch (protocol.protocol) {
                case Protocol::Poe:
                    emits = poe_begin(agent, t, schedule, protocol.alpha);
                    if (emits) psi_out[static_cast<std::size_t>(i)] = agent.psi;
                    break;
                case Protocol::PoeFc:
                    emits = poe_fc_begin(agent, t, schedule, protocol.alpha);
                    if (emits) psi_out[static_cast<std::size_t>(i)] = agent.psi;
                    break;
                case Protocol::MinRule:
                    emits = min_rule_begin(agent, t, schedule);
                    if (emits) mu_out[static_cast<std::size_t>(i)] = agent.mu;
                    break;
            }
            emitted[static_cast<std::size_t>(i)] = emits ? 1 : 0;
            if (emits) {
                ++emitter_count;
                record.bits_per_agent[static_cast<std::size_t>(i)] += payload_bits;
                round_network_bits +=
                    payload_bits * static_cast<std::uint64_t>(graph.out_degree(i));
            }
        }
        record.emitters_per_step[static_cast<std::size_t>(t)] = emitter_count;
        record.network_bits_per_step[static_cast<std::size_t>(t)] = round_network_bits;
        record.total_network_bits += round_network_bits;

        for (int i = 0; i < n; ++i) {
            AgentState& agent = agents[static_cast<std::size_t>(i)];
            const int signal = path.signals[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
            for (int s = 0; s < m; ++s) {
                column[static_cast<std::size_t>(s)] =
                    model.likelihoods[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]
                                     [static_cast<std::size_t>(signal)];
            }
            if (protocol.protocol == Protocol::MinRule) {
                belief_inbox.clear();
                for (int j : graph.in_neighbors[static_cast<std::size_t>(i)]) {
                    if (emitted[static_cast<std::size_t>(j)]) {
                        belief_inbox.push_back(&mu_out[static_cast<std::size_t>(j)]);
                    }
                }
                min_rule_finish(agent, belief_inbox, t, schedule, column,
                                protocol.minrule_include_own_mu);
            } else {
                candidate_inbox.clear();
                for (int j : graph.in_neighbors[static_cast<std::size_t>(i)]) {
                    if (emitted[static_cast<std::size_t>(j)]) {
                        candidate_inbox.push_back(&psi_out[static_cast<std::size_t>(j)]);
                    }
                }
                if (protocol.protocol == Protocol::Poe) {
                    poe_finish(agent, candidate_inbox, t, schedule, column);
                } else {
                    poe_fc_finish(agent, candidate_inbox, !candidate_inbox.empty(), t, schedule,
                                  column);
                }
            }
        }

        observe(t + 1);
    }

    record.convergence_step = convergence.onset(horizon);
    record.separation_step = separation.onset(horizon);
    record.wrapper_step = wrapper.onset(horizon);
    if (record.convergence_step == kNever) {
        record.bits_per_agent_at_convergence.clear();
    }
    record.final_mu.reserve(static_cast<std::size_t>(n));
    for (const AgentState& agent : agents) record.final_mu.push_back(agent.mu);
    return record;
}

namespace {

double median_of(std::vector<double> values) {
    if (values.empty()) return -1.0;
    std::sort(values.begin(), values.end());
    const std::size_t half = values.size() / 2;
    if (values.size() % 2 == 1) return values[half];
    return 0.5 * (values[half - 1] + values[half]);
}

double quantile_of(std::vector<double> values, double q) {
    if (values.empty()) return -1.0;
    std::sort(values.begin(), values.end());
    const double position = q * static_cast<double>(values.size() - 1);
    const std::size_t low = static_cast<std::size_t>(position);
    const std::size_t high = std::min(low + 1, values.size() - 1);
    const double fraction = position - static_cast<double>(low);
    return values[low] + fraction * (values[high] - values[low]);
}

}  // namespace

BatchAggregates aggregate_runs(const std::vector<RunRecord>& runs) {
    BatchAggregates aggregates;
    aggregates.num_runs = static_cast<int>(runs.size());
    std::vector<double> convergence;
    std::vector<double> separation;
    std::vector<double> wrapper;
    std::vector<double> total_bits;
    std::vector<double> agent_bits;
    for (const RunRecord& record : runs) {
        total_bits.push_back(static_cast<double>(record.total_network_bits));
        if (record.separation_step != kNever) {
            separation.push_back(static_cast<double>(record.separation_step));
        }
        if (record.wrapper_step != kNever) {
            wrapper.push_back(static_cast<double>(record.wrapper_step));
        }
        if (!record.converged()) continue;
        ++aggregates.num_converged;
        convergence.push_back(static_cast<double>(record.convergence_step));
        if (!record.bits_per_agent_at_convergence.empty()) {
            double sum = 0.0;
            for (std::uint64_t bits : record.bits_per_agent_at_convergence) {
                sum += static_cast<double>(bits);
            }
            agent_bits.push_back(sum /
                                 static_cast<double>(record.bits_per_agent_at_convergence.size()));
        }
    }
    aggregates.success_rate = runs.empty() ? 0.0
                                           : static_cast<double>(aggregates.num_converged) /
                                                 static_cast<double>(runs.size());
    aggregates.convergence_median = median_of(convergence);
    aggregates.convergence_q25 = quantile_of(convergence, 0.25);
    aggregates.convergence_q75 = quantile_of(convergence, 0.75);
    if (!convergence.empty()) {
        const auto [min_it, max_it] = std::minmax_element(convergence.begin(), convergence.end());
        aggregates.convergence_min = static_cast<std::int64_t>(*min_it);
        aggregates.convergence_max = static_cast<std::int64_t>(*max_it);
    }
    aggregates.separation_median = median_of(separation);
    aggregates.wrapper_median = median_of(wrapper);
    aggregates.total_bits_median = median_of(total_bits);
    aggregates.agent_bits_at_convergence_median = median_of(agent_bits);
    return aggregates;
}

}  // namespace poesim
