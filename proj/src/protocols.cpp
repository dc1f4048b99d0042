#include "poesim/protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace poesim {

namespace {

bool all_zero(const CandidateVector& psi) {
    return std::all_of(psi.begin(), psi.end(), [](std::uint8_t bit) { return bit == 0; });
}

void intersect_inbox(CandidateVector& psi, std::span<const CandidateVector* const> inbox) {
    for (const CandidateVector* received : inbox) {
        if (received->size() != psi.size()) {
            throw std::invalid_argument("protocol round: inbox vector length mismatch");
        }
        intersect_into(psi, *received);
    }
}

std::vector<double> column_for_signal(const std::vector<std::vector<double>>& agent_likelihoods,
                                      int signal) {
    std::vector<double> column;
    column.reserve(agent_likelihoods.size());
    for (const auto& row : agent_likelihoods) {
        if (signal < 0 || signal >= static_cast<int>(row.size())) {
            throw std::out_of_range("protocol round: signal symbol out of range");
        }
        column.push_back(row[static_cast<std::size_t>(signal)]);
    }
    return column;
}

std::vector<const CandidateVector*> inbox_pointers(const std::vector<CandidateVector>& inbox) {
    std::vector<const CandidateVector*> pointers;
    pointers.reserve(inbox.size());
    for (const auto& vector : inbox) pointers.push_back(&vector);
    return pointers;
}

std::vector<const BeliefVector*> inbox_pointers(const std::vector<BeliefVector>& inbox) {
    std::vector<const BeliefVector*> pointers;
    pointers.reserve(inbox.size());
    for (const auto& vector : inbox) pointers.push_back(&vector);
    return pointers;
}

}  // namespace

AgentState AgentState::initial(int num_states) {
    AgentState state;
    state.pi = uniform_belief(num_states);
    state.mu = state.pi;
    state.psi = full_candidates(num_states);
    state.psi_prev = state.psi;
    state.transmit = false;
    state.force_transmit = false;
    return state;
}

bool poe_begin(AgentState& state, std::int64_t t, const EpochSchedule& schedule, double alpha) {
    if (schedule.contains(t)) {
        state.psi = round_beliefs(state.pi, alpha);
    }
    return true;  // PoE transmits every round
}

bool poe_fc_begin(AgentState& state, std::int64_t t, const EpochSchedule& schedule, double alpha) {
    if (schedule.contains(t)) {
        state.psi = round_beliefs(state.pi, alpha);
        const bool changed = state.psi != state.psi_prev || state.force_transmit;
        state.force_transmit = false;
        if (changed) {
            state.transmit = true;
            state.psi_prev = state.psi;
        } else {
            state.transmit = false;
        }
    }
    return state.transmit;
}

bool min_rule_begin(const AgentState& state, std::int64_t t, const EpochSchedule& schedule) {
    (void)state;
    return schedule.contains(t + 1);
}

void poe_finish(AgentState& state, std::span<const CandidateVector* const> inbox, std::int64_t t,
                const EpochSchedule& schedule, const std::vector<double>& likelihood_column) {
    intersect_inbox(state.psi, inbox);
    if (schedule.contains(t + 1)) {
        state.mu = normalize_candidates(state.psi);
    }
    state.pi = bayes_update(state.pi, likelihood_column);
}

void poe_fc_finish(AgentState& state, std::span<const CandidateVector* const> inbox,
                   bool any_inbound, std::int64_t t, const EpochSchedule& schedule,
                   const std::vector<double>& likelihood_column) {
    if (any_inbound) {
        state.transmit = true;  // a neighbor restarted the protocol; join in
    }
    if (state.transmit) {
        intersect_inbox(state.psi, inbox);
    }
    if (schedule.contains(t + 1) && state.transmit) {
        state.mu = normalize_candidates(state.psi);
        if (all_zero(state.psi)) {
            // Committing an empty candidate set means the epoch went wrong;
            // make sure the next epoch re-announces instead of going quiet.
            state.force_transmit = true;
        }
    }
    state.pi = bayes_update(state.pi, likelihood_column);
}

void min_rule_finish(AgentState& state, std::span<const BeliefVector* const> inbox, std::int64_t t,
                     const EpochSchedule& schedule, const std::vector<double>& likelihood_column,
                     bool include_own_mu) {
    state.pi = bayes_update(state.pi, likelihood_column);
    if (!schedule.contains(t + 1)) {
        return;  // mu held constant between communication steps
    }
    const std::size_t m = state.pi.size();
    BeliefVector mins = state.pi;  // the agent's own updated local belief
    if (include_own_mu) {
        for (std::size_t s = 0; s < m; ++s) mins[s] = std::min(mins[s], state.mu[s]);
    }
    for (const BeliefVector* received : inbox) {
        if (received->size() != m) {
            throw std::invalid_argument("min-rule round: inbox vector length mismatch");
        }
        for (std::size_t s = 0; s < m; ++s) mins[s] = std::min(mins[s], (*received)[s]);
    }
    double normalizer = 0.0;
    for (double value : mins) normalizer += value;
    if (!(normalizer > 0.0)) {
        throw std::runtime_error("min-rule round: aggregated beliefs sum to zero");
    }
    for (double& value : mins) value /= normalizer;
    state.mu = std::move(mins);
}

PoeRound poe_round(AgentState state, const std::vector<CandidateVector>& inbox, int signal,
                   std::int64_t t, const EpochSchedule& schedule,
                   const std::vector<std::vector<double>>& agent_likelihoods, double alpha) {
    poe_begin(state, t, schedule, alpha);
    CandidateVector sent = state.psi;
    const auto pointers = inbox_pointers(inbox);
    poe_finish(state, pointers, t, schedule, column_for_signal(agent_likelihoods, signal));
    return {std::move(state), std::move(sent)};
}

PoeFcRound poe_fc_round(AgentState state, const std::vector<CandidateVector>& inbox,
                        bool any_inbound, int signal, std::int64_t t,
                        const EpochSchedule& schedule,
                        const std::vector<std::vector<double>>& agent_likelihoods, double alpha) {
    const bool emitted = poe_fc_begin(state, t, schedule, alpha);
    std::optional<CandidateVector> sent;
    if (emitted) sent = state.psi;
    const auto pointers = inbox_pointers(inbox);
    poe_fc_finish(state, pointers, any_inbound, t, schedule,
                  column_for_signal(agent_likelihoods, signal));
    return {std::move(state), std::move(sent)};
}

MinRuleRound min_rule_round(AgentState state, const std::vector<BeliefVector>& inbox, int signal,
                            std::int64_t t, const EpochSchedule& schedule,
                            const std::vector<std::vector<double>>& agent_likelihoods,
                            bool include_own_mu) {
    std::optional<BeliefVector> sent;
    if (min_rule_begin(state, t, schedule)) sent = state.mu;
    const auto pointers = inbox_pointers(inbox);
    min_rule_finish(state, pointers, t, schedule, column_for_signal(agent_likelihoods, signal),
                    include_own_mu);
    return {std::move(state), std::move(sent)};
}

CandidateVector finite_time_wrap(const BeliefVector& mu) {
    return argmax_indicator(mu);
}

}  // namespace poesim
