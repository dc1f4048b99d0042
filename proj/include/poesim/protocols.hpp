#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "poesim/beliefs.hpp"
#include "poesim/schedule.hpp"

// Per-agent protocol state machines, executed once per synchronous round:
// PoE (candidate-vector elimination over epochs), PoE-FC (same, with
// change-triggered transmissions that eventually go quiescent), and the
// min-rule baseline that exchanges full belief vectors.
//
// Round ordering is fixed as send -> receive -> intersect -> epoch-end mu
// commit -> Bayes update, with all agents advancing in lockstep. Each round
// is split into a begin phase (epoch-start bookkeeping; decides what the
// agent emits this round from its pre-round state) and a finish phase
// (integrates the inbox snapshot, commits mu at epoch ends, applies the
// Bayes step). The engine runs every agent's begin before any finish, so
// inboxes are snapshots of the same round's emissions.

namespace poesim {

struct AgentState {
    BeliefVector pi;            // local belief, Bayes-updated every round
    BeliefVector mu;            // network belief, committed at epoch ends
    CandidateVector psi;        // candidate bits being intersected
    CandidateVector psi_prev;   // rounded vector from the previous epoch start (PoE-FC)
    bool transmit = false;      // PoE-FC transmission flag for the current epoch
    bool force_transmit = false;  // set when an epoch-end commit saw all-zero psi

    // Uniform pi, mu = pi, psi = psi_prev = all-ones, flags clear.
    static AgentState initial(int num_states);
};

// --- begin phase -------------------------------------------------------
// Return value: whether the agent emits this round. The payload is the
// post-begin state.psi (PoE, PoE-FC) or state.mu (min-rule).

// Epoch starts reset psi from the rounded local belief. PoE emits every
// round.
bool poe_begin(AgentState& state, std::int64_t t, const EpochSchedule& schedule, double alpha);

// Epoch starts additionally compare the rounded vector against the one from
// the previous epoch start; only a change (or a carried force_transmit)
// arms the transmit flag. Emits iff the flag is armed.
bool poe_fc_begin(AgentState& state, std::int64_t t, const EpochSchedule& schedule, double alpha);

// Min-rule agents exchange mu exactly on rounds whose successor step is a
// communication step.
bool min_rule_begin(const AgentState& state, std::int64_t t, const EpochSchedule& schedule);

// --- finish phase ------------------------------------------------------
// `likelihood_column[s]` is l_i(signal | theta_s) for the round's observed
// signal. Inboxes contain only payloads of in-neighbors that emitted.

void poe_finish(AgentState& state, std::span<const CandidateVector* const> inbox, std::int64_t t,
                const EpochSchedule& schedule, const std::vector<double>& likelihood_column);

void poe_fc_finish(AgentState& state, std::span<const CandidateVector* const> inbox,
                   bool any_inbound, std::int64_t t, const EpochSchedule& schedule,
                   const std::vector<double>& likelihood_column);

void min_rule_finish(AgentState& state, std::span<const BeliefVector* const> inbox, std::int64_t t,
                     const EpochSchedule& schedule, const std::vector<double>& likelihood_column,
                     bool include_own_mu = false);

// --- one-shot rounds ---------------------------------------------------
// Full round = begin + finish against a caller-supplied inbox. Value
// semantics; convenient for tests and bindings.

struct PoeRound {
    AgentState state;
    CandidateVector sent;  // PoE transmits unconditionally
};
PoeRound poe_round(AgentState state, const std::vector<CandidateVector>& inbox, int signal,
                   std::int64_t t, const EpochSchedule& schedule,
                   const std::vector<std::vector<double>>& agent_likelihoods, double alpha);

struct PoeFcRound {
    AgentState state;
    std::optional<CandidateVector> sent;
};
PoeFcRound poe_fc_round(AgentState state, const std::vector<CandidateVector>& inbox,
                        bool any_inbound, int signal, std::int64_t t,
                        const EpochSchedule& schedule,
                        const std::vector<std::vector<double>>& agent_likelihoods, double alpha);

struct MinRuleRound {
    AgentState state;
    std::optional<BeliefVector> sent;
};
MinRuleRound min_rule_round(AgentState state, const std::vector<BeliefVector>& inbox, int signal,
                            std::int64_t t, const EpochSchedule& schedule,
                            const std::vector<std::vector<double>>& agent_likelihoods,
                            bool include_own_mu = false);

// Finite-time wrapper: the indicator of mu's largest entry, maintained
// alongside any asymptotically-correct base algorithm.
CandidateVector finite_time_wrap(const BeliefVector& mu);

}  // namespace poesim
