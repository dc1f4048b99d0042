#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Hypothesis space and per-agent observation statistics: the state set, the
// per-agent finite signal spaces with their likelihood tables, and the
// distinguishability structure derived from them (KL divergences,
// indistinguishable sets, global identifiability).

namespace poesim {

// KL at or below this counts as "identical distributions"; exact equality is
// unstable in finite precision.
inline constexpr double kKlTolerance = 1e-12;

// Likelihood rows whose sum strays further than this from 1 are a hard
// configuration error, never silently renormalized.
inline constexpr double kRowSumTolerance = 1e-9;

struct HypothesisModel {
    int num_states = 0;  // m
    int num_agents = 0;  // n
    // likelihoods[agent][state][signal]; each row is a distribution over the
    // agent's signal space, strictly positive.
    std::vector<std::vector<std::vector<double>>> likelihoods;

    // Validates and builds: n >= 1, m >= 2, per-agent signal spaces of size
    // >= 2, strictly positive entries, rows summing to 1 within
    // kRowSumTolerance. Throws std::invalid_argument on violation.
    static HypothesisModel from_tables(std::vector<std::vector<std::vector<double>>> tables);

    int signal_count(int agent) const { return static_cast<int>(likelihoods[agent][0].size()); }
    const std::vector<double>& row(int agent, int state) const { return likelihoods[agent][state]; }
    bool state_in_range(int state) const { return state >= 0 && state < num_states; }
    bool agent_in_range(int agent) const { return agent >= 0 && agent < num_agents; }
};

// D(p||q) in nats, with the 0*ln(0/q) = 0 convention. Throws on length
// mismatch or a zero entry in q. Nonnegative for valid distributions.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// States an agent can never tell apart from the anchor state.
struct IndistinguishableSet {
    int agent = 0;
    int anchor = 0;
    std::vector<int> members;  // sorted ascending; always contains anchor

    bool contains(int state) const;
    // Length-m 0/1 mask of the members.
    std::vector<std::uint8_t> indicator(int num_states) const;
};

IndistinguishableSet indistinguishable_set(const HypothesisModel& model, int agent, int anchor,
                                           double eps_kl = kKlTolerance);

struct IdentifiabilityResult {
    bool identifiable = false;
    // A state pair no agent can distinguish, present iff not identifiable.
    std::optional<std::pair<int, int>> witness;
    explicit operator bool() const { return identifiable; }
};

// True iff every distinct state pair is distinguishable by at least one
// agent (equivalently, the indistinguishable sets of any true state
// intersect to exactly that state).
IdentifiabilityResult check_global_identifiability(const HypothesisModel& model,
                                                   double eps_kl = kKlTolerance);

// Generator spec: a small set of base distribution rows and a per-state row
// assignment. Agent 0 uses the pattern as given; every other agent applies a
// seeded random permutation of the states to it.
struct PermutationModelSpec {
    std::vector<std::vector<double>> rows;
    std::vector<int> pattern;  // state -> row index
    int num_agents = 0;
    int max_attempts = 100;  // regeneration budget for the identifiable variant

    bool operator==(const PermutationModelSpec&) const = default;
};

HypothesisModel make_permutation_model(const PermutationModelSpec& spec, std::uint64_t seed);

// Redraws permutations with derived sub-seeds until the model is globally
// identifiable; throws std::runtime_error after max_attempts.
HypothesisModel make_identifiable_permutation_model(const PermutationModelSpec& spec,
                                                    std::uint64_t seed);

}  // namespace poesim
