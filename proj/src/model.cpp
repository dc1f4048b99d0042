#include "poesim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "poesim/rng.hpp"

namespace poesim {

namespace {

void validate_row(const std::vector<double>& row, const std::string& where) {
    if (row.size() < 2) {
        throw std::invalid_argument(where + ": signal space must have at least 2 symbols");
    }
    double sum = 0.0;
    for (double p : row) {
        if (!(p > 0.0)) {
            throw std::invalid_argument(where + ": likelihood entries must be strictly positive");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw std::invalid_argument(where + ": likelihood row sums to " + std::to_string(sum) +
                                    ", not 1");
    }
}

}  // namespace

HypothesisModel HypothesisModel::from_tables(
    std::vector<std::vector<std::vector<double>>> tables) {
    if (tables.empty()) throw std::invalid_argument("model: needs at least one agent");
    const int n = static_cast<int>(tables.size());
    const int m = static_cast<int>(tables[0].size());
    if (m < 2) throw std::invalid_argument("model: needs at least 2 states");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(tables[i].size()) != m) {
            throw std::invalid_argument("model: agent " + std::to_string(i + 1) +
                                        " has a different number of states");
        }
        const std::size_t signal_count = tables[i][0].size();
        for (int s = 0; s < m; ++s) {
            const std::string where =
                "model: agent " + std::to_string(i + 1) + ", state " + std::to_string(s + 1);
            if (tables[i][s].size() != signal_count) {
                throw std::invalid_argument(where + ": rows must share one signal space");
            }
            validate_row(tables[i][s], where);
        }
    }
    HypothesisModel model;
    model.num_states = m;
    model.num_agents = n;
    model.likelihoods = std::move(tables);
    return model;
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("kl_divergence: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!(q[k] > 0.0)) {
            throw std::invalid_argument("kl_divergence: q must be strictly positive");
        }
        if (p[k] == 0.0) continue;  // 0 * ln(0/q) = 0
        sum += p[k] * std::log(p[k] / q[k]);
    }
    // Gibbs' inequality guarantees nonnegativity; clamp the last-ulp noise
    // of nearly identical inputs.
    return std::max(sum, 0.0);
}

bool IndistinguishableSet::contains(int state) const {
    return std::binary_search(members.begin(), members.end(), state);
}

std::vector<std::uint8_t> IndistinguishableSet::indicator(int num_states) const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_states), 0);
    for (int s : members) bits[static_cast<std::size_t>(s)] = 1;
    return bits;
}

IndistinguishableSet indistinguishable_set(const HypothesisModel& model, int agent, int anchor,
                                           double eps_kl) {
    if (!model.agent_in_range(agent)) throw std::out_of_range("indistinguishable_set: agent index");
    if (!model.state_in_range(anchor)) throw std::out_of_range("indistinguishable_set: state index");
    IndistinguishableSet set;
    set.agent = agent;
    set.anchor = anchor;
    for (int s = 0; s < model.num_states; ++s) {
        if (kl_divergence(model.row(agent, anchor), model.row(agent, s)) <= eps_kl) {
            set.members.push_back(s);
        }
    }
    return set;
}

IdentifiabilityResult check_global_identifiability(const HypothesisModel& model, double eps_kl) {
    for (int p = 0; p < model.num_states; ++p) {
        for (int q = p + 1; q < model.num_states; ++q) {
            bool distinguished = false;
            for (int i = 0; i < model.num_agents && !distinguished; ++i) {
                distinguished = kl_divergence(model.row(i, p), model.row(i, q)) > eps_kl;
            }
            if (!distinguished) {
                return {false, std::make_pair(p, q)};
            }
        }
    }
    return {true, std::nullopt};
}

HypothesisModel make_permutation_model(const PermutationModelSpec& spec, std::uint64_t seed) {
    if (spec.rows.empty()) throw std::invalid_argument("model generator: no base rows");
    if (spec.num_agents < 1) throw std::invalid_argument("model generator: num_agents must be >= 1");
    const int m = static_cast<int>(spec.pattern.size());
    if (m < 2) throw std::invalid_argument("model generator: pattern needs at least 2 states");
    for (int row_index : spec.pattern) {
        if (row_index < 0 || row_index >= static_cast<int>(spec.rows.size())) {
            throw std::invalid_argument("model generator: pattern row index out of range");
        }
    }

    std::vector<std::vector<std::vector<double>>> tables(
        static_cast<std::size_t>(spec.num_agents));
    std::vector<int> permutation(static_cast<std::size_t>(m));
    for (int i = 0; i < spec.num_agents; ++i) {
        std::iota(permutation.begin(), permutation.end(), 0);
        if (i > 0) {
            // Agent 0 keeps the pattern as given.
            std::mt19937_64 gen(mix_seed(seed, static_cast<std::uint64_t>(i)));
            shuffle_in_place(permutation, gen);
        }
        tables[i].reserve(static_cast<std::size_t>(m));
        for (int s = 0; s < m; ++s) {
            tables[i].push_back(spec.rows[static_cast<std::size_t>(
                spec.pattern[static_cast<std::size_t>(permutation[static_cast<std::size_t>(s)])])]);
        }
    }
    return HypothesisModel::from_tables(std::move(tables));
}

HypothesisModel make_identifiable_permutation_model(const PermutationModelSpec& spec,
                                                    std::uint64_t seed) {
    for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
        HypothesisModel model =
            make_permutation_model(spec, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        if (check_global_identifiability(model).identifiable) return model;
    }
    throw std::runtime_error("model generator: no globally identifiable draw within " +
                             std::to_string(spec.max_attempts) + " attempts");
}

}  // namespace poesim
