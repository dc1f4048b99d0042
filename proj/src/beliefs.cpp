#include "poesim/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace poesim {

BeliefVector uniform_belief(int num_states) {
    return BeliefVector(static_cast<std::size_t>(num_states), 1.0 / num_states);
}

CandidateVector full_candidates(int num_states) {
    return CandidateVector(static_cast<std::size_t>(num_states), 1);
}

BeliefVector bayes_update(const BeliefVector& prior, const std::vector<double>& likelihood_column) {
    if (prior.size() != likelihood_column.size()) {
        throw std::invalid_argument("bayes_update: dimension mismatch");
    }
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    BeliefVector log_weights(prior.size(), kNegInf);
    double max_log = kNegInf;
    for (std::size_t s = 0; s < prior.size(); ++s) {
        if (!(likelihood_column[s] > 0.0)) {
            throw std::invalid_argument("bayes_update: likelihood entries must be positive");
        }
        if (prior[s] < 0.0) {
            throw std::invalid_argument("bayes_update: negative prior entry");
        }
        if (prior[s] == 0.0) continue;  // zero prior entries stay zero
        log_weights[s] = std::log(likelihood_column[s]) + std::log(prior[s]);
        max_log = std::max(max_log, log_weights[s]);
    }
    if (max_log == kNegInf) {
        throw std::invalid_argument("bayes_update: prior is all zero");
    }
    BeliefVector posterior(prior.size(), 0.0);
    double normalizer = 0.0;
    for (std::size_t s = 0; s < prior.size(); ++s) {
        if (log_weights[s] == kNegInf) continue;
        posterior[s] = std::exp(log_weights[s] - max_log);
        normalizer += posterior[s];
    }
    for (double& value : posterior) value /= normalizer;
    return posterior;
}

CandidateVector round_beliefs(const BeliefVector& pi, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("round_beliefs: alpha must lie in (0,1)");
    }
    const double threshold = alpha / static_cast<double>(pi.size());
    CandidateVector bits(pi.size());
    for (std::size_t s = 0; s < pi.size(); ++s) {
        bits[s] = pi[s] > threshold ? 1 : 0;  // strict; equality rounds to 0
    }
    return bits;
}

CandidateVector intersect(const std::vector<CandidateVector>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("intersect: empty collection");
    CandidateVector result = vectors.front();
    for (std::size_t k = 1; k < vectors.size(); ++k) {
        if (vectors[k].size() != result.size()) {
            throw std::invalid_argument("intersect: length mismatch");
        }
        intersect_into(result, vectors[k]);
    }
    return result;
}

void intersect_into(CandidateVector& acc, const CandidateVector& other) {
    if (acc.size() != other.size()) throw std::invalid_argument("intersect: length mismatch");
    for (std::size_t s = 0; s < acc.size(); ++s) {
        acc[s] = std::min(acc[s], other[s]);
    }
}

BeliefVector normalize_candidates(const CandidateVector& psi) {
    std::size_t support = 0;
    for (std::uint8_t bit : psi) support += bit;
    if (support == 0) {
        // All states eliminated: fall back to equal beliefs on all states.
        return uniform_belief(static_cast<int>(psi.size()));
    }
    BeliefVector mu(psi.size(), 0.0);
    const double weight = 1.0 / static_cast<double>(support);
    for (std::size_t s = 0; s < psi.size(); ++s) {
        if (psi[s]) mu[s] = weight;
    }
    return mu;
}

CandidateVector argmax_indicator(const BeliefVector& mu) {
    if (mu.empty()) throw std::invalid_argument("argmax_indicator: empty vector");
    std::size_t best = 0;
    for (std::size_t s = 1; s < mu.size(); ++s) {
        if (mu[s] > mu[best]) best = s;  // ties keep the lowest index
    }
    CandidateVector indicator(mu.size(), 0);
    indicator[best] = 1;
    return indicator;
}

bool is_indicator_of(const BeliefVector& mu, int state) {
    for (std::size_t s = 0; s < mu.size(); ++s) {
        const double expected = (static_cast<int>(s) == state) ? 1.0 : 0.0;
        if (mu[s] != expected) return false;
    }
    return true;
}

}  // namespace poesim
