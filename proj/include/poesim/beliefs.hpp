#pragma once

#include <cstdint>
#include <vector>

// Per-agent numeric primitives shared by every protocol: the Bayesian local
// update, threshold rounding, binary-vector intersection, candidate
// normalization, and the argmax indicator. All functions are pure.

namespace poesim {

// Probability vector over the m states.
using BeliefVector = std::vector<double>;
// Length-m 0/1 vector marking states not yet eliminated.
using CandidateVector = std::vector<std::uint8_t>;

BeliefVector uniform_belief(int num_states);
CandidateVector full_candidates(int num_states);  // all ones

// posterior(s) ∝ likelihood_column(s) * prior(s), computed in log domain
// (log-prior + log-likelihood, log-sum-exp normalization) so long horizons
// do not underflow the normalizer; exposed values are plain probabilities.
// Zero prior entries stay zero. Throws on length mismatch, an all-zero
// prior, a negative prior entry, or a nonpositive likelihood entry.
BeliefVector bayes_update(const BeliefVector& prior, const std::vector<double>& likelihood_column);

// Bit j is 1 iff pi[j] > alpha/m, strictly; equality rounds to 0.
// alpha must lie in (0,1).
CandidateVector round_beliefs(const BeliefVector& pi, double alpha);

// Elementwise minimum across a nonempty collection of equal-length vectors.
CandidateVector intersect(const std::vector<CandidateVector>& vectors);
// Engine fast path: acc &= other, in place.
void intersect_into(CandidateVector& acc, const CandidateVector& other);

// Uniform over the support; the all-zero vector maps to uniform over all
// states.
BeliefVector normalize_candidates(const CandidateVector& psi);

// Indicator of the largest entry; ties break toward the lowest state index
// so traces are reproducible.
CandidateVector argmax_indicator(const BeliefVector& mu);

// Exact-equality test against the indicator of one state.
bool is_indicator_of(const BeliefVector& mu, int state);

}  // namespace poesim
