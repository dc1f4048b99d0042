#include <doctest.h>

#include <cmath>
#include <random>

#include "poesim/beliefs.hpp"
#include "poesim/rng.hpp"

using namespace poesim;

namespace {

BeliefVector random_belief(std::mt19937_64& gen, int size) {
    BeliefVector values(static_cast<std::size_t>(size));
    double sum = 0.0;
    for (double& value : values) {
        value = 1e-9 + uniform_double(gen);
        sum += value;
    }
    for (double& value : values) value /= sum;
    return values;
}

double sum_of(const BeliefVector& values) {
    double sum = 0.0;
    for (double value : values) sum += value;
    return sum;
}

}  // namespace

TEST_CASE("bayes_update reference values") {
    SUBCASE("coin posterior") {
        // Direct evaluation: 0.5*0.5 / (0.5*0.5 + 0.4*0.5) = 5/9.
        const BeliefVector posterior = bayes_update({0.5, 0.5}, {0.5, 0.4});
        CHECK(posterior[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
        CHECK(posterior[1] == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    }
    SUBCASE("uninformative column is the identity") {
        const BeliefVector posterior = bayes_update({0.3, 0.7}, {0.25, 0.25});
        CHECK(posterior[0] == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(posterior[1] == doctest::Approx(0.7).epsilon(1e-12));
    }
    SUBCASE("degenerate prior is absorbing") {
        const BeliefVector posterior = bayes_update({1.0, 0.0}, {0.2, 0.9});
        CHECK(posterior[0] == 1.0);
        CHECK(posterior[1] == 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(bayes_update({0.0, 0.0}, {0.5, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(bayes_update({0.5, 0.5}, {0.5, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(bayes_update({0.5, 0.5}, {0.5}), std::invalid_argument);
        CHECK_THROWS_AS(bayes_update({-0.1, 1.1}, {0.5, 0.5}), std::invalid_argument);
    }
}

TEST_CASE("bayes_update preserves normalization and nonnegativity") {
    std::mt19937_64 gen(501);
    for (int trial = 0; trial < 500; ++trial) {
        const int m = 2 + static_cast<int>(bounded_uint(gen, 7));
        const BeliefVector prior = random_belief(gen, m);
        std::vector<double> column(static_cast<std::size_t>(m));
        for (double& value : column) value = 1e-6 + uniform_double(gen);
        const BeliefVector posterior = bayes_update(prior, column);
        CHECK(sum_of(posterior) == doctest::Approx(1.0).epsilon(1e-9));
        for (double value : posterior) CHECK(value >= 0.0);
    }
}

TEST_CASE("sequential updates equal one batch update with the product column") {
    std::mt19937_64 gen(502);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + static_cast<int>(bounded_uint(gen, 4));
        const int steps = 1 + static_cast<int>(bounded_uint(gen, 6));
        const BeliefVector prior = random_belief(gen, m);

        BeliefVector sequential = prior;
        std::vector<double> product(static_cast<std::size_t>(m), 1.0);
        for (int step = 0; step < steps; ++step) {
            std::vector<double> column(static_cast<std::size_t>(m));
            for (std::size_t s = 0; s < column.size(); ++s) {
                column[s] = 0.05 + uniform_double(gen);
                product[s] *= column[s];
            }
            sequential = bayes_update(sequential, column);
        }
        const BeliefVector batch = bayes_update(prior, product);
        for (std::size_t s = 0; s < batch.size(); ++s) {
            CHECK(sequential[s] == doctest::Approx(batch[s]).epsilon(1e-9));
        }
    }
}

TEST_CASE("round_beliefs thresholding") {
    SUBCASE("uniform beliefs survive any alpha") {
        CHECK(round_beliefs(uniform_belief(4), 0.5) == CandidateVector{1, 1, 1, 1});
        CHECK(round_beliefs(uniform_belief(4), 0.999) == CandidateVector{1, 1, 1, 1});
    }
    SUBCASE("direct threshold comparison") {
        CHECK(round_beliefs({0.49, 0.49, 0.02}, 0.1) == CandidateVector{1, 1, 0});
    }
    SUBCASE("exact threshold rounds to zero") {
        // alpha/m = 0.25; the first entry sits exactly on it.
        CHECK(round_beliefs({0.25, 0.75}, 0.5) == CandidateVector{0, 1});
    }
    SUBCASE("alpha range") {
        CHECK_THROWS_AS(round_beliefs({0.5, 0.5}, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(round_beliefs({0.5, 0.5}, 1.0), std::invalid_argument);
    }
    SUBCASE("monotone in alpha: raising alpha only clears bits") {
        std::mt19937_64 gen(503);
        for (int trial = 0; trial < 200; ++trial) {
            const BeliefVector pi = random_belief(gen, 5);
            const double lo = 0.001 + 0.5 * uniform_double(gen);
            const double hi = lo + 0.4 * uniform_double(gen);
            const CandidateVector wide = round_beliefs(pi, lo);
            const CandidateVector narrow = round_beliefs(pi, hi);
            for (std::size_t s = 0; s < wide.size(); ++s) {
                CHECK(narrow[s] <= wide[s]);
            }
        }
    }
}

TEST_CASE("intersect") {
    SUBCASE("elementwise minimum") {
        CHECK(intersect({{1, 1, 0, 1}, {1, 0, 0, 1}, {1, 1, 1, 1}}) ==
              CandidateVector{1, 0, 0, 1});
    }
    SUBCASE("singleton is the identity") {
        CHECK(intersect({{0, 1, 0}}) == CandidateVector{0, 1, 0});
    }
    SUBCASE("all-zero vector absorbs") {
        CHECK(intersect({{1, 1}, {0, 0}, {1, 0}}) == CandidateVector{0, 0});
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(intersect({}), std::invalid_argument);
        CHECK_THROWS_AS(intersect({{1, 1}, {1}}), std::invalid_argument);
    }
    SUBCASE("commutative, associative, idempotent; ones identity, zeros absorbing") {
        std::mt19937_64 gen(504);
        for (int trial = 0; trial < 200; ++trial) {
            const int m = 1 + static_cast<int>(bounded_uint(gen, 6));
            const auto random_bits = [&] {
                CandidateVector bits(static_cast<std::size_t>(m));
                for (auto& bit : bits) bit = static_cast<std::uint8_t>(bounded_uint(gen, 2));
                return bits;
            };
            const CandidateVector a = random_bits();
            const CandidateVector b = random_bits();
            const CandidateVector c = random_bits();
            CHECK(intersect({a, b}) == intersect({b, a}));
            CHECK(intersect({intersect({a, b}), c}) == intersect({a, intersect({b, c})}));
            CHECK(intersect({a, a}) == a);
            CHECK(intersect({a, CandidateVector(a.size(), 1)}) == a);
            CHECK(intersect({a, CandidateVector(a.size(), 0)}) == CandidateVector(a.size(), 0));
        }
    }
}

TEST_CASE("normalize_candidates") {
    CHECK(normalize_candidates({0, 0, 1, 0, 0}) == BeliefVector{0, 0, 1, 0, 0});
    CHECK(normalize_candidates({1, 0, 1, 0}) == BeliefVector{0.5, 0, 0.5, 0});
    // Empty candidate set falls back to equal beliefs on all states.
    CHECK(normalize_candidates({0, 0, 0}) == uniform_belief(3));
}

TEST_CASE("argmax_indicator") {
    CHECK(argmax_indicator({0.2, 0.5, 0.3}) == CandidateVector{0, 1, 0});
    // Ties break toward the lowest state index.
    CHECK(argmax_indicator(uniform_belief(3)) == CandidateVector{1, 0, 0});
    CHECK(argmax_indicator({0.0, 0.0, 1.0}) == CandidateVector{0, 0, 1});
}

TEST_CASE("a long Bayes chain separates the coin model") {
    // One seeded sample path under state 3 of the five-state coin model;
    // statistical coverage over many seeds lives in the acceptance suite.
    const std::vector<std::vector<double>> table = {
        {0.5, 0.5}, {0.5, 0.5}, {0.4, 0.6}, {0.4, 0.6}, {0.5, 0.5}};
    const std::vector<double>& truth_row = table[2];
    std::mt19937_64 gen(1234);
    BeliefVector pi = uniform_belief(5);
    for (int t = 0; t < 2000; ++t) {
        const int signal = sample_categorical(gen, truth_row);
        std::vector<double> column;
        for (const auto& row : table) column.push_back(row[static_cast<std::size_t>(signal)]);
        pi = bayes_update(pi, column);
        CHECK(sum_of(pi) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(round_beliefs(pi, 1e-3) == CandidateVector{0, 0, 1, 1, 0});
}
