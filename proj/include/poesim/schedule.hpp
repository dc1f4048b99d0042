#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Epoch schedules: the index set I = {t_0 = 0, t_1, ...} partitioning time
// into epochs B_k = [t_k, t_{k+1}). Epoch lengths must be nondecreasing.

namespace poesim {

enum class ScheduleKind { Constant, Linear, Exponential, Explicit };

struct ScheduleSpec {
    ScheduleKind kind = ScheduleKind::Linear;
    std::int64_t constant_length = 1;   // Constant: |B_k| = L, L >= 1
    std::int64_t exponential_base = 2;  // Exponential: |B_k| = a^k, integer a >= 1
    std::vector<std::int64_t> explicit_starts;

    bool operator==(const ScheduleSpec&) const = default;
};

// Compact text grammar: "constant:L" | "linear" | "exponential:a" |
// "explicit:t0,t1,..." — the form used in config files.
ScheduleSpec parse_schedule_spec(const std::string& text);
std::string schedule_spec_to_string(const ScheduleSpec& spec);

// Validates the parameters (including nondecreasing lengths for explicit
// lists) without generating start times. Throws std::invalid_argument.
void validate_schedule_spec(const ScheduleSpec& spec);

struct EpochSchedule {
    std::vector<std::int64_t> starts;  // t_0 = 0, strictly increasing, <= horizon
    std::int64_t horizon = 0;

    bool contains(std::int64_t t) const;  // t ∈ I
    // Lengths of the completed epochs, i.e. consecutive start differences.
    std::vector<std::int64_t> lengths() const;
    std::int64_t min_length() const;  // over completed epochs; 0 if none
    std::int64_t max_length() const;
};

// Start times covering [0, horizon]:
//   constant(L):     0, L, 2L, ...
//   linear:          lengths 1, 2, 3, ... -> 0, 1, 3, 6, 10, ...
//   exponential(a):  t_1 = 1, t_{k+1} = t_k + a^k -> 0, 1, 3, 7, 15 for a = 2
//   explicit:        the given list (validated), truncated at horizon
EpochSchedule make_schedule(const ScheduleSpec& spec, std::int64_t horizon);

}  // namespace poesim
