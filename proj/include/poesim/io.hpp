#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "poesim/sim.hpp"

// CSV and manifest writers shared by the CLI and the tests. Doubles are
// formatted with std::to_chars shortest round-trip form so identical runs
// produce byte-identical files.

namespace poesim {

std::string format_double(double value);

// Columns: t,agent,mu_1..mu_m,transmitted_bits_cumulative. Agent indices
// are 1-based on disk. Bits are the broadcast bits the agent emitted before
// time t.
void write_trace_csv(std::ostream& out, const RunRecord& record);

// Per-seed columns: protocol,seed,convergence_step,separation_step,
// wrapper_step,total_bits,success,diameter. Never-events carry -1.
void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records);

void write_positions_csv(std::ostream& out, const std::vector<std::array<double, 2>>& positions);

void write_aggregates_csv(std::ostream& out, const char* protocol,
                          const BatchAggregates& aggregates);
// Multi-protocol variant: one row per protocol.
void write_aggregates_csv(std::ostream& out,
                          const std::vector<std::pair<std::string, BatchAggregates>>& rows);

}  // namespace poesim
