#include "poesim/io.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace poesim {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (result.ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buffer, result.ptr);
}

void write_trace_csv(std::ostream& out, const RunRecord& record) {
    out << "t,agent";
    for (int s = 1; s <= record.num_states; ++s) out << ",mu_" << s;
    out << ",transmitted_bits_cumulative\n";
    for (std::size_t ti = 0; ti < record.trace_times.size(); ++ti) {
        for (std::size_t ai = 0; ai < record.trace_agents.size(); ++ai) {
            out << record.trace_times[ti] << ',' << record.trace_agents[ai] + 1;
            for (double value : record.mu_trace[ti][ai]) out << ',' << format_double(value);
            out << ',' << record.bits_trace[ti][ai] << '\n';
        }
    }
}

void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "protocol,seed,convergence_step,separation_step,wrapper_step,total_bits,success,"
           "diameter\n";
    for (const RunRecord& record : records) {
        out << protocol_name(record.protocol) << ',' << record.seed << ','
            << record.convergence_step << ',' << record.separation_step << ','
            << record.wrapper_step << ',' << record.total_network_bits << ','
            << (record.converged() ? 1 : 0) << ',' << record.diameter << '\n';
    }
}

void write_positions_csv(std::ostream& out, const std::vector<std::array<double, 2>>& positions) {
    out << "agent,x,y\n";
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out << i + 1 << ',' << format_double(positions[i][0]) << ','
            << format_double(positions[i][1]) << '\n';
    }
}

namespace {

void write_aggregates_header(std::ostream& out) {
    out << "protocol,runs,converged,success_rate,convergence_median,convergence_q25,"
           "convergence_q75,convergence_min,convergence_max,separation_median,wrapper_median,"
           "total_bits_median,agent_bits_at_convergence_median\n";
}

void write_aggregates_row(std::ostream& out, const std::string& protocol,
                          const BatchAggregates& a) {
    out << protocol << ',' << a.num_runs << ',' << a.num_converged << ','
        << format_double(a.success_rate) << ',' << format_double(a.convergence_median) << ','
        << format_double(a.convergence_q25) << ',' << format_double(a.convergence_q75) << ','
        << a.convergence_min << ',' << a.convergence_max << ','
        << format_double(a.separation_median) << ',' << format_double(a.wrapper_median) << ','
        << format_double(a.total_bits_median) << ','
        << format_double(a.agent_bits_at_convergence_median) << '\n';
}

}  // namespace

void write_aggregates_csv(std::ostream& out, const char* protocol,
                          const BatchAggregates& aggregates) {
    write_aggregates_header(out);
    write_aggregates_row(out, protocol, aggregates);
}

void write_aggregates_csv(std::ostream& out,
                          const std::vector<std::pair<std::string, BatchAggregates>>& rows) {
    write_aggregates_header(out);
    for (const auto& [protocol, aggregates] : rows) {
        write_aggregates_row(out, protocol, aggregates);
    }
}

}  // namespace poesim
