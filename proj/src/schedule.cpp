#include "poesim/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace poesim {

namespace {

std::int64_t parse_int(std::string_view text, const char* what) {
    std::int64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string("schedule: bad ") + what + " '" +
                                    std::string(text) + "'");
    }
    return value;
}

}  // namespace

ScheduleSpec parse_schedule_spec(const std::string& text) {
    ScheduleSpec spec;
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (kind == "linear") {
        spec.kind = ScheduleKind::Linear;
        if (!arg.empty()) throw std::invalid_argument("schedule: linear takes no parameter");
    } else if (kind == "constant") {
        spec.kind = ScheduleKind::Constant;
        spec.constant_length = parse_int(arg, "constant length");
    } else if (kind == "exponential") {
        spec.kind = ScheduleKind::Exponential;
        spec.exponential_base = parse_int(arg, "exponential base");
    } else if (kind == "explicit") {
        spec.kind = ScheduleKind::Explicit;
        std::string_view rest = arg;
        if (!rest.empty() && rest.front() == '[') rest.remove_prefix(1);
        if (!rest.empty() && rest.back() == ']') rest.remove_suffix(1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            spec.explicit_starts.push_back(parse_int(rest.substr(0, comma), "explicit start"));
            rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
        }
    } else {
        throw std::invalid_argument(
            "schedule: unknown kind '" + kind +
            "' (expected constant:L | linear | exponential:a | explicit:[t0,t1,...])");
    }
    validate_schedule_spec(spec);
    return spec;
}

std::string schedule_spec_to_string(const ScheduleSpec& spec) {
    switch (spec.kind) {
        case ScheduleKind::Linear:
            return "linear";
        case ScheduleKind::Constant:
            return "constant:" + std::to_string(spec.constant_length);
        case ScheduleKind::Exponential:
            return "exponential:" + std::to_string(spec.exponential_base);
        case ScheduleKind::Explicit: {
            std::string text = "explicit:[";
            for (std::size_t k = 0; k < spec.explicit_starts.size(); ++k) {
                if (k > 0) text += ',';
                text += std::to_string(spec.explicit_starts[k]);
            }
            return text + "]";
        }
    }
    throw std::logic_error("schedule: unreachable kind");
}

void validate_schedule_spec(const ScheduleSpec& spec) {
    switch (spec.kind) {
        case ScheduleKind::Linear:
            return;
        case ScheduleKind::Constant:
            if (spec.constant_length < 1) {
                throw std::invalid_argument("schedule: constant length must be >= 1");
            }
            return;
        case ScheduleKind::Exponential:
            if (spec.exponential_base < 1) {
                throw std::invalid_argument("schedule: exponential base must be an integer >= 1");
            }
            return;
        case ScheduleKind::Explicit: {
            const auto& starts = spec.explicit_starts;
            if (starts.empty() || starts.front() != 0) {
                throw std::invalid_argument("schedule: explicit list must start at 0");
            }
            for (std::size_t k = 1; k < starts.size(); ++k) {
                if (starts[k] <= starts[k - 1]) {
                    throw std::invalid_argument(
                        "schedule: explicit starts must be strictly increasing");
                }
            }
            for (std::size_t k = 2; k < starts.size(); ++k) {
                const std::int64_t previous = starts[k - 1] - starts[k - 2];
                const std::int64_t current = starts[k] - starts[k - 1];
                if (current < previous) {
                    throw std::invalid_argument(
                        "schedule: explicit epoch lengths decrease (" + std::to_string(previous) +
                        " then " + std::to_string(current) +
                        "); epoch lengths must be nondecreasing");
                }
            }
            return;
        }
    }
    throw std::logic_error("schedule: unreachable kind");
}

bool EpochSchedule::contains(std::int64_t t) const {
    return std::binary_search(starts.begin(), starts.end(), t);
}

std::vector<std::int64_t> EpochSchedule::lengths() const {
    std::vector<std::int64_t> result;
    result.reserve(starts.size());
    for (std::size_t k = 1; k < starts.size(); ++k) {
        result.push_back(starts[k] - starts[k - 1]);
    }
    return result;
}

std::int64_t EpochSchedule::min_length() const {
    const auto all = lengths();
    return all.empty() ? 0 : *std::min_element(all.begin(), all.end());
}

std::int64_t EpochSchedule::max_length() const {
    const auto all = lengths();
    return all.empty() ? 0 : *std::max_element(all.begin(), all.end());
}

EpochSchedule make_schedule(const ScheduleSpec& spec, std::int64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("schedule: horizon must be >= 1");
    validate_schedule_spec(spec);
    EpochSchedule schedule;
    schedule.horizon = horizon;
    switch (spec.kind) {
        case ScheduleKind::Constant:
            for (std::int64_t t = 0; t <= horizon; t += spec.constant_length) {
                schedule.starts.push_back(t);
            }
            break;
        case ScheduleKind::Linear: {
            std::int64_t t = 0;
            std::int64_t length = 1;
            while (t <= horizon) {
                schedule.starts.push_back(t);
                t += length;
                ++length;
            }
            break;
        }
        case ScheduleKind::Exponential: {
            std::int64_t t = 0;
            std::int64_t length = 1;  // a^0
            while (t <= horizon) {
                schedule.starts.push_back(t);
                if (length > horizon - t) break;  // also guards overflow
                t += length;
                if (spec.exponential_base > 1 &&
                    length > horizon / spec.exponential_base) {
                    length = horizon + 1;  // next epoch cannot complete
                } else {
                    length *= spec.exponential_base;
                }
            }
            break;
        }
        case ScheduleKind::Explicit:
            for (std::int64_t t : spec.explicit_starts) {
                if (t <= horizon) schedule.starts.push_back(t);
            }
            break;
    }
    return schedule;
}

}  // namespace poesim
