#pragma once

#include "trippal/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace trippal {

enum class ViolationCategory {
    VisitTooShort,
    TravelTooShort,
    HorizonExceeded,
    NotApplicable,
    DuplicateVisit,
    UnknownPoi,
    BadChaining,
};

std::string_view to_string(ViolationCategory category);

struct Violation {
    ViolationCategory category;
    std::size_t step_index;
    std::string detail;
    int required_slots = 0;
    int actual_slots = 0;

    friend bool operator==(const Violation &, const Violation &) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    /// The first step does not leave from the task's start POI.
    bool wrong_start = false;

    bool valid() const { return violations.empty(); }
    std::size_t count(ViolationCategory category) const;

    friend bool operator==(const ValidationReport &, const ValidationReport &) = default;
};

/// Checks every step for known POIs, location chaining, repeated visits,
/// minimum visit and travel durations, and the horizon. Reports all
/// violations; durations longer than required are accepted.
ValidationReport validate(const Plan &plan, const ItineraryTask &task);

/// actual/required for one duration violation.
struct DurationRatio {
    int actual = 0;
    int required = 1;

    double value() const { return static_cast<double>(actual) / required; }
};

/// One entry per VisitTooShort / TravelTooShort violation, in report order.
std::vector<DurationRatio> violation_ratio(const ValidationReport &report);

/// Human-readable listing, one line per violation.
std::string format_report(const ValidationReport &report);

} // namespace trippal
