#include "trippal/validator.hpp"

#include <optional>
#include <set>
#include <sstream>

namespace trippal {

std::string_view to_string(ViolationCategory category) {
    switch (category) {
    case ViolationCategory::VisitTooShort: return "VisitTooShort";
    case ViolationCategory::TravelTooShort: return "TravelTooShort";
    case ViolationCategory::HorizonExceeded: return "HorizonExceeded";
    case ViolationCategory::NotApplicable: return "NotApplicable";
    case ViolationCategory::DuplicateVisit: return "DuplicateVisit";
    case ViolationCategory::UnknownPoi: return "UnknownPoi";
    case ViolationCategory::BadChaining: return "BadChaining";
    }
    return "Unknown";
}

std::size_t ValidationReport::count(ViolationCategory category) const {
    std::size_t total = 0;
    for (const Violation &v : violations)
        total += v.category == category;
    return total;
}

ValidationReport validate(const Plan &plan, const ItineraryTask &task) {
    ValidationReport report;
    auto add = [&](ViolationCategory category, std::size_t step, std::string detail,
                   int required = 0, int actual = 0) {
        report.violations.push_back(Violation{category, step, std::move(detail), required, actual});
    };

    std::optional<std::size_t> here = task.start_poi();
    int clock = 0;
    std::set<std::string> visited;

    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const PlanStep &step = plan.steps[i];
        const bool is_move = step.kind == StepKind::Move;

        // (a) known POIs
        std::optional<std::size_t> origin;
        if (is_move) {
            origin = task.index_of(step.poi_from);
            if (!origin)
                add(ViolationCategory::UnknownPoi, i, "unknown POI '" + step.poi_from + "'");
        }
        std::optional<std::size_t> target = task.index_of(step.poi);
        if (!target)
            add(ViolationCategory::UnknownPoi, i, "unknown POI '" + step.poi + "'");

        if (step.start_slot != clock)
            add(ViolationCategory::BadChaining, i,
                "starts at slot " + std::to_string(step.start_slot) + " but the previous step ends at " +
                    std::to_string(clock));

        // (b) location chaining
        std::optional<std::size_t> at = is_move ? origin : target;
        if (at && here && *at != *here) {
            if (i == 0)
                report.wrong_start = true;
            add(ViolationCategory::BadChaining, i,
                std::string(is_move ? "move leaves from '" : "visit at '") +
                    task.poi(*at).id + "' while the tourist is at '" + task.poi(*here).id + "'");
        }
        if (is_move && origin && target && *origin == *target)
            add(ViolationCategory::BadChaining, i, "move from '" + step.poi + "' to itself");

        if (!is_move) {
            // (c) repeated visits
            if (!visited.insert(step.poi).second)
                add(ViolationCategory::DuplicateVisit, i, "'" + step.poi + "' visited again");
            // (d) visit duration
            if (target) {
                int required = task.poi(*target).visit_slots;
                if (step.duration() < required)
                    add(ViolationCategory::VisitTooShort, i,
                        "visit of '" + step.poi + "' lasts " + std::to_string(step.duration()) +
                            " slots, needs " + std::to_string(required),
                        required, step.duration());
            }
        } else if (origin && target && *origin != *target) {
            // (e) travel duration
            int required = task.travel(*origin, *target);
            if (step.duration() < required)
                add(ViolationCategory::TravelTooShort, i,
                    "move '" + step.poi_from + "' -> '" + step.poi + "' lasts " +
                        std::to_string(step.duration()) + " slots, needs " + std::to_string(required),
                    required, step.duration());
        }

        if (step.end_slot < step.start_slot)
            add(ViolationCategory::NotApplicable, i, "ends before it starts");

        here = target;
        clock = step.end_slot;
    }

    // (f) horizon
    if (!plan.steps.empty() && plan.end_slot() > task.total_slots())
        add(ViolationCategory::HorizonExceeded, plan.steps.size() - 1,
            "plan ends at slot " + std::to_string(plan.end_slot()) + ", horizon is " +
                std::to_string(task.total_slots()),
            task.total_slots(), plan.end_slot());
    return report;
}

std::vector<DurationRatio> violation_ratio(const ValidationReport &report) {
    std::vector<DurationRatio> ratios;
    for (const Violation &v : report.violations) {
        if (v.category == ViolationCategory::VisitTooShort ||
            v.category == ViolationCategory::TravelTooShort)
            ratios.push_back(DurationRatio{v.actual_slots, v.required_slots});
    }
    return ratios;
}

std::string format_report(const ValidationReport &report) {
    std::ostringstream out;
    out << (report.valid() ? "VALID" : "INVALID") << " (" << report.violations.size()
        << " violation" << (report.violations.size() == 1 ? "" : "s") << ")\n";
    for (const Violation &v : report.violations) {
        out << "  step " << v.step_index << ": " << to_string(v.category) << ": " << v.detail;
        if (v.required_slots != 0 || v.actual_slots != 0)
            out << " [required=" << v.required_slots << " actual=" << v.actual_slots << "]";
        out << "\n";
    }
    return out.str();
}

} // namespace trippal
