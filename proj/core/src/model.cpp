#include "trippal/model.hpp"

#include "trippal/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>

namespace trippal {

std::string ClockTime::to_string() const {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%02d:%02d", hour, minute);
    return buffer;
}

ClockTime ClockTime::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 3 != text.size())
        throw ParseError("expected HH:MM, got '" + std::string(text) + "'");
    int hour = -1;
    int minute = -1;
    auto h = std::from_chars(text.data(), text.data() + colon, hour);
    auto m = std::from_chars(text.data() + colon + 1, text.data() + text.size(), minute);
    if (h.ec != std::errc() || h.ptr != text.data() + colon || m.ec != std::errc() ||
        m.ptr != text.data() + text.size() || hour < 0 || hour > 23 || minute < 0 || minute > 59)
        throw ParseError("expected HH:MM, got '" + std::string(text) + "'");
    return ClockTime{hour, minute};
}

TimeGrid::TimeGrid(int slot_minutes, ClockTime day_start, int horizon_hours)
    : slot_minutes_(slot_minutes), day_start_(day_start), horizon_hours_(horizon_hours) {
    if (slot_minutes <= 0 || 60 % slot_minutes != 0)
        throw Error(ErrorCode::InvalidTask,
                    "slot_minutes must divide 60, got " + std::to_string(slot_minutes));
    if (horizon_hours <= 0)
        throw Error(ErrorCode::InvalidTask,
                    "horizon_hours must be positive, got " + std::to_string(horizon_hours));
    if (day_start.hour < 0 || day_start.hour > 23 || day_start.minute < 0 || day_start.minute > 59)
        throw Error(ErrorCode::InvalidTask, "day_start out of range");
}

ItineraryTask::ItineraryTask(std::string city, TimeGrid grid, int max_utility,
                             std::vector<Poi> pois, TravelMatrix travel_slots,
                             std::size_t start_poi)
    : city_(std::move(city)), grid_(grid), max_utility_(max_utility), pois_(std::move(pois)),
      travel_(std::move(travel_slots)), start_poi_(start_poi) {
    auto fail = [](const std::string &what) { throw Error(ErrorCode::InvalidTask, what); };
    if (max_utility_ < 1)
        fail("max_utility must be at least 1");
    if (pois_.empty())
        fail("task has no POIs");
    if (travel_.size() != pois_.size())
        fail("travel matrix is " + std::to_string(travel_.size()) + "x" +
             std::to_string(travel_.size()) + " for " + std::to_string(pois_.size()) + " POIs");
    if (start_poi_ >= pois_.size())
        fail("start_poi out of range");

    std::set<std::string> seen;
    for (const Poi &poi : pois_) {
        if (poi.id.empty() || fold_name(poi.id) != poi.id)
            fail("POI id '" + poi.id + "' is not a folded token");
        if (!seen.insert(poi.id).second)
            fail("duplicate POI id '" + poi.id + "'");
        if (poi.utility < 1 || poi.utility > max_utility_)
            fail("utility of '" + poi.id + "' outside [1, " + std::to_string(max_utility_) + "]");
        if (poi.visit_slots < 1)
            fail("visit_slots of '" + poi.id + "' must be at least 1");
    }
    for (std::size_t i = 0; i < pois_.size(); ++i) {
        for (std::size_t j = 0; j < pois_.size(); ++j) {
            int value = travel_(i, j);
            if (i == j && value != 0)
                fail("travel matrix diagonal must be 0 at '" + pois_[i].id + "'");
            if (i != j && value < 1)
                fail("travel from '" + pois_[i].id + "' to '" + pois_[j].id +
                     "' must be at least one slot");
        }
    }
}

std::optional<std::size_t> ItineraryTask::index_of(std::string_view poi_id) const {
    for (std::size_t i = 0; i < pois_.size(); ++i) {
        if (pois_[i].id == poi_id)
            return i;
    }
    return std::nullopt;
}

PlanStep PlanStep::visit(std::string poi, int start, int end) {
    return PlanStep{StepKind::Visit, {}, std::move(poi), start, end};
}

PlanStep PlanStep::move(std::string from, std::string to, int start, int end) {
    return PlanStep{StepKind::Move, std::move(from), std::move(to), start, end};
}

std::set<std::string> Plan::visited() const {
    std::set<std::string> ids;
    for (const PlanStep &step : steps) {
        if (step.kind == StepKind::Visit)
            ids.insert(step.poi);
    }
    return ids;
}

std::vector<std::string> Plan::visit_sequence() const {
    std::vector<std::string> ids;
    for (const PlanStep &step : steps) {
        if (step.kind == StepKind::Visit)
            ids.push_back(step.poi);
    }
    return ids;
}

std::size_t Plan::move_count() const {
    std::size_t count = 0;
    for (const PlanStep &step : steps)
        count += step.kind == StepKind::Move;
    return count;
}

std::string fold_name(std::string_view raw) {
    std::string out;
    bool pending_separator = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto c = static_cast<unsigned char>(raw[i]);
        if (c >= 0x80) {
            // Whole multi-byte sequence is dropped; continuation bytes are >= 0x80 too.
            continue;
        }
        if (std::isalnum(c)) {
            if (pending_separator && !out.empty())
                out.push_back('_');
            pending_separator = false;
            out.push_back(static_cast<char>(std::tolower(c)));
        } else if (std::isspace(c) || c == '-' || c == '_') {
            pending_separator = true;
        }
    }
    if (out.empty())
        throw Error(ErrorCode::InvalidName, "'" + std::string(raw) + "' folds to an empty token");
    return out;
}

int minutes_to_slots(int minutes, const TimeGrid &grid) {
    if (minutes <= 0)
        return 0;
    return (minutes + grid.slot_minutes() - 1) / grid.slot_minutes();
}

int plan_utility(const Plan &plan, const ItineraryTask &task) {
    int total = 0;
    for (const std::string &id : plan.visited()) {
        auto index = task.index_of(id);
        if (!index)
            throw Error(ErrorCode::UnknownPoi, "plan visits unknown POI '" + id + "'");
        total += task.poi(*index).utility;
    }
    return total;
}

} // namespace trippal
