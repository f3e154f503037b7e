#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace trippal {

// Minutes since midnight.
struct ClockTime {
    int hour = 8;
    int minute = 0;

    int minutes() const { return hour * 60 + minute; }
    std::string to_string() const;  // "HH:MM"
    static ClockTime parse(std::string_view text);  // throws ParseError

    friend bool operator==(const ClockTime &, const ClockTime &) = default;
};

/// Discrete day grid. All durations inside the planner are slot counts.
class TimeGrid {
public:
    TimeGrid() : TimeGrid(15, ClockTime{8, 0}, 8) {}
    /// Throws Error(InvalidTask) if slot_minutes does not divide 60 or the
    /// horizon is not a whole number of slots.
    TimeGrid(int slot_minutes, ClockTime day_start, int horizon_hours);

    int slot_minutes() const { return slot_minutes_; }
    ClockTime day_start() const { return day_start_; }
    int horizon_hours() const { return horizon_hours_; }
    int total_slots() const { return horizon_hours_ * 60 / slot_minutes_; }

    friend bool operator==(const TimeGrid &, const TimeGrid &) = default;

private:
    int slot_minutes_;
    ClockTime day_start_;
    int horizon_hours_;
};

struct Poi {
    std::string id;
    std::string display_name;
    int utility = 1;
    int visit_slots = 1;

    friend bool operator==(const Poi &, const Poi &) = default;
};

/// Dense, possibly asymmetric travel matrix in slots.
class TravelMatrix {
public:
    TravelMatrix() = default;
    explicit TravelMatrix(std::size_t n) : n_(n), slots_(n * n, 0) {}

    std::size_t size() const { return n_; }
    int operator()(std::size_t from, std::size_t to) const { return slots_[from * n_ + to]; }
    int &operator()(std::size_t from, std::size_t to) { return slots_[from * n_ + to]; }

    friend bool operator==(const TravelMatrix &, const TravelMatrix &) = default;

private:
    std::size_t n_ = 0;
    std::vector<int> slots_;
};

class ItineraryTask {
public:
    ItineraryTask() = default;
    /// Validates every model invariant; throws Error(InvalidTask) listing the first violation.
    ItineraryTask(std::string city, TimeGrid grid, int max_utility, std::vector<Poi> pois,
                  TravelMatrix travel_slots, std::size_t start_poi = 0);

    const std::string &city() const { return city_; }
    const TimeGrid &grid() const { return grid_; }
    int max_utility() const { return max_utility_; }
    const std::vector<Poi> &pois() const { return pois_; }
    std::size_t size() const { return pois_.size(); }
    const Poi &poi(std::size_t index) const { return pois_[index]; }
    const TravelMatrix &travel_slots() const { return travel_; }
    int travel(std::size_t from, std::size_t to) const { return travel_(from, to); }
    std::size_t start_poi() const { return start_poi_; }
    int total_slots() const { return grid_.total_slots(); }

    std::optional<std::size_t> index_of(std::string_view poi_id) const;

    friend bool operator==(const ItineraryTask &, const ItineraryTask &) = default;

private:
    std::string city_;
    TimeGrid grid_;
    int max_utility_ = 10;
    std::vector<Poi> pois_;
    TravelMatrix travel_;
    std::size_t start_poi_ = 0;
};

enum class StepKind { Visit, Move };

struct PlanStep {
    StepKind kind = StepKind::Visit;
    std::string poi_from;  // Move only
    std::string poi;       // Visit target or Move destination
    int start_slot = 0;
    int end_slot = 0;

    int duration() const { return end_slot - start_slot; }

    static PlanStep visit(std::string poi, int start, int end);
    static PlanStep move(std::string from, std::string to, int start, int end);

    friend bool operator==(const PlanStep &, const PlanStep &) = default;
};

struct Plan {
    std::string task_ref;
    std::vector<PlanStep> steps;

    /// Distinct Visit-step POI ids.
    std::set<std::string> visited() const;
    /// Visit-step POI ids in plan order, duplicates kept.
    std::vector<std::string> visit_sequence() const;
    int end_slot() const { return steps.empty() ? 0 : steps.back().end_slot; }
    std::size_t move_count() const;

    friend bool operator==(const Plan &, const Plan &) = default;
};

/// Stable POI token: ASCII lowercase, whitespace/'-'/'_' runs become one '_',
/// non-ASCII characters and remaining punctuation are dropped.
/// Throws Error(InvalidName) when nothing survives.
std::string fold_name(std::string_view raw);

/// ceil(minutes / slot_minutes); zero only for zero minutes.
int minutes_to_slots(int minutes, const TimeGrid &grid);

/// Sum of utilities of distinct visited POIs. Throws Error(UnknownPoi).
int plan_utility(const Plan &plan, const ItineraryTask &task);

} // namespace trippal
