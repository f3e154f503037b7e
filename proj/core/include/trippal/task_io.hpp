#pragma once

#include "trippal/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace trippal {

inline constexpr std::string_view kTaskFormat = "trip-task/1";

/// One entry of the `pois` array.
struct TaskFilePoi {
    std::string id;
    std::string name;
    int utility = 1;
    int visit_minutes = 0;

    friend bool operator==(const TaskFilePoi &, const TaskFilePoi &) = default;
};

/// In-memory image of a task file. Minutes are kept exactly as written so that
/// fixture data survives a read/write cycle byte for byte.
struct TaskFile {
    std::string city;
    int slot_minutes = 15;
    ClockTime day_start{8, 0};
    int horizon_hours = 8;
    int max_utility = 10;
    std::size_t start_poi = 0;
    std::vector<TaskFilePoi> pois;
    std::vector<std::vector<int>> travel_minutes;

    friend bool operator==(const TaskFile &, const TaskFile &) = default;
};

/// Throws ParseError on malformed JSON, unknown keys, or a missing/incorrect `format`.
TaskFile parse_task_file(std::string_view json_text);
std::string write_task_file(const TaskFile &file);

TaskFile read_task_file(const std::filesystem::path &path);
void save_task_file(const TaskFile &file, const std::filesystem::path &path);

/// Converts minutes to slots with minutes_to_slots; builds and validates the task.
ItineraryTask to_task(const TaskFile &file);
/// Inverse of to_task up to rounding: minutes are written as slot multiples.
TaskFile to_task_file(const ItineraryTask &task);

ItineraryTask load_task(const std::filesystem::path &path);
void save_task(const ItineraryTask &task, const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace trippal
