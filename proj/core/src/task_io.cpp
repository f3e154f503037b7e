#include "trippal/task_io.hpp"

#include "trippal/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace trippal {

using ordered_json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "format", "city", "slot_minutes", "day_start", "horizon_hours",
    "max_utility", "start_poi", "pois", "travel_minutes"};
const std::set<std::string> kPoiKeys = {"id", "name", "utility", "visit_minutes"};

const ordered_json &require(const ordered_json &object, const char *key) {
    auto it = object.find(key);
    if (it == object.end())
        throw ParseError(std::string("task file is missing key '") + key + "'");
    return *it;
}

int require_int(const ordered_json &object, const char *key) {
    const ordered_json &value = require(object, key);
    if (!value.is_number_integer())
        throw ParseError(std::string("key '") + key + "' must be an integer");
    return value.get<int>();
}

std::string require_string(const ordered_json &object, const char *key) {
    const ordered_json &value = require(object, key);
    if (!value.is_string())
        throw ParseError(std::string("key '") + key + "' must be a string");
    return value.get<std::string>();
}

void reject_unknown(const ordered_json &object, const std::set<std::string> &allowed,
                    const std::string &where) {
    for (const auto &item : object.items()) {
        if (!allowed.contains(item.key()))
            throw ParseError("unknown key '" + item.key() + "' in " + where);
    }
}

} // namespace

TaskFile parse_task_file(std::string_view json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("task file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("task file must be a JSON object");
    reject_unknown(doc, kTopLevelKeys, "task file");
    if (require_string(doc, "format") != kTaskFormat)
        throw ParseError("unsupported task format, expected '" + std::string(kTaskFormat) + "'");

    TaskFile file;
    file.city = require_string(doc, "city");
    file.slot_minutes = require_int(doc, "slot_minutes");
    file.day_start = ClockTime::parse(require_string(doc, "day_start"));
    file.horizon_hours = require_int(doc, "horizon_hours");
    file.max_utility = require_int(doc, "max_utility");
    int start = require_int(doc, "start_poi");
    if (start < 0)
        throw ParseError("start_poi must be non-negative");
    file.start_poi = static_cast<std::size_t>(start);

    const ordered_json &pois = require(doc, "pois");
    if (!pois.is_array())
        throw ParseError("'pois' must be an array");
    for (const ordered_json &entry : pois) {
        if (!entry.is_object())
            throw ParseError("every POI must be an object");
        reject_unknown(entry, kPoiKeys, "POI entry");
        file.pois.push_back(TaskFilePoi{require_string(entry, "id"), require_string(entry, "name"),
                                        require_int(entry, "utility"),
                                        require_int(entry, "visit_minutes")});
    }

    const ordered_json &travel = require(doc, "travel_minutes");
    if (!travel.is_array())
        throw ParseError("'travel_minutes' must be an array");
    for (const ordered_json &row : travel) {
        if (!row.is_array())
            throw ParseError("'travel_minutes' rows must be arrays");
        std::vector<int> values;
        for (const ordered_json &cell : row) {
            if (!cell.is_number_integer() || cell.get<long long>() < 0)
                throw ParseError("travel minutes must be non-negative integers");
            values.push_back(cell.get<int>());
        }
        file.travel_minutes.push_back(std::move(values));
    }
    return file;
}

std::string write_task_file(const TaskFile &file) {
    ordered_json doc;
    doc["format"] = kTaskFormat;
    doc["city"] = file.city;
    doc["slot_minutes"] = file.slot_minutes;
    doc["day_start"] = file.day_start.to_string();
    doc["horizon_hours"] = file.horizon_hours;
    doc["max_utility"] = file.max_utility;
    doc["start_poi"] = file.start_poi;
    ordered_json pois = ordered_json::array();
    for (const TaskFilePoi &poi : file.pois) {
        ordered_json entry;
        entry["id"] = poi.id;
        entry["name"] = poi.name;
        entry["utility"] = poi.utility;
        entry["visit_minutes"] = poi.visit_minutes;
        pois.push_back(std::move(entry));
    }
    doc["pois"] = std::move(pois);

    // Matrix rows stay on one line each; nlohmann's pretty printer would put
    // every cell on its own line.
    doc["travel_minutes"] = ordered_json::array();
    std::string text = doc.dump(2);
    std::string rows;
    for (std::size_t i = 0; i < file.travel_minutes.size(); ++i) {
        rows += i == 0 ? "\n    " : ",\n    ";
        rows += ordered_json(file.travel_minutes[i]).dump();
    }
    if (!rows.empty()) {
        const std::string empty = "\"travel_minutes\": []";
        auto pos = text.rfind(empty);
        text.replace(pos, empty.size(), "\"travel_minutes\": [" + rows + "\n  ]");
    }
    return text + "\n";
}

TaskFile read_task_file(const std::filesystem::path &path) {
    return parse_task_file(read_text_file(path));
}

void save_task_file(const TaskFile &file, const std::filesystem::path &path) {
    write_text_file(path, write_task_file(file));
}

ItineraryTask to_task(const TaskFile &file) {
    TimeGrid grid(file.slot_minutes, file.day_start, file.horizon_hours);
    std::size_t n = file.pois.size();
    if (file.travel_minutes.size() != n)
        throw Error(ErrorCode::InvalidTask, "travel_minutes must have one row per POI");

    std::vector<Poi> pois;
    pois.reserve(n);
    for (const TaskFilePoi &entry : file.pois) {
        if (entry.visit_minutes <= 0)
            throw Error(ErrorCode::InvalidTask, "visit_minutes of '" + entry.id + "' must be positive");
        pois.push_back(Poi{entry.id, entry.name, entry.utility,
                           minutes_to_slots(entry.visit_minutes, grid)});
    }
    TravelMatrix travel(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (file.travel_minutes[i].size() != n)
            throw Error(ErrorCode::InvalidTask, "travel_minutes must be square");
        for (std::size_t j = 0; j < n; ++j)
            travel(i, j) = minutes_to_slots(file.travel_minutes[i][j], grid);
    }
    return ItineraryTask(file.city, grid, file.max_utility, std::move(pois), std::move(travel),
                         file.start_poi);
}

TaskFile to_task_file(const ItineraryTask &task) {
    const TimeGrid &grid = task.grid();
    TaskFile file;
    file.city = task.city();
    file.slot_minutes = grid.slot_minutes();
    file.day_start = grid.day_start();
    file.horizon_hours = grid.horizon_hours();
    file.max_utility = task.max_utility();
    file.start_poi = task.start_poi();
    for (const Poi &poi : task.pois())
        file.pois.push_back(
            TaskFilePoi{poi.id, poi.display_name, poi.utility, poi.visit_slots * grid.slot_minutes()});
    for (std::size_t i = 0; i < task.size(); ++i) {
        std::vector<int> row;
        for (std::size_t j = 0; j < task.size(); ++j)
            row.push_back(task.travel(i, j) * grid.slot_minutes());
        file.travel_minutes.push_back(std::move(row));
    }
    return file;
}

ItineraryTask load_task(const std::filesystem::path &path) {
    return to_task(read_task_file(path));
}

void save_task(const ItineraryTask &task, const std::filesystem::path &path) {
    save_task_file(to_task_file(task), path);
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

} // namespace trippal
