#include "trippal/providers.hpp"

#include "trippal/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>

namespace trippal {

void RawTravelInfo::check() const {
    std::vector<std::string> gaps;
    std::set<std::string> names(poi_names.begin(), poi_names.end());
    if (poi_names.empty())
        gaps.push_back("no POIs");
    if (names.size() != poi_names.size())
        gaps.push_back("duplicate POI names");
    for (const std::string &name : poi_names) {
        if (!ratings.contains(name))
            gaps.push_back("rating of '" + name + "'");
        if (!visit_minutes.contains(name))
            gaps.push_back("visit time of '" + name + "'");
        for (const std::string &other : poi_names) {
            if (name != other && !travel_minutes.contains({name, other}))
                gaps.push_back("travel '" + name + "' -> '" + other + "'");
        }
    }
    for (const auto &[name, value] : ratings) {
        if (!names.contains(name))
            gaps.push_back("rating for unlisted '" + name + "'");
    }
    for (const auto &[name, value] : visit_minutes) {
        if (!names.contains(name))
            gaps.push_back("visit time for unlisted '" + name + "'");
    }
    for (const auto &[pair, value] : travel_minutes) {
        if (!names.contains(pair.first) || !names.contains(pair.second))
            gaps.push_back("travel for unlisted '" + pair.first + "' -> '" + pair.second + "'");
    }
    if (!gaps.empty()) {
        std::string message = "missing or unexpected entries:";
        for (const std::string &gap : gaps)
            message += "\n  " + gap;
        throw Error(ErrorCode::IncompleteInfo, message);
    }

    for (const auto &[name, value] : ratings) {
        if (value < 1 || value > rating_scale)
            throw ProviderParseError("rating of '" + name + "' is outside [1, " +
                                         std::to_string(rating_scale) + "]",
                                     name + " = " + std::to_string(value));
    }
    for (const auto &[name, value] : visit_minutes) {
        if (value <= 0 || value % 15 != 0)
            throw ProviderParseError("visit time of '" + name + "' is not a positive multiple of 15",
                                     name + " = " + std::to_string(value));
    }
    for (const auto &[pair, value] : travel_minutes) {
        if (value < 0)
            throw ProviderParseError("negative travel time", pair.first + " -> " + pair.second);
    }
}

FixtureProvider::FixtureProvider(std::filesystem::path directory)
    : directory_(std::move(directory)) {
}

std::filesystem::path FixtureProvider::default_fixture_dir() {
    if (const char *env = std::getenv("TRIP_FIXTURE_DIR"); env != nullptr && *env != '\0')
        return env;
    std::filesystem::path source = TRIPPAL_FIXTURE_DIR;
    if (std::filesystem::exists(source))
        return source;
    return TRIPPAL_INSTALLED_FIXTURE_DIR;
}

TaskFile FixtureProvider::fixture_file(const std::string &city) const {
    std::string key;
    try {
        key = fold_name(city);
    } catch (const Error &) {
        throw Error(ErrorCode::UnknownFixture, "no fixture for city '" + city + "'");
    }
    std::filesystem::path path = directory_ / (key + ".json");
    if (!std::filesystem::exists(path))
        throw Error(ErrorCode::UnknownFixture, "no fixture for city '" + city + "' in " +
                                                   directory_.string());
    return read_task_file(path);
}

RawTravelInfo FixtureProvider::fetch(const ProviderRequest &request) {
    return raw_from_task_file(fixture_file(request.city));
}

RawTravelInfo SyntheticProvider::fetch(const ProviderRequest &request) {
    if (request.n_pois < 1)
        throw Error(ErrorCode::InvalidTask, "synthetic request needs at least one POI");
    // mt19937_64 output is fixed by the standard; the distributions are not,
    // so values are mapped with a plain modulo.
    std::mt19937_64 rng(request.seed);
    auto draw = [&rng](std::uint64_t choices) { return static_cast<int>(rng() % choices); };

    RawTravelInfo raw;
    raw.city = request.city;
    raw.rating_scale = max_utility_;
    const int n = request.n_pois;
    const int width = n < 100 ? 2 : static_cast<int>(std::to_string(n).size());
    for (int i = 1; i <= n; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "poi_%0*d", width, i);
        raw.poi_names.emplace_back(name);
    }
    for (const std::string &name : raw.poi_names) {
        raw.ratings[name] = 1 + draw(static_cast<std::uint64_t>(max_utility_));
        raw.visit_minutes[name] = 30 + 15 * draw(11);
    }
    for (const std::string &from : raw.poi_names) {
        for (const std::string &to : raw.poi_names) {
            if (from != to)
                raw.travel_minutes[{from, to}] = 15 * (1 + draw(4));
        }
    }
    return raw;
}

TaskFile to_task_file(const RawTravelInfo &raw, const GridParams &grid,
                      std::optional<int> max_utility) {
    raw.check();
    TaskFile file;
    file.city = raw.city;
    file.slot_minutes = grid.slot_minutes;
    file.day_start = grid.day_start;
    file.horizon_hours = grid.horizon_hours;
    file.max_utility = max_utility.value_or(raw.rating_scale);
    file.start_poi = 0;
    for (const std::string &name : raw.poi_names)
        file.pois.push_back(
            TaskFilePoi{fold_name(name), name, raw.ratings.at(name), raw.visit_minutes.at(name)});
    for (const std::string &from : raw.poi_names) {
        std::vector<int> row;
        for (const std::string &to : raw.poi_names)
            row.push_back(from == to ? 0 : std::max(1, raw.travel_minutes.at({from, to})));
        file.travel_minutes.push_back(std::move(row));
    }
    return file;
}

RawTravelInfo raw_from_task_file(const TaskFile &file) {
    RawTravelInfo raw;
    raw.city = file.city;
    raw.rating_scale = file.max_utility;
    for (const TaskFilePoi &poi : file.pois) {
        raw.poi_names.push_back(poi.name);
        raw.ratings[poi.name] = poi.utility;
        raw.visit_minutes[poi.name] = poi.visit_minutes;
    }
    if (file.travel_minutes.size() != file.pois.size())
        throw Error(ErrorCode::InvalidTask, "travel_minutes must have one row per POI");
    for (std::size_t i = 0; i < file.pois.size(); ++i) {
        if (file.travel_minutes[i].size() != file.pois.size())
            throw Error(ErrorCode::InvalidTask, "travel_minutes must be square");
        for (std::size_t j = 0; j < file.pois.size(); ++j) {
            if (i != j)
                raw.travel_minutes[{file.pois[i].name, file.pois[j].name}] = file.travel_minutes[i][j];
        }
    }
    return raw;
}

ItineraryTask build_task(const RawTravelInfo &raw, const GridParams &grid,
                         std::optional<int> max_utility) {
    return to_task(to_task_file(raw, grid, max_utility));
}

} // namespace trippal
