#pragma once

#include "trippal/model.hpp"
#include "trippal/task_io.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trippal {

struct ProviderRequest {
    std::string city;
    int n_pois = 10;
    int horizon_hours = 8;
    std::uint64_t seed = 0;  // synthetic provider only
};

/// Travel information as a provider delivers it, keyed by display name.
struct RawTravelInfo {
    std::string city;
    std::vector<std::string> poi_names;
    std::map<std::string, int> ratings;
    std::map<std::string, int> visit_minutes;
    std::map<std::pair<std::string, std::string>, int> travel_minutes;
    int rating_scale = 10;

    /// Throws Error(IncompleteInfo) naming every missing or foreign entry and
    /// ProviderParseError for out-of-range values.
    void check() const;

    friend bool operator==(const RawTravelInfo &, const RawTravelInfo &) = default;
};

class TravelInfoProvider {
public:
    virtual ~TravelInfoProvider() = default;
    virtual RawTravelInfo fetch(const ProviderRequest &request) = 0;
};

/// Fixture datasets stored as task files named <folded city>.json.
class FixtureProvider : public TravelInfoProvider {
public:
    explicit FixtureProvider(std::filesystem::path directory = default_fixture_dir());

    /// Throws Error(UnknownFixture) when no file exists for the city.
    RawTravelInfo fetch(const ProviderRequest &request) override;
    TaskFile fixture_file(const std::string &city) const;

    /// $TRIP_FIXTURE_DIR, else the source tree's fixtures, else the installed copy.
    static std::filesystem::path default_fixture_dir();

private:
    std::filesystem::path directory_;
};

/// Seeded random POIs poi_01..poi_NN: ratings uniform in [1, max_utility],
/// visits uniform over 30..180 minutes in 15-minute steps, travel uniform over
/// {15, 30, 45, 60} minutes drawn independently for each ordered pair.
class SyntheticProvider : public TravelInfoProvider {
public:
    explicit SyntheticProvider(int max_utility = 10) : max_utility_(max_utility) {}

    RawTravelInfo fetch(const ProviderRequest &request) override;

private:
    int max_utility_;
};

struct GridParams {
    int slot_minutes = 15;
    ClockTime day_start{8, 0};
    int horizon_hours = 8;
};

/// Task document for raw information: ids are folded names, minutes are kept.
/// Off-diagonal travel of 0 minutes is stored as 1 minute (one slot minimum).
/// max_utility defaults to the provider's rating scale.
TaskFile to_task_file(const RawTravelInfo &raw, const GridParams &grid,
                      std::optional<int> max_utility = std::nullopt);

RawTravelInfo raw_from_task_file(const TaskFile &file);

/// Folds names to ids, rounds minutes up to slots, starts at the first POI.
/// Throws Error(IncompleteInfo) listing every missing rating/visit/travel entry.
ItineraryTask build_task(const RawTravelInfo &raw, const GridParams &grid,
                         std::optional<int> max_utility = std::nullopt);

// Parsers for chat replies.

/// Comma (or newline) separated names; enumeration prefixes like "1." are dropped.
/// Throws ParseError when no name is found.
std::vector<std::string> parse_poi_list(std::string_view text);

/// Lines of the form `name = k [suffix]`; other lines are ignored.
/// Throws ParseError when no line matches.
std::vector<std::pair<std::string, int>> parse_kv_lines(std::string_view text,
                                                        std::string_view unit_suffix = {});

/// Lines `Travel time from A, City to B, City is k mins`, keyed by folded
/// names. Throws ParseError when no line matches.
std::map<std::pair<std::string, std::string>, int> parse_travel_lines(std::string_view text);

} // namespace trippal
