#pragma once

#include "trippal/compile.hpp"
#include "trippal/model.hpp"
#include "trippal/oracle.hpp"
#include "trippal/providers.hpp"
#include "trippal/task_io.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

namespace trippal::testing {

inline std::filesystem::path data_dir() { return TRIPPAL_TEST_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return TRIPPAL_TEST_FIXTURE_DIR; }

inline TaskFile paris_file() { return read_task_file(fixture_dir() / "paris.json"); }

inline ItineraryTask paris_task(int horizon_hours = 6) {
    TaskFile file = paris_file();
    file.horizon_hours = horizon_hours;
    return to_task(file);
}

/// Synthetic task through the provider, the same path the suite generator uses.
inline ItineraryTask synthetic_task(std::uint64_t seed, int n, int hours, int max_utility = 10) {
    SyntheticProvider provider(max_utility);
    return build_task(provider.fetch(ProviderRequest{"synthetic", n, hours, seed}),
                      GridParams{15, ClockTime{8, 0}, hours}, max_utility);
}

/// Small task drawn directly in slots, with tighter and looser extremes than the
/// synthetic provider (visits of 1 slot, long hops, 1-slot horizons).
inline ItineraryTask random_slot_task(std::uint64_t seed, int n, int hours, int max_utility = 5) {
    std::mt19937_64 rng(seed);
    auto pick = [&rng](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    std::vector<Poi> pois;
    for (int i = 0; i < n; ++i)
        pois.push_back(Poi{"p" + std::to_string(i), "P" + std::to_string(i), pick(1, max_utility),
                           pick(1, 10)});
    TravelMatrix travel(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                travel(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = pick(1, 6);
    return ItineraryTask("random", TimeGrid(15, ClockTime{8, 0}, hours), max_utility,
                         std::move(pois), std::move(travel),
                         static_cast<std::size_t>(pick(0, n - 1)));
}

namespace detail {
inline int brute_dfs(const ItineraryTask &task, const TravelMatrix &d, std::size_t loc, int t,
                     std::uint64_t visited) {
    const int S = task.total_slots();
    int best = 0;
    for (std::size_t p = 0; p < task.size(); ++p) {
        if ((visited >> p) & 1U)
            continue;
        int arrive = t + (p == loc ? 0 : d(loc, p));
        int done = arrive + task.poi(p).visit_slots;
        if (done > S)
            continue;
        best = std::max(best, task.poi(p).utility +
                                  brute_dfs(task, d, p, done, visited | (std::uint64_t{1} << p)));
    }
    return best;
}
} // namespace detail

/// Third opinion: plain enumeration of visit orders with shortest-path hops.
inline int brute_force_utility(const ItineraryTask &task) {
    TravelMatrix d = shortest_travel(task);
    return detail::brute_dfs(task, d, task.start_poi(), 0, 0);
}

inline int duality_constant(const ItineraryTask &task) {
    return static_cast<int>(task.size()) * (task.max_utility() + 1);
}

} // namespace trippal::testing
