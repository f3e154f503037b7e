#pragma once

#include "trippal/model.hpp"

#include <cstdint>

namespace trippal {

inline constexpr std::size_t kOracleMaxPois = 16;

struct OracleResult {
    int utility = 0;
    int end_slot = 0;
    Plan witness;
};

/// All-pairs shortest travel times (Floyd-Warshall over the raw matrix).
TravelMatrix shortest_travel(const ItineraryTask &task);

/// Held-Karp style subset DP: for every (subset, last POI) keep the earliest
/// completion slot, starting at start_poi at slot 0. The witness expands each
/// hop into the shortest chain of Move steps.
/// Throws Error(OracleTooLarge) when the task has more than kOracleMaxPois POIs.
OracleResult oracle_solve(const ItineraryTask &task);

/// Best additional utility from an arbitrary point of a plan: standing at
/// `loc` at `start_slot` with the POIs in `visited` already done.
/// Throws Error(OracleTooLarge) when more than kOracleMaxPois POIs remain.
OracleResult oracle_best_from(const ItineraryTask &task, std::size_t loc, int start_slot,
                              std::uint64_t visited);

} // namespace trippal
