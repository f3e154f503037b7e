#pragma once

#include "trippal/compile.hpp"
#include "trippal/model.hpp"

#include <cstdint>

namespace trippal {

struct SearchState {
    std::size_t loc = 0;
    int time_slot = 0;
    std::uint64_t visited = 0;  // bit p set when POI p has been visited

    bool is_visited(std::size_t poi) const { return (visited >> poi) & 1U; }

    friend bool operator==(const SearchState &, const SearchState &) = default;
};

enum class HeuristicKind {
    Visits,       // h0: consistent, no reopening needed
    Reachability, // h1: admissible, inconsistent, search reopens states
};

struct SolveOptions {
    HeuristicKind heuristic = HeuristicKind::Visits;
    std::uint64_t node_limit = 50'000'000;
};

struct SolveStats {
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    std::uint64_t stored = 0;
    std::uint64_t reopened = 0;
};

struct SolveResult {
    Plan plan;
    int cost = 0;
    SolveStats stats;
};

/// Sum of visit costs over unvisited POIs.
int heuristic(const SearchState &state, const CompiledTask &compiled);

/// Like heuristic(), but a POI that cannot be reached and visited before the
/// horizon is charged its skip cost. Reachability uses shortest travel times.
class ReachabilityHeuristic {
public:
    explicit ReachabilityHeuristic(const CompiledTask &compiled);
    explicit ReachabilityHeuristic(const CompiledTask &&) = delete;

    int operator()(const SearchState &state) const;

private:
    const CompiledTask *compiled_;
    TravelMatrix shortest_;
};

int heuristic_strong(const SearchState &state, const CompiledTask &compiled);

/// Optimal plan: maximum utility, then earliest completion slot, then the
/// lexicographically smallest sequence of visited POI ids.
/// Throws Error(ResourceExhausted) past options.node_limit stored states and
/// Error(TaskTooLarge) for more than 48 POIs or 1023 slots.
SolveResult solve_with_stats(const CompiledTask &compiled, const SolveOptions &options = {});

Plan solve(const CompiledTask &compiled, const SolveOptions &options = {});

} // namespace trippal
