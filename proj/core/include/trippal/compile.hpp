#pragma once

#include "trippal/model.hpp"

#include <optional>
#include <vector>

namespace trippal {

/// Cost-space view of a task: reversed utilities, skip penalties, slot arithmetic.
///
/// Visiting p costs max_utility - utility(p) + 1; leaving p unvisited costs
/// max_utility + 1. With zero move cost every plan satisfies
///     total_cost + plan_utility == N * (max_utility + 1)
/// so minimizing cost and maximizing utility select the same plans.
class CompiledTask {
public:
    explicit CompiledTask(const ItineraryTask &task, int move_cost = 0);
    explicit CompiledTask(const ItineraryTask &&, int = 0) = delete;

    const ItineraryTask &task() const { return *task_; }
    std::size_t size() const { return visit_cost_.size(); }
    int total_slots() const { return total_slots_; }

    int visit_cost(std::size_t poi) const { return visit_cost_[poi]; }
    int skip_cost(std::size_t poi) const { return skip_cost_[poi]; }
    int move_cost() const { return move_cost_; }

    /// t0 + delta when it stays within the horizon.
    std::optional<int> sum_table(int t0, int delta) const;

    /// N * (max_utility + 1): the cost of visiting nothing.
    int empty_plan_cost() const;

private:
    const ItineraryTask *task_;
    std::vector<int> visit_cost_;
    std::vector<int> skip_cost_;
    int move_cost_;
    int total_slots_;
};

/// The task must outlive the returned value.
CompiledTask compile(const ItineraryTask &task);
CompiledTask compile(const ItineraryTask &&) = delete;

/// Visit costs of visited POIs + skip costs of the rest + move_cost per Move.
/// Throws Error(UnknownPoi).
int total_cost(const Plan &plan, const CompiledTask &compiled);

} // namespace trippal
