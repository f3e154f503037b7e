#include "trippal/compile.hpp"

#include "trippal/errors.hpp"

namespace trippal {

CompiledTask::CompiledTask(const ItineraryTask &task, int move_cost)
    : task_(&task), move_cost_(move_cost), total_slots_(task.total_slots()) {
    visit_cost_.reserve(task.size());
    skip_cost_.reserve(task.size());
    for (const Poi &poi : task.pois()) {
        visit_cost_.push_back(task.max_utility() - poi.utility + 1);
        skip_cost_.push_back(task.max_utility() + 1);
    }
}

std::optional<int> CompiledTask::sum_table(int t0, int delta) const {
    if (t0 < 0 || delta < 0 || t0 + delta > total_slots_)
        return std::nullopt;
    return t0 + delta;
}

int CompiledTask::empty_plan_cost() const {
    return static_cast<int>(size()) * (task_->max_utility() + 1);
}

CompiledTask compile(const ItineraryTask &task) {
    return CompiledTask(task);
}

int total_cost(const Plan &plan, const CompiledTask &compiled) {
    const ItineraryTask &task = compiled.task();
    std::vector<bool> visited(task.size(), false);
    for (const std::string &id : plan.visited()) {
        auto index = task.index_of(id);
        if (!index)
            throw Error(ErrorCode::UnknownPoi, "plan visits unknown POI '" + id + "'");
        visited[*index] = true;
    }
    int cost = 0;
    for (std::size_t p = 0; p < task.size(); ++p)
        cost += visited[p] ? compiled.visit_cost(p) : compiled.skip_cost(p);
    return cost + compiled.move_cost() * static_cast<int>(plan.move_count());
}

} // namespace trippal
