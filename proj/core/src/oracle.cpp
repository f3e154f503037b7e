#include "trippal/oracle.hpp"

#include "trippal/errors.hpp"

#include <limits>
#include <vector>

namespace trippal {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

struct ShortestPaths {
    TravelMatrix dist;
    std::vector<std::size_t> next;  // next hop on a shortest route, row-major
};

ShortestPaths all_pairs(const ItineraryTask &task) {
    std::size_t n = task.size();
    ShortestPaths sp{task.travel_slots(), std::vector<std::size_t>(n * n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            sp.next[i * n + j] = j;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (sp.dist(i, k) + sp.dist(k, j) < sp.dist(i, j)) {
                    sp.dist(i, j) = sp.dist(i, k) + sp.dist(k, j);
                    sp.next[i * n + j] = sp.next[i * n + k];
                }
            }
        }
    }
    return sp;
}

void append_route(Plan &plan, const ItineraryTask &task, const ShortestPaths &sp,
                  std::size_t from, std::size_t to, int &clock) {
    std::size_t n = task.size();
    while (from != to) {
        std::size_t hop = sp.next[from * n + to];
        int arrive = clock + task.travel(from, hop);
        plan.steps.push_back(PlanStep::move(task.poi(from).id, task.poi(hop).id, clock, arrive));
        clock = arrive;
        from = hop;
    }
}

} // namespace

TravelMatrix shortest_travel(const ItineraryTask &task) {
    return all_pairs(task).dist;
}

OracleResult oracle_best_from(const ItineraryTask &task, std::size_t loc, int start_slot,
                              std::uint64_t visited) {
    std::vector<std::size_t> candidates;
    for (std::size_t p = 0; p < task.size(); ++p) {
        if (!((visited >> p) & 1U))
            candidates.push_back(p);
    }
    if (candidates.size() > kOracleMaxPois)
        throw Error(ErrorCode::OracleTooLarge,
                    std::to_string(candidates.size()) + " open POIs exceed the oracle limit of " +
                        std::to_string(kOracleMaxPois));

    const ShortestPaths sp = all_pairs(task);
    const int horizon = task.total_slots();
    const std::size_t k = candidates.size();
    const std::size_t masks = std::size_t{1} << k;

    // finish[mask * k + last]: earliest slot at which every candidate in mask has
    // been visited, ending with a visit to candidates[last].
    std::vector<int> finish(masks * k, kUnreachable);
    std::vector<int> previous(masks * k, -1);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t poi = candidates[i];
        int end = start_slot + sp.dist(loc, poi) + task.poi(poi).visit_slots;
        if (end <= horizon)
            finish[(std::size_t{1} << i) * k + i] = end;
    }

    OracleResult best;
    best.end_slot = start_slot;
    std::size_t best_mask = 0;
    std::size_t best_last = 0;
    for (std::size_t mask = 1; mask < masks; ++mask) {
        int utility = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if ((mask >> i) & 1U)
                utility += task.poi(candidates[i]).utility;
        }
        for (std::size_t last = 0; last < k; ++last) {
            int at = finish[mask * k + last];
            if (at == kUnreachable)
                continue;
            if (utility > best.utility || (utility == best.utility && at < best.end_slot)) {
                best.utility = utility;
                best.end_slot = at;
                best_mask = mask;
                best_last = last;
            }
            for (std::size_t next = 0; next < k; ++next) {
                if ((mask >> next) & 1U)
                    continue;
                std::size_t poi = candidates[next];
                int end = at + sp.dist(candidates[last], poi) + task.poi(poi).visit_slots;
                std::size_t grown = mask | (std::size_t{1} << next);
                if (end <= horizon && end < finish[grown * k + next]) {
                    finish[grown * k + next] = end;
                    previous[grown * k + next] = static_cast<int>(last);
                }
            }
        }
    }

    if (best_mask == 0)
        return best;

    std::vector<std::size_t> order;
    for (std::size_t mask = best_mask, last = best_last;;) {
        order.push_back(candidates[last]);
        int prior = previous[mask * k + last];
        mask &= ~(std::size_t{1} << last);
        if (prior < 0)
            break;
        last = static_cast<std::size_t>(prior);
    }

    int clock = start_slot;
    std::size_t here = loc;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        append_route(best.witness, task, sp, here, *it, clock);
        int end = clock + task.poi(*it).visit_slots;
        best.witness.steps.push_back(PlanStep::visit(task.poi(*it).id, clock, end));
        clock = end;
        here = *it;
    }
    return best;
}

OracleResult oracle_solve(const ItineraryTask &task) {
    if (task.size() > kOracleMaxPois)
        throw Error(ErrorCode::OracleTooLarge,
                    std::to_string(task.size()) + " POIs exceed the oracle limit of " +
                        std::to_string(kOracleMaxPois));
    OracleResult result = oracle_best_from(task, task.start_poi(), 0, 0);
    result.witness.task_ref = task.city();
    return result;
}

} // namespace trippal
