#include "trippal/planner.hpp"

#include "trippal/errors.hpp"
#include "trippal/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <unordered_map>
#include <vector>

namespace trippal {

namespace {

constexpr std::size_t kMaxPois = 48;
constexpr int kMaxSlots = 1023;
constexpr int kLocShift = 48;
constexpr int kTimeShift = 54;
constexpr std::uint64_t kVisitedMask = (std::uint64_t{1} << kLocShift) - 1;
constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

std::uint64_t pack(const SearchState &s) {
    return s.visited | (std::uint64_t{s.loc} << kLocShift) |
           (static_cast<std::uint64_t>(s.time_slot) << kTimeShift);
}

SearchState unpack(std::uint64_t key) {
    return SearchState{static_cast<std::size_t>((key >> kLocShift) & 0x3F),
                       static_cast<int>(key >> kTimeShift), key & kVisitedMask};
}

struct Node {
    std::uint64_t key;
    std::uint32_t parent;
    int g;
};

struct OpenEntry {
    int f;
    int time;
    std::uint64_t order;
    std::uint32_t node;
    int g;
};

struct OpenCompare {
    bool operator()(const OpenEntry &a, const OpenEntry &b) const {
        if (a.f != b.f)
            return a.f > b.f;
        if (a.time != b.time)
            return a.time > b.time;
        return a.order > b.order;
    }
};

class Search {
public:
    Search(const CompiledTask &compiled, const SolveOptions &options)
        : compiled_(compiled), task_(compiled.task()), options_(options), n_(task_.size()) {
        if (n_ > kMaxPois)
            throw Error(ErrorCode::TaskTooLarge,
                        std::to_string(n_) + " POIs exceed the planner limit of " +
                            std::to_string(kMaxPois));
        if (task_.total_slots() > kMaxSlots)
            throw Error(ErrorCode::TaskTooLarge, "horizon exceeds " + std::to_string(kMaxSlots) +
                                                     " slots");
        if (options_.heuristic == HeuristicKind::Reachability)
            strong_.emplace(compiled_);

        // Rank of each POI id in lexicographic order, for visit-sequence tie-breaks.
        std::vector<std::size_t> sorted(n_);
        for (std::size_t i = 0; i < n_; ++i)
            sorted[i] = i;
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            return task_.poi(a).id < task_.poi(b).id;
        });
        rank_.resize(n_);
        for (std::size_t r = 0; r < n_; ++r)
            rank_[sorted[r]] = static_cast<int>(r);
    }

    SolveResult run() {
        SearchState root{task_.start_poi(), 0, 0};
        add_or_improve(root, kNoParent, 0);

        while (!open_.empty()) {
            OpenEntry entry = open_.top();
            if (best_goal_ && entry.f > best_goal_cost_)
                break;
            open_.pop();
            const Node &node = nodes_[entry.node];
            if (entry.g != node.g || entry.order != latest_push_[entry.node])
                continue;
            expand(entry.node);
        }
        return finish();
    }

private:
    int evaluate(const SearchState &s) const {
        return strong_ ? (*strong_)(s) : heuristic(s, compiled_);
    }

    // Path key of a node: visit sequence as POI ranks, then every step
    // (move target 2r, visit 2r+1) as a secondary order. Root first.
    void path_key(std::uint32_t id, std::vector<int> &visits, std::vector<int> &trail) const {
        visits.clear();
        trail.clear();
        while (id != kNoParent) {
            const Node &node = nodes_[id];
            if (node.parent != kNoParent) {
                SearchState here = unpack(node.key);
                SearchState before = unpack(nodes_[node.parent].key);
                bool visit = here.loc == before.loc;
                if (visit)
                    visits.push_back(rank_[here.loc]);
                trail.push_back(2 * rank_[here.loc] + (visit ? 1 : 0));
            }
            id = node.parent;
        }
        std::reverse(visits.begin(), visits.end());
        std::reverse(trail.begin(), trail.end());
    }

    // Key of the path that reaches `state` from `parent`.
    void extended_key(std::uint32_t parent, const SearchState &state, std::vector<int> &visits,
                      std::vector<int> &trail) const {
        path_key(parent, visits, trail);
        bool visit = unpack(nodes_[parent].key).loc == state.loc;
        if (visit)
            visits.push_back(rank_[state.loc]);
        trail.push_back(2 * rank_[state.loc] + (visit ? 1 : 0));
    }

    bool smaller_key() const {
        if (seq_b_ != seq_a_)
            return seq_b_ < seq_a_;
        return trail_b_ < trail_a_;
    }

    // True when reaching `state` through `parent` gives a smaller path key
    // than the node's current path.
    bool better_sequence(std::uint32_t existing, std::uint32_t parent, const SearchState &state) {
        extended_key(nodes_[existing].parent, state, seq_a_, trail_a_);
        extended_key(parent, state, seq_b_, trail_b_);
        return smaller_key();
    }

    void push(std::uint32_t id, const SearchState &state) {
        const Node &node = nodes_[id];
        std::uint64_t order = push_counter_++;
        latest_push_[id] = order;
        open_.push(OpenEntry{node.g + evaluate(state), state.time_slot, order, id, node.g});
    }

    void add_or_improve(const SearchState &state, std::uint32_t parent, int g) {
        ++stats_.generated;
        std::uint64_t key = pack(state);
        auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
        if (inserted) {
            if (nodes_.size() >= options_.node_limit)
                throw Error(ErrorCode::ResourceExhausted,
                            "search stored more than " + std::to_string(options_.node_limit) +
                                " states");
            nodes_.push_back(Node{key, parent, g});
            latest_push_.push_back(0);
            expanded_.push_back(false);
            push(it->second, state);
            return;
        }
        std::uint32_t id = it->second;
        Node &node = nodes_[id];
        bool improves = g < node.g || (g == node.g && parent != node.parent &&
                                       better_sequence(id, parent, state));
        if (!improves)
            return;
        node.g = g;
        node.parent = parent;
        if (expanded_[id])
            ++stats_.reopened;
        push(id, state);
    }

    void consider_goal(std::uint32_t id, const SearchState &state, int g) {
        int cost = g;
        for (std::size_t p = 0; p < n_; ++p) {
            if (!state.is_visited(p))
                cost += compiled_.skip_cost(p);
        }
        bool better = !best_goal_ || cost < best_goal_cost_;
        if (!better && cost == best_goal_cost_) {
            int best_time = unpack(nodes_[*best_goal_].key).time_slot;
            if (state.time_slot != best_time) {
                better = state.time_slot < best_time;
            } else if (id != *best_goal_) {
                path_key(id, seq_b_, trail_b_);
                path_key(*best_goal_, seq_a_, trail_a_);
                better = smaller_key();
            }
        }
        if (better) {
            best_goal_ = id;
            best_goal_cost_ = cost;
        }
    }

    void expand(std::uint32_t id) {
        ++stats_.expanded;
        expanded_[id] = true;
        const SearchState state = unpack(nodes_[id].key);
        const int g = nodes_[id].g;
        const int horizon = task_.total_slots();

        // Ending is allowed anywhere; the move that led here is useless in that
        // case and the parent state's goal dominates it on completion time.
        consider_goal(id, state, g);

        if (!state.is_visited(state.loc)) {
            int end = state.time_slot + task_.poi(state.loc).visit_slots;
            if (end <= horizon) {
                SearchState next{state.loc, end, state.visited | (std::uint64_t{1} << state.loc)};
                add_or_improve(next, id, g + compiled_.visit_cost(state.loc));
            }
        }

        int shortest_visit = std::numeric_limits<int>::max();
        for (std::size_t p = 0; p < n_; ++p) {
            if (!state.is_visited(p))
                shortest_visit = std::min(shortest_visit, task_.poi(p).visit_slots);
        }
        if (shortest_visit == std::numeric_limits<int>::max())
            return;
        for (std::size_t to = 0; to < n_; ++to) {
            if (to == state.loc)
                continue;
            int arrive = state.time_slot + task_.travel(state.loc, to);
            // A move is only worth making if some visit can still follow it.
            if (arrive + shortest_visit > horizon)
                continue;
            add_or_improve(SearchState{to, arrive, state.visited}, id, g + compiled_.move_cost());
        }
    }

    SolveResult finish() {
        SolveResult result;
        result.cost = best_goal_cost_;
        std::vector<std::uint32_t> path;
        for (std::uint32_t id = *best_goal_; id != kNoParent; id = nodes_[id].parent)
            path.push_back(id);
        std::reverse(path.begin(), path.end());
        for (std::size_t i = 1; i < path.size(); ++i) {
            SearchState before = unpack(nodes_[path[i - 1]].key);
            SearchState after = unpack(nodes_[path[i]].key);
            if (before.loc == after.loc) {
                result.plan.steps.push_back(
                    PlanStep::visit(task_.poi(after.loc).id, before.time_slot, after.time_slot));
            } else {
                result.plan.steps.push_back(PlanStep::move(task_.poi(before.loc).id,
                                                           task_.poi(after.loc).id,
                                                           before.time_slot, after.time_slot));
            }
        }
        while (!result.plan.steps.empty() && result.plan.steps.back().kind == StepKind::Move)
            result.plan.steps.pop_back();
        result.plan.task_ref = task_.city();
        stats_.stored = nodes_.size();
        result.stats = stats_;
        return result;
    }

    const CompiledTask &compiled_;
    const ItineraryTask &task_;
    SolveOptions options_;
    std::size_t n_;
    std::optional<ReachabilityHeuristic> strong_;
    std::vector<int> rank_;

    std::vector<Node> nodes_;
    std::vector<std::uint64_t> latest_push_;
    std::vector<bool> expanded_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenCompare> open_;
    std::uint64_t push_counter_ = 0;

    std::optional<std::uint32_t> best_goal_;
    int best_goal_cost_ = 0;
    SolveStats stats_;
    std::vector<int> seq_a_;
    std::vector<int> seq_b_;
    std::vector<int> trail_a_;
    std::vector<int> trail_b_;
};

} // namespace

int heuristic(const SearchState &state, const CompiledTask &compiled) {
    int h = 0;
    for (std::size_t p = 0; p < compiled.size(); ++p) {
        if (!state.is_visited(p))
            h += compiled.visit_cost(p);
    }
    return h;
}

ReachabilityHeuristic::ReachabilityHeuristic(const CompiledTask &compiled)
    : compiled_(&compiled), shortest_(shortest_travel(compiled.task())) {
}

int ReachabilityHeuristic::operator()(const SearchState &state) const {
    const ItineraryTask &task = compiled_->task();
    int remaining = compiled_->total_slots() - state.time_slot;
    int h = 0;
    for (std::size_t p = 0; p < compiled_->size(); ++p) {
        if (state.is_visited(p))
            continue;
        bool fits = shortest_(state.loc, p) + task.poi(p).visit_slots <= remaining;
        h += fits ? compiled_->visit_cost(p) : compiled_->skip_cost(p);
    }
    return h;
}

int heuristic_strong(const SearchState &state, const CompiledTask &compiled) {
    return ReachabilityHeuristic(compiled)(state);
}

SolveResult solve_with_stats(const CompiledTask &compiled, const SolveOptions &options) {
    return Search(compiled, options).run();
}

Plan solve(const CompiledTask &compiled, const SolveOptions &options) {
    return solve_with_stats(compiled, options).plan;
}

} // namespace trippal
