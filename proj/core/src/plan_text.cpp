#include "trippal/plan_text.hpp"

#include "trippal/errors.hpp"
#include "trippal/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace trippal {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    for (char &c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view text) {
    auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && space(text.front()))
        text.remove_prefix(1);
    while (!text.empty() && space(text.back()))
        text.remove_suffix(1);
    return text;
}

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i > start)
            tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

std::optional<int> parse_int(std::string_view text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}

} // namespace

std::string render_plan_native(const Plan &plan, const CompiledTask &compiled) {
    const ItineraryTask &task = compiled.task();
    std::ostringstream out;
    for (const PlanStep &step : plan.steps) {
        if (step.kind == StepKind::Visit) {
            out << "(visit " << pddl_location_name(step.poi) << " " << pddl_time_name(step.start_slot)
                << " " << pddl_time_name(step.duration()) << " " << pddl_time_name(step.end_slot)
                << ")\n";
        } else {
            out << "(move " << pddl_location_name(step.poi_from) << " "
                << pddl_location_name(step.poi) << " " << pddl_time_name(step.start_slot) << " "
                << pddl_time_name(step.duration()) << " " << pddl_time_name(step.end_slot) << ")\n";
        }
    }
    out << "(end_mode)\n";
    std::set<std::string> visited = plan.visited();
    for (const Poi &poi : task.pois()) {
        if (!visited.contains(poi.id))
            out << "(no_visit " << pddl_location_name(poi.id) << ")\n";
    }
    out << "; cost = " << total_cost(plan, compiled) << " (general cost)\n";
    return out.str();
}

Plan parse_plan_native(std::string_view text, const ItineraryTask &task) {
    std::map<std::string, std::string> location_ids;
    for (const Poi &poi : task.pois())
        location_ids.emplace(pddl_location_name(poi.id), poi.id);
    auto location = [&](const std::string &token) {
        auto it = location_ids.find(token);
        return it == location_ids.end() ? token : it->second;
    };

    Plan plan;
    plan.task_ref = task.city();
    bool ended = false;
    std::set<std::string> skipped;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (auto comment = line.find(';'); comment != std::string_view::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() != '(' || line.back() != ')' ||
            std::count(line.begin(), line.end(), '(') != 1 ||
            std::count(line.begin(), line.end(), ')') != 1)
            throw ParseError("expected one parenthesized action", line_no);

        std::vector<std::string> tokens = split_ws(lower(line.substr(1, line.size() - 2)));
        if (tokens.empty())
            throw ParseError("empty action", line_no);

        auto slot = [&](const std::string &token) {
            std::optional<int> value;
            if (token.size() > 1 && token[0] == 't')
                value = parse_int(std::string_view(token).substr(1));
            if (!value || *value < 0 || *value > task.total_slots())
                throw ParseError("unknown slot token '" + token + "'", line_no);
            return *value;
        };
        auto expect_args = [&](std::size_t count) {
            if (tokens.size() != count + 1)
                throw ParseError("'" + tokens[0] + "' takes " + std::to_string(count) + " arguments",
                                 line_no);
        };

        const std::string &action = tokens[0];
        if (action == "visit" || action == "move") {
            if (ended)
                throw ParseError("'" + action + "' after end_mode", line_no);
            bool is_move = action == "move";
            expect_args(is_move ? 5 : 4);
            std::size_t t = is_move ? 3 : 2;
            int start = slot(tokens[t]);
            int delta = slot(tokens[t + 1]);
            int end = slot(tokens[t + 2]);
            if (start + delta != end)
                throw ParseError("time arguments do not add up", line_no);
            plan.steps.push_back(is_move ? PlanStep::move(location(tokens[1]), location(tokens[2]),
                                                          start, end)
                                         : PlanStep::visit(location(tokens[1]), start, end));
        } else if (action == "end_mode") {
            expect_args(0);
            if (ended)
                throw ParseError("end_mode appears twice", line_no);
            ended = true;
        } else if (action == "no_visit") {
            expect_args(1);
            if (!ended)
                throw ParseError("no_visit before end_mode", line_no);
            std::string id = location(tokens[1]);
            if (plan.visited().contains(id))
                throw ParseError("no_visit for visited POI '" + id + "'", line_no);
            if (!skipped.insert(id).second)
                throw ParseError("no_visit repeated for '" + id + "'", line_no);
        } else {
            throw ParseError("unknown action '" + action + "'", line_no);
        }
    }
    return plan;
}

std::optional<std::string> match_poi(std::string_view mention, const ItineraryTask &task) {
    std::string folded;
    try {
        folded = fold_name(mention);
    } catch (const Error &) {
        return std::nullopt;
    }
    if (task.index_of(folded))
        return folded;
    std::optional<std::string> found;
    for (const Poi &poi : task.pois()) {
        if (poi.id.starts_with(folded)) {
            if (found)
                return std::nullopt;
            found = poi.id;
        }
    }
    return found;
}

namespace {

struct ClockReading {
    int minutes;  // minutes since midnight
    bool has_meridiem;
};

std::optional<ClockReading> read_clock(std::vector<std::string> &tokens) {
    if (tokens.empty())
        return std::nullopt;
    std::string meridiem;
    std::string last = lower(tokens.back());
    for (const char *suffix : {"a.m.", "p.m.", "am", "pm"}) {
        std::string_view s(suffix);
        if (last.size() >= s.size() && last.compare(last.size() - s.size(), s.size(), s) == 0) {
            meridiem = std::string(1, s[0]);
            last.resize(last.size() - s.size());
            break;
        }
    }
    if (last.empty() && !meridiem.empty()) {
        tokens.pop_back();
        if (tokens.empty())
            return std::nullopt;
        last = lower(tokens.back());
    }
    auto colon = last.find(':');
    if (colon == std::string::npos)
        return std::nullopt;
    auto hour = parse_int(std::string_view(last).substr(0, colon));
    auto minute = parse_int(std::string_view(last).substr(colon + 1));
    if (!hour || !minute || colon + 3 != last.size() || *hour < 0 || *hour > 24 || *minute < 0 ||
        *minute > 59)
        return std::nullopt;
    int h = *hour;
    if (meridiem == "p" && h < 12)
        h += 12;
    if (meridiem == "a" && h == 12)
        h = 0;
    tokens.pop_back();
    return ClockReading{h * 60 + *minute, !meridiem.empty()};
}

std::string join(const std::vector<std::string> &tokens, std::size_t from, std::size_t to) {
    std::string out;
    for (std::size_t i = from; i < to; ++i)
        out += (out.empty() ? "" : " ") + tokens[i];
    return out;
}

std::string resolve(const std::string &mention, const ItineraryTask &task) {
    if (auto id = match_poi(mention, task))
        return *id;
    try {
        return fold_name(mention);
    } catch (const Error &) {
        return mention;
    }
}

// Floor division that also works for negative numerators.
int floor_div(int a, int b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

} // namespace

LlmPlanParse parse_plan_llm_detailed(std::string_view text, const ItineraryTask &task) {
    const TimeGrid &grid = task.grid();
    const int day_start = grid.day_start().minutes();
    const int slot = grid.slot_minutes();

    LlmPlanParse result;
    result.plan.task_ref = task.city();
    int previous_end = 0;
    bool any_clause = false;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t open = text.find('(', pos);
        if (open == std::string_view::npos)
            break;
        std::size_t close = text.find(')', open + 1);
        if (close == std::string_view::npos)
            break;
        std::size_t nested = text.find('(', open + 1);
        if (nested != std::string_view::npos && nested < close) {
            pos = nested;
            continue;
        }
        std::string_view body = text.substr(open + 1, close - open - 1);
        pos = close + 1;

        std::vector<std::string> tokens = split_ws(body);
        if (tokens.size() < 3)
            continue;
        std::string verb = lower(tokens[0]);
        if (verb != "visit" && verb != "drive" && verb != "move")
            continue;
        auto clock = read_clock(tokens);
        if (!clock)
            continue;

        int minutes = clock->minutes - day_start;
        if (minutes < 0 && !clock->has_meridiem && clock->minutes < 12 * 60)
            minutes += 12 * 60;  // "1:30" in an afternoon plan
        int end = floor_div(2 * minutes + slot, 2 * slot);
        int start = previous_end;
        if (end < start) {
            result.warnings.push_back("clause '" + std::string(body) +
                                      "' ends before the previous activity");
            end = start;
        }

        if (verb == "visit") {
            std::string name = join(tokens, 1, tokens.size());
            if (name.empty())
                continue;
            result.plan.steps.push_back(PlanStep::visit(resolve(name, task), start, end));
        } else {
            auto to = std::find_if(tokens.begin() + 1, tokens.end(),
                                   [](const std::string &t) { return lower(t) == "to"; });
            std::size_t split = static_cast<std::size_t>(to - tokens.begin());
            if (to == tokens.end() || split == 1 || split + 1 >= tokens.size())
                continue;
            result.plan.steps.push_back(PlanStep::move(resolve(join(tokens, 1, split), task),
                                                       resolve(join(tokens, split + 1, tokens.size()), task),
                                                       start, end));
        }
        any_clause = true;
        previous_end = end;
    }
    if (!any_clause)
        throw ParseError("no (visit ...) or (drive ...) clause found");
    return result;
}

Plan parse_plan_llm(std::string_view text, const ItineraryTask &task) {
    return parse_plan_llm_detailed(text, task).plan;
}

} // namespace trippal
