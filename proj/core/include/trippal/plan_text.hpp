#pragma once

#include "trippal/compile.hpp"
#include "trippal/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trippal {

/// Grounded-action plan text, one action per line:
///   (visit <loc> t<start> t<duration> t<end>)
///   (move <from> <to> t<start> t<duration> t<end>)
///   (end_mode)
///   (no_visit <loc>)
/// followed by a `; cost = N (general cost)` comment.
std::string render_plan_native(const Plan &plan, const CompiledTask &compiled);

/// Inverse of render_plan_native. end_mode/no_visit lines are dropped from the
/// steps but must agree with the visited set. Throws ParseError with the line number.
Plan parse_plan_native(std::string_view text, const ItineraryTask &task);

/// Resolves a POI mention to a task id: exact folded match first, then a
/// unique id that starts with the folded mention.
std::optional<std::string> match_poi(std::string_view mention, const ItineraryTask &task);

struct LlmPlanParse {
    Plan plan;
    std::vector<std::string> warnings;
};

/// Clock-time grammar answered by chat models:
///   (visit place_1 9:00) (drive place_1 to place_2 10:00) ...
/// Each time is the end of the activity; the first activity starts at the
/// task's day start. Times snap to the nearest slot (ties round up). Unknown
/// POIs become steps with their folded token so the validator reports them;
/// a time earlier than the previous one yields a zero-length step.
/// Throws ParseError when no clause is found.
LlmPlanParse parse_plan_llm_detailed(std::string_view text, const ItineraryTask &task);
Plan parse_plan_llm(std::string_view text, const ItineraryTask &task);

} // namespace trippal
