#include "support.hpp"

#include "trippal/planner.hpp"
#include "trippal/validator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace trippal;
using namespace trippal::testing;

namespace {

ItineraryTask london() {
    std::vector<Poi> pois = {{"tower_of_london", "Tower of London", 9, 8},
                             {"british_museum", "British Museum", 10, 12}};
    TravelMatrix travel(2);
    travel(0, 1) = 2;
    travel(1, 0) = 3;
    return ItineraryTask("London", TimeGrid(), 10, pois, travel);
}

ItineraryTask toronto() {
    std::vector<Poi> pois = {{"cn_tower", "CN Tower", 9, 6}, {"toronto_islands", "Toronto Islands", 7, 12}};
    TravelMatrix travel(2);
    travel(0, 1) = 2;
    travel(1, 0) = 2;
    return ItineraryTask("Toronto", TimeGrid(), 10, pois, travel);
}

} // namespace

TEST_CASE("empty plan is valid") {
    CHECK(validate(Plan{}, paris_task()).valid());
}

TEST_CASE("Tower of London visited for 1.5 hours of 2") {
    Plan plan;
    plan.steps = {PlanStep::visit("tower_of_london", 0, 6)};
    ValidationReport report = validate(plan, london());
    REQUIRE(report.violations.size() == 1);
    const Violation &v = report.violations[0];
    CHECK(v.category == ViolationCategory::VisitTooShort);
    CHECK(v.required_slots == 8);
    CHECK(v.actual_slots == 6);
    auto ratios = violation_ratio(report);
    REQUIRE(ratios.size() == 1);
    CHECK(ratios[0].value() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("Toronto Islands visited for 15 minutes of 3 hours") {
    Plan plan;
    plan.steps = {PlanStep::visit("cn_tower", 0, 6), PlanStep::move("cn_tower", "toronto_islands", 6, 8),
                  PlanStep::visit("toronto_islands", 8, 9)};
    ValidationReport report = validate(plan, toronto());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].category == ViolationCategory::VisitTooShort);
    CHECK(report.violations[0].step_index == 2);
    CHECK(report.violations[0].required_slots == 12);
    CHECK(report.violations[0].actual_slots == 1);
    auto ratios = violation_ratio(report);
    REQUIRE(ratios.size() == 1);
    CHECK(std::abs(ratios[0].value() - 1.0 / 12.0) < 1e-9);
    CHECK(std::abs(ratios[0].value() - 0.0833) < 1e-4);
}

TEST_CASE("longer visits than required are fine") {
    Plan plan;
    plan.steps = {PlanStep::visit("tower_of_london", 0, 10), PlanStep::move("tower_of_london", "british_museum", 10, 14),
                  PlanStep::visit("british_museum", 14, 26)};
    CHECK(validate(plan, london()).valid());
    CHECK(violation_ratio(validate(plan, london())).empty());
}

TEST_CASE("each category") {
    ItineraryTask task = london();
    auto only = [&](const Plan &plan) {
        ValidationReport r = validate(plan, task);
        REQUIRE(r.violations.size() >= 1);
        return r;
    };
    Plan travel_short;
    travel_short.steps = {PlanStep::move("tower_of_london", "british_museum", 0, 1)};
    CHECK(only(travel_short).count(ViolationCategory::TravelTooShort) == 1);
    CHECK(validate(travel_short, task).violations[0].required_slots == 2);

    Plan horizon;
    horizon.steps = {PlanStep::visit("tower_of_london", 0, 8), PlanStep::move("tower_of_london", "british_museum", 8, 10),
                     PlanStep::visit("british_museum", 10, 40)};
    ValidationReport hr = only(horizon);
    CHECK(hr.violations.size() == 1);
    CHECK(hr.violations[0].category == ViolationCategory::HorizonExceeded);
    CHECK(hr.violations[0].step_index == 2);

    Plan dup;
    dup.steps = {PlanStep::visit("tower_of_london", 0, 8), PlanStep::visit("tower_of_london", 8, 16)};
    CHECK(only(dup).count(ViolationCategory::DuplicateVisit) == 1);

    Plan unknown;
    unknown.steps = {PlanStep::visit("big_ben", 0, 4)};
    CHECK(only(unknown).count(ViolationCategory::UnknownPoi) == 1);

    Plan teleport;
    teleport.steps = {PlanStep::visit("tower_of_london", 0, 8), PlanStep::visit("british_museum", 8, 20)};
    CHECK(only(teleport).count(ViolationCategory::BadChaining) == 1);

    Plan self;
    self.steps = {PlanStep::move("tower_of_london", "tower_of_london", 0, 1)};
    CHECK(only(self).count(ViolationCategory::BadChaining) == 1);

    Plan gap;
    gap.steps = {PlanStep::visit("tower_of_london", 2, 10)};
    CHECK(only(gap).count(ViolationCategory::BadChaining) == 1);

    Plan backwards;
    backwards.steps = {PlanStep::visit("tower_of_london", 0, 8), PlanStep::move("tower_of_london", "british_museum", 8, 8)};
    ValidationReport br = only(backwards);
    CHECK(br.count(ViolationCategory::TravelTooShort) == 1);
    PlanStep reversed = PlanStep::visit("british_museum", 8, 5);
    backwards.steps.push_back(reversed);
    CHECK(validate(backwards, task).count(ViolationCategory::NotApplicable) == 1);

    Plan wrong_start;
    wrong_start.steps = {PlanStep::visit("british_museum", 0, 12)};
    ValidationReport wr = only(wrong_start);
    CHECK(wr.wrong_start);
    CHECK(wr.count(ViolationCategory::BadChaining) == 1);
}

TEST_CASE("trailing move is accepted") {
    Plan plan;
    plan.steps = {PlanStep::visit("tower_of_london", 0, 8), PlanStep::move("tower_of_london", "british_museum", 8, 10)};
    CHECK(validate(plan, london()).valid());
}

TEST_CASE("solver plans are valid; shrinking one visit flips exactly one VisitTooShort") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        ItineraryTask task = synthetic_task(seed, 8, 8);
        CompiledTask compiled(task);
        Plan plan = solve(compiled);
        REQUIRE(validate(plan, task).valid());
        for (std::size_t i = 0; i < plan.steps.size(); ++i) {
            if (plan.steps[i].kind != StepKind::Visit)
                continue;
            Plan shorter = plan;
            int cut = 1;
            shorter.steps[i].end_slot -= cut;
            for (std::size_t j = i + 1; j < shorter.steps.size(); ++j) {
                shorter.steps[j].start_slot -= cut;
                shorter.steps[j].end_slot -= cut;
            }
            ValidationReport r = validate(shorter, task);
            CHECK(r.violations.size() == 1);
            CHECK(r.count(ViolationCategory::VisitTooShort) == 1);
        }
    }
}

TEST_CASE("shuffled multi-visit plans break chaining") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        ItineraryTask task = synthetic_task(seed, 8, 8);
        CompiledTask compiled(task);
        Plan plan = solve(compiled);
        if (plan.visited().size() < 2)
            continue;
        Plan shuffled = plan;
        while (shuffled.steps == plan.steps)
            std::shuffle(shuffled.steps.begin(), shuffled.steps.end(), rng);
        CHECK(validate(shuffled, task).count(ViolationCategory::BadChaining) >= 1);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("k injected faults give at least k violations") {
    std::mt19937_64 rng(19);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        ItineraryTask task = synthetic_task(seed, 8, 8);
        CompiledTask compiled(task);
        Plan plan = solve(compiled);
        std::vector<std::size_t> visits;
        for (std::size_t i = 0; i < plan.steps.size(); ++i)
            if (plan.steps[i].kind == StepKind::Visit && plan.steps[i].duration() > 1)
                visits.push_back(i);
        std::shuffle(visits.begin(), visits.end(), rng);
        std::size_t k = visits.empty() ? 0 : 1 + rng() % visits.size();
        Plan faulty = plan;
        for (std::size_t f = 0; f < k; ++f) {
            std::size_t i = visits[f];
            faulty.steps[i].end_slot -= 1;
            for (std::size_t j = i + 1; j < faulty.steps.size(); ++j) {
                faulty.steps[j].start_slot -= 1;
                faulty.steps[j].end_slot -= 1;
            }
        }
        CHECK(validate(faulty, task).violations.size() >= k);
    }
}

TEST_CASE("format_report lists every violation") {
    Plan plan;
    plan.steps = {PlanStep::visit("tower_of_london", 0, 6)};
    std::string text = format_report(validate(plan, london()));
    CHECK(text.find("INVALID (1 violation)") == 0);
    CHECK(text.find("VisitTooShort") != std::string::npos);
    CHECK(text.find("required=8 actual=6") != std::string::npos);
    CHECK(format_report(validate(Plan{}, london())) == "VALID (0 violations)\n");
}
