#include "support.hpp"

#include "trippal/compile.hpp"
#include "trippal/errors.hpp"

#include <doctest.h>

using namespace trippal;
using namespace trippal::testing;

TEST_CASE("visit and skip costs") {
    std::vector<Poi> pois = {{"top", "Top", 10, 1}, {"low", "Low", 1, 1}};
    TravelMatrix travel(2);
    travel(0, 1) = travel(1, 0) = 1;
    ItineraryTask task("x", TimeGrid(), 10, pois, travel);
    CompiledTask compiled(task);
    CHECK(compiled.visit_cost(0) == 1);
    CHECK(compiled.visit_cost(1) == 10);
    CHECK(compiled.skip_cost(0) == 11);
    CHECK(compiled.move_cost() == 0);

    ItineraryTask paris = paris_task();
    CompiledTask cp(paris);
    CHECK(cp.visit_cost(*paris.index_of("centre_pompidou")) == 4);
    for (std::size_t p = 0; p < paris.size(); ++p) {
        CHECK(cp.visit_cost(p) >= 1);
        CHECK(cp.visit_cost(p) <= paris.max_utility());
        CHECK(cp.skip_cost(p) > cp.visit_cost(p));
    }
}

TEST_CASE("sum_table is addition bounded by the horizon") {
    for (int hours : {1, 3, 6}) {
        ItineraryTask task = synthetic_task(1, 3, hours);
        CompiledTask compiled(task);
        const int S = compiled.total_slots();
        for (int t0 = 0; t0 <= S + 2; ++t0) {
            for (int d = 0; d <= S + 2; ++d) {
                auto tf = compiled.sum_table(t0, d);
                if (t0 + d <= S)
                    CHECK(tf == t0 + d);
                else
                    CHECK_FALSE(tf.has_value());
            }
        }
        CHECK_FALSE(compiled.sum_table(-1, 1).has_value());
    }
}

TEST_CASE("total_cost") {
    ItineraryTask paris = paris_task();
    CompiledTask compiled(paris);
    Plan empty;
    CHECK(total_cost(empty, compiled) == 60);
    CHECK(compiled.empty_plan_cost() == 60);

    Plan all;
    for (const Poi &poi : paris.pois())
        all.steps.push_back(PlanStep::visit(poi.id, 0, 1));
    CHECK(total_cost(all, compiled) == 21);

    Plan unknown;
    unknown.steps = {PlanStep::visit("nowhere", 0, 1)};
    CHECK_THROWS_AS(total_cost(unknown, compiled), Error);

    CompiledTask costly(paris, 2);
    Plan hop;
    hop.steps = {PlanStep::move("eiffel_tower", "louvre_museum", 0, 1),
                 PlanStep::visit("louvre_museum", 1, 13)};
    CHECK(total_cost(hop, costly) == 2 + 1 + 9 * 6);
}

TEST_CASE("duality identity on arbitrary visit subsets") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ItineraryTask task = synthetic_task(seed, 8, 8);
        CompiledTask compiled(task);
        for (std::uint64_t mask = 0; mask < (1U << 8); mask += 7) {
            Plan plan;
            for (std::size_t p = 0; p < task.size(); ++p)
                if ((mask >> p) & 1U)
                    plan.steps.push_back(PlanStep::visit(task.poi(p).id, 0, 1));
            CHECK(total_cost(plan, compiled) + plan_utility(plan, task) == duality_constant(task));
        }
    }
}
