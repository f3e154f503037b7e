#include "support.hpp"

#include "trippal/errors.hpp"
#include "trippal/oracle.hpp"
#include "trippal/validator.hpp"

#include <doctest.h>

using namespace trippal;
using namespace trippal::testing;

TEST_CASE("nothing fits") {
    std::vector<Poi> pois = {{"a", "A", 3, 9}, {"b", "B", 2, 10}};
    TravelMatrix travel(2);
    travel(0, 1) = travel(1, 0) = 1;
    ItineraryTask task("x", TimeGrid(15, ClockTime{8, 0}, 2), 5, pois, travel);
    OracleResult result = oracle_solve(task);
    CHECK(result.utility == 0);
    CHECK(result.witness.steps.empty());
}

TEST_CASE("three unit POIs that all fit") {
    std::vector<Poi> pois = {{"a", "A", 1, 1}, {"b", "B", 1, 1}, {"c", "C", 1, 1}};
    TravelMatrix travel(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j)
                travel(i, j) = 1;
    ItineraryTask task("x", TimeGrid(15, ClockTime{8, 0}, 2), 5, pois, travel);
    OracleResult result = oracle_solve(task);
    CHECK(result.utility == 3);
    CHECK(result.witness.visited().size() == 3);
}

TEST_CASE("witness is valid and worth the reported utility") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ItineraryTask task = (seed % 2) ? synthetic_task(seed, 8, 6) : random_slot_task(seed, 7, 2);
        OracleResult result = oracle_solve(task);
        CHECK(validate(result.witness, task).valid());
        CHECK(plan_utility(result.witness, task) == result.utility);
        CHECK(result.witness.end_slot() == result.end_slot);
        CHECK(result.utility == brute_force_utility(task));
    }
}

TEST_CASE("shortest travel never exceeds the direct hop") {
    ItineraryTask paris = paris_task();
    TravelMatrix d = shortest_travel(paris);
    for (std::size_t i = 0; i < paris.size(); ++i)
        for (std::size_t j = 0; j < paris.size(); ++j)
            CHECK(d(i, j) <= paris.travel(i, j));
}

TEST_CASE("size limit") {
    ItineraryTask task = synthetic_task(3, 17, 8);
    try {
        oracle_solve(task);
        FAIL("expected OracleTooLarge");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::OracleTooLarge);
    }
    CHECK_NOTHROW(oracle_solve(synthetic_task(3, 16, 4)));
}
