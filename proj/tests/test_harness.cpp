#include "support.hpp"

#include "trippal/errors.hpp"
#include "trippal/harness.hpp"
#include "trippal/oracle.hpp"
#include "trippal/plan_text.hpp"
#include "trippal/planner.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

#include <unistd.h>

using namespace trippal;
using namespace trippal::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &name) {
        path = fs::temp_directory_path() / ("trippal_" + name + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> csv_lines(const std::string &csv) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t eol = csv.find('\n', pos);
        lines.push_back(csv.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

// Drops the runtime column so rows can be compared across runs.
std::string without_runtime(const std::string &row) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = row.find(',', pos);
        cells.push_back(row.substr(pos, comma - pos));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    cells.erase(cells.begin() + 6);
    std::string out;
    for (const std::string &c : cells)
        out += c + ",";
    return out;
}

} // namespace

TEST_CASE("default cities") {
    auto cities = default_cities();
    CHECK(cities.size() == 20);
    CHECK(std::set<std::string>(cities.begin(), cities.end()).size() == 20);
    std::set<std::string> ids;
    for (const std::string &c : cities)
        ids.insert(fold_name(c));
    CHECK(ids.size() == 20);
}

TEST_CASE("gen_suite") {
    TempDir dir("gen");
    SuiteSpec spec;
    spec.seed = 7;
    auto paths = gen_suite(spec, dir.path, false);
    CHECK(paths.size() == 100);
    std::set<std::string> contents;
    for (const fs::path &p : paths) {
        ItineraryTask task = load_task(p);
        CHECK(task.size() == 10);
        CHECK(task.grid().horizon_hours() == 8);
        contents.insert(read_text_file(p).substr(read_text_file(p).find("\"slot_minutes\"")));
    }
    CHECK(contents.size() == 100);
    CHECK(paths.front().filename() == suite_task_id("Tokyo", 0, 10, 8) + ".json");

    SUBCASE("refuses to overwrite") {
        try {
            gen_suite(spec, dir.path, false);
            FAIL("expected IoError");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::IoError);
        }
    }
    SUBCASE("same seed gives the same bytes") {
        std::string before = read_text_file(paths[17]);
        gen_suite(spec, dir.path, true);
        CHECK(read_text_file(paths[17]) == before);
    }
    SUBCASE("duplicate ids are refused") {
        TempDir other("gen_dup");
        SuiteSpec dup = spec;
        dup.cities = {"Rome", "rome"};
        CHECK_THROWS_AS(gen_suite(dup, other.path, false), Error);
    }
}

TEST_CASE("derived seeds are distinct and stable") {
    std::set<std::uint64_t> seeds;
    for (const std::string &c : default_cities())
        for (int k = 0; k < 5; ++k)
            seeds.insert(derive_seed(1, c, k));
    CHECK(seeds.size() == 100);
    CHECK(derive_seed(1, "Paris", 0) == derive_seed(1, "Paris", 0));
    CHECK(derive_seed(1, "Paris", 0) != derive_seed(2, "Paris", 0));
    CHECK(suite_task_id("Cape Town", 3, 10, 8) == "cape_town_3_n10_h8");
}

TEST_CASE("sweep specs") {
    auto pois = sweep_specs(Sweep::Pois, 1);
    REQUIRE(pois.size() == 6);
    for (std::size_t i = 0; i < pois.size(); ++i) {
        CHECK(pois[i].n_pois == 8 + 2 * static_cast<int>(i));
        CHECK(pois[i].horizon_hours == 8);
    }
    auto hours = sweep_specs(Sweep::Hours, 1);
    REQUIRE(hours.size() == 5);
    for (std::size_t i = 0; i < hours.size(); ++i) {
        CHECK(hours[i].horizon_hours == 6 + static_cast<int>(i));
        CHECK(hours[i].n_pois == 10);
    }
}

TEST_CASE("eval_plan") {
    ItineraryTask paris = paris_task(6);
    CompiledTask compiled(paris);
    HarnessOptions options;

    SUBCASE("solver's own plan") {
        EvalRecord r = eval_plan(paris, "paris", solve(compiled), options);
        CHECK(r.valid);
        CHECK(r.suboptimality == 1.0);
        CHECK(r.reported_utility == r.utility);
    }
    SUBCASE("three top POIs against a higher optimum") {
        Plan plan;
        plan.steps = {PlanStep::visit("eiffel_tower", 0, 8), PlanStep::move("eiffel_tower", "notre_dame_cathedral", 8, 9),
                      PlanStep::visit("notre_dame_cathedral", 9, 13),
                      PlanStep::move("notre_dame_cathedral", "sacr_cur_basilica", 13, 14),
                      PlanStep::visit("sacr_cur_basilica", 14, 18)};
        EvalRecord r = eval_plan(paris, "paris", plan, options);
        int optimum = oracle_solve(paris).utility;
        CHECK(r.valid);
        CHECK(r.utility == 13);
        REQUIRE(r.suboptimality.has_value());
        CHECK(*r.suboptimality == doctest::Approx(static_cast<double>(optimum) / 13));
        CHECK(*r.suboptimality > 1.0);
    }
    SUBCASE("invalid plan reports the placeholder") {
        Plan plan;
        plan.steps = {PlanStep::visit("eiffel_tower", 0, 2)};
        EvalRecord r = eval_plan(paris, "paris", plan, options);
        CHECK_FALSE(r.valid);
        CHECK(r.reported_utility == 21);
        CHECK(r.utility == 5);
        CHECK_FALSE(r.suboptimality.has_value());
        CHECK(r.visit_short == 1);
        options.placeholder_utility = 0;
        CHECK(eval_plan(paris, "paris", plan, options).reported_utility == 0);
    }
    SUBCASE("empty plan") {
        EvalRecord r = eval_plan(paris, "paris", Plan{}, options);
        CHECK(r.valid);
        CHECK(r.utility == 0);
        CHECK_FALSE(r.suboptimality.has_value());
    }
}

TEST_CASE("eval_plan_files turns parse failures into invalid rows") {
    TempDir dir("evalfiles");
    fs::path task = dir.path / "paris.json";
    write_text_file(task, read_text_file(fixture_dir() / "paris.json"));
    write_text_file(dir.path / "bad.plan", "no clauses at all");
    EvalRecord bad = eval_plan_files(task, dir.path / "bad.plan", PlanGrammar::Llm, HarnessOptions{});
    CHECK_FALSE(bad.valid);
    CHECK(bad.error == "ParseError");
    CHECK(bad.reported_utility == 21);

    EvalRecord llm = eval_plan_files(task, data_dir() / "paris_llm_plan.txt", PlanGrammar::Llm, HarnessOptions{});
    CHECK_FALSE(llm.valid);
    CHECK(llm.visit_short == 3);
    CHECK(llm.pois_visited == 4);
    CHECK(llm.reported_utility == 21);
}

TEST_CASE("csv formatting") {
    EvalRecord r;
    r.task_id = "x";
    r.method = Method::External;
    r.valid = false;
    r.utility = 7;
    r.reported_utility = 21;
    r.runtime_seconds = 0.5;
    r.visit_short = 2;
    CHECK(csv_row(r) == "x,external,false,7,21,,0.500000,2,0,0,0");
    r.suboptimality = 1.25;
    CHECK(csv_row(r) == "x,external,false,7,21,1.250000,0.500000,2,0,0,0");
    CHECK(write_csv({}) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("run_suite") {
    SUBCASE("empty suite gives a header-only CSV") {
        TempDir dir("empty");
        SuiteResult result = run_suite(dir.path, HarnessOptions{});
        CHECK(result.records.empty());
        CHECK(write_csv(result.records) == std::string(kCsvHeader) + "\n");
        CHECK_FALSE(result.had_errors);
    }
    SUBCASE("a corrupt task file yields an error row and the rest still runs") {
        TempDir dir("corrupt");
        SuiteSpec spec;
        spec.cities = {"Paris", "Rome"};
        spec.per_city = 2;
        spec.n_pois = 6;
        gen_suite(spec, dir.path, false);
        write_text_file(dir.path / "broken.json", "{ not json");
        SuiteResult result = run_suite(dir.path, HarnessOptions{});
        CHECK(result.records.size() == 5);
        CHECK(result.had_errors);
        std::size_t error_rows = 0;
        for (const EvalRecord &r : result.records) {
            if (!r.error.empty()) {
                ++error_rows;
                CHECK(r.task_id == "broken");
                CHECK_FALSE(r.valid);
            } else {
                CHECK(r.valid);
            }
        }
        CHECK(error_rows == 1);
    }
    SUBCASE("rows are ordered and deterministic, with any number of jobs") {
        TempDir dir("order");
        SuiteSpec spec;
        spec.cities = {"Paris", "Rome", "Zadar, Croatia"};
        spec.per_city = 3;
        spec.n_pois = 7;
        gen_suite(spec, dir.path, false);
        HarnessOptions options;
        options.with_oracle = true;
        SuiteResult one = run_suite(dir.path, options);
        options.jobs = 4;
        SuiteResult four = run_suite(dir.path, options);
        auto a = csv_lines(write_csv(one.records));
        auto b = csv_lines(write_csv(four.records));
        REQUIRE(a.size() == b.size());
        CHECK(a.size() == 1 + 9 * 2);
        for (std::size_t i = 1; i < a.size(); ++i)
            CHECK(without_runtime(a[i]) == without_runtime(b[i]));
        for (std::size_t i = 1; i + 1 < one.records.size(); ++i)
            CHECK(one.records[i - 1].task_id <= one.records[i].task_id);
        for (const EvalRecord &r : one.records) {
            CHECK(r.valid);
            CHECK(r.suboptimality == 1.0);
        }
    }
    SUBCASE("external plans are scored") {
        TempDir dir("external");
        TempDir plans("external_plans");
        write_text_file(dir.path / "paris.json", read_text_file(fixture_dir() / "paris.json"));
        write_text_file(plans.path / "paris.plan", read_text_file(data_dir() / "paris_llm_plan.txt"));
        SuiteResult result = run_suite(dir.path, HarnessOptions{}, plans.path, PlanGrammar::Llm);
        REQUIRE(result.records.size() == 2);
        CHECK(result.records[1].method == Method::External);
        CHECK_FALSE(result.records[1].valid);
        CHECK(result.had_invalid);
        CHECK_FALSE(result.had_errors);
        std::string summary = format_summary(result.summary);
        CHECK(summary.find("optimal") != std::string::npos);
        CHECK(summary.find("external") != std::string::npos);
    }
    SUBCASE("node limit marks the row and the suite continues") {
        TempDir dir("limit");
        SuiteSpec spec;
        spec.cities = {"Paris"};
        spec.per_city = 2;
        gen_suite(spec, dir.path, false);
        HarnessOptions options;
        options.solve.node_limit = 5;
        SuiteResult result = run_suite(dir.path, options);
        REQUIRE(result.records.size() == 2);
        for (const EvalRecord &r : result.records)
            CHECK(r.error == "ResourceExhausted");
        CHECK(result.had_errors);
    }
    SUBCASE("missing directory") {
        CHECK_THROWS_AS(run_suite("/nonexistent/trippal/suite", HarnessOptions{}), Error);
    }
}

TEST_CASE("summary statistics") {
    std::vector<EvalRecord> records(4);
    int utilities[] = {10, 20, 30, 40};
    for (int i = 0; i < 4; ++i) {
        records[static_cast<std::size_t>(i)].method = Method::External;
        records[static_cast<std::size_t>(i)].valid = i < 2;
        records[static_cast<std::size_t>(i)].utility = utilities[i];
        records[static_cast<std::size_t>(i)].reported_utility = i < 2 ? utilities[i] : 21;
        records[static_cast<std::size_t>(i)].pois_visited = static_cast<std::size_t>(i + 1);
    }
    records[0].suboptimality = 1.0;
    records[1].suboptimality = 1.5;
    auto summary = summarize(records);
    REQUIRE(summary.size() == 1);
    const MethodSummary &s = summary[0];
    CHECK(s.rows == 4);
    CHECK(s.valid == 2);
    CHECK(s.utility_mean == doctest::Approx(25.0));
    CHECK(s.utility_std == doctest::Approx(std::sqrt(125.0)));
    CHECK(s.reported_mean == doctest::Approx((10 + 20 + 21 + 21) / 4.0));
    CHECK(s.pois_visited_mean == doctest::Approx(2.5));
    CHECK(s.suboptimality_mean == doctest::Approx(1.25));
}
