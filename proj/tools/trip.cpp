// trip: command-line front end for the itinerary planner and benchmark harness.

#include "trippal/compile.hpp"
#include "trippal/errors.hpp"
#include "trippal/harness.hpp"
#include "trippal/llm_provider.hpp"
#include "trippal/oracle.hpp"
#include "trippal/pddl.hpp"
#include "trippal/plan_text.hpp"
#include "trippal/planner.hpp"
#include "trippal/providers.hpp"
#include "trippal/task_io.hpp"
#include "trippal/validator.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace trippal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitError = 2;

struct Globals {
    std::uint64_t seed = 0;
    std::optional<int> max_utility;
    int slot_minutes = 15;
    int placeholder_utility = 21;
    HeuristicKind heuristic = HeuristicKind::Visits;

    HarnessOptions harness() const {
        HarnessOptions options;
        options.placeholder_utility = placeholder_utility;
        options.solve.heuristic = heuristic;
        return options;
    }
};

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_text_file(out_path, text);
}

PlanGrammar grammar_from(const std::string &name) {
    return name == "llm" ? PlanGrammar::Llm : PlanGrammar::Native;
}

int cmd_gen(const Globals &g, const fs::path &out_dir, std::vector<std::string> cities,
            int per_city, int n_pois, int hours, const std::string &sweep, bool force) {
    std::vector<std::pair<fs::path, SuiteSpec>> jobs;
    int max_utility = g.max_utility.value_or(10);
    if (sweep.empty()) {
        SuiteSpec spec;
        if (!cities.empty())
            spec.cities = std::move(cities);
        spec.per_city = per_city;
        spec.n_pois = n_pois;
        spec.horizon_hours = hours;
        spec.seed = g.seed;
        spec.max_utility = max_utility;
        spec.slot_minutes = g.slot_minutes;
        jobs.emplace_back(out_dir, spec);
    } else {
        for (SuiteSpec spec : sweep_specs(sweep == "pois" ? Sweep::Pois : Sweep::Hours, g.seed,
                                          max_utility)) {
            if (!cities.empty())
                spec.cities = cities;
            spec.per_city = per_city;
            spec.slot_minutes = g.slot_minutes;
            auto sub = out_dir / ("n" + std::to_string(spec.n_pois) + "_h" +
                                  std::to_string(spec.horizon_hours));
            jobs.emplace_back(sub, spec);
        }
    }
    std::size_t written = 0;
    for (const auto &[dir, spec] : jobs)
        written += gen_suite(spec, dir, force).size();
    std::cerr << "wrote " << written << " task files under " << out_dir.string() << "\n";
    return kExitOk;
}

struct FetchArgs {
    std::string provider = "fixture";
    std::string city = "Paris";
    int n_pois = 10;
    std::optional<int> hours;
    std::string fixtures;
    std::string transcript;
    std::string record;
    int rating_scale = 5;
    std::string out;
};

int cmd_fetch(const Globals &g, const FetchArgs &a) {
    ProviderRequest request{a.city, a.n_pois, a.hours.value_or(8), g.seed};
    GridParams grid{g.slot_minutes, ClockTime{8, 0}, a.hours.value_or(8)};
    TaskFile file;

    if (a.provider == "fixture") {
        FixtureProvider provider = a.fixtures.empty() ? FixtureProvider() : FixtureProvider(a.fixtures);
        TaskFile stored = provider.fixture_file(a.city);
        grid.slot_minutes = stored.slot_minutes;
        grid.day_start = stored.day_start;
        grid.horizon_hours = a.hours.value_or(stored.horizon_hours);
        file = to_task_file(raw_from_task_file(stored), grid, g.max_utility);
        file.start_poi = stored.start_poi;
    } else if (a.provider == "synthetic") {
        SyntheticProvider provider(g.max_utility.value_or(10));
        file = to_task_file(provider.fetch(request), grid, g.max_utility);
    } else {
        LlmPromptOptions options;
        options.rating_scale = g.max_utility.value_or(a.rating_scale);
        RawTravelInfo raw;
        if (!a.transcript.empty()) {
            ReplayTransport replay(read_transcript(a.transcript));
            raw = LlmProvider(replay, options).fetch(request);
        } else {
            HttpChatTransport http(EndpointConfig::from_env());
            if (a.record.empty()) {
                raw = LlmProvider(http, options).fetch(request);
            } else {
                RecordingTransport recorder(http);
                try {
                    raw = LlmProvider(recorder, options).fetch(request);
                } catch (...) {
                    write_text_file(a.record, write_transcript(recorder.transcript()));
                    throw;
                }
                write_text_file(a.record, write_transcript(recorder.transcript()));
            }
        }
        file = to_task_file(raw, grid, g.max_utility);
    }
    emit(write_task_file(file), a.out);
    return kExitOk;
}

int cmd_plan(const Globals &g, const fs::path &task_path, const std::string &out, bool stats) {
    ItineraryTask task = load_task(task_path);
    CompiledTask compiled(task);
    SolveOptions options;
    options.heuristic = g.heuristic;
    auto start = std::chrono::steady_clock::now();
    SolveResult result = solve_with_stats(compiled, options);
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(render_plan_native(result.plan, compiled), out);
    std::cerr << "utility " << plan_utility(result.plan, task) << ", cost " << result.cost << "\n";
    if (stats)
        std::cerr << "expanded " << result.stats.expanded << ", generated " << result.stats.generated
                  << ", stored " << result.stats.stored << ", reopened " << result.stats.reopened
                  << ", " << seconds << " s\n";
    return kExitOk;
}

int cmd_oracle(const fs::path &task_path, const std::string &out) {
    ItineraryTask task = load_task(task_path);
    CompiledTask compiled(task);
    OracleResult result = oracle_solve(task);
    emit(render_plan_native(result.witness, compiled), out);
    std::cerr << "utility " << result.utility << ", ends at slot " << result.end_slot << "\n";
    return kExitOk;
}

int cmd_validate(const fs::path &task_path, const fs::path &plan_path, const std::string &grammar) {
    ItineraryTask task = load_task(task_path);
    std::string text = read_text_file(plan_path);
    Plan plan;
    if (grammar_from(grammar) == PlanGrammar::Llm) {
        LlmPlanParse parsed = parse_plan_llm_detailed(text, task);
        for (const std::string &warning : parsed.warnings)
            std::cerr << "warning: " << warning << "\n";
        plan = std::move(parsed.plan);
    } else {
        plan = parse_plan_native(text, task);
    }
    ValidationReport report = validate(plan, task);
    std::cout << format_report(report);
    if (report.valid())
        std::cout << "utility " << plan_utility(plan, task) << "\n";
    return report.valid() ? kExitOk : kExitInvalid;
}

int cmd_eval(const Globals &g, const fs::path &task_path, const fs::path &plan_path,
             const std::string &grammar) {
    EvalRecord record = eval_plan_files(task_path, plan_path, grammar_from(grammar), g.harness());
    std::cout << write_csv({record});
    if (!record.error.empty() && record.error != to_string(ErrorCode::ParseError))
        return kExitError;
    return record.valid ? kExitOk : kExitInvalid;
}

int cmd_run_suite(const Globals &g, const fs::path &dir, const std::string &plans,
                  const std::string &grammar, bool oracle, unsigned jobs, const std::string &out) {
    HarnessOptions options = g.harness();
    options.with_oracle = oracle;
    options.jobs = jobs;
    std::optional<fs::path> plans_dir;
    if (!plans.empty())
        plans_dir = plans;
    SuiteResult result = run_suite(dir, options, plans_dir, grammar_from(grammar));
    emit(write_csv(result.records), out);
    std::cerr << format_summary(result.summary);
    if (result.had_errors)
        return kExitError;
    return result.had_invalid ? kExitInvalid : kExitOk;
}

int cmd_pddl(const fs::path &task_path, const fs::path &out_dir) {
    ItineraryTask task = load_task(task_path);
    CompiledTask compiled(task);
    std::string stem = task_path.stem().string();
    PddlDocumentPair docs = emit_pddl(compiled, stem);
    fs::create_directories(out_dir);
    write_text_file(out_dir / (stem + "-domain.pddl"), docs.domain_text);
    write_text_file(out_dir / (stem + "-problem.pddl"), docs.problem_text);
    std::cerr << "wrote " << (out_dir / (stem + "-domain.pddl")).string() << " and "
              << (out_dir / (stem + "-problem.pddl")).string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Itinerary planning with utility-maximizing search"};
    app.require_subcommand(1);

    Globals g;
    std::string heuristic = "h0";
    int max_utility = 0;
    app.add_option("--seed", g.seed, "Base seed for synthetic data")->capture_default_str();
    auto *max_utility_opt =
        app.add_option("--max-utility", max_utility, "Rating scale (default: provider's own, 10 for synthetic)")
            ->check(CLI::PositiveNumber);
    app.add_option("--slot-minutes", g.slot_minutes, "Minutes per time slot")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--placeholder-utility", g.placeholder_utility,
                   "Utility reported for invalid plans")
        ->capture_default_str();
    app.add_option("--heuristic", heuristic, "Search heuristic")
        ->check(CLI::IsMember({"h0", "h1"}))
        ->capture_default_str();

    // gen
    auto *gen = app.add_subcommand("gen", "Generate a seeded synthetic task suite");
    std::string gen_out = "suite";
    std::vector<std::string> gen_cities;
    int per_city = 5, gen_pois = 10, gen_hours = 8;
    std::string sweep;
    bool force = false;
    gen->add_option("-o,--out", gen_out, "Output directory")->capture_default_str();
    gen->add_option("--cities", gen_cities, "City labels (default: the 20 benchmark cities)");
    gen->add_option("--per-city", per_city, "Tasks per city")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--pois", gen_pois, "POIs per task")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--hours", gen_hours, "Tourism hours")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--sweep", sweep, "Scalability sweep over Paris and Rome")
        ->check(CLI::IsMember({"pois", "hours"}));
    gen->add_flag("--force", force, "Overwrite existing task files");

    // fetch
    auto *fetch = app.add_subcommand("fetch", "Retrieve travel information and write a task file");
    FetchArgs fa;
    int fetch_hours = 0;
    fetch->add_option("--provider", fa.provider)
        ->check(CLI::IsMember({"fixture", "synthetic", "llm"}))
        ->capture_default_str();
    fetch->add_option("--city", fa.city)->capture_default_str();
    fetch->add_option("--pois", fa.n_pois)->check(CLI::PositiveNumber)->capture_default_str();
    auto *fetch_hours_opt = fetch->add_option("--hours", fetch_hours, "Tourism hours")
                                ->check(CLI::PositiveNumber);
    fetch->add_option("--fixtures", fa.fixtures, "Fixture directory");
    fetch->add_option("--transcript", fa.transcript, "Replay a recorded chat transcript");
    fetch->add_option("--record", fa.record, "Record the live chat transcript to this file");
    fetch->add_option("--rating-scale", fa.rating_scale, "Rating scale asked of the chat model")
        ->capture_default_str();
    fetch->add_option("-o,--out", fa.out, "Output file (default: stdout)");

    // plan
    auto *plan = app.add_subcommand("plan", "Solve a task and print the native plan");
    std::string plan_task, plan_out;
    bool stats = false;
    plan->add_option("task", plan_task)->required()->check(CLI::ExistingFile);
    plan->add_option("-o,--out", plan_out, "Output file (default: stdout)");
    plan->add_flag("--stats", stats, "Print search statistics");

    // oracle
    auto *oracle = app.add_subcommand("oracle", "Solve a task with the subset DP (N <= 16)");
    std::string oracle_task, oracle_out;
    oracle->add_option("task", oracle_task)->required()->check(CLI::ExistingFile);
    oracle->add_option("-o,--out", oracle_out, "Output file (default: stdout)");

    // validate / eval
    auto *val = app.add_subcommand("validate", "Check a plan against a task");
    auto *eval = app.add_subcommand("eval", "Score a plan as one CSV row");
    std::string v_task, v_plan, grammar = "native";
    for (auto *sub : {val, eval}) {
        sub->add_option("task", v_task)->required()->check(CLI::ExistingFile);
        sub->add_option("plan", v_plan)->required()->check(CLI::ExistingFile);
        sub->add_option("--grammar", grammar)
            ->check(CLI::IsMember({"native", "llm"}))
            ->capture_default_str();
    }

    // run-suite
    auto *suite = app.add_subcommand("run-suite", "Evaluate every task in a directory");
    std::string suite_dir, suite_plans, suite_out;
    bool with_oracle = false;
    unsigned jobs = 1;
    suite->add_option("dir", suite_dir)->required();
    suite->add_option("--plans", suite_plans, "Directory of <task_id>.plan files to score");
    suite->add_option("--grammar", grammar)
        ->check(CLI::IsMember({"native", "llm"}))
        ->capture_default_str();
    suite->add_flag("--oracle", with_oracle, "Add oracle rows for tasks with N <= 16");
    suite->add_option("-j,--jobs", jobs)->check(CLI::PositiveNumber)->capture_default_str();
    suite->add_option("-o,--out", suite_out, "CSV output file (default: stdout)");

    // pddl-export
    auto *pddl = app.add_subcommand("pddl-export", "Write PDDL domain and problem files");
    std::string pddl_task, pddl_out = ".";
    pddl->add_option("task", pddl_task)->required()->check(CLI::ExistingFile);
    pddl->add_option("-o,--out-dir", pddl_out)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    if (*max_utility_opt)
        g.max_utility = max_utility;
    g.heuristic = heuristic == "h1" ? HeuristicKind::Reachability : HeuristicKind::Visits;
    if (*fetch_hours_opt)
        fa.hours = fetch_hours;

    try {
        if (*gen)
            return cmd_gen(g, gen_out, gen_cities, per_city, gen_pois, gen_hours, sweep, force);
        if (*fetch)
            return cmd_fetch(g, fa);
        if (*plan)
            return cmd_plan(g, plan_task, plan_out, stats);
        if (*oracle)
            return cmd_oracle(oracle_task, oracle_out);
        if (*val)
            return cmd_validate(v_task, v_plan, grammar);
        if (*eval)
            return cmd_eval(g, v_task, v_plan, grammar);
        if (*suite)
            return cmd_run_suite(g, suite_dir, suite_plans, grammar, with_oracle, jobs, suite_out);
        if (*pddl)
            return cmd_pddl(pddl_task, pddl_out);
    } catch (const ParseError &e) {
        std::cerr << "parse error";
        if (e.line() > 0)
            std::cerr << " (line " << e.line() << ")";
        std::cerr << ": " << e.what() << "\n";
        return kExitError;
    } catch (const Error &e) {
        std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
