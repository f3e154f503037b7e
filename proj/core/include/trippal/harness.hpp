#pragma once

#include "trippal/model.hpp"
#include "trippal/planner.hpp"
#include "trippal/validator.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace trippal {

enum class Method { Optimal, Oracle, External };
enum class PlanGrammar { Native, Llm };

std::string_view to_string(Method method);

struct EvalRecord {
    std::string task_id;
    Method method = Method::Optimal;
    bool valid = false;
    int utility = 0;
    int reported_utility = 0;  // placeholder for invalid plans
    std::optional<double> suboptimality;
    double runtime_seconds = 0.0;
    std::size_t visit_short = 0;
    std::size_t travel_short = 0;
    std::size_t horizon_exceeded = 0;
    std::size_t pois_visited = 0;
    bool wrong_start = false;
    std::size_t violations = 0;
    std::string error;  // error code name when the row could not be evaluated
};

inline constexpr std::string_view kCsvHeader =
    "task_id,method,valid,utility,reported_utility,suboptimality,runtime_seconds,visit_short,"
    "travel_short,horizon_exceeded,pois_visited";

std::string csv_row(const EvalRecord &record);
std::string write_csv(const std::vector<EvalRecord> &records);

struct HarnessOptions {
    int placeholder_utility = 21;
    SolveOptions solve;
    bool with_oracle = false;
    unsigned jobs = 1;
};

// Suite generation.

/// The 20 benchmark destinations: 10 popular, 10 less visited.
std::vector<std::string> default_cities();

struct SuiteSpec {
    std::vector<std::string> cities = default_cities();
    int per_city = 5;
    int n_pois = 10;
    int horizon_hours = 8;
    std::uint64_t seed = 0;
    int max_utility = 10;
    int slot_minutes = 15;
};

enum class Sweep { Pois, Hours };

/// Paris and Rome, 5 tasks each per point: N = 8..18 step 2 at H = 8, or
/// H = 6..10 at N = 10.
std::vector<SuiteSpec> sweep_specs(Sweep sweep, std::uint64_t seed, int max_utility = 10);

/// Seed for the index-th task of a city, mixed from the suite seed.
std::uint64_t derive_seed(std::uint64_t suite_seed, std::string_view city, int index);

/// File stem <city>_<index>_n<N>_h<H>.
std::string suite_task_id(std::string_view city, int index, int n_pois, int horizon_hours);

/// Writes per_city synthetic task files per city. Refuses to overwrite an
/// existing file unless `force` (Error(IoError)).
std::vector<std::filesystem::path> gen_suite(const SuiteSpec &spec,
                                             const std::filesystem::path &out_dir, bool force);

// Evaluation.

/// Optimal utility used as the suboptimality reference: oracle when it fits, else the planner.
int reference_utility(const ItineraryTask &task, const SolveOptions &options = {});

EvalRecord eval_plan(const ItineraryTask &task, const std::string &task_id, const Plan &plan,
                     const HarnessOptions &options, std::optional<int> optimum = std::nullopt);

/// Parses the plan file in the given grammar. Parse failures yield an invalid
/// record with error "ParseError" instead of throwing.
EvalRecord eval_plan_files(const std::filesystem::path &task_file,
                           const std::filesystem::path &plan_file, PlanGrammar grammar,
                           const HarnessOptions &options);

struct MethodSummary {
    Method method;
    std::size_t rows = 0;
    std::size_t valid = 0;
    double utility_mean = 0.0;
    double utility_std = 0.0;
    double reported_mean = 0.0;
    std::optional<double> suboptimality_mean;
    double pois_visited_mean = 0.0;
    std::size_t wrong_start = 0;
    std::size_t errors = 0;
};

struct SuiteResult {
    std::vector<EvalRecord> records;
    std::vector<MethodSummary> summary;
    bool had_errors = false;
    bool had_invalid = false;
};

/// Every *.json task in the directory in file-name order: one optimal row, an
/// oracle row when requested, and an external row when `plans_dir` holds
/// <task_id>.plan.
SuiteResult run_suite(const std::filesystem::path &suite_dir, const HarnessOptions &options,
                      const std::optional<std::filesystem::path> &plans_dir = std::nullopt,
                      PlanGrammar grammar = PlanGrammar::Native);

std::vector<MethodSummary> summarize(const std::vector<EvalRecord> &records);
std::string format_summary(const std::vector<MethodSummary> &summary);

} // namespace trippal
