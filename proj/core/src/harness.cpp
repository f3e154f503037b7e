#include "trippal/harness.hpp"

#include "trippal/compile.hpp"
#include "trippal/errors.hpp"
#include "trippal/oracle.hpp"
#include "trippal/plan_text.hpp"
#include "trippal/providers.hpp"
#include "trippal/task_io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

namespace trippal {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

void fill_from_report(EvalRecord &record, const ValidationReport &report) {
    record.valid = report.valid();
    record.visit_short = report.count(ViolationCategory::VisitTooShort);
    record.travel_short = report.count(ViolationCategory::TravelTooShort);
    record.horizon_exceeded = report.count(ViolationCategory::HorizonExceeded);
    record.wrong_start = report.wrong_start;
    record.violations = report.violations.size();
}

EvalRecord error_record(const std::string &task_id, Method method, const Error &error,
                        const HarnessOptions &options) {
    EvalRecord record;
    record.task_id = task_id;
    record.method = method;
    record.valid = false;
    record.reported_utility = options.placeholder_utility;
    record.error = std::string(to_string(error.code()));
    return record;
}

} // namespace

std::string_view to_string(Method method) {
    switch (method) {
    case Method::Optimal: return "optimal";
    case Method::Oracle: return "oracle";
    case Method::External: return "external";
    }
    return "unknown";
}

std::string csv_row(const EvalRecord &record) {
    std::ostringstream out;
    out << record.task_id << ',' << to_string(record.method) << ','
        << (record.valid ? "true" : "false") << ',' << record.utility << ','
        << record.reported_utility << ',';
    char buffer[64];
    if (record.suboptimality) {
        std::snprintf(buffer, sizeof(buffer), "%.6f", *record.suboptimality);
        out << buffer;
    }
    std::snprintf(buffer, sizeof(buffer), "%.6f", record.runtime_seconds);
    out << ',' << buffer << ',' << record.visit_short << ',' << record.travel_short << ','
        << record.horizon_exceeded << ',' << record.pois_visited;
    return out.str();
}

std::string write_csv(const std::vector<EvalRecord> &records) {
    std::string text(kCsvHeader);
    text += '\n';
    for (const EvalRecord &record : records)
        text += csv_row(record) + '\n';
    return text;
}

std::vector<std::string> default_cities() {
    return {
        "Tokyo", "Paris", "Barcelona", "New York City", "London",
        "Cape Town", "Amsterdam", "Rome", "Berlin", "Toronto",
        "Bergen, Norway", "Cienfuegos, Cuba", "Colonia del Sacramento, Uruguay",
        "Hoi An, Vietnam", "Luang Prabang, Laos", "Matera, Italy", "Salzburg, Austria",
        "Valparaíso, Chile", "Yogyakarta, Indonesia", "Zadar, Croatia",
    };
}

std::vector<SuiteSpec> sweep_specs(Sweep sweep, std::uint64_t seed, int max_utility) {
    std::vector<SuiteSpec> specs;
    auto base = [&] {
        SuiteSpec spec;
        spec.cities = {"Paris", "Rome"};
        spec.per_city = 5;
        spec.seed = seed;
        spec.max_utility = max_utility;
        return spec;
    };
    if (sweep == Sweep::Pois) {
        for (int n = 8; n <= 18; n += 2) {
            SuiteSpec spec = base();
            spec.n_pois = n;
            spec.horizon_hours = 8;
            specs.push_back(spec);
        }
    } else {
        for (int h = 6; h <= 10; ++h) {
            SuiteSpec spec = base();
            spec.n_pois = 10;
            spec.horizon_hours = h;
            specs.push_back(spec);
        }
    }
    return specs;
}

std::uint64_t derive_seed(std::uint64_t suite_seed, std::string_view city, int index) {
    return splitmix64(splitmix64(suite_seed ^ fnv1a(city)) + static_cast<std::uint64_t>(index));
}

std::string suite_task_id(std::string_view city, int index, int n_pois, int horizon_hours) {
    return fold_name(city) + "_" + std::to_string(index) + "_n" + std::to_string(n_pois) + "_h" +
           std::to_string(horizon_hours);
}

std::vector<std::filesystem::path> gen_suite(const SuiteSpec &spec,
                                             const std::filesystem::path &out_dir, bool force) {
    if (spec.per_city < 1)
        throw Error(ErrorCode::InvalidTask, "per_city must be at least 1");
    std::filesystem::create_directories(out_dir);

    std::vector<std::filesystem::path> paths;
    std::set<std::filesystem::path> planned;
    for (const std::string &city : spec.cities) {
        for (int k = 0; k < spec.per_city; ++k) {
            auto path = out_dir / (suite_task_id(city, k, spec.n_pois, spec.horizon_hours) + ".json");
            if (!planned.insert(path).second)
                throw Error(ErrorCode::IoError, "two suite tasks map to '" + path.string() + "'");
            if (!force && std::filesystem::exists(path))
                throw Error(ErrorCode::IoError,
                            "'" + path.string() + "' already exists (use --force to overwrite)");
            paths.push_back(path);
        }
    }

    SyntheticProvider provider(spec.max_utility);
    GridParams grid{spec.slot_minutes, ClockTime{8, 0}, spec.horizon_hours};
    std::size_t i = 0;
    for (const std::string &city : spec.cities) {
        for (int k = 0; k < spec.per_city; ++k) {
            ProviderRequest request{city, spec.n_pois, spec.horizon_hours,
                                    derive_seed(spec.seed, city, k)};
            TaskFile file = to_task_file(provider.fetch(request), grid, spec.max_utility);
            save_task_file(file, paths[i++]);
        }
    }
    return paths;
}

int reference_utility(const ItineraryTask &task, const SolveOptions &options) {
    if (task.size() <= kOracleMaxPois)
        return oracle_solve(task).utility;
    CompiledTask compiled(task);
    return plan_utility(solve(compiled, options), task);
}

EvalRecord eval_plan(const ItineraryTask &task, const std::string &task_id, const Plan &plan,
                     const HarnessOptions &options, std::optional<int> optimum) {
    EvalRecord record;
    record.task_id = task_id;
    record.method = Method::External;
    ValidationReport report = validate(plan, task);
    fill_from_report(record, report);
    record.pois_visited = plan.visited().size();

    int utility = 0;
    for (const std::string &id : plan.visited()) {
        if (auto index = task.index_of(id))
            utility += task.poi(*index).utility;
    }
    record.utility = utility;
    record.reported_utility = record.valid ? utility : options.placeholder_utility;
    if (record.valid) {
        int best = optimum ? *optimum : reference_utility(task, options.solve);
        if (utility > 0)
            record.suboptimality = static_cast<double>(best) / utility;
        else if (best == 0)
            record.suboptimality = 1.0;
    }
    return record;
}

EvalRecord eval_plan_files(const std::filesystem::path &task_file,
                           const std::filesystem::path &plan_file, PlanGrammar grammar,
                           const HarnessOptions &options) {
    std::string task_id = task_file.stem().string();
    auto start = Clock::now();
    ItineraryTask task = load_task(task_file);
    EvalRecord record;
    try {
        std::string text = read_text_file(plan_file);
        Plan plan = grammar == PlanGrammar::Native ? parse_plan_native(text, task)
                                                   : parse_plan_llm(text, task);
        record = eval_plan(task, task_id, plan, options);
    } catch (const Error &e) {
        record = error_record(task_id, Method::External, e, options);
    }
    record.runtime_seconds = seconds_since(start);
    return record;
}

namespace {

std::vector<EvalRecord> evaluate_task(const std::filesystem::path &path, const HarnessOptions &options,
                                      const std::optional<std::filesystem::path> &plans_dir,
                                      PlanGrammar grammar) {
    std::vector<EvalRecord> rows;
    std::string task_id = path.stem().string();

    auto start = Clock::now();
    std::optional<ItineraryTask> task;
    std::optional<int> optimum;
    try {
        task = load_task(path);
        CompiledTask compiled(*task);
        Plan plan = solve(compiled, options.solve);
        ValidationReport report = validate(plan, *task);
        EvalRecord record;
        record.task_id = task_id;
        record.method = Method::Optimal;
        fill_from_report(record, report);
        record.utility = plan_utility(plan, *task);
        record.reported_utility = record.valid ? record.utility : options.placeholder_utility;
        record.suboptimality = 1.0;
        record.pois_visited = plan.visited().size();
        record.runtime_seconds = seconds_since(start);
        optimum = record.utility;
        rows.push_back(record);
    } catch (const Error &e) {
        EvalRecord record = error_record(task_id, Method::Optimal, e, options);
        record.runtime_seconds = seconds_since(start);
        rows.push_back(record);
        if (!task)
            return rows;
    }

    if (options.with_oracle) {
        start = Clock::now();
        try {
            OracleResult oracle = oracle_solve(*task);
            ValidationReport report = validate(oracle.witness, *task);
            EvalRecord record;
            record.task_id = task_id;
            record.method = Method::Oracle;
            fill_from_report(record, report);
            record.utility = oracle.utility;
            record.reported_utility = record.valid ? record.utility : options.placeholder_utility;
            record.pois_visited = oracle.witness.visited().size();
            if (optimum && oracle.utility > 0)
                record.suboptimality = static_cast<double>(*optimum) / oracle.utility;
            else if (optimum)
                record.suboptimality = 1.0;
            record.runtime_seconds = seconds_since(start);
            if (!optimum)
                optimum = oracle.utility;
            rows.push_back(record);
        } catch (const Error &e) {
            if (e.code() != ErrorCode::OracleTooLarge) {
                EvalRecord record = error_record(task_id, Method::Oracle, e, options);
                record.runtime_seconds = seconds_since(start);
                rows.push_back(record);
            }
        }
    }

    if (plans_dir) {
        auto plan_path = *plans_dir / (task_id + ".plan");
        if (std::filesystem::exists(plan_path)) {
            start = Clock::now();
            EvalRecord record;
            try {
                std::string text = read_text_file(plan_path);
                Plan plan = grammar == PlanGrammar::Native ? parse_plan_native(text, *task)
                                                           : parse_plan_llm(text, *task);
                record = eval_plan(*task, task_id, plan, options,
                                   optimum ? optimum : std::optional<int>(reference_utility(*task, options.solve)));
            } catch (const Error &e) {
                record = error_record(task_id, Method::External, e, options);
            }
            record.runtime_seconds = seconds_since(start);
            rows.push_back(record);
        }
    }
    return rows;
}

} // namespace

SuiteResult run_suite(const std::filesystem::path &suite_dir, const HarnessOptions &options,
                      const std::optional<std::filesystem::path> &plans_dir, PlanGrammar grammar) {
    if (!std::filesystem::is_directory(suite_dir))
        throw Error(ErrorCode::IoError, "'" + suite_dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(suite_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<std::vector<EvalRecord>> per_task(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++)
            per_task[i] = evaluate_task(files[i], options, plans_dir, grammar);
    };
    unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(files.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        for (unsigned t = 0; t < jobs; ++t)
            threads.emplace_back(worker);
    }

    SuiteResult result;
    for (auto &rows : per_task) {
        for (EvalRecord &record : rows) {
            bool unparsed = record.method == Method::External &&
                            record.error == to_string(ErrorCode::ParseError);
            result.had_errors |= !record.error.empty() && !unparsed;
            result.had_invalid |= (record.error.empty() || unparsed) && !record.valid;
            result.records.push_back(std::move(record));
        }
    }
    result.summary = summarize(result.records);
    return result;
}

std::vector<MethodSummary> summarize(const std::vector<EvalRecord> &records) {
    std::vector<MethodSummary> out;
    for (Method method : {Method::Optimal, Method::Oracle, Method::External}) {
        MethodSummary s;
        s.method = method;
        std::vector<double> utilities;
        double reported = 0.0;
        double visited = 0.0;
        double ratio_sum = 0.0;
        std::size_t ratio_count = 0;
        for (const EvalRecord &r : records) {
            if (r.method != method)
                continue;
            ++s.rows;
            if (!r.error.empty()) {
                ++s.errors;
                continue;
            }
            s.valid += r.valid;
            s.wrong_start += r.wrong_start;
            utilities.push_back(r.utility);
            reported += r.reported_utility;
            visited += static_cast<double>(r.pois_visited);
            if (r.suboptimality) {
                ratio_sum += *r.suboptimality;
                ++ratio_count;
            }
        }
        if (s.rows == 0)
            continue;
        if (!utilities.empty()) {
            double n = static_cast<double>(utilities.size());
            double mean = 0.0;
            for (double u : utilities)
                mean += u;
            mean /= n;
            double var = 0.0;
            for (double u : utilities)
                var += (u - mean) * (u - mean);
            s.utility_mean = mean;
            s.utility_std = std::sqrt(var / n);
            s.reported_mean = reported / n;
            s.pois_visited_mean = visited / n;
        }
        if (ratio_count > 0)
            s.suboptimality_mean = ratio_sum / static_cast<double>(ratio_count);
        out.push_back(s);
    }
    return out;
}

std::string format_summary(const std::vector<MethodSummary> &summary) {
    std::ostringstream out;
    char line[256];
    for (const MethodSummary &s : summary) {
        double rate = s.rows == 0 ? 0.0 : static_cast<double>(s.valid) / static_cast<double>(s.rows);
        std::snprintf(line, sizeof(line),
                      "%-8s rows=%zu valid=%zu (%.3f) utility=%.2f+-%.2f reported=%.2f "
                      "pois_visited=%.2f",
                      std::string(to_string(s.method)).c_str(), s.rows, s.valid, rate,
                      s.utility_mean, s.utility_std, s.reported_mean, s.pois_visited_mean);
        out << line;
        if (s.suboptimality_mean) {
            std::snprintf(line, sizeof(line), " suboptimality=%.3f", *s.suboptimality_mean);
            out << line;
        }
        if (s.wrong_start > 0)
            out << " wrong_start=" << s.wrong_start;
        if (s.errors > 0)
            out << " errors=" << s.errors;
        out << "\n";
    }
    return out.str();
}

} // namespace trippal
