#include "support.hpp"

#include "trippal/errors.hpp"
#include "trippal/pddl.hpp"
#include "trippal/plan_text.hpp"
#include "trippal/planner.hpp"

#include <doctest.h>

#include <set>

using namespace trippal;
using namespace trippal::testing;

namespace {

int slot_of(const std::string &name) { return std::stoi(name.substr(1)); }

std::set<std::string> heads(const std::vector<SExpr> &conjuncts) {
    std::set<std::string> out;
    for (const SExpr &c : conjuncts)
        out.insert(c.head());
    return out;
}

ItineraryTask one_hour_task() {
    std::vector<Poi> pois = {{"a", "A", 2, 1}, {"b", "B", 3, 2}};
    TravelMatrix travel(2);
    travel(0, 1) = travel(1, 0) = 1;
    return ItineraryTask("tiny", TimeGrid(15, ClockTime{8, 0}, 1), 5, pois, travel);
}

} // namespace

TEST_CASE("domain mirrors the visit schema") {
    ItineraryTask paris = paris_task();
    CompiledTask compiled(paris);
    PddlDocumentPair docs = emit_pddl(compiled, "paris");
    PddlDomain domain = read_pddl_domain(docs.domain_text);
    CHECK(domain.name == "trip-pal");
    for (const char *action : {"visit", "move", "end_mode", "no_visit"})
        CHECK(domain.actions.contains(action));
    const PddlAction &visit = domain.actions.at("visit");
    CHECK(heads(visit.preconditions) ==
          std::set<std::string>{"normal_mode", "current_time", "visited_time", "user_at", "logic_sum"});
    CHECK(visit.parameters.size() == 4);
    for (const auto &[var, type] : visit.parameters)
        CHECK((type == "location" || type == "time"));
    std::set<std::string> effects = heads(visit.effects);
    CHECK(effects.contains("visited"));
    CHECK(effects.contains("increase"));
    CHECK(heads(domain.actions.at("move").preconditions).contains("logic_sum"));
    CHECK(domain.functions.contains("total-cost"));
    CHECK(domain.functions.at("visit_cost") == 1);
}

TEST_CASE("logic_sum facts for S = 4") {
    ItineraryTask task = one_hour_task();
    CompiledTask compiled(task);
    PddlDocumentPair docs = emit_pddl(compiled, "tiny");
    PddlProblem problem = read_pddl_problem(docs.problem_text, read_pddl_domain(docs.domain_text));
    std::set<std::tuple<int, int, int>> facts;
    for (const auto &fact : problem.init_facts) {
        if (fact[0] != "logic_sum")
            continue;
        facts.insert({slot_of(fact[1]), slot_of(fact[2]), slot_of(fact[3])});
    }
    std::set<std::tuple<int, int, int>> expected;
    for (int t = 0; t <= 4; ++t)
        for (int d = 1; t + d <= 4; ++d)
            expected.insert({t, d, t + d});
    CHECK(facts.size() == 10);
    CHECK(facts == expected);
    int times = 0;
    for (const auto &[object, type] : problem.objects)
        times += type == "time";
    CHECK(times == 5);
}

TEST_CASE("Paris problem self-parses and every logic_sum fits the horizon") {
    for (int hours : {6, 8, 10}) {
        ItineraryTask paris = paris_task(hours);
        CompiledTask compiled(paris);
        PddlDocumentPair docs = emit_pddl(compiled, "paris");
        PddlDomain domain = read_pddl_domain(docs.domain_text);
        PddlProblem problem = read_pddl_problem(docs.problem_text, domain);
        CHECK(problem.domain == "trip-pal");
        CHECK(problem.metric == "minimize total-cost");
        CHECK(problem.goal_facts.size() == 10);
        int sums = 0;
        for (const auto &fact : problem.init_facts) {
            if (fact[0] != "logic_sum")
                continue;
            ++sums;
            int t0 = slot_of(fact[1]), d = slot_of(fact[2]), tf = slot_of(fact[3]);
            CHECK(t0 + d == tf);
            CHECK(tf <= compiled.total_slots());
        }
        int S = compiled.total_slots();
        CHECK(sums == S * (S + 1) / 2);
        CHECK(problem.init_values.at("(visit_cost centre_pompidou)") == 4);
        CHECK(problem.init_values.at("(skip_cost eiffel_tower)") == 6);
    }
}

TEST_CASE("emitting twice gives identical text") {
    ItineraryTask task = synthetic_task(8, 6, 4);
    CompiledTask compiled(task);
    PddlDocumentPair a = emit_pddl(compiled, "x");
    PddlDocumentPair b = emit_pddl(compiled, "x");
    CHECK(a.domain_text == b.domain_text);
    CHECK(a.problem_text == b.problem_text);
}

TEST_CASE("location names stay PDDL identifiers") {
    CHECK(pddl_location_name("eiffel_tower") == "eiffel_tower");
    CHECK(pddl_location_name("42nd_street") == "loc_42nd_street");
    CHECK(pddl_time_name(7) == "t7");
}

TEST_CASE("reader rejects malformed input") {
    CHECK_THROWS_AS(parse_sexprs("(define (domain x)"), ParseError);
    CHECK_THROWS_AS(parse_sexprs(")"), ParseError);
    try {
        parse_sexprs("(a\n(b)\n))");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
    ItineraryTask task = one_hour_task();
    CompiledTask compiled(task);
    PddlDocumentPair docs = emit_pddl(compiled, "tiny");
    PddlDomain domain = read_pddl_domain(docs.domain_text);
    std::string broken = docs.problem_text;
    broken.replace(broken.find("(user_at a)"), 11, "(user_at zz)");
    CHECK_THROWS_AS(read_pddl_problem(broken, domain), ParseError);
    std::string arity = docs.problem_text;
    arity.replace(arity.find("(user_at a)"), 11, "(user_at a b)");
    CHECK_THROWS_AS(read_pddl_problem(arity, domain), ParseError);
}
