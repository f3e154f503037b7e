#pragma once

#include "trippal/compile.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace trippal {

struct PddlDocumentPair {
    std::string domain_text;
    std::string problem_text;
};

inline constexpr std::string_view kPddlDomainName = "trip-pal";

/// Domain with actions visit, move, end_mode and no_visit over discrete time
/// objects t0..tS; problem with logic_sum facts for every t0 + d = tf <= S (d >= 1).
PddlDocumentPair emit_pddl(const CompiledTask &compiled, std::string_view problem_name);

/// PDDL object name for a POI id (ids starting with a digit get a prefix).
std::string pddl_location_name(std::string_view poi_id);
std::string pddl_time_name(int slot);

// Minimal reader for the subset of PDDL this project writes.

struct SExpr {
    std::string atom;
    std::vector<SExpr> items;
    std::size_t line = 0;
    bool is_list = false;

    bool is_atom() const { return !is_list; }
    /// Atom text or "" for a list.
    const std::string &head() const;
};

/// Parses a sequence of s-expressions; `;` starts a comment.
/// Throws ParseError with the offending line on unbalanced parentheses.
std::vector<SExpr> parse_sexprs(std::string_view text);

struct PddlAction {
    std::vector<std::pair<std::string, std::string>> parameters;  // (?var, type)
    std::vector<SExpr> preconditions;                             // conjuncts
    std::vector<SExpr> effects;                                   // conjuncts
};

struct PddlDomain {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<std::string> types;
    std::map<std::string, std::vector<std::string>> predicates;  // name -> parameter types
    std::map<std::string, std::size_t> functions;                // name -> arity
    std::map<std::string, PddlAction> actions;
};

struct PddlProblem {
    std::string name;
    std::string domain;
    std::map<std::string, std::string> objects;           // object -> type
    std::vector<std::vector<std::string>> init_facts;     // (predicate args...)
    std::map<std::string, long long> init_values;          // "(fn args)" -> value
    std::vector<std::vector<std::string>> goal_facts;
    std::string metric;
};

/// Structural checks: well-formed sections, declared predicates used with the
/// declared arity, action variables bound by parameters. Throws ParseError.
PddlDomain read_pddl_domain(std::string_view text);

/// Additionally checks every fact against the domain's predicates and the
/// declared objects and their types. Throws ParseError.
PddlProblem read_pddl_problem(std::string_view text, const PddlDomain &domain);

} // namespace trippal
