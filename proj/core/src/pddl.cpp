#include "trippal/pddl.hpp"

#include "trippal/errors.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace trippal {

namespace {

const std::string kEmpty;

std::string lower(std::string_view text) {
    std::string out(text);
    for (char &c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

std::string pddl_location_name(std::string_view poi_id) {
    if (!poi_id.empty() && std::isalpha(static_cast<unsigned char>(poi_id.front())))
        return std::string(poi_id);
    return "loc_" + std::string(poi_id);
}

std::string pddl_time_name(int slot) {
    return "t" + std::to_string(slot);
}

PddlDocumentPair emit_pddl(const CompiledTask &compiled, std::string_view problem_name) {
    const ItineraryTask &task = compiled.task();
    const int horizon = compiled.total_slots();

    std::set<std::string> time_names;
    for (int t = 0; t <= horizon; ++t)
        time_names.insert(pddl_time_name(t));
    for (const Poi &poi : task.pois()) {
        if (time_names.contains(pddl_location_name(poi.id)))
            throw Error(ErrorCode::InvalidTask,
                        "POI id '" + poi.id + "' collides with a time object name");
    }

    std::ostringstream d;
    d << "(define (domain " << kPddlDomainName << ")\n"
      << "  (:requirements :strips :typing :negative-preconditions :action-costs)\n"
      << "  (:types location time)\n"
      << "  (:predicates\n"
      << "    (normal_mode)\n"
      << "    (current_time ?t - time)\n"
      << "    (user_at ?l - location)\n"
      << "    (visited ?l - location)\n"
      << "    (visited_time ?l - location ?t - time)\n"
      << "    (travel_time ?from - location ?to - location ?t - time)\n"
      << "    (logic_sum ?t0 - time ?delta - time ?tf - time))\n"
      << "  (:functions\n"
      << "    (total-cost) - number\n"
      << "    (visit_cost ?l - location) - number\n"
      << "    (skip_cost ?l - location) - number)\n"
      << "\n"
      << "  (:action visit\n"
      << "    :parameters (?vloc - location\n"
      << "                 ?vt0 - time\n"
      << "                 ?vtvisit - time\n"
      << "                 ?vtf - time)\n"
      << "    :precondition\n"
      << "      (and (normal_mode)\n"
      << "           (current_time ?vt0)\n"
      << "           (visited_time ?vloc ?vtvisit)\n"
      << "           (user_at ?vloc)\n"
      << "           (logic_sum ?vt0 ?vtvisit ?vtf))\n"
      << "    :effect\n"
      << "      (and (visited ?vloc)\n"
      << "           (not (current_time ?vt0))\n"
      << "           (current_time ?vtf)\n"
      << "           (increase (total-cost)\n"
      << "                     (visit_cost ?vloc))))\n"
      << "\n"
      << "  (:action move\n"
      << "    :parameters (?mfrom - location\n"
      << "                 ?mto - location\n"
      << "                 ?mt0 - time\n"
      << "                 ?mtmove - time\n"
      << "                 ?mtf - time)\n"
      << "    :precondition\n"
      << "      (and (normal_mode)\n"
      << "           (current_time ?mt0)\n"
      << "           (user_at ?mfrom)\n"
      << "           (travel_time ?mfrom ?mto ?mtmove)\n"
      << "           (logic_sum ?mt0 ?mtmove ?mtf))\n"
      << "    :effect\n"
      << "      (and (not (user_at ?mfrom))\n"
      << "           (user_at ?mto)\n"
      << "           (not (current_time ?mt0))\n"
      << "           (current_time ?mtf)";
    if (compiled.move_cost() != 0)
        d << "\n           (increase (total-cost) " << compiled.move_cost() << ")";
    d << "))\n"
      << "\n"
      << "  (:action end_mode\n"
      << "    :parameters ()\n"
      << "    :precondition (and (normal_mode))\n"
      << "    :effect (and (not (normal_mode))))\n"
      << "\n"
      << "  (:action no_visit\n"
      << "    :parameters (?sloc - location)\n"
      << "    :precondition (and (not (normal_mode)) (not (visited ?sloc)))\n"
      << "    :effect\n"
      << "      (and (visited ?sloc)\n"
      << "           (increase (total-cost) (skip_cost ?sloc))))\n"
      << ")\n";

    std::ostringstream p;
    p << "(define (problem " << problem_name << ")\n"
      << "  (:domain " << kPddlDomainName << ")\n"
      << "  (:objects\n   ";
    for (const Poi &poi : task.pois())
        p << " " << pddl_location_name(poi.id);
    p << " - location\n   ";
    for (int t = 0; t <= horizon; ++t)
        p << " " << pddl_time_name(t);
    p << " - time)\n"
      << "  (:init\n"
      << "    (normal_mode)\n"
      << "    (current_time t0)\n"
      << "    (user_at " << pddl_location_name(task.poi(task.start_poi()).id) << ")\n";
    for (const Poi &poi : task.pois()) {
        if (poi.visit_slots <= horizon)
            p << "    (visited_time " << pddl_location_name(poi.id) << " "
              << pddl_time_name(poi.visit_slots) << ")\n";
    }
    for (std::size_t i = 0; i < task.size(); ++i) {
        for (std::size_t j = 0; j < task.size(); ++j) {
            if (i == j || task.travel(i, j) > horizon)
                continue;
            p << "    (travel_time " << pddl_location_name(task.poi(i).id) << " "
              << pddl_location_name(task.poi(j).id) << " " << pddl_time_name(task.travel(i, j))
              << ")\n";
        }
    }
    for (int t0 = 0; t0 < horizon; ++t0) {
        for (int delta = 1; t0 + delta <= horizon; ++delta)
            p << "    (logic_sum " << pddl_time_name(t0) << " " << pddl_time_name(delta) << " "
              << pddl_time_name(*compiled.sum_table(t0, delta)) << ")\n";
    }
    p << "    (= (total-cost) 0)\n";
    for (std::size_t i = 0; i < task.size(); ++i)
        p << "    (= (visit_cost " << pddl_location_name(task.poi(i).id) << ") "
          << compiled.visit_cost(i) << ")\n";
    for (std::size_t i = 0; i < task.size(); ++i)
        p << "    (= (skip_cost " << pddl_location_name(task.poi(i).id) << ") "
          << compiled.skip_cost(i) << ")\n";
    p << "  )\n"
      << "  (:goal (and";
    for (const Poi &poi : task.pois())
        p << "\n    (visited " << pddl_location_name(poi.id) << ")";
    p << "))\n"
      << "  (:metric minimize (total-cost))\n"
      << ")\n";

    return PddlDocumentPair{d.str(), p.str()};
}

const std::string &SExpr::head() const {
    if (is_list)
        return items.empty() || items.front().is_list ? kEmpty : items.front().atom;
    return atom;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
    std::vector<SExpr> roots;
    std::vector<SExpr> stack;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (c == ';') {
            while (i < text.size() && text[i] != '\n')
                ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            SExpr list;
            list.is_list = true;
            list.line = line;
            stack.push_back(std::move(list));
            ++i;
        } else if (c == ')') {
            if (stack.empty())
                throw ParseError("unbalanced ')'", line);
            SExpr done = std::move(stack.back());
            stack.pop_back();
            (stack.empty() ? roots : stack.back().items).push_back(std::move(done));
            ++i;
        } else {
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
                   text[i] != '(' && text[i] != ')' && text[i] != ';')
                ++i;
            SExpr atom;
            atom.atom = lower(text.substr(start, i - start));
            atom.line = line;
            if (stack.empty())
                throw ParseError("atom '" + atom.atom + "' outside of parentheses", line);
            stack.back().items.push_back(std::move(atom));
        }
    }
    if (!stack.empty())
        throw ParseError("unclosed '(' opened here", stack.back().line);
    return roots;
}

namespace {

// Typed list "?a ?b - type ?c - other" -> (name, type) pairs.
std::vector<std::pair<std::string, std::string>> typed_list(const std::vector<SExpr> &items,
                                                            std::size_t from) {
    std::vector<std::pair<std::string, std::string>> out;
    std::vector<std::string> pending;
    for (std::size_t i = from; i < items.size(); ++i) {
        const SExpr &item = items[i];
        if (item.is_list)
            throw ParseError("unexpected list in typed list", item.line);
        if (item.atom == "-") {
            if (i + 1 >= items.size() || items[i + 1].is_list)
                throw ParseError("'-' must be followed by a type", item.line);
            for (std::string &name : pending)
                out.emplace_back(std::move(name), items[i + 1].atom);
            pending.clear();
            ++i;
        } else {
            pending.push_back(item.atom);
        }
    }
    for (std::string &name : pending)
        out.emplace_back(std::move(name), "object");
    return out;
}

std::vector<SExpr> conjuncts(const SExpr &formula) {
    if (formula.is_list && formula.head() == "and")
        return {formula.items.begin() + 1, formula.items.end()};
    return {formula};
}

std::vector<std::string> atoms_of(const SExpr &list) {
    std::vector<std::string> out;
    for (const SExpr &item : list.items) {
        if (item.is_list)
            throw ParseError("nested list where a ground atom was expected", item.line);
        out.push_back(item.atom);
    }
    return out;
}

SExpr single_define(std::string_view text, const char *what) {
    std::vector<SExpr> roots = parse_sexprs(text);
    if (roots.size() != 1 || roots[0].head() != "define")
        throw ParseError(std::string(what) + " must be a single (define ...) form");
    return std::move(roots[0]);
}

void check_literal(const SExpr &literal, const PddlDomain &domain,
                   const std::set<std::string> &variables, bool allow_numeric) {
    const SExpr *atom = &literal;
    if (literal.head() == "not") {
        if (literal.items.size() != 2 || !literal.items[1].is_list)
            throw ParseError("malformed negation", literal.line);
        atom = &literal.items[1];
    }
    if (!atom->is_list || atom->items.empty())
        throw ParseError("literal must be a non-empty list", literal.line);
    const std::string &name = atom->head();
    if (allow_numeric && (name == "increase" || name == "decrease")) {
        if (atom->items.size() != 3 || !atom->items[1].is_list)
            throw ParseError("malformed numeric effect", atom->line);
        if (!domain.functions.contains(atom->items[1].head()))
            throw ParseError("undeclared function '" + atom->items[1].head() + "'", atom->line);
        return;
    }
    auto predicate = domain.predicates.find(name);
    if (predicate == domain.predicates.end())
        throw ParseError("undeclared predicate '" + name + "'", atom->line);
    if (predicate->second.size() + 1 != atom->items.size())
        throw ParseError("predicate '" + name + "' used with wrong arity", atom->line);
    for (std::size_t i = 1; i < atom->items.size(); ++i) {
        const SExpr &arg = atom->items[i];
        if (arg.is_list || (arg.atom.starts_with('?') && !variables.contains(arg.atom)))
            throw ParseError("unbound argument in '" + name + "'", arg.line);
    }
}

} // namespace

PddlDomain read_pddl_domain(std::string_view text) {
    const SExpr root = single_define(text, "domain");
    PddlDomain domain;
    std::vector<const SExpr *> action_forms;
    for (std::size_t i = 1; i < root.items.size(); ++i) {
        const SExpr &section = root.items[i];
        if (!section.is_list || section.items.empty())
            throw ParseError("malformed domain section", section.line);
        const std::string &key = section.head();
        if (key == "domain") {
            if (section.items.size() != 2)
                throw ParseError("malformed domain name", section.line);
            domain.name = section.items[1].atom;
        } else if (key == ":requirements") {
            domain.requirements = atoms_of(section);
            domain.requirements.erase(domain.requirements.begin());
        } else if (key == ":types") {
            for (auto &[name, parent] : typed_list(section.items, 1))
                domain.types.push_back(name);
        } else if (key == ":predicates") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const SExpr &decl = section.items[j];
                if (!decl.is_list || decl.items.empty())
                    throw ParseError("malformed predicate declaration", decl.line);
                std::vector<std::string> types;
                for (auto &[var, type] : typed_list(decl.items, 1))
                    types.push_back(type);
                domain.predicates[decl.head()] = std::move(types);
            }
        } else if (key == ":functions") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const SExpr &decl = section.items[j];
                if (decl.is_atom()) {
                    if (decl.atom == "-") {
                        ++j;  // skip "- number"
                        continue;
                    }
                    throw ParseError("malformed function declaration", decl.line);
                }
                domain.functions[decl.head()] = typed_list(decl.items, 1).size();
            }
        } else if (key == ":action") {
            action_forms.push_back(&section);
        } else {
            throw ParseError("unsupported domain section '" + key + "'", section.line);
        }
    }
    if (domain.name.empty())
        throw ParseError("domain has no name");

    for (const SExpr *form : action_forms) {
        if (form->items.size() < 2 || form->items[1].is_list)
            throw ParseError("action without a name", form->line);
        PddlAction action;
        std::set<std::string> variables;
        for (std::size_t j = 2; j + 1 < form->items.size(); j += 2) {
            const std::string &field = form->items[j].atom;
            const SExpr &value = form->items[j + 1];
            if (field == ":parameters") {
                if (!value.is_list)
                    throw ParseError("parameters must be a list", value.line);
                action.parameters = typed_list(value.items, 0);
                for (auto &[var, type] : action.parameters) {
                    if (!var.starts_with('?'))
                        throw ParseError("parameter '" + var + "' must start with '?'", value.line);
                    variables.insert(var);
                }
            } else if (field == ":precondition") {
                action.preconditions = conjuncts(value);
            } else if (field == ":effect") {
                action.effects = conjuncts(value);
            } else {
                throw ParseError("unsupported action field '" + field + "'", form->items[j].line);
            }
        }
        if ((form->items.size() - 2) % 2 != 0)
            throw ParseError("action field without value", form->line);
        for (const SExpr &literal : action.preconditions)
            check_literal(literal, domain, variables, false);
        for (const SExpr &literal : action.effects)
            check_literal(literal, domain, variables, true);
        domain.actions[form->items[1].atom] = std::move(action);
    }
    return domain;
}

PddlProblem read_pddl_problem(std::string_view text, const PddlDomain &domain) {
    const SExpr root = single_define(text, "problem");
    PddlProblem problem;
    auto check_fact = [&](const std::vector<std::string> &fact, std::size_t line) {
        auto predicate = domain.predicates.find(fact.front());
        if (predicate == domain.predicates.end())
            throw ParseError("undeclared predicate '" + fact.front() + "'", line);
        if (predicate->second.size() + 1 != fact.size())
            throw ParseError("predicate '" + fact.front() + "' used with wrong arity", line);
        for (std::size_t k = 1; k < fact.size(); ++k) {
            auto object = problem.objects.find(fact[k]);
            if (object == problem.objects.end())
                throw ParseError("undeclared object '" + fact[k] + "'", line);
            if (object->second != predicate->second[k - 1])
                throw ParseError("object '" + fact[k] + "' has the wrong type for '" +
                                     fact.front() + "'",
                                 line);
        }
    };

    for (std::size_t i = 1; i < root.items.size(); ++i) {
        const SExpr &section = root.items[i];
        if (!section.is_list || section.items.empty())
            throw ParseError("malformed problem section", section.line);
        const std::string &key = section.head();
        if (key == "problem") {
            problem.name = section.items.size() == 2 ? section.items[1].atom : "";
        } else if (key == ":domain") {
            problem.domain = section.items.size() == 2 ? section.items[1].atom : "";
            if (problem.domain != domain.name)
                throw ParseError("problem refers to domain '" + problem.domain + "'", section.line);
        } else if (key == ":objects") {
            for (auto &[name, type] : typed_list(section.items, 1)) {
                if (!problem.objects.emplace(name, type).second)
                    throw ParseError("object '" + name + "' declared twice", section.line);
            }
        } else if (key == ":init") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const SExpr &fact = section.items[j];
                if (!fact.is_list || fact.items.empty())
                    throw ParseError("malformed init entry", fact.line);
                if (fact.head() == "=") {
                    if (fact.items.size() != 3 || !fact.items[1].is_list || fact.items[2].is_list)
                        throw ParseError("malformed numeric init", fact.line);
                    const SExpr &fn = fact.items[1];
                    auto declared = domain.functions.find(fn.head());
                    if (declared == domain.functions.end() ||
                        declared->second + 1 != fn.items.size())
                        throw ParseError("unknown function '" + fn.head() + "'", fact.line);
                    std::string key_text = "(";
                    for (std::size_t k = 0; k < fn.items.size(); ++k)
                        key_text += (k ? " " : "") + fn.items[k].atom;
                    key_text += ")";
                    try {
                        problem.init_values[key_text] = std::stoll(fact.items[2].atom);
                    } catch (const std::exception &) {
                        throw ParseError("numeric init value expected", fact.line);
                    }
                } else {
                    std::vector<std::string> atoms = atoms_of(fact);
                    check_fact(atoms, fact.line);
                    problem.init_facts.push_back(std::move(atoms));
                }
            }
        } else if (key == ":goal") {
            if (section.items.size() != 2)
                throw ParseError("malformed goal", section.line);
            for (const SExpr &fact : conjuncts(section.items[1])) {
                std::vector<std::string> atoms = atoms_of(fact);
                if (atoms.empty())
                    throw ParseError("empty goal literal", fact.line);
                check_fact(atoms, fact.line);
                problem.goal_facts.push_back(std::move(atoms));
            }
        } else if (key == ":metric") {
            if (section.items.size() != 3 || section.items[1].atom != "minimize")
                throw ParseError("only (:metric minimize ...) is supported", section.line);
            problem.metric = "minimize " + section.items[2].head();
        } else {
            throw ParseError("unsupported problem section '" + key + "'", section.line);
        }
    }
    if (problem.domain.empty())
        throw ParseError("problem has no :domain");
    return problem;
}

} // namespace trippal
