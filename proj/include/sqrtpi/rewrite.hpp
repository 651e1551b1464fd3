#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqrtpi/lang.hpp"
#include "sqrtpi/semantics.hpp"

namespace sqrtpi::rewrite {

enum class Direction { LeftToRight, RightToLeft };
// Which directions simplify may use.
enum class Orientation { LeftToRight, RightToLeft, Both, None };

const char* direction_name(Direction d);
const char* orientation_name(Orientation o);

struct SideCondition {
    enum Kind { Involutive, Scalar } kind;
    std::string meta;  // without the leading '?'
};

struct Instantiation {
    std::map<std::string, Term> terms;  // ?name -> term
    std::map<std::string, long> ints;   // $name -> value
    std::optional<TypePair> type;       // type of the left-hand side
    std::string text;                   // as written
};

struct RewriteRule {
    std::string name;
    std::string family;
    Term lhs, rhs;
    std::string lhs_text, rhs_text;
    int qubits = 0;  // > 0 for rules written as circuits
    int phase = 0;   // eval(lhs) = w^phase . eval(rhs)
    Orientation orient = Orientation::None;
    std::vector<SideCondition> conditions;
    std::vector<Instantiation> instances;
    std::string note;
};

struct RuleDb {
    std::vector<RewriteRule> rules;
    const RewriteRule* find(const std::string& name) const;
    std::vector<std::string> families() const;
};

struct CatalogError : std::runtime_error {
    CatalogError(int line, const std::string& msg);
    int line;
};

RuleDb parse_catalog(const std::string& text);
RuleDb load_catalog(const std::string& path);
// SQRTPI_RULE_CATALOG if set, otherwise the catalog shipped with the sources.
std::string default_catalog_path();
// Loaded once from default_catalog_path().
const RuleDb& rule_db();

struct RewriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoMatch : RewriteError {
    using RewriteError::RewriteError;
};
struct PathInvalid : RewriteError {
    using RewriteError::RewriteError;
};

using Path = std::vector<int>;

struct Step {
    std::string rule;
    Path path;
    Direction direction;
    int phase;  // eval(before) = w^phase . eval(after)
    Term term;  // after the step
};

struct Trace {
    Term input;
    std::vector<Step> steps;
    Term output;
    int phase = 0;  // eval(input) = w^phase . eval(output), mod 8
    nlohmann::json to_json() const;
};

// Terms are normalised to right-nested ';' before matching, and paths refer
// to that normal form: 0 selects the left child or first macro argument, 1
// the right child, i the i-th macro argument. A ';' pattern matches a prefix
// of the chain at the path; the rest of the chain is kept.
struct Applied {
    Term term;  // type checked
    int phase;
};
Applied apply_rule(const Term& term, const RewriteRule& rule, const Path& path, Direction dir);

// Greedy rewriting: preorder positions, rules in catalog order; a step is
// taken only when it strictly lowers (inverse count, size, +/* count).
Trace simplify(const Term& term, const RuleDb& db, int budget);

struct InstanceReport {
    std::string label;
    bool passed = false;
    size_t dimension = 0;
    std::string message;
};

struct RuleReport {
    std::string name, family;
    bool passed = false;
    std::vector<InstanceReport> instances;
};

// Substitutes each instantiation and compares eval(lhs) with w^phase . eval(rhs).
RuleReport validate_rule(const RewriteRule& rule, const std::vector<Instantiation>& instances, bool parallel = true);
RuleReport validate_rule(const RewriteRule& rule, bool parallel = true);
// Runs validate_rule over every rule whose family matches (all when empty), in parallel.
std::vector<RuleReport> validate_all(const RuleDb& db, const std::string& family = {});

// Type checks b at a's type and compares denotations.
Comparison check_equiv(const Term& a, const Term& b, PhaseMode mode);

}  // namespace sqrtpi::rewrite
