#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqrtpi {

// ---------------------------------------------------------------- value types

enum class TypeKind { Zero, One, Sum, Prod, Var };

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
    TypeKind kind;
    Type a, b;
    int var = -1;      // unification variable id
    std::string name;  // user-written type variable ('a)
};

Type zero_type();
Type one_type();
Type two_type();
Type sum_type(Type a, Type b);
Type prod_type(Type a, Type b);
Type var_type(int id, std::string name = {});

bool type_equal(const Type& a, const Type& b);
bool is_ground(const Type& t);
// Number of values of a ground type.
long dimension(const Type& t);
std::string type_to_string(const Type& t);

struct TypePair {
    Type src, dst;
};
std::string type_pair_to_string(const TypePair& p);

// Right-nested product 2*(2*(...)) of n booleans.
Type qubit_type(int n);
// Right-nested sum 1+(1+(...)) of n units.
Type unit_sum_type(int n);

// ---------------------------------------------------------------- combinators

enum class Prim {
    Id,
    SwapP,
    AssocrP,
    AssoclP,
    UnitePl,
    UnitiPl,
    Absorbl,
    Factorzr,
    SwapT,
    AssocrT,
    AssoclT,
    UniteTl,
    UnitiTl,
    Dist,
    Factor,
    V,
    Vi,
    W,
    Wi
};

const char* prim_name(Prim p);
std::optional<Prim> prim_from_name(const std::string& s);
Prim prim_dual(Prim p);

enum class NodeKind { Prim, Seq, Sum, Prod, Macro, Meta };

struct Loc {
    int line = 0;
    int col = 0;
};

struct Node;
using Term = std::shared_ptr<const Node>;

struct MacroArg {
    Term term;               // set for term arguments
    bool is_int = false;     // integer argument
    long value = 0;
    std::string var;         // "$j" style integer metavariable
};

struct Node {
    NodeKind kind = NodeKind::Prim;
    Prim prim = Prim::Id;
    Term a, b;
    std::string name;  // macro or metavariable name
    std::vector<MacroArg> args;
    std::optional<TypePair> ann;  // written annotation
    std::optional<TypePair> ty;   // filled in by typecheck
    Term expansion;               // typed expansion of a macro
    Loc loc;
};

Term make_prim(Prim p, Loc loc = {});
Term make_seq(Term a, Term b, Loc loc = {});
Term make_sum(Term a, Term b, Loc loc = {});
Term make_prod(Term a, Term b, Loc loc = {});
Term make_macro(std::string name, std::vector<MacroArg> args = {}, Loc loc = {});
Term make_meta(std::string name, Loc loc = {});
Term annotate(const Term& t, TypePair p);
Term annotate(const Term& t, Type src, Type dst);
MacroArg term_arg(Term t);
MacroArg int_arg(long v);

// a ; b ; ... right nested; empty input is invalid
Term seq_chain(const std::vector<Term>& parts);
// Flattens a ; chain (annotated Seq nodes stay atomic).
std::vector<Term> flatten_seq(const Term& t);
// Re-nests every ; chain to the right, keeping annotations and types of non-Seq nodes.
Term normalize_seq(const Term& t);
// n-fold repetition, n >= 1
Term power(const Term& t, int n);

// Structural equality; ignores locations, inferred types and cached expansions.
bool syntax_equal(const Term& a, const Term& b, bool compare_annotations = true);
size_t term_size(const Term& t);
// Drops inferred types and expansions (keeps written annotations).
Term strip_types(const Term& t);

// ---------------------------------------------------------------- parsing

struct SyntaxError : std::runtime_error {
    SyntaxError(int line, int col, std::vector<std::string> expected, const std::string& found);
    int line, col;
    std::vector<std::string> expected;
    std::string found;
};

Term parse(const std::string& text);
Type parse_type(const std::string& text);
TypePair parse_type_pair(const std::string& text);

std::string pretty(const Term& t);

// ---------------------------------------------------------------- typing

struct TypeError : std::runtime_error {
    TypeError(const std::string& msg, Term node) : std::runtime_error(msg), node(std::move(node)) {}
    Term node;
};

struct UnificationFailure : TypeError {
    UnificationFailure(const std::string& msg, Type left, Type right, Term node)
        : TypeError(msg, std::move(node)), left(std::move(left)), right(std::move(right)) {}
    Type left, right;
};

struct UnresolvedMetavariable : TypeError {
    using TypeError::TypeError;
};

// Infers concrete source/target types for every node. Macro nodes are
// expanded (see gates.hpp) and their typed expansion cached on the node.
Term typecheck(const Term& t, std::optional<TypePair> expected = std::nullopt);

// Syntactic dagger.
Term invert(const Term& t);

// Replaces every macro by its definition, recursively.
Term expand_macros(const Term& t);

}  // namespace sqrtpi
