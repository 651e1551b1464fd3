#pragma once

#include <string>
#include <vector>

#include "sqrtpi/lang.hpp"

// Named gates and constructions, stored as terms. A macro is written in the
// surface syntax as an identifier, optionally applied to arguments:
//   x  h  cx  p(w)  ctrl(h)  scale(w, x)  dx(4, 1, 3)  inv(t)
namespace sqrtpi::gates {

// One step of macro expansion. Throws std::invalid_argument for unknown
// names, wrong arity, or unresolved integer variables.
Term expand_once(const Node& macro);

// Syntactic dagger of a macro application.
Term invert_macro(const Node& macro);

bool is_macro(const std::string& name);
std::vector<std::string> macro_names();

// s . c  as  uniti*l ; (s * c) ; unite*l
Term scalar_mul(const Term& s, const Term& c);
// dist ; (unite*l + unite*l) at (1+1)*a <-> a+a
Term mat(const Type& a);
Term mat_inverse(const Type& a);
Term ctrl(const Term& m);
Term nctrl(const Term& m);
Term phase_gate(const Term& s);
// w^k for k >= 0 (id at 1 for k = 0)
Term omega_term(int k);

// Fully expanded term for a gate name (case-insensitive): X Z S T H K V CX CZ
// CCX SWAP Midswap ... as well as every other nullary macro.
Term named_gate(const std::string& name);

// Generators over unit_sum_type(n) with 1-based components.
Term d_phase(int n, int j);           // i on component j
Term d_x(int n, int j, int k);        // X on components j, k
Term d_k(int n, int j, int k);        // K on components j, k

}  // namespace sqrtpi::gates
