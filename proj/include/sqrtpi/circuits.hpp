#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sqrtpi/lang.hpp"

// Qubit circuits over (1+1)^n. Wire 0 is the top wire and the most
// significant tensor factor; tensors nest to the right: 2 * (2 * (...)).
namespace sqrtpi::circuits {

struct CircuitError : std::runtime_error {
    CircuitError(int line, const std::string& msg);
    int line;  // 0 when not tied to input text
};

struct CircuitGate {
    std::string gate;
    std::vector<int> wires;
    int line = 0;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<CircuitGate> gates;
};

std::vector<std::string> gate_names();
bool is_gate(const std::string& name);
int gate_arity(const std::string& name);
// Term for a gate acting on qubit_type(arity).
Term gate_term(const std::string& name);

// Places a k-qubit gate on the given wires of an n-qubit register.
Term place(const Term& gate, const std::vector<int>& wires, int n);

Term compile(const Circuit& c);

// "qubits N" followed by "name w1 [w2 [w3]]" statements; newline or ';'
// separated, '#' starts a comment.
Circuit parse_circuit(const std::string& text);
std::string to_text(const Circuit& c);

}  // namespace sqrtpi::circuits
