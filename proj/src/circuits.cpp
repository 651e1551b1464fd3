#include "sqrtpi/circuits.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sqrtpi::circuits {

CircuitError::CircuitError(int line, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}

namespace {

struct GateInfo {
    int arity;
    std::string term;  // surface syntax
};

const std::map<std::string, GateInfo>& table() {
    static const std::map<std::string, GateInfo> t = {
        {"x", {1, "x"}},       {"z", {1, "z"}},         {"s", {1, "s"}},         {"sdg", {1, "sdg"}},
        {"t", {1, "t"}},       {"tdg", {1, "tdg"}},     {"h", {1, "h"}},         {"k", {1, "k"}},
        {"v", {1, "v"}},       {"sx", {1, "v"}},        {"vdg", {1, "vi"}},      {"sxdg", {1, "vi"}},
        {"cx", {2, "cx"}},     {"cz", {2, "cz"}},       {"ch", {2, "ch"}},       {"ct", {2, "ct"}},
        {"cs", {2, "cs"}},     {"swap", {2, "swap"}},   {"csx", {2, "csx"}},     {"csxdg", {2, "csxdg"}},
        {"ncx", {2, "ncx"}},   {"nch", {2, "nch"}},     {"ccx", {3, "ccx"}},
    };
    return t;
}

const GateInfo& info(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end()) throw CircuitError(0, "unknown gate '" + name + "'");
    return it->second;
}

Term id2() { return annotate(make_prim(Prim::Id), two_type(), two_type()); }

// 2*(2*(...*(2*R))) with k leading factors  ->  T_k * R
Term reassoc(int k) {
    if (k <= 1) return nullptr;
    if (k == 2) return make_prim(Prim::AssoclT);
    return make_seq(make_prod(id2(), reassoc(k - 1)), make_prim(Prim::AssoclT));
}

// gate on wires p .. p+k-1
Term place_adjacent(const Term& g, int k, int p, int n) {
    if (p > 0) return make_prod(id2(), place_adjacent(g, k, p - 1, n - 1));
    if (k == n) return g;
    Term core = make_prod(g, make_prim(Prim::Id));
    Term r = reassoc(k);
    if (!r) return core;
    return seq_chain({r, core, invert(r)});
}

}  // namespace

std::vector<std::string> gate_names() {
    std::vector<std::string> out;
    for (const auto& [n, _] : table()) out.push_back(n);
    return out;
}

bool is_gate(const std::string& name) { return table().count(name) > 0; }
int gate_arity(const std::string& name) { return info(name).arity; }
Term gate_term(const std::string& name) { return parse(info(name).term); }

Term place(const Term& gate, const std::vector<int>& wires, int n) {
    int k = static_cast<int>(wires.size());
    if (n < 1) throw CircuitError(0, "a circuit needs at least one qubit");
    if (k < 1 || k > n) throw CircuitError(0, "gate arity " + std::to_string(k) + " does not fit " + std::to_string(n) + " qubits");
    std::set<int> seen;
    for (int w : wires) {
        if (w < 0 || w >= n) throw CircuitError(0, "wire " + std::to_string(w) + " out of range 0.." + std::to_string(n - 1));
        if (!seen.insert(w).second) throw CircuitError(0, "wire " + std::to_string(w) + " used twice");
    }
    int q = *std::min_element(wires.begin(), wires.end());
    std::vector<int> arr(n);
    for (int i = 0; i < n; ++i) arr[i] = i;
    Term swap_gate = make_macro("swap");
    std::vector<Term> perm;
    for (int i = 0; i < k; ++i) {
        int pos = static_cast<int>(std::find(arr.begin(), arr.end(), wires[i]) - arr.begin());
        while (pos > q + i) {
            perm.push_back(place_adjacent(swap_gate, 2, pos - 1, n));
            std::swap(arr[pos - 1], arr[pos]);
            --pos;
        }
    }
    Type t = qubit_type(n);
    Term core = place_adjacent(gate, k, q, n);
    if (perm.empty()) return annotate(core, t, t);
    std::vector<Term> parts = perm;
    parts.push_back(core);
    for (auto it = perm.rbegin(); it != perm.rend(); ++it) parts.push_back(*it);
    return annotate(seq_chain(parts), t, t);
}

Term compile(const Circuit& c) {
    Type t = qubit_type(c.n_qubits);
    if (c.gates.empty()) return annotate(make_prim(Prim::Id), t, t);
    std::vector<Term> parts;
    for (const auto& g : c.gates) {
        try {
            const auto& gi = info(g.gate);
            if (static_cast<int>(g.wires.size()) != gi.arity)
                throw CircuitError(g.line, "gate " + g.gate + " takes " + std::to_string(gi.arity) + " wire(s)");
            parts.push_back(place(gate_term(g.gate), g.wires, c.n_qubits));
        } catch (const CircuitError& e) {
            if (e.line == 0 && g.line > 0) throw CircuitError(g.line, e.what());
            throw;
        }
    }
    return annotate(seq_chain(parts), t, t);
}

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    bool have_header = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        raw = raw.substr(0, raw.find('#'));
        std::istringstream stmts(raw);
        std::string stmt;
        while (std::getline(stmts, stmt, ';')) {
            std::istringstream words(stmt);
            std::string name;
            if (!(words >> name)) continue;
            std::vector<std::string> rest;
            for (std::string w; words >> w;) rest.push_back(w);
            auto number = [&](const std::string& s) {
                if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 6)
                    throw CircuitError(line, "expected a non-negative integer, found '" + s + "'");
                return std::stoi(s);
            };
            if (!have_header) {
                if (name != "qubits" || rest.size() != 1) throw CircuitError(line, "expected 'qubits N'");
                c.n_qubits = number(rest[0]);
                if (c.n_qubits < 1) throw CircuitError(line, "qubit count must be positive");
                have_header = true;
                continue;
            }
            std::transform(name.begin(), name.end(), name.begin(), ::tolower);
            if (!is_gate(name)) throw CircuitError(line, "unknown gate '" + name + "'");
            CircuitGate g{name, {}, line};
            for (const auto& w : rest) g.wires.push_back(number(w));
            int arity = gate_arity(name);
            if (static_cast<int>(g.wires.size()) != arity)
                throw CircuitError(line, "gate " + name + " takes " + std::to_string(arity) + " wire(s), got " +
                                             std::to_string(g.wires.size()));
            std::set<int> seen;
            for (int w : g.wires) {
                if (w >= c.n_qubits)
                    throw CircuitError(line, "wire " + std::to_string(w) + " out of range 0.." + std::to_string(c.n_qubits - 1));
                if (!seen.insert(w).second) throw CircuitError(line, "wire " + std::to_string(w) + " used twice");
            }
            c.gates.push_back(std::move(g));
        }
    }
    if (!have_header) throw CircuitError(line, "missing 'qubits N' header");
    return c;
}

std::string to_text(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits << "\n";
    for (const auto& g : c.gates) {
        out << g.gate;
        for (int w : g.wires) out << ' ' << w;
        out << "\n";
    }
    return out.str();
}

}  // namespace sqrtpi::circuits
