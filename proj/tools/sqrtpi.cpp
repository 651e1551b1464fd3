#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sqrtpi/circuits.hpp"
#include "sqrtpi/rewrite.hpp"
#include "sqrtpi/semantics.hpp"

using namespace sqrtpi;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_circuit(const std::string& path, const std::string& text) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".circ") return true;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::istringstream w(line);
        std::string first;
        if (w >> first) return first == "qubits";
    }
    return false;
}

struct Loader {
    bool inline_terms = false;
    bool expand = false;

    // Untyped term for a file (or literal text with --expr); circuits are compiled.
    Term load(const std::string& arg) const {
        std::string text = inline_terms ? arg : read_source(arg);
        Term t;
        if (!inline_terms && looks_like_circuit(arg, text))
            t = circuits::compile(circuits::parse_circuit(text));
        else
            t = parse(text);
        return expand ? expand_macros(t) : t;
    }
};

std::string path_string(const rewrite::Path& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

void print_trace(const rewrite::Trace& tr) {
    std::cout << "input: " << pretty(tr.input) << "\n";
    int i = 0;
    for (const auto& s : tr.steps) {
        std::cout << ++i << ". " << s.rule << " " << rewrite::direction_name(s.direction) << " at " << path_string(s.path);
        if (s.phase) std::cout << " (w^" << s.phase << ")";
        std::cout << "\n   " << pretty(s.term) << "\n";
    }
    std::cout << "output: " << pretty(tr.output) << "\n";
    std::cout << "phase: " << tr.phase << "\n";
}

int check_rules(const std::string& family, bool verbose) {
    const auto& db = rewrite::rule_db();
    if (!family.empty()) {
        auto fams = db.families();
        if (std::find(fams.begin(), fams.end(), family) == fams.end()) throw UsageError("no rule family '" + family + "'");
    }
    auto reports = rewrite::validate_all(db, family);
    size_t width = 4;
    for (const auto& r : reports) width = std::max(width, r.name.size());
    size_t passed = 0;
    for (const auto& r : reports) {
        size_t ok = std::count_if(r.instances.begin(), r.instances.end(), [](const auto& x) { return x.passed; });
        std::cout << std::left << std::setw(static_cast<int>(width) + 2) << r.name << std::setw(11) << r.family
                  << (r.passed ? "pass " : "FAIL ") << ok << "/" << r.instances.size() << "\n";
        for (const auto& inst : r.instances)
            if (verbose || !inst.passed)
                std::cout << "    " << (inst.passed ? "ok   " : "fail ") << inst.label << ": " << inst.message << "\n";
        if (r.passed) ++passed;
    }
    std::cout << passed << "/" << reports.size() << " pass\n";
    return passed == reports.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolchain for the sqrt-Pi quantum combinator language"};
    app.require_subcommand(1, 1);
    Loader loader;
    app.add_flag("-e,--expr", loader.inline_terms, "Treat FILE arguments as literal term text");
    app.add_flag("--expand-macros", loader.expand, "Expand all macros to primitives before processing");

    std::string file, file_b;
    bool json = false, as_float = false, phase = false, verbose = false;
    int steps = 100;
    std::string family;

    auto* cmd_parse = app.add_subcommand("parse", "Parse a term and print it back");
    cmd_parse->add_option("FILE", file, "Term file, circuit file or '-'")->required();

    auto* cmd_type = app.add_subcommand("typecheck", "Print the type of a term");
    cmd_type->add_option("FILE", file)->required();

    auto* cmd_eval = app.add_subcommand("eval", "Print the exact matrix of a term");
    cmd_eval->add_option("FILE", file)->required();
    cmd_eval->add_flag("--json", json, "Emit {rows, cols, entries}");
    cmd_eval->add_flag("--float", as_float, "Approximate complex decimals (not authoritative)");

    auto* cmd_equiv = app.add_subcommand("equiv", "Compare two terms; exit 0 if equal, 1 if not");
    cmd_equiv->add_option("A", file)->required();
    cmd_equiv->add_option("B", file_b)->required();
    cmd_equiv->add_flag("--phase", phase, "Accept equality up to a power of w");

    auto* cmd_simp = app.add_subcommand("simplify", "Greedy rewriting with the rule catalog");
    cmd_simp->add_option("FILE", file)->required();
    cmd_simp->add_option("--steps", steps, "Step budget")->check(CLI::NonNegativeNumber);
    cmd_simp->add_flag("--json", json, "Emit the trace as JSON");

    auto* cmd_compile = app.add_subcommand("compile", "Compile a circuit file to a term");
    cmd_compile->add_option("CIRCUIT", file)->required();

    auto* cmd_check = app.add_subcommand("check-rules", "Validate the rule catalog");
    cmd_check->add_option("--family", family, "Only this family");
    cmd_check->add_flag("-v,--verbose", verbose, "List every instantiation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_parse) {
            std::cout << pretty(loader.load(file)) << "\n";
        } else if (*cmd_type) {
            Term t = typecheck(loader.load(file));
            std::cout << type_pair_to_string(*t->ty) << "\n";
        } else if (*cmd_eval) {
            ExactMatrix m = eval(typecheck(loader.load(file)));
            if (json)
                std::cout << m.to_json().dump() << "\n";
            else if (as_float)
                std::cout << m.to_float_string() << "\n";
            else
                std::cout << m.to_string() << "\n";
        } else if (*cmd_equiv) {
            Term a = loader.load(file), b = loader.load(file_b);
            auto cmp = rewrite::check_equiv(typecheck(a), b, phase ? PhaseMode::UpToOmegaPower : PhaseMode::Strict);
            std::cout << cmp.describe() << "\n";
            return cmp.verdict == Verdict::NotEqual ? 1 : 0;
        } else if (*cmd_simp) {
            auto tr = rewrite::simplify(loader.load(file), rewrite::rule_db(), steps);
            if (json)
                std::cout << tr.to_json().dump(2) << "\n";
            else
                print_trace(tr);
        } else if (*cmd_compile) {
            std::string text = loader.inline_terms ? file : read_source(file);
            Term t = circuits::compile(circuits::parse_circuit(text));
            std::cout << pretty(loader.expand ? expand_macros(t) : t) << "\n";
        } else if (*cmd_check) {
            return check_rules(family, verbose);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
