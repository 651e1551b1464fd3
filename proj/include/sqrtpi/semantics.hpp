#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqrtpi/exactnum.hpp"
#include "sqrtpi/lang.hpp"

namespace sqrtpi {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    ExactMatrix(size_t rows, size_t cols, std::vector<DyadicCyclotomic> entries);

    static ExactMatrix identity(size_t n);
    // rows given as nested initializer lists of ring elements
    static ExactMatrix from_rows(const std::vector<std::vector<DyadicCyclotomic>>& rows);
    static ExactMatrix from_json(const nlohmann::json& j);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const DyadicCyclotomic& operator()(size_t r, size_t c) const { return e_[r * cols_ + c]; }
    DyadicCyclotomic& operator()(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const std::vector<DyadicCyclotomic>& entries() const { return e_; }

    ExactMatrix scaled(const DyadicCyclotomic& s) const;
    bool is_unitary() const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    nlohmann::json to_json() const;
    // Exact text: optional common prefix such as (1/√2), then one bracketed row per line.
    std::string to_string() const;
    // Approximate complex decimals; display only.
    std::string to_float_string(int digits = 6) const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<DyadicCyclotomic> e_;
};

// a . b  (requires a.cols == b.rows)
ExactMatrix compose(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b);
// left factor most significant
ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix adjoint(const ExactMatrix& a);

// Denotation of a term. Untyped input is type checked first.
ExactMatrix eval(const Term& t);
// Matrix of a primitive at a concrete source type.
ExactMatrix prim_matrix(Prim p, const Type& src);

enum class PhaseMode { Strict, UpToOmegaPower };
enum class Verdict { Equal, EqualWithPhase, NotEqual };

struct Comparison {
    Verdict verdict = Verdict::NotEqual;
    int phase = 0;  // a = w^phase . b
    std::optional<std::pair<size_t, size_t>> first_difference;  // strict comparison
    std::string describe() const;
};

Comparison equal_matrices(const ExactMatrix& a, const ExactMatrix& b, PhaseMode mode);

}  // namespace sqrtpi
