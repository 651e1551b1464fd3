#include <gtest/gtest.h>

#include "sqrtpi/semantics.hpp"
#include "test_support.hpp"

using namespace sqrtpi;
using C = DyadicCyclotomic;

namespace {

ExactMatrix of(const std::string& s) { return eval(typecheck(parse(s))); }
ExactMatrix of(const std::string& s, const std::string& ty) { return eval(typecheck(parse(s), parse_type_pair(ty))); }

ExactMatrix perm(const std::vector<size_t>& image) {
    ExactMatrix m(image.size(), image.size());
    for (size_t c = 0; c < image.size(); ++c) m(image[c], c) = C(1);
    return m;
}

}  // namespace

TEST(Matrix, ComposeKroneckerDirectSum) {
    ExactMatrix x = of("x"), z = of("z");
    EXPECT_EQ(compose(x, z), of("z ; x"));
    EXPECT_EQ(kronecker(x, z), of("x * z"));
    EXPECT_EQ(direct_sum(x, z), of("x + z"));
    EXPECT_EQ(kronecker(x, ExactMatrix::identity(2)), perm({2, 3, 0, 1}));  // left factor is the high bit
    EXPECT_EQ(direct_sum(ExactMatrix::identity(1), x).rows(), 3u);
    EXPECT_THROW(compose(x, of("cx")), DimensionMismatch);
}

TEST(Matrix, Adjoint) {
    for (const char* g : {"h", "t", "v", "csx", "ccx"}) {
        ExactMatrix m = of(g);
        EXPECT_EQ(compose(m, adjoint(m)), ExactMatrix::identity(m.rows())) << g;
        EXPECT_TRUE(m.is_unitary());
        EXPECT_EQ(adjoint(adjoint(m)), m);
    }
    ExactMatrix notu = ExactMatrix::identity(2).scaled(C(2));
    EXPECT_FALSE(notu.is_unitary());
}

TEST(Primitives, Structural) {
    EXPECT_EQ(of("swap+", "1 + 2 <-> 2 + 1"), perm({2, 0, 1}));
    EXPECT_EQ(of("swap*", "2 * 2 <-> 2 * 2"), perm({0, 2, 1, 3}));
    EXPECT_EQ(of("assocr*", "(2 * 2) * 2 <-> 2 * (2 * 2)"), ExactMatrix::identity(8));
    EXPECT_EQ(of("assocl+", "1 + 2 <-> (1 + 1) + 1"), ExactMatrix::identity(3));
    EXPECT_EQ(of("dist", "(1 + 1) * 2 <-> 1 * 2 + 1 * 2"), ExactMatrix::identity(4));
    EXPECT_EQ(of("unite*l", "1 * 2 <-> 2"), ExactMatrix::identity(2));
    EXPECT_EQ(of("unite+l", "0 + 2 <-> 2"), ExactMatrix::identity(2));
    // (a * b) with a = 2, b = 1 + 1 + 1: swap* permutes row-major indices
    EXPECT_EQ(of("swap*", "2 * (1 + (1 + 1)) <-> (1 + (1 + 1)) * 2"), perm({0, 2, 4, 1, 3, 5}));
}

TEST(Primitives, EmptyTypes) {
    ExactMatrix a = prim_matrix(Prim::Absorbl, parse_type("0 * 2"));
    EXPECT_EQ(a.rows(), 0u);
    EXPECT_EQ(a.cols(), 0u);
}

TEST(Primitives, ScalarsAndV) {
    EXPECT_EQ(prim_matrix(Prim::W, one_type())(0, 0), C::omega_pow(1));
    EXPECT_EQ(prim_matrix(Prim::Wi, one_type())(0, 0), C::omega_pow(7));
    ExactMatrix v = prim_matrix(Prim::V, two_type());
    EXPECT_EQ(compose(v, v), of("x"));
    EXPECT_EQ(compose(v, prim_matrix(Prim::Vi, two_type())), ExactMatrix::identity(2));
}

TEST(Compare, Modes) {
    ExactMatrix x = of("x"), z = of("z");
    auto c = equal_matrices(x, x, PhaseMode::Strict);
    EXPECT_EQ(c.verdict, Verdict::Equal);
    EXPECT_EQ(c.describe(), "equal");
    c = equal_matrices(x, z, PhaseMode::Strict);
    EXPECT_EQ(c.verdict, Verdict::NotEqual);
    ASSERT_TRUE(c.first_difference);
    EXPECT_EQ(*c.first_difference, std::make_pair(size_t(0), size_t(0)));
    EXPECT_EQ(c.describe(), "not_equal");
    EXPECT_EQ(equal_matrices(x, z, PhaseMode::UpToOmegaPower).verdict, Verdict::NotEqual);
    EXPECT_EQ(equal_matrices(x, of("h"), PhaseMode::Strict).verdict, Verdict::NotEqual);
    EXPECT_THROW(equal_matrices(x, of("cx"), PhaseMode::UpToOmegaPower), DimensionMismatch);
}

TEST(Compare, GlobalPhase) {
    // (s ; h)^3 = w . I
    auto c = equal_matrices(of("(s ; h) ^ 3"), ExactMatrix::identity(2), PhaseMode::UpToOmegaPower);
    EXPECT_EQ(c.verdict, Verdict::EqualWithPhase);
    EXPECT_EQ(c.phase, 1);
    EXPECT_EQ(c.describe(), "equal_with_phase 1");
    EXPECT_EQ(equal_matrices(of("(s ; h) ^ 3"), ExactMatrix::identity(2), PhaseMode::Strict).verdict, Verdict::NotEqual);
    for (int k = 0; k < 8; ++k) {
        auto d = equal_matrices(of("h").scaled(C::omega_pow(k)), of("h"), PhaseMode::UpToOmegaPower);
        EXPECT_EQ(d.phase, k);
        EXPECT_EQ(d.verdict, k == 0 ? Verdict::Equal : Verdict::EqualWithPhase);
    }
}

TEST(Output, ExactText) {
    EXPECT_EQ(of("h").to_string(), "(1/√2)\n[ 1  1 ]\n[ 1 -1 ]");
    EXPECT_EQ(of("x").to_string(), "[ 0 1 ]\n[ 1 0 ]");
    EXPECT_EQ(of("v").to_string(), "(1/2)\n[ -1+i -1-i ]\n[ -1-i -1+i ]");
    EXPECT_EQ(of("t").to_string(), "[ 1 0 ]\n[ 0 w ]");
}

TEST(Output, FloatText) {
    std::string s = of("t").to_float_string();
    EXPECT_NE(s.find("0.707107+0.707107i"), std::string::npos);
}

TEST(Output, JsonRoundTrip) {
    for (const char* g : {"h", "ccx", "csx", "t ; v"}) {
        ExactMatrix m = of(g);
        auto j = m.to_json();
        EXPECT_EQ(j["rows"], m.rows());
        EXPECT_EQ(ExactMatrix::from_json(j), m) << g;
        EXPECT_EQ(ExactMatrix::from_json(nlohmann::json::parse(j.dump())), m);
    }
}

TEST(Eval, MacroAndExpansionAgree) {
    for (const char* g : {"h", "k", "ccx", "ctrl(h)", "scale(w, cz)", "dx(3, 1, 2)", "csxdg ; ncx"}) {
        EXPECT_EQ(of(g), eval(typecheck(expand_macros(parse(g))))) << g;
    }
}

TEST(Eval, UntypedInputIsChecked) {
    EXPECT_EQ(eval(parse("h ; h")), ExactMatrix::identity(2));
    EXPECT_THROW(eval(parse("h ; cx")), TypeError);
}
