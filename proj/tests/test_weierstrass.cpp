#include "k3fib/io.hpp"
#include "k3fib/weierstrass.hpp"

#include <gtest/gtest.h>

using namespace k3fib;

namespace {

Polynomial P(const std::string& s)
{
    return parse_polynomial(s);
}

ModelInput load(const std::string& name)
{
    return model_from_json(read_json_file(std::string(K3FIB_DATA_DIR) + "/models/" + name + ".json"));
}

std::map<std::string, std::string> fibers_by_place(const Configuration& c)
{
    std::map<std::string, std::string> out;
    for (const auto& f : c.fibers) {
        out[f.place.name()] = f.fiber.name();
    }
    return out;
}

} // namespace

TEST(Polynomials, ParserAndArithmetic)
{
    EXPECT_EQ(P("(t+1)^2"), P("t^2 + 2t + 1"));
    EXPECT_EQ(P("2t(t^2+1)"), P("2*t^3 + 2*t"));
    EXPECT_EQ(P("t/2 - 1/3"), Polynomial(std::vector<Rational>{make_rational(-1, 3), make_rational(1, 2)}));
    EXPECT_EQ(P("-(t^2-1)"), P("1 - t^2"));
    EXPECT_EQ(parse_polynomial("s^2+1", "s"), P("t^2+1"));
    EXPECT_EQ(P("0").degree(), -1);
    EXPECT_THROW(P("t^"), LatticeError);
    EXPECT_THROW(P("x+1"), LatticeError);
    EXPECT_THROW(P("(t+1"), LatticeError);
    EXPECT_THROW(P("t/0"), LatticeError);

    auto [q, r] = P("t^3 - 1").divmod(P("t - 1"));
    EXPECT_EQ(q, P("t^2 + t + 1"));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(valuation(P("t^3 (t+1)^4"), P("t+1")), 4);
    EXPECT_EQ(gcd(P("(t-1)^2 (t+2)"), P("(t-1)(t+3)")), P("t-1"));
    EXPECT_EQ(P("t^2+3t").reversed(4), P("t^2 + 3t^3"));
}

TEST(Polynomials, FactorizationUpToDegreeTwo)
{
    auto f = factor_low_degree(P("3 t^2 (t-1)^3 (t^2+t+1) (2t+4)"));
    std::vector<std::pair<Polynomial, int>> want{{P("t"), 2}, {P("t-1"), 3}, {P("t+2"), 1}, {P("t^2+t+1"), 1}};
    std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) {
        return a.first.degree() != b.first.degree() ? a.first.degree() < b.first.degree()
                                                    : a.first.to_string() < b.first.to_string();
    });
    ASSERT_EQ(f.size(), want.size());
    for (const auto& w : want) {
        EXPECT_TRUE(std::find(f.begin(), f.end(), w) != f.end()) << w.first.to_string();
    }
    // (t^2 - 2)(t^2 + 3) has no rational roots but splits into quadratics.
    auto g = factor_low_degree(P("(t^2-2)(t^2+3)"));
    EXPECT_EQ(g.size(), 2u);
    EXPECT_THROW(factor_low_degree(P("t^3 - 2")), UnsupportedFactor);
}

TEST(Weierstrass, LegendreDiscriminant)
{
    // y^2 = x (x - 1) (x - t)
    WeierstrassModel m{P("0"), P("-(t+1)"), P("0"), P("t"), P("0")};
    auto iv = invariants_c4_c6_delta(m);
    EXPECT_EQ(iv.delta, P("16 t^2 (t-1)^2"));
    auto cfg = analyze_configuration(m, false);
    EXPECT_EQ(cfg.euler_sum, 12);
    auto by = fibers_by_place(cfg);
    EXPECT_EQ(by["t=0"], "I2");
    EXPECT_EQ(by["t=1"], "I2");
    EXPECT_EQ(by["t=oo"], "I2*");
    EXPECT_THROW(analyze_configuration(m, true), LatticeError);
}

TEST(Weierstrass, SingularCubicIsRejected)
{
    WeierstrassModel cusp{P("0"), P("0"), P("0"), P("0"), P("0")};
    EXPECT_THROW(invariants_c4_c6_delta(cusp), LatticeError);
    WeierstrassModel node{P("0"), P("t"), P("0"), P("0"), P("0")};
    EXPECT_THROW(invariants_c4_c6_delta(node), LatticeError);
}

TEST(Weierstrass, KodairaTable)
{
    EXPECT_EQ(kodaira_from_orders(0, 0, 0).name(), "I0");
    EXPECT_EQ(kodaira_from_orders(0, 0, 5).name(), "I5");
    EXPECT_EQ(kodaira_from_orders(1, 1, 2).name(), "II");
    EXPECT_EQ(kodaira_from_orders(1, 2, 3).name(), "III");
    EXPECT_EQ(kodaira_from_orders(2, 2, 4).name(), "IV");
    EXPECT_EQ(kodaira_from_orders(2, 3, 6).name(), "I0*");
    EXPECT_EQ(kodaira_from_orders(3, 3, 6).name(), "I0*");
    EXPECT_EQ(kodaira_from_orders(2, 3, 10).name(), "I4*");
    EXPECT_EQ(kodaira_from_orders(3, 4, 8).name(), "IV*");
    EXPECT_EQ(kodaira_from_orders(3, 5, 9).name(), "III*");
    EXPECT_EQ(kodaira_from_orders(4, 5, 10).name(), "II*");
    EXPECT_EQ(kodaira_from_orders(std::nullopt, 5, 10).name(), "II*");
    EXPECT_EQ(kodaira_from_orders(4, 6, 13).name(), "I1");
    // Euler number: number of components for I_n (n >= 1), one more than that for additive fibers.
    for (const auto& f : {kodaira_from_orders(0, 0, 1), kodaira_from_orders(0, 0, 7), kodaira_from_orders(1, 1, 2),
                          kodaira_from_orders(1, 2, 3), kodaira_from_orders(2, 2, 4), kodaira_from_orders(2, 3, 9),
                          kodaira_from_orders(3, 4, 8), kodaira_from_orders(3, 5, 9), kodaira_from_orders(4, 5, 10)}) {
        const int comps = f.dynkin() ? f.dynkin()->rank + 1 : 1;
        EXPECT_EQ(f.euler(), comps + (f.kind == KodairaKind::I ? 0 : 1)) << f.name();
    }
}

struct ModelCase {
    const char* file;
    const char* summary;
    const char* dynkin;
};

class ModelFiles : public ::testing::TestWithParam<ModelCase> {};

TEST_P(ModelFiles, FiberConfiguration)
{
    const auto c = GetParam();
    auto in = load(c.file);
    auto cfg = analyze_configuration(in.model, in.k3);
    EXPECT_EQ(cfg.summary(), c.summary);
    EXPECT_EQ(type_name(cfg.dynkin()), type_name(parse_type(c.dynkin)));
    EXPECT_EQ(cfg.euler_sum, 24);
}

INSTANTIATE_TEST_SUITE_P(
    K3Models, ModelFiles,
    ::testing::Values(ModelCase{"three_i6", "3 I2 + 3 I6", "A1^3+A5^3"},
                      ModelCase{"two_i1star", "2 I1* + I8 + 2 I1", "A7+D5^2"},
                      ModelCase{"two_i6_i0star", "I4 + 2 I6 + I0* + 2 I1", "A3+A5^2+D4"},
                      ModelCase{"two_ii_star", "2 II* + I2 + 2 I1", "A1+E8^2"},
                      ModelCase{"two_iii_star", "3 I2 + 2 III*", "A1^3+E7^2"},
                      ModelCase{"two_i4star", "2 I4* + I2 + 2 I1", "A1+D8^2"},
                      ModelCase{"two_i4star_b", "2 I4* + I2 + 2 I1", "A1+D8^2"}));

TEST(Weierstrass, PlacesOfTheThreeI6Model)
{
    auto by = fibers_by_place(analyze_configuration(load("three_i6").model));
    EXPECT_EQ(by["t=1"], "I6");
    EXPECT_EQ(by["t=-1"], "I6");
    EXPECT_EQ(by["t=oo"], "I6");
    EXPECT_EQ(by["t=0"], "I2");
    EXPECT_EQ(by["t=3"], "I2");
    EXPECT_EQ(by["t=-3"], "I2");
}

TEST(Weierstrass, RationalPointsLieOnTheCurves)
{
    // Sections of the two 2 I4* models: x = t (t-1)^2, y = -2 t^2 (t^2-1) and x = 4, y = 2 (t+2)^2.
    auto on_curve = [](const WeierstrassModel& m, const Polynomial& x, const Polynomial& y) {
        return y * y + m.a1 * x * y + m.a3 * y == x.pow(3) + m.a2 * x * x + m.a4 * x + m.a6;
    };
    EXPECT_TRUE(on_curve(load("two_i4star").model, P("t (t-1)^2"), P("-2 t^2 (t^2-1)")));
    EXPECT_TRUE(on_curve(load("two_i4star_b").model, P("4"), P("2 (t+2)^2")));
    EXPECT_FALSE(on_curve(load("two_i4star_b").model, P("4"), P("2 (t+1)^2")));
}

TEST(Weierstrass, CoordinateChangeKeepsFibers)
{
    for (const char* name : {"three_i6", "two_i1star", "two_i6_i0star", "two_iii_star"}) {
        const auto m = load(name).model;
        const auto before = analyze_configuration(m);
        // Keep deg a_i <= 2i so the fiber at infinity is untouched.
        const auto moved = change_coordinates(m, make_rational(2, 3), P("t^2 - 1"), P("t"), P("3t + 1"));
        const auto after = analyze_configuration(moved);
        EXPECT_EQ(after.summary(), before.summary()) << name;
        EXPECT_EQ(fibers_by_place(after), fibers_by_place(before)) << name;
        auto a = invariants_c4_c6_delta(m);
        auto b = invariants_c4_c6_delta(moved);
        Rational u12 = 1;
        for (int i = 0; i < 12; ++i) {
            u12 *= make_rational(2, 3);
        }
        EXPECT_EQ(b.delta * Polynomial(u12), a.delta) << name;
    }
}

TEST(Weierstrass, IrreducibleCubicInTheDiscriminantIsReported)
{
    WeierstrassModel m{P("0"), P("0"), P("0"), P("0"), P("t^3 - 2")};
    EXPECT_THROW(analyze_configuration(m), UnsupportedFactor);
}
