#include "k3fib/lll.hpp"
#include "k3fib/root_systems.hpp"

#include <gtest/gtest.h>

using namespace k3fib;

namespace {

std::vector<RootType> small_types()
{
    std::vector<RootType> out;
    for (int n = 1; n <= 16; ++n) {
        out.push_back(RootType::A(n));
    }
    for (int n = 4; n <= 16; ++n) {
        out.push_back(RootType::D(n));
    }
    for (int n = 6; n <= 8; ++n) {
        out.push_back(RootType::E(n));
    }
    return out;
}

std::size_t closed_form_roots(const RootType& t)
{
    const std::size_t n = t.rank;
    switch (t.family) {
    case Family::A: return n * (n + 1);
    case Family::D: return 2 * n * (n - 1);
    case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    }
    return 0;
}

} // namespace

TEST(RootSystems, RootCountsMatchClosedForms)
{
    for (const auto& t : small_types()) {
        EXPECT_EQ(t.root_count(), closed_form_roots(t)) << t.name();
        EXPECT_EQ(2 * positive_roots(t).size(), closed_form_roots(t)) << t.name();
    }
}

TEST(RootSystems, EnumeratedRootsMatchUpToRankTen)
{
    // Short-vector enumeration on the Gram matrix is independent of the combinatorial root lists.
    for (const auto& t : small_types()) {
        if (t.rank > 10) {
            continue;
        }
        EXPECT_EQ(2 * enumerate_roots(t.gram()).size(), closed_form_roots(t)) << t.name();
    }
}

TEST(RootSystems, GramInvariants)
{
    for (const auto& t : small_types()) {
        IntegerLattice l(t.gram());
        EXPECT_TRUE(l.is_even());
        EXPECT_TRUE(l.is_negative_definite()) << t.name();
        EXPECT_EQ(abs(l.determinant()), t.discriminant()) << t.name();
        const long expect_det = t.family == Family::A ? t.rank + 1 : t.family == Family::D ? 4 : 9 - t.rank;
        EXPECT_EQ(t.discriminant(), expect_det) << t.name();
        EXPECT_EQ(static_cast<std::size_t>(t.coxeter()) * t.rank, t.root_count()) << t.name();
    }
}

TEST(RootSystems, HighestRootHasNormMinusTwo)
{
    for (const auto& t : small_types()) {
        IntegerLattice l(t.gram());
        EXPECT_EQ(l.norm(highest_root(t)), -2) << t.name();
    }
}

TEST(RootSystems, AnalyzeRecoversTypeOfDirectSum)
{
    const RootLatticeType want = parse_type("A1+A5+D6+E7");
    std::vector<IntMatrix> blocks;
    for (const auto& t : want) {
        blocks.push_back(t.gram());
    }
    IntMatrix g = block_diagonal(blocks);
    RootSystemData data = analyze_roots(enumerate_roots(g), g);
    EXPECT_EQ(type_name(data.type()), type_name(want));
    EXPECT_EQ(data.rank(), 19);
    IntMatrix simple = data.simple_roots(g.rows());
    EXPECT_EQ(abs(determinant(congruence(simple, g))), 2 * 6 * 4 * 2);
}

TEST(RootSystems, ParseAndPrint)
{
    EXPECT_EQ(type_name(parse_type("E8^2+A1")), "A1+E8+E8");
    EXPECT_EQ(type_name(parse_type("0")), "0");
    EXPECT_THROW(parse_type("F4"), LatticeError);
    EXPECT_THROW(parse_type("D3"), LatticeError);
}
