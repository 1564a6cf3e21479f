#include "k3fib/discriminant.hpp"
#include "k3fib/lll.hpp"
#include "k3fib/root_systems.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3fib;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = d(rng);
        }
    }
    return m;
}

// Laplace expansion, independent of Bareiss.
Integer laplace_det(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return m(0, 0);
    }
    Integer s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t j = 0, k = 0; j < n; ++j) {
                if (j != c) {
                    minor(i - 1, k++) = m(i, j);
                }
            }
        }
        Integer t = m(0, c) * laplace_det(minor);
        s += (c % 2 == 0) ? t : Integer(-t);
    }
    return s;
}

// gcd of all k x k minors; the product d_1...d_k of Smith invariants equals it.
Integer minor_gcd(const IntMatrix& m, std::size_t k)
{
    Integer g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> pick;
    pick = [&](std::size_t ri, std::size_t rstart, std::size_t ci, std::size_t cstart) {
        if (ri < k) {
            for (std::size_t r = rstart; r < m.rows(); ++r) {
                rows[ri] = r;
                pick(ri + 1, r + 1, ci, cstart);
            }
            return;
        }
        if (ci < k) {
            for (std::size_t c = cstart; c < m.cols(); ++c) {
                cols[ci] = c;
                pick(ri, rstart, ci + 1, c + 1);
            }
            return;
        }
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                sub(i, j) = m(rows[i], cols[j]);
            }
        }
        g = gcd_of(g, laplace_det(sub));
    };
    pick(0, 0, 0, 0);
    return g;
}

} // namespace

TEST(Numeric, RoundingAndModulo)
{
    EXPECT_EQ(floor_div(make_rational(-7, 2)), -4);
    EXPECT_EQ(ceil_div(make_rational(-7, 2)), -3);
    EXPECT_EQ(round_nearest(make_rational(5, 2)), 3);
    EXPECT_EQ(round_nearest(make_rational(-5, 2)), -2);
    EXPECT_EQ(mod_rational(make_rational(-1, 3), Rational(2)), make_rational(5, 3));
    Integer r;
    EXPECT_TRUE(exact_sqrt(Integer(144), r));
    EXPECT_EQ(r, 12);
    EXPECT_FALSE(exact_sqrt(Integer(12), r));
    auto f = factorize(Integer(360));
    EXPECT_EQ(f[Integer(2)], 3u);
    EXPECT_EQ(f[Integer(3)], 2u);
    EXPECT_EQ(f[Integer(5)], 1u);
    EXPECT_THROW(to_integer(RatVector{make_rational(1, 2)}), LatticeError);
}

TEST(Matrix, ProductAndTranspose)
{
    IntMatrix a{{1, 2}, {3, 4}};
    IntMatrix b{{0, 1}, {1, 0}};
    EXPECT_EQ(a * b, (IntMatrix{{2, 1}, {4, 3}}));
    EXPECT_EQ(a.transpose(), (IntMatrix{{1, 3}, {2, 4}}));
    EXPECT_THROW(a * IntMatrix(3, 1), LatticeError);
    EXPECT_THROW((IntMatrix{{1, 2}, {3}}), LatticeError);
}

TEST(NormalForms, DeterminantMatchesLaplace)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 6;
        IntMatrix m = random_matrix(rng, n, n, -4, 4);
        EXPECT_EQ(determinant(m), laplace_det(m));
    }
}

TEST(NormalForms, HermiteIsUnimodularTransform)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix a = random_matrix(rng, 2 + trial % 5, 3 + trial % 4, -6, 6);
        auto h = hermite_normal_form(a);
        EXPECT_EQ(abs(determinant(h.u)), 1);
        IntMatrix full = h.u * a;
        for (std::size_t i = 0; i < h.rank; ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                EXPECT_EQ(full(i, j), h.h(i, j));
            }
        }
        for (std::size_t i = h.rank; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                EXPECT_EQ(full(i, j), 0);
            }
        }
    }
}

TEST(NormalForms, SmithAgreesWithMinorGcds)
{
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix a = random_matrix(rng, 2 + trial % 3, 2 + (trial / 3) % 3, -5, 5);
        auto s = smith_normal_form(a);
        EXPECT_EQ(s.u * a * s.v, s.d);
        EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(a.cols()));
        Integer prod = 1;
        for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
            Integer g = minor_gcd(a, k);
            if (k <= s.rank) {
                prod *= s.d(k - 1, k - 1);
                EXPECT_EQ(prod, g);
                if (k > 1) {
                    EXPECT_EQ(s.d(k - 1, k - 1) % s.d(k - 2, k - 2), 0);
                }
            } else {
                EXPECT_EQ(g, 0);
            }
        }
    }
}

TEST(NormalForms, LeftKernelAndSaturation)
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix a = random_matrix(rng, 6, 3, -3, 3);
        IntMatrix k = left_kernel(a);
        EXPECT_EQ(k.rows(), 6 - rank_of(a));
        IntMatrix zero = k * a;
        EXPECT_EQ(zero, IntMatrix(k.rows(), a.cols()));
        EXPECT_TRUE(is_primitive(k));
    }
    IntMatrix b{{2, 0, 0}, {0, 3, 3}};
    IntMatrix sat = saturate(b);
    EXPECT_EQ(sat, (IntMatrix{{1, 0, 0}, {0, 1, 1}}));
    EXPECT_FALSE(is_primitive(b));
    EXPECT_EQ(index_group(b, sat).order(), 6);
}

TEST(AbelianGroups, InvariantsAndEmbedding)
{
    AbelianGroup g({Integer(6), Integer(2)});
    EXPECT_EQ(g.to_string(), "Z/2 x Z/6");
    EXPECT_EQ(g.order(), 12);
    EXPECT_EQ(AbelianGroup::parse("Z/2 x Z/6"), g);
    EXPECT_EQ(AbelianGroup({Integer(2), Integer(3)}).to_string(), "Z/6");
    EXPECT_TRUE(AbelianGroup::cyclic(2).embeds_in(g));
    EXPECT_TRUE(AbelianGroup({Integer(2), Integer(2)}).embeds_in(g));
    EXPECT_FALSE(AbelianGroup::cyclic(4).embeds_in(g));
    EXPECT_EQ(quotient_group(IntMatrix{{2, 0}, {0, 0}}, 2).to_string(), "Z x Z/2");
    EXPECT_THROW(AbelianGroup::parse("banana"), LatticeError);
}

TEST(Lattices, SignatureAndComplement)
{
    IntegerLattice t(IntMatrix{{6, 0}, {0, 2}});
    EXPECT_EQ(t.determinant(), 12);
    EXPECT_TRUE(t.is_even());
    EXPECT_TRUE(t.is_positive_definite());
    IntegerLattice u(IntMatrix{{0, 1}, {1, 0}});
    EXPECT_EQ(u.signature(), (Signature{1, 1, 0}));
    EXPECT_THROW(IntegerLattice(IntMatrix{{1, 2}, {3, 4}}), LatticeError);

    // Complement of (1,1) in the diagonal lattice <2> + <6>.
    IntegerLattice l(IntMatrix{{2, 0}, {0, 6}});
    IntMatrix c = l.orthogonal_complement(IntMatrix{{1, 1}});
    EXPECT_EQ(c, (IntMatrix{{3, -1}}));
}

TEST(Discriminant, TranscendentalForm)
{
    DiscriminantForm q(IntegerLattice(IntMatrix{{6, 0}, {0, 2}}));
    EXPECT_EQ(q.group().to_string(), "Z/2 x Z/6");
    // Value multiset of q computed directly from a^2/6 + b^2/2.
    std::multiset<Rational> seen;
    for (const auto& x : q.elements()) {
        seen.insert(q.q(x));
    }
    std::multiset<Rational> expect;
    for (long a = 0; a < 6; ++a) {
        for (long b = 0; b < 2; ++b) {
            expect.insert(mod_rational(make_rational(a * a, 6) + make_rational(b * b, 2), Rational(2)));
        }
    }
    EXPECT_EQ(seen, expect);
}

TEST(Discriminant, IsometryAndDirectSum)
{
    auto a5 = DiscriminantForm(IntegerLattice(RootType::A(5).gram()));
    auto a1 = DiscriminantForm(IntegerLattice(RootType::A(1).gram()));
    auto t = DiscriminantForm(IntegerLattice(IntMatrix{{6, 0}, {0, 2}}));
    auto sum = direct_sum(a5, a1);
    auto lat = DiscriminantForm(IntegerLattice(block_diagonal({RootType::A(5).gram(), RootType::A(1).gram()})));
    EXPECT_TRUE(is_isometric(sum, lat));
    EXPECT_TRUE(is_isometric(sum, t));
    EXPECT_FALSE(is_isometric(sum, t.negated()));
    auto other = DiscriminantForm(IntegerLattice(IntMatrix{{12}}));
    EXPECT_FALSE(is_isometric(t, other));
}

TEST(ShortVectors, EnumerationMatchesBoxSearch)
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 2 + trial % 3;
        IntMatrix b = random_matrix(rng, n, n, -2, 2);
        if (determinant(b) == 0) {
            continue;
        }
        IntMatrix g = b * b.transpose();
        Rational bound(6);
        auto found = short_vectors(g, bound);
        std::set<IntVector> got;
        for (auto v : found) {
            for (auto& x : v) {
                x = -x;
            }
            got.insert(v);
        }
        for (const auto& v : found) {
            got.insert(v);
        }
        // Box search: coordinates bounded by sqrt(bound * max eigen of g^-1) <= bound * |g^-1| entries.
        RatMatrix gi = inverse(g);
        Rational box_bound = 0;
        for (std::size_t i = 0; i < n; ++i) {
            box_bound = std::max(box_bound, Rational(gi(i, i) * bound));
        }
        long box = 1;
        while (Rational(box * box) < box_bound) {
            ++box;
        }
        std::set<IntVector> expect;
        IntVector x(n, Integer(-box));
        while (true) {
            Integer v = bilinear(x, g, x);
            if (v > 0 && Rational(v) <= bound) {
                expect.insert(x);
            }
            std::size_t i = 0;
            for (; i < n; ++i) {
                if (x[i] < box) {
                    x[i] += 1;
                    break;
                }
                x[i] = -box;
            }
            if (i == n) {
                break;
            }
        }
        EXPECT_EQ(got, expect) << "trial " << trial;
        EXPECT_EQ(2 * found.size(), expect.size());
    }
}

TEST(ShortVectors, LllKeepsTheLattice)
{
    IntMatrix g = RootType::E(8).gram();
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            g(i, j) = -g(i, j);
        }
    }
    IntMatrix skew = IntMatrix::identity(8);
    skew.add_row_multiple(0, 7, Integer(5));
    skew.add_row_multiple(3, 1, Integer(-4));
    IntMatrix g2 = congruence(skew, g);
    auto red = lll_reduce(g2);
    EXPECT_EQ(abs(determinant(red.transform)), 1);
    EXPECT_EQ(congruence(red.transform, g2), red.gram);
    EXPECT_EQ(vectors_of_norm(g2, Integer(2)).size(), 120u);
}
