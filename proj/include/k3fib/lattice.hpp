#pragma once

#include "k3fib/abelian_group.hpp"

#include <utility>

namespace k3fib {

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Signature of a symmetric rational matrix via congruence diagonalization.
inline Signature signature_of(const RatMatrix& gram)
{
    RatMatrix g = gram;
    const std::size_t n = g.rows();
    Signature sig;
    auto sym_add = [&](std::size_t dst, std::size_t src, const Rational& f) {
        g.add_row_multiple(dst, src, f);
        g.add_col_multiple(dst, src, f);
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(g(i, i)) == 0) {
            std::size_t j = i + 1;
            while (j < n && sgn(g(j, j)) == 0) {
                ++j;
            }
            if (j < n) {
                g.swap_rows(i, j);
                g.swap_cols(i, j);
            } else {
                j = i + 1;
                while (j < n && sgn(g(i, j)) == 0) {
                    ++j;
                }
                if (j == n) {
                    ++sig.zero;
                    continue;
                }
                sym_add(i, j, Rational(1));
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (sgn(g(j, i)) != 0) {
                sym_add(j, i, Rational(-g(j, i) / g(i, i)));
            }
        }
        if (sgn(g(i, i)) > 0) {
            ++sig.positive;
        } else {
            ++sig.negative;
        }
    }
    return sig;
}

/// Basis rows expressed in coordinates of another basis; throws if some row is not in its integral span.
inline IntMatrix coordinates_in(const IntMatrix& basis, const IntMatrix& vectors)
{
    RatMatrix b = to_rational(basis);
    RatMatrix bt = b.transpose();
    RatMatrix v = to_rational(vectors);
    RatMatrix x = v * bt * inverse(b * bt);
    if (!(x * b == v)) {
        throw LatticeError("vector not in the rational span of the basis");
    }
    return to_integer(x);
}

/// Rational coordinates of vectors lying in the rational span of `basis`.
inline RatMatrix rational_coordinates_in(const RatMatrix& basis, const RatMatrix& vectors)
{
    RatMatrix bt = basis.transpose();
    RatMatrix x = vectors * bt * inverse(basis * bt);
    if (!(x * basis == vectors)) {
        throw LatticeError("vector not in the rational span of the basis");
    }
    return x;
}

/// True when the rows of `basis` span a primitive sublattice of Z^n.
inline bool is_primitive(const IntMatrix& basis)
{
    if (basis.rows() == 0) {
        return true;
    }
    auto h = hermite_normal_form(basis, false);
    IntMatrix sub = h.h;
    IntMatrix sat = saturate(sub);
    return quotient_group(coordinates_in(sat, sub), sat.rows()).is_trivial();
}

/// Index [super : sub] for full-rank sub inside super (both given as rows in common coordinates).
inline AbelianGroup index_group(const IntMatrix& sub, const IntMatrix& super)
{
    IntMatrix c = coordinates_in(super, sub);
    return quotient_group(c, super.rows());
}

/// Even/odd integral lattice given by its Gram matrix.
class IntegerLattice {
public:
    IntegerLattice() = default;

    explicit IntegerLattice(IntMatrix gram) : gram_(std::move(gram))
    {
        if (!gram_.is_symmetric()) {
            throw LatticeError("Gram matrix must be square and symmetric");
        }
    }

    const IntMatrix& gram() const noexcept { return gram_; }
    std::size_t rank() const noexcept { return gram_.rows(); }

    Integer determinant() const { return k3fib::determinant(gram_); }
    bool is_nondegenerate() const { return sgn(determinant()) != 0; }
    bool is_unimodular() const { return abs(determinant()) == 1; }

    bool is_even() const
    {
        for (std::size_t i = 0; i < rank(); ++i) {
            if (mpz_odd_p(gram_(i, i).get_mpz_t())) {
                return false;
            }
        }
        return true;
    }

    Signature signature() const { return signature_of(to_rational(gram_)); }
    bool is_positive_definite() const { return signature().positive == rank(); }
    bool is_negative_definite() const { return signature().negative == rank(); }

    Integer inner(const IntVector& u, const IntVector& v) const { return bilinear(u, gram_, v); }
    Integer norm(const IntVector& v) const { return inner(v, v); }

    /// Lattice spanned by the rows of `basis` (coordinates in this lattice).
    IntegerLattice sublattice(const IntMatrix& basis) const { return IntegerLattice(congruence(basis, gram_)); }

    /// Basis of {x : <x, b> = 0 for every row b}; always primitive.
    IntMatrix orthogonal_complement(const IntMatrix& basis) const
    {
        if (basis.rows() == 0) {
            return IntMatrix::identity(rank());
        }
        return left_kernel(gram_ * basis.transpose());
    }

    IntegerLattice scaled(const Integer& k) const
    {
        IntMatrix g = gram_;
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < rank(); ++j) {
                g(i, j) *= k;
            }
        }
        return IntegerLattice(g);
    }

    friend IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b)
    {
        return IntegerLattice(block_diagonal({a.gram_, b.gram_}));
    }

private:
    IntMatrix gram_;
};

} // namespace k3fib
