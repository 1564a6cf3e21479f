#pragma once

#include "k3fib/matrix.hpp"

#include <optional>

namespace k3fib {

struct HermiteResult {
    IntMatrix h;      // nonzero rows of the row-style Hermite form
    IntMatrix u;      // unimodular, u * input == full form (zero rows at the bottom)
    std::size_t rank = 0;
};

/// Row-style Hermite normal form: pivots positive, entries above a pivot reduced to [0, pivot).
inline HermiteResult hermite_normal_form(const IntMatrix& a, bool track_transform = true)
{
    IntMatrix h = a;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix u = track_transform ? IntMatrix::identity(m) : IntMatrix();
    std::size_t r = 0;

    auto swap_r = [&](std::size_t i, std::size_t j) {
        h.swap_rows(i, j);
        if (track_transform) {
            u.swap_rows(i, j);
        }
    };
    auto add_r = [&](std::size_t dst, std::size_t src, const Integer& f) {
        h.add_row_multiple(dst, src, f);
        if (track_transform) {
            u.add_row_multiple(dst, src, f);
        }
    };

    for (std::size_t col = 0; col < n && r < m; ++col) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t i = r; i < m; ++i) {
                if (sgn(h(i, col)) != 0 && (!best || abs(h(i, col)) < abs(h(*best, col)))) {
                    best = i;
                }
            }
            if (!best) {
                break;
            }
            swap_r(r, *best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (sgn(h(i, col)) == 0) {
                    continue;
                }
                Integer q = floor_div(Rational(h(i, col), h(r, col)));
                add_r(i, r, Integer(-q));
                if (sgn(h(i, col)) != 0) {
                    clean = false;
                }
            }
            if (clean) {
                break;
            }
        }
        if (sgn(h(r, col)) == 0) {
            continue;
        }
        if (sgn(h(r, col)) < 0) {
            for (std::size_t j = 0; j < n; ++j) {
                h(r, j) = -h(r, j);
            }
            if (track_transform) {
                for (std::size_t j = 0; j < m; ++j) {
                    u(r, j) = -u(r, j);
                }
            }
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(Rational(h(i, col), h(r, col)));
            add_r(i, r, Integer(-q));
        }
        ++r;
    }

    HermiteResult out;
    out.rank = r;
    out.h = h.rows_subset(0, r);
    out.u = std::move(u);
    return out;
}

/// Basis (as rows) of the integer vectors x with x * a == 0.
inline IntMatrix left_kernel(const IntMatrix& a)
{
    auto hr = hermite_normal_form(a, true);
    const std::size_t m = a.rows();
    IntMatrix k(m - hr.rank, m);
    for (std::size_t i = hr.rank; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            k(i - hr.rank, j) = hr.u(i, j);
        }
    }
    if (k.rows() > 0) {
        k = hermite_normal_form(k, false).h;
    }
    return k;
}

/// Basis of (rational span of the rows of b) intersected with Z^n.
inline IntMatrix saturate(const IntMatrix& b)
{
    if (b.rows() == 0) {
        return IntMatrix(0, b.cols());
    }
    IntMatrix y = left_kernel(b.transpose());
    if (y.rows() == 0) {
        return hermite_normal_form(IntMatrix::identity(b.cols()), false).h;
    }
    return left_kernel(y.transpose());
}

struct SmithResult {
    IntMatrix d;      // diagonal, d_i | d_{i+1}, nonnegative
    IntMatrix u;      // unimodular, u * a * v == d
    IntMatrix v;
    IntMatrix v_inv;
    std::size_t rank = 0;

    IntVector invariants() const
    {
        IntVector out;
        for (std::size_t i = 0; i < rank; ++i) {
            out.push_back(d(i, i));
        }
        return out;
    }
};

inline SmithResult smith_normal_form(const IntMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    SmithResult s;
    s.d = a;
    s.u = IntMatrix::identity(m);
    s.v = IntMatrix::identity(n);
    s.v_inv = IntMatrix::identity(n);
    IntMatrix& d = s.d;

    auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        d.add_row_multiple(dst, src, f);
        s.u.add_row_multiple(dst, src, f);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        d.add_col_multiple(dst, src, f);
        s.v.add_col_multiple(dst, src, f);
        s.v_inv.add_row_multiple(src, dst, Integer(-f));
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        d.swap_rows(i, j);
        s.u.swap_rows(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        d.swap_cols(i, j);
        s.v.swap_cols(i, j);
        s.v_inv.swap_rows(i, j);
    };

    const std::size_t limit = std::min(m, n);
    std::size_t t = 0;
    for (; t < limit; ++t) {
        while (true) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (sgn(d(i, j)) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second)))) {
                        best = {i, j};
                    }
                }
            }
            if (!best) {
                break;
            }
            row_swap(t, best->first);
            col_swap(t, best->second);
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(d(i, t)) != 0) {
                    Integer q = floor_div(Rational(d(i, t), d(t, t)));
                    row_add(i, t, Integer(-q));
                    dirty = dirty || sgn(d(i, t)) != 0;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(d(t, j)) != 0) {
                    Integer q = floor_div(Rational(d(t, j), d(t, t)));
                    col_add(j, t, Integer(-q));
                    dirty = dirty || sgn(d(t, j)) != 0;
                }
            }
            if (dirty) {
                continue;
            }
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < m && !bad_row; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (sgn(d(i, j) % d(t, t)) != 0) {
                        bad_row = i;
                        break;
                    }
                }
            }
            if (!bad_row) {
                break;
            }
            row_add(t, *bad_row, Integer(1));
        }
        if (sgn(d(t, t)) == 0) {
            break;
        }
        if (sgn(d(t, t)) < 0) {
            for (std::size_t j = 0; j < n; ++j) {
                d(t, j) = -d(t, j);
            }
            for (std::size_t j = 0; j < m; ++j) {
                s.u(t, j) = -s.u(t, j);
            }
        }
    }
    s.rank = t;
    return s;
}

/// Determinant by fraction-free Bareiss elimination.
inline Integer determinant(const IntMatrix& a)
{
    if (a.rows() != a.cols()) {
        throw LatticeError("determinant of non-square matrix");
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1;
    }
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline std::size_t rank_of(const IntMatrix& a)
{
    return hermite_normal_form(a, false).rank;
}

/// Inverse over Q; throws for singular input.
inline RatMatrix inverse(const RatMatrix& a)
{
    if (a.rows() != a.cols()) {
        throw LatticeError("inverse of non-square matrix");
    }
    const std::size_t n = a.rows();
    RatMatrix m = a;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) {
            ++p;
        }
        if (p == n) {
            throw LatticeError("matrix is singular");
        }
        m.swap_rows(c, p);
        inv.swap_rows(c, p);
        Rational piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(m(i, c)) == 0) {
                continue;
            }
            Rational f = -m(i, c);
            m.add_row_multiple(i, c, f);
            inv.add_row_multiple(i, c, f);
        }
    }
    return inv;
}

inline Rational determinant(const RatMatrix& a)
{
    Integer den = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            den = lcm_of(den, a(i, j).get_den());
        }
    }
    IntMatrix scaled(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            scaled(i, j) = Integer(a(i, j) * den);
        }
    }
    Integer scale = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        scale *= den;
    }
    return make_rational(determinant(scaled), scale);
}

inline RatMatrix inverse(const IntMatrix& a)
{
    return inverse(to_rational(a));
}

/// Solves x * a == b for a row vector x, with a square and nonsingular.
inline RatVector solve_left(const RatMatrix& a, const RatVector& b)
{
    return row_times(b, inverse(a));
}

} // namespace k3fib
