#pragma once

#include "k3fib/lattice.hpp"

#include <functional>

namespace k3fib {

struct LllResult {
    IntMatrix transform; // rows: reduced basis in original coordinates
    IntMatrix gram;      // Gram matrix of the reduced basis
};

/// LLL reduction (delta = 3/4) of a positive definite Gram matrix, in exact rational arithmetic.
inline LllResult lll_reduce(const IntMatrix& gram)
{
    const std::size_t n = gram.rows();
    LllResult res{IntMatrix::identity(n), gram};
    if (n <= 1) {
        return res;
    }
    IntMatrix& g = res.gram;
    IntMatrix& h = res.transform;
    RatMatrix mu(n, n);
    RatVector bb(n);
    const Rational delta(3, 4);

    auto gso_row = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            Rational s = g(k, j);
            for (std::size_t i = 0; i < j; ++i) {
                s -= mu(j, i) * mu(k, i) * bb[i];
            }
            mu(k, j) = s / bb[j];
        }
        Rational s = g(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            s -= mu(k, j) * mu(k, j) * bb[j];
        }
        if (sgn(s) <= 0) {
            throw LatticeError("LLL input is not positive definite");
        }
        bb[k] = s;
    };

    auto reduce = [&](std::size_t k, std::size_t l) {
        Rational m = mu(k, l);
        if (abs(m) * 2 <= 1) {
            return;
        }
        Integer q = round_nearest(m);
        Integer negq = -q;
        h.add_row_multiple(k, l, negq);
        g.add_row_multiple(k, l, negq);
        g.add_col_multiple(k, l, negq);
        mu(k, l) -= q;
        for (std::size_t i = 0; i < l; ++i) {
            mu(k, i) -= Rational(q) * mu(l, i);
        }
    };

    auto swap = [&](std::size_t k, std::size_t kmax) {
        h.swap_rows(k, k - 1);
        g.swap_rows(k, k - 1);
        g.swap_cols(k, k - 1);
        for (std::size_t j = 0; j + 1 < k; ++j) {
            std::swap(mu(k, j), mu(k - 1, j));
        }
        Rational m = mu(k, k - 1);
        Rational b = bb[k] + m * m * bb[k - 1];
        mu(k, k - 1) = m * bb[k - 1] / b;
        bb[k] = bb[k - 1] * bb[k] / b;
        bb[k - 1] = b;
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Rational t = mu(i, k);
            mu(i, k) = mu(i, k - 1) - m * t;
            mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
        }
    };

    if (sgn(g(0, 0)) <= 0) {
        throw LatticeError("LLL input is not positive definite");
    }
    bb[0] = g(0, 0);
    std::size_t k = 1;
    std::size_t kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            gso_row(k);
        }
        reduce(k, k - 1);
        if (bb[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * bb[k - 1]) {
            swap(k, kmax);
            if (k > 1) {
                --k;
            }
        } else {
            for (std::size_t l = k - 1; l-- > 0;) {
                reduce(k, l);
            }
            ++k;
        }
    }
    return res;
}

/// Calls `visit(x)` for every nonzero integer x (coordinates in the Gram basis) with x G x^T <= bound,
/// one representative per pair {x, -x}. Exact Fincke-Pohst enumeration on a positive definite Gram.
inline void enumerate_short_vectors(const IntMatrix& gram, const Rational& bound,
                                    const std::function<void(const IntVector&, const Rational&)>& visit)
{
    const std::size_t n = gram.rows();
    if (n == 0) {
        return;
    }
    // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    RatMatrix q = to_rational(gram);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(q(i, i)) <= 0) {
            throw LatticeError("short vector enumeration needs a positive definite Gram matrix");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) = q(i, j) / q(i, i);
        }
        for (std::size_t k = i + 1; k < n; ++k) {
            for (std::size_t l = k; l < n; ++l) {
                q(k, l) -= q(k, i) * q(i, l);
            }
        }
    }

    IntVector x(n, Integer(0));
    std::vector<Rational> remaining(n + 1);
    remaining[n] = bound;

    // Values at each level must satisfy q_ii (x_i + c_i)^2 <= remaining[i+1].
    std::function<void(std::size_t, bool)> descend = [&](std::size_t i, bool all_zero_above) {
        Rational c = 0;
        for (std::size_t j = i + 1; j < n; ++j) {
            c += q(i, j) * x[j];
        }
        const Rational& t = remaining[i + 1];
        auto fits = [&](const Integer& v) {
            Rational d = Rational(v) + c;
            return q(i, i) * d * d <= t;
        };
        auto handle = [&](const Integer& v) {
            Rational d = Rational(v) + c;
            x[i] = v;
            remaining[i] = t - q(i, i) * d * d;
            bool zero = all_zero_above && sgn(v) == 0;
            if (i == 0) {
                if (!zero) {
                    visit(x, bound - remaining[0]);
                }
            } else {
                descend(i - 1, zero);
            }
        };
        Integer lo = floor_div(-c);
        Integer hi = lo + 1;
        // With all coordinates above zero, restrict to x_i >= 0 so each +-pair is visited once.
        for (Integer v = lo; fits(v); --v) {
            if (all_zero_above && sgn(v) < 0) {
                break;
            }
            handle(v);
        }
        for (Integer v = hi; fits(v); ++v) {
            if (all_zero_above && sgn(v) < 0) {
                continue;
            }
            handle(v);
        }
        x[i] = 0;
    };
    descend(n - 1, true);
}

/// Short vectors after LLL preprocessing; results in the original coordinates.
inline std::vector<IntVector> short_vectors(const IntMatrix& gram, const Rational& bound)
{
    auto red = lll_reduce(gram);
    std::vector<IntVector> out;
    enumerate_short_vectors(red.gram, bound, [&](const IntVector& y, const Rational&) {
        out.push_back(row_times(y, red.transform));
    });
    return out;
}

/// Vectors of norm exactly `norm` (one per sign pair) in a definite lattice of either sign.
inline std::vector<IntVector> vectors_of_norm(const IntMatrix& gram, const Integer& norm)
{
    IntMatrix g = gram;
    Integer target = norm;
    if (sgn(norm) < 0) {
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t j = 0; j < g.cols(); ++j) {
                g(i, j) = -g(i, j);
            }
        }
        target = -norm;
    }
    std::vector<IntVector> out;
    for (auto& v : short_vectors(g, Rational(target))) {
        if (bilinear(v, g, v) == target) {
            out.push_back(std::move(v));
        }
    }
    return out;
}

/// Roots (norm -2 vectors, one per sign pair) of a negative definite even lattice.
inline std::vector<IntVector> enumerate_roots(const IntMatrix& gram)
{
    return vectors_of_norm(gram, Integer(-2));
}

} // namespace k3fib
