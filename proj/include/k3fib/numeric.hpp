#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3fib {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Raised when an operation receives data that violates its preconditions.
class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Integer& num, const Integer& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1)
{
    return make_rational(Integer(num), Integer(den));
}

inline Integer floor_div(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_div(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Nearest integer, halves rounded toward +infinity.
inline Integer round_nearest(const Rational& q)
{
    return floor_div(q + Rational(1, 2));
}

/// Representative of q modulo m in [0, m).
inline Rational mod_rational(const Rational& q, const Rational& m)
{
    Rational k = q / m;
    return q - Rational(floor_div(k)) * m;
}

inline Integer lcm_of(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Exact integer square root when n is a perfect square.
inline bool exact_sqrt(const Integer& n, Integer& root)
{
    if (sgn(n) < 0) {
        return false;
    }
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root * root == n;
}

inline bool is_integral(const Rational& q)
{
    return q.get_den() == 1;
}

inline std::string to_string(const Integer& z)
{
    return z.get_str();
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline Rational dot(const RatVector& a, const RatVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline RatVector to_rational(const IntVector& v)
{
    return RatVector(v.begin(), v.end());
}

/// Converts to integers; throws if some entry is not integral.
inline IntVector to_integer(const RatVector& v)
{
    IntVector out;
    out.reserve(v.size());
    for (const auto& q : v) {
        if (!is_integral(q)) {
            throw LatticeError("vector has non-integral entry " + q.get_str());
        }
        out.emplace_back(q.get_num());
    }
    return out;
}

/// Prime factorization by trial division; only used on small group orders.
inline std::map<Integer, unsigned> factorize(Integer n)
{
    std::map<Integer, unsigned> out;
    if (n < 0) {
        n = -n;
    }
    for (Integer p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) {
        ++out[n];
    }
    return out;
}

} // namespace k3fib
