#pragma once

#include "k3fib/numeric.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <utility>

namespace k3fib {

/// Dense univariate polynomial with rational coefficients, constant term first.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(long c) : Polynomial(Rational(c)) {}
    Polynomial(const Rational& c) : coeffs_{c} { trim(); }
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(const Rational& c, std::size_t k)
    {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Polynomial(std::move(v));
    }
    static Polynomial variable() { return monomial(1, 1); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational operator()(const Rational& x) const
    {
        Rational v = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            v = v * x + *it;
        }
        return v;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = a.coeff(i) + b.coeff(i);
        }
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a) { return a * Polynomial(-1); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Polynomial(std::move(v));
    }
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    Polynomial pow(unsigned e) const
    {
        Polynomial r(1);
        Polynomial b = *this;
        while (e > 0) {
            if (e & 1u) {
                r *= b;
            }
            b *= b;
            e >>= 1u;
        }
        return r;
    }

    Polynomial derivative() const
    {
        std::vector<Rational> v;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            v.push_back(coeffs_[i] * static_cast<long>(i));
        }
        return Polynomial(std::move(v));
    }

    /// Quotient and remainder.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const
    {
        if (d.is_zero()) {
            throw LatticeError("polynomial division by zero");
        }
        std::vector<Rational> r = coeffs_;
        const int dd = d.degree();
        std::vector<Rational> q(std::max(0, degree() - dd + 1));
        for (int k = degree(); k >= dd; --k) {
            Rational c = r[k] / d.leading();
            if (sgn(c) == 0) {
                continue;
            }
            q[k - dd] = c;
            for (int i = 0; i <= dd; ++i) {
                r[k - dd + i] -= c * d.coeffs_[i];
            }
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return a.divmod(b).first; }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return a.divmod(b).second; }

    Polynomial monic() const
    {
        if (is_zero()) {
            return {};
        }
        return *this * Polynomial(Rational(1) / leading());
    }

    /// s^k f(1/s) for k >= degree.
    Polynomial reversed(std::size_t k) const
    {
        if (static_cast<int>(k) < degree()) {
            throw LatticeError("reversal degree below polynomial degree");
        }
        std::vector<Rational> v(k + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            v[k - i] = coeffs_[i];
        }
        return Polynomial(std::move(v));
    }

    std::string to_string(const std::string& var = "t") const
    {
        if (is_zero()) {
            return "0";
        }
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const Rational& c = coeffs_[k];
            if (sgn(c) == 0) {
                continue;
            }
            Rational a = abs(c);
            std::string term;
            if (k == 0 || a != 1) {
                term = k3fib::to_string(a);
                if (k > 0) {
                    term += "*";
                }
            }
            if (k >= 1) {
                term += var;
            }
            if (k >= 2) {
                term += "^" + std::to_string(k);
            }
            if (s.empty()) {
                s = (sgn(c) < 0 ? "-" : "") + term;
            } else {
                s += (sgn(c) < 0 ? " - " : " + ") + term;
            }
        }
        return s;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
};

inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        a = a % b;
        std::swap(a, b);
    }
    return a.monic();
}

/// Exponent of p in f (p nonconstant, f nonzero).
inline int valuation(const Polynomial& f, const Polynomial& p)
{
    if (f.is_zero()) {
        throw LatticeError("valuation of the zero polynomial");
    }
    int v = 0;
    Polynomial g = f;
    while (true) {
        auto [q, r] = g.divmod(p);
        if (!r.is_zero()) {
            return v;
        }
        g = q;
        ++v;
    }
}

/// Yun's square-free decomposition: monic factors f_1, f_2, ... with f = c * prod f_i^i.
inline std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& f)
{
    std::vector<std::pair<Polynomial, int>> out;
    if (f.degree() <= 0) {
        return out;
    }
    Polynomial a = f.monic();
    Polynomial b = gcd(a, a.derivative());
    Polynomial c = a / b;
    Polynomial d = a.derivative() / b - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        Polynomial g = gcd(c, d);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
        }
        c = c / g;
        d = d / g - c.derivative();
        ++i;
    }
    return out;
}

namespace detail {

/// Integer polynomial proportional to f with coprime coefficients and positive leading coefficient.
inline std::vector<Integer> primitive_integer(const Polynomial& f)
{
    Integer den = 1;
    for (const auto& c : f.coeffs()) {
        den = lcm_of(den, c.get_den());
    }
    std::vector<Integer> v;
    Integer g = 0;
    for (const auto& c : f.coeffs()) {
        v.push_back(Integer(c * den));
        g = gcd_of(g, v.back());
    }
    if (sgn(f.leading()) < 0) {
        g = -g;
    }
    for (auto& x : v) {
        x /= g;
    }
    return v;
}

inline std::vector<Integer> divisors(const Integer& n)
{
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : factorize(abs(n))) {
        std::vector<Integer> next;
        for (const auto& d : ds) {
            Integer q = d;
            for (unsigned k = 0; k <= e; ++k) {
                next.push_back(q);
                q *= p;
            }
        }
        ds = std::move(next);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace detail

/// Distinct rational roots.
inline std::vector<Rational> rational_roots(const Polynomial& f)
{
    std::vector<Rational> roots;
    if (f.degree() <= 0) {
        return roots;
    }
    Polynomial g = f;
    if (sgn(g.coeff(0)) == 0) {
        roots.push_back(0);
        while (sgn(g.coeff(0)) == 0) {
            g = g / Polynomial::variable();
        }
    }
    if (g.degree() <= 0) {
        return roots;
    }
    auto v = detail::primitive_integer(g);
    for (const auto& p : detail::divisors(v.front())) {
        for (const auto& q : detail::divisors(v.back())) {
            for (int sign : {1, -1}) {
                Rational x = make_rational(p * sign, q);
                if (sgn(g(x)) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) {
                    roots.push_back(x);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Thrown when a polynomial has an irreducible factor of degree above 2.
class UnsupportedFactor : public LatticeError {
public:
    explicit UnsupportedFactor(const std::string& factor)
        : LatticeError("irreducible factor of degree > 2 is not supported: " + factor), factor_(factor)
    {
    }
    const std::string& factor() const noexcept { return factor_; }

private:
    std::string factor_;
};

namespace detail {

/// A quadratic integer factor of a primitive integer polynomial without rational roots, by interpolation
/// through divisors of f(-1), f(0), f(1); nullopt if none.
inline std::optional<Polynomial> quadratic_factor(const Polynomial& f)
{
    auto v = primitive_integer(f);
    Polynomial g(std::vector<Rational>(v.begin(), v.end()));
    const std::array<long, 3> xs{-1, 0, 1};
    std::array<std::vector<Integer>, 3> options;
    std::size_t combos = 1;
    for (int k = 0; k < 3; ++k) {
        Integer y = Integer(g(Rational(xs[k])));
        for (const auto& d : divisors(y)) {
            options[k].push_back(d);
            options[k].push_back(-d);
        }
        combos *= options[k].size();
    }
    if (combos > 4000000) {
        return std::nullopt;
    }
    for (const auto& ym : options[0]) {
        for (const auto& y0 : options[1]) {
            for (const auto& y1 : options[2]) {
                // q(x) = a x^2 + b x + c through (-1, ym), (0, y0), (1, y1)
                Integer c = y0;
                Integer twice_a = ym + y1 - 2 * y0;
                Integer twice_b = y1 - ym;
                if (sgn(twice_a) <= 0 || twice_a % 2 != 0 || twice_b % 2 != 0) {
                    continue;
                }
                Polynomial q(std::vector<Rational>{Rational(c), Rational(twice_b / 2), Rational(twice_a / 2)});
                if ((g % q).is_zero()) {
                    return q.monic();
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Monic irreducible factors with multiplicity, each of degree 1 or 2. Throws UnsupportedFactor otherwise.
inline std::vector<std::pair<Polynomial, int>> factor_low_degree(const Polynomial& f)
{
    std::vector<std::pair<Polynomial, int>> out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        Polynomial rest = part;
        for (const auto& r : rational_roots(part)) {
            Polynomial lin(std::vector<Rational>{-r, 1});
            out.emplace_back(lin, mult);
            rest = rest / lin;
        }
        while (rest.degree() > 2) {
            auto q = detail::quadratic_factor(rest);
            if (!q) {
                throw UnsupportedFactor(rest.monic().to_string());
            }
            out.emplace_back(*q, mult);
            rest = rest / *q;
        }
        if (rest.degree() == 2) {
            out.emplace_back(rest.monic(), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) {
            return a.first.degree() < b.first.degree();
        }
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

/// Parses an expanded or factored polynomial expression in one variable: numbers, the variable, + - * / ^ and
/// parentheses. Division is allowed only by nonzero constants.
class PolynomialParser {
public:
    PolynomialParser(std::string text, std::string var) : s_(std::move(text)), var_(std::move(var)) {}

    Polynomial parse()
    {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw LatticeError("cannot parse polynomial '" + s_ + "' at position " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool starts_primary()
    {
        skip();
        if (pos_ >= s_.size()) {
            return false;
        }
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || s_.compare(pos_, var_.size(), var_) == 0;
    }

    Polynomial expr()
    {
        Polynomial p = term();
        while (true) {
            if (eat('+')) {
                p += term();
            } else if (eat('-')) {
                p -= term();
            } else {
                return p;
            }
        }
    }

    Polynomial term()
    {
        Polynomial p = unary();
        while (true) {
            if (eat('*')) {
                p *= unary();
            } else if (eat('/')) {
                Polynomial d = unary();
                if (d.degree() != 0) {
                    fail("division by a non-constant");
                }
                p *= Polynomial(Rational(1) / d.leading());
            } else if (starts_primary()) {
                p *= power();
            } else {
                return p;
            }
        }
    }

    Polynomial unary()
    {
        if (eat('-')) {
            return -unary();
        }
        if (eat('+')) {
            return unary();
        }
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected a nonnegative integer exponent");
            }
            return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    Polynomial primary()
    {
        skip();
        if (eat('(')) {
            Polynomial p = expr();
            if (!eat(')')) {
                fail("missing ')'");
            }
            return p;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            return Polynomial(Rational(Integer(s_.substr(start, pos_ - start))));
        }
        if (s_.compare(pos_, var_.size(), var_) == 0) {
            pos_ += var_.size();
            return Polynomial::variable();
        }
        fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
    }

    std::string s_;
    std::string var_;
    std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(const std::string& text, const std::string& var = "t")
{
    return PolynomialParser(text, var).parse();
}

} // namespace k3fib
