#pragma once

#include "k3fib/polynomial.hpp"
#include "k3fib/root_systems.hpp"

#include <array>
#include <map>
#include <optional>

namespace k3fib {

/// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(t).
struct WeierstrassModel {
    Polynomial a1, a2, a3, a4, a6;
};

struct Invariants {
    Polynomial b2, b4, b6, b8, c4, c6, delta;
};

inline Invariants invariants_c4_c6_delta(const WeierstrassModel& m)
{
    Invariants iv;
    const auto& [a1, a2, a3, a4, a6] = m;
    iv.b2 = a1 * a1 + Polynomial(4) * a2;
    iv.b4 = Polynomial(2) * a4 + a1 * a3;
    iv.b6 = a3 * a3 + Polynomial(4) * a6;
    iv.b8 = a1 * a1 * a6 + Polynomial(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    iv.c4 = iv.b2 * iv.b2 - Polynomial(24) * iv.b4;
    iv.c6 = -iv.b2.pow(3) + Polynomial(36) * iv.b2 * iv.b4 - Polynomial(216) * iv.b6;
    iv.delta = -iv.b2 * iv.b2 * iv.b8 - Polynomial(8) * iv.b4.pow(3) - Polynomial(27) * iv.b6 * iv.b6 +
               Polynomial(9) * iv.b2 * iv.b4 * iv.b6;
    if (!(Polynomial(1728) * iv.delta == iv.c4.pow(3) - iv.c6 * iv.c6)) {
        throw LatticeError("internal error: 1728 Delta != c4^3 - c6^2");
    }
    if (iv.delta.is_zero()) {
        throw LatticeError("discriminant vanishes identically; not an elliptic surface");
    }
    return iv;
}

/// Admissible change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t with u a nonzero constant.
inline WeierstrassModel change_coordinates(const WeierstrassModel& m, const Rational& u, const Polynomial& r,
                                           const Polynomial& s, const Polynomial& t)
{
    if (sgn(u) == 0) {
        throw LatticeError("coordinate change with u = 0");
    }
    const auto& [a1, a2, a3, a4, a6] = m;
    auto scale = [&](const Polynomial& p, int k) {
        Rational f = 1;
        for (int i = 0; i < k; ++i) {
            f /= u;
        }
        return p * Polynomial(f);
    };
    WeierstrassModel out;
    out.a1 = scale(a1 + Polynomial(2) * s, 1);
    out.a2 = scale(a2 - s * a1 + Polynomial(3) * r - s * s, 2);
    out.a3 = scale(a3 + r * a1 + Polynomial(2) * t, 3);
    out.a4 = scale(a4 - s * a3 + Polynomial(2) * r * a2 - (t + r * s) * a1 + Polynomial(3) * r * r -
                       Polynomial(2) * s * t,
                   4);
    out.a6 = scale(a6 + r * a4 + r * r * a2 + r.pow(3) - t * a3 - t * t - r * t * a1, 6);
    return out;
}

/// Smallest k with deg a_i <= i k for every coefficient.
inline int weight_at_infinity(const WeierstrassModel& m)
{
    const std::array<std::pair<const Polynomial*, int>, 5> cs{
        {{&m.a1, 1}, {&m.a2, 2}, {&m.a3, 3}, {&m.a4, 4}, {&m.a6, 6}}};
    int k = 0;
    for (auto [p, i] : cs) {
        if (!p->is_zero()) {
            k = std::max(k, (p->degree() + i - 1) / i);
        }
    }
    return k;
}

/// The model in the chart s = 1/t: a_i(s) = s^{i k} a_i(1/s).
inline WeierstrassModel model_at_infinity(const WeierstrassModel& m)
{
    const int k = weight_at_infinity(m);
    return {m.a1.reversed(k), m.a2.reversed(2 * k), m.a3.reversed(3 * k), m.a4.reversed(4 * k),
            m.a6.reversed(6 * k)};
}

enum class KodairaKind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

struct KodairaFiber {
    KodairaKind kind = KodairaKind::I;
    int n = 0; // index for I_n and I_n*

    int euler() const
    {
        switch (kind) {
        case KodairaKind::I: return n;
        case KodairaKind::Istar: return n + 6;
        case KodairaKind::II: return 2;
        case KodairaKind::III: return 3;
        case KodairaKind::IV: return 4;
        case KodairaKind::IVstar: return 8;
        case KodairaKind::IIIstar: return 9;
        case KodairaKind::IIstar: return 10;
        }
        return 0;
    }

    /// Root lattice of the non-identity components; nullopt for irreducible fibers.
    std::optional<RootType> dynkin() const
    {
        switch (kind) {
        case KodairaKind::I: return n >= 2 ? std::optional(RootType::A(n - 1)) : std::nullopt;
        case KodairaKind::Istar: return RootType::D(n + 4);
        case KodairaKind::II: return std::nullopt;
        case KodairaKind::III: return RootType::A(1);
        case KodairaKind::IV: return RootType::A(2);
        case KodairaKind::IVstar: return RootType::E(6);
        case KodairaKind::IIIstar: return RootType::E(7);
        case KodairaKind::IIstar: return RootType::E(8);
        }
        return std::nullopt;
    }

    bool singular() const { return !(kind == KodairaKind::I && n == 0); }

    std::string name() const
    {
        switch (kind) {
        case KodairaKind::I: return "I" + std::to_string(n);
        case KodairaKind::Istar: return "I" + std::to_string(n) + "*";
        case KodairaKind::II: return "II";
        case KodairaKind::III: return "III";
        case KodairaKind::IV: return "IV";
        case KodairaKind::IVstar: return "IV*";
        case KodairaKind::IIIstar: return "III*";
        case KodairaKind::IIstar: return "II*";
        }
        return "";
    }

    friend bool operator==(const KodairaFiber&, const KodairaFiber&) = default;
};

/// A point of P^1: a monic irreducible polynomial of degree 1 or 2, or infinity.
struct Place {
    std::optional<Polynomial> poly; // empty for infinity

    static Place infinity() { return {}; }
    static Place finite(const Polynomial& p)
    {
        if (p.degree() < 1 || p.degree() > 2) {
            throw LatticeError("places must have degree 1 or 2, got " + p.to_string());
        }
        if (p.degree() == 2 && !rational_roots(p).empty()) {
            throw LatticeError("quadratic place is reducible: " + p.to_string());
        }
        return {p.monic()};
    }
    static Place at(const Rational& a) { return finite(Polynomial(std::vector<Rational>{-a, 1})); }

    bool is_infinity() const { return !poly.has_value(); }
    int degree() const { return is_infinity() ? 1 : poly->degree(); }

    std::string name(const std::string& var = "t") const
    {
        if (is_infinity()) {
            return var + "=oo";
        }
        if (poly->degree() == 1) {
            return var + "=" + to_string(-poly->coeff(0));
        }
        return poly->to_string(var) + "=0";
    }
};

/// Kodaira type from the orders of c4, c6 and Delta (a missing order means the invariant vanishes), after
/// removing u^12 scalings. Residue characteristic 0.
inline KodairaFiber kodaira_from_orders(std::optional<int> v4, std::optional<int> v6, int vd)
{
    const int big = 1 << 20;
    int a = v4.value_or(big);
    int b = v6.value_or(big);
    while (a >= 4 && b >= 6 && vd >= 12) {
        a -= 4;
        b -= 6;
        vd -= 12;
    }
    if (vd == 0) {
        return {KodairaKind::I, 0};
    }
    if (a == 0) {
        return {KodairaKind::I, vd};
    }
    if (a == 2 && b == 3 && vd >= 6) {
        return {KodairaKind::Istar, vd - 6};
    }
    switch (vd) {
    case 2: return {KodairaKind::II, 0};
    case 3: return {KodairaKind::III, 0};
    case 4: return {KodairaKind::IV, 0};
    case 6: return {KodairaKind::Istar, 0};
    case 8: return {KodairaKind::IVstar, 0};
    case 9: return {KodairaKind::IIIstar, 0};
    case 10: return {KodairaKind::IIstar, 0};
    default: break;
    }
    throw LatticeError("orders (" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(vd) +
                       ") match no Kodaira type");
}

namespace detail {

inline std::optional<int> order_or_none(const Polynomial& f, const Polynomial& p)
{
    if (f.is_zero()) {
        return std::nullopt;
    }
    return valuation(f, p);
}

} // namespace detail

inline KodairaFiber kodaira_type_at(const WeierstrassModel& m, const Place& place)
{
    if (place.is_infinity()) {
        return kodaira_type_at(model_at_infinity(m), Place::at(0));
    }
    auto iv = invariants_c4_c6_delta(m);
    return kodaira_from_orders(detail::order_or_none(iv.c4, *place.poly), detail::order_or_none(iv.c6, *place.poly),
                               valuation(iv.delta, *place.poly));
}

struct FiberAtPlace {
    Place place;
    KodairaFiber fiber;
};

struct Configuration {
    std::vector<FiberAtPlace> fibers; // singular fibers only
    int euler_sum = 0;

    /// Root lattice of the reducible fibers, one summand per geometric fiber.
    RootLatticeType dynkin() const
    {
        RootLatticeType t;
        for (const auto& f : fibers) {
            if (auto d = f.fiber.dynkin()) {
                for (int k = 0; k < f.place.degree(); ++k) {
                    t.push_back(*d);
                }
            }
        }
        return sorted(t);
    }

    /// e.g. "2 I4* + I2 + 2 I1": fiber names with multiplicities counted over C.
    std::string summary() const
    {
        std::map<std::string, int> count;
        std::vector<std::string> order;
        for (const auto& f : fibers) {
            const std::string n = f.fiber.name();
            if (!count.count(n)) {
                order.push_back(n);
            }
            count[n] += f.place.degree();
        }
        std::string s;
        for (const auto& n : order) {
            s += (s.empty() ? "" : " + ") + (count[n] > 1 ? std::to_string(count[n]) + " " : "") + n;
        }
        return s;
    }
};

/// All singular fibers including the one at infinity. With k3 set, checks that the Euler numbers add to 24.
inline Configuration analyze_configuration(const WeierstrassModel& m, bool k3 = true)
{
    auto iv = invariants_c4_c6_delta(m);
    Configuration cfg;
    for (const auto& [p, mult] : factor_low_degree(iv.delta)) {
        (void)mult;
        Place place = Place::finite(p);
        KodairaFiber f = kodaira_type_at(m, place);
        if (f.singular()) {
            cfg.fibers.push_back({place, f});
        }
    }
    KodairaFiber inf = kodaira_type_at(m, Place::infinity());
    if (inf.singular()) {
        cfg.fibers.push_back({Place::infinity(), inf});
    }
    for (const auto& f : cfg.fibers) {
        cfg.euler_sum += f.place.degree() * f.fiber.euler();
    }
    if (k3 && cfg.euler_sum != 24) {
        throw LatticeError("Euler numbers of the singular fibers add to " + std::to_string(cfg.euler_sum) +
                           ", not 24");
    }
    return cfg;
}

} // namespace k3fib
