#pragma once

#include "k3fib/abelian_group.hpp"
#include "k3fib/root_systems.hpp"

#include <optional>

namespace k3fib {

/// Where a section meets one reducible fiber. Component numbering: A_{n-1} (fiber I_n) uses 0..n-1 around the
/// cycle; D_m (fiber I_{m-4}*) uses 0 = zero component, 1 = the other near component, 2 and 3 = the two far
/// ones; E6 uses 0, 1, 2; E7 uses 0, 1; E8 only 0.
struct FiberHit {
    RootType fiber;
    int component = 0;
};

/// Number of simple (multiplicity one) components of the fiber.
inline int simple_components(const RootType& t)
{
    switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::D: return 4;
    case Family::E: return t.rank == 6 ? 3 : t.rank == 7 ? 2 : 1;
    }
    return 1;
}

/// Local correction term contr(i, j) of the height pairing.
inline Rational local_contribution(const RootType& t, int i, int j)
{
    const int count = simple_components(t);
    if (i < 0 || j < 0 || i >= count || j >= count) {
        throw LatticeError("component index out of range for a fiber of type " + t.name());
    }
    if (i == 0 || j == 0) {
        return 0;
    }
    switch (t.family) {
    case Family::A: {
        const int n = t.rank + 1;
        const int a = std::min(i, j);
        const int b = std::max(i, j);
        return make_rational(a * (n - b), n);
    }
    case Family::D: {
        const Rational quarter = make_rational(t.rank - 4, 4);
        if (i == 1 && j == 1) {
            return 1;
        }
        if (i == 1 || j == 1) {
            return make_rational(1, 2);
        }
        return i == j ? Rational(1 + quarter) : Rational(make_rational(1, 2) + quarter);
    }
    case Family::E:
        if (t.rank == 6) {
            return i == j ? make_rational(4, 3) : make_rational(2, 3);
        }
        return make_rational(3, 2);
    }
    return 0;
}

inline Rational local_contribution(const RootType& t, int i)
{
    return local_contribution(t, i, i);
}

/// A section described by P.O and the fiber components it meets (fibers where it meets component 0 may be omitted).
struct SectionData {
    Integer po = 0;
    std::vector<FiberHit> hits;
};

namespace detail {

inline int component_on(const SectionData& s, std::size_t fiber_index)
{
    return s.hits.at(fiber_index).component;
}

inline void check_same_fibers(const SectionData& p, const SectionData& q)
{
    if (p.hits.size() != q.hits.size()) {
        throw LatticeError("sections are given on different fiber lists");
    }
    for (std::size_t k = 0; k < p.hits.size(); ++k) {
        if (!(p.hits[k].fiber == q.hits[k].fiber)) {
            throw LatticeError("sections are given on different fiber lists");
        }
    }
}

} // namespace detail

/// <P, Q> = chi + P.O + Q.O - P.Q - sum of contr(P, Q).
inline Rational height_pairing(const SectionData& p, const SectionData& q, const Integer& pq, int chi = 2)
{
    detail::check_same_fibers(p, q);
    Rational h = Rational(chi) + Rational(p.po) + Rational(q.po) - Rational(pq);
    for (std::size_t k = 0; k < p.hits.size(); ++k) {
        h -= local_contribution(p.hits[k].fiber, detail::component_on(p, k), detail::component_on(q, k));
    }
    return h;
}

/// h(P) = 2 chi + 2 P.O - sum of contr(P).
inline Rational height(const SectionData& p, int chi = 2)
{
    return height_pairing(p, p, Integer(-chi), chi);
}

inline bool is_torsion_height(const Rational& h)
{
    return sgn(h) == 0;
}

/// Largest group contained in both (componentwise minimum of the primary parts).
inline AbelianGroup group_meet(const AbelianGroup& a, const AbelianGroup& b)
{
    auto pa = a.primary_exponents();
    auto pb = b.primary_exponents();
    IntVector cyclic;
    for (const auto& [p, ea] : pa) {
        auto it = pb.find(p);
        if (it == pb.end()) {
            continue;
        }
        const auto& eb = it->second;
        for (std::size_t k = 0; k < std::min(ea.size(), eb.size()); ++k) {
            unsigned e = std::min(ea[k], eb[k]);
            if (e > 0) {
                Integer q;
                mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
                cyclic.push_back(q);
            }
        }
    }
    return AbelianGroup(cyclic);
}

/// Bound on MW torsion coming from one reducible fiber, if that fiber type constrains it.
inline std::optional<AbelianGroup> fiber_torsion_bound(const RootType& t)
{
    if (t.family == Family::E) {
        if (t.rank == 8) {
            return AbelianGroup();
        }
        return AbelianGroup({Integer(t.rank == 7 ? 2 : 3)});
    }
    if (t.family == Family::D) {
        if ((t.rank - 4) % 2 == 0) {
            return AbelianGroup({Integer(2), Integer(2)});
        }
        return AbelianGroup({Integer(4)});
    }
    return std::nullopt;
}

/// Intersection of the per-fiber bounds; nullopt when no fiber constrains the torsion.
inline std::optional<AbelianGroup> torsion_bound(const RootLatticeType& fibers)
{
    std::optional<AbelianGroup> bound;
    for (const auto& t : fibers) {
        if (auto b = fiber_torsion_bound(t)) {
            bound = bound ? group_meet(*bound, *b) : *b;
        }
    }
    return bound;
}

} // namespace k3fib
