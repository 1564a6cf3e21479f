#pragma once

#include "k3fib/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace k3fib {

enum class Family { A, D, E };

/// Irreducible simply-laced root system A_n (n>=1), D_n (n>=4), E_6, E_7, E_8.
struct RootType {
    Family family = Family::A;
    int rank = 1;

    RootType() = default;
    RootType(Family f, int r) : family(f), rank(r)
    {
        bool ok = (f == Family::A && r >= 1) || (f == Family::D && r >= 4) || (f == Family::E && r >= 6 && r <= 8);
        if (!ok) {
            throw LatticeError("invalid root type");
        }
    }

    static RootType A(int n) { return {Family::A, n}; }
    static RootType D(int n) { return {Family::D, n}; }
    static RootType E(int n) { return {Family::E, n}; }

    static RootType parse(const std::string& s)
    {
        if (s.size() < 2) {
            throw LatticeError("cannot parse root type '" + s + "'");
        }
        int r = 0;
        try {
            std::size_t used = 0;
            r = std::stoi(s.substr(1), &used);
            if (used != s.size() - 1) {
                throw LatticeError("");
            }
        } catch (const std::exception&) {
            throw LatticeError("cannot parse root type '" + s + "'");
        }
        switch (s[0]) {
        case 'A': return A(r);
        case 'D': return D(r);
        case 'E': return E(r);
        default: throw LatticeError("cannot parse root type '" + s + "'");
        }
    }

    std::string name() const
    {
        const char c = family == Family::A ? 'A' : family == Family::D ? 'D' : 'E';
        return c + std::to_string(rank);
    }

    std::size_t root_count() const
    {
        const std::size_t n = rank;
        switch (family) {
        case Family::A: return n * (n + 1);
        case Family::D: return 2 * n * (n - 1);
        case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
        }
        return 0;
    }

    /// Coxeter number.
    int coxeter() const
    {
        switch (family) {
        case Family::A: return rank + 1;
        case Family::D: return 2 * rank - 2;
        case Family::E: return rank == 6 ? 12 : rank == 7 ? 18 : 30;
        }
        return 0;
    }

    /// |det| of the Cartan matrix.
    long discriminant() const
    {
        switch (family) {
        case Family::A: return rank + 1;
        case Family::D: return 4;
        case Family::E: return 9 - rank;
        }
        return 0;
    }

    /// Simple root edges in Bourbaki numbering (0-based).
    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> e;
        switch (family) {
        case Family::A:
            for (int i = 0; i + 1 < rank; ++i) {
                e.emplace_back(i, i + 1);
            }
            break;
        case Family::D:
            for (int i = 0; i + 2 < rank; ++i) {
                e.emplace_back(i, i + 1);
            }
            e.emplace_back(rank - 3, rank - 1);
            break;
        case Family::E:
            e.emplace_back(0, 2);
            e.emplace_back(1, 3);
            for (int i = 2; i + 1 < rank; ++i) {
                e.emplace_back(i, i + 1);
            }
            break;
        }
        return e;
    }

    /// Negative definite Gram of the simple roots: -2 on the diagonal, +1 on edges.
    IntMatrix gram() const
    {
        IntMatrix g(rank, rank);
        for (int i = 0; i < rank; ++i) {
            g(i, i) = -2;
        }
        for (auto [a, b] : edges()) {
            g(a, b) = 1;
            g(b, a) = 1;
        }
        return g;
    }

    friend bool operator==(const RootType& a, const RootType& b) { return a.family == b.family && a.rank == b.rank; }
    friend auto operator<=>(const RootType& a, const RootType& b)
    {
        if (a.family != b.family) {
            return static_cast<int>(a.family) <=> static_cast<int>(b.family);
        }
        return a.rank <=> b.rank;
    }
};

/// Sorted multiset of irreducible components, e.g. A1+A2+E7.
using RootLatticeType = std::vector<RootType>;

inline RootLatticeType sorted(RootLatticeType t)
{
    std::sort(t.begin(), t.end());
    return t;
}

inline std::string type_name(const RootLatticeType& t)
{
    if (t.empty()) {
        return "0";
    }
    std::string s;
    for (const auto& c : sorted(t)) {
        s += (s.empty() ? "" : "+") + c.name();
    }
    return s;
}

inline RootLatticeType parse_type(const std::string& s)
{
    RootLatticeType out;
    if (s == "0" || s.empty()) {
        return out;
    }
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '+')) {
        auto caret = part.find('^');
        int mult = 1;
        if (caret != std::string::npos) {
            mult = std::stoi(part.substr(caret + 1));
            part = part.substr(0, caret);
        }
        for (int i = 0; i < mult; ++i) {
            out.push_back(RootType::parse(part));
        }
    }
    return sorted(out);
}

inline int total_rank(const RootLatticeType& t)
{
    int r = 0;
    for (const auto& c : t) {
        r += c.rank;
    }
    return r;
}

inline std::size_t total_roots(const RootLatticeType& t)
{
    std::size_t r = 0;
    for (const auto& c : t) {
        r += c.root_count();
    }
    return r;
}

/// Positive roots in simple-root coordinates.
inline std::vector<IntVector> positive_roots(const RootType& t)
{
    const IntMatrix g = t.gram();
    const int n = t.rank;
    std::vector<IntVector> roots;
    std::set<IntVector> seen;
    for (int i = 0; i < n; ++i) {
        IntVector v(n, Integer(0));
        v[i] = 1;
        roots.push_back(v);
        seen.insert(v);
    }
    for (std::size_t k = 0; k < roots.size(); ++k) {
        for (int i = 0; i < n; ++i) {
            IntVector beta = roots[k];
            Integer ip = 0;
            for (int j = 0; j < n; ++j) {
                ip += beta[j] * g(j, i);
            }
            if (ip == 1) {
                beta[i] += 1;
                if (seen.insert(beta).second) {
                    roots.push_back(beta);
                }
            }
        }
    }
    return roots;
}

/// Highest root in simple-root coordinates.
inline IntVector highest_root(const RootType& t)
{
    auto roots = positive_roots(t);
    return *std::max_element(roots.begin(), roots.end(), [](const IntVector& a, const IntVector& b) {
        return std::accumulate(a.begin(), a.end(), Integer(0)) < std::accumulate(b.begin(), b.end(), Integer(0));
    });
}

/// Fundamental weights (dual basis of the simple roots) as rows, in simple-root coordinates.
inline RatMatrix fundamental_weights(const RootType& t)
{
    return inverse(t.gram());
}

enum class GlueKind { Alpha, Delta, DeltaBar, DeltaTilde, Eta };

/// Standard glue vectors in simple-root coordinates: alpha_n for A_n; delta, delta-bar, delta-tilde for D_n;
/// eta for E_6 and E_7. Multiplied by k when given.
inline RatVector glue_vector(const RootType& t, GlueKind kind, long k = 1)
{
    const int n = t.rank;
    RatVector v(n);
    switch (kind) {
    case GlueKind::Alpha:
        if (t.family != Family::A) {
            throw LatticeError("alpha glue only exists for A_n");
        }
        for (int j = 1; j <= n; ++j) {
            v[j - 1] = make_rational(n - j + 1, n + 1);
        }
        break;
    case GlueKind::Delta:
    case GlueKind::DeltaBar:
    case GlueKind::DeltaTilde:
        if (t.family != Family::D) {
            throw LatticeError("delta glue only exists for D_n");
        }
        for (int i = 1; i <= n - 2; ++i) {
            v[i - 1] = kind == GlueKind::DeltaBar ? Rational(1) : make_rational(i, 2);
        }
        if (kind == GlueKind::Delta) {
            v[n - 2] = make_rational(n - 2, 4);
            v[n - 1] = make_rational(n, 4);
        } else if (kind == GlueKind::DeltaBar) {
            v[n - 2] = make_rational(1, 2);
            v[n - 1] = make_rational(1, 2);
        } else {
            v[n - 2] = make_rational(n, 4);
            v[n - 1] = make_rational(n - 2, 4);
        }
        break;
    case GlueKind::Eta:
        if (t == RootType::E(6)) {
            const long c[] = {2, 3, 4, 6, 5, 4};
            for (int i = 0; i < 6; ++i) {
                v[i] = make_rational(-c[i], 3);
            }
        } else if (t == RootType::E(7)) {
            const long c[] = {2, 3, 4, 6, 5, 4, 3};
            for (int i = 0; i < 7; ++i) {
                v[i] = make_rational(-c[i], 2);
            }
        } else {
            throw LatticeError("eta glue only exists for E6 and E7");
        }
        break;
    }
    for (auto& x : v) {
        x *= k;
    }
    return v;
}

/// Irreducible component of a root system found inside some ambient lattice.
struct RootComponent {
    RootType type;
    IntMatrix simple_roots; // rows in ambient coordinates, Bourbaki order
};

struct RootSystemData {
    std::vector<RootComponent> components;

    RootLatticeType type() const
    {
        RootLatticeType t;
        for (const auto& c : components) {
            t.push_back(c.type);
        }
        return sorted(t);
    }

    /// All simple roots stacked, components in order.
    IntMatrix simple_roots(std::size_t dim) const
    {
        IntMatrix r(0, dim);
        for (const auto& c : components) {
            for (std::size_t i = 0; i < c.simple_roots.rows(); ++i) {
                r.append_row(c.simple_roots.row(i));
            }
        }
        return r;
    }

    int rank() const { return total_rank(type()); }
};

namespace detail {

inline IntVector negate(const IntVector& v)
{
    IntVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = -v[i];
    }
    return w;
}

inline RootType classify_component(std::size_t rank, std::size_t count)
{
    const int r = static_cast<int>(rank);
    if (count == rank * (rank + 1)) {
        return RootType::A(r);
    }
    if (rank >= 4 && count == 2 * rank * (rank - 1)) {
        return RootType::D(r);
    }
    if ((rank == 6 && count == 72) || (rank == 7 && count == 126) || (rank == 8 && count == 240)) {
        return RootType::E(r);
    }
    throw LatticeError("root set is not a simply-laced root system");
}

/// Orders simple roots (given by a Dynkin adjacency) into Bourbaki numbering.
inline std::vector<std::size_t> bourbaki_order(const RootType& t, const std::vector<std::vector<std::size_t>>& adj)
{
    const std::size_t n = adj.size();
    std::vector<std::size_t> order;
    auto walk = [&](std::size_t start, std::size_t avoid) {
        std::vector<std::size_t> path{start};
        std::size_t prev = avoid;
        std::size_t cur = start;
        while (true) {
            std::size_t next = n;
            for (auto w : adj[cur]) {
                if (w != prev && adj[w].size() <= 2 && std::find(path.begin(), path.end(), w) == path.end()) {
                    next = w;
                }
            }
            if (next == n) {
                break;
            }
            path.push_back(next);
            prev = cur;
            cur = next;
        }
        return path;
    };
    if (t.family == Family::A) {
        std::size_t start = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (adj[i].size() <= 1) {
                start = i;
                break;
            }
        }
        return walk(start, n);
    }
    std::size_t branch = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (adj[i].size() == 3) {
            branch = i;
        }
    }
    if (branch == n) {
        throw LatticeError("Dynkin diagram has no branch node");
    }
    // Arms from the branch node, as paths moving away from it.
    std::vector<std::vector<std::size_t>> arms;
    for (auto w : adj[branch]) {
        arms.push_back(walk(w, branch));
    }
    std::stable_sort(arms.begin(), arms.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (t.family == Family::D) {
        // arms: two of length 1, one long arm (reversed gives d_1 ... d_{n-3}).
        std::vector<std::size_t> longest = arms[2];
        std::reverse(longest.begin(), longest.end());
        order = longest;
        order.push_back(branch);
        order.push_back(arms[0][0]);
        order.push_back(arms[1][0]);
        return order;
    }
    // E_n: arms lengths 1, 2, n-4. Order e1 e2 e3 e4 e5 ... .
    const auto& short_arm = arms[0];
    const auto& mid_arm = arms[1];
    const auto& long_arm = arms[2];
    order.push_back(mid_arm[1]);
    order.push_back(short_arm[0]);
    order.push_back(mid_arm[0]);
    order.push_back(branch);
    for (auto w : long_arm) {
        order.push_back(w);
    }
    return order;
}

} // namespace detail

/// Decomposes the root system spanned by `roots` (vectors in ambient coordinates, any sign convention
/// of norm -2) into irreducible components with Bourbaki-ordered simple roots.
inline RootSystemData analyze_roots(const std::vector<IntVector>& roots, const IntMatrix& ambient_gram)
{
    std::set<IntVector> all;
    for (const auto& r : roots) {
        all.insert(r);
        all.insert(detail::negate(r));
    }
    std::vector<IntVector> rs(all.begin(), all.end());
    const std::size_t m = rs.size();
    const std::size_t dim = ambient_gram.rows();

    std::vector<IntVector> grs(m);
    for (std::size_t i = 0; i < m; ++i) {
        grs[i] = row_times(rs[i], ambient_gram);
    }
    auto ip = [&](std::size_t i, const IntVector& v) {
        Integer s = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            s += grs[i][k] * v[k];
        }
        return s;
    };

    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (find(i) != find(j) && sgn(ip(i, rs[j])) != 0) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < m; ++i) {
        groups[find(i)].push_back(i);
    }

    std::mt19937 rng(20240601u);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);

    RootSystemData data;
    for (const auto& [root, members] : groups) {
        IntMatrix span(0, dim);
        for (auto i : members) {
            span.append_row(std::span<const Integer>(rs[i]));
        }
        const std::size_t rank = rank_of(span);
        RootType type = detail::classify_component(rank, members.size());

        std::vector<std::size_t> positive;
        for (int attempt = 0; attempt < 100; ++attempt) {
            IntVector w(dim);
            for (auto& x : w) {
                x = dist(rng);
            }
            positive.clear();
            bool regular = true;
            for (auto i : members) {
                Integer f = 0;
                for (std::size_t k = 0; k < dim; ++k) {
                    f += rs[i][k] * w[k];
                }
                if (sgn(f) == 0) {
                    regular = false;
                    break;
                }
                if (sgn(f) > 0) {
                    positive.push_back(i);
                }
            }
            if (regular) {
                break;
            }
        }
        std::set<IntVector> pos_set;
        for (auto i : positive) {
            pos_set.insert(rs[i]);
        }
        std::vector<std::size_t> simple;
        for (auto i : positive) {
            bool decomposable = false;
            for (auto j : positive) {
                if (i == j) {
                    continue;
                }
                IntVector d(dim);
                for (std::size_t k = 0; k < dim; ++k) {
                    d[k] = rs[i][k] - rs[j][k];
                }
                if (pos_set.count(d)) {
                    decomposable = true;
                    break;
                }
            }
            if (!decomposable) {
                simple.push_back(i);
            }
        }
        if (simple.size() != rank) {
            throw LatticeError("failed to find a simple system");
        }
        std::vector<std::vector<std::size_t>> adj(rank);
        for (std::size_t a = 0; a < rank; ++a) {
            for (std::size_t b = a + 1; b < rank; ++b) {
                if (sgn(ip(simple[a], rs[simple[b]])) != 0) {
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
            }
        }
        auto order = detail::bourbaki_order(type, adj);
        RootComponent comp{type, IntMatrix(0, dim)};
        for (auto o : order) {
            comp.simple_roots.append_row(std::span<const Integer>(rs[simple[o]]));
        }
        data.components.push_back(std::move(comp));
    }
    std::stable_sort(data.components.begin(), data.components.end(),
                     [](const RootComponent& a, const RootComponent& b) { return a.type < b.type; });
    return data;
}

} // namespace k3fib
