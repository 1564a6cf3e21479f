#pragma once

#include "k3fib/niemeier.hpp"

#include <map>
#include <numeric>

namespace k3fib {

/// The pieces of A5+A1 that get placed into Niemeier components.
enum class SubKind { A1, A5, A5A1 };

inline std::string sub_kind_name(SubKind k)
{
    switch (k) {
    case SubKind::A1: return "A1";
    case SubKind::A5: return "A5";
    case SubKind::A5A1: return "A5+A1";
    }
    return "";
}

inline SubKind parse_sub_kind(const std::string& s)
{
    if (s == "A1") {
        return SubKind::A1;
    }
    if (s == "A5") {
        return SubKind::A5;
    }
    if (s == "A5+A1" || s == "A1+A5") {
        return SubKind::A5A1;
    }
    throw LatticeError("unknown sublattice '" + s + "' (expected A1, A5 or A5+A1)");
}

inline int sub_kind_rank(SubKind k)
{
    return k == SubKind::A1 ? 1 : k == SubKind::A5 ? 5 : 6;
}

/// One embedding class of A1, A5 or A5+A1 into an irreducible root lattice.
struct ComponentEmbedding {
    RootType target;
    SubKind kind = SubKind::A1;
    std::string tag;   // distinguishes several classes of the same kind; empty when there is one
    IntMatrix images;  // simple roots of the source (A5 first, then A1) in target simple-root coordinates
};

namespace detail {

inline std::string invariants_string(const IntVector& v)
{
    std::string s;
    for (const auto& x : v) {
        s += (s.empty() ? "" : ",") + x.get_str();
    }
    return s;
}

inline std::vector<IntVector> all_roots(const RootType& t)
{
    std::vector<IntVector> out;
    for (const auto& r : positive_roots(t)) {
        out.push_back(r);
        out.push_back(negate(r));
    }
    return out;
}

struct RootTable {
    std::vector<std::vector<long>> roots; // positive roots, simple-root coordinates
    std::vector<std::vector<int>> ip;
};

inline const RootTable& root_table(const RootType& t)
{
    static std::map<std::pair<int, int>, RootTable> cache;
    auto key = std::make_pair(static_cast<int>(t.family), t.rank);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    RootTable tab;
    const IntMatrix g = t.gram();
    for (const auto& r : positive_roots(t)) {
        std::vector<long> v;
        for (const auto& z : r) {
            v.push_back(z.get_si());
        }
        tab.roots.push_back(std::move(v));
    }
    const std::size_t m = tab.roots.size();
    const std::size_t n = t.rank;
    tab.ip.assign(m, std::vector<int>(m, 0));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            long s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    s += tab.roots[a][i] * g(i, j).get_si() * tab.roots[b][j];
                }
            }
            tab.ip[a][b] = static_cast<int>(s);
        }
    }
    return cache.emplace(key, std::move(tab)).first->second;
}

/// Root type of the root system formed by a subset of positive roots (closed under the root system operations).
inline RootLatticeType root_type_of_subset(const RootTable& tab, const std::vector<std::size_t>& subset)
{
    const std::size_t m = subset.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (tab.ip[subset[a]][subset[b]] != 0) {
                parent[find(a)] = find(b);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t a = 0; a < m; ++a) {
        groups[find(a)].push_back(subset[a]);
    }
    RootLatticeType out;
    for (const auto& [root, members] : groups) {
        IntMatrix span(0, tab.roots.front().size());
        for (auto k : members) {
            IntVector v(tab.roots[k].begin(), tab.roots[k].end());
            span.append_row(std::span<const Integer>(v));
        }
        out.push_back(classify_component(rank_of(span), 2 * members.size()));
    }
    return sorted(out);
}

} // namespace detail

/// True when the rows span a primitive sublattice of the root lattice (simple-root coordinates).
inline bool is_primitive_embedding(const IntMatrix& images)
{
    return is_primitive(images);
}

/// Invariant of the Weyl-group class of a sublattice S of the root lattice of t: root type and Smith invariants of
/// S-perp, and for each fundamental-weight class the determinant of S-perp inside root lattice + that weight.
inline std::string embedding_class_key(const RootType& t, const IntMatrix& images)
{
    const IntMatrix g = t.gram();
    const IntegerLattice x(g);
    const auto& tab = detail::root_table(t);
    const std::size_t n = t.rank;
    std::vector<long> gs(images.rows() * n);
    for (std::size_t r = 0; r < images.rows(); ++r) {
        auto row = row_times(images.row_vector(r), g);
        for (std::size_t i = 0; i < n; ++i) {
            gs[r * n + i] = row[i].get_si();
        }
    }
    std::vector<std::size_t> perp;
    for (std::size_t k = 0; k < tab.roots.size(); ++k) {
        bool ok = true;
        for (std::size_t r = 0; r < images.rows() && ok; ++r) {
            long s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                s += gs[r * n + i] * tab.roots[k][i];
            }
            ok = s == 0;
        }
        if (ok) {
            perp.push_back(k);
        }
    }
    std::string key = type_name(detail::root_type_of_subset(tab, perp));
    IntMatrix c = x.orthogonal_complement(images);
    key += "|" + detail::invariants_string(smith_normal_form(congruence(c, g)).invariants());

    RatMatrix w = fundamental_weights(t);
    std::vector<std::size_t> reps;
    for (std::size_t j = 0; j < n; ++j) {
        bool trivial = true;
        for (std::size_t i = 0; i < n; ++i) {
            trivial = trivial && is_integral(w(j, i));
        }
        bool seen = false;
        for (auto k : reps) {
            bool same = true;
            for (std::size_t i = 0; i < n; ++i) {
                same = same && is_integral(w(j, i) - w(k, i));
            }
            seen = seen || same;
        }
        if (!trivial && !seen) {
            reps.push_back(j);
        }
    }
    for (auto j : reps) {
        Integer den = 1;
        for (std::size_t i = 0; i < n; ++i) {
            den = lcm_of(den, w(j, i).get_den());
        }
        IntMatrix gens(0, n);
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n, Integer(0));
            e[i] = den;
            gens.append_row(std::span<const Integer>(e));
        }
        IntVector wj(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational q = w(j, i) * den;
            wj[i] = q.get_num();
        }
        gens.append_row(std::span<const Integer>(wj));
        IntMatrix b = hermite_normal_form(gens, false).h; // basis of den * X_j
        IntMatrix scaled_images = images;
        for (std::size_t r = 0; r < scaled_images.rows(); ++r) {
            for (std::size_t i = 0; i < n; ++i) {
                scaled_images(r, i) *= den;
            }
        }
        IntMatrix perp = left_kernel(b * g * scaled_images.transpose());
        IntMatrix basis = perp * b;
        Integer d = determinant(congruence(basis, g));
        // Undo the scaling: each basis vector carries a factor den.
        Integer scale = 1;
        for (std::size_t r = 0; r < basis.rows(); ++r) {
            scale *= den * den;
        }
        key += "|" + make_rational(d, scale).get_str();
    }
    return key;
}

/// Exhaustive search for the embedding classes of A1, A5 or A5+A1 into the root lattice of t, one primitive
/// representative per class key.
inline std::vector<ComponentEmbedding> bruteforce_embeddings(const RootType& t, SubKind kind)
{
    const IntMatrix g = t.gram();
    const std::size_t n = t.rank;
    auto roots = detail::all_roots(t);
    std::vector<std::vector<int>> table(roots.size(), std::vector<int>(roots.size()));
    for (std::size_t a = 0; a < roots.size(); ++a) {
        auto ga = row_times(roots[a], g);
        for (std::size_t b = 0; b < roots.size(); ++b) {
            Integer s = 0;
            for (std::size_t i = 0; i < n; ++i) {
                s += ga[i] * roots[b][i];
            }
            table[a][b] = static_cast<int>(s.get_si());
        }
    }
    auto normalized = [](IntVector v) {
        for (const auto& x : v) {
            if (sgn(x) != 0) {
                if (sgn(x) < 0) {
                    v = detail::negate(v);
                }
                break;
            }
        }
        return v;
    };

    std::map<std::string, ComponentEmbedding> found;
    auto offer = [&](const IntMatrix& images) {
        if (!is_primitive_embedding(images)) {
            return;
        }
        std::string key = embedding_class_key(t, images);
        if (!found.count(key)) {
            found.emplace(key, ComponentEmbedding{t, kind, "", images});
        }
    };

    if (kind == SubKind::A1) {
        IntMatrix m(1, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(0, i) = roots.front()[i];
        }
        offer(m);
    } else {
        std::set<std::set<IntVector>> spans;
        std::vector<std::size_t> chain{0};
        std::function<void()> grow = [&]() {
            if (chain.size() == 5) {
                std::set<IntVector> span;
                for (std::size_t a = 0; a < 5; ++a) {
                    IntVector s(n, Integer(0));
                    for (std::size_t b = a; b < 5; ++b) {
                        for (std::size_t i = 0; i < n; ++i) {
                            s[i] += roots[chain[b]][i];
                        }
                        span.insert(normalized(s));
                    }
                }
                if (!spans.insert(span).second) {
                    return;
                }
                IntMatrix a5(0, n);
                for (auto c : chain) {
                    a5.append_row(std::span<const Integer>(roots[c]));
                }
                if (kind == SubKind::A5) {
                    offer(a5);
                    return;
                }
                for (std::size_t r = 0; r < roots.size(); r += 2) {
                    bool perp = true;
                    for (auto c : chain) {
                        perp = perp && table[r][c] == 0;
                    }
                    if (perp) {
                        IntMatrix m = a5;
                        m.append_row(std::span<const Integer>(roots[r]));
                        offer(m);
                    }
                }
                return;
            }
            for (std::size_t r = 0; r < roots.size(); ++r) {
                if (table[r][chain.back()] != 1) {
                    continue;
                }
                bool ok = true;
                for (std::size_t k = 0; k + 1 < chain.size() && ok; ++k) {
                    ok = table[r][chain[k]] == 0;
                }
                if (!ok) {
                    continue;
                }
                chain.push_back(r);
                grow();
                chain.pop_back();
            }
        };
        if (t.rank >= 5) {
            grow();
        }
    }
    std::vector<ComponentEmbedding> out;
    for (auto& [key, e] : found) {
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace k3fib

namespace k3fib {

namespace detail {

/// Rows of simple-root indicator vectors; each inner list holds (1-based node, coefficient) pairs.
inline IntMatrix node_rows(int rank, const std::vector<std::vector<std::pair<int, long>>>& rows)
{
    IntMatrix m(rows.size(), rank);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (auto [node, coeff] : rows[r]) {
            m(r, node - 1) += coeff;
        }
    }
    return m;
}

inline IntMatrix chain(int rank, std::initializer_list<int> nodes)
{
    std::vector<std::vector<std::pair<int, long>>> rows;
    for (int n : nodes) {
        rows.push_back({{n, 1}});
    }
    return node_rows(rank, rows);
}

inline IntMatrix stack(IntMatrix a, const IntMatrix& b)
{
    for (std::size_t i = 0; i < b.rows(); ++i) {
        a.append_row(b.row(i));
    }
    return a;
}

} // namespace detail

/// Frozen list of embedding classes (up to the Weyl group) of A1, A5 and A5+A1 into an irreducible root
/// lattice, restricted to primitive ones. The test suite checks it against bruteforce_embeddings.
inline std::vector<ComponentEmbedding> embedding_catalog(const RootType& t, SubKind kind)
{
    using detail::chain;
    using detail::stack;
    const int n = t.rank;
    std::vector<ComponentEmbedding> out;
    auto add = [&](std::string tag, IntMatrix m) { out.push_back({t, kind, std::move(tag), std::move(m)}); };

    if (kind == SubKind::A1) {
        add("", chain(n, {1}));
        return out;
    }
    switch (t.family) {
    case Family::A:
        if (kind == SubKind::A5 && n >= 5) {
            add("", chain(n, {1, 2, 3, 4, 5}));
        } else if (kind == SubKind::A5A1 && n >= 7) {
            add("", chain(n, {1, 2, 3, 4, 5, 7}));
        }
        break;
    case Family::D:
        if (kind == SubKind::A5) {
            if (n == 6) {
                add("e5-e6", chain(n, {1, 2, 3, 4, 5}));
                add("e5+e6", chain(n, {1, 2, 3, 4, 6}));
            } else if (n >= 7) {
                add("", chain(n, {n - 5, n - 4, n - 3, n - 2, n - 1}));
            }
        } else if (n == 8) {
            IntMatrix a5 = chain(n, {3, 4, 5, 6, 7});
            add("e1-e2", stack(a5, chain(n, {1})));
            add("e1+e2", stack(a5, detail::node_rows(n, {{{1, 1}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 1}, {8, 1}}})));
        } else if (n >= 9) {
            add("", stack(chain(n, {n - 5, n - 4, n - 3, n - 2, n - 1}), chain(n, {1})));
        }
        break;
    case Family::E:
        if (kind == SubKind::A5) {
            if (n == 7) {
                add("e1e3e4e5e6", chain(n, {1, 3, 4, 5, 6}));
                add("e2e4e5e6e7", chain(n, {2, 4, 5, 6, 7}));
            } else {
                add("", chain(n, {1, 3, 4, 5, 6}));
            }
        } else if (n == 7) {
            add("", chain(n, {2, 4, 5, 6, 7, 1}));
        } else if (n == 8) {
            add("", chain(n, {1, 3, 4, 5, 6, 8}));
        }
        break;
    }
    return out;
}

/// A piece of A5+A1 placed into one component of a Niemeier lattice.
struct PlacedPart {
    std::size_t component = 0;
    ComponentEmbedding embedding;
};

/// An embedding of A5+A1 into the root lattice of a Niemeier lattice, given component by component.
struct Assignment {
    std::vector<PlacedPart> parts; // either one A5+A1 part, or an A5 part followed by an A1 part

    /// 6 x 24 matrix: images of the A5 simple roots, then the A1 root, in the simple-root basis of L.
    IntMatrix image(const NiemeierLattice& l) const
    {
        IntMatrix m(0, l.dim());
        for (const auto& p : parts) {
            const auto& e = p.embedding.images;
            for (std::size_t r = 0; r < e.rows(); ++r) {
                IntVector v(l.dim(), Integer(0));
                for (std::size_t i = 0; i < e.cols(); ++i) {
                    v[l.offsets()[p.component] + i] = e(r, i);
                }
                m.append_row(std::span<const Integer>(v));
            }
        }
        return m;
    }

    std::string label(const NiemeierLattice& l) const
    {
        std::string s;
        for (const auto& p : parts) {
            const auto& comps = l.components();
            const RootType& t = comps[p.component];
            std::string where = t.name();
            if (std::count(comps.begin(), comps.end(), t) > 1) {
                std::size_t k = 0;
                for (std::size_t c = 0; c <= p.component; ++c) {
                    k += comps[c] == t ? 1 : 0;
                }
                where += "(" + std::to_string(k) + ")";
            }
            s += (s.empty() ? "" : ", ") + sub_kind_name(p.embedding.kind) + " in " + where;
            if (!p.embedding.tag.empty()) {
                s += " [" + p.embedding.tag + "]";
            }
        }
        return s;
    }

    /// Same placement up to permuting isomorphic components.
    std::string permutation_key(const NiemeierLattice& l) const
    {
        std::string s;
        for (const auto& p : parts) {
            s += sub_kind_name(p.embedding.kind) + ":" + l.components()[p.component].name() + ":" + p.embedding.tag + ";";
        }
        return s;
    }
};

/// All ways of placing A5+A1 into the components of l using the catalog: A5+A1 inside one component, or A5 and
/// A1 in two different components. With up_to_permutation, placements differing only by a permutation of
/// isomorphic components are listed once.
inline std::vector<Assignment> distribute_assignments(const NiemeierLattice& l, bool up_to_permutation = false)
{
    std::vector<Assignment> out;
    std::set<std::string> keys;
    auto push = [&](Assignment a) {
        if (up_to_permutation && !keys.insert(a.permutation_key(l)).second) {
            return;
        }
        out.push_back(std::move(a));
    };
    const auto& comps = l.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (auto& e : embedding_catalog(comps[i], SubKind::A5A1)) {
            push(Assignment{{PlacedPart{i, e}}});
        }
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (auto& a5 : embedding_catalog(comps[i], SubKind::A5)) {
            for (std::size_t j = 0; j < comps.size(); ++j) {
                if (j == i) {
                    continue;
                }
                for (auto& a1 : embedding_catalog(comps[j], SubKind::A1)) {
                    push(Assignment{{PlacedPart{i, a5}, PlacedPart{j, a1}}});
                }
            }
        }
    }
    return out;
}

} // namespace k3fib
