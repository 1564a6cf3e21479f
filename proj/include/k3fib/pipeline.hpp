#pragma once

#include "k3fib/discriminant.hpp"
#include "k3fib/embeddings.hpp"
#include "k3fib/lll.hpp"

#include <cstdint>
#include <optional>
#include <variant>

namespace k3fib {

/// Constants of the surface: rank NS = 20, Euler characteristic of O is 2.
inline constexpr int kNsRank = 20;
inline constexpr int kChi = 2;
inline constexpr int kFrameRank = kNsRank - 2;

struct TranscendentalData {
    IntegerLattice t_s; // <6> + <2>, positive definite
    IntegerLattice t;   // A5 + A1, negative definite
};

/// Builds T_S and its root-lattice partner T = A5 + A1 and checks that they fit together.
inline TranscendentalData verify_T()
{
    IntegerLattice ts(IntMatrix{{6, 0}, {0, 2}});
    IntegerLattice t(block_diagonal({RootType::A(5).gram(), RootType::A(1).gram()}));
    if (t.rank() != ts.rank() + 4) {
        throw LatticeError("rank T != rank T_S + 4");
    }
    if (!t.is_negative_definite() || !t.is_even()) {
        throw LatticeError("T is not an even negative definite lattice");
    }
    if (!is_isometric(DiscriminantForm(t), DiscriminantForm(ts))) {
        throw LatticeError("discriminant forms of T and T_S differ");
    }
    return {ts, t};
}

/// One elliptic fibration: the frame W = phi(T)-perp in L and what it says about the fibration.
struct FibrationRecord {
    std::string id;
    std::string niemeier;
    std::string assignment;
    IntMatrix n_gram;          // N = phi(T)-perp in L_root
    IntMatrix w_gram;          // W = phi(T)-perp in L
    RootLatticeType n_root;
    Integer w_index = 0;       // [W : N]
    AbelianGroup w_mod_n;
    int mw_rank = 0;
    AbelianGroup torsion;
    RatMatrix height_gram;     // on MW / torsion
    std::string invariant;     // canonical text behind the fingerprint
    std::string fingerprint;
};

namespace detail {

inline std::string fnv1a_hex(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

/// Component contributions of an element v of W (coordinates in the W basis) to its height:
/// for each root component, the minimal norm in the class of v's projection to the dual of that component.
inline std::vector<std::pair<std::string, Rational>> contributions(const IntVector& v, const IntMatrix& gram,
                                                                   const std::vector<RootComponent>& comps)
{
    std::vector<std::pair<std::string, Rational>> out;
    IntVector gv = row_times(v, gram);
    for (const auto& c : comps) {
        const std::size_t k = c.simple_roots.rows();
        RatVector pairing(k);
        for (std::size_t i = 0; i < k; ++i) {
            Integer ip = 0;
            for (std::size_t j = 0; j < gv.size(); ++j) {
                ip += gv[j] * c.simple_roots(i, j);
            }
            pairing[i] = ip;
        }
        RatVector p = row_times(pairing, fundamental_weights(c.type));
        Rational m = class_min_norm(c.type, p);
        if (sgn(m) != 0) {
            out.emplace_back(c.type.name(), m);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Frame data computed from W alone: root type, Mordell-Weil rank and torsion, height lattice, fingerprint.
struct FrameAnalysis {
    RootSystemData roots;
    int mw_rank = 0;
    AbelianGroup torsion;
    RatMatrix height_gram;
    std::string invariant;
};

/// Analyzes a frame lattice given by its Gram matrix and the roots it contains (coordinates in its basis).
/// The invariant lists, for every Mordell-Weil element of height up to a bound fixed by the height lattice,
/// its height and the nonzero component contributions.
inline FrameAnalysis analyze_frame(const IntMatrix& gram, const std::vector<IntVector>& roots)
{
    const std::size_t n = gram.rows();
    FrameAnalysis fa;
    fa.roots = analyze_roots(roots, gram);
    IntMatrix r = fa.roots.simple_roots(n);
    const std::size_t m = r.rows();

    // Basis f of W adapted to W_root: W_root = span(d_i f_i, i < m).
    IntMatrix f = IntMatrix::identity(n);
    IntVector d;
    if (m > 0) {
        auto s = smith_normal_form(r);
        f = s.v_inv;
        d = s.invariants();
    }
    AbelianGroup mw = quotient_group(r, n);
    fa.mw_rank = static_cast<int>(mw.free_rank());
    fa.torsion = mw.torsion();

    // Orthogonal projection away from W_root, applied to the free basis vectors.
    RatMatrix g = to_rational(gram);
    RatMatrix rr = to_rational(r);
    RatMatrix proj_inv = m > 0 ? inverse(congruence(rr, g)) : RatMatrix(0, 0);
    auto project = [&](const IntVector& v) {
        RatVector x = to_rational(v);
        if (m == 0) {
            return x;
        }
        RatVector pair = row_times(row_times(x, g), rr.transpose());
        RatVector coeff = row_times(pair, proj_inv);
        RatVector sub = row_times(coeff, rr);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] -= sub[i];
        }
        return x;
    };
    const std::size_t rk = n - m;
    std::vector<RatVector> free_proj;
    for (std::size_t k = 0; k < rk; ++k) {
        free_proj.push_back(project(f.row_vector(m + k)));
    }
    fa.height_gram = RatMatrix(rk, rk);
    for (std::size_t a = 0; a < rk; ++a) {
        for (std::size_t b = 0; b < rk; ++b) {
            fa.height_gram(a, b) = -bilinear(free_proj[a], g, free_proj[b]);
        }
    }

    // Torsion representatives: combinations of f_i with 0 <= a_i < d_i.
    std::vector<IntVector> torsion_reps{IntVector(n, Integer(0))};
    for (std::size_t i = 0; i < m; ++i) {
        if (d[i] == 1) {
            continue;
        }
        std::vector<IntVector> next;
        for (const auto& t : torsion_reps) {
            for (Integer a = 0; a < d[i]; ++a) {
                IntVector v = t;
                for (std::size_t j = 0; j < n; ++j) {
                    v[j] += a * f(i, j);
                }
                next.push_back(std::move(v));
            }
        }
        torsion_reps = std::move(next);
    }

    // Free parts of height <= bound; the bound doubles from 4 until the vectors found span MW / torsion.
    Integer den = 1;
    for (std::size_t a = 0; a < rk; ++a) {
        for (std::size_t b = 0; b < rk; ++b) {
            den = lcm_of(den, fa.height_gram(a, b).get_den());
        }
    }
    IntMatrix hint(rk, rk);
    for (std::size_t a = 0; a < rk; ++a) {
        for (std::size_t b = 0; b < rk; ++b) {
            hint(a, b) = Integer(fa.height_gram(a, b) * den);
        }
    }
    Rational bound = 4;
    std::vector<std::pair<IntVector, Rational>> free_parts{{IntVector(rk, Integer(0)), Rational(0)}};
    if (rk > 0) {
        auto red = lll_reduce(hint);
        while (true) {
            std::vector<std::pair<IntVector, Rational>> found{{IntVector(rk, Integer(0)), Rational(0)}};
            IntMatrix span(0, rk);
            enumerate_short_vectors(red.gram, bound * den, [&](const IntVector& y, const Rational& h) {
                IntVector x = row_times(y, red.transform);
                span.append_row(std::span<const Integer>(x));
                found.emplace_back(x, h / den);
            });
            if (rank_of(span) == rk) {
                free_parts = std::move(found);
                break;
            }
            bound *= 2;
        }
    }

    std::vector<std::string> items;
    for (const auto& [x, h] : free_parts) {
        IntVector base(n, Integer(0));
        for (std::size_t k = 0; k < rk; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                base[j] += x[k] * f(m + k, j);
            }
        }
        for (const auto& t : torsion_reps) {
            IntVector v = base;
            for (std::size_t j = 0; j < n; ++j) {
                v[j] += t[j];
            }
            std::string item = to_string(h) + ":";
            for (const auto& [name, c] : detail::contributions(v, gram, fa.roots.components)) {
                item += name + "=" + to_string(c) + ",";
            }
            items.push_back(item);
        }
    }
    std::sort(items.begin(), items.end());

    std::string inv = type_name(fa.roots.type()) + "|r=" + std::to_string(fa.mw_rank) + "|tors=" +
                      fa.torsion.to_string() + "|disc=" +
                      detail::invariants_string(smith_normal_form(gram).invariants()) +
                      "|hdet=" + to_string(rk > 0 ? determinant(fa.height_gram) : Rational(1)) + "|B=" +
                      to_string(bound) + "|";
    for (const auto& it : items) {
        inv += it + ";";
    }
    fa.invariant = inv;
    return fa;
}

/// Reasons an assignment does not give a fibration.
struct Rejection {
    std::string reason;
};

/// Frame data for one embedding of T into L_root. Returns a rejection when the image is not primitive in L or
/// the complement is not a frame of this surface.
inline std::variant<FibrationRecord, Rejection> classify_assignment(const NiemeierLattice& l, const Assignment& a)
{
    const std::size_t dim = l.dim();
    const IntMatrix t = a.image(l);
    const IntMatrix& groot = l.root_gram();
    const RatMatrix binv = inverse(l.basis());

    IntMatrix t_l = to_integer(to_rational(t) * binv);
    if (!is_primitive(t_l)) {
        return Rejection{"image of T is not primitive in L"};
    }
    const IntMatrix& gl = l.gram();
    IntMatrix k = left_kernel(gl * t_l.transpose());
    IntMatrix gw = congruence(k, gl);
    if (k.rows() != static_cast<std::size_t>(kFrameRank) || abs(determinant(gw)) != 12) {
        return Rejection{"complement has |det| " + Integer(abs(determinant(gw))).get_str() + " instead of 12"};
    }
    static const DiscriminantForm expected = DiscriminantForm(verify_T().t_s).negated();
    if (!is_isometric(DiscriminantForm(IntegerLattice(gw)), expected)) {
        return Rejection{"discriminant form of the complement is not -q(T_S)"};
    }

    // Roots of W: roots of L are those of L_root, so take the positive roots orthogonal to T.
    IntMatrix tg = groot * t.transpose();
    std::vector<IntVector> roots_w;
    for (const auto& r : l.positive_roots()) {
        IntVector p = row_times(r, tg);
        if (std::all_of(p.begin(), p.end(), [](const Integer& z) { return sgn(z) == 0; })) {
            IntVector rl = to_integer(row_times(to_rational(r), binv));
            IntMatrix one(0, dim);
            one.append_row(std::span<const Integer>(rl));
            roots_w.push_back(coordinates_in(k, one).row_vector(0));
        }
    }
    FrameAnalysis fa = analyze_frame(gw, roots_w);

    IntMatrix n_root_coords = left_kernel(tg);
    IntMatrix n_l = to_integer(to_rational(n_root_coords) * binv);
    IntMatrix n_k = coordinates_in(k, n_l);

    FibrationRecord rec;
    rec.niemeier = l.name();
    rec.assignment = a.label(l);
    rec.n_gram = congruence(n_root_coords, groot);
    rec.w_gram = gw;
    rec.n_root = fa.roots.type();
    rec.w_mod_n = quotient_group(n_k, kFrameRank);
    rec.w_index = rec.w_mod_n.order();
    rec.mw_rank = fa.mw_rank;
    rec.torsion = fa.torsion;
    rec.height_gram = fa.height_gram;
    rec.invariant = fa.invariant;
    rec.fingerprint = detail::fnv1a_hex(fa.invariant);
    return rec;
}

/// A row of the reference classification: (Niemeier lattice, N_root, MW rank, MW torsion).
struct TableRow {
    std::string id;
    std::string niemeier;
    std::string n_root;
    int rank = 0;
    std::string torsion;

    std::string key() const { return niemeier + "|" + n_root + "|" + std::to_string(rank) + "|" + torsion; }
};

inline TableRow make_row(std::string id, std::string niemeier, const std::string& n_root, int rank,
                         const std::string& torsion)
{
    return {std::move(id), niemeier_by_name(niemeier).name(), type_name(parse_type(n_root)), rank,
            AbelianGroup::parse(torsion).to_string()};
}

/// Reference classification: the 52 elliptic fibrations of the surface.
inline const std::vector<TableRow>& reference_table()
{
    static const std::vector<TableRow> rows = [] {
        std::vector<TableRow> v;
        auto add = [&](const char* id, const char* l, const char* nr, int r, const char* tors) {
            v.push_back(make_row(id, l, nr, r, tors));
        };
        add("1", "E8^3", "A1+E8^2", 1, "0");
        add("2", "E8^3", "A1+A2+E7+E8", 0, "0");
        add("3", "E8 D16", "A1+D16", 1, "Z/2");
        add("4", "E8 D16", "A1+D8+E8", 1, "0");
        add("5", "E8 D16", "A1^2+A2+D14", 0, "Z/2");
        add("6", "E8 D16", "E7+D10", 1, "0");
        add("7", "E7^2 D10", "E7+D10", 1, "Z/2");
        add("8", "E7^2 D10", "A1^3+E7^2", 1, "Z/2");
        add("9", "E7^2 D10", "A1+D6+D10", 1, "Z/2");
        add("10", "E7^2 D10", "A2+D6+D10", 0, "Z/2");
        add("11", "E7^2 D10", "A1^2+D8+E7", 1, "Z/2");
        add("12", "E7^2 D10", "A1+A2+D8+E7", 0, "Z/2");
        add("13", "E7^2 D10", "D4+D6+E7", 1, "Z/2");
        add("14", "E7 A17", "A17", 1, "Z/3");
        add("15", "E7 A17", "A9+E7", 2, "0");
        add("16", "E7 A17", "A1+A15", 2, "0");
        add("17", "E7 A17", "A2+A15", 1, "0");
        add("18", "E7 A17", "A11+D6", 1, "0");
        add("19", "D24", "A1+D16", 1, "0");
        add("20", "D12^2", "A1+D4+D12", 1, "Z/2");
        add("21", "D12^2", "A1+D6+D10", 1, "Z/2");
        add("22", "D8^3", "A1+D8^2", 1, "Z/2");
        add("22(b)", "D8^3", "A1+D8^2", 1, "Z/2");
        add("23", "D8^3", "A1^3+D6+D8", 1, "Z/2 x Z/2");
        add("24", "D9 A15", "A1+A15", 2, "Z/2");
        add("25", "D9 A15", "A7+D9", 2, "0");
        add("26", "D9 A15", "A3+A13", 2, "0");
        add("27", "D9 A15", "A1+A9+D7", 1, "0");
        add("28", "E6^4", "A1+A5+E6^2", 0, "Z/3");
        add("29", "A11 E6 D7", "A3+D7+E6", 2, "0");
        add("30", "A11 E6 D7", "A1^2+A11+D5", 0, "Z/4");
        add("31", "A11 E6 D7", "A1+A9+D7", 1, "0");
        add("32", "A11 E6 D7", "A5+A11", 2, "Z/3");
        add("33", "A11 E6 D7", "A9+E6", 3, "0");
        add("34", "A11 E6 D7", "A1+A5+D5+E6", 1, "0");
        add("35", "A11 E6 D7", "A5^2+D7", 1, "0");
        add("36", "D6^4", "A1+D4+D6^2", 1, "Z/2 x Z/2");
        add("37", "D6 A9^2", "A1+A9+D6", 2, "Z/2");
        add("38", "D6 A9^2", "A3+A7+D6", 2, "0");
        add("39", "D6 A9^2", "A1+A3+A9+D4", 1, "Z/2");
        add("40", "D6 A9^2", "A7+A9", 2, "0");
        add("41", "D5^2 A7^2", "A7+D5^2", 1, "Z/4");
        add("42", "D5^2 A7^2", "A1+A5+D5^2", 2, "0");
        add("43", "D5^2 A7^2", "A1^2+A3+A7+D5", 1, "Z/4");
        add("44", "A8^3", "A8^2", 2, "Z/3");
        add("45", "A8^3", "A2+A6+A8", 2, "0");
        add("46", "A24", "A16", 2, "0");
        add("47", "A12^2", "A4+A12", 2, "0");
        add("48", "A12^2", "A6+A10", 2, "0");
        add("49", "A5^4 D4", "A3+A5^2+D4", 1, "Z/2");
        add("50", "A5^4 D4", "A1^3+A5^3", 0, "Z/2 x Z/6");
        add("51", "A6^4", "A4+A6^2", 2, "0");
        return v;
    }();
    return rows;
}

inline TableRow row_of(const FibrationRecord& r)
{
    return {r.id, r.niemeier, type_name(r.n_root), r.mw_rank, r.torsion.to_string()};
}

/// Assignment that did not produce a fibration, kept for reporting.
struct SkippedAssignment {
    std::string niemeier;
    std::string assignment;
    std::string reason;
};

struct ClassificationTable {
    std::vector<FibrationRecord> records;
    std::vector<SkippedAssignment> skipped;
    std::size_t assignments = 0;
};

/// Runs every assignment of A5 + A1 into every Niemeier lattice, keeps one record per frame fingerprint and
/// names records after the matching reference rows (first unused row with the same data, in generation order).
/// Records without a reference row are named extra1, extra2, ...
inline ClassificationTable classify_all()
{
    verify_T();
    ClassificationTable table;
    const auto& expected = reference_table();
    std::vector<bool> used(expected.size(), false);
    int extras = 0;
    for (const auto& l : niemeier_lattices()) {
        std::vector<FibrationRecord> here;
        std::set<std::string> prints;
        for (const auto& a : distribute_assignments(l)) {
            ++table.assignments;
            auto res = classify_assignment(l, a);
            if (auto* rej = std::get_if<Rejection>(&res)) {
                table.skipped.push_back({l.name(), a.label(l), rej->reason});
                continue;
            }
            auto& rec = std::get<FibrationRecord>(res);
            if (!prints.insert(rec.fingerprint).second) {
                continue;
            }
            std::string key = row_of(rec).key();
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (!used[i] && expected[i].key() == key) {
                    used[i] = true;
                    rec.id = expected[i].id;
                    break;
                }
            }
            here.push_back(std::move(rec));
        }
        // Reference order within a lattice; unmatched records go last.
        auto pos = [&](const FibrationRecord& r) {
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (!r.id.empty() && expected[i].id == r.id) {
                    return i;
                }
            }
            return expected.size();
        };
        std::stable_sort(here.begin(), here.end(),
                         [&](const FibrationRecord& x, const FibrationRecord& y) { return pos(x) < pos(y); });
        for (auto& r : here) {
            if (r.id.empty()) {
                r.id = "extra" + std::to_string(++extras);
            }
            table.records.push_back(std::move(r));
        }
    }
    table.skipped.push_back({"Leech", "", "no roots, so A5+A1 does not embed"});
    return table;
}

/// Differences between computed rows and reference rows, matched by (Niemeier, N_root, r, torsion) with
/// multiplicity. A leftover pair with the same lattice and N_root is reported as one changed row.
inline std::vector<std::string> compare_table(const std::vector<TableRow>& computed, const std::vector<TableRow>& expected)
{
    std::vector<bool> cu(computed.size(), false);
    std::vector<bool> eu(expected.size(), false);
    for (std::size_t e = 0; e < expected.size(); ++e) {
        for (std::size_t c = 0; c < computed.size(); ++c) {
            if (!cu[c] && computed[c].key() == expected[e].key()) {
                cu[c] = eu[e] = true;
                break;
            }
        }
    }
    auto describe = [](const TableRow& r) {
        return r.niemeier + " | " + r.n_root + " | r=" + std::to_string(r.rank) + " | " + r.torsion;
    };
    std::vector<std::string> diff;
    for (std::size_t e = 0; e < expected.size(); ++e) {
        if (eu[e]) {
            continue;
        }
        bool paired = false;
        for (std::size_t c = 0; c < computed.size() && !paired; ++c) {
            if (!cu[c] && computed[c].niemeier == expected[e].niemeier && computed[c].n_root == expected[e].n_root) {
                cu[c] = true;
                paired = true;
                diff.push_back("changed row " + expected[e].id + ": expected " + describe(expected[e]) +
                               ", computed " + describe(computed[c]));
            }
        }
        if (!paired) {
            diff.push_back("missing row " + expected[e].id + ": " + describe(expected[e]));
        }
    }
    for (std::size_t c = 0; c < computed.size(); ++c) {
        if (!cu[c]) {
            diff.push_back("extra row " + computed[c].id + ": " + describe(computed[c]));
        }
    }
    return diff;
}

inline std::vector<std::string> compare_table(const ClassificationTable& computed, const std::vector<TableRow>& expected)
{
    std::vector<TableRow> rows;
    for (const auto& r : computed.records) {
        rows.push_back(row_of(r));
    }
    return compare_table(rows, expected);
}

} // namespace k3fib
