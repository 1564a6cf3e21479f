#pragma once

#include "k3fib/root_systems.hpp"

#include <array>
#include <set>

namespace k3fib {

struct GlueTerm {
    std::size_t component;
    GlueKind kind;
    long multiple = 1;
};

using GlueWord = std::vector<GlueTerm>;

/// Class of a rational vector (simple-root coordinates of one component) modulo the root lattice,
/// and the minimal norm (absolute value) of vectors in that class.
inline Rational class_min_norm(const RootType& t, const RatVector& v)
{
    bool integral = std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integral(q); });
    if (integral) {
        return 0;
    }
    static std::map<std::pair<int, int>, RatMatrix> cache;
    auto key = std::make_pair(static_cast<int>(t.family), t.rank);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, fundamental_weights(t)).first;
    }
    const RatMatrix& w = it->second;
    std::optional<Rational> best;
    for (std::size_t j = 0; j < w.rows(); ++j) {
        for (int sign : {1, -1}) {
            bool same = true;
            for (std::size_t i = 0; i < v.size() && same; ++i) {
                same = is_integral(v[i] - sign * w(j, i));
            }
            if (same) {
                Rational n = -w(j, j);
                if (!best || n < *best) {
                    best = n;
                }
            }
        }
    }
    if (!best) {
        throw LatticeError("vector is not in the dual of the root lattice");
    }
    return *best;
}

/// An even unimodular lattice of rank 24 with nonzero roots, presented as its root lattice plus glue.
class NiemeierLattice {
public:
    NiemeierLattice(std::string name, std::vector<RootType> components, std::vector<GlueWord> glue)
        : name_(std::move(name)), components_(std::move(components)), glue_words_(std::move(glue))
    {
        std::size_t off = 0;
        for (const auto& c : components_) {
            offsets_.push_back(off);
            off += c.rank;
        }
        dim_ = off;
        std::vector<IntMatrix> blocks;
        for (const auto& c : components_) {
            blocks.push_back(c.gram());
        }
        root_gram_ = block_diagonal(blocks);
        glue_ = RatMatrix(0, dim_);
        for (const auto& word : glue_words_) {
            RatVector g(dim_);
            for (const auto& term : word) {
                if (term.component >= components_.size()) {
                    throw LatticeError("glue term refers to a missing component");
                }
                auto part = glue_vector(components_[term.component], term.kind, term.multiple);
                for (std::size_t i = 0; i < part.size(); ++i) {
                    g[offsets_[term.component] + i] += part[i];
                }
            }
            glue_.append_row(std::span<const Rational>(g));
        }
        build_basis();
    }

    const std::string& name() const noexcept { return name_; }
    const std::vector<RootType>& components() const noexcept { return components_; }
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
    std::size_t dim() const noexcept { return dim_; }
    RootLatticeType root_type() const { return sorted(components_); }

    /// Gram of the simple roots of all components (negative definite).
    const IntMatrix& root_gram() const noexcept { return root_gram_; }
    /// Glue generators, rational coordinates in the simple-root basis.
    const RatMatrix& glue() const noexcept { return glue_; }
    /// Basis of L in the simple-root basis (rows, rational).
    const RatMatrix& basis() const noexcept { return basis_; }
    /// Gram matrix of that basis.
    const IntMatrix& gram() const noexcept { return gram_; }

    /// L / L_root.
    AbelianGroup glue_group() const
    {
        RatMatrix coords = to_rational(IntMatrix::identity(dim_)) * inverse(basis_);
        return quotient_group(to_integer(coords), dim_);
    }

    Integer coxeter_number() const { return components_.empty() ? Integer(0) : Integer(components_.front().coxeter()); }

    /// Every element of L / L_root as a vector with entries in [0, 1).
    std::vector<RatVector> glue_classes() const
    {
        Integer den_big = 1;
        for (std::size_t i = 0; i < glue_.rows(); ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                den_big = lcm_of(den_big, glue_(i, j).get_den());
            }
        }
        const long den = den_big.get_si();
        std::vector<std::vector<long>> gens;
        for (std::size_t i = 0; i < glue_.rows(); ++i) {
            std::vector<long> g(dim_);
            for (std::size_t j = 0; j < dim_; ++j) {
                Rational x = glue_(i, j) * den;
                g[j] = mod_rational(x, Rational(den)).get_num().get_si();
            }
            gens.push_back(std::move(g));
        }
        std::set<std::vector<long>> seen{std::vector<long>(dim_, 0)};
        std::vector<std::vector<long>> order{std::vector<long>(dim_, 0)};
        for (const auto& g : gens) {
            const std::size_t n0 = order.size();
            for (std::size_t k = 0; k < n0; ++k) {
                std::vector<long> y = order[k];
                while (true) {
                    for (std::size_t i = 0; i < dim_; ++i) {
                        y[i] = (y[i] + g[i]) % den;
                    }
                    if (!seen.insert(y).second) {
                        break;
                    }
                    order.push_back(y);
                }
            }
        }
        std::vector<RatVector> out;
        out.reserve(order.size());
        for (const auto& v : order) {
            RatVector r(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                r[i] = make_rational(v[i], den);
            }
            out.push_back(std::move(r));
        }
        return out;
    }

    /// Minimal norm over the coset of a glue class.
    Rational coset_min_norm(const RatVector& cls) const
    {
        Rational s = 0;
        for (std::size_t c = 0; c < components_.size(); ++c) {
            RatVector part(cls.begin() + offsets_[c], cls.begin() + offsets_[c] + components_[c].rank);
            s += class_min_norm(components_[c], part);
        }
        return s;
    }

    /// Smallest norm of a vector of L outside L_root (0 when L == L_root).
    Rational min_glue_norm() const
    {
        std::optional<Rational> best;
        for (const auto& cls : glue_classes()) {
            bool zero = std::all_of(cls.begin(), cls.end(), [](const Rational& q) { return sgn(q) == 0; });
            if (zero) {
                continue;
            }
            Rational n = coset_min_norm(cls);
            if (!best || n < *best) {
                best = n;
            }
        }
        return best.value_or(Rational(0));
    }

    /// Positive roots of all components in 24-dimensional simple-root coordinates.
    std::vector<IntVector> positive_roots() const
    {
        std::vector<IntVector> out;
        for (std::size_t c = 0; c < components_.size(); ++c) {
            for (const auto& r : k3fib::positive_roots(components_[c])) {
                IntVector v(dim_, Integer(0));
                std::copy(r.begin(), r.end(), v.begin() + offsets_[c]);
                out.push_back(std::move(v));
            }
        }
        return out;
    }

    /// Full validity check: rank 24, even, unimodular, and glue adds no roots.
    std::vector<std::string> validate() const
    {
        std::vector<std::string> problems;
        if (dim_ != 24) {
            problems.push_back("rank is " + std::to_string(dim_));
        }
        if (!integral_) {
            problems.push_back("glue vectors do not pair integrally");
            return problems;
        }
        IntegerLattice l(gram_);
        if (!l.is_even()) {
            problems.push_back("lattice is odd");
        }
        if (abs(l.determinant()) != 1) {
            problems.push_back("determinant is " + l.determinant().get_str());
        }
        Integer root_det = 1;
        for (const auto& c : components_) {
            root_det *= c.discriminant();
        }
        Integer glue_order = glue_group().order();
        if (glue_order * glue_order != root_det) {
            problems.push_back("glue group order " + glue_order.get_str() + " does not match discriminant " +
                               root_det.get_str());
        }
        Rational m = min_glue_norm();
        if (sgn(m) != 0 && m <= 2) {
            problems.push_back("glue adds vectors of norm " + m.get_str());
        }
        return problems;
    }

private:
    void build_basis()
    {
        Integer den = 1;
        for (std::size_t i = 0; i < glue_.rows(); ++i) {
            for (std::size_t j = 0; j < glue_.cols(); ++j) {
                den = lcm_of(den, glue_(i, j).get_den());
            }
        }
        IntMatrix gens(0, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            IntVector e(dim_, Integer(0));
            e[i] = den;
            gens.append_row(std::span<const Integer>(e));
        }
        for (std::size_t i = 0; i < glue_.rows(); ++i) {
            IntVector g(dim_);
            for (std::size_t j = 0; j < dim_; ++j) {
                Rational x = glue_(i, j) * den;
                g[j] = x.get_num();
            }
            gens.append_row(std::span<const Integer>(g));
        }
        IntMatrix h = hermite_normal_form(gens, false).h;
        basis_ = RatMatrix(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                basis_(i, j) = Rational(h(i, j), den);
                basis_(i, j).canonicalize();
            }
        }
        RatMatrix g = basis_ * to_rational(root_gram_) * basis_.transpose();
        integral_ = true;
        gram_ = IntMatrix(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                integral_ = integral_ && is_integral(g(i, j));
                gram_(i, j) = g(i, j).get_num();
            }
        }
    }

    std::string name_;
    std::vector<RootType> components_;
    std::vector<GlueWord> glue_words_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
    IntMatrix root_gram_;
    RatMatrix glue_;
    RatMatrix basis_;
    IntMatrix gram_;
    bool integral_ = true;
};

namespace detail {

inline GlueWord alpha_word(const std::vector<long>& coeffs)
{
    GlueWord w;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            w.push_back({i, GlueKind::Alpha, coeffs[i]});
        }
    }
    return w;
}

/// Words c_0 * alpha^0 + rotation_k(tail) over the remaining components, for every cyclic rotation of tail.
inline std::vector<GlueWord> rotated_words(long head, const std::vector<long>& tail)
{
    std::vector<GlueWord> out;
    const std::size_t n = tail.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<long> c{head};
        for (std::size_t i = 0; i < n; ++i) {
            c.push_back(tail[(i + n - k) % n]);
        }
        out.push_back(alpha_word(c));
    }
    return out;
}

// F4 = {0, 1, w, w^2} encoded as 0, 1, 2, 3; addition is xor.
inline int f4_mul(int a, int b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    static const int log[] = {0, 0, 1, 2};
    static const int exp[] = {1, 2, 3};
    return exp[(log[a] + log[b]) % 3];
}

/// Hexacode words (a, b, c, f(1), f(w), f(w^2)) for f = a x^2 + b x + c, over an F2-basis of (a, b, c).
inline std::vector<std::array<int, 6>> hexacode_basis()
{
    std::vector<std::array<int, 6>> out;
    for (int slot = 0; slot < 3; ++slot) {
        for (int val : {1, 2}) {
            int coef[3] = {0, 0, 0};
            coef[slot] = val;
            std::array<int, 6> w{};
            w[0] = coef[0];
            w[1] = coef[1];
            w[2] = coef[2];
            for (int k = 0; k < 3; ++k) {
                int x = k == 0 ? 1 : k == 1 ? 2 : 3;
                w[3 + k] = f4_mul(coef[0], f4_mul(x, x)) ^ f4_mul(coef[1], x) ^ coef[2];
            }
            out.push_back(w);
        }
    }
    return out;
}

} // namespace detail

/// The 23 Niemeier lattices with roots, in the customary order.
inline const std::vector<NiemeierLattice>& niemeier_lattices()
{
    using detail::alpha_word;
    static const std::vector<NiemeierLattice> all = [] {
        const auto A = RootType::A;
        const auto D = RootType::D;
        const auto E = RootType::E;
        const auto al = GlueKind::Alpha;
        const auto de = GlueKind::Delta;
        const auto db = GlueKind::DeltaBar;
        const auto dt = GlueKind::DeltaTilde;
        const auto et = GlueKind::Eta;
        std::vector<NiemeierLattice> v;

        v.emplace_back("E8^3", std::vector{E(8), E(8), E(8)}, std::vector<GlueWord>{});
        v.emplace_back("E8 D16", std::vector{E(8), D(16)}, std::vector<GlueWord>{{{1, de}}});
        v.emplace_back("E7^2 D10", std::vector{E(7), E(7), D(10)},
                       std::vector<GlueWord>{{{0, et}, {2, de}}, {{0, et}, {1, et}, {2, db}}});
        v.emplace_back("E7 A17", std::vector{E(7), A(17)}, std::vector<GlueWord>{{{0, et}, {1, al, 3}}});
        v.emplace_back("D24", std::vector{D(24)}, std::vector<GlueWord>{{{0, de}}});
        v.emplace_back("D12^2", std::vector{D(12), D(12)},
                       std::vector<GlueWord>{{{0, de}, {1, db}}, {{0, db}, {1, de}}});
        v.emplace_back("D8^3", std::vector{D(8), D(8), D(8)},
                       std::vector<GlueWord>{{{0, de}, {1, db}, {2, db}},
                                             {{0, db}, {1, de}, {2, db}},
                                             {{0, db}, {1, db}, {2, de}}});
        v.emplace_back("D9 A15", std::vector{D(9), A(15)}, std::vector<GlueWord>{{{0, de}, {1, al, 2}}});
        v.emplace_back("E6^4", std::vector{E(6), E(6), E(6), E(6)},
                       std::vector<GlueWord>{{{0, et}, {1, et}, {2, et}}, {{0, et, -1}, {2, et}, {3, et}}});
        v.emplace_back("A11 E6 D7", std::vector{A(11), E(6), D(7)},
                       std::vector<GlueWord>{{{0, al}, {1, et}, {2, de}}});
        v.emplace_back("D6^4", std::vector{D(6), D(6), D(6), D(6)},
                       std::vector<GlueWord>{{{1, de}, {2, db}, {3, dt}},
                                             {{0, db}, {1, dt}, {3, de}},
                                             {{0, de}, {1, db}, {3, dt}},
                                             {{0, de}, {2, dt}, {3, db}}});
        v.emplace_back("D6 A9^2", std::vector{D(6), A(9), A(9)},
                       std::vector<GlueWord>{{{0, dt}, {2, al, 5}}, {{0, de}, {1, al}, {2, al, 2}}});
        v.emplace_back("D5^2 A7^2", std::vector{D(5), D(5), A(7), A(7)},
                       std::vector<GlueWord>{{{0, de}, {1, de}, {2, al, 2}},
                                             {{0, de}, {1, de, 2}, {2, al, 7}, {3, al}}});
        v.emplace_back("A8^3", std::vector{A(8), A(8), A(8)},
                       std::vector<GlueWord>{alpha_word({3, 3, 0}), alpha_word({1, 2, 2})});
        v.emplace_back("A5^4 D4", std::vector{A(5), A(5), A(5), A(5), D(4)},
                       std::vector<GlueWord>{{{0, al, 5}, {1, al, 2}, {2, al, 1}, {4, db}},
                                             {{0, al, 5}, {1, al, 3}, {2, al, 2}, {3, al, 4}, {4, de}},
                                             {{0, al, 3}, {3, al, 3}, {4, dt}}});
        v.emplace_back("A6^4", std::vector{A(6), A(6), A(6), A(6)},
                       std::vector<GlueWord>{alpha_word({1, 2, 1, 6}), alpha_word({1, 6, 2, 1})});
        {
            std::vector<GlueWord> hexa;
            for (const auto& word : detail::hexacode_basis()) {
                GlueWord w;
                for (std::size_t i = 0; i < 6; ++i) {
                    if (word[i] == 1) {
                        w.push_back({i, db});
                    } else if (word[i] == 2) {
                        w.push_back({i, de});
                    } else if (word[i] == 3) {
                        w.push_back({i, dt});
                    }
                }
                hexa.push_back(w);
            }
            v.emplace_back("D4^6", std::vector(6, D(4)), hexa);
        }
        v.emplace_back("A24", std::vector{A(24)}, std::vector<GlueWord>{alpha_word({5})});
        v.emplace_back("A12^2", std::vector{A(12), A(12)}, std::vector<GlueWord>{alpha_word({2, 3})});
        v.emplace_back("A4^6", std::vector(6, A(4)),
                       std::vector<GlueWord>{alpha_word({1, 1, 1, 4, 4, 0}), alpha_word({1, 1, 4, 0, 1, 4}),
                                             alpha_word({1, 0, 4, 1, 4, 1})});
        v.emplace_back("A3^8", std::vector(8, A(3)), detail::rotated_words(3, {2, 0, 0, 1, 0, 1, 1}));
        v.emplace_back("A2^12", std::vector(12, A(2)), detail::rotated_words(2, {1, 1, 2, 1, 1, 1, 2, 2, 2, 1, 2}));
        v.emplace_back("A1^24", std::vector(24, A(1)),
                       detail::rotated_words(1, {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1}));
        return v;
    }();
    return all;
}

inline std::string normalize_niemeier_name(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c != ' ' && c != '+' && c != '_' && c != '*') {
            out += c;
        }
    }
    return out;
}

inline bool is_leech_name(const std::string& name)
{
    std::string n = normalize_niemeier_name(name);
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    return n == "leech";
}

/// Looks up a Niemeier lattice by name ("E8^3", "A11 E6 D7", "A11+E6+D7"). The Leech lattice has no roots and is
/// not available; asking for it throws.
inline const NiemeierLattice& niemeier_by_name(const std::string& name)
{
    if (is_leech_name(name)) {
        throw LatticeError("the Leech lattice has no root sublattice and is excluded");
    }
    const std::string key = normalize_niemeier_name(name);
    for (const auto& l : niemeier_lattices()) {
        if (normalize_niemeier_name(l.name()) == key) {
            return l;
        }
    }
    throw LatticeError("unknown Niemeier lattice '" + name + "'");
}

} // namespace k3fib
