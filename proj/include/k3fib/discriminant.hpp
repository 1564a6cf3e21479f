#pragma once

#include "k3fib/lattice.hpp"

#include <functional>
#include <set>

namespace k3fib {

/// Finite quadratic form on L^vee / L for an even nondegenerate lattice L.
class DiscriminantForm {
public:
    DiscriminantForm() = default;

    explicit DiscriminantForm(const IntegerLattice& lattice)
    {
        const IntMatrix& g = lattice.gram();
        if (!lattice.is_nondegenerate()) {
            throw LatticeError("discriminant form of a degenerate lattice");
        }
        even_ = lattice.is_even();
        auto s = smith_normal_form(g);
        RatMatrix gr = to_rational(g);
        for (std::size_t i = 0; i < s.rank; ++i) {
            const Integer& d = s.d(i, i);
            if (d == 1) {
                continue;
            }
            RatVector gen(g.rows());
            for (std::size_t j = 0; j < g.cols(); ++j) {
                gen[j] = Rational(s.u(i, j), d);
                gen[j].canonicalize();
            }
            orders_.push_back(d);
            generators_.push_back(std::move(gen));
        }
        const std::size_t k = orders_.size();
        values_ = RatMatrix(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                values_(i, j) = bilinear(generators_[i], gr, generators_[j]);
            }
        }
    }

    /// Builds a form directly from generator orders and a value matrix (q on diagonal, b off it).
    static DiscriminantForm from_values(IntVector orders, RatMatrix values, bool even = true)
    {
        DiscriminantForm f;
        f.orders_ = std::move(orders);
        f.values_ = std::move(values);
        f.even_ = even;
        return f;
    }

    const IntVector& orders() const noexcept { return orders_; }
    const std::vector<RatVector>& generators() const noexcept { return generators_; }
    AbelianGroup group() const { return AbelianGroup(orders_); }
    Integer order() const { return group().order(); }

    /// q(x) mod 2 (or mod 1 for odd lattices) for x given in generator coordinates.
    Rational q(const IntVector& x) const
    {
        Rational s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (sgn(x[i]) == 0) {
                continue;
            }
            s += Rational(x[i] * x[i]) * values_(i, i);
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                s += 2 * Rational(x[i] * x[j]) * values_(i, j);
            }
        }
        return mod_rational(s, Rational(even_ ? 2 : 1));
    }

    Rational b(const IntVector& x, const IntVector& y) const
    {
        Rational s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < y.size(); ++j) {
                s += Rational(x[i] * y[j]) * values_(i, j);
            }
        }
        return mod_rational(s, Rational(1));
    }

    DiscriminantForm negated() const
    {
        DiscriminantForm f = *this;
        for (std::size_t i = 0; i < f.values_.rows(); ++i) {
            for (std::size_t j = 0; j < f.values_.cols(); ++j) {
                f.values_(i, j) = -f.values_(i, j);
            }
        }
        return f;
    }

    friend DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b)
    {
        DiscriminantForm f;
        f.even_ = a.even_ && b.even_;
        f.orders_ = a.orders_;
        f.orders_.insert(f.orders_.end(), b.orders_.begin(), b.orders_.end());
        const std::size_t ka = a.orders_.size();
        const std::size_t k = f.orders_.size();
        f.values_ = RatMatrix(k, k);
        for (std::size_t i = 0; i < ka; ++i) {
            for (std::size_t j = 0; j < ka; ++j) {
                f.values_(i, j) = a.values_(i, j);
            }
        }
        for (std::size_t i = ka; i < k; ++i) {
            for (std::size_t j = ka; j < k; ++j) {
                f.values_(i, j) = b.values_(i - ka, j - ka);
            }
        }
        f.generators_ = a.generators_;
        f.generators_.insert(f.generators_.end(), b.generators_.begin(), b.generators_.end());
        return f;
    }

    /// All group elements, in generator coordinates with entries reduced mod the orders.
    std::vector<IntVector> elements() const
    {
        std::vector<IntVector> out;
        IntVector x(orders_.size(), Integer(0));
        while (true) {
            out.push_back(x);
            std::size_t i = 0;
            for (; i < x.size(); ++i) {
                x[i] += 1;
                if (x[i] < orders_[i]) {
                    break;
                }
                x[i] = 0;
            }
            if (i == x.size()) {
                break;
            }
        }
        return out;
    }

    /// Order of an element.
    Integer element_order(const IntVector& x) const
    {
        Integer o = 1;
        for (std::size_t i = 0; i < x.size(); ++i) {
            Integer g = gcd_of(x[i], orders_[i]);
            o = lcm_of(o, Integer(orders_[i] / g));
        }
        return o;
    }

    /// Backtracking search for an isometry between two discriminant forms.
    friend bool is_isometric(const DiscriminantForm& a, const DiscriminantForm& b)
    {
        if (!(a.group() == b.group()) || a.even_ != b.even_) {
            return false;
        }
        const std::size_t k = a.orders_.size();
        if (k == 0) {
            return true;
        }
        auto targets = b.elements();
        std::vector<IntVector> unit(k, IntVector(k, Integer(0)));
        for (std::size_t i = 0; i < k; ++i) {
            unit[i][i] = 1;
        }
        std::vector<IntVector> image(k);
        const Integer total = a.order();

        std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
            if (i == k) {
                return mapped_size(b, image, a.orders_) == total;
            }
            for (const auto& y : targets) {
                if (b.element_order(y) != a.orders_[i] || b.q(y) != a.q(unit[i])) {
                    continue;
                }
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j) {
                    ok = b.b(y, image[j]) == a.b(unit[i], unit[j]);
                }
                if (!ok) {
                    continue;
                }
                image[i] = y;
                if (extend(i + 1)) {
                    return true;
                }
            }
            return false;
        };
        return extend(0);
    }

private:
    static Integer mapped_size(const DiscriminantForm& b, const std::vector<IntVector>& image, const IntVector& orders)
    {
        // Size of the subgroup of b generated by the images.
        std::vector<IntVector> seen{IntVector(b.orders_.size(), Integer(0))};
        std::set<std::vector<std::string>> keys;
        auto key = [](const IntVector& v) {
            std::vector<std::string> s;
            for (const auto& z : v) {
                s.push_back(z.get_str());
            }
            return s;
        };
        keys.insert(key(seen.front()));
        for (std::size_t i = 0; i < image.size(); ++i) {
            std::vector<IntVector> next;
            for (const auto& x : seen) {
                IntVector y = x;
                for (Integer m = 1; m < orders[i]; ++m) {
                    for (std::size_t c = 0; c < y.size(); ++c) {
                        y[c] = (y[c] + image[i][c]) % b.orders_[c];
                    }
                    if (keys.insert(key(y)).second) {
                        next.push_back(y);
                    }
                }
            }
            seen.insert(seen.end(), next.begin(), next.end());
        }
        return Integer(static_cast<unsigned long>(seen.size()));
    }

    IntVector orders_;
    std::vector<RatVector> generators_;
    RatMatrix values_;
    bool even_ = true;
};

} // namespace k3fib
