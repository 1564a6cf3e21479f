#pragma once

#include "k3fib/normal_forms.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace k3fib {

/// Finitely generated abelian group Z^free + sum Z/d_i, invariant factors d_1 | d_2 | ... with d_i > 1.
class AbelianGroup {
public:
    AbelianGroup() = default;

    AbelianGroup(IntVector torsion, std::size_t free_rank = 0) : free_rank_(free_rank)
    {
        torsion_ = normalize(std::move(torsion));
    }

    static AbelianGroup cyclic(long n) { return AbelianGroup({Integer(n)}); }

    /// Cokernel of the relation matrix whose rows are relations among `cols` generators.
    static AbelianGroup from_relations(const IntMatrix& relations)
    {
        auto s = smith_normal_form(relations);
        IntVector inv = s.invariants();
        return AbelianGroup(inv, relations.cols() - s.rank);
    }

    const IntVector& invariants() const noexcept { return torsion_; }
    std::size_t free_rank() const noexcept { return free_rank_; }
    bool is_finite() const noexcept { return free_rank_ == 0; }
    bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }

    Integer order() const
    {
        if (free_rank_ != 0) {
            throw LatticeError("order of an infinite group");
        }
        Integer o = 1;
        for (const auto& d : torsion_) {
            o *= d;
        }
        return o;
    }

    /// Exponent of the torsion part.
    Integer exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

    /// Torsion part of the group.
    AbelianGroup torsion() const { return AbelianGroup(torsion_); }

    /// Number of elements of order dividing p^k in each p-primary part, used for subgroup tests.
    std::map<Integer, std::vector<unsigned>> primary_exponents() const
    {
        std::map<Integer, std::vector<unsigned>> out;
        for (const auto& d : torsion_) {
            for (const auto& [p, e] : factorize(d)) {
                out[p].push_back(e);
            }
        }
        for (auto& [p, es] : out) {
            std::sort(es.rbegin(), es.rend());
        }
        return out;
    }

    /// True when this finite group is isomorphic to a subgroup of `other`.
    bool embeds_in(const AbelianGroup& other) const
    {
        if (free_rank_ > other.free_rank_) {
            return false;
        }
        auto mine = primary_exponents();
        auto theirs = other.primary_exponents();
        for (const auto& [p, es] : mine) {
            auto it = theirs.find(p);
            if (it == theirs.end() || it->second.size() < es.size()) {
                return false;
            }
            for (std::size_t i = 0; i < es.size(); ++i) {
                if (es[i] > it->second[i]) {
                    return false;
                }
            }
        }
        return true;
    }

    friend AbelianGroup operator+(const AbelianGroup& a, const AbelianGroup& b)
    {
        IntVector t = a.torsion_;
        t.insert(t.end(), b.torsion_.begin(), b.torsion_.end());
        return AbelianGroup(t, a.free_rank_ + b.free_rank_);
    }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b)
    {
        return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
    }

    /// "0", "Z/4", "Z/2 x Z/6", "Z^2 x Z/3".
    std::string to_string() const
    {
        if (is_trivial()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        if (free_rank_ == 1) {
            os << "Z";
            first = false;
        } else if (free_rank_ > 1) {
            os << "Z^" << free_rank_;
            first = false;
        }
        for (const auto& d : torsion_) {
            os << (first ? "" : " x ") << "Z/" << d;
            first = false;
        }
        return os.str();
    }

    static AbelianGroup parse(const std::string& text)
    {
        std::string s;
        for (char c : text) {
            if (c != ' ') {
                s += c;
            }
        }
        if (s == "0" || s.empty()) {
            return {};
        }
        IntVector t;
        std::size_t free = 0;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t next = s.find('x', pos);
            std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (part.rfind("Z/", 0) == 0) {
                t.emplace_back(part.substr(2));
            } else if (part == "Z") {
                free += 1;
            } else if (part.rfind("Z^", 0) == 0) {
                free += std::stoul(part.substr(2));
            } else {
                throw LatticeError("cannot parse group '" + text + "'");
            }
            if (next == std::string::npos) {
                break;
            }
            pos = next + 1;
        }
        return AbelianGroup(t, free);
    }

private:
    static IntVector normalize(IntVector gens)
    {
        // Re-derive invariant factors from an arbitrary list of cyclic orders.
        IntMatrix diag(gens.size(), gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            diag(i, i) = gens[i];
        }
        IntVector out;
        if (gens.empty()) {
            return out;
        }
        for (const auto& d : smith_normal_form(diag).invariants()) {
            if (d != 1) {
                out.push_back(d);
            }
        }
        return out;
    }

    IntVector torsion_;
    std::size_t free_rank_ = 0;
};

/// Group Z^n / span(rows of sub) when `sub` has rows given in coordinates of a basis of Z^n.
inline AbelianGroup quotient_group(const IntMatrix& sub, std::size_t ambient_rank)
{
    if (sub.rows() == 0) {
        return AbelianGroup({}, ambient_rank);
    }
    if (sub.cols() != ambient_rank) {
        throw LatticeError("quotient_group: coordinate dimension mismatch");
    }
    return AbelianGroup::from_relations(sub);
}

} // namespace k3fib
