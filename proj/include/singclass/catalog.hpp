#pragma once

#include "singclass/error.hpp"
#include "singclass/formula.hpp"
#include "singclass/rational.hpp"
#include "singclass/types.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace singclass {

using Params = std::vector<int>;
using WeightSystem = std::vector<Rational>;
using AlphaForm = std::vector<Rational>;
using ExponentVec = std::vector<int>;
using Support = std::vector<ExponentVec>; // sorted, unique

/// Exponent pairs of the extra monomials some families carry to keep the
/// singularity isolated. Threefold families use `first` (and `second` when two
/// extra monomials exist); the two surface classes with an extra monomial use
/// `surface`.
struct LinkExponents {
    std::optional<std::pair<Int, Int>> first;
    std::optional<std::pair<Int, Int>> second;
    std::optional<std::pair<Int, Int>> surface;

    bool operator==(const LinkExponents&) const = default;
};

struct Instance {
    TypeId type;
    Params params;
    LinkExponents links;
};

/// Static description of one family: monomial pattern (as an attachment map:
/// slot k's monomial is z_k^{p_k} or z_k^{p_k} * z_{attachment[k]}), extra
/// monomial slot pairs, closed-form weights and Milnor number, per-slot
/// enumeration minimums, and the slot permutation group under which the
/// pattern is invariant.
struct TypeDescriptor {
    TypeId id{};
    int arity = 0;
    std::array<int, 4> attachment{-1, -1, -1, -1};
    std::vector<std::pair<int, int>> link_pairs;
    std::array<int, 4> slot_min{2, 2, 2, 2};
    std::vector<std::array<int, 4>> symmetry; // full group, identity included
    std::array<RationalFn, 4> weight;
    RationalFn mu;
};

namespace detail {

inline std::array<int, 4> compose_perm(const std::array<int, 4>& g, const std::array<int, 4>& h) {
    // act(q, P) = act(g, act(h, P)) with act(g,P)[k] = P[g[k]]
    std::array<int, 4> q{};
    for (int k = 0; k < 4; ++k) q[k] = h[g[k]];
    return q;
}

inline std::vector<std::array<int, 4>> close_group(std::vector<std::array<int, 4>> gens) {
    std::set<std::array<int, 4>> group;
    group.insert({0, 1, 2, 3});
    for (auto& g : gens) group.insert(g);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::array<int, 4>> cur(group.begin(), group.end());
        for (const auto& g : cur)
            for (const auto& h : cur)
                if (group.insert(compose_perm(g, h)).second) grew = true;
    }
    return {group.begin(), group.end()};
}

inline std::vector<TypeDescriptor> build_catalog() {
    const RationalFn a = RationalFn::variable(0);
    const RationalFn b = RationalFn::variable(1);
    const RationalFn c = RationalFn::variable(2);
    const RationalFn d = RationalFn::variable(3);
    const RationalFn one(1);

    const std::array<int, 4> id_perm{0, 1, 2, 3};
    auto swap01 = std::array<int, 4>{1, 0, 2, 3};
    auto swap12 = std::array<int, 4>{0, 2, 1, 3};
    auto swap23 = std::array<int, 4>{0, 1, 3, 2};
    auto swap13 = std::array<int, 4>{0, 3, 2, 1};
    auto blocks = std::array<int, 4>{2, 3, 0, 1};  // (a,b,c,d) -> (c,d,a,b)
    auto rot_s5 = std::array<int, 4>{2, 0, 1, 3};  // surface 3-cycle
    auto rot_t10 = std::array<int, 4>{0, 3, 1, 2}; // (a,b,c,d) -> (a,d,b,c)
    auto rot_t19 = std::array<int, 4>{1, 3, 0, 2}; // (a,b,c,d) -> (b,d,a,c)
    auto pairsw = std::array<int, 4>{1, 0, 3, 2};  // (a,b,c,d) -> (b,a,d,c)

    std::vector<TypeDescriptor> cat(kTypeCount);
    auto& C = cat;

    auto def = [&](TypeId t, std::array<int, 4> att, std::vector<std::pair<int, int>> links,
                   std::array<int, 4> mins, std::vector<std::array<int, 4>> gens,
                   std::array<RationalFn, 4> w, RationalFn mu) {
        TypeDescriptor& td = C[size_t(t)];
        td.id = t;
        td.arity = arity(t);
        td.attachment = att;
        td.link_pairs = std::move(links);
        td.slot_min = mins;
        td.symmetry = close_group(std::move(gens));
        td.weight = std::move(w);
        td.mu = std::move(mu);
    };

    // Surface classes (three variables).
    def(TypeId::S1, {-1, -1, -1, -1}, {}, {2, 2, 2, 0}, {swap01, swap12},
        {a, b, c, one}, (a - one) * (b - one) * (c - one));
    def(TypeId::S2, {-1, -1, 1, -1}, {}, {2, 2, 2, 0}, {},
        {a, b, b * c / (b - one), one}, (a - one) * (b * c - b + one));
    def(TypeId::S3, {-1, 2, 1, -1}, {}, {2, 2, 2, 0}, {swap12},
        {a, (b * c - one) / (c - one), (b * c - one) / (b - one), one}, (a - one) * b * c);
    def(TypeId::S4, {-1, 2, 0, -1}, {}, {2, 2, 2, 0}, {},
        {a, a * b * c / (a * c - a + one), a * c / (a - one), one}, a * c * (b - one) + a - one);
    def(TypeId::S5, {1, 2, 0, -1}, {}, {2, 2, 2, 0}, {rot_s5},
        {(a * b * c + one) / (b * c - c + one), (a * b * c + one) / (a * c - a + one),
         (a * b * c + one) / (a * b - b + one), one},
        a * b * c);
    def(TypeId::S6, {-1, 0, 0, -1}, {{1, 2}}, {2, 2, 2, 0}, {swap12},
        {a, a * b / (a - one), a * c / (a - one), one},
        (a * b - a + one) * (a * c - a + one) / (a - one));
    def(TypeId::S7, {1, 0, 0, -1}, {{1, 2}}, {2, 2, 2, 0}, {},
        {(a * b - one) / (b - one), (a * b - one) / (a - one),
         c * (a * b - one) / (b * (a - one)), one},
        a * (a * b * c - a * b + b - c) / (a - one));

    // Threefold types (four variables).
    def(TypeId::T1, {-1, -1, -1, -1}, {}, {2, 2, 2, 2}, {swap01, swap12, swap23},
        {a, b, c, d}, (a - one) * (b - one) * (c - one) * (d - one));
    def(TypeId::T2, {-1, -1, -1, 2}, {}, {2, 2, 2, 2}, {swap01},
        {a, b, c, c * d / (c - one)}, (a - one) * (b - one) * (c * (d - one) + one));
    def(TypeId::T3, {-1, -1, 3, 2}, {}, {2, 2, 2, 2}, {swap01, swap23},
        {a, b, (c * d - one) / (d - one), (c * d - one) / (c - one)},
        (a - one) * (b - one) * c * d);
    def(TypeId::T4, {-1, 0, -1, 2}, {}, {2, 1, 2, 1}, {blocks},
        {a, a * b / (a - one), c, c * d / (c - one)},
        (a * (b - one) + one) * (c * (d - one) + one));
    def(TypeId::T5, {1, 0, -1, 2}, {}, {2, 2, 2, 1}, {swap01},
        {(a * b - one) / (b - one), (a * b - one) / (a - one), c, c * d / (c - one)},
        a * b * (c * (d - one) + one));
    def(TypeId::T6, {1, 0, 3, 2}, {}, {2, 2, 2, 2}, {swap01, swap23, blocks},
        {(a * b - one) / (b - one), (a * b - one) / (a - one), (c * d - one) / (d - one),
         (c * d - one) / (c - one)},
        a * b * c * d);
    def(TypeId::T7, {-1, -1, 1, 2}, {}, {2, 2, 1, 1}, {},
        {a, b, b * c / (b - one), b * c * d / (b * (c - one) + one)},
        (a - one) * (b * c * (d - one) + b - one));
    def(TypeId::T8, {-1, -1, 1, 1}, {{2, 3}}, {2, 2, 1, 1}, {swap23},
        {a, b, b * c / (b - one), b * d / (b - one)},
        (a - one) * (b * (c - one) + one) * (b * (d - one) + one) / (b - one));
    def(TypeId::T9, {-1, 3, 3, 1}, {{1, 2}}, {2, 2, 1, 2}, {},
        {a, (b * d - one) / (d - one), c * (b * d - one) / (b * (d - one)),
         (b * d - one) / (b - one)},
        (a - one) * d * (c * (b * d - one) - b * (d - one)) / (d - one));
    def(TypeId::T10, {-1, 2, 3, 1}, {}, {2, 1, 1, 1}, {rot_t10},
        {a, (b * c * d + one) / (d * (c - one) + one), (b * c * d + one) / (b * (d - one) + one),
         (b * c * d + one) / (c * (b - one) + one)},
        (a - one) * b * c * d);
    def(TypeId::T11, {-1, 0, 1, 2}, {}, {2, 1, 1, 1}, {},
        {a, a * b / (a - one), a * b * c / (a * (b - one) + one),
         a * b * c * d / (a * b * (c - one) + a - one)},
        a * b * c * (d - one) + a * (b - one) + one);
    def(TypeId::T12, {-1, 0, 0, 1}, {{1, 2}}, {2, 1, 1, 1}, {},
        {a, a * b / (a - one), a * c / (a - one), a * b * d / (a * (b - one) + one)},
        (a * (c - one) + one) * (a * b * (d - one) + a - one) / (a - one));
    def(TypeId::T13, {-1, 0, 1, 1}, {{2, 3}}, {2, 1, 1, 1}, {swap23},
        {a, a * b / (a - one), a * b * c / (a * (b - one) + one),
         a * b * d / (a * (b - one) + one)},
        (a * b * (c - one) + a - one) * (a * b * (d - one) + a - one) / (a * (b - one) + one));
    def(TypeId::T14, {-1, 0, 0, 0}, {{1, 2}, {2, 3}}, {2, 1, 1, 1}, {swap13},
        {a, a * b / (a - one), a * c / (a - one), a * d / (a - one)},
        (a * (b - one) + one) * (a * (c - one) + one) * (a * (d - one) + one) /
            ((a - one) * (a - one)));
    def(TypeId::T15, {1, 0, 0, 2}, {{1, 2}}, {2, 2, 1, 1}, {},
        {(a * b - one) / (b - one), (a * b - one) / (a - one),
         c * (a * b - one) / (b * (a - one)),
         c * d * (a * b - one) / (c * (a * b - one) - b * (a - one))},
        a * (c * (d - one) * (a * b - one) + b * (a - one)) / (a - one));
    def(TypeId::T16, {1, 0, 0, 0}, {{1, 2}, {2, 3}}, {2, 2, 1, 1}, {},
        {(a * b - one) / (b - one), (a * b - one) / (a - one),
         c * (a * b - one) / (b * (a - one)), d * (a * b - one) / (b * (a - one))},
        a * (c * (a * b - one) - b * (a - one)) * (d * (a * b - one) - b * (a - one)) /
            (b * (a - one) * (a - one)));
    def(TypeId::T17, {1, 0, 1, 0}, {{1, 3}, {0, 2}}, {2, 2, 1, 1}, {pairsw},
        {(a * b - one) / (b - one), (a * b - one) / (a - one),
         c * (a * b - one) / (a * (b - one)), d * (a * b - one) / (b * (a - one))},
        (c * (a * b - one) - a * (b - one)) * (d * (a * b - one) - b * (a - one)) /
            ((a - one) * (b - one)));
    def(TypeId::T18, {2, 0, 1, 1}, {{2, 3}}, {1, 1, 1, 1}, {},
        {(a * b * c + one) / (b * (c - one) + one), (a * b * c + one) / (c * (a - one) + one),
         (a * b * c + one) / (a * (b - one) + one),
         d * (a * b * c + one) / (c * (a * (b - one) + one))},
        a * b * (a * b * c * (d - one) + c * (a - one) + d) / (a * (b - one) + one));
    def(TypeId::T19, {2, 0, 3, 1}, {}, {1, 1, 2, 2}, {rot_t19},
        {(a * b * c * d - one) / (b * (d * (c - one) + one) - one),
         (a * b * c * d - one) / (d * (c * (a - one) + one) - one),
         (a * b * c * d - one) / (a * (b * (d - one) + one) - one),
         (a * b * c * d - one) / (c * (a * (b - one) + one) - one)},
        a * b * c * d);

    return cat;
}

} // namespace detail

/// All 26 family descriptors; built once, immutable afterwards.
inline const std::vector<TypeDescriptor>& catalog_types() {
    static const std::vector<TypeDescriptor> cat = detail::build_catalog();
    return cat;
}

inline const TypeDescriptor& descriptor(TypeId t) { return catalog_types()[size_t(t)]; }

inline std::vector<Rational> to_rational_point(const Params& p) {
    std::vector<Rational> v(4, Rational(1));
    for (size_t i = 0; i < p.size(); ++i) v[i] = p[i];
    return v;
}

/// Lexicographically smallest representative of the parameter orbit under the
/// type's pattern symmetry group.
inline Params canonical_params(TypeId t, const Params& p) {
    const TypeDescriptor& td = descriptor(t);
    Params best = p;
    Params cand(p.size());
    for (const auto& g : td.symmetry) {
        for (int k = 0; k < td.arity; ++k) cand[size_t(k)] = p[size_t(g[k])];
        if (cand < best) best = cand;
    }
    return best;
}

inline WeightSystem weights_for(TypeId t, const Params& p) {
    const TypeDescriptor& td = descriptor(t);
    auto pt = to_rational_point(p);
    WeightSystem w(size_t(td.arity));
    for (int i = 0; i < td.arity; ++i) w[size_t(i)] = td.weight[size_t(i)].eval(pt);
    return w;
}

/// Smallest lexicographic nonnegative integer (p, q) with p/wi + q/wj = 1.
inline std::optional<std::pair<Int, Int>> solve_link(const Rational& wi, const Rational& wj) {
    // p * (1/wi) + q * (1/wj) = 1  <=>  p*A + q*B = C over integers
    Rational ai = 1 / wi, aj = 1 / wj;
    Int L = boost::multiprecision::lcm(denominator_of(ai), denominator_of(aj));
    Int A = numerator_of(ai) * (L / denominator_of(ai));
    Int B = numerator_of(aj) * (L / denominator_of(aj));
    Int C = L;
    for (Int p = 0; p * A <= C; ++p) {
        Int rest = C - p * A;
        if (rest % B == 0) return std::make_pair(p, rest / B);
    }
    return std::nullopt;
}

/// Checks arity, formula denominators, weight positivity and link solvability;
/// returns the instance with canonical link exponents.
inline Instance validate_params(TypeId t, const Params& p) {
    const TypeDescriptor& td = descriptor(t);
    if (int(p.size()) != td.arity)
        throw Error(Errc::ArityMismatch, type_name(t) + " expects " + std::to_string(td.arity) +
                                             " exponents, got " + std::to_string(p.size()));
    for (int v : p)
        if (v < 1) throw Error(Errc::ArityMismatch, "exponents must be >= 1");
    auto pt = to_rational_point(p);
    for (int i = 0; i < td.arity; ++i)
        if (td.weight[size_t(i)].denominator_vanishes(pt))
            throw Error(Errc::DegenerateDenominator,
                        type_name(t) + " weight " + std::to_string(i) + " undefined at given exponents");
    WeightSystem w = weights_for(t, p);
    for (int i = 0; i < td.arity; ++i)
        if (w[size_t(i)] <= 1)
            throw Error(Errc::NonpositiveWeight, type_name(t) + " weight " + std::to_string(i) +
                                                     " = " + to_fraction_string(w[size_t(i)]) +
                                                     " <= 1");
    Instance inst{t, p, {}};
    for (size_t li = 0; li < td.link_pairs.size(); ++li) {
        auto [i, j] = td.link_pairs[li];
        auto sol = solve_link(w[size_t(i)], w[size_t(j)]);
        if (!sol)
            throw Error(Errc::UnsolvableLink,
                        type_name(t) + " monomial on slots (" + std::to_string(i) + "," +
                            std::to_string(j) + ") has no nonnegative integer exponents");
        if (td.arity == 3)
            inst.links.surface = *sol;
        else if (li == 0)
            inst.links.first = *sol;
        else
            inst.links.second = *sol;
    }
    return inst;
}

inline WeightSystem weights_of(const Instance& inst) { return weights_for(inst.type, inst.params); }

inline AlphaForm alpha_of(const Instance& inst) {
    WeightSystem w = weights_of(inst);
    AlphaForm al(w.size());
    for (size_t i = 0; i < w.size(); ++i) al[i] = 1 / w[i];
    return al;
}

/// Exact value of the printed closed-form Milnor number.
inline Int milnor_closed_form(const Instance& inst) {
    const TypeDescriptor& td = descriptor(inst.type);
    Rational mu = td.mu.eval(to_rational_point(inst.params));
    if (!is_integer(mu) || mu <= 0)
        throw Error(Errc::NonIntegerMu, type_name(inst.type) + " closed form gave " +
                                            to_fraction_string(mu));
    return numerator_of(mu);
}

inline std::vector<std::pair<int, int>> link_values(const Instance& inst) {
    // (p, q) per link pair, in descriptor order
    std::vector<std::pair<int, int>> out;
    auto push = [&](const std::optional<std::pair<Int, Int>>& l) {
        if (l) out.emplace_back(int(l->first), int(l->second));
    };
    if (descriptor(inst.type).arity == 3) {
        push(inst.links.surface);
    } else {
        push(inst.links.first);
        push(inst.links.second);
    }
    return out;
}

inline Support polynomial_support(const Instance& inst) {
    const TypeDescriptor& td = descriptor(inst.type);
    std::set<ExponentVec> vs;
    for (int k = 0; k < td.arity; ++k) {
        ExponentVec v(size_t(td.arity), 0);
        v[size_t(k)] = inst.params[size_t(k)];
        if (td.attachment[size_t(k)] >= 0) v[size_t(td.attachment[size_t(k)])] += 1;
        vs.insert(std::move(v));
    }
    auto lv = link_values(inst);
    for (size_t li = 0; li < lv.size(); ++li) {
        auto [i, j] = td.link_pairs[li];
        ExponentVec v(size_t(td.arity), 0);
        v[size_t(i)] = lv[li].first;
        v[size_t(j)] = lv[li].second;
        vs.insert(std::move(v));
    }
    return {vs.begin(), vs.end()};
}

inline std::string render_monomial(const ExponentVec& v) {
    static const char* kVars[4] = {"x", "y", "z", "w"};
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += kVars[i];
        if (v[i] > 1) s += "^" + std::to_string(v[i]);
    }
    return s.empty() ? "1" : s;
}

/// Human-readable defining polynomial in the catalog's monomial order.
inline std::string render_polynomial(const Instance& inst) {
    const TypeDescriptor& td = descriptor(inst.type);
    std::vector<ExponentVec> mons;
    for (int k = 0; k < td.arity; ++k) {
        ExponentVec v(size_t(td.arity), 0);
        v[size_t(k)] = inst.params[size_t(k)];
        if (td.attachment[size_t(k)] >= 0) v[size_t(td.attachment[size_t(k)])] += 1;
        mons.push_back(std::move(v));
    }
    auto lv = link_values(inst);
    for (size_t li = 0; li < lv.size(); ++li) {
        auto [i, j] = td.link_pairs[li];
        ExponentVec v(size_t(td.arity), 0);
        v[size_t(i)] = lv[li].first;
        v[size_t(j)] = lv[li].second;
        mons.push_back(std::move(v));
    }
    std::string s;
    for (const auto& m : mons) {
        if (!s.empty()) s += " + ";
        s += render_monomial(m);
    }
    return s;
}

} // namespace singclass
