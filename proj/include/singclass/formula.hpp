#pragma once

#include "singclass/error.hpp"
#include "singclass/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace singclass {

/// Multivariate polynomial with arbitrary-precision integer coefficients in
/// at most four symbols (the exponent parameters a,b,c,d). Used to carry the
/// catalog's closed-form weight and Milnor-number expressions exactly, and to
/// take exact degree-ratio limits for frontier analysis.
class Poly {
public:
    using Key = std::array<int, 4>;

    Poly() = default;

    static Poly constant(Int c) {
        Poly p;
        if (c != 0) p.terms_[{0, 0, 0, 0}] = std::move(c);
        return p;
    }

    static Poly variable(int slot) {
        Poly p;
        Key k{0, 0, 0, 0};
        k[slot] = 1;
        p.terms_[k] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0, 0, 0});
    }

    Int constant_value() const {
        auto it = terms_.find({0, 0, 0, 0});
        return it == terms_.end() ? Int(0) : it->second;
    }

    friend Poly operator+(const Poly& x, const Poly& y) {
        Poly r = x;
        for (const auto& [k, c] : y.terms_) r.add_term(k, c);
        return r;
    }

    friend Poly operator-(const Poly& x, const Poly& y) {
        Poly r = x;
        for (const auto& [k, c] : y.terms_) r.add_term(k, -c);
        return r;
    }

    friend Poly operator*(const Poly& x, const Poly& y) {
        Poly r;
        for (const auto& [kx, cx] : x.terms_)
            for (const auto& [ky, cy] : y.terms_) {
                Key k;
                for (int i = 0; i < 4; ++i) k[i] = kx[i] + ky[i];
                r.add_term(k, cx * cy);
            }
        return r;
    }

    Poly operator-() const { return Poly() - *this; }

    Rational eval(const std::vector<Rational>& vals) const {
        Rational sum = 0;
        for (const auto& [k, c] : terms_) {
            Rational t(c);
            for (int i = 0; i < 4; ++i)
                for (int e = 0; e < k[i]; ++e) t *= vals[size_t(i)];
            sum += t;
        }
        return sum;
    }

    /// Replace one symbol by an exact rational constant.
    Poly substitute(int slot, const Rational& v) const {
        Poly r;
        for (const auto& [k, c] : terms_) {
            Rational t(c);
            for (int e = 0; e < k[slot]; ++e) t *= v;
            // Substitution with a rational value requires the result to stay
            // polynomial; callers only substitute integers here.
            Key nk = k;
            nk[slot] = 0;
            if (!is_integer(t)) throw Error(Errc::ParseError, "non-integer substitution");
            r.add_term(nk, numerator_of(t));
        }
        return r;
    }

    int degree_in(int slot) const {
        int d = 0;
        for (const auto& [k, c] : terms_)
            if (k[slot] > d) d = k[slot];
        return d;
    }

    /// Coefficient of slot^power, a polynomial in the remaining symbols.
    Poly coefficient_of(int slot, int power) const {
        Poly r;
        for (const auto& [k, c] : terms_)
            if (k[slot] == power) {
                Key nk = k;
                nk[slot] = 0;
                r.add_term(nk, c);
            }
        return r;
    }

    /// Relabel symbols: symbol i becomes symbol to_new[i].
    Poly rename(const std::array<int, 4>& to_new) const {
        Poly r;
        for (const auto& [k, c] : terms_) {
            Key nk{0, 0, 0, 0};
            for (int i = 0; i < 4; ++i) nk[size_t(to_new[size_t(i)])] += k[size_t(i)];
            r.add_term(nk, c);
        }
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

private:
    void add_term(const Key& k, Int c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(k, std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Key, Int> terms_;
};

/// Quotient of two polynomials; never reduced, always evaluated exactly.
class RationalFn {
public:
    RationalFn() : num_(Poly::constant(0)), den_(Poly::constant(1)) {}
    RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
    RationalFn(long c) : num_(Poly::constant(Int(c))), den_(Poly::constant(1)) {}

    static RationalFn variable(int slot) { return {Poly::variable(slot), Poly::constant(1)}; }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    friend RationalFn operator+(const RationalFn& x, const RationalFn& y) {
        return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
    }
    friend RationalFn operator-(const RationalFn& x, const RationalFn& y) {
        return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
    }
    friend RationalFn operator*(const RationalFn& x, const RationalFn& y) {
        return {x.num_ * y.num_, x.den_ * y.den_};
    }
    friend RationalFn operator/(const RationalFn& x, const RationalFn& y) {
        return {x.num_ * y.den_, x.den_ * y.num_};
    }
    RationalFn reciprocal() const { return {den_, num_}; }

    /// Exact evaluation; a vanishing denominator is the degenerate case the
    /// catalog reports per instance.
    Rational eval(const std::vector<Rational>& vals) const {
        Rational d = den_.eval(vals);
        if (d == 0) throw Error(Errc::DegenerateDenominator, "denominator vanishes");
        return num_.eval(vals) / d;
    }

    bool denominator_vanishes(const std::vector<Rational>& vals) const {
        return den_.eval(vals) == 0;
    }

    RationalFn substitute(int slot, const Rational& v) const {
        return {num_.substitute(slot, v), den_.substitute(slot, v)};
    }

    RationalFn rename(const std::array<int, 4>& to_new) const {
        return {num_.rename(to_new), den_.rename(to_new)};
    }

    bool depends_on(int slot) const {
        return num_.degree_in(slot) > 0 || den_.degree_in(slot) > 0;
    }

    struct Limit;

    /// Exact limit as one symbol tends to +infinity: the degree-ratio rule on
    /// the univariate view, with leading coefficients kept symbolic in the
    /// remaining symbols.
    Limit limit_at_infinity(int slot) const;

private:
    Poly num_, den_;
};

struct RationalFn::Limit {
    bool infinite = false;
    RationalFn value; // meaningful only when !infinite
};

inline RationalFn::Limit RationalFn::limit_at_infinity(int slot) const {
    int dn = num_.degree_in(slot), dd = den_.degree_in(slot);
    if (dn > dd) return {true, RationalFn()};
    if (dn < dd) return {false, RationalFn(0)};
    return {false, RationalFn(num_.coefficient_of(slot, dn), den_.coefficient_of(slot, dd))};
}

} // namespace singclass
