#pragma once

#include "singclass/catalog.hpp"
#include "singclass/error.hpp"
#include "singclass/rational.hpp"

#include <algorithm>
#include <vector>

namespace singclass {

/// Hull-plus-hyperplane model of the Newton polyhedron of a single-face
/// support: every support vector lies on the hyperplane alpha(x) = 1, and the
/// region is the cone over the convex hull of the support with vertex 0.
struct NewtonRegion {
    Support support;
    AlphaForm alpha;
};

struct GenusReport {
    Int p_g = 0;
    std::vector<ExponentVec> witnesses; // lexicographically sorted
    Int simplex_count = 0;              // alpha(p) <= 1 only, hull ignored
};

inline Rational alpha_value(const AlphaForm& alpha, const ExponentVec& p) {
    Rational s = 0;
    for (size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * p[i];
    return s;
}

/// Builds the region; supports spanning more than one face are out of scope
/// and rejected.
inline NewtonRegion newton_region(Support support, AlphaForm alpha) {
    if (support.empty()) throw Error(Errc::OffHyperplane, "empty support");
    for (const auto& v : support) {
        if (v.size() != alpha.size()) throw Error(Errc::ArityMismatch, "support/alpha arity differ");
        if (alpha_value(alpha, v) != 1)
            throw Error(Errc::OffHyperplane,
                        "support vector " + render_monomial(v) + " has alpha != 1");
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return {std::move(support), std::move(alpha)};
}

namespace detail {

/// Does x lie in the convex hull of the given subset? Solves the affine
/// combination system exactly by Gaussian elimination; underdetermined
/// subsets are skipped (a smaller subset covers them).
inline bool convex_combination_exists(const std::vector<const ExponentVec*>& pts,
                                      const std::vector<Rational>& x) {
    size_t rows = x.size() + 1, cols = pts.size();
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
    for (size_t r = 0; r < x.size(); ++r) {
        for (size_t c = 0; c < cols; ++c) m[r][c] = (*pts[c])[r];
        m[r][cols] = x[r];
    }
    for (size_t c = 0; c < cols; ++c) m[x.size()][c] = 1;
    m[x.size()][cols] = 1;

    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pr = row;
        while (pr < rows && m[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[row], m[pr]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[row][col];
            for (size_t c2 = col; c2 <= cols; ++c2) m[r][c2] -= f * m[row][c2];
        }
        pivot_col_of_row.push_back(int(col));
        ++row;
    }
    // inconsistent?
    for (size_t r = row; r < rows; ++r)
        if (m[r][cols] != 0) return false;
    // underdetermined: free columns exist; skip (Caratheodory covers via smaller subsets)
    if (pivot_col_of_row.size() < cols) return false;
    for (size_t r = 0; r < cols; ++r) {
        Rational lambda = m[r][cols] / m[r][size_t(pivot_col_of_row[r])];
        if (lambda < 0) return false;
    }
    return true;
}

} // namespace detail

/// Exact membership of a positive lattice point in the region: alpha(p) <= 1
/// and p / alpha(p) in the convex hull of the support, the latter decided by
/// enumerating subsets of at most `arity` support vectors.
inline bool contains_positive_point(const NewtonRegion& region, const ExponentVec& p) {
    Rational ap = alpha_value(region.alpha, p);
    if (ap > 1) return false;
    size_t n = region.alpha.size();
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = Rational(p[i]) / ap;

    size_t m = region.support.size();
    // subsets of size 1..n (support lies on an (n-1)-dimensional hyperplane)
    std::vector<const ExponentVec*> pts;
    for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
        size_t sz = size_t(__builtin_popcountll(mask));
        if (sz > n) continue;
        pts.clear();
        for (size_t i = 0; i < m; ++i)
            if (mask & (size_t(1) << i)) pts.push_back(&region.support[i]);
        if (detail::convex_combination_exists(pts, x)) return true;
    }
    return false;
}

/// Exhaustive positive-lattice-point count: candidates satisfy
/// 1 <= p_i <= floor(w_i) (anything larger forces alpha(p) > 1).
inline GenusReport geometric_genus(const NewtonRegion& region) {
    size_t n = region.alpha.size();
    GenusReport rep;
    ExponentVec p(n, 1);
    // lexicographic recursion over the candidate box; alpha is additive with
    // positive coefficients, so a prefix sum > 1 prunes the whole subtree
    auto walk = [&](auto&& self, size_t depth, const Rational& partial) -> void {
        if (depth == n) {
            rep.simplex_count += 1;
            if (contains_positive_point(region, p)) {
                rep.p_g += 1;
                rep.witnesses.push_back(p);
            }
            return;
        }
        for (p[depth] = 1;; ++p[depth]) {
            Rational s = partial + region.alpha[depth] * p[depth];
            if (s > 1) break;
            self(self, depth + 1, s);
        }
        p[depth] = 1;
    };
    walk(walk, 0, Rational(0));
    std::sort(rep.witnesses.begin(), rep.witnesses.end());
    return rep;
}

/// Independent Milnor-number oracle: the product of (w_i - 1).
inline Int milnor_oracle(const WeightSystem& w) {
    Rational prod = 1;
    for (const auto& wi : w) {
        if (wi <= 1) throw Error(Errc::NonIntegerProduct, "weight <= 1");
        prod *= wi - 1;
    }
    if (!is_integer(prod) || prod <= 0)
        throw Error(Errc::NonIntegerProduct, "product (w_i - 1) = " + to_fraction_string(prod));
    return numerator_of(prod);
}

} // namespace singclass
