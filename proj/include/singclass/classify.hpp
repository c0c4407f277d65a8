#pragma once

#include "singclass/catalog.hpp"
#include "singclass/error.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <vector>

namespace singclass {

/// Result of matching a support against the catalog: `permutation` maps
/// pattern slot k to the support's variable permutation[k]; applying it to the
/// pattern at `params` (plus link monomials, when present in the support or
/// solvable) reproduces the skeleton; `residual` holds the leftover monomials.
struct Identification {
    TypeId type{};
    std::vector<int> permutation;
    Params params;
    LinkExponents links;
    Support residual;
};

namespace detail {

inline bool admissible_for(const ExponentVec& v, size_t var) {
    if (v[var] < 1) return false;
    int attached = 0;
    for (size_t j = 0; j < v.size(); ++j) {
        if (j == var) continue;
        if (v[j] == 1)
            ++attached;
        else if (v[j] != 0)
            return false;
    }
    return attached <= 1;
}

inline std::vector<std::vector<int>> permutations_of(int n) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) idx.push_back(i);
    std::vector<std::vector<int>> out;
    do out.push_back(idx);
    while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

} // namespace detail

/// Per-variable admissible monomial subsets: variable i may be served by
/// z_i^k or z_i^k * z_j. An empty subset means no polynomial with this
/// support has an isolated singularity at the origin.
inline std::vector<Support> skeleton_candidates(const Support& support) {
    if (support.empty()) throw Error(Errc::NotIsolatedCandidate, "empty support");
    size_t n = support.front().size();
    if (n != 3 && n != 4) throw Error(Errc::ArityMismatch, "arity must be 3 or 4");
    std::vector<Support> cands(n);
    for (const auto& v : support) {
        if (v.size() != n) throw Error(Errc::ArityMismatch, "mixed arity in support");
        for (size_t i = 0; i < n; ++i)
            if (detail::admissible_for(v, i)) cands[i].push_back(v);
    }
    for (size_t i = 0; i < n; ++i)
        if (cands[i].empty())
            throw Error(Errc::NotIsolatedCandidate,
                        "no admissible monomial for variable " + std::to_string(i));
    return cands;
}

/// Matches the support against the catalog patterns over all skeleton
/// selections and coordinate permutations; ties resolved by smallest
/// (type index, permutation, params).
inline Identification identify_type(const Support& support) {
    auto cands = skeleton_candidates(support);
    size_t n = cands.size();
    static const auto perms3 = detail::permutations_of(3);
    static const auto perms4 = detail::permutations_of(4);
    const auto& perms = (n == 3) ? perms3 : perms4;

    struct Match {
        int type_ord;
        std::vector<int> perm;
        Params params;
        std::set<ExponentVec> picked;
    };
    std::optional<Match> best;

    std::vector<size_t> choice(n, 0);
    std::vector<const ExponentVec*> pick(n);
    auto consider = [&](const std::vector<const ExponentVec*>& picks) {
        // attachment map of this selection
        std::array<int, 4> att{-1, -1, -1, -1};
        for (size_t i = 0; i < n; ++i) {
            att[i] = -1;
            for (size_t j = 0; j < n; ++j)
                if (j != i && (*picks[i])[j] == 1) att[i] = int(j);
        }
        for (const auto& td : catalog_types()) {
            if (td.arity != int(n)) continue;
            for (const auto& perm : perms) {
                bool ok = true;
                for (size_t k = 0; k < n && ok; ++k) {
                    int want = td.attachment[k] < 0 ? -1 : perm[size_t(td.attachment[k])];
                    if (att[size_t(perm[k])] != want) ok = false;
                }
                if (!ok) continue;
                Params params(n);
                for (size_t k = 0; k < n; ++k)
                    params[k] = (*picks[size_t(perm[k])])[size_t(perm[k])];
                // selections may repeat a monomial; compare instantiations as sets
                std::set<ExponentVec> picked;
                for (auto* v : picks) picked.insert(*v);
                std::set<ExponentVec> pattern;
                for (size_t k = 0; k < n; ++k) {
                    ExponentVec v(n, 0);
                    v[size_t(perm[k])] = params[k];
                    if (td.attachment[k] >= 0) v[size_t(perm[size_t(td.attachment[k])])] += 1;
                    pattern.insert(std::move(v));
                }
                if (pattern != picked) continue;
                Match m{family_index(td.id), perm, params, picked};
                if (!best || std::tie(m.type_ord, m.perm, m.params) <
                                 std::tie(best->type_ord, best->perm, best->params))
                    best = std::move(m);
            }
        }
    };

    while (true) {
        for (size_t i = 0; i < n; ++i) pick[i] = &cands[i][choice[i]];
        consider(pick);
        size_t d = 0;
        while (d < n && ++choice[d] == cands[d].size()) choice[d++] = 0;
        if (d == n) break;
    }
    if (!best) throw Error(Errc::NoCatalogMatch, "no catalog pattern matches the skeleton");

    Identification ident;
    ident.type = type_at(n == 3, best->type_ord);
    ident.permutation = best->perm;
    ident.params = best->params;
    std::set<ExponentVec> consumed = best->picked;

    // Link monomials: prefer one already present in the support, otherwise the
    // canonical solution of the exponent equation (when it exists).
    const TypeDescriptor& td = descriptor(ident.type);
    if (!td.link_pairs.empty()) {
        WeightSystem w = weights_for(ident.type, ident.params);
        for (size_t li = 0; li < td.link_pairs.size(); ++li) {
            auto [i, j] = td.link_pairs[li];
            size_t vi = size_t(best->perm[size_t(i)]), vj = size_t(best->perm[size_t(j)]);
            std::optional<std::pair<Int, Int>> got;
            for (const auto& v : support) {
                if (consumed.count(v)) continue;
                bool shape = true;
                for (size_t k = 0; k < n; ++k)
                    if (k != vi && k != vj && v[k] != 0) shape = false;
                if (!shape || v[vi] + v[vj] == 0) continue;
                if (Rational(v[vi]) / w[size_t(i)] + Rational(v[vj]) / w[size_t(j)] == 1) {
                    got = std::make_pair(Int(v[vi]), Int(v[vj]));
                    consumed.insert(v);
                    break;
                }
            }
            if (!got) got = solve_link(w[size_t(i)], w[size_t(j)]); // may stay empty
            if (got) {
                if (td.arity == 3)
                    ident.links.surface = got;
                else if (li == 0)
                    ident.links.first = got;
                else
                    ident.links.second = got;
            }
        }
    }
    for (const auto& v : support)
        if (!consumed.count(v)) ident.residual.push_back(v);
    return ident;
}

/// All skeletons over one generic exponent per variable: one admissible
/// monomial choice per variable, 4^4 = 256 supports (3^3 = 27 for surfaces).
inline std::vector<Support> all_skeletons(const Params& generic) {
    size_t n = generic.size();
    if (n != 3 && n != 4) throw Error(Errc::ArityMismatch, "arity must be 3 or 4");
    for (size_t i = 0; i < n; ++i) {
        if (generic[i] < 5) throw Error(Errc::RangeError, "generic exponents must be >= 5");
        for (size_t j = i + 1; j < n; ++j)
            if (generic[i] == generic[j])
                throw Error(Errc::RangeError, "generic exponents must be pairwise distinct");
    }
    std::vector<Support> out;
    std::vector<size_t> choice(n, 0); // 0 = pure, k = attach to k-th other variable
    while (true) {
        std::set<ExponentVec> vs;
        for (size_t i = 0; i < n; ++i) {
            ExponentVec v(n, 0);
            v[i] = generic[i];
            if (choice[i] > 0) {
                size_t j = choice[i] - 1;
                if (j >= i) ++j;
                v[j] += 1;
            }
            vs.insert(std::move(v));
        }
        out.emplace_back(vs.begin(), vs.end());
        size_t d = 0;
        while (d < n && ++choice[d] == n) choice[d++] = 0;
        if (d == n) break;
    }
    return out;
}

} // namespace singclass
