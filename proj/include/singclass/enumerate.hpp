#pragma once

#include "singclass/catalog.hpp"
#include "singclass/error.hpp"
#include "singclass/fixtures.hpp"
#include "singclass/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace singclass {

/// Inclusive per-parameter upper limit for enumeration. 50 exceeds every
/// finite range in the encoded tables.
struct Bounds {
    int limit = 50;
};

inline Rational alpha_at_ones(TypeId t, const Params& p) {
    Rational s = 0;
    for (const Rational& w : weights_for(t, p)) s += 1 / w;
    return s;
}

/// The rationality criterion: alpha(1,...,1) > 1 exactly.
inline bool is_rational(const Instance& inst) {
    return alpha_at_ones(inst.type, inst.params) > 1;
}

/// Sum of reciprocal weight formulas as a single exact rational function.
inline const RationalFn& alpha_formula(TypeId t) {
    static const std::vector<RationalFn> cache = [] {
        std::vector<RationalFn> v;
        for (const auto& td : catalog_types()) {
            RationalFn s(0);
            for (int i = 0; i < td.arity; ++i) s = s + td.weight[size_t(i)].reciprocal();
            v.push_back(std::move(s));
        }
        return v;
    }();
    return cache[size_t(t)];
}

namespace detail {

/// alpha(1,..,1) when no weight-formula denominator vanishes and all weights
/// are positive; nullopt otherwise.
inline std::optional<Rational> try_alpha_ones(TypeId t, const Params& p) {
    const TypeDescriptor& td = descriptor(t);
    auto pt = to_rational_point(p);
    Rational s = 0;
    for (int i = 0; i < td.arity; ++i) {
        if (td.weight[size_t(i)].denominator_vanishes(pt)) return std::nullopt;
        Rational w = td.weight[size_t(i)].eval(pt);
        if (w <= 0) return std::nullopt;
        s += 1 / w;
    }
    return s;
}

inline bool weights_valid(TypeId t, const Params& p) {
    const TypeDescriptor& td = descriptor(t);
    auto pt = to_rational_point(p);
    for (int i = 0; i < td.arity; ++i) {
        if (td.weight[size_t(i)].denominator_vanishes(pt)) return false;
        if (td.weight[size_t(i)].eval(pt) <= 1) return false;
    }
    return true;
}

inline bool links_solvable(TypeId t, const Params& p) {
    const TypeDescriptor& td = descriptor(t);
    if (td.link_pairs.empty()) return true;
    WeightSystem w = weights_for(t, p);
    for (auto [i, j] : td.link_pairs)
        if (!solve_link(w[size_t(i)], w[size_t(j)])) return false;
    return true;
}

} // namespace detail

/// Canonical parameter tuples with valid weights and alpha(1,..,1) > 1 within
/// bounds. `members` is every such tuple; `defective` is the subset with no
/// integral extra-monomial exponents (kept: the encoded tables include them).
struct Universe {
    std::set<Params> members;
    std::set<Params> defective;
};

inline Universe table_universe(TypeId t, const Bounds& bounds) {
    const TypeDescriptor& td = descriptor(t);
    Universe u;
    Params p(size_t(td.arity));
    // depth-first with exact pruning: alpha(1,..,1) strictly decreases in each
    // exponent, so once the remaining-slots-at-minimum probe is <= 1 no larger
    // value at this slot can be rational
    std::function<void(int)> rec = [&](int depth) {
        if (depth == td.arity) {
            if (!detail::weights_valid(t, p)) return;
            Params canon = canonical_params(t, p);
            if (u.members.insert(canon).second) {
                if (!detail::links_solvable(t, p)) u.defective.insert(canon);
            }
            return;
        }
        Params probe = p;
        for (int k = depth; k < td.arity; ++k) probe[size_t(k)] = td.slot_min[size_t(k)];
        for (int v = td.slot_min[size_t(depth)]; v <= bounds.limit; ++v) {
            probe[size_t(depth)] = v;
            auto a = detail::try_alpha_ones(t, probe);
            if (a && *a <= 1) break;
            p[size_t(depth)] = v;
            rec(depth + 1);
        }
    };
    rec(0);
    return u;
}

/// All valid rational instances within bounds, canonical representatives only,
/// in lexicographic parameter order.
inline std::vector<Instance> enumerate_rational(TypeId t, const Bounds& bounds = {}) {
    Universe u = table_universe(t, bounds);
    std::vector<Instance> out;
    for (const auto& p : u.members)
        if (!u.defective.count(p)) out.push_back(validate_params(t, p));
    return out;
}

// ---------------------------------------------------------------------------
// Frontier analysis

struct FamilyVerdict {
    enum class Kind { FiniteWithMax, InfiniteFamily };
    Kind kind = Kind::FiniteWithMax;
    std::optional<Int> max_value; // absent when no member of the family is rational
    Rational limit_alpha;         // exact limit of alpha(1,..,1) as the slot grows
};

using PartialParams = std::array<std::optional<int>, 4>;

namespace detail {

inline RationalFn substitute_fixed(TypeId t, const PartialParams& fixed) {
    RationalFn f = alpha_formula(t);
    for (int i = 0; i < 4; ++i)
        if (fixed[size_t(i)]) f = f.substitute(i, Rational(*fixed[size_t(i)]));
    return f;
}

} // namespace detail

/// Exact limit of alpha(1,..,1) as the free slots tend to infinity jointly
/// (taken iteratively in the given order); remaining slots must be fixed.
inline Rational limit_alpha(TypeId t, const PartialParams& fixed, const std::vector<int>& free_order) {
    RationalFn f = detail::substitute_fixed(t, fixed);
    for (int slot : free_order) {
        auto lim = f.limit_at_infinity(slot);
        if (lim.infinite)
            throw Error(Errc::MonotonicityViolation, "alpha diverges in slot " + std::to_string(slot));
        f = lim.value;
    }
    return f.eval({1, 1, 1, 1}); // constant by now
}

/// Verdict for one free slot with all others pinned: the family is infinite
/// exactly when the limit of alpha stays >= 1 (alpha strictly decreases to the
/// limit, which the probe verifies).
inline FamilyVerdict frontier_analysis(TypeId t, const PartialParams& fixed, int free_slot) {
    const TypeDescriptor& td = descriptor(t);
    if (free_slot < 0 || free_slot >= td.arity)
        throw Error(Errc::ArityMismatch, "free slot out of range");
    for (int i = 0; i < td.arity; ++i)
        if (i != free_slot && !fixed[size_t(i)])
            throw Error(Errc::ArityMismatch, "all slots but the free one must be fixed");

    RationalFn f = detail::substitute_fixed(t, fixed);
    auto alpha_at = [&](int v) -> std::optional<Rational> {
        Params p(size_t(td.arity));
        for (int i = 0; i < td.arity; ++i) p[size_t(i)] = i == free_slot ? v : *fixed[size_t(i)];
        return detail::try_alpha_ones(t, p);
    };

    int lo = td.slot_min[size_t(free_slot)];
    while (!alpha_at(lo) && lo < td.slot_min[size_t(free_slot)] + 8) ++lo;

    std::optional<Rational> prev;
    for (int v = lo; v < lo + 8; ++v) {
        auto a = alpha_at(v);
        if (!a) throw Error(Errc::MonotonicityViolation, "alpha undefined inside probe range");
        if (prev && *a >= *prev)
            throw Error(Errc::MonotonicityViolation,
                        "alpha not strictly decreasing in slot " + std::to_string(free_slot));
        prev = a;
    }

    auto lim = f.limit_at_infinity(free_slot);
    if (lim.infinite) throw Error(Errc::MonotonicityViolation, "alpha diverges");
    Rational L = lim.value.eval({1, 1, 1, 1});

    FamilyVerdict verdict;
    verdict.limit_alpha = L;
    if (L >= 1) {
        verdict.kind = FamilyVerdict::Kind::InfiniteFamily;
        return verdict;
    }
    verdict.kind = FamilyVerdict::Kind::FiniteWithMax;
    auto a0 = alpha_at(lo);
    if (!a0 || *a0 <= 1) return verdict; // no rational member at all
    // alpha decreases strictly: double then bisect for the last value > 1
    int hi = lo;
    while (true) {
        int next = hi * 2 + 1;
        auto a = alpha_at(next);
        if (a && *a > 1) {
            hi = next;
        } else {
            break;
        }
    }
    int lo2 = hi, hi2 = hi * 2 + 1; // alpha(lo2) > 1, alpha(hi2) <= 1
    while (lo2 + 1 < hi2) {
        int mid = lo2 + (hi2 - lo2) / 2;
        auto a = alpha_at(mid);
        if (a && *a > 1)
            lo2 = mid;
        else
            hi2 = mid;
    }
    verdict.max_value = lo2;
    return verdict;
}

// ---------------------------------------------------------------------------
// Table regeneration

struct TableRow {
    Params prefix; // all slots but the last
    int lo = 0;
    std::optional<Int> hi;             // absent for unbounded rows
    std::optional<Rational> limit_alpha; // present for unbounded rows
};

struct TypeTable {
    TypeId type{};
    std::vector<Params> members;        // canonical, sorted
    std::vector<Params> link_defective; // subset of members
    std::vector<TableRow> rows;
};

struct TableDocument {
    int bound = 0;
    std::vector<TypeTable> tables;
};

inline TableDocument regenerate_table(const std::vector<TypeId>& types, const Bounds& bounds = {}) {
    TableDocument doc;
    doc.bound = bounds.limit;
    for (TypeId t : types) {
        const TypeDescriptor& td = descriptor(t);
        Universe u = table_universe(t, bounds);
        TypeTable tab;
        tab.type = t;
        tab.members.assign(u.members.begin(), u.members.end());
        tab.link_defective.assign(u.defective.begin(), u.defective.end());

        // compress maximal runs of the last parameter per prefix
        std::map<Params, std::vector<int>> by_prefix;
        for (const auto& p : tab.members) {
            Params pre(p.begin(), p.end() - 1);
            by_prefix[pre].push_back(p.back());
        }
        for (auto& [pre, vals] : by_prefix) {
            std::sort(vals.begin(), vals.end());
            size_t i = 0;
            while (i < vals.size()) {
                size_t j = i;
                while (j + 1 < vals.size() && vals[j + 1] == vals[j] + 1) ++j;
                TableRow row;
                row.prefix = pre;
                row.lo = vals[i];
                if (vals[j] >= bounds.limit) {
                    PartialParams fixed{};
                    for (int k = 0; k + 1 < td.arity; ++k) fixed[size_t(k)] = pre[size_t(k)];
                    FamilyVerdict v = frontier_analysis(t, fixed, td.arity - 1);
                    if (v.kind == FamilyVerdict::Kind::InfiniteFamily) {
                        row.limit_alpha = v.limit_alpha;
                    } else {
                        row.hi = v.max_value; // exact even beyond the bound
                    }
                } else {
                    row.hi = Int(vals[j]);
                }
                tab.rows.push_back(std::move(row));
                i = j + 1;
            }
        }
        doc.tables.push_back(std::move(tab));
    }
    return doc;
}

inline std::string params_to_string(const Params& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

/// Deterministic text form of a regenerated table document.
inline std::string serialize(const TableDocument& doc) {
    std::string out = "# bound " + std::to_string(doc.bound) + "\n";
    for (const auto& tab : doc.tables) {
        out += type_name(tab.type) + "\tmembers=" + std::to_string(tab.members.size()) +
               "\tnon-integral-links=" + std::to_string(tab.link_defective.size()) + "\n";
        for (const auto& row : tab.rows) {
            out += type_name(tab.type) + "\t" + params_to_string(row.prefix) + "\t";
            if (row.hi)
                out += "last=" + std::to_string(row.lo) + ".." + row.hi->str();
            else if (row.limit_alpha)
                out += "last>=" + std::to_string(row.lo) +
                       "\tlimit_alpha=" + to_fraction_string(*row.limit_alpha);
            else
                out += "empty";
            out += "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixture diffing

struct DiffEntry {
    enum class Kind { MissingInGenerated, ExtraInGenerated, RangeMismatch, CoverageMismatch };
    Kind kind{};
    TypeId type{};
    std::string path;   // fixture item path, or type name for coverage entries
    std::string detail;
    std::vector<Params> members;
    int fixture_line = 0;
};

struct DiffReport {
    std::vector<DiffEntry> entries;
    bool empty() const { return entries.empty(); }
};

inline const char* diff_kind_name(DiffEntry::Kind k) {
    switch (k) {
        case DiffEntry::Kind::MissingInGenerated: return "missing-in-generated";
        case DiffEntry::Kind::ExtraInGenerated: return "extra-in-generated";
        case DiffEntry::Kind::RangeMismatch: return "range-mismatch";
        case DiffEntry::Kind::CoverageMismatch: return "coverage-mismatch";
    }
    return "?";
}

namespace detail {

/// Group-permutation branches of a fixture entry, each a slot bijection
/// (identity outside the groups).
inline std::vector<std::array<int, 4>> entry_branches(const FixtureEntry& e) {
    std::vector<std::array<int, 4>> out{{0, 1, 2, 3}};
    for (const auto& grp : e.groups) {
        std::vector<int> order(grp);
        std::sort(order.begin(), order.end());
        std::vector<std::array<int, 4>> next;
        do {
            for (auto base : out) {
                // value of slot order[k] moves to slot grp[k]
                std::array<int, 4> m = base;
                for (size_t k = 0; k < grp.size(); ++k) m[size_t(order[k])] = base[size_t(grp[k])];
                next.push_back(m);
            }
        } while (std::next_permutation(order.begin(), order.end()));
        out = std::move(next);
    }
    return out;
}

/// Is tuple q (raw slot order) covered by the entry's specs with finite sets
/// relaxed to their lower ends?
inline bool relaxed_match(const FixtureEntry& e, const Params& q) {
    const TypeDescriptor& td = descriptor(e.type);
    for (int i = 0; i < td.arity; ++i) {
        const SlotSpec& sp = e.slots[size_t(i)];
        int v = q[size_t(i)];
        switch (sp.kind) {
            case SlotSpec::Kind::Fixed:
                if (v != sp.value) return false;
                break;
            case SlotSpec::Kind::FiniteSet:
                if (v < sp.values.front()) return false;
                break;
            case SlotSpec::Kind::Ge: {
                int lo = sp.ref_slot >= 0 ? q[size_t(sp.ref_slot)] + sp.ref_offset : sp.lo;
                if (v < lo) return false;
                break;
            }
        }
    }
    return true;
}

/// Does the entry, ranges relaxed upward, reach the canonical tuple `t`
/// through some symmetry image and group branch?
inline bool relaxed_covers(const FixtureEntry& e, const Params& t) {
    const TypeDescriptor& td = descriptor(e.type);
    auto branches = entry_branches(e);
    Params img(t.size()), q(t.size());
    for (const auto& g : td.symmetry) {
        for (int k = 0; k < td.arity; ++k) img[size_t(k)] = t[size_t(g[k])];
        for (const auto& br : branches) {
            // br maps value-of-slot s to slot position; invert to recover raw tuple
            for (int s = 0; s < td.arity; ++s) q[size_t(s)] = img[size_t(br[size_t(s)])];
            if (relaxed_match(e, q)) return true;
        }
    }
    return false;
}

/// Verify the entry's unbounded claims: for every group branch, the joint
/// limit of alpha over the ge-slots (others at every finite choice) is >= 1.
/// Returns an explanation when some branch is in fact a finite family.
inline std::optional<std::string> check_infinite_claims(const FixtureEntry& e) {
    const TypeDescriptor& td = descriptor(e.type);
    std::vector<int> ge_slots;
    for (int i = 0; i < td.arity; ++i)
        if (e.slots[size_t(i)].is_ge()) ge_slots.push_back(i);
    if (ge_slots.empty()) return std::nullopt;

    // limit order: a slot referenced by another must come later
    std::vector<int> order;
    std::vector<int> rest = ge_slots;
    while (!rest.empty()) {
        bool moved = false;
        for (size_t i = 0; i < rest.size(); ++i) {
            int s = rest[i];
            bool referenced = false;
            for (int j : rest)
                if (j != s && e.slots[size_t(j)].ref_slot == s) referenced = true;
            if (!referenced) {
                order.push_back(s);
                rest.erase(rest.begin() + long(i));
                moved = true;
                break;
            }
        }
        if (!moved) return "circular relational bounds";
    }

    for (const auto& br : entry_branches(e)) {
        // alpha composed with the branch permutation, as a function of the raw slots
        std::array<int, 4> inv{0, 1, 2, 3};
        for (int s = 0; s < td.arity; ++s) inv[size_t(br[size_t(s)])] = s;
        RationalFn f = alpha_formula(e.type).rename(inv);

        // iterate finite choices of the non-ge slots
        std::vector<int> finite_slots;
        for (int i = 0; i < td.arity; ++i)
            if (!e.slots[size_t(i)].is_ge()) finite_slots.push_back(i);
        std::vector<size_t> idx(finite_slots.size(), 0);
        while (true) {
            RationalFn h = f;
            for (size_t k = 0; k < finite_slots.size(); ++k) {
                const SlotSpec& sp = e.slots[size_t(finite_slots[k])];
                int v = sp.kind == SlotSpec::Kind::Fixed ? sp.value : sp.values[idx[k]];
                h = h.substitute(finite_slots[k], Rational(v));
            }
            bool divergent = false;
            for (int s : order) {
                auto lim = h.limit_at_infinity(s);
                if (lim.infinite) {
                    divergent = true;
                    break;
                }
                h = lim.value;
            }
            if (!divergent) {
                Rational L = h.eval({1, 1, 1, 1});
                if (L < 1)
                    return "claimed unbounded but limit alpha = " + to_fraction_string(L) + " < 1";
            }
            size_t d = 0;
            while (d < finite_slots.size()) {
                const SlotSpec& sp = e.slots[size_t(finite_slots[d])];
                size_t width = sp.kind == SlotSpec::Kind::Fixed ? 1 : sp.values.size();
                if (++idx[d] < width) break;
                idx[d++] = 0;
            }
            if (d == finite_slots.size()) break;
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Row-level, range-aware comparison of a regenerated document against the
/// encoded fixture rows. Empty report = exact agreement within bounds plus
/// agreement of every unbounded-range claim.
inline DiffReport diff_table(const TableDocument& doc, const FixtureTable& fixture) {
    DiffReport report;
    std::set<TypeId> doc_types, fix_types;
    for (const auto& tab : doc.tables) doc_types.insert(tab.type);
    for (const auto& e : fixture.entries) fix_types.insert(e.type);
    for (TypeId t : doc_types)
        if (!fix_types.count(t))
            report.entries.push_back({DiffEntry::Kind::CoverageMismatch, t, type_name(t),
                                      "no fixture rows for this type", {}, 0});
    for (TypeId t : fix_types)
        if (!doc_types.count(t))
            report.entries.push_back({DiffEntry::Kind::CoverageMismatch, t, type_name(t),
                                      "fixture rows for a type not regenerated", {}, 0});

    for (const auto& tab : doc.tables) {
        if (!fix_types.count(tab.type)) continue;
        std::set<Params> gen(tab.members.begin(), tab.members.end());
        std::set<Params> covered;
        std::vector<const FixtureEntry*> entries;
        for (const auto& e : fixture.entries)
            if (e.type == tab.type) entries.push_back(&e);

        for (const FixtureEntry* e : entries) {
            std::vector<Params> missing;
            for (const auto& raw : expand_entry(*e, doc.bound)) {
                Params canon = canonical_params(e->type, raw);
                if (gen.count(canon))
                    covered.insert(canon);
                else
                    missing.push_back(canon);
            }
            if (!missing.empty()) {
                std::sort(missing.begin(), missing.end());
                missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
                report.entries.push_back({DiffEntry::Kind::MissingInGenerated, e->type, e->path(),
                                          "row claims " + std::to_string(missing.size()) +
                                              " tuple(s) that are not rational, first " +
                                              params_to_string(missing.front()),
                                          std::move(missing), e->line_no});
            }
            if (auto reason = detail::check_infinite_claims(*e))
                report.entries.push_back(
                    {DiffEntry::Kind::RangeMismatch, e->type, e->path(), *reason, {}, e->line_no});
        }

        std::map<const FixtureEntry*, std::vector<Params>> mismatched;
        std::vector<Params> orphans;
        for (const auto& p : gen) {
            if (covered.count(p)) continue;
            const FixtureEntry* owner = nullptr;
            for (const FixtureEntry* e : entries)
                if (detail::relaxed_covers(*e, p)) {
                    owner = e;
                    break;
                }
            if (owner)
                mismatched[owner].push_back(p);
            else
                orphans.push_back(p);
        }
        for (auto& [e, members] : mismatched)
            report.entries.push_back({DiffEntry::Kind::RangeMismatch, e->type, e->path(),
                                      "generated " + std::to_string(members.size()) +
                                          " tuple(s) beyond the printed range, first " +
                                          params_to_string(members.front()),
                                      std::move(members), e->line_no});
        if (!orphans.empty())
            report.entries.push_back({DiffEntry::Kind::ExtraInGenerated, tab.type,
                                      type_name(tab.type),
                                      std::to_string(orphans.size()) +
                                          " rational tuple(s) not covered by any row, first " +
                                          params_to_string(orphans.front()),
                                      std::move(orphans), 0});
    }

    std::sort(report.entries.begin(), report.entries.end(),
              [](const DiffEntry& x, const DiffEntry& y) {
                  return std::tie(x.type, x.fixture_line, x.kind, x.path) <
                         std::tie(y.type, y.fixture_line, y.kind, y.path);
              });
    return report;
}

// ---------------------------------------------------------------------------
// Surface mode: Du Val labelling

/// Matches a rational surface weight system against the Du Val families; the
/// weight system is a complete invariant here.
inline std::optional<std::string> ade_label(WeightSystem w, const Int& mu) {
    if (w.size() != 3) return std::nullopt;
    std::sort(w.begin(), w.end());
    if (w[0] != 2) return std::nullopt;
    if (w[1] == 2 && is_integer(w[2])) {
        Int n = numerator_of(w[2]) - 1;
        if (n >= 1 && mu == n) return "A" + n.str();
    }
    if (is_integer(w[2]) && w[2] >= 3 && w[1] == Rational(2 * numerator_of(w[2])) / (numerator_of(w[2]) - 1)) {
        Int n = numerator_of(w[2]) + 1;
        if (n >= 4 && mu == n) return "D" + n.str();
    }
    if (w[1] == 3) {
        if (w[2] == 4 && mu == 6) return "E6";
        if (w[2] == Rational(9, 2) && mu == 7) return "E7";
        if (w[2] == 5 && mu == 8) return "E8";
    }
    return std::nullopt;
}

struct AdeEntry {
    Instance instance;
    std::string label;
    Int mu;
};

struct SurfaceClassification {
    std::vector<AdeEntry> labeled;
    std::vector<Instance> unlabeled; // findings; must stay empty
};

/// Enumerates rational surface instances over all seven classes and labels
/// each by its Du Val family.
inline SurfaceClassification surface_classification(const Bounds& bounds = {.limit = 30}) {
    SurfaceClassification out;
    for (int i = 0; i < kSurfaceCount; ++i) {
        TypeId t = type_at(true, i);
        for (const Instance& inst : enumerate_rational(t, bounds)) {
            if (!is_rational(inst)) continue;
            Int mu = milnor_closed_form(inst);
            auto label = ade_label(weights_of(inst), mu);
            if (label)
                out.labeled.push_back({inst, *label, mu});
            else
                out.unlabeled.push_back(inst);
        }
    }
    auto rank = [](const AdeEntry& e) {
        char fam = e.label[0];
        int famrank = fam == 'A' ? 0 : fam == 'D' ? 1 : 2;
        return std::tuple<int, Int, int, Params>(famrank, e.mu, int(e.instance.type),
                                                 e.instance.params);
    };
    std::sort(out.labeled.begin(), out.labeled.end(),
              [&](const AdeEntry& x, const AdeEntry& y) { return rank(x) < rank(y); });
    return out;
}

} // namespace singclass
