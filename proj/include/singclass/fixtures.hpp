#pragma once

#include "singclass/catalog.hpp"
#include "singclass/error.hpp"
#include "singclass/types.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace singclass {

/// One slot of a fixture row: a fixed value, a closed finite set, or a
/// lower-bounded infinite range (constant or relative to another slot).
struct SlotSpec {
    enum class Kind { Fixed, Ge, FiniteSet };
    Kind kind = Kind::Fixed;
    int value = 0;           // Fixed
    int lo = 0;              // Ge with constant bound
    int ref_slot = -1;       // Ge with relational bound: >= slot + ref_offset
    int ref_offset = 0;
    std::vector<int> values; // FiniteSet, ascending

    bool is_ge() const { return kind == Kind::Ge; }
};

/// One encoded table row: an item path within its type's table, per-slot
/// specs, and the slot groups whose values the row treats as unordered.
struct FixtureEntry {
    TypeId type{};
    std::string item;
    std::array<SlotSpec, 4> slots{};
    std::vector<std::vector<int>> groups;
    int line_no = 0;

    std::string path() const { return type_name(type) + "." + item; }
};

struct FixtureTable {
    std::vector<FixtureEntry> entries;
    std::vector<std::string> findings; // load-time observations, not errors
};

namespace fixture_detail {

inline int slot_index(char c) {
    if (c < 'a' || c > 'd') return -1;
    return c - 'a';
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline int parse_int(const std::string& s, int line) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "line " + std::to_string(line) + ": bad integer '" + s + "'");
    }
}

} // namespace fixture_detail

/// Expands one entry to the parameter tuples it covers, every slot capped at
/// `bound` (inclusive). Group permutations are applied, so both orders of an
/// unordered pair are returned. Tuples are raw (not symmetry-canonicalized).
inline std::vector<Params> expand_entry(const FixtureEntry& e, int bound) {
    const TypeDescriptor& td = descriptor(e.type);
    int n = td.arity;

    // resolve slots whose relational bounds are already computable
    std::vector<Params> acc;
    Params cur(size_t(n), 0);
    std::array<bool, 4> done{};
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            acc.push_back(cur);
            return;
        }
        // pick an unresolved slot whose reference (if any) is resolved
        int pick = -1;
        for (int i = 0; i < n; ++i) {
            if (done[size_t(i)]) continue;
            const SlotSpec& sp = e.slots[size_t(i)];
            if (sp.kind == SlotSpec::Kind::Ge && sp.ref_slot >= 0 && !done[size_t(sp.ref_slot)])
                continue;
            pick = i;
            break;
        }
        if (pick < 0) throw Error(Errc::RangeError, e.path() + ": circular relational bounds");
        const SlotSpec& sp = e.slots[size_t(pick)];
        done[size_t(pick)] = true;
        switch (sp.kind) {
            case SlotSpec::Kind::Fixed:
                if (sp.value <= bound) {
                    cur[size_t(pick)] = sp.value;
                    self(self, remaining - 1);
                }
                break;
            case SlotSpec::Kind::FiniteSet:
                for (int v : sp.values) {
                    if (v > bound) break;
                    cur[size_t(pick)] = v;
                    self(self, remaining - 1);
                }
                break;
            case SlotSpec::Kind::Ge: {
                int lo = sp.ref_slot >= 0 ? cur[size_t(sp.ref_slot)] + sp.ref_offset : sp.lo;
                for (int v = lo; v <= bound; ++v) {
                    cur[size_t(pick)] = v;
                    self(self, remaining - 1);
                }
                break;
            }
        }
        done[size_t(pick)] = false;
    };
    rec(rec, n);

    if (e.groups.empty()) return acc;
    std::set<Params> out;
    for (const auto& base : acc) {
        // all products of within-group permutations
        std::vector<Params> frontier{base};
        for (const auto& grp : e.groups) {
            std::vector<int> order(grp);
            std::sort(order.begin(), order.end());
            std::vector<Params> next;
            do {
                for (const auto& t : frontier) {
                    Params u = t;
                    for (size_t k = 0; k < grp.size(); ++k) u[size_t(grp[k])] = t[size_t(order[k])];
                    next.push_back(std::move(u));
                }
            } while (std::next_permutation(order.begin(), order.end()));
            frontier = std::move(next);
        }
        for (auto& t : frontier) out.insert(std::move(t));
    }
    return {out.begin(), out.end()};
}

/// Strict parser for the tab-separated table fixture format. Hard errors carry
/// line numbers; rows whose sampled members fail link solvability are recorded
/// as findings (the encoded tables include such rows as printed).
inline FixtureTable load_fixture(std::istream& in) {
    using fixture_detail::parse_int;
    using fixture_detail::slot_index;
    using fixture_detail::split;

    FixtureTable table;
    std::set<std::string> seen_paths;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 5)
            throw Error(Errc::ParseError,
                        "line " + std::to_string(line_no) + ": expected 5 tab-separated columns");

        FixtureEntry e;
        e.line_no = line_no;
        auto t = parse_type(cols[0]);
        if (!t)
            throw Error(Errc::ParseError,
                        "line " + std::to_string(line_no) + ": unknown type '" + cols[0] + "'");
        e.type = *t;
        e.item = cols[1];
        if (e.item.empty())
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": empty item path");
        if (!seen_paths.insert(e.path()).second)
            throw Error(Errc::DuplicateItem,
                        "line " + std::to_string(line_no) + ": duplicate item " + e.path());

        const TypeDescriptor& td = descriptor(e.type);
        std::array<bool, 4> have{};

        auto claim = [&](int idx) {
            if (idx < 0 || idx >= td.arity)
                throw Error(Errc::ParseError,
                            "line " + std::to_string(line_no) + ": slot out of range");
            if (have[size_t(idx)])
                throw Error(Errc::ParseError,
                            "line " + std::to_string(line_no) + ": slot specified twice");
            have[size_t(idx)] = true;
        };

        if (cols[2] != "-") {
            for (const auto& tok : split(cols[2], ' ')) {
                if (tok.empty()) continue;
                auto eq = tok.find('=');
                if (eq != 1 || slot_index(tok[0]) < 0)
                    throw Error(Errc::ParseError,
                                "line " + std::to_string(line_no) + ": bad assignment '" + tok + "'");
                int idx = slot_index(tok[0]);
                claim(idx);
                e.slots[size_t(idx)].kind = SlotSpec::Kind::Fixed;
                e.slots[size_t(idx)].value = parse_int(tok.substr(2), line_no);
            }
        }
        if (cols[3] != "-") {
            for (const auto& tok : split(cols[3], ' ')) {
                if (tok.empty()) continue;
                if (tok.size() < 4 || tok[1] != ':' || slot_index(tok[0]) < 0)
                    throw Error(Errc::ParseError,
                                "line " + std::to_string(line_no) + ": bad range '" + tok + "'");
                int idx = slot_index(tok[0]);
                claim(idx);
                SlotSpec& sp = e.slots[size_t(idx)];
                std::string spec = tok.substr(2);
                if (spec.rfind("ge(", 0) == 0 && spec.back() == ')') {
                    sp.kind = SlotSpec::Kind::Ge;
                    std::string arg = spec.substr(3, spec.size() - 4);
                    if (!arg.empty() && slot_index(arg[0]) >= 0 &&
                        (arg.size() == 1 || arg[1] == '+')) {
                        sp.ref_slot = slot_index(arg[0]);
                        if (sp.ref_slot == idx)
                            throw Error(Errc::RangeError, "line " + std::to_string(line_no) +
                                                              ": self-referential bound");
                        sp.ref_offset = arg.size() == 1 ? 0 : parse_int(arg.substr(2), line_no);
                    } else {
                        sp.lo = parse_int(arg, line_no);
                    }
                } else if (spec.rfind("set{", 0) == 0 && spec.back() == '}') {
                    sp.kind = SlotSpec::Kind::FiniteSet;
                    std::string body = spec.substr(4, spec.size() - 5);
                    auto dots = body.find("..");
                    if (dots != std::string::npos) {
                        int lo = parse_int(body.substr(0, dots), line_no);
                        int hi = parse_int(body.substr(dots + 2), line_no);
                        if (lo > hi)
                            throw Error(Errc::RangeError,
                                        "line " + std::to_string(line_no) + ": empty range");
                        for (int v = lo; v <= hi; ++v) sp.values.push_back(v);
                    } else {
                        for (const auto& vtok : split(body, ','))
                            sp.values.push_back(parse_int(vtok, line_no));
                        std::sort(sp.values.begin(), sp.values.end());
                        if (sp.values.empty())
                            throw Error(Errc::RangeError,
                                        "line " + std::to_string(line_no) + ": empty set");
                    }
                } else {
                    throw Error(Errc::ParseError,
                                "line " + std::to_string(line_no) + ": bad range '" + tok + "'");
                }
            }
        }
        for (int i = 0; i < td.arity; ++i)
            if (!have[size_t(i)])
                throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": slot '" +
                                                  char('a' + i) + "' unspecified");

        if (cols[4] != "ordered") {
            std::array<bool, 4> grouped{};
            for (const auto& g : split(cols[4], ';')) {
                if (g.rfind("set{", 0) != 0 || g.back() != '}')
                    throw Error(Errc::ParseError,
                                "line " + std::to_string(line_no) + ": bad flag '" + cols[4] + "'");
                std::vector<int> grp;
                for (const auto& stok : split(g.substr(4, g.size() - 5), ',')) {
                    if (stok.size() != 1 || slot_index(stok[0]) < 0 ||
                        slot_index(stok[0]) >= td.arity)
                        throw Error(Errc::ParseError,
                                    "line " + std::to_string(line_no) + ": bad group slot");
                    int idx = slot_index(stok[0]);
                    if (grouped[size_t(idx)])
                        throw Error(Errc::ParseError,
                                    "line " + std::to_string(line_no) + ": slot in two groups");
                    grouped[size_t(idx)] = true;
                    grp.push_back(idx);
                }
                if (grp.size() < 2)
                    throw Error(Errc::RangeError,
                                "line " + std::to_string(line_no) + ": group needs >= 2 slots");
                e.groups.push_back(std::move(grp));
            }
        }

        // lower bounds must respect the per-slot minimums
        for (int i = 0; i < td.arity; ++i) {
            const SlotSpec& sp = e.slots[size_t(i)];
            int lo = sp.kind == SlotSpec::Kind::Fixed      ? sp.value
                     : sp.kind == SlotSpec::Kind::FiniteSet ? sp.values.front()
                     : sp.ref_slot >= 0                     ? td.slot_min[size_t(sp.ref_slot)] + sp.ref_offset
                                                            : sp.lo;
            int min_in_group = td.slot_min[size_t(i)];
            for (const auto& grp : e.groups)
                if (std::find(grp.begin(), grp.end(), i) != grp.end())
                    for (int s : grp) min_in_group = std::min(min_in_group, td.slot_min[size_t(s)]);
            if (lo < min_in_group)
                throw Error(Errc::RangeError, "line " + std::to_string(line_no) + ": slot '" +
                                                  char('a' + i) + "' below the type minimum");
        }

        // spot-instantiate up to three members per row
        auto sample = expand_entry(e, 60);
        if (sample.empty())
            throw Error(Errc::RangeError, "line " + std::to_string(line_no) + ": row covers nothing");
        std::vector<size_t> picks{0, sample.size() / 2, sample.size() - 1};
        for (size_t pi : picks) {
            try {
                validate_params(e.type, sample[pi]);
            } catch (const Error& err) {
                if (err.code() == Errc::UnsolvableLink) {
                    std::string tup;
                    for (int v : sample[pi]) tup += (tup.empty() ? "" : ",") + std::to_string(v);
                    table.findings.push_back(e.path() + ": member (" + tup +
                                             ") has no integral extra monomial");
                } else {
                    throw Error(err.code(), "line " + std::to_string(line_no) + ": " + err.what());
                }
            }
        }
        table.entries.push_back(std::move(e));
    }
    return table;
}

inline FixtureTable load_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open fixture file " + path);
    return load_fixture(in);
}

inline std::string serialize_slot(const SlotSpec& sp) {
    switch (sp.kind) {
        case SlotSpec::Kind::Fixed:
            return std::to_string(sp.value);
        case SlotSpec::Kind::Ge:
            if (sp.ref_slot >= 0)
                return std::string("ge(") + char('a' + sp.ref_slot) +
                       (sp.ref_offset ? "+" + std::to_string(sp.ref_offset) : "") + ")";
            return "ge(" + std::to_string(sp.lo) + ")";
        case SlotSpec::Kind::FiniteSet: {
            bool contiguous = sp.values.back() - sp.values.front() + 1 == int(sp.values.size());
            if (contiguous && sp.values.size() > 1)
                return "set{" + std::to_string(sp.values.front()) + ".." +
                       std::to_string(sp.values.back()) + "}";
            std::string s = "set{";
            for (size_t i = 0; i < sp.values.size(); ++i)
                s += (i ? "," : "") + std::to_string(sp.values[i]);
            return s + "}";
        }
    }
    return "";
}

/// Canonical text form: sorted by (type, item), slots in a..d order.
inline std::string serialize(const FixtureTable& table) {
    std::vector<const FixtureEntry*> order;
    for (const auto& e : table.entries) order.push_back(&e);
    std::sort(order.begin(), order.end(), [](const FixtureEntry* x, const FixtureEntry* y) {
        return std::tie(x->type, x->item) < std::tie(y->type, y->item);
    });
    std::string out;
    for (const FixtureEntry* e : order) {
        const TypeDescriptor& td = descriptor(e->type);
        std::string fixed, free;
        for (int i = 0; i < td.arity; ++i) {
            const SlotSpec& sp = e->slots[size_t(i)];
            if (sp.kind == SlotSpec::Kind::Fixed)
                fixed += (fixed.empty() ? "" : " ") + std::string(1, char('a' + i)) + "=" +
                         std::to_string(sp.value);
            else
                free += (free.empty() ? "" : " ") + std::string(1, char('a' + i)) + ":" +
                        serialize_slot(sp);
        }
        std::string flag;
        if (e->groups.empty()) {
            flag = "ordered";
        } else {
            auto groups = e->groups;
            for (auto& g : groups) std::sort(g.begin(), g.end());
            std::sort(groups.begin(), groups.end());
            for (const auto& g : groups) {
                flag += (flag.empty() ? "" : ";") + std::string("set{");
                for (size_t k = 0; k < g.size(); ++k)
                    flag += (k ? "," : "") + std::string(1, char('a' + g[k]));
                flag += "}";
            }
        }
        out += type_name(e->type) + "\t" + e->item + "\t" + (fixed.empty() ? "-" : fixed) + "\t" +
               (free.empty() ? "-" : free) + "\t" + flag + "\n";
    }
    return out;
}

} // namespace singclass
