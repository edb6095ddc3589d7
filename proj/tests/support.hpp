#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.

#include "qlogic/core_algebra.hpp"
#include "qlogic/io.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace qtest {

using namespace qlogic;

inline std::filesystem::path corpus_dir() { return QLOGIC_CORPUS_DIR; }

inline AlgebraRef corpus(const std::string &file) {
    static std::map<std::string, AlgebraRef> cache;
    auto it = cache.find(file);
    if (it != cache.end()) return it->second;
    return cache[file] = load_algebra(corpus_dir() / file);
}

inline const CorpusManifest &manifest() {
    static const CorpusManifest m = load_manifest(corpus_dir() / "manifest.txt");
    return m;
}

/// Every total map source -> target satisfying the morphism conditions, found
/// by assigning elements one at a time in id order and rejecting a partial map
/// as soon as a condition among already-assigned elements fails. No atoms or
/// decompositions are used, so this is independent of the enumerator.
inline std::vector<std::vector<Elem>> filtered_maps(const EventAlgebra &K, const EventAlgebra &L,
                                                    MorphismKind kind) {
    std::vector<std::vector<Elem>> out;
    if (kind == MorphismKind::BooleanHom && (!K.is_boolean() || !L.is_boolean())) return out;
    const int n = K.size();
    std::vector<Elem> map(n, -1);
    auto consistent = [&](Elem e) {
        Elem t = map[e];
        if (e == K.one() && t != L.one()) return false;
        for (Elem f = 0; f < n; ++f) {
            if (map[f] < 0) continue;
            Elem u = map[f];
            if (K.ortho(e) == f && L.ortho(t) != u) return false;
            if (K.leq(e, f) && !L.leq(t, u)) return false;
            if (K.leq(f, e) && !L.leq(u, t)) return false;
            if (kind == MorphismKind::Monic && f != e && u == t) return false;
            for (Elem g = 0; g < n; ++g) {
                if (map[g] < 0) continue;
                // e participates in (f, g) or as one side of an orthogonal pair.
                auto check_join = [&](Elem a, Elem b, bool orthogonal_only) {
                    if (orthogonal_only && !K.orthogonal(a, b)) return true;
                    auto j = K.join(a, b);
                    if (!j || map[*j] < 0) return true;
                    auto lj = L.join(map[a], map[b]);
                    return lj && *lj == map[*j];
                };
                auto check_meet = [&](Elem a, Elem b) {
                    auto m = K.meet(a, b);
                    if (!m || map[*m] < 0) return true;
                    auto lm = L.meet(map[a], map[b]);
                    return lm && *lm == map[*m];
                };
                bool boolean = kind == MorphismKind::BooleanHom;
                for (auto [a, b] : {std::pair{e, f}, std::pair{e, g}, std::pair{f, g}}) {
                    if (!check_join(a, b, !boolean)) return false;
                    if (boolean && !check_meet(a, b)) return false;
                }
            }
        }
        return true;
    };
    std::function<void(Elem)> rec = [&](Elem e) {
        if (e == n) {
            out.push_back(map);
            return;
        }
        for (Elem t = 0; t < L.size(); ++t) {
            map[e] = t;
            if (consistent(e)) rec(e + 1);
        }
        map[e] = -1;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Literal scan of all |L|^|K| maps through the morphism validator.
inline std::vector<std::vector<Elem>> all_maps_filtered(const AlgebraRef &K, const AlgebraRef &L,
                                                        MorphismKind kind) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> map(K->size(), 0);
    while (true) {
        if (ok(check_morphism(K, L, map, kind))) out.push_back(map);
        int i = 0;
        while (i < K->size() && ++map[i] == L->size()) map[i++] = 0;
        if (i == K->size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Event algebra of a random tree of three-atom blocks. Each new block shares
/// at most one atom with earlier ones, so the diagram has no loops and the
/// result is an orthomodular lattice.
struct BlockTree {
    RawAlgebra raw;
    std::vector<std::vector<std::string>> blocks;
};

inline BlockTree random_block_tree(std::mt19937 &rng, int blocks, std::string name = "tree") {
    std::vector<std::vector<int>> bl;
    int atoms = 0;
    for (int k = 0; k < blocks; ++k) {
        std::vector<int> b;
        if (atoms > 0 && rng() % 4 != 0) b.push_back(static_cast<int>(rng() % atoms));
        while (b.size() < 3) b.push_back(atoms++);
        bl.push_back(b);
    }
    auto at = [](int i) { return "a" + std::to_string(i); };
    auto co = [&](int i) { return at(i) + "'"; };
    RawAlgebra raw;
    raw.name = std::move(name);
    raw.zero = "0";
    raw.one = "1";
    raw.elements = {"0", "1"};
    raw.ortho = {{"0", "1"}};
    for (int i = 0; i < atoms; ++i) {
        raw.elements.push_back(at(i));
        raw.elements.push_back(co(i));
        raw.ortho.emplace_back(at(i), co(i));
        raw.leq.emplace_back("0", at(i));
        raw.leq.emplace_back(co(i), "1");
    }
    for (const auto &b : bl)
        for (int x : b)
            for (int y : b)
                if (x != y) raw.leq.emplace_back(at(x), co(y));
    BlockTree tree{std::move(raw), {}};
    for (const auto &b : bl) tree.blocks.push_back({at(b[0]), at(b[1]), at(b[2])});
    return tree;
}

/// Number of ways to choose one atom per block so that every block holds
/// exactly one chosen atom.
inline long exact_hitting_sets(const std::vector<std::vector<std::string>> &blocks) {
    std::vector<std::string> atoms;
    for (const auto &b : blocks) atoms.insert(atoms.end(), b.begin(), b.end());
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    std::map<std::string, int> value;  // -1 unset, 0, 1
    for (const auto &a : atoms) value[a] = -1;
    std::function<long(std::size_t)> rec = [&](std::size_t i) -> long {
        if (i == atoms.size()) return 1;
        long total = 0;
        for (int v : {0, 1}) {
            value[atoms[i]] = v;
            bool fine = true;
            for (const auto &b : blocks) {
                int ones = 0, unset = 0;
                for (const auto &a : b) {
                    ones += value[a] == 1;
                    unset += value[a] == -1;
                }
                if (ones > 1 || (unset == 0 && ones != 1)) {
                    fine = false;
                    break;
                }
            }
            if (fine) total += rec(i + 1);
        }
        value[atoms[i]] = -1;
        return total;
    };
    return rec(0);
}

inline std::vector<std::vector<Elem>> maps_of(const std::vector<AlgebraMorphism> &ms) {
    std::vector<std::vector<Elem>> out;
    for (const auto &m : ms) out.push_back(m.map);
    return out;
}

}  // namespace qtest

namespace qtest {

/// Subsets containing 0 and 1, closed under ortho and existing orthogonal
/// joins, whose induced structure validates. Scans every subset.
inline std::vector<std::vector<Elem>> closed_subsets_by_scan(const EventAlgebra &L) {
    std::vector<Elem> middle;
    for (Elem e = 0; e < L.size(); ++e)
        if (e != L.zero() && e != L.one()) middle.push_back(e);
    std::vector<std::vector<Elem>> out;
    for (unsigned long mask = 0; mask < (1ul << middle.size()); ++mask) {
        std::vector<char> in(L.size(), 0);
        in[L.zero()] = in[L.one()] = 1;
        for (std::size_t i = 0; i < middle.size(); ++i)
            if (mask >> i & 1) in[middle[i]] = 1;
        bool closed = true;
        for (Elem a = 0; a < L.size() && closed; ++a) {
            if (!in[a]) continue;
            closed = in[L.ortho(a)];
            for (Elem b = 0; b < L.size() && closed; ++b)
                if (in[b] && L.orthogonal(a, b))
                    if (auto j = L.join(a, b)) closed = in[*j];
        }
        if (!closed) continue;
        std::vector<Elem> s;
        for (Elem e = 0; e < L.size(); ++e)
            if (in[e]) s.push_back(e);
        try {
            restrict_to(L, s, "scan");
            out.push_back(s);
        } catch (const ViolationError &) {
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qtest
