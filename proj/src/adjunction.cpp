#include "qlogic/adjunction.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qlogic {

namespace {

std::string join_witnesses(const std::string &axiom, const std::vector<std::string> &w) {
    std::string out = "StructureFailure: " + axiom;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? ", " : " (") + w[i];
    return w.empty() ? out : out + ")";
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<Elem> compose_maps(const std::vector<Elem> &g, const std::vector<Elem> &f) {
    std::vector<Elem> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
    return out;
}

}  // namespace

StructureFailure::StructureFailure(std::string axiom, std::vector<std::string> witnesses)
    : std::runtime_error(join_witnesses(axiom, witnesses)), axiom_(std::move(axiom)), witnesses_(std::move(witnesses)) {}

int HomPresheaf::find(int object, const std::vector<Elem> &map) const {
    const auto &hs = homs[object];
    for (int i = 0; i < static_cast<int>(hs.size()); ++i)
        if (hs[i].map == map) return i;
    return -1;
}

namespace {

void fill_restrictions(HomPresheaf &R) {
    const BooleanSite &S = *R.presheaf.site;
    std::vector<std::map<std::vector<Elem>, int>> index(S.object_count());
    for (int o = 0; o < S.object_count(); ++o)
        for (int i = 0; i < static_cast<int>(R.homs[o].size()); ++i) index[o][R.homs[o][i].map] = i;
    R.presheaf.restriction.assign(S.arrow_count(), {});
    for (int a = 0; a < S.arrow_count(); ++a) {
        const SiteArrow &v = S.arrow(a);
        auto &row = R.presheaf.restriction[a];
        row.reserve(R.homs[v.target].size());
        for (const auto &h : R.homs[v.target]) {
            auto it = index[v.source].find(compose_maps(h.map, v.hom.map));
            if (it == index[v.source].end())
                throw std::invalid_argument("hom presheaf not closed under restriction along " + v.name);
            row.push_back(it->second);
        }
    }
}

}  // namespace

HomPresheaf hom_presheaf(const SiteRef &site, const AlgebraRef &L) {
    HomPresheaf R;
    R.codomain = L;
    R.presheaf.site = site;
    for (const auto &o : site->objects()) {
        auto homs = enumerate_homomorphisms(o.algebra, L, MorphismKind::QuantumHom);
        std::vector<std::string> names;
        for (const auto &h : homs) names.push_back(h.graph_string());
        R.presheaf.sections.push_back(std::move(names));
        R.homs.push_back(std::move(homs));
    }
    fill_restrictions(R);
    return R;
}

HomPresheaf sub_hom_presheaf(const HomPresheaf &R, const std::vector<std::vector<int>> &selected) {
    HomPresheaf S;
    S.codomain = R.codomain;
    S.presheaf.site = R.presheaf.site;
    for (int o = 0; o < static_cast<int>(selected.size()); ++o) {
        std::vector<int> keep = selected[o];
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
        std::vector<std::string> names;
        std::vector<AlgebraMorphism> homs;
        for (int i : keep) {
            names.push_back(R.presheaf.sections[o].at(i));
            homs.push_back(R.homs[o].at(i));
        }
        S.presheaf.sections.push_back(std::move(names));
        S.homs.push_back(std::move(homs));
    }
    fill_restrictions(S);
    return S;
}

ColimitAlgebra build_colimit(const Presheaf &P, const PairNamer &namer) {
    const BooleanSite &S = *P.site;
    const int n = S.object_count();
    std::vector<int> offset(n + 1, 0);
    for (int o = 0; o < n; ++o)
        offset[o + 1] = offset[o] + static_cast<int>(P.sections[o].size()) * S.object(o).algebra->size();
    const int pairs = offset[n];
    if (pairs == 0) throw StructureFailure("empty carrier", {});
    auto pid = [&](int o, int p, Elem q) { return offset[o] + p * S.object(o).algebra->size() + q; };

    DisjointSet ds(pairs);
    for (int a = 0; a < S.arrow_count(); ++a) {
        const SiteArrow &v = S.arrow(a);
        const int m = S.object(v.source).algebra->size();
        for (int p = 0; p < static_cast<int>(P.sections[v.target].size()); ++p) {
            int pv = P.restrict(a, p);
            for (Elem q = 0; q < m; ++q) ds.unite(pid(v.source, pv, q), pid(v.target, p, v.hom.map[q]));
        }
    }

    // Canonical representative: least (section name, element id, object).
    std::vector<int> root_class(pairs, -1);
    std::vector<std::tuple<int, int, Elem>> rep;
    auto key = [&](const std::tuple<int, int, Elem> &t) {
        auto [o, p, q] = t;
        return std::tie(P.sections[o][p], S.object(o).algebra->id(q), std::get<0>(t));
    };
    for (int o = 0; o < n; ++o)
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p)
            for (Elem q = 0; q < S.object(o).algebra->size(); ++q) {
                int r = ds.find(pid(o, p, q));
                if (root_class[r] < 0) {
                    root_class[r] = static_cast<int>(rep.size());
                    rep.emplace_back(o, p, q);
                } else if (key({o, p, q}) < key(rep[root_class[r]])) {
                    rep[root_class[r]] = {o, p, q};
                }
            }
    const int nc = static_cast<int>(rep.size());
    auto cls = [&](int o, int p, Elem q) { return root_class[ds.find(pid(o, p, q))]; };
    auto name_of = [&](int c) {
        auto [o, p, q] = rep[c];
        const std::string &sec = P.sections[o][p];
        const std::string &el = S.object(o).algebra->id(q);
        return namer ? namer(sec, el) : "(" + sec + "," + el + ")";
    };

    std::vector<int> ortho(nc, -1);
    int one = -1;
    std::vector<char> rel(static_cast<std::size_t>(nc) * nc, 0);
    for (int o = 0; o < n; ++o) {
        const EventAlgebra &A = *S.object(o).algebra;
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p) {
            for (Elem q = 0; q < A.size(); ++q) {
                int c = cls(o, p, q), co = cls(o, p, A.ortho(q));
                if (ortho[c] >= 0 && ortho[c] != co)
                    throw StructureFailure("ortho not well defined", {name_of(c), name_of(ortho[c]), name_of(co)});
                ortho[c] = co;
                for (Elem r = 0; r < A.size(); ++r)
                    if (A.leq(q, r)) rel[static_cast<std::size_t>(c) * nc + cls(o, p, r)] = 1;
            }
            int u = cls(o, p, A.one());
            if (one >= 0 && one != u) throw StructureFailure("unit not unique", {name_of(one), name_of(u)});
            one = u;
        }
    }
    auto R = [&](int x, int y) { return rel[static_cast<std::size_t>(x) * nc + y] != 0; };
    for (int x = 0; x < nc; ++x)
        for (int y = x + 1; y < nc; ++y)
            if (R(x, y) && R(y, x)) throw StructureFailure("order not antisymmetric", {name_of(x), name_of(y)});
    for (int x = 0; x < nc; ++x)
        for (int y = 0; y < nc; ++y)
            if (R(x, y))
                for (int z = 0; z < nc; ++z)
                    if (R(y, z) && !R(x, z))
                        throw StructureFailure("order not transitive", {name_of(x), name_of(y), name_of(z)});

    RawAlgebra raw;
    raw.name = "colim";
    for (int c = 0; c < nc; ++c) raw.elements.push_back(name_of(c));
    raw.one = name_of(one);
    raw.zero = name_of(ortho[one]);
    for (int x = 0; x < nc; ++x) {
        if (x <= ortho[x]) raw.ortho.emplace_back(raw.elements[x], raw.elements[ortho[x]]);
        for (int y = 0; y < nc; ++y)
            if (x != y && R(x, y)) raw.leq.emplace_back(raw.elements[x], raw.elements[y]);
    }
    auto checked = check_event_algebra(raw);
    if (!ok(checked)) {
        const Violation &v = violation(checked);
        throw StructureFailure(std::string(to_string(v.kind)) + " " + v.condition, v.witnesses);
    }

    ColimitAlgebra C;
    C.site = P.site;
    C.algebra = std::make_shared<const EventAlgebra>(std::get<EventAlgebra>(std::move(checked)));
    std::vector<Elem> elem_of_class(nc);
    for (int c = 0; c < nc; ++c) elem_of_class[c] = C.algebra->index(raw.elements[c]);
    C.representative.assign(nc, {});
    for (int c = 0; c < nc; ++c) C.representative[elem_of_class[c]] = rep[c];
    C.classes.assign(n, {});
    for (int o = 0; o < n; ++o) {
        C.classes[o].assign(P.sections[o].size(), {});
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p)
            for (Elem q = 0; q < S.object(o).algebra->size(); ++q)
                C.classes[o][p].push_back(elem_of_class[cls(o, p, q)]);
    }
    return C;
}

std::set<std::pair<Elem, Elem>> cone_order(const Presheaf &P, const ColimitAlgebra &C) {
    const BooleanSite &S = *P.site;
    std::set<std::pair<Elem, Elem>> out;
    // All (object, section, element) triples, i.e. all representatives.
    std::vector<std::tuple<int, int, Elem>> reps;
    for (int o = 0; o < S.object_count(); ++o)
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p)
            for (Elem q = 0; q < S.object(o).algebra->size(); ++q) reps.emplace_back(o, p, q);
    for (const auto &[B, p, q] : reps)
        for (const auto &[Cc, pp, r] : reps) {
            Elem X = C.class_of(B, p, q), Y = C.class_of(Cc, pp, r);
            if (out.count({X, Y})) continue;
            bool found = false;
            for (int beta : S.arrows_into(B)) {
                if (found) break;
                int D = S.arrow(beta).source;
                const EventAlgebra &AD = *S.object(D).algebra;
                for (int gamma : S.arrows_into(Cc)) {
                    if (S.arrow(gamma).source != D) continue;
                    if (P.restrict(beta, p) != P.restrict(gamma, pp)) continue;
                    for (Elem d1 = 0; d1 < AD.size() && !found; ++d1) {
                        if (S.arrow(beta).hom.map[d1] != q) continue;
                        for (Elem d2 = 0; d2 < AD.size() && !found; ++d2)
                            found = AD.leq(d1, d2) && S.arrow(gamma).hom.map[d2] == r;
                    }
                    if (found) break;
                }
            }
            if (found) out.insert({X, Y});
        }
    return out;
}

namespace {

IsoVerdict verdict_of(const AlgebraMorphism &f) {
    const EventAlgebra &K = *f.source;
    const EventAlgebra &L = *f.target;
    IsoVerdict v;
    v.injective = f.injective();
    v.surjective = static_cast<int>(f.image().size()) == L.size();
    bool reflects = true;
    for (Elem a = 0; a < K.size() && reflects; ++a)
        for (Elem b = 0; b < K.size() && reflects; ++b) reflects = K.leq(a, b) == L.leq(f(a), f(b));
    v.structure_preserving = reflects && ok(check_morphism(f.source, f.target, f.map, MorphismKind::QuantumHom));
    return v;
}

}  // namespace

CounitResult counit_of(const HomPresheaf &system) {
    const BooleanSite &S = *system.presheaf.site;
    ColimitAlgebra C = build_colimit(system.presheaf);
    std::vector<Elem> map(C.algebra->size(), -1);
    for (int o = 0; o < S.object_count(); ++o)
        for (int p = 0; p < static_cast<int>(system.homs[o].size()); ++p)
            for (Elem q = 0; q < S.object(o).algebra->size(); ++q) {
                Elem c = C.class_of(o, p, q);
                Elem img = system.homs[o][p](q);
                if (map[c] >= 0 && map[c] != img)
                    throw IllDefined(C.algebra->id(c) + " -> " + system.codomain->id(map[c]) + " and " +
                                     system.codomain->id(img));
                map[c] = img;
            }
    AlgebraMorphism eps{"counit", C.algebra, system.codomain, std::move(map), MorphismKind::QuantumHom};
    IsoVerdict v = verdict_of(eps);
    return {system, std::move(C), std::move(eps), v};
}

std::vector<std::vector<int>> embedding_generated(const HomPresheaf &R) {
    const BooleanSite &S = *R.presheaf.site;
    const EventAlgebra &L = *R.codomain;
    std::vector<std::set<int>> chosen(S.object_count());
    bool any = false;
    for (int B = 0; B < S.object_count(); ++B) {
        const auto &emb = S.object(B).embedding;
        if (!emb || emb->target->names() != L.names()) continue;
        any = true;
        std::vector<Elem> e(emb->map.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = L.index(emb->target->id(emb->map[i]));
        for (int v : S.arrows_into(B)) {
            int C = S.arrow(v).source;
            int idx = R.find(C, compose_maps(e, S.arrow(v).hom.map));
            if (idx < 0) throw std::logic_error("embedding composite missing from R(L)");
            chosen[C].insert(idx);
        }
    }
    std::vector<std::vector<int>> out(S.object_count());
    for (int o = 0; o < S.object_count(); ++o) {
        if (any) {
            out[o].assign(chosen[o].begin(), chosen[o].end());
        } else {
            out[o].resize(R.homs[o].size());
            std::iota(out[o].begin(), out[o].end(), 0);
        }
    }
    return out;
}

CounitResult counit(const AlgebraRef &L, const SiteRef &site) {
    HomPresheaf R = hom_presheaf(site, L);
    return counit_of(sub_hom_presheaf(R, embedding_generated(R)));
}

bool UnitResult::iso() const {
    return natural && std::all_of(components.begin(), components.end(), [](const IsoVerdict &v) { return v.iso(); });
}

UnitResult unit(const Presheaf &P, const PairNamer &namer) {
    const BooleanSite &S = *P.site;
    UnitResult U{build_colimit(P, namer), {}, {}, false, {}};
    U.hom_of_colimit = hom_presheaf(P.site, U.colimit.algebra);
    U.delta.components.assign(S.object_count(), {});
    for (int o = 0; o < S.object_count(); ++o) {
        IsoVerdict v;
        v.structure_preserving = true;
        std::set<int> hit;
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p) {
            const auto &map = U.colimit.classes[o][p];
            int idx = U.hom_of_colimit.find(o, map);
            if (idx < 0) v.structure_preserving = false;
            U.delta.components[o].push_back(idx);
            if (idx >= 0) hit.insert(idx);
        }
        v.injective = hit.size() == P.sections[o].size();
        v.surjective = hit.size() == U.hom_of_colimit.homs[o].size();
        U.components.push_back(v);
    }
    bool total = std::all_of(U.components.begin(), U.components.end(),
                             [](const IsoVerdict &v) { return v.structure_preserving; });
    U.natural = total && is_natural(P, U.hom_of_colimit.presheaf, U.delta);
    return U;
}

bool AdjunctionReport::bijection() const {
    return forward_well_defined && backward_natural && mutually_inverse && nat_count == hom_count;
}

AdjunctionReport adjunction_bijection_check(const Presheaf &P, const AlgebraRef &L) {
    return adjunction_bijection_check(P, hom_presheaf(P.site, L));
}

AdjunctionReport adjunction_bijection_check(const Presheaf &P, const HomPresheaf &R) {
    if (P.site.get() != R.presheaf.site.get()) throw SiteMismatch();
    const AlgebraRef &L = R.codomain;
    AdjunctionReport rep;
    rep.nats = natural_transformations(P, R.presheaf);
    rep.nat_count = rep.nats.size();
    if (P.section_count() == 0) {
        // The colimit of the empty presheaf is initial: exactly one arrow out of it.
        rep.degenerate = true;
        rep.hom_count = 1;
        rep.forward = {0};
        rep.mutually_inverse = rep.nat_count == 1;
        return rep;
    }
    const BooleanSite &S = *P.site;
    ColimitAlgebra C = build_colimit(P);
    rep.homs = enumerate_homomorphisms(C.algebra, L, MorphismKind::QuantumHom);
    rep.hom_count = rep.homs.size();
    std::map<std::vector<Elem>, int> hom_index;
    for (int i = 0; i < static_cast<int>(rep.homs.size()); ++i) hom_index[rep.homs[i].map] = i;

    for (const auto &tau : rep.nats) {
        std::vector<Elem> map(C.algebra->size(), -1);
        bool fine = true;
        for (int o = 0; o < S.object_count() && fine; ++o)
            for (int p = 0; p < static_cast<int>(P.sections[o].size()) && fine; ++p)
                for (Elem q = 0; q < S.object(o).algebra->size(); ++q) {
                    Elem c = C.class_of(o, p, q);
                    Elem img = R.homs[o][tau.components[o][p]](q);
                    if (map[c] >= 0 && map[c] != img) fine = false;
                    map[c] = img;
                }
        auto it = fine ? hom_index.find(map) : hom_index.end();
        if (it == hom_index.end()) rep.forward_well_defined = false;
        rep.forward.push_back(it == hom_index.end() ? -1 : it->second);
    }

    std::vector<NaturalTransformation> backward;
    for (const auto &f : rep.homs) {
        NaturalTransformation tau;
        tau.components.assign(S.object_count(), {});
        for (int o = 0; o < S.object_count(); ++o)
            for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p)
                tau.components[o].push_back(R.find(o, compose_maps(f.map, C.classes[o][p])));
        bool total = std::all_of(tau.components.begin(), tau.components.end(), [](const std::vector<int> &c) {
            return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
        });
        if (!total || !is_natural(P, R.presheaf, tau)) rep.backward_natural = false;
        backward.push_back(std::move(tau));
    }

    bool inverse = rep.forward_well_defined && rep.backward_natural;
    for (std::size_t i = 0; i < rep.nats.size() && inverse; ++i)
        inverse = backward[rep.forward[i]].components == rep.nats[i].components;
    for (std::size_t j = 0; j < backward.size() && inverse; ++j) {
        auto it = std::find_if(rep.nats.begin(), rep.nats.end(),
                               [&](const NaturalTransformation &t) { return t.components == backward[j].components; });
        inverse = it != rep.nats.end() && rep.forward[it - rep.nats.begin()] == static_cast<int>(j);
    }
    rep.mutually_inverse = inverse;
    return rep;
}

bool triangle_left(const Presheaf &P) {
    const BooleanSite &S = *P.site;
    ColimitAlgebra C = build_colimit(P);
    HomPresheaf R = hom_presheaf(P.site, C.algebra);
    ColimitAlgebra C2 = build_colimit(R.presheaf);
    std::vector<Elem> lifted(C.algebra->size(), -1);  // L(delta): C -> C2
    for (int o = 0; o < S.object_count(); ++o)
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p) {
            int d = R.find(o, C.classes[o][p]);
            if (d < 0) return false;
            for (Elem q = 0; q < S.object(o).algebra->size(); ++q) {
                Elem x = C.class_of(o, p, q);
                Elem y = C2.class_of(o, d, q);
                if (lifted[x] >= 0 && lifted[x] != y) return false;
                lifted[x] = y;
            }
        }
    // eps on C2 evaluates the representing homomorphism.
    for (Elem x = 0; x < C.algebra->size(); ++x) {
        auto [o, d, q] = C2.representative[lifted[x]];
        if (R.homs[o][d](q) != x) return false;
    }
    return true;
}

bool triangle_right(const SiteRef &site, const AlgebraRef &L) {
    const BooleanSite &S = *site;
    HomPresheaf R = hom_presheaf(site, L);
    CounitResult eps = counit_of(R);
    HomPresheaf R2 = hom_presheaf(site, eps.colimit.algebra);
    for (int o = 0; o < S.object_count(); ++o)
        for (int p = 0; p < static_cast<int>(R.homs[o].size()); ++p) {
            const auto &delta = eps.colimit.classes[o][p];
            if (R2.find(o, delta) < 0) return false;
            if (compose_maps(eps.map.map, delta) != R.homs[o][p].map) return false;
        }
    return true;
}

}  // namespace qlogic
