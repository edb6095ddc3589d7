#include "qlogic/localization.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace qlogic {

bool PrelocalizationSystem::contains(int object, int section) const {
    return std::binary_search(selected[object].begin(), selected[object].end(), section);
}

std::size_t PrelocalizationSystem::size() const {
    std::size_t n = 0;
    for (const auto &s : selected) n += s.size();
    return n;
}

PrelocalizationSystem generate_system(const HomPresheaf &R,
                                      const std::vector<std::pair<int, std::vector<Elem>>> &generators) {
    const BooleanSite &S = *R.presheaf.site;
    std::vector<std::set<int>> chosen(S.object_count());
    std::deque<std::pair<int, int>> todo;
    for (const auto &[object, map] : generators) {
        if (object < 0 || object >= S.object_count()) throw ObjectNotInSite(std::to_string(object));
        int idx = R.find(object, map);
        if (idx < 0) {
            std::string shown;
            for (Elem e : map) shown += std::to_string(e) + " ";
            throw SectionNotInHomPresheaf("over " + S.object(object).name + ": " + shown);
        }
        if (chosen[object].insert(idx).second) todo.emplace_back(object, idx);
    }
    while (!todo.empty()) {
        auto [o, p] = todo.front();
        todo.pop_front();
        for (int a : S.arrows_into(o)) {
            int C = S.arrow(a).source;
            int q = R.presheaf.restrict(a, p);
            if (chosen[C].insert(q).second) todo.emplace_back(C, q);
        }
    }
    PrelocalizationSystem sys{R, {}};
    for (const auto &c : chosen) sys.selected.emplace_back(c.begin(), c.end());
    return sys;
}

PrelocalizationSystem full_system(const HomPresheaf &R) {
    PrelocalizationSystem sys{R, {}};
    for (const auto &h : R.homs) {
        std::vector<int> all(h.size());
        std::iota(all.begin(), all.end(), 0);
        sys.selected.push_back(std::move(all));
    }
    return sys;
}

bool is_ideal(const PrelocalizationSystem &S) {
    const BooleanSite &site = *S.base.presheaf.site;
    for (int a = 0; a < site.arrow_count(); ++a)
        for (int p : S.selected[site.arrow(a).target])
            if (!S.contains(site.arrow(a).source, S.base.presheaf.restrict(a, p))) return false;
    return true;
}

namespace {

PrelocalizationSystem combine(const PrelocalizationSystem &a, const PrelocalizationSystem &b, bool unite) {
    PrelocalizationSystem out{a.base, {}};
    for (std::size_t o = 0; o < a.selected.size(); ++o) {
        std::vector<int> merged;
        if (unite)
            std::set_union(a.selected[o].begin(), a.selected[o].end(), b.selected[o].begin(), b.selected[o].end(),
                           std::back_inserter(merged));
        else
            std::set_intersection(a.selected[o].begin(), a.selected[o].end(), b.selected[o].begin(),
                                  b.selected[o].end(), std::back_inserter(merged));
        out.selected.push_back(std::move(merged));
    }
    return out;
}

}  // namespace

PrelocalizationSystem system_union(const PrelocalizationSystem &a, const PrelocalizationSystem &b) {
    return combine(a, b, true);
}

PrelocalizationSystem system_intersection(const PrelocalizationSystem &a, const PrelocalizationSystem &b) {
    return combine(a, b, false);
}

CoverPullback cover_pullback(const BooleanSite &site, int B, const AlgebraMorphism &psi, int B2,
                             const AlgebraMorphism &psi2) {
    const EventAlgebra &X = *psi.source;
    const EventAlgebra &Y = *psi2.source;
    CoverPullback out;
    auto pair_name = [&](Elem x, Elem y) { return X.id(x) + "|" + Y.id(y); };
    std::vector<std::pair<Elem, Elem>> carrier;
    for (Elem x = 0; x < X.size(); ++x)
        for (Elem y = 0; y < Y.size(); ++y)
            if (psi(x) == psi2(y)) carrier.emplace_back(x, y);
    std::set<std::pair<Elem, Elem>> members(carrier.begin(), carrier.end());
    for (auto [x, y] : carrier)
        if (!members.count({X.ortho(x), Y.ortho(y)})) {
            out.witness = "ortho of " + pair_name(x, y) + " leaves the carrier";
            return out;
        }
    if (!members.count({X.zero(), Y.zero()}) || !members.count({X.one(), Y.one()})) {
        out.witness = "bounds missing from the carrier";
        return out;
    }
    RawAlgebra raw;
    raw.name = psi.name + "x" + psi2.name;
    raw.zero = pair_name(X.zero(), Y.zero());
    raw.one = pair_name(X.one(), Y.one());
    for (auto [x, y] : carrier) {
        raw.elements.push_back(pair_name(x, y));
        raw.ortho.emplace_back(pair_name(x, y), pair_name(X.ortho(x), Y.ortho(y)));
        for (auto [x2, y2] : carrier)
            if ((x != x2 || y != y2) && X.leq(x, x2) && Y.leq(y, y2)) raw.leq.emplace_back(pair_name(x, y), pair_name(x2, y2));
    }
    auto checked = check_event_algebra(raw);
    if (!ok(checked)) {
        out.witness = violation(checked).message();
        return out;
    }
    out.carrier = std::make_shared<const EventAlgebra>(std::get<EventAlgebra>(std::move(checked)));
    const EventAlgebra &P = *out.carrier;
    std::vector<Elem> lmap(P.size()), rmap(P.size());
    for (auto [x, y] : carrier) {
        Elem e = P.index(pair_name(x, y));
        lmap[e] = x;
        rmap[e] = y;
    }
    auto l = check_morphism(out.carrier, psi.source, lmap, MorphismKind::QuantumHom, "pi_left");
    auto r = check_morphism(out.carrier, psi2.source, rmap, MorphismKind::QuantumHom, "pi_right");
    if (!ok(l) || !ok(r)) {
        out.witness = "projection: " + (ok(l) ? violation(r) : violation(l)).message();
        return out;
    }
    out.left = std::get<AlgebraMorphism>(l);
    out.right = std::get<AlgebraMorphism>(r);
    out.compatible = true;

    // Competing cones (D, f: D -> B, g: D -> B2) with psi f = psi2 g.
    out.universal = true;
    for (int f : site.arrows_into(B)) {
        int D = site.arrow(f).source;
        const auto &fm = site.arrow(f).hom.map;
        for (int g : site.arrows_into(B2)) {
            if (site.arrow(g).source != D) continue;
            const auto &gm = site.arrow(g).hom.map;
            bool commutes = true;
            for (std::size_t d = 0; d < fm.size() && commutes; ++d) commutes = psi(fm[d]) == psi2(gm[d]);
            if (!commutes) continue;
            std::vector<Elem> u(fm.size());
            for (std::size_t d = 0; d < fm.size(); ++d) u[d] = P.index(pair_name(fm[d], gm[d]));
            if (!ok(check_morphism(site.object(D).algebra, out.carrier, u, MorphismKind::QuantumHom))) {
                out.universal = false;
                out.witness = "cone from " + site.object(D).name + " via " + site.arrow(f).name + ", " +
                              site.arrow(g).name + " does not factor";
                return out;
            }
        }
    }
    return out;
}

PastingMap pasting_map(const AlgebraMorphism &psi_B, int B, const AlgebraMorphism &psi_B2, int B2) {
    if (!psi_B.injective()) throw NotMonic(psi_B.name);
    if (!psi_B2.injective()) throw NotMonic(psi_B2.name);
    if (psi_B.target->names() != psi_B2.target->names()) throw std::invalid_argument("pasting_map: covers of different algebras");
    PastingMap m;
    m.to = B;
    m.from = B2;
    m.forward.assign(psi_B2.source->size(), -1);
    m.inverse.assign(psi_B.source->size(), -1);
    for (Elem y = 0; y < psi_B2.source->size(); ++y)
        for (Elem x = 0; x < psi_B.source->size(); ++x)
            if (psi_B(x) == psi_B2(y)) {
                m.forward[y] = x;
                m.inverse[x] = y;
            }
    return m;
}

CocycleReport check_cocycles(const std::vector<std::pair<int, AlgebraMorphism>> &covers) {
    CocycleReport rep;
    const std::size_t n = covers.size();
    std::vector<std::vector<PastingMap>> omega(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            omega[i].push_back(pasting_map(covers[i].second, covers[i].first, covers[j].second, covers[j].first));
    auto name = [&](std::size_t i) { return covers[i].second.name; };
    for (std::size_t i = 0; i < n; ++i) {
        const auto &id = omega[i][i];
        for (Elem x = 0; x < static_cast<Elem>(id.forward.size()); ++x)
            if (id.forward[x] != x) {
                rep.identity = false;
                rep.witness = "Omega(" + name(i) + "," + name(i) + ") moves an element";
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ++rep.overlaps;
            // Omega(i,j) and Omega(j,i) are mutually inverse on the overlap.
            if (omega[i][j].forward != omega[j][i].inverse || omega[i][j].inverse != omega[j][i].forward) {
                rep.inverse = false;
                rep.witness = "Omega(" + name(i) + "," + name(j) + ") is not inverse to Omega(" + name(j) + "," +
                              name(i) + ")";
            }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const auto &ij = omega[i][j];
                const auto &jk = omega[j][k];
                const auto &ik = omega[i][k];
                bool any = false;
                for (Elem z = 0; z < static_cast<Elem>(jk.forward.size()); ++z) {
                    Elem y = jk.forward[z];
                    if (y < 0 || ij.forward[y] < 0) continue;
                    any = true;
                    if (ik.forward[z] != ij.forward[y]) {
                        rep.triple = false;
                        rep.witness = "triple overlap " + name(i) + ", " + name(j) + ", " + name(k);
                    }
                }
                rep.triples += any;
            }
    return rep;
}

LocalizationReport is_localization_system(const PrelocalizationSystem &S) {
    LocalizationReport rep;
    const BooleanSite &site = *S.base.presheaf.site;
    rep.ideal = is_ideal(S);

    std::vector<std::pair<int, const AlgebraMorphism *>> covers;
    for (int o = 0; o < site.object_count(); ++o)
        for (int p : S.selected[o]) covers.emplace_back(o, &S.base.homs[o][p]);
    rep.pairwise_compatible = true;
    for (std::size_t i = 0; i < covers.size() && rep.pairwise_compatible; ++i)
        for (std::size_t j = i; j < covers.size(); ++j) {
            ++rep.pairs_checked;
            auto pb = cover_pullback(site, covers[i].first, *covers[i].second, covers[j].first, *covers[j].second);
            if (!pb.compatible || !pb.universal) {
                rep.pairwise_compatible = false;
                rep.witness = covers[i].second->name + " / " + covers[j].second->name + ": " + pb.witness;
                break;
            }
        }

    std::vector<std::pair<int, AlgebraMorphism>> monic;
    for (const auto &[o, h] : covers)
        if (h->injective()) monic.emplace_back(o, *h);
    rep.monic_covers = monic.size();
    auto cocycles = check_cocycles(monic);
    rep.cocycles = cocycles.ok();
    if (!rep.cocycles && rep.witness.empty()) rep.witness = cocycles.witness;

    if (S.size() > 0) {
        try {
            rep.counit = counit_of(S.as_presheaf()).verdict;
            rep.counit_built = true;
        } catch (const StructureFailure &e) {
            if (rep.witness.empty()) rep.witness = e.what();
        }
    }
    return rep;
}

}  // namespace qlogic
