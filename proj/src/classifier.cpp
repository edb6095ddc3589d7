#include "qlogic/classifier.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace qlogic {

std::string Subobject::label() const {
    std::string out = "{";
    for (std::size_t i = 0; i < image.size(); ++i) out += (i ? "," : "") + of->id(image[i]);
    return out + "}";
}

namespace {

std::vector<Elem> close_subset(const EventAlgebra &A, const std::vector<Elem> &seed) {
    std::vector<char> in(A.size(), 0);
    std::vector<Elem> members;
    auto add = [&](Elem e) {
        if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
        }
    };
    add(A.zero());
    add(A.one());
    for (Elem e : seed) add(e);
    for (std::size_t i = 0; i < members.size(); ++i) {
        Elem a = members[i];
        add(A.ortho(a));
        for (std::size_t k = 0; k <= i; ++k) {
            Elem b = members[k];
            if (A.orthogonal(a, b))
                if (auto j = A.join(a, b)) add(*j);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::optional<Subobject> try_subobject(const AlgebraRef &A, const std::vector<Elem> &image, std::string &why) {
    try {
        auto sub = std::make_shared<const EventAlgebra>(restrict_to(*A, image, "sub(" + A->name() + ")"));
        std::vector<Elem> map;
        for (Elem e = 0; e < sub->size(); ++e) map.push_back(A->index(sub->id(e)));
        auto inc = check_morphism(sub, A, map, MorphismKind::Monic, "incl");
        if (!ok(inc)) {
            why = violation(inc).message();
            return std::nullopt;
        }
        return Subobject{A, image, std::get<AlgebraMorphism>(std::move(inc))};
    } catch (const ViolationError &e) {
        why = e.what();
        return std::nullopt;
    }
}

}  // namespace

Subobject make_subobject(const AlgebraRef &A, const std::vector<Elem> &seed) {
    std::string why;
    auto s = try_subobject(A, close_subset(*A, seed), why);
    if (!s) throw NotSubobject(why);
    return *s;
}

Subobject subobject_with_image(const AlgebraRef &A, std::vector<Elem> image) {
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    for (Elem e : image)
        if (e < 0 || e >= A->size()) throw NotSubobject("element index out of range");
    if (close_subset(*A, image) != image) throw NotSubobject("subset is not closed under ortho and orthogonal joins");
    std::string why;
    auto s = try_subobject(A, image, why);
    if (!s) throw NotSubobject(why);
    return *s;
}

std::vector<Subobject> subobjects(const AlgebraRef &A) {
    std::set<std::vector<Elem>> seen;
    std::deque<std::vector<Elem>> todo;
    auto start = close_subset(*A, {});
    seen.insert(start);
    todo.push_back(start);
    while (!todo.empty()) {
        auto cur = std::move(todo.front());
        todo.pop_front();
        for (Elem e = 0; e < A->size(); ++e) {
            if (std::binary_search(cur.begin(), cur.end(), e)) continue;
            auto seed = cur;
            seed.push_back(e);
            auto next = close_subset(*A, seed);
            if (seen.insert(next).second) todo.push_back(std::move(next));
        }
    }
    std::vector<std::vector<Elem>> images(seen.begin(), seen.end());
    std::stable_sort(images.begin(), images.end(), [](const auto &a, const auto &b) { return a.size() < b.size(); });
    std::vector<Subobject> out;
    std::string why;
    for (const auto &img : images)
        if (auto s = try_subobject(A, img, why)) out.push_back(std::move(*s));
    return out;
}

bool subobject_leq(const Subobject &a, const Subobject &b) {
    return std::includes(b.image.begin(), b.image.end(), a.image.begin(), a.image.end());
}

Subobject pullback_subobject(const Subobject &l, const AlgebraMorphism &e) {
    if (e.target->names() != l.of->names()) throw std::invalid_argument("pullback_subobject: codomains differ");
    std::vector<Elem> image;
    for (Elem x = 0; x < e.source->size(); ++x)
        if (l.contains(e(x))) image.push_back(x);
    try {
        return subobject_with_image(e.source, image);
    } catch (const NotSubobject &err) {
        throw PullbackNotAlgebra(err.what());
    }
}

int SubobjectPresheaf::find(int object, const std::vector<Elem> &image) const {
    const auto &s = subs.at(object);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].image == image) return static_cast<int>(i);
    return -1;
}

int SubobjectPresheaf::whole(int object) const { return static_cast<int>(subs.at(object).size()) - 1; }

SubobjectPresheaf subobject_presheaf(const SiteRef &site) {
    SubobjectPresheaf T;
    T.presheaf.site = site;
    for (const auto &o : site->objects()) {
        auto subs = subobjects(o.algebra);
        std::vector<std::string> names;
        for (const auto &s : subs) names.push_back(s.label());
        T.presheaf.sections.push_back(std::move(names));
        T.subs.push_back(std::move(subs));
    }
    for (const auto &a : site->arrows()) {
        std::vector<int> r;
        for (const auto &phi : T.subs[a.target]) {
            auto pb = pullback_subobject(phi, a.hom);
            r.push_back(T.find(a.source, pb.image));
        }
        T.presheaf.restriction.push_back(std::move(r));
    }
    return T;
}

Elem OmegaAlgebra::top() const {
    int B = 0;
    return tensor(B, theta.whole(B), site->object(B).algebra->one());
}

std::vector<Elem> OmegaAlgebra::true_classes() const {
    std::vector<Elem> out;
    for (Elem w = 0; w < static_cast<Elem>(truth.size()); ++w)
        if (truth[w]) out.push_back(w);
    return out;
}

OmegaAlgebra omega_over(const SiteRef &site) {
    OmegaAlgebra O;
    O.base = site;
    O.site = site;
    O.theta = subobject_presheaf(site);
    O.colimit = build_colimit(O.theta.presheaf, [](const std::string &phi, const std::string &q) {
        return phi + "⊗" + q;
    });
    O.colimit.algebra = std::make_shared<const EventAlgebra>(O.colimit.algebra->renamed("Omega"));
    O.truth.assign(O.colimit.algebra->size(), 0);
    for (int B = 0; B < site->object_count(); ++B) {
        int id = O.theta.whole(B);
        for (Elem q = 0; q < site->object(B).algebra->size(); ++q) O.truth[O.tensor(B, id, q)] = 1;
    }
    return O;
}

OmegaAlgebra build_omega(const SiteRef &site) {
    auto O = omega_over(subalgebra_site(*site));
    O.base = site;
    return O;
}

TruthValue truth_value(const OmegaAlgebra &omega, int object, const Subobject &phi, Elem b) {
    if (object < 0 || object >= omega.site->object_count()) throw ObjectNotInSite(std::to_string(object));
    const auto &A = omega.site->object(object).algebra;
    if (phi.of->names() != A->names()) throw NotSubobject(phi.label() + " is not over " + omega.site->object(object).name);
    int idx = omega.theta.find(object, phi.image);
    if (idx < 0) throw NotSubobject(phi.label());
    if (b < 0 || b >= A->size()) throw ElementNotFound(std::to_string(b));
    TruthValue t;
    t.cls = omega.tensor(object, idx, b);
    t.is_true = omega.is_true(t.cls);
    t.label = t.is_true ? "true" : omega.algebra()->id(t.cls);
    return t;
}

TruthValue truth_value(const OmegaAlgebra &omega, int object, const Subobject &phi, const std::string &b) {
    return truth_value(omega, object, phi, omega.site->object(object).algebra->index(b));
}

bool truth_via_pasting(const Subobject &phi, const AlgebraMorphism &psi_B, Elem c, const AlgebraMorphism &psi_C) {
    try {
        auto dom = compose(psi_B, phi.inclusion);
        auto omega = pasting_map(dom, 0, psi_C, 1);
        return omega.defined_at(c);
    } catch (const NotMonic &e) {
        throw NotApplicable(e.what());
    }
}

Checked<AlgebraMorphism> characteristic_arrow(const OmegaAlgebra &omega, const Subobject &l) {
    const AlgebraRef &L = l.of;
    const AlgebraRef &ambient = omega.base->ambient();
    if (!ambient || ambient->names() != L->names())
        throw std::invalid_argument("characteristic_arrow: subobject is not over the site's algebra");
    if (!counit(L, omega.base).verdict.iso()) throw CounitNotIso(omega.base->name());

    const BooleanSite &S = *omega.site;
    std::vector<Elem> map(L->size(), -1);
    std::vector<std::string> source(L->size());
    for (int B = 0; B < S.object_count(); ++B) {
        const auto &emb = *S.object(B).embedding;
        int phi = omega.theta.find(B, pullback_subobject(l, emb).image);
        for (Elem b = 0; b < emb.source->size(); ++b) {
            Elem y = emb(b);
            Elem w = omega.tensor(B, phi, b);
            std::string here = S.object(B).name + ":" + emb.source->id(b);
            if (map[y] < 0) {
                map[y] = w;
                source[y] = here;
            } else if (map[y] != w) {
                throw IllDefined(L->id(y) + " via " + source[y] + " and " + here);
            }
        }
    }
    for (Elem y = 0; y < L->size(); ++y)
        if (map[y] < 0) throw CounitNotIso(L->id(y) + " lies in no site object");
    return check_morphism(L, omega.algebra(), std::move(map), MorphismKind::QuantumHom, "chi" + l.label());
}

std::vector<Elem> true_preimage(const OmegaAlgebra &omega, const AlgebraMorphism &chi) {
    std::vector<Elem> out;
    for (Elem y = 0; y < chi.source->size(); ++y)
        if (omega.is_true(chi(y))) out.push_back(y);
    return out;
}

bool ClassifierReport::squares_ok() const {
    return std::all_of(squares.begin(), squares.end(), [](const SquareReport &s) { return s.ok(); });
}

ClassifierReport classifier_check(const AlgebraRef &L, const SiteRef &site, const std::optional<OmegaAlgebra> &omega_in,
                                  bool count_all_homs) {
    ClassifierReport rep;
    OmegaAlgebra omega = omega_in ? *omega_in : build_omega(site);
    rep.counit_iso = counit(L, site).verdict.iso();
    auto subs = subobjects(L);
    rep.subobject_count = subs.size();
    if (!rep.counit_iso) {
        rep.witness = "counit is not an isomorphism";
        return rep;
    }

    // Cones from site objects: every homomorphism A(D) -> L.
    std::vector<AlgebraMorphism> cones;
    for (const auto &o : site->objects())
        for (auto &h : enumerate_homomorphisms(o.algebra, L, MorphismKind::QuantumHom)) cones.push_back(std::move(h));

    std::set<std::vector<Elem>> arrows;
    std::vector<std::optional<AlgebraMorphism>> chis;
    for (const auto &l : subs) {
        SquareReport sq;
        sq.subobject = l.label();
        std::optional<AlgebraMorphism> chi;
        try {
            auto c = characteristic_arrow(omega, l);
            if (ok(c))
                chi = std::get<AlgebraMorphism>(std::move(c));
            else
                sq.witness = violation(c).message();
        } catch (const std::exception &e) {
            sq.witness = e.what();
        }
        if (chi) {
            sq.arrow_valid = true;
            arrows.insert(chi->map);
            sq.commutes = std::all_of(l.image.begin(), l.image.end(), [&](Elem y) { return omega.is_true((*chi)(y)); });
            bool preimage_is_l = true_preimage(omega, *chi) == l.image;
            bool cones_factor = true;
            for (const auto &f : cones) {
                bool lands_true = true, inside = true;
                for (Elem d = 0; d < f.source->size(); ++d) {
                    lands_true = lands_true && omega.is_true((*chi)(f(d)));
                    inside = inside && l.contains(f(d));
                }
                if (lands_true && !inside) {
                    cones_factor = false;
                    sq.witness = "cone " + f.graph_string() + " does not factor through " + l.label();
                    break;
                }
            }
            sq.pullback = preimage_is_l && cones_factor;
            if (!preimage_is_l && sq.witness.empty()) sq.witness = "preimage of True differs from " + l.label();
            try {
                auto back = subobject_with_image(L, true_preimage(omega, *chi));
                auto again = characteristic_arrow(omega, back);
                sq.roundtrip = back.image == l.image && ok(again) && std::get<AlgebraMorphism>(again).map == chi->map;
            } catch (const std::exception &e) {
                if (sq.witness.empty()) sq.witness = e.what();
            }
        }
        if (!sq.ok() && rep.witness.empty()) rep.witness = sq.subobject + ": " + sq.witness;
        chis.push_back(std::move(chi));
        rep.squares.push_back(std::move(sq));
    }
    rep.classifying_count = arrows.size();
    rep.injective = arrows.size() == subs.size() &&
                    std::all_of(chis.begin(), chis.end(), [](const auto &c) { return c.has_value(); });
    if (!rep.injective && rep.witness.empty()) rep.witness = "two subobjects share a characteristic arrow";

    if (count_all_homs) {
        auto homs = enumerate_homomorphisms(L, omega.algebra(), MorphismKind::QuantumHom);
        rep.hom_count = homs.size();
        rep.unique = std::all_of(homs.begin(), homs.end(), [&](const AlgebraMorphism &h) { return arrows.count(h.map) > 0; });
    }
    return rep;
}

ScenarioReport valuate_scenario(const AlgebraRef &context, const std::vector<Elem> &apparatus, Elem p,
                                std::optional<Elem> q) {
    if (!context->is_boolean()) throw NotBoolean(context->name());
    auto app = subobject_with_image(context, apparatus);
    if (p < 0 || p >= context->size()) throw ElementNotFound(std::to_string(p));
    if (q && (*q < 0 || *q >= context->size())) throw ElementNotFound(std::to_string(*q));

    ScenarioReport rep;
    rep.proposition = p;
    rep.consequent = q;
    if (q) {
        rep.implication = *context->join(context->ortho(p), *q);
        rep.implication_top = *rep.implication == context->one();
    }

    auto omega = build_omega(single_object_site(context));
    int whole = -1;
    for (int B = 0; B < omega.site->object_count(); ++B)
        if (omega.site->object(B).algebra->size() == context->size()) whole = B;
    // Objects of the subalgebra site carry the context's ids.
    const auto &W = omega.site->object(whole).algebra;
    std::vector<Elem> local;
    for (Elem e : app.image) local.push_back(W->index(context->id(e)));
    auto phi = subobject_with_image(W, local);
    rep.truth = truth_value(omega, whole, phi, context->id(p));
    if (q) rep.consequent_truth = truth_value(omega, whole, phi, context->id(*q));

    std::vector<Elem> generating;
    if (app.image.size() == 4)
        for (Elem a : context->atoms())
            if (app.contains(a)) generating.push_back(a);
    if (generating.empty()) {
        rep.reduction_note = "NotApplicable: apparatus is not generated by a single atom";
        return rep;
    }
    Elem atom = std::find(generating.begin(), generating.end(), p) != generating.end() ? p : generating.front();
    rep.ultrafilter_atom = atom;
    auto two_alg = two();
    std::vector<Elem> val(context->size());
    for (Elem x = 0; x < context->size(); ++x) val[x] = context->leq(atom, x) ? two_alg->one() : two_alg->zero();
    rep.reduction = validate_morphism(context, two_alg, std::move(val), MorphismKind::BooleanHom,
                                      "ultrafilter@" + context->id(atom));
    rep.reduction_note = "ultrafilter at " + context->id(atom);
    return rep;
}

}  // namespace qlogic
