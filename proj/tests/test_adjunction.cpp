#include "doctest.h"
#include "support.hpp"

#include "qlogic/adjunction.hpp"

using namespace qtest;

namespace {

bool isomorphic(const EventAlgebra &a, const EventAlgebra &b) { return find_isomorphism(a, b).has_value(); }

SiteRef identity_only_site(const AlgebraRef &B) {
    SiteObject o{B->name(), B, identity_morphism(B)};
    return std::make_shared<const BooleanSite>(BooleanSite::make("bare", {o}, {}, B));
}

}  // namespace

TEST_CASE("[adjunction] hom presheaf sections") {
    auto mo2 = corpus("mo2.qea");
    auto R = hom_presheaf(single_object_site(corpus("bool2.qea")), mo2);
    CHECK(R.presheaf.sections[0].size() == 6);
    CHECK(is_functorial(R.presheaf));

    auto D = default_site(mo2);
    auto R2 = hom_presheaf(D, two());
    CHECK(R2.presheaf.sections[D->object_index("[a|a']")].size() == 2);
    CHECK(R2.presheaf.sections[D->object_index("[b|b']")].size() == 2);
    CHECK(R2.presheaf.sections[D->object_index("[1]")].size() == 1);
    CHECK(is_functorial(R2.presheaf));

    // Element count of the category of elements equals the hom counts.
    auto R3 = hom_presheaf(D, mo2);
    std::size_t total = 0;
    for (const auto &o : D->objects()) total += enumerate_homomorphisms(o.algebra, mo2, MorphismKind::QuantumHom).size();
    CHECK(elements_category(R3.presheaf).objects.size() == total);
}

TEST_CASE("[adjunction] colimit of a representable is its object") {
    for (const std::string file : {"two.qea", "bool2.qea", "mo2.qea", "mo3.qea", "chain3.qea"}) {
        auto S = default_site(corpus(file));
        for (int B = 0; B < S->object_count(); ++B) {
            CAPTURE(file);
            CAPTURE(S->object(B).name);
            auto C = build_colimit(yoneda(S, B));
            CHECK(isomorphic(*C.algebra, *S->object(B).algebra));
        }
    }
}

TEST_CASE("[adjunction] single section over an identity-only object") {
    auto B = corpus("bool3.qea");
    auto S = identity_only_site(B);
    Presheaf P{S, {{"s"}}, {{0}}};
    REQUIRE(is_functorial(P));
    auto C = build_colimit(P);
    CHECK(isomorphic(*C.algebra, *B));
}

TEST_CASE("[adjunction] empty presheaf has no colimit carrier") {
    auto S = default_site(corpus("mo2.qea"));
    CHECK_THROWS_AS(build_colimit(empty_presheaf(S)), StructureFailure);
    CHECK_THROWS_AS(unit(empty_presheaf(S)), StructureFailure);
}

TEST_CASE("[adjunction] colimit of R(MO2) has six classes") {
    auto mo2 = corpus("mo2.qea");
    auto C = build_colimit(hom_presheaf(default_site(mo2), mo2).presheaf);
    CHECK(C.algebra->size() == 6);
    CHECK(isomorphic(*C.algebra, *mo2));
}

TEST_CASE("[adjunction] colimit order equals the fiber-product cone search") {
    auto mo2 = corpus("mo2.qea");
    auto D = default_site(mo2);
    std::vector<Presheaf> ps = {hom_presheaf(D, mo2).presheaf, yoneda(D, 0), yoneda(D, 2),
                                hom_presheaf(single_object_site(corpus("bool2.qea")), mo2).presheaf};
    for (const auto &P : ps) {
        auto C = build_colimit(P);
        auto cones = cone_order(P, C);
        std::set<std::pair<Elem, Elem>> leq;
        for (Elem x = 0; x < C.algebra->size(); ++x)
            for (Elem y = 0; y < C.algebra->size(); ++y)
                if (C.algebra->leq(x, y)) leq.insert({x, y});
        CHECK(cones == leq);
    }
}

TEST_CASE("[adjunction] generating relation is respected by class assignment") {
    auto mo2 = corpus("mo2.qea");
    auto D = default_site(mo2);
    auto R = hom_presheaf(D, mo2);
    auto C = build_colimit(R.presheaf);
    for (int a = 0; a < D->arrow_count(); ++a) {
        const auto &v = D->arrow(a);
        for (int p = 0; p < static_cast<int>(R.homs[v.target].size()); ++p)
            for (Elem q = 0; q < v.hom.source->size(); ++q) {
                CHECK(C.class_of(v.source, R.presheaf.restrict(a, p), q) == C.class_of(v.target, p, v.hom(q)));
                // Counit images agree on related pairs.
                CHECK(R.homs[v.target][p](v.hom(q)) == R.homs[v.source][R.presheaf.restrict(a, p)](q));
            }
    }
}

TEST_CASE("[adjunction] counit verdicts") {
    auto mo2 = corpus("mo2.qea");
    auto res = counit(mo2, default_site(mo2));
    CHECK(res.verdict.iso());
    auto b3 = corpus("bool3.qea");
    CHECK(counit(b3, single_object_site(b3)).verdict.iso());

    auto partial = std::make_shared<const BooleanSite>(default_site(mo2)->without_object("[b|b']"));
    auto cut = counit(mo2, partial);
    CHECK(cut.verdict.injective);
    CHECK_FALSE(cut.verdict.surjective);
    auto img = cut.map.image();
    CHECK_FALSE(std::binary_search(img.begin(), img.end(), mo2->index("b")));
}

TEST_CASE("[adjunction] counit over the inclusion site is not injective on the full hom presheaf") {
    // Without the non-inclusion arrows the constant covers never glue.
    auto mo2 = corpus("mo2.qea");
    auto res = counit_of(hom_presheaf(inclusion_site(mo2), mo2));
    CHECK_FALSE(res.verdict.injective);
}

TEST_CASE("[adjunction] unit of a representable") {
    auto D = default_site(corpus("chain3.qea"));
    for (int B = 0; B < D->object_count(); ++B) {
        auto y = yoneda(D, B);
        auto U = unit(y);
        CHECK(U.natural);
        for (const auto &v : U.components) {
            CHECK(v.injective);
            CHECK(v.structure_preserving);
        }
    }
}

TEST_CASE("[adjunction] bijection Nat(P, R(L)) = Hom(L P, L)") {
    auto mo2 = corpus("mo2.qea");
    auto S = single_object_site(corpus("bool2.qea"));
    auto rep = adjunction_bijection_check(yoneda(S, 0), mo2);
    CHECK(rep.nat_count == 6);
    CHECK(rep.hom_count == 6);
    CHECK(rep.bijection());

    auto empty = adjunction_bijection_check(empty_presheaf(default_site(mo2)), mo2);
    CHECK(empty.degenerate);
    CHECK(empty.nat_count == 1);
    CHECK(empty.bijection());

    // The identity transformation of R(L) corresponds to the counit.
    auto D = default_site(mo2);
    auto R = hom_presheaf(D, mo2);
    auto full = adjunction_bijection_check(R.presheaf, mo2);
    CHECK(full.bijection());
    auto eps = counit_of(R);
    bool found_identity = false;
    for (std::size_t i = 0; i < full.nats.size(); ++i) {
        bool identity = true;
        for (int o = 0; o < D->object_count(); ++o)
            for (int p = 0; p < static_cast<int>(R.homs[o].size()); ++p) identity &= full.nats[i].components[o][p] == p;
        if (!identity) continue;
        found_identity = true;
        CHECK(full.homs[full.forward[i]].map == eps.map.map);
    }
    CHECK(found_identity);
}

TEST_CASE("[adjunction] triangle identities") {
    for (const std::string file : {"bool2.qea", "mo2.qea", "chain3.qea"}) {
        CAPTURE(file);
        auto L = corpus(file);
        auto D = default_site(L);
        CHECK(triangle_right(D, L));
        CHECK(triangle_left(hom_presheaf(D, L).presheaf));
        CHECK(triangle_left(yoneda(D, 0)));
    }
}

TEST_CASE("[adjunction] rebuilding from the colimit gives an isomorphic algebra") {
    auto mo2 = corpus("mo2.qea");
    auto D = default_site(mo2);
    auto C = build_colimit(hom_presheaf(D, mo2).presheaf);
    auto again = build_colimit(hom_presheaf(D, C.algebra).presheaf);
    CHECK(isomorphic(*again.algebra, *C.algebra));
}
