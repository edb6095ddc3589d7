#include "doctest.h"
#include "support.hpp"

#include "qlogic/localization.hpp"

using namespace qtest;

namespace {

std::pair<int, std::vector<Elem>> embedding_of(const BooleanSite &S, const std::string &object) {
    int B = S.object_index(object);
    return {B, S.object(B).embedding->map};
}

bool same_selection(const PrelocalizationSystem &a, const PrelocalizationSystem &b) {
    return a.selected == b.selected;
}

/// Random subset of R's sections, one coin flip each.
PrelocalizationSystem random_generated(const HomPresheaf &R, std::mt19937 &rng) {
    std::vector<std::pair<int, std::vector<Elem>>> gens;
    std::bernoulli_distribution coin(0.2);
    for (int o = 0; o < static_cast<int>(R.homs.size()); ++o)
        for (const auto &h : R.homs[o])
            if (coin(rng)) gens.emplace_back(o, h.map);
    return generate_system(R, gens);
}

}  // namespace

TEST_CASE("[localization] pullback of the two MO2 blocks is {0,1}") {
    auto mo2 = corpus("mo2.qea");
    auto S = default_site(mo2);
    int A = S->object_index("[a|a']"), B = S->object_index("[b|b']");
    auto pb = cover_pullback(*S, A, *S->object(A).embedding, B, *S->object(B).embedding);
    REQUIRE(pb.compatible);
    CHECK(pb.universal);
    CHECK(pb.carrier->size() == 2);
    CHECK(find_isomorphism(*pb.carrier, *two()).has_value());
}

TEST_CASE("[localization] pullback of a monic cover with itself is the diagonal") {
    for (const std::string file : {"mo2.qea", "chain3.qea", "bool3.qea"}) {
        auto S = default_site(corpus(file));
        for (int B = 0; B < S->object_count(); ++B) {
            const auto &psi = *S->object(B).embedding;
            auto pb = cover_pullback(*S, B, psi, B, psi);
            REQUIRE(pb.compatible);
            CHECK(pb.universal);
            CHECK(pb.carrier->size() == psi.source->size());
            for (Elem e = 0; e < pb.carrier->size(); ++e) CHECK((*pb.left)(e) == (*pb.right)(e));
        }
    }
}

TEST_CASE("[localization] pullback against a non-homomorphism is reported, not thrown") {
    auto mo2 = corpus("mo2.qea");
    auto S = default_site(mo2);
    int A = S->object_index("[a|a']");
    const auto &psi = *S->object(A).embedding;
    // a and a' both sent to a: ortho is not preserved, so the carrier loses closure.
    AlgebraMorphism bad = psi;
    bad.map[psi.source->index("a'")] = mo2->index("a");
    auto pb = cover_pullback(*S, A, psi, A, bad);
    CHECK_FALSE(pb.compatible);
    CHECK_FALSE(pb.witness.empty());
}

TEST_CASE("[localization] pasting maps") {
    auto mo2 = corpus("mo2.qea");
    auto S = default_site(mo2);
    int A = S->object_index("[a|a']"), B = S->object_index("[b|b']");
    const auto &ea = *S->object(A).embedding;
    const auto &eb = *S->object(B).embedding;

    auto id = pasting_map(ea, A, ea, A);
    for (Elem x = 0; x < ea.source->size(); ++x) CHECK(id.forward[x] == x);

    auto ab = pasting_map(ea, A, eb, B);
    const auto &KA = *ea.source;
    const auto &KB = *eb.source;
    CHECK(ab.forward[KB.zero()] == KA.zero());
    CHECK(ab.forward[KB.one()] == KA.one());
    CHECK_FALSE(ab.defined_at(KB.index("b")));
    CHECK_FALSE(ab.defined_at(KB.index("b'")));

    AlgebraMorphism collapse = ea;
    collapse.map.assign(ea.map.size(), mo2->one());
    collapse.map[KA.index("a")] = mo2->zero();  // a -> 0, a' -> 1, 0 -> ?, keep non-injective
    collapse.map[KA.zero()] = mo2->zero();
    CHECK_THROWS_AS(pasting_map(collapse, A, eb, B), NotMonic);
}

TEST_CASE("[localization] cocycle laws on block covers") {
    for (const std::string file : {"mo2.qea", "mo3.qea", "chain3.qea", "statefree.qea"}) {
        CAPTURE(file);
        auto S = default_site(corpus(file));
        std::vector<std::pair<int, AlgebraMorphism>> covers;
        for (int B = 0; B < S->object_count(); ++B) covers.emplace_back(B, *S->object(B).embedding);
        auto rep = check_cocycles(covers);
        CHECK(rep.ok());
        CHECK(rep.overlaps == covers.size() * covers.size());
    }
    // chain3: a triple with a genuine common overlap, [a|b|c], [c|c'], [c|d|e].
    auto S = default_site(corpus("chain3.qea"));
    std::vector<std::pair<int, AlgebraMorphism>> triple;
    for (const std::string o : {"[a|b|c]", "[c|c']", "[c|d|e]"}) {
        int B = S->object_index(o);
        triple.emplace_back(B, *S->object(B).embedding);
    }
    auto rep = check_cocycles(triple);
    CHECK(rep.ok());
    CHECK(rep.triples == 27);
}

TEST_CASE("[localization] localization systems on MO2") {
    auto mo2 = corpus("mo2.qea");
    auto S = default_site(mo2);
    auto R = hom_presheaf(S, mo2);

    auto both = generate_system(R, {embedding_of(*S, "[a|a']"), embedding_of(*S, "[b|b']")});
    auto rep = is_localization_system(both);
    CHECK(rep.ideal);
    CHECK(rep.pairwise_compatible);
    CHECK(rep.cocycles);
    CHECK(rep.counit.iso());
    CHECK(rep.is_localization());

    auto one_block = generate_system(R, {embedding_of(*S, "[a|a']")});
    auto rep1 = is_localization_system(one_block);
    CHECK(rep1.ideal);
    CHECK(rep1.counit.injective);
    CHECK_FALSE(rep1.counit.surjective);
    CHECK_FALSE(rep1.is_localization());
}

TEST_CASE("[localization] R(2^2) over its own site is a localization system") {
    auto b2 = corpus("bool2.qea");
    auto R = hom_presheaf(default_site(b2), b2);
    auto rep = is_localization_system(full_system(R));
    CHECK(rep.ideal);
    CHECK(rep.counit.iso());
    CHECK(rep.is_localization());
}

TEST_CASE("[localization] generate_system rejects sections outside R") {
    auto mo2 = corpus("mo2.qea");
    auto S = default_site(mo2);
    auto R = hom_presheaf(S, mo2);
    int A = S->object_index("[a|a']");
    std::vector<Elem> not_a_hom(S->object(A).algebra->size(), mo2->zero());
    CHECK_THROWS_AS(generate_system(R, {{A, not_a_hom}}), SectionNotInHomPresheaf);
}

TEST_CASE("[localization] system lattice properties on random generators") {
    std::mt19937 rng(20261016);
    for (const std::string file : {"mo2.qea", "bool2.qea", "chain3.qea"}) {
        CAPTURE(file);
        auto L = corpus(file);
        auto R = hom_presheaf(default_site(L), L);
        auto none = generate_system(R, {});
        CHECK(none.size() == 0);
        CHECK(is_ideal(none));
        auto all = full_system(R);
        CHECK(is_ideal(all));
        CHECK(same_selection(generate_system(R, [&] {
                                 std::vector<std::pair<int, std::vector<Elem>>> g;
                                 for (int o = 0; o < static_cast<int>(R.homs.size()); ++o)
                                     for (const auto &h : R.homs[o]) g.emplace_back(o, h.map);
                                 return g;
                             }()),
                             all));
        for (int trial = 0; trial < 20; ++trial) {
            auto a = random_generated(R, rng);
            auto b = random_generated(R, rng);
            CHECK(is_ideal(a));
            CHECK(is_ideal(system_union(a, b)));
            CHECK(is_ideal(system_intersection(a, b)));
            // Regenerating from a generated system changes nothing.
            std::vector<std::pair<int, std::vector<Elem>>> gens;
            for (int o = 0; o < static_cast<int>(a.selected.size()); ++o)
                for (int p : a.selected[o]) gens.emplace_back(o, R.homs[o][p].map);
            CHECK(same_selection(generate_system(R, gens), a));
            CHECK(system_union(a, all).selected == all.selected);
            CHECK(system_intersection(a, none).size() == 0);
        }
    }
}

TEST_CASE("[localization] colimit over a localization system matches the full R(L)") {
    for (const std::string file : {"mo2.qea", "mo3.qea", "chain3.qea"}) {
        CAPTURE(file);
        auto L = corpus(file);
        auto S = default_site(L);
        auto R = hom_presheaf(S, L);
        std::vector<std::pair<int, std::vector<Elem>>> gens;
        for (int B = 0; B < S->object_count(); ++B) gens.emplace_back(B, S->object(B).embedding->map);
        auto sys = generate_system(R, gens);
        auto rep = is_localization_system(sys);
        CHECK(rep.is_localization());
        auto local = build_colimit(sys.as_presheaf().presheaf);
        auto full = counit(L, S);
        CHECK(find_isomorphism(*local.algebra, *full.colimit.algebra).has_value());
        CHECK(find_isomorphism(*local.algebra, *L).has_value());
    }
}
