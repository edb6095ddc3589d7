#include "doctest.h"
#include "support.hpp"

#include "qlogic/adjunction.hpp"

using namespace qtest;

namespace {

std::vector<std::string> object_names(const BooleanSite &S) {
    std::vector<std::string> out;
    for (const auto &o : S.objects()) out.push_back(o.name);
    return out;
}

int non_identity_arrows(const BooleanSite &S) {
    int n = 0;
    for (int a = 0; a < S.arrow_count(); ++a) n += S.identity(S.arrow(a).source) != a;
    return n;
}

}  // namespace

TEST_CASE("[site] default site objects") {
    auto mo2 = default_site(corpus("mo2.qea"));
    CHECK(object_names(*mo2) == std::vector<std::string>{"[a|a']", "[b|b']", "[1]"});
    auto b2 = default_site(corpus("bool2.qea"));
    CHECK(object_names(*b2) == std::vector<std::string>{"[x|x']"});
    // All four Boolean endomorphisms of 2^2 are arrows.
    CHECK(b2->arrow_count() == 4);
    auto chain = default_site(corpus("chain3.qea"));
    CHECK(object_names(*chain) ==
          std::vector<std::string>{"[a|b|c]", "[c|d|e]", "[e|f|g]", "[1]", "[c|c']", "[e|e']"});
}

TEST_CASE("[site] inclusion site of MO2") {
    auto S = inclusion_site(corpus("mo2.qea"));
    CHECK(S->object_count() == 3);
    // {0,1} includes into each block; no block includes into the other.
    CHECK(non_identity_arrows(*S) == 2);
    auto y = yoneda(S, "[a|a']");
    CHECK(y.sections[S->object_index("[1]")].size() == 1);
    CHECK(y.sections[S->object_index("[b|b']")].empty());
}

TEST_CASE("[site] arrows are closed under composition and A is functorial") {
    for (const std::string file : {"two.qea", "bool2.qea", "bool3.qea", "mo2.qea", "mo3.qea", "chain3.qea"}) {
        CAPTURE(file);
        auto L = corpus(file);
        for (const auto &S : {default_site(L), inclusion_site(L)}) {
            CHECK(S->coefficient_functorial());
            for (int f = 0; f < S->arrow_count(); ++f)
                for (int g : S->arrows_from(S->arrow(f).target)) CHECK_NOTHROW(S->compose(g, f));
        }
        auto S = inclusion_site(L);
        for (const auto &a : S->arrows()) {
            auto emb = compose(*S->object(a.target).embedding, a.hom);
            CHECK(emb.map == S->object(a.source).embedding->map);
            CHECK(ok(check_morphism(a.hom.source, a.hom.target, a.hom.map, MorphismKind::Monic)));
        }
    }
}

TEST_CASE("[site] Yoneda presheaves") {
    auto S = single_object_site(corpus("bool2.qea"));
    auto y = yoneda(S, 0);
    CHECK(is_functorial(y));
    CHECK(y.sections[0].size() == 4);  // the four endomorphisms

    auto T = single_object_site(corpus("two.qea"));
    auto y2 = yoneda(T, 0);
    REQUIRE(y2.sections[0].size() == 1);
    auto nats = natural_transformations(y2, y2);
    CHECK(nats.size() == 1);

    auto D = default_site(corpus("mo2.qea"));
    auto ya = yoneda(D, "[a|a']");
    CHECK(is_functorial(ya));
    CHECK_THROWS_AS(yoneda(D, "[zz]"), ObjectNotInSite);
}

TEST_CASE("[site] Yoneda lemma: natural transformations out of y[B] match sections over B") {
    for (const std::string file : {"bool2.qea", "mo2.qea", "chain3.qea"}) {
        auto S = default_site(corpus(file));
        for (int B = 0; B < S->object_count(); ++B) {
            auto yB = yoneda(S, B);
            for (int C = 0; C < S->object_count(); ++C) {
                auto yC = yoneda(S, C);
                auto nats = natural_transformations(yB, yC);
                CHECK(nats.size() == yC.sections[B].size());
                // Evaluation at (B, id_B) is injective.
                int id_pos = yB.find_section(B, S->arrow(S->identity(B)).name);
                REQUIRE(id_pos >= 0);
                std::set<int> evaluated;
                for (const auto &t : nats) evaluated.insert(t.components[B][id_pos]);
                CHECK(evaluated.size() == nats.size());
                for (const auto &t : nats) CHECK(is_natural(yB, yC, t));
            }
        }
    }
}

TEST_CASE("[site] empty presheaf") {
    auto S = default_site(corpus("mo2.qea"));
    auto E = empty_presheaf(S);
    CHECK(natural_transformations(E, yoneda(S, 0)).size() == 1);
    CHECK(elements_category(E).objects.empty());
    CHECK(natural_transformations(yoneda(S, 0), E).empty());
}

TEST_CASE("[site] natural transformations reject presheaves on different sites") {
    auto S = default_site(corpus("mo2.qea"));
    auto T = default_site(corpus("mo2.qea"));
    CHECK_THROWS_AS(natural_transformations(yoneda(S, 0), yoneda(T, 0)), SiteMismatch);
}

TEST_CASE("[site] category of elements") {
    for (const std::string file : {"bool2.qea", "mo2.qea", "chain3.qea"}) {
        auto S = default_site(corpus(file));
        for (int B = 0; B < S->object_count(); ++B) {
            auto y = yoneda(S, B);
            auto E = elements_category(y);
            REQUIRE(E.terminal());
            int id_pos = y.find_section(B, S->arrow(S->identity(B)).name);
            CHECK(E.is_terminal(E.object_index(B, id_pos)));
            CHECK(projection_functorial(y, E));
        }
    }
}

namespace {

/// Every family of components, filtered by is_natural.
std::vector<NaturalTransformation> natural_by_scan(const Presheaf &P, const Presheaf &Q) {
    std::vector<std::pair<int, int>> slots;
    for (int o = 0; o < P.site->object_count(); ++o)
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p) slots.emplace_back(o, p);
    NaturalTransformation tau;
    tau.components.resize(P.site->object_count());
    for (int o = 0; o < P.site->object_count(); ++o) tau.components[o].assign(P.sections[o].size(), 0);
    std::vector<NaturalTransformation> out;
    for (const auto &[o, p] : slots)
        if (Q.sections[o].empty()) return out;
    while (true) {
        if (is_natural(P, Q, tau)) out.push_back(tau);
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
            auto [o, p] = slots[i];
            if (++tau.components[o][p] < static_cast<int>(Q.sections[o].size())) break;
            tau.components[o][p] = 0;
        }
        if (i == slots.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.components < b.components; });
    return out;
}

double scan_size(const Presheaf &P, const Presheaf &Q) {
    double n = 1;
    for (int o = 0; o < P.site->object_count(); ++o)
        for (std::size_t p = 0; p < P.sections[o].size(); ++p) n *= static_cast<double>(Q.sections[o].size());
    return n;
}

}  // namespace

TEST_CASE("[site] natural transformation search matches an exhaustive scan") {
    int compared = 0;
    for (const std::string file : {"two.qea", "bool2.qea", "mo2.qea", "mo3.qea", "slit.qea"}) {
        auto L = corpus(file);
        for (const auto &S : {default_site(L), inclusion_site(L)}) {
            std::vector<Presheaf> family{hom_presheaf(S, L).presheaf, empty_presheaf(S)};
            for (int B = 0; B < S->object_count(); ++B) family.push_back(yoneda(S, B));
            for (const auto &P : family)
                for (const auto &Q : family) {
                    if (scan_size(P, Q) > 3e6) continue;
                    CAPTURE(file);
                    CAPTURE(S->name());
                    ++compared;
                    auto got = natural_transformations(P, Q);
                    auto want = natural_by_scan(P, Q);
                    REQUIRE(got.size() == want.size());
                    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].components == want[i].components);
                }
        }
    }
    CHECK(compared > 50);
}
