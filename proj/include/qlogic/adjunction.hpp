#pragma once

#include "qlogic/site.hpp"

#include <functional>
#include <map>
#include <set>

namespace qlogic {

/// The chosen presheaf and site do not produce an event algebra.
class StructureFailure : public std::runtime_error {
public:
    StructureFailure(std::string axiom, std::vector<std::string> witnesses);
    const std::string &axiom() const { return axiom_; }
    const std::vector<std::string> &witnesses() const { return witnesses_; }

private:
    std::string axiom_;
    std::vector<std::string> witnesses_;
};

/// Two equivalent pairs have different images.
class IllDefined : public std::runtime_error {
public:
    explicit IllDefined(const std::string &witness) : std::runtime_error("IllDefined: " + witness) {}
};

/// A presheaf whose sections over B are quantum homomorphisms A(B) -> L,
/// restricted by precomposition. Either all of R(L) or a subfunctor of it.
struct HomPresheaf {
    Presheaf presheaf;
    AlgebraRef codomain;
    std::vector<std::vector<AlgebraMorphism>> homs;  // parallel to presheaf.sections

    /// Index of the section with this element map over `object`, or -1.
    int find(int object, const std::vector<Elem> &map) const;
};

HomPresheaf hom_presheaf(const SiteRef &site, const AlgebraRef &L);
/// Subfunctor of R keeping selected[B] (section indices of R over B). The
/// selection must be closed under restriction.
HomPresheaf sub_hom_presheaf(const HomPresheaf &R, const std::vector<std::vector<int>> &selected);

/// Quotient of the pairs (section, element) by the relation generated by
/// (p.v, q) ~ (p, v(q)).
struct ColimitAlgebra {
    SiteRef site;
    AlgebraRef algebra;
    /// classes[B][p][q]: element of `algebra` containing (p, q).
    std::vector<std::vector<std::vector<Elem>>> classes;
    /// Canonical (object, section, element) per element of `algebra`.
    std::vector<std::tuple<int, int, Elem>> representative;

    Elem class_of(int object, int section, Elem q) const { return classes[object][section][q]; }
};

using PairNamer = std::function<std::string(const std::string &section, const std::string &element)>;

/// Union-find quotient with ortho, unit and the order "some section carries
/// both classes at comparable elements". Throws StructureFailure when the
/// result is not a validated event algebra.
ColimitAlgebra build_colimit(const Presheaf &P, const PairNamer &namer = {});

/// Pairs (X, Y) of classes related by the fiber-product cone search: some
/// object D with arrows beta, gamma into the objects of representatives of X
/// and Y, sections agreeing on D, and d1 <= d2 with beta(d1), gamma(d2) the
/// representing elements. Quantifies over every representative.
std::set<std::pair<Elem, Elem>> cone_order(const Presheaf &P, const ColimitAlgebra &C);

struct IsoVerdict {
    bool injective = false;
    bool surjective = false;
    bool structure_preserving = false;
    bool iso() const { return injective && surjective && structure_preserving; }
};

struct CounitResult {
    HomPresheaf system;
    ColimitAlgebra colimit;
    AlgebraMorphism map;  // colimit -> L
    IsoVerdict verdict;
};

/// Counit over an arbitrary subfunctor of R(L).
CounitResult counit_of(const HomPresheaf &system);
/// Counit for (site, L). When the site objects embed into L the colimit is
/// taken over the system generated by those embeddings; otherwise over R(L).
CounitResult counit(const AlgebraRef &L, const SiteRef &site);
/// Sections of R(L) of the form embedding(B) o v.
std::vector<std::vector<int>> embedding_generated(const HomPresheaf &R);

struct UnitResult {
    ColimitAlgebra colimit;
    HomPresheaf hom_of_colimit;  // R(L P)
    NaturalTransformation delta;
    bool natural = false;
    std::vector<IsoVerdict> components;  // per site object
    bool iso() const;
};

UnitResult unit(const Presheaf &P, const PairNamer &namer = {});

struct AdjunctionReport {
    bool degenerate = false;  // P has no sections; the colimit is the initial object
    std::size_t nat_count = 0;
    std::size_t hom_count = 0;
    bool forward_well_defined = true;
    bool backward_natural = true;
    bool mutually_inverse = false;
    /// Mediating arrow of each natural transformation, as an index into homs.
    std::vector<int> forward;
    std::vector<NaturalTransformation> nats;
    std::vector<AlgebraMorphism> homs;
    bool bijection() const;
};

AdjunctionReport adjunction_bijection_check(const Presheaf &P, const AlgebraRef &L);
/// Same check against an already built R(L) on the site of P.
AdjunctionReport adjunction_bijection_check(const Presheaf &P, const HomPresheaf &R);

/// eps_{L P} o L(delta_P) = id on classes of L P.
bool triangle_left(const Presheaf &P);
/// R(eps_L) o delta_{R(L)} = id on sections of R(L).
bool triangle_right(const SiteRef &site, const AlgebraRef &L);

}  // namespace qlogic
