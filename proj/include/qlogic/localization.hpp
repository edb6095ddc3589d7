#pragma once

#include "qlogic/adjunction.hpp"

namespace qlogic {

class SectionNotInHomPresheaf : public std::invalid_argument {
public:
    explicit SectionNotInHomPresheaf(const std::string &what)
        : std::invalid_argument("SectionNotInHomPresheaf: " + what) {}
};

class NotMonic : public std::invalid_argument {
public:
    explicit NotMonic(const std::string &what) : std::invalid_argument("NotMonic: " + what) {}
};

class PullbackNotAlgebra : public std::runtime_error {
public:
    explicit PullbackNotAlgebra(const std::string &what) : std::runtime_error("PullbackNotAlgebra: " + what) {}
};

/// Subfunctor of R(L) given by section indices per object.
struct PrelocalizationSystem {
    HomPresheaf base;
    std::vector<std::vector<int>> selected;  // sorted indices into base sections

    HomPresheaf as_presheaf() const { return sub_hom_presheaf(base, selected); }
    bool contains(int object, int section) const;
    std::size_t size() const;
};

/// Smallest ideal subfunctor of R containing the generators (object, map).
PrelocalizationSystem generate_system(const HomPresheaf &R,
                                      const std::vector<std::pair<int, std::vector<Elem>>> &generators);
/// Every section of R.
PrelocalizationSystem full_system(const HomPresheaf &R);
/// Closed under restriction along every site arrow.
bool is_ideal(const PrelocalizationSystem &S);
PrelocalizationSystem system_union(const PrelocalizationSystem &a, const PrelocalizationSystem &b);
PrelocalizationSystem system_intersection(const PrelocalizationSystem &a, const PrelocalizationSystem &b);

/// A(B) x_L A(B') as pairs with equal images, ordered componentwise.
struct CoverPullback {
    AlgebraRef carrier;  // null when the carrier is not an event algebra
    std::optional<AlgebraMorphism> left;   // to A(B)
    std::optional<AlgebraMorphism> right;  // to A(B')
    bool compatible = false;  // carrier valid and both projections homomorphisms
    bool universal = false;   // every site cone factors through the carrier
    std::string witness;
};

CoverPullback cover_pullback(const BooleanSite &site, int B, const AlgebraMorphism &psi, int B2,
                             const AlgebraMorphism &psi2);

/// Omega_{B,B'}: the part of A(B') over the common image, carried to A(B).
struct PastingMap {
    int from = 0;  // B'
    int to = 0;    // B
    std::vector<Elem> forward;  // indexed by A(B'); -1 outside the overlap
    std::vector<Elem> inverse;  // indexed by A(B); -1 outside the overlap

    bool defined_at(Elem y) const { return forward[y] >= 0; }
};

/// Requires both covers injective; throws NotMonic otherwise.
PastingMap pasting_map(const AlgebraMorphism &psi_B, int B, const AlgebraMorphism &psi_B2, int B2);

struct CocycleReport {
    bool identity = true;
    bool inverse = true;
    bool triple = true;
    std::size_t overlaps = 0;
    std::size_t triples = 0;
    std::string witness;
    bool ok() const { return identity && inverse && triple; }
};

/// Cocycle laws over every pair and triple of the given monic covers.
CocycleReport check_cocycles(const std::vector<std::pair<int, AlgebraMorphism>> &covers);

struct LocalizationReport {
    bool ideal = false;
    bool pairwise_compatible = false;
    bool cocycles = false;
    IsoVerdict counit;
    bool counit_built = false;
    std::size_t pairs_checked = 0;
    std::size_t monic_covers = 0;
    std::string witness;
    bool is_localization() const { return ideal && pairwise_compatible && cocycles && counit.iso(); }
};

LocalizationReport is_localization_system(const PrelocalizationSystem &S);

}  // namespace qlogic
