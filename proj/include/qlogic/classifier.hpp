#pragma once

#include "qlogic/localization.hpp"

namespace qlogic {

class NotSubobject : public std::invalid_argument {
public:
    explicit NotSubobject(const std::string &what) : std::invalid_argument("NotSubobject: " + what) {}
};

class NotApplicable : public std::invalid_argument {
public:
    explicit NotApplicable(const std::string &what) : std::invalid_argument("NotApplicable: " + what) {}
};

class NotBoolean : public std::invalid_argument {
public:
    explicit NotBoolean(const std::string &what) : std::invalid_argument("NotBoolean: " + what) {}
};

class CounitNotIso : public std::runtime_error {
public:
    explicit CounitNotIso(const std::string &what) : std::runtime_error("CounitNotIso: " + what) {}
};

/// A subobject represented by its image: a subset containing 0 and 1, closed
/// under ortho and existing orthogonal joins, whose inclusion is a monic.
struct Subobject {
    AlgebraRef of;
    std::vector<Elem> image;  // sorted
    AlgebraMorphism inclusion;

    bool contains(Elem e) const { return std::binary_search(image.begin(), image.end(), e); }
    bool is_whole() const { return static_cast<int>(image.size()) == of->size(); }
    /// "{0,a,a',1}" over the ids of `of`.
    std::string label() const;
};

/// Closes the seed under ortho and orthogonal joins and validates the result.
/// Throws NotSubobject when the closed set is not an event algebra.
Subobject make_subobject(const AlgebraRef &A, const std::vector<Elem> &seed);
/// Throws NotSubobject unless `image` is already closed.
Subobject subobject_with_image(const AlgebraRef &A, std::vector<Elem> image);
/// Every subobject, ordered by size and then by image.
std::vector<Subobject> subobjects(const AlgebraRef &A);
bool subobject_leq(const Subobject &a, const Subobject &b);

/// {x in A(B) : e(x) in image(l)}. Throws PullbackNotAlgebra when that set is
/// not a subobject.
Subobject pullback_subobject(const Subobject &l, const AlgebraMorphism &e);

/// Theta(A(-)): sections over B are the subobjects of A(B), restricted by
/// pulling back along A(v).
struct SubobjectPresheaf {
    Presheaf presheaf;
    std::vector<std::vector<Subobject>> subs;  // parallel to presheaf.sections

    /// Index of the subobject with this image over `object`, or -1.
    int find(int object, const std::vector<Elem> &image) const;
    int whole(int object) const;
};

SubobjectPresheaf subobject_presheaf(const SiteRef &site);

/// Omega as the colimit of Theta with elements named phi⊗q. The image of
/// True is the set of classes ||id ⊗ c||.
struct OmegaAlgebra {
    SiteRef base;  // site Omega was requested for
    SiteRef site;  // site carrying Theta
    SubobjectPresheaf theta;
    ColimitAlgebra colimit;
    std::vector<char> truth;  // per element of the colimit algebra

    const AlgebraRef &algebra() const { return colimit.algebra; }
    Elem tensor(int object, int subobject, Elem q) const { return colimit.class_of(object, subobject, q); }
    bool is_true(Elem w) const { return truth[w] != 0; }
    /// ||id ⊗ 1||, the distinguished truth class.
    Elem top() const;
    std::vector<Elem> true_classes() const;
};

/// Omega over the Boolean subalgebras of the objects of `site`, with
/// inclusions as arrows. Requires object embeddings into an ambient algebra.
OmegaAlgebra build_omega(const SiteRef &site);
/// Omega with Theta taken directly over `site`. Throws StructureFailure when
/// the quotient is not an event algebra.
OmegaAlgebra omega_over(const SiteRef &site);

struct TruthValue {
    Elem cls = 0;
    bool is_true = false;
    /// "true", or the name of the class; never "false".
    std::string label;
};

/// ||phi ⊗ b|| over the Omega-site object `object`.
TruthValue truth_value(const OmegaAlgebra &omega, int object, const Subobject &phi, Elem b);
TruthValue truth_value(const OmegaAlgebra &omega, int object, const Subobject &phi, const std::string &b);

/// Whether c in A(C) corresponds, through the pasting map between the cover
/// psi_B restricted to Dom(phi) and psi_C, to an element of Dom(phi).
/// Throws NotApplicable for non-monic covers.
bool truth_via_pasting(const Subobject &phi, const AlgebraMorphism &psi_B, Elem c, const AlgebraMorphism &psi_C);

/// y = e_B(b) |-> ||(l * e_B) ⊗ b|| over the Omega-site objects B. Throws
/// CounitNotIso when the counit for the base site is not an isomorphism and
/// IllDefined when two representatives disagree. The result carries the
/// violation when the map is not a quantum homomorphism.
Checked<AlgebraMorphism> characteristic_arrow(const OmegaAlgebra &omega, const Subobject &l);
/// {y : chi(y) is true}.
std::vector<Elem> true_preimage(const OmegaAlgebra &omega, const AlgebraMorphism &chi);

struct SquareReport {
    std::string subobject;
    bool arrow_valid = false;
    bool commutes = false;   // chi o l lands in the image of True
    bool pullback = false;   // preimage of True is l and every site cone factors through l
    bool roundtrip = false;  // pulling True back along chi gives l again
    std::string witness;
    bool ok() const { return arrow_valid && commutes && pullback && roundtrip; }
};

struct ClassifierReport {
    bool counit_iso = false;
    std::size_t subobject_count = 0;
    std::size_t classifying_count = 0;  // distinct arrows of the form chi_l
    bool injective = false;
    std::vector<SquareReport> squares;
    /// Every quantum homomorphism L -> Omega; filled when requested.
    std::optional<std::size_t> hom_count;
    /// Each homomorphism is the characteristic arrow of its own pullback.
    std::optional<bool> unique;
    std::string witness;
    bool squares_ok() const;
    bool passed() const { return counit_iso && injective && squares_ok(); }
};

/// Checks varpi_L on L with `site`. `omega` replaces the computed Omega when
/// given; it must come from the same site.
ClassifierReport classifier_check(const AlgebraRef &L, const SiteRef &site,
                                  const std::optional<OmegaAlgebra> &omega = std::nullopt,
                                  bool count_all_homs = false);

struct ScenarioReport {
    Elem proposition = 0;
    std::optional<Elem> consequent;
    std::optional<Elem> implication;  // ¬p ∨ q in the context
    bool implication_top = false;
    TruthValue truth;                 // ||apparatus ⊗ p||
    std::optional<TruthValue> consequent_truth;
    std::optional<Elem> ultrafilter_atom;
    std::optional<AlgebraMorphism> reduction;  // context -> 2
    std::string reduction_note;
};

/// Valuation of p (and p -> q) in a Boolean context seen through the
/// apparatus subobject. The two-valued reduction is produced when the
/// apparatus image is {0, a, a', 1} for an atom a of the context.
ScenarioReport valuate_scenario(const AlgebraRef &context, const std::vector<Elem> &apparatus, Elem p,
                                std::optional<Elem> q = std::nullopt);

}  // namespace qlogic
