#pragma once

#include "qlogic/core_algebra.hpp"

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qlogic {

class ObjectNotInSite : public std::out_of_range {
public:
    explicit ObjectNotInSite(const std::string &name) : std::out_of_range("ObjectNotInSite: " + name) {}
};

class SiteMismatch : public std::invalid_argument {
public:
    SiteMismatch() : std::invalid_argument("SiteMismatch: presheaves live on different sites") {}
};

struct SiteObject {
    std::string name;
    AlgebraRef algebra;
    /// Inclusion into the ambient algebra the site was built from, if any.
    std::optional<AlgebraMorphism> embedding;
};

struct SiteArrow {
    std::string name;
    int source = 0;
    int target = 0;
    AlgebraMorphism hom;  // A(arrow): A(source) -> A(target)
};

/// Finite category of Boolean algebras. Arrows are stored as Boolean
/// homomorphisms and are closed under composition; every object has its
/// identity. The coefficient functor A is the forgetful one: A(B) is the
/// object's algebra and A(v) its underlying quantum homomorphism.
class BooleanSite {
public:
    /// Closes `generators` under composition and adds identities. Each
    /// generator is (source index, target index, element map).
    static BooleanSite make(std::string name, std::vector<SiteObject> objects,
                            const std::vector<std::tuple<int, int, std::vector<Elem>>> &generators,
                            AlgebraRef ambient = nullptr);

    const std::string &name() const { return name_; }
    const AlgebraRef &ambient() const { return ambient_; }
    int object_count() const { return static_cast<int>(objects_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const SiteObject &object(int i) const { return objects_.at(i); }
    const std::vector<SiteObject> &objects() const { return objects_; }
    const SiteArrow &arrow(int a) const { return arrows_.at(a); }
    const std::vector<SiteArrow> &arrows() const { return arrows_; }
    int object_index(const std::string &name) const;
    int identity(int object) const { return identity_.at(object); }
    const std::vector<int> &arrows_into(int object) const { return into_.at(object); }
    const std::vector<int> &arrows_from(int object) const { return from_.at(object); }

    /// Arrow with the given endpoints and element map, if present.
    std::optional<int> find_arrow(int source, int target, const std::vector<Elem> &map) const;
    /// g after f; requires target(f) = source(g).
    int compose(int g, int f) const;

    /// Site with one object removed together with every arrow touching it.
    BooleanSite without_object(const std::string &object_name) const;
    /// A(id) = id and A(g f) = A(g) A(f) over all composable pairs.
    bool coefficient_functorial() const;

private:
    std::string name_;
    AlgebraRef ambient_;
    std::vector<SiteObject> objects_;
    std::vector<SiteArrow> arrows_;
    std::vector<int> identity_;
    std::vector<std::vector<int>> into_;
    std::vector<std::vector<int>> from_;
    std::unordered_map<std::string, int> lookup_;
};

using SiteRef = std::shared_ptr<const BooleanSite>;

/// Blocks of L and their pairwise Boolean intersections; arrows are all
/// Boolean homomorphisms between them.
SiteRef default_site(const AlgebraRef &L);
/// Same objects as default_site; arrows are only the inclusions.
SiteRef inclusion_site(const AlgebraRef &L);
/// Named Boolean subalgebras of L (element lists) as objects; arrows are all
/// Boolean homomorphisms between them, or only the inclusions.
SiteRef custom_site(const AlgebraRef &L, const std::string &name,
                    const std::vector<std::pair<std::string, std::vector<Elem>>> &objects, bool inclusions_only);
/// One Boolean object with all of its Boolean endomorphisms.
SiteRef single_object_site(const AlgebraRef &B);
/// Every Boolean subalgebra of every object of `site` (as embedded images
/// when embeddings exist), ordered by inclusion.
SiteRef subalgebra_site(const BooleanSite &site);

/// Contravariant set-valued functor on a site. restriction[a][p] is the
/// index over source(a) of section p (over target(a)) restricted along a.
struct Presheaf {
    SiteRef site;
    std::vector<std::vector<std::string>> sections;
    std::vector<std::vector<int>> restriction;

    int section_count() const;
    int restrict(int arrow, int section) const { return restriction[arrow][section]; }
    /// Index of a named section over an object, or -1.
    int find_section(int object, const std::string &name) const;
};

/// Both action laws: p.id = p and p.(v w) = (p.v).w on all composable pairs.
bool is_functorial(const Presheaf &P);

struct NaturalTransformation {
    /// components[B][p] = index in target.sections[B].
    std::vector<std::vector<int>> components;
};

bool is_natural(const Presheaf &P, const Presheaf &Q, const NaturalTransformation &tau);
/// Every natural transformation P -> Q, in lexicographic order of the
/// flattened components. The callback form stops early when it returns false.
std::vector<NaturalTransformation> natural_transformations(const Presheaf &P, const Presheaf &Q);
void for_each_natural_transformation(const Presheaf &P, const Presheaf &Q,
                                     const std::function<bool(const NaturalTransformation &)> &visit);

Presheaf yoneda(const SiteRef &site, int object);
Presheaf yoneda(const SiteRef &site, const std::string &object_name);
/// Presheaf with no sections anywhere.
Presheaf empty_presheaf(const SiteRef &site);

struct ElementsCategory {
    struct Object {
        int site_object;
        int section;
    };
    struct Arrow {
        int source;      // index into objects
        int target;      // index into objects
        int site_arrow;  // u with p . u = p'
    };
    std::vector<Object> objects;
    std::vector<Arrow> arrows;

    int object_index(int site_object, int section) const;
    /// Every object maps to `object` by exactly one arrow.
    bool is_terminal(int object) const;
    /// First terminal object, if any.
    std::optional<int> terminal() const;
};

ElementsCategory elements_category(const Presheaf &P);
/// The projection to the site preserves identities and composition.
bool projection_functorial(const Presheaf &P, const ElementsCategory &E);

}  // namespace qlogic
