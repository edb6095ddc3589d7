#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace qlogic {

/// Index of an element inside one EventAlgebra. Only meaningful together
/// with the algebra it came from.
using Elem = int;

enum class ViolationKind {
    DuplicateElement,
    UnknownElement,
    OrderCycle,
    DegenerateAlgebra,
    BoundsViolated,
    OrthoNotInvolutive,
    OrthoNotAntitone,
    ComplementJoinFails,
    MissingOrthogonalJoin,
    NotOrthomodular,
    NotTotal,
    ConditionViolated,
    NotBoolean,
    NotInjective,
};

const char *to_string(ViolationKind kind);

/// First axiom a candidate failed, with the elements that witness it.
struct Violation {
    ViolationKind kind;
    std::string condition;               // e.g. "[b] ortho", "antisymmetry"
    std::vector<std::string> witnesses;  // element names

    std::string message() const;
};

class ViolationError : public std::runtime_error {
public:
    explicit ViolationError(Violation v);
    const Violation &violation() const { return violation_; }

private:
    Violation violation_;
};

class ElementNotFound : public std::out_of_range {
public:
    explicit ElementNotFound(const std::string &id);
};

template <class T>
using Checked = std::variant<T, Violation>;

template <class T>
bool ok(const Checked<T> &c) { return std::holds_alternative<T>(c); }

template <class T>
const T &value(const Checked<T> &c) {
    if (auto *v = std::get_if<Violation>(&c)) throw ViolationError(*v);
    return std::get<T>(c);
}

template <class T>
const Violation &violation(const Checked<T> &c) { return std::get<Violation>(c); }

/// Unvalidated algebra description, as read from an instance file or built
/// in code. Order pairs need not be closed; ortho pairs are symmetric.
struct RawAlgebra {
    std::string name;
    std::vector<std::string> elements;
    std::string zero;
    std::string one;
    std::vector<std::pair<std::string, std::string>> leq;
    std::vector<std::pair<std::string, std::string>> ortho;
};

/// A finite orthomodular orthoposet with 0 != 1. Immutable once built;
/// elements are stored sorted by id.
class EventAlgebra {
public:
    const std::string &name() const { return name_; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string> &names() const { return names_; }
    const std::string &id(Elem e) const { return names_.at(e); }
    Elem index(const std::string &id) const;
    std::optional<Elem> find(const std::string &id) const;

    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    Elem ortho(Elem e) const { return ortho_[e]; }
    bool leq(Elem a, Elem b) const { return leq_[a * size() + b] != 0; }
    bool orthogonal(Elem a, Elem b) const { return leq(a, ortho_[b]); }

    /// Least upper bound in the poset, if it exists.
    std::optional<Elem> join(Elem a, Elem b) const;
    std::optional<Elem> meet(Elem a, Elem b) const;

    bool is_boolean() const { return boolean_; }
    /// Elements covering zero.
    const std::vector<Elem> &atoms() const { return atoms_; }
    /// Covering pairs (a, b): a < b with nothing strictly between.
    std::vector<std::pair<Elem, Elem>> covers() const;

    /// Pairwise orthogonal atoms whose join is e.
    const std::vector<Elem> &atom_decomposition(Elem e) const { return decomposition_[e]; }

    RawAlgebra to_raw() const;

    /// Renamed copy; structure untouched.
    EventAlgebra renamed(std::string name) const;

    friend Checked<EventAlgebra> check_event_algebra(const RawAlgebra &raw);

private:
    EventAlgebra() = default;
    void finish();

    std::string name_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Elem> index_;
    std::vector<char> leq_;
    std::vector<Elem> ortho_;
    std::vector<Elem> join_;
    std::vector<Elem> meet_;
    std::vector<Elem> atoms_;
    std::vector<std::vector<Elem>> decomposition_;
    Elem zero_ = 0;
    Elem one_ = 0;
    bool boolean_ = false;
};

using AlgebraRef = std::shared_ptr<const EventAlgebra>;

/// Validates [a]-[f] and returns the closed algebra or the first violation.
Checked<EventAlgebra> check_event_algebra(const RawAlgebra &raw);
/// Throwing form of check_event_algebra.
EventAlgebra validate_event_algebra(const RawAlgebra &raw);
AlgebraRef make_algebra(const RawAlgebra &raw);

enum class MorphismKind { QuantumHom, BooleanHom, Monic };
const char *to_string(MorphismKind kind);
std::optional<MorphismKind> parse_kind(const std::string &s);

struct AlgebraMorphism {
    std::string name;
    AlgebraRef source;
    AlgebraRef target;
    std::vector<Elem> map;  // indexed by source element
    MorphismKind kind = MorphismKind::QuantumHom;

    Elem operator()(Elem e) const { return map[e]; }
    bool injective() const;
    /// Images as a sorted, duplicate-free element list of the target.
    std::vector<Elem> image() const;
    /// "src>dst,..." over source ids; used as a stable name.
    std::string graph_string() const;
};

/// Raw candidate: explicit (source id, target id) pairs.
struct RawMorphism {
    std::string name;
    std::vector<std::pair<std::string, std::string>> map;
};

Checked<AlgebraMorphism> check_morphism(const AlgebraRef &source, const AlgebraRef &target,
                                        std::vector<Elem> map, MorphismKind kind,
                                        std::string name = {});
Checked<AlgebraMorphism> check_morphism(const AlgebraRef &source, const AlgebraRef &target,
                                        const RawMorphism &raw, MorphismKind kind);
AlgebraMorphism validate_morphism(const AlgebraRef &source, const AlgebraRef &target,
                                  std::vector<Elem> map, MorphismKind kind,
                                  std::string name = {});

/// g after f. Kinds are intersected conservatively (QuantumHom unless both agree).
AlgebraMorphism compose(const AlgebraMorphism &g, const AlgebraMorphism &f);
AlgebraMorphism identity_morphism(const AlgebraRef &a);

/// Closure of a seed set under ortho and existing binary joins and meets,
/// always containing 0 and 1.
std::vector<Elem> generated_subalgebra(const EventAlgebra &L, std::vector<Elem> seed);
/// True iff the subset is closed under the operations of L and distributive.
bool is_boolean_subset(const EventAlgebra &L, const std::vector<Elem> &subset);

bool compatible(const EventAlgebra &L, Elem a, Elem b);
bool compatible(const EventAlgebra &L, const std::string &a, const std::string &b);

/// The subalgebra on `subset` as a validated algebra with the same ids.
EventAlgebra restrict_to(const EventAlgebra &L, const std::vector<Elem> &subset, std::string name);

/// All maximal Boolean subalgebras as inclusion monics, ordered by their
/// sorted element lists.
std::vector<AlgebraMorphism> maximal_boolean_subalgebras(const AlgebraRef &L);

std::vector<AlgebraMorphism> enumerate_homomorphisms(const AlgebraRef &source,
                                                     const AlgebraRef &target,
                                                     MorphismKind kind);

/// The two-element Boolean algebra {0, 1}.
AlgebraRef two();
/// Powerset of n atoms named p1..pn; elements are named by atom sets.
AlgebraRef boolean_power(int atoms, const std::string &name = {});

std::vector<AlgebraMorphism> two_valued_homomorphisms(const AlgebraRef &L);

/// Search for an isomorphism of event algebras; returns the element map.
std::optional<std::vector<Elem>> find_isomorphism(const EventAlgebra &a, const EventAlgebra &b);

}  // namespace qlogic
