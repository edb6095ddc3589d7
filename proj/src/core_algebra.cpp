#include "qlogic/core_algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace qlogic {

const char *to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::DuplicateElement: return "DuplicateElement";
    case ViolationKind::UnknownElement: return "UnknownElement";
    case ViolationKind::OrderCycle: return "OrderCycle";
    case ViolationKind::DegenerateAlgebra: return "DegenerateAlgebra";
    case ViolationKind::BoundsViolated: return "BoundsViolated";
    case ViolationKind::OrthoNotInvolutive: return "OrthoNotInvolutive";
    case ViolationKind::OrthoNotAntitone: return "OrthoNotAntitone";
    case ViolationKind::ComplementJoinFails: return "ComplementJoinFails";
    case ViolationKind::MissingOrthogonalJoin: return "MissingOrthogonalJoin";
    case ViolationKind::NotOrthomodular: return "NotOrthomodular";
    case ViolationKind::NotTotal: return "NotTotal";
    case ViolationKind::ConditionViolated: return "ConditionViolated";
    case ViolationKind::NotBoolean: return "NotBoolean";
    case ViolationKind::NotInjective: return "NotInjective";
    }
    return "?";
}

std::string Violation::message() const {
    std::ostringstream os;
    os << to_string(kind) << " " << condition;
    if (!witnesses.empty()) {
        os << " (";
        for (std::size_t i = 0; i < witnesses.size(); ++i) os << (i ? ", " : "") << witnesses[i];
        os << ")";
    }
    return os.str();
}

ViolationError::ViolationError(Violation v)
    : std::runtime_error(v.message()), violation_(std::move(v)) {}

ElementNotFound::ElementNotFound(const std::string &id)
    : std::out_of_range("ElementNotFound: " + id) {}

Elem EventAlgebra::index(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ElementNotFound(id);
    return it->second;
}

std::optional<Elem> EventAlgebra::find(const std::string &id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Elem> EventAlgebra::join(Elem a, Elem b) const {
    Elem j = join_[a * size() + b];
    if (j < 0) return std::nullopt;
    return j;
}

std::optional<Elem> EventAlgebra::meet(Elem a, Elem b) const {
    Elem m = meet_[a * size() + b];
    if (m < 0) return std::nullopt;
    return m;
}

std::vector<std::pair<Elem, Elem>> EventAlgebra::covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    const int n = size();
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            if (a == b || !leq(a, b)) continue;
            bool between = false;
            for (Elem c = 0; c < n && !between; ++c)
                between = c != a && c != b && leq(a, c) && leq(c, b);
            if (!between) out.emplace_back(a, b);
        }
    return out;
}

RawAlgebra EventAlgebra::to_raw() const {
    RawAlgebra raw;
    raw.name = name_;
    raw.elements = names_;
    raw.zero = names_[zero_];
    raw.one = names_[one_];
    for (auto [a, b] : covers()) raw.leq.emplace_back(names_[a], names_[b]);
    for (Elem e = 0; e < size(); ++e)
        if (e <= ortho_[e]) raw.ortho.emplace_back(names_[e], names_[ortho_[e]]);
    return raw;
}

EventAlgebra EventAlgebra::renamed(std::string name) const {
    EventAlgebra copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

namespace {

// Upper sets as bit rows, for least-upper-bound queries.
struct BitRows {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;

    BitRows(int n_, const std::function<bool(int, int)> &rel)
        : n(n_), words((n_ + 63) / 64), bits(static_cast<std::size_t>(n_) * words, 0) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rel(i, j)) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    const std::uint64_t *row(int i) const { return &bits[static_cast<std::size_t>(i) * words]; }
};

// Least element of row(a) & row(b) under `rows` (an up-set relation), or -1.
Elem least_common(const BitRows &rows, int a, int b) {
    const int w = rows.words;
    std::vector<std::uint64_t> common(w);
    for (int k = 0; k < w; ++k) common[k] = rows.row(a)[k] & rows.row(b)[k];
    for (int k = 0; k < w; ++k) {
        std::uint64_t word = common[k];
        while (word) {
            int z = k * 64 + __builtin_ctzll(word);
            word &= word - 1;
            const std::uint64_t *up = rows.row(z);
            bool least = true;
            for (int t = 0; t < w && least; ++t) least = (common[t] & ~up[t]) == 0;
            if (least) return z;
        }
    }
    return -1;
}

}  // namespace

void EventAlgebra::finish() {
    const int n = size();
    index_.clear();
    for (int i = 0; i < n; ++i) index_[names_[i]] = i;

    BitRows up(n, [&](int i, int j) { return leq(i, j); });
    BitRows down(n, [&](int i, int j) { return leq(j, i); });
    join_.assign(static_cast<std::size_t>(n) * n, -1);
    meet_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            join_[a * n + b] = join_[b * n + a] = least_common(up, a, b);
            meet_[a * n + b] = meet_[b * n + a] = least_common(down, a, b);
        }

    atoms_.clear();
    for (Elem e = 0; e < n; ++e) {
        if (e == zero_) continue;
        bool atom = true;
        for (Elem c = 0; c < n && atom; ++c)
            atom = !(c != zero_ && c != e && leq(c, e));
        if (atom) atoms_.push_back(e);
    }

    decomposition_.assign(n, {});
    for (Elem e = 0; e < n; ++e) {
        Elem cur = zero_;
        std::vector<Elem> parts;
        while (cur != e) {
            Elem pick = -1;
            for (Elem a : atoms_)
                if (leq(a, e) && leq(a, ortho_[cur]) &&
                    std::find(parts.begin(), parts.end(), a) == parts.end()) {
                    pick = a;
                    break;
                }
            if (pick < 0) break;
            auto j = join(cur, pick);
            if (!j) break;
            parts.push_back(pick);
            cur = *j;
        }
        decomposition_[e] = std::move(parts);
    }

    boolean_ = std::all_of(join_.begin(), join_.end(), [](Elem x) { return x >= 0; }) &&
               std::all_of(meet_.begin(), meet_.end(), [](Elem x) { return x >= 0; });
    for (Elem x = 0; x < n && boolean_; ++x)
        for (Elem y = 0; y < n && boolean_; ++y)
            for (Elem z = 0; z < n && boolean_; ++z)
                boolean_ = meet_[x * n + join_[y * n + z]] ==
                           join_[meet_[x * n + y] * n + meet_[x * n + z]];
}

namespace {

Violation make_violation(ViolationKind k, std::string cond, std::vector<std::string> w = {}) {
    return Violation{k, std::move(cond), std::move(w)};
}

bool subset_is_boolean(const EventAlgebra &L, const std::vector<Elem> &s) {
    std::vector<char> in(L.size(), 0);
    for (Elem e : s) in[e] = 1;
    for (Elem x : s)
        for (Elem y : s) {
            auto j = L.join(x, y);
            auto m = L.meet(x, y);
            if (!j || !m || !in[*j] || !in[*m]) return false;
        }
    for (Elem x : s)
        for (Elem y : s)
            for (Elem z : s) {
                Elem lhs = *L.meet(x, *L.join(y, z));
                Elem rhs = *L.join(*L.meet(x, y), *L.meet(x, z));
                if (lhs != rhs) return false;
            }
    return true;
}

}  // namespace

Checked<EventAlgebra> check_event_algebra(const RawAlgebra &raw) {
    std::vector<std::string> names = raw.elements;
    {
        std::set<std::string> seen;
        for (const auto &e : names)
            if (!seen.insert(e).second)
                return make_violation(ViolationKind::DuplicateElement, "elements", {e});
    }
    std::sort(names.begin(), names.end());
    std::unordered_map<std::string, Elem> idx;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) idx[names[i]] = i;
    auto lookup = [&](const std::string &id) -> std::optional<Elem> {
        auto it = idx.find(id);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    };

    auto z = lookup(raw.zero);
    auto o = lookup(raw.one);
    if (!z) return make_violation(ViolationKind::UnknownElement, "zero", {raw.zero});
    if (!o) return make_violation(ViolationKind::UnknownElement, "one", {raw.one});
    if (*z == *o) return make_violation(ViolationKind::DegenerateAlgebra, "zero = one", {raw.zero});

    const int n = static_cast<int>(names.size());
    EventAlgebra L;
    L.name_ = raw.name;
    L.names_ = names;
    L.zero_ = *z;
    L.one_ = *o;
    L.leq_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) L.leq_[i * n + i] = 1;
    for (const auto &[a, b] : raw.leq) {
        auto ia = lookup(a);
        auto ib = lookup(b);
        if (!ia) return make_violation(ViolationKind::UnknownElement, "leq", {a});
        if (!ib) return make_violation(ViolationKind::UnknownElement, "leq", {b});
        L.leq_[*ia * n + *ib] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (L.leq_[i * n + k])
                for (int j = 0; j < n; ++j)
                    if (L.leq_[k * n + j]) L.leq_[i * n + j] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (L.leq(i, j) && L.leq(j, i))
                return make_violation(ViolationKind::OrderCycle, "antisymmetry", {names[i], names[j]});
    for (int i = 0; i < n; ++i) {
        if (!L.leq(L.zero_, i))
            return make_violation(ViolationKind::BoundsViolated, "[a] 0 <= l", {names[i]});
        if (!L.leq(i, L.one_))
            return make_violation(ViolationKind::BoundsViolated, "[a] l <= 1", {names[i]});
    }

    L.ortho_.assign(n, -1);
    for (const auto &[a, b] : raw.ortho) {
        auto ia = lookup(a);
        auto ib = lookup(b);
        if (!ia) return make_violation(ViolationKind::UnknownElement, "ortho", {a});
        if (!ib) return make_violation(ViolationKind::UnknownElement, "ortho", {b});
        for (auto [x, y] : {std::pair{*ia, *ib}, std::pair{*ib, *ia}}) {
            if (L.ortho_[x] >= 0 && L.ortho_[x] != y)
                return make_violation(ViolationKind::OrthoNotInvolutive, "[b] l** = l",
                                      {names[x], names[L.ortho_[x]], names[y]});
            L.ortho_[x] = y;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (L.ortho_[i] < 0)
            return make_violation(ViolationKind::OrthoNotInvolutive, "[b] ortho undefined", {names[i]});
        if (L.ortho_[i] == i)
            return make_violation(ViolationKind::OrthoNotInvolutive, "[b] l* = l", {names[i]});
    }
    if (L.ortho_[L.zero_] != L.one_)
        return make_violation(ViolationKind::OrthoNotInvolutive, "0* = 1", {names[L.zero_]});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (L.leq(i, j) && !L.leq(L.ortho_[j], L.ortho_[i]))
                return make_violation(ViolationKind::OrthoNotAntitone, "[d] l <= l' => l'* <= l*",
                                      {names[i], names[j]});

    L.finish();

    for (int i = 0; i < n; ++i) {
        auto j = L.join(i, L.ortho_[i]);
        if (!j || *j != L.one_)
            return make_violation(ViolationKind::ComplementJoinFails, "[c] l v l* = 1",
                                  {names[i], names[L.ortho_[i]]});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (L.orthogonal(i, j) && !L.join(i, j))
                return make_violation(ViolationKind::MissingOrthogonalJoin, "[e] orthogonal join",
                                      {names[i], names[j]});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !L.leq(i, j) || i == L.zero_ || j == L.one_) continue;
            if (!compatible(L, i, j))
                return make_violation(ViolationKind::NotOrthomodular, "[f] l <= l' => compatible",
                                      {names[i], names[j]});
        }
    return L;
}

EventAlgebra validate_event_algebra(const RawAlgebra &raw) { return value(check_event_algebra(raw)); }

AlgebraRef make_algebra(const RawAlgebra &raw) {
    return std::make_shared<const EventAlgebra>(validate_event_algebra(raw));
}

const char *to_string(MorphismKind kind) {
    switch (kind) {
    case MorphismKind::QuantumHom: return "quantum-hom";
    case MorphismKind::BooleanHom: return "boolean-hom";
    case MorphismKind::Monic: return "monic";
    }
    return "?";
}

std::optional<MorphismKind> parse_kind(const std::string &s) {
    if (s == "quantum-hom" || s == "quantum") return MorphismKind::QuantumHom;
    if (s == "boolean-hom" || s == "boolean") return MorphismKind::BooleanHom;
    if (s == "monic") return MorphismKind::Monic;
    return std::nullopt;
}

bool AlgebraMorphism::injective() const {
    std::vector<Elem> sorted = map;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::vector<Elem> AlgebraMorphism::image() const {
    std::vector<Elem> img = map;
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
}

std::string AlgebraMorphism::graph_string() const {
    std::string out;
    for (Elem e = 0; e < static_cast<Elem>(map.size()); ++e) {
        if (e) out += ",";
        out += source->id(e) + ">" + target->id(map[e]);
    }
    return out;
}

Checked<AlgebraMorphism> check_morphism(const AlgebraRef &source, const AlgebraRef &target,
                                        std::vector<Elem> map, MorphismKind kind, std::string name) {
    const EventAlgebra &K = *source;
    const EventAlgebra &L = *target;
    if (static_cast<int>(map.size()) != K.size())
        return make_violation(ViolationKind::NotTotal, "map size");
    for (Elem k = 0; k < K.size(); ++k)
        if (map[k] < 0 || map[k] >= L.size())
            return make_violation(ViolationKind::NotTotal, "unmapped element", {K.id(k)});
    auto w = [&](Elem k) { return K.id(k) + "->" + L.id(map[k]); };
    if (map[K.one()] != L.one())
        return make_violation(ViolationKind::ConditionViolated, "[a] H(1) = 1", {w(K.one())});
    for (Elem k = 0; k < K.size(); ++k)
        if (map[K.ortho(k)] != L.ortho(map[k]))
            return make_violation(ViolationKind::ConditionViolated, "[b] H(k*) = H(k)*",
                                  {w(k), w(K.ortho(k))});
    for (Elem a = 0; a < K.size(); ++a)
        for (Elem b = 0; b < K.size(); ++b)
            if (K.leq(a, b) && !L.leq(map[a], map[b]))
                return make_violation(ViolationKind::ConditionViolated, "[c] monotone", {w(a), w(b)});
    for (Elem a = 0; a < K.size(); ++a)
        for (Elem b = a + 1; b < K.size(); ++b) {
            if (!K.orthogonal(a, b)) continue;
            Elem j = *K.join(a, b);
            auto lj = L.join(map[a], map[b]);
            if (!lj || *lj != map[j])
                return make_violation(ViolationKind::ConditionViolated, "[e] orthogonal join",
                                      {w(a), w(b), w(j)});
        }
    if (kind == MorphismKind::BooleanHom) {
        if (!K.is_boolean()) return make_violation(ViolationKind::NotBoolean, "source", {K.name()});
        if (!L.is_boolean()) return make_violation(ViolationKind::NotBoolean, "target", {L.name()});
        for (Elem a = 0; a < K.size(); ++a)
            for (Elem b = 0; b < K.size(); ++b) {
                if (*L.join(map[a], map[b]) != map[*K.join(a, b)])
                    return make_violation(ViolationKind::ConditionViolated, "boolean join", {w(a), w(b)});
                if (*L.meet(map[a], map[b]) != map[*K.meet(a, b)])
                    return make_violation(ViolationKind::ConditionViolated, "boolean meet", {w(a), w(b)});
            }
    }
    if (kind == MorphismKind::Monic) {
        for (Elem a = 0; a < K.size(); ++a)
            for (Elem b = a + 1; b < K.size(); ++b)
                if (map[a] == map[b])
                    return make_violation(ViolationKind::NotInjective, "monic", {w(a), w(b)});
    }
    AlgebraMorphism m{std::move(name), source, target, std::move(map), kind};
    if (m.name.empty()) m.name = m.graph_string();
    return m;
}

Checked<AlgebraMorphism> check_morphism(const AlgebraRef &source, const AlgebraRef &target,
                                        const RawMorphism &raw, MorphismKind kind) {
    std::vector<Elem> map(source->size(), -1);
    for (const auto &[s, t] : raw.map) {
        auto is = source->find(s);
        auto it = target->find(t);
        if (!is) return make_violation(ViolationKind::UnknownElement, "map source", {s});
        if (!it) return make_violation(ViolationKind::UnknownElement, "map target", {t});
        if (map[*is] >= 0 && map[*is] != *it)
            return make_violation(ViolationKind::NotTotal, "element mapped twice", {s});
        map[*is] = *it;
    }
    for (Elem k = 0; k < source->size(); ++k)
        if (map[k] < 0) return make_violation(ViolationKind::NotTotal, "unmapped element", {source->id(k)});
    return check_morphism(source, target, std::move(map), kind, raw.name);
}

AlgebraMorphism validate_morphism(const AlgebraRef &source, const AlgebraRef &target,
                                  std::vector<Elem> map, MorphismKind kind, std::string name) {
    return value(check_morphism(source, target, std::move(map), kind, std::move(name)));
}

AlgebraMorphism compose(const AlgebraMorphism &g, const AlgebraMorphism &f) {
    if (f.target.get() != g.source.get() && f.target->names() != g.source->names())
        throw std::invalid_argument("compose: " + f.name + " does not land in source of " + g.name);
    AlgebraMorphism out;
    out.source = f.source;
    out.target = g.target;
    out.map.resize(f.map.size());
    for (std::size_t i = 0; i < f.map.size(); ++i) out.map[i] = g.map[f.map[i]];
    out.kind = f.kind == g.kind ? f.kind : MorphismKind::QuantumHom;
    out.name = out.graph_string();
    return out;
}

AlgebraMorphism identity_morphism(const AlgebraRef &a) {
    std::vector<Elem> map(a->size());
    std::iota(map.begin(), map.end(), 0);
    AlgebraMorphism m{"id_" + a->name(), a, a, std::move(map), MorphismKind::Monic};
    return m;
}

std::vector<Elem> generated_subalgebra(const EventAlgebra &L, std::vector<Elem> seed) {
    std::vector<char> in(L.size(), 0);
    std::vector<Elem> members;
    auto add = [&](Elem e) {
        if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
        }
    };
    add(L.zero());
    add(L.one());
    for (Elem e : seed) add(e);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t before = members.size();
        for (std::size_t i = 0; i < members.size(); ++i) add(L.ortho(members[i]));
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (auto x = L.join(members[i], members[j])) add(*x);
                if (auto x = L.meet(members[i], members[j])) add(*x);
            }
        grew = members.size() != before;
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_boolean_subset(const EventAlgebra &L, const std::vector<Elem> &subset) {
    return subset_is_boolean(L, subset);
}

bool compatible(const EventAlgebra &L, Elem a, Elem b) {
    if (a < 0 || a >= L.size()) throw ElementNotFound(std::to_string(a));
    if (b < 0 || b >= L.size()) throw ElementNotFound(std::to_string(b));
    return subset_is_boolean(L, generated_subalgebra(L, {a, L.ortho(a), b, L.ortho(b)}));
}

bool compatible(const EventAlgebra &L, const std::string &a, const std::string &b) {
    return compatible(L, L.index(a), L.index(b));
}

EventAlgebra restrict_to(const EventAlgebra &L, const std::vector<Elem> &subset, std::string name) {
    RawAlgebra raw;
    raw.name = std::move(name);
    raw.zero = L.id(L.zero());
    raw.one = L.id(L.one());
    for (Elem e : subset) raw.elements.push_back(L.id(e));
    for (Elem a : subset)
        for (Elem b : subset)
            if (a != b && L.leq(a, b)) raw.leq.emplace_back(L.id(a), L.id(b));
    for (Elem a : subset)
        if (a <= L.ortho(a)) raw.ortho.emplace_back(L.id(a), L.id(L.ortho(a)));
    return validate_event_algebra(raw);
}

namespace {

// Cliques of pairwise orthogonal atoms whose join is 1, in increasing atom order.
std::vector<std::vector<Elem>> orthogonal_atom_partitions(const EventAlgebra &L) {
    std::vector<std::vector<Elem>> out;
    const auto &atoms = L.atoms();
    std::vector<Elem> chosen;
    std::function<void(std::size_t, Elem)> rec = [&](std::size_t from, Elem acc) {
        if (acc == L.one()) {
            out.push_back(chosen);
            return;
        }
        for (std::size_t i = from; i < atoms.size(); ++i) {
            Elem a = atoms[i];
            if (!L.leq(a, L.ortho(acc))) continue;
            auto j = L.join(acc, a);
            if (!j) continue;
            chosen.push_back(a);
            rec(i + 1, *j);
            chosen.pop_back();
        }
    };
    rec(0, L.zero());
    return out;
}

std::vector<Elem> joins_of_subsets(const EventAlgebra &L, const std::vector<Elem> &parts) {
    std::set<Elem> acc{L.zero()};
    for (Elem p : parts) {
        std::set<Elem> next = acc;
        for (Elem e : acc)
            if (auto j = L.join(e, p)) next.insert(*j);
        acc = std::move(next);
    }
    return {acc.begin(), acc.end()};
}

}  // namespace

std::vector<AlgebraMorphism> maximal_boolean_subalgebras(const AlgebraRef &L) {
    std::vector<std::vector<Elem>> blocks;
    for (const auto &partition : orthogonal_atom_partitions(*L)) {
        auto members = joins_of_subsets(*L, partition);
        if (subset_is_boolean(*L, members)) blocks.push_back(std::move(members));
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    std::vector<AlgebraMorphism> out;
    for (const auto &members : blocks) {
        std::string label = L->name() + "{";
        bool first = true;
        for (Elem a : L->atoms())
            if (std::binary_search(members.begin(), members.end(), a)) {
                label += (first ? "" : ",") + L->id(a);
                first = false;
            }
        label += "}";
        auto block = std::make_shared<const EventAlgebra>(restrict_to(*L, members, label));
        std::vector<Elem> map;
        for (Elem e = 0; e < block->size(); ++e) map.push_back(L->index(block->id(e)));
        out.push_back(validate_morphism(block, L, std::move(map), MorphismKind::Monic, "incl_" + label));
    }
    return out;
}

std::vector<AlgebraMorphism> enumerate_homomorphisms(const AlgebraRef &source, const AlgebraRef &target,
                                                     MorphismKind kind) {
    const EventAlgebra &K = *source;
    const EventAlgebra &L = *target;
    std::vector<AlgebraMorphism> out;
    if (kind == MorphismKind::BooleanHom && (!K.is_boolean() || !L.is_boolean())) return out;

    const auto &atoms = K.atoms();
    const int na = static_cast<int>(atoms.size());
    // Constraints that become checkable once atom i is assigned.
    std::vector<std::vector<int>> ortho_partners(na);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < i; ++j)
            if (K.orthogonal(atoms[i], atoms[j])) ortho_partners[i].push_back(j);
    std::vector<std::vector<std::vector<int>>> closing(na);
    for (const auto &partition : orthogonal_atom_partitions(K)) {
        std::vector<int> positions;
        for (Elem a : partition)
            positions.push_back(static_cast<int>(std::find(atoms.begin(), atoms.end(), a) - atoms.begin()));
        int last = *std::max_element(positions.begin(), positions.end());
        closing[last].push_back(std::move(positions));
    }

    std::vector<Elem> image(na, -1);
    std::function<void(int)> rec = [&](int i) {
        if (i == na) {
            std::vector<Elem> map(K.size(), L.zero());
            for (Elem e = 0; e < K.size(); ++e) {
                Elem acc = L.zero();
                for (Elem a : K.atom_decomposition(e)) {
                    auto pos = std::find(atoms.begin(), atoms.end(), a) - atoms.begin();
                    auto j = L.join(acc, image[pos]);
                    if (!j) return;
                    acc = *j;
                }
                map[e] = acc;
            }
            auto checked = check_morphism(source, target, std::move(map), kind);
            if (ok(checked)) out.push_back(std::get<AlgebraMorphism>(std::move(checked)));
            return;
        }
        for (Elem cand = 0; cand < L.size(); ++cand) {
            bool fine = true;
            for (int j : ortho_partners[i])
                if (!L.orthogonal(cand, image[j])) {
                    fine = false;
                    break;
                }
            if (!fine) continue;
            image[i] = cand;
            for (const auto &positions : closing[i]) {
                Elem acc = L.zero();
                for (int p : positions) {
                    auto j = L.join(acc, image[p]);
                    if (!j) {
                        fine = false;
                        break;
                    }
                    acc = *j;
                }
                if (!fine || acc != L.one()) {
                    fine = false;
                    break;
                }
            }
            if (fine) rec(i + 1);
        }
        image[i] = -1;
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const AlgebraMorphism &a, const AlgebraMorphism &b) {
        return a.map < b.map;
    });
    return out;
}

AlgebraRef two() {
    static const AlgebraRef instance = make_algebra(RawAlgebra{"2", {"0", "1"}, "0", "1", {{"0", "1"}}, {{"0", "1"}}});
    return instance;
}

AlgebraRef boolean_power(int atoms, const std::string &name) {
    if (atoms < 1 || atoms > 6) throw std::invalid_argument("boolean_power: 1..6 atoms");
    const unsigned full = (1u << atoms) - 1;
    auto label = [&](unsigned s) -> std::string {
        if (s == 0) return "0";
        if (s == full) return "1";
        std::string out;
        for (int i = 0; i < atoms; ++i)
            if (s & (1u << i)) out += (out.empty() ? "p" : "+p") + std::to_string(i + 1);
        return out;
    };
    RawAlgebra raw;
    raw.name = name.empty() ? "2^" + std::to_string(atoms) : name;
    raw.zero = "0";
    raw.one = "1";
    for (unsigned s = 0; s <= full; ++s) {
        raw.elements.push_back(label(s));
        if (s < (full ^ s)) raw.ortho.emplace_back(label(s), label(full ^ s));
        for (int i = 0; i < atoms; ++i)
            if (!(s & (1u << i))) raw.leq.emplace_back(label(s), label(s | (1u << i)));
    }
    return make_algebra(raw);
}

std::vector<AlgebraMorphism> two_valued_homomorphisms(const AlgebraRef &L) {
    return enumerate_homomorphisms(L, two(), MorphismKind::QuantumHom);
}

std::optional<std::vector<Elem>> find_isomorphism(const EventAlgebra &a, const EventAlgebra &b) {
    const int n = a.size();
    if (n != b.size() || a.atoms().size() != b.atoms().size()) return std::nullopt;
    auto profile = [](const EventAlgebra &x, Elem e) {
        int below = 0, above = 0;
        for (Elem f = 0; f < x.size(); ++f) {
            below += x.leq(f, e);
            above += x.leq(e, f);
        }
        return std::pair{below, above};
    };
    std::vector<std::pair<int, int>> pa(n), pb(n);
    for (Elem e = 0; e < n; ++e) {
        pa[e] = profile(a, e);
        pb[e] = profile(b, e);
    }
    std::vector<Elem> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Elem> f(n, -1);
    std::vector<char> used(n, 0);
    std::function<bool(int)> rec = [&](int pos) -> bool {
        if (pos == n) return true;
        Elem x = order[pos];
        if (f[x] >= 0) return rec(pos + 1);
        for (Elem y = 0; y < n; ++y) {
            if (used[y] || pa[x] != pb[y]) continue;
            Elem xo = a.ortho(x), yo = b.ortho(y);
            if (f[xo] >= 0 && f[xo] != yo) continue;
            if (f[xo] < 0 && used[yo] && yo != y) continue;
            if (xo == x) continue;
            bool fine = true;
            auto consistent = [&](Elem s, Elem t) {
                for (Elem z = 0; z < n && fine; ++z)
                    if (f[z] >= 0)
                        fine = a.leq(s, z) == b.leq(t, f[z]) && a.leq(z, s) == b.leq(f[z], t);
            };
            consistent(x, y);
            if (fine && f[xo] < 0) consistent(xo, yo);
            if (!fine) continue;
            bool set_o = f[xo] < 0;
            f[x] = y;
            used[y] = 1;
            if (set_o) {
                f[xo] = yo;
                used[yo] = 1;
            }
            if (rec(pos + 1)) return true;
            f[x] = -1;
            used[y] = 0;
            if (set_o) {
                f[xo] = -1;
                used[yo] = 0;
            }
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return f;
}

}  // namespace qlogic
