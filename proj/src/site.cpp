#include "qlogic/site.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qlogic {

namespace {

std::string arrow_key(int source, int target, const std::vector<Elem> &map) {
    std::string key;
    key.reserve(8 + map.size() * sizeof(Elem));
    auto put = [&](int v) { key.append(reinterpret_cast<const char *>(&v), sizeof v); };
    put(source);
    put(target);
    for (Elem e : map) put(e);
    return key;
}

/// "[x|y|...]": the atoms of a subalgebra, named by their ids in the ambient.
std::string label_of(const EventAlgebra &sub) {
    std::string out = "[";
    for (std::size_t i = 0; i < sub.atoms().size(); ++i) out += (i ? "|" : "") + sub.id(sub.atoms()[i]);
    return out + "]";
}

}  // namespace

BooleanSite BooleanSite::make(std::string name, std::vector<SiteObject> objects,
                              const std::vector<std::tuple<int, int, std::vector<Elem>>> &generators,
                              AlgebraRef ambient) {
    BooleanSite s;
    s.name_ = std::move(name);
    s.ambient_ = std::move(ambient);
    s.objects_ = std::move(objects);
    for (const auto &o : s.objects_)
        if (!o.algebra->is_boolean()) throw ViolationError({ViolationKind::NotBoolean, "site object", {o.name}});

    using Raw = std::tuple<int, int, std::vector<Elem>>;
    std::vector<Raw> raw;
    std::unordered_map<std::string, int> seen;
    std::vector<std::vector<int>> ends_at(s.object_count()), starts_at(s.object_count());
    auto add = [&](int src, int tgt, std::vector<Elem> map) {
        auto key = arrow_key(src, tgt, map);
        if (seen.count(key)) return;
        validate_morphism(s.objects_[src].algebra, s.objects_[tgt].algebra, map, MorphismKind::BooleanHom);
        int id = static_cast<int>(raw.size());
        seen.emplace(std::move(key), id);
        raw.emplace_back(src, tgt, std::move(map));
        ends_at[tgt].push_back(id);
        starts_at[src].push_back(id);
    };
    auto composite = [&](int g, int f) {
        const auto &fm = std::get<2>(raw[f]);
        const auto &gm = std::get<2>(raw[g]);
        std::vector<Elem> m(fm.size());
        for (std::size_t i = 0; i < fm.size(); ++i) m[i] = gm[fm[i]];
        return m;
    };
    for (int i = 0; i < s.object_count(); ++i) add(i, i, identity_morphism(s.objects_[i].algebra).map);
    for (const auto &[src, tgt, map] : generators) add(src, tgt, map);
    // Composition closure: each arrow is composed with every arrow before it,
    // on both sides; arrows found later are handled when their turn comes.
    for (int done = 0; done < static_cast<int>(raw.size()); ++done) {
        int src = std::get<0>(raw[done]), tgt = std::get<1>(raw[done]);
        for (std::size_t k = 0; k < ends_at[src].size(); ++k) {
            int f = ends_at[src][k];
            if (f <= done) add(std::get<0>(raw[f]), tgt, composite(done, f));
        }
        for (std::size_t k = 0; k < starts_at[tgt].size(); ++k) {
            int g = starts_at[tgt][k];
            if (g <= done) add(src, std::get<1>(raw[g]), composite(g, done));
        }
    }
    std::sort(raw.begin(), raw.end());

    s.identity_.assign(s.object_count(), -1);
    s.into_.assign(s.object_count(), {});
    s.from_.assign(s.object_count(), {});
    std::map<std::pair<int, int>, int> parallel;
    for (auto &[src, tgt, map] : raw) {
        int a = s.arrow_count();
        const auto &S = s.objects_[src];
        const auto &T = s.objects_[tgt];
        bool is_identity = src == tgt && map == identity_morphism(S.algebra).map;
        std::string nm = is_identity ? "id" + S.name
                                     : S.name + "->" + T.name + "#" + std::to_string(parallel[{src, tgt}]++);
        AlgebraMorphism hom{nm, S.algebra, T.algebra, map, MorphismKind::BooleanHom};
        s.lookup_.emplace(arrow_key(src, tgt, map), a);
        s.arrows_.push_back({nm, src, tgt, std::move(hom)});
        if (is_identity) s.identity_[src] = a;
        s.into_[tgt].push_back(a);
        s.from_[src].push_back(a);
    }
    return s;
}

int BooleanSite::object_index(const std::string &name) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects_[i].name == name) return i;
    throw ObjectNotInSite(name);
}

std::optional<int> BooleanSite::find_arrow(int source, int target, const std::vector<Elem> &map) const {
    auto it = lookup_.find(arrow_key(source, target, map));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

int BooleanSite::compose(int g, int f) const {
    const SiteArrow &F = arrows_.at(f);
    const SiteArrow &G = arrows_.at(g);
    if (F.target != G.source) throw std::invalid_argument("compose: arrows not composable");
    std::vector<Elem> m(F.hom.map.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = G.hom.map[F.hom.map[i]];
    auto a = find_arrow(F.source, G.target, m);
    if (!a) throw std::logic_error("site not closed under composition: " + G.name + " o " + F.name);
    return *a;
}

BooleanSite BooleanSite::without_object(const std::string &object_name) const {
    int drop = object_index(object_name);
    std::vector<SiteObject> objs;
    std::vector<int> renumber(object_count(), -1);
    for (int i = 0; i < object_count(); ++i)
        if (i != drop) {
            renumber[i] = static_cast<int>(objs.size());
            objs.push_back(objects_[i]);
        }
    std::vector<std::tuple<int, int, std::vector<Elem>>> gens;
    for (const auto &a : arrows_)
        if (a.source != drop && a.target != drop) gens.emplace_back(renumber[a.source], renumber[a.target], a.hom.map);
    return make(name_ + "-" + object_name, std::move(objs), gens, ambient_);
}

bool BooleanSite::coefficient_functorial() const {
    for (int o = 0; o < object_count(); ++o)
        if (arrows_[identity_[o]].hom.map != identity_morphism(objects_[o].algebra).map) return false;
    for (int f = 0; f < arrow_count(); ++f)
        for (int g : from_[arrows_[f].target]) {
            const auto &composite = arrows_[compose(g, f)].hom.map;
            const auto &fm = arrows_[f].hom.map;
            const auto &gm = arrows_[g].hom.map;
            for (std::size_t i = 0; i < fm.size(); ++i)
                if (composite[i] != gm[fm[i]]) return false;
        }
    return true;
}

namespace {

struct EmbeddedObjects {
    std::vector<SiteObject> objects;
    std::vector<std::vector<Elem>> images;  // sorted ambient elements per object
};

SiteObject embedded_object(const AlgebraRef &L, const std::vector<Elem> &image, std::string name = {}) {
    auto sub = restrict_to(*L, image, "");
    if (name.empty()) name = label_of(sub);
    auto alg = std::make_shared<const EventAlgebra>(sub.renamed(name));
    std::vector<Elem> map;
    for (Elem e = 0; e < alg->size(); ++e) map.push_back(L->index(alg->id(e)));
    return {name, alg, validate_morphism(alg, L, map, MorphismKind::Monic, "emb" + name)};
}

EmbeddedObjects default_objects(const AlgebraRef &L) {
    EmbeddedObjects out;
    std::vector<std::vector<Elem>> blocks;
    for (const auto &m : maximal_boolean_subalgebras(L)) blocks.push_back(m.image());
    std::set<std::vector<Elem>> meets;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            std::vector<Elem> common;
            std::set_intersection(blocks[i].begin(), blocks[i].end(), blocks[j].begin(), blocks[j].end(),
                                  std::back_inserter(common));
            if (is_boolean_subset(*L, common)) meets.insert(common);
        }
    for (const auto &b : blocks) meets.erase(b);
    out.images = blocks;
    out.images.insert(out.images.end(), meets.begin(), meets.end());
    for (const auto &img : out.images) out.objects.push_back(embedded_object(L, img));
    return out;
}

/// Boolean homs between every ordered pair of objects, optionally only those
/// commuting with the embeddings (the inclusions).
std::vector<std::tuple<int, int, std::vector<Elem>>> arrows_between(const std::vector<SiteObject> &objects,
                                                                    bool inclusions_only) {
    std::vector<std::tuple<int, int, std::vector<Elem>>> gens;
    for (int s = 0; s < static_cast<int>(objects.size()); ++s)
        for (int t = 0; t < static_cast<int>(objects.size()); ++t) {
            const auto &S = objects[s];
            const auto &T = objects[t];
            if (inclusions_only) {
                std::vector<Elem> map;
                bool inside = true;
                for (Elem e = 0; e < S.algebra->size() && inside; ++e) {
                    auto hit = T.algebra->find(S.algebra->id(e));
                    inside = hit.has_value();
                    if (inside) map.push_back(*hit);
                }
                if (inside && ok(check_morphism(S.algebra, T.algebra, map, MorphismKind::BooleanHom)))
                    gens.emplace_back(s, t, std::move(map));
                continue;
            }
            for (auto &h : enumerate_homomorphisms(S.algebra, T.algebra, MorphismKind::BooleanHom))
                gens.emplace_back(s, t, std::move(h.map));
        }
    return gens;
}

/// All Boolean subalgebras of a Boolean algebra, one per partition of its atoms.
std::vector<std::vector<Elem>> boolean_subalgebras(const EventAlgebra &B) {
    const auto &atoms = B.atoms();
    std::vector<std::vector<Elem>> out;
    std::vector<int> part(atoms.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == atoms.size()) {
            std::vector<Elem> blocks(used, B.zero());
            for (std::size_t k = 0; k < atoms.size(); ++k) blocks[part[k]] = *B.join(blocks[part[k]], atoms[k]);
            std::set<Elem> members{B.zero()};
            for (Elem b : blocks) {
                std::set<Elem> next = members;
                for (Elem m : members) next.insert(*B.join(m, b));
                members = std::move(next);
            }
            out.emplace_back(members.begin(), members.end());
            return;
        }
        for (int p = 0; p <= used; ++p) {
            part[i] = p;
            rec(i + 1, std::max(used, p + 1));
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SiteRef default_site(const AlgebraRef &L) {
    auto objs = default_objects(L);
    auto gens = arrows_between(objs.objects, false);
    return std::make_shared<const BooleanSite>(BooleanSite::make("default(" + L->name() + ")", objs.objects, gens, L));
}

SiteRef inclusion_site(const AlgebraRef &L) {
    auto objs = default_objects(L);
    auto gens = arrows_between(objs.objects, true);
    return std::make_shared<const BooleanSite>(BooleanSite::make("inclusion(" + L->name() + ")", objs.objects, gens, L));
}

SiteRef custom_site(const AlgebraRef &L, const std::string &name,
                    const std::vector<std::pair<std::string, std::vector<Elem>>> &objects, bool inclusions_only) {
    std::vector<SiteObject> objs;
    std::set<std::string> names;
    for (const auto &[id, elems] : objects) {
        if (!names.insert(id).second) throw std::invalid_argument("custom_site: duplicate object " + id);
        auto img = elems;
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (!is_boolean_subset(*L, img))
            throw ViolationError({ViolationKind::NotBoolean, "site object " + id, {id}});
        objs.push_back(embedded_object(L, img, id));
    }
    auto gens = arrows_between(objs, inclusions_only);
    return std::make_shared<const BooleanSite>(BooleanSite::make(name, objs, gens, L));
}

SiteRef single_object_site(const AlgebraRef &B) {
    if (!B->is_boolean()) throw ViolationError({ViolationKind::NotBoolean, "site object", {B->name()}});
    SiteObject o{B->name(), B, identity_morphism(B)};
    auto gens = arrows_between({o}, false);
    return std::make_shared<const BooleanSite>(BooleanSite::make("single(" + B->name() + ")", {o}, gens, B));
}

SiteRef subalgebra_site(const BooleanSite &site) {
    const AlgebraRef &L = site.ambient();
    if (!L) throw std::invalid_argument("subalgebra_site: site has no ambient algebra");
    std::set<std::vector<Elem>> images;
    for (const auto &o : site.objects()) {
        if (!o.embedding) throw std::invalid_argument("subalgebra_site: object without embedding: " + o.name);
        for (const auto &sub : boolean_subalgebras(*o.algebra)) {
            std::vector<Elem> img;
            for (Elem e : sub) img.push_back((*o.embedding)(e));
            std::sort(img.begin(), img.end());
            images.insert(img);
        }
    }
    std::vector<std::vector<Elem>> ordered(images.begin(), images.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto &a, const auto &b) { return a.size() > b.size(); });
    std::vector<SiteObject> objects;
    for (const auto &img : ordered) objects.push_back(embedded_object(L, img));
    auto gens = arrows_between(objects, true);
    return std::make_shared<const BooleanSite>(BooleanSite::make("sub(" + site.name() + ")", objects, gens, L));
}

int Presheaf::section_count() const {
    int n = 0;
    for (const auto &s : sections) n += static_cast<int>(s.size());
    return n;
}

int Presheaf::find_section(int object, const std::string &name) const {
    const auto &s = sections.at(object);
    auto it = std::find(s.begin(), s.end(), name);
    return it == s.end() ? -1 : static_cast<int>(it - s.begin());
}

bool is_functorial(const Presheaf &P) {
    const BooleanSite &S = *P.site;
    for (int o = 0; o < S.object_count(); ++o)
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p)
            if (P.restrict(S.identity(o), p) != p) return false;
    // p . (v w) = (p . v) . w for w: D -> C, v: C -> B.
    for (int w = 0; w < S.arrow_count(); ++w)
        for (int v : S.arrows_from(S.arrow(w).target)) {
            int vw = S.compose(v, w);
            int B = S.arrow(v).target;
            for (int p = 0; p < static_cast<int>(P.sections[B].size()); ++p)
                if (P.restrict(vw, p) != P.restrict(w, P.restrict(v, p))) return false;
        }
    return true;
}

bool is_natural(const Presheaf &P, const Presheaf &Q, const NaturalTransformation &tau) {
    const BooleanSite &S = *P.site;
    for (int a = 0; a < S.arrow_count(); ++a) {
        int B = S.arrow(a).target, C = S.arrow(a).source;
        for (int p = 0; p < static_cast<int>(P.sections[B].size()); ++p)
            if (tau.components[C][P.restrict(a, p)] != Q.restrict(a, tau.components[B][p])) return false;
    }
    return true;
}

void for_each_natural_transformation(const Presheaf &P, const Presheaf &Q,
                                     const std::function<bool(const NaturalTransformation &)> &visit) {
    if (P.site.get() != Q.site.get()) throw SiteMismatch();
    const BooleanSite &S = *P.site;
    const int n = S.object_count();
    for (int o = 0; o < n; ++o)
        if (!P.sections[o].empty() && Q.sections[o].empty()) return;

    // Sections of P as nodes; an edge p -> p.a for every arrow a out of p's object.
    std::vector<int> offset(n + 1, 0);
    for (int o = 0; o < n; ++o) offset[o + 1] = offset[o] + static_cast<int>(P.sections[o].size());
    const int total = offset[n];
    std::vector<int> object_of(total);
    for (int o = 0; o < n; ++o)
        for (int i = offset[o]; i < offset[o + 1]; ++i) object_of[i] = o;
    std::vector<std::vector<int>> edges(total);
    for (int a = 0; a < S.arrow_count(); ++a) {
        int T = S.arrow(a).target, C = S.arrow(a).source;
        for (int p = 0; p < static_cast<int>(P.sections[T].size()); ++p) {
            int from = offset[T] + p, to = offset[C] + P.restrict(a, p);
            if (from != to) edges[from].push_back(to);
        }
    }

    // Strongly connected components (iterative Tarjan). Every node lies below
    // a source component, so choosing values at one node per source component
    // determines the whole transformation.
    std::vector<int> component(total, -1), sources;
    {
        std::vector<int> index(total, -1), low(total, 0), stack, finished;
        std::vector<char> on_stack(total, 0);
        std::vector<std::pair<int, std::size_t>> frames;
        int counter = 0, components = 0;
        for (int root = 0; root < total; ++root) {
            if (index[root] >= 0) continue;
            frames.emplace_back(root, 0);
            while (!frames.empty()) {
                auto &[v, next] = frames.back();
                if (next == 0) {
                    index[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                }
                if (next < edges[v].size()) {
                    int w = edges[v][next++];
                    if (index[w] < 0) frames.emplace_back(w, 0);
                    else if (on_stack[w]) low[v] = std::min(low[v], index[w]);
                    continue;
                }
                if (low[v] == index[v]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        component[w] = components;
                    } while (w != v);
                    finished.push_back(v);
                    ++components;
                }
                int done = v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
            }
        }
        std::vector<char> has_parent(components, 0);
        for (int v = 0; v < total; ++v)
            for (int w : edges[v])
                if (component[w] != component[v]) has_parent[component[w]] = 1;
        for (int root : finished)
            if (!has_parent[component[root]]) sources.push_back(root);
    }

    // For each source and each candidate value, the values forced on its
    // downset, or nothing when the candidate contradicts itself.
    struct Source {
        std::vector<int> down;
        std::vector<std::vector<int>> rows;
    };
    std::vector<Source> table(sources.size());
    std::vector<int> scratch(total, -1);
    for (std::size_t s = 0; s < sources.size(); ++s) {
        const int root = sources[s], o = object_of[root];
        auto &down = table[s].down;
        down.push_back(root);
        scratch[root] = 0;
        for (std::size_t i = 0; i < down.size(); ++i)
            for (int w : edges[down[i]])
                if (scratch[w] < 0) {
                    scratch[w] = 0;
                    down.push_back(w);
                }
        for (int node : down) scratch[node] = -1;
        std::sort(down.begin(), down.end());

        for (int q = 0; q < static_cast<int>(Q.sections[o].size()); ++q) {
            std::vector<int> visited{root};
            scratch[root] = q;
            bool fine = true;
            for (std::size_t i = 0; i < visited.size() && fine; ++i) {
                const int node = visited[i], D = object_of[node], p = node - offset[D], v = scratch[node];
                for (int a : S.arrows_into(D)) {
                    const int C = S.arrow(a).source;
                    const int below = offset[C] + P.restrict(a, p), want = Q.restrict(a, v);
                    if (scratch[below] < 0) {
                        scratch[below] = want;
                        visited.push_back(below);
                    } else if (scratch[below] != want) {
                        fine = false;
                        break;
                    }
                }
            }
            if (fine) {
                std::vector<int> row;
                row.reserve(down.size());
                for (int node : down) row.push_back(scratch[node]);
                table[s].rows.push_back(std::move(row));
            }
            for (int node : visited) scratch[node] = -1;
        }
        if (table[s].rows.empty()) return;
    }

    // Take sources in an order where each shares as much of its downset as
    // possible with those before it, so disagreements surface early.
    std::vector<std::size_t> order;
    {
        std::vector<char> covered(total, 0), used(sources.size(), 0);
        for (std::size_t step = 0; step < sources.size(); ++step) {
            std::size_t best = 0;
            long best_overlap = -1;
            for (std::size_t s = 0; s < sources.size(); ++s) {
                if (used[s]) continue;
                long overlap = 0;
                for (int node : table[s].down) overlap += covered[node];
                if (overlap > best_overlap) best_overlap = overlap, best = s;
            }
            used[best] = 1;
            order.push_back(best);
            for (int node : table[best].down) covered[node] = 1;
        }
    }

    std::vector<int> value(total, -1);
    NaturalTransformation tau;
    tau.components.resize(n);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == order.size()) {
            for (int o = 0; o < n; ++o) tau.components[o].assign(value.begin() + offset[o], value.begin() + offset[o + 1]);
            stop = !visit(tau);
            return;
        }
        const Source &src = table[order[depth]];
        for (const auto &row : src.rows) {
            if (stop) return;
            bool agrees = true;
            for (std::size_t i = 0; i < row.size() && agrees; ++i)
                agrees = value[src.down[i]] < 0 || value[src.down[i]] == row[i];
            if (!agrees) continue;
            std::vector<int> fresh;
            for (std::size_t i = 0; i < row.size(); ++i)
                if (value[src.down[i]] < 0) {
                    value[src.down[i]] = row[i];
                    fresh.push_back(src.down[i]);
                }
            rec(depth + 1);
            for (int node : fresh) value[node] = -1;
        }
    };
    rec(0);
}

std::vector<NaturalTransformation> natural_transformations(const Presheaf &P, const Presheaf &Q) {
    std::vector<NaturalTransformation> out;
    for_each_natural_transformation(P, Q, [&](const NaturalTransformation &t) {
        out.push_back(t);
        return true;
    });
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.components < b.components; });
    return out;
}

Presheaf yoneda(const SiteRef &site, int object) {
    const BooleanSite &S = *site;
    if (object < 0 || object >= S.object_count()) throw ObjectNotInSite(std::to_string(object));
    Presheaf P;
    P.site = site;
    P.sections.assign(S.object_count(), {});
    std::vector<int> position(S.arrow_count(), -1);
    for (int a : S.arrows_into(object)) {
        int C = S.arrow(a).source;
        position[a] = static_cast<int>(P.sections[C].size());
        P.sections[C].push_back(S.arrow(a).name);
    }
    std::vector<std::vector<int>> by_object(S.object_count());
    for (int a : S.arrows_into(object)) by_object[S.arrow(a).source].push_back(a);
    P.restriction.assign(S.arrow_count(), {});
    for (int v = 0; v < S.arrow_count(); ++v) {
        int C = S.arrow(v).target;
        for (int f : by_object[C]) P.restriction[v].push_back(position[S.compose(f, v)]);
    }
    return P;
}

Presheaf yoneda(const SiteRef &site, const std::string &object_name) {
    return yoneda(site, site->object_index(object_name));
}

Presheaf empty_presheaf(const SiteRef &site) {
    Presheaf P;
    P.site = site;
    P.sections.assign(site->object_count(), {});
    P.restriction.assign(site->arrow_count(), {});
    return P;
}

int ElementsCategory::object_index(int site_object, int section) const {
    for (int i = 0; i < static_cast<int>(objects.size()); ++i)
        if (objects[i].site_object == site_object && objects[i].section == section) return i;
    return -1;
}

bool ElementsCategory::is_terminal(int object) const {
    std::vector<int> count(objects.size(), 0);
    for (const auto &a : arrows)
        if (a.target == object) ++count[a.source];
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

std::optional<int> ElementsCategory::terminal() const {
    for (int t = 0; t < static_cast<int>(objects.size()); ++t)
        if (is_terminal(t)) return t;
    return std::nullopt;
}

ElementsCategory elements_category(const Presheaf &P) {
    const BooleanSite &S = *P.site;
    ElementsCategory E;
    std::vector<int> base(S.object_count(), 0);
    for (int o = 0; o < S.object_count(); ++o) {
        base[o] = static_cast<int>(E.objects.size());
        for (int p = 0; p < static_cast<int>(P.sections[o].size()); ++p) E.objects.push_back({o, p});
    }
    for (int a = 0; a < S.arrow_count(); ++a) {
        int B = S.arrow(a).target, C = S.arrow(a).source;
        for (int p = 0; p < static_cast<int>(P.sections[B].size()); ++p)
            E.arrows.push_back({base[C] + P.restrict(a, p), base[B] + p, a});
    }
    return E;
}

bool projection_functorial(const Presheaf &P, const ElementsCategory &E) {
    const BooleanSite &S = *P.site;
    std::set<std::tuple<int, int, int>> present;
    for (const auto &a : E.arrows) present.emplace(a.source, a.target, a.site_arrow);
    for (int x = 0; x < static_cast<int>(E.objects.size()); ++x)
        if (!present.count({x, x, S.identity(E.objects[x].site_object)})) return false;
    std::vector<std::vector<int>> out_of(E.objects.size());
    for (int i = 0; i < static_cast<int>(E.arrows.size()); ++i) out_of[E.arrows[i].source].push_back(i);
    for (const auto &f : E.arrows)
        for (int gi : out_of[f.target]) {
            const auto &g = E.arrows[gi];
            if (!present.count({f.source, g.target, S.compose(g.site_arrow, f.site_arrow)})) return false;
        }
    return true;
}

}  // namespace qlogic
