// qlogic: command-line front end for the event-algebra toolkit.
//
// Every command prints a short human summary followed by a flat block of
// `key = value` lines. Exit status: 0 all verdicts hold, 1 a verdict fails,
// 2 usage error, 3 I/O error.

#include "qlogic/classifier.hpp"
#include "qlogic/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace qlogic;
namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kVerdictFail = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void say(const std::string &line) { human_.push_back(line); }
    void set(const std::string &key, const std::string &value) { kv_.emplace_back(key, value); }
    void set(const std::string &key, std::size_t value) { set(key, std::to_string(value)); }
    void set(const std::string &key, int value) { set(key, std::to_string(value)); }
    void set(const std::string &key, bool value) { set(key, std::string(value ? "true" : "false")); }
    void verdict(const std::string &key, bool value) {
        set("verdict." + key, value);
        passed_ = passed_ && value;
    }
    void artifact(const std::string &path) { artifacts_.push_back(path); }
    bool passed() const { return passed_; }

    std::string render() const {
        std::ostringstream os;
        os << "qlogic " << command_ << "\n";
        for (const auto &h : human_) os << "  " << h << "\n";
        os << "\ncommand = " << command_ << "\n";
        for (const auto &[k, v] : kv_) os << k << " = " << v << "\n";
        for (std::size_t i = 0; i < artifacts_.size(); ++i) os << "artifact." << i << " = " << artifacts_[i] << "\n";
        os << "status = " << (passed_ ? "pass" : "fail") << "\n";
        return os.str();
    }

private:
    std::string command_;
    std::vector<std::string> human_;
    std::vector<std::pair<std::string, std::string>> kv_;
    std::vector<std::string> artifacts_;
    bool passed_ = true;
};

struct Common {
    std::string site = "default";
    std::string out;
    std::string dot;
    int max_elements = 64;
};

std::string read_input(const std::string &path) {
    if (!fs::exists(path)) throw IoError("no such file: " + path);
    try {
        return read_file(path);
    } catch (const std::ios_base::failure &e) {
        throw IoError(e.what());
    }
}

void write_output(const fs::path &path, const std::string &text) {
    try {
        write_file(path, text);
    } catch (const std::exception &e) {
        throw IoError(e.what());
    }
}

AlgebraRef load(const std::string &path, const Common &c) {
    auto L = make_algebra(parse_raw_algebra(read_input(path)));
    if (L->size() > c.max_elements)
        throw UsageError(path + " has " + std::to_string(L->size()) + " elements; --max-elements is " +
                         std::to_string(c.max_elements));
    return L;
}

SiteRef resolve_site(const AlgebraRef &L, const Common &c) {
    if (c.site == "default") return default_site(L);
    if (c.site == "inclusion") return inclusion_site(L);
    if (c.site == "single") return single_object_site(L);
    return build_site(parse_site(read_input(c.site)), L);
}

std::vector<Elem> parse_ids(const AlgebraRef &A, const std::string &list) {
    std::vector<Elem> out;
    std::stringstream ss(list);
    std::string id;
    while (std::getline(ss, id, ','))
        if (!id.empty()) out.push_back(A->index(id));
    return out;
}

std::string join_ids(const EventAlgebra &A, const std::vector<Elem> &elems) {
    std::string s;
    for (std::size_t i = 0; i < elems.size(); ++i) s += (i ? " " : "") + A.id(elems[i]);
    return s;
}

void maybe_dot(Report &r, const Common &c, const EventAlgebra &A, const std::set<Elem> &marked = {}) {
    if (c.dot.empty()) return;
    write_output(c.dot, emit_dot(A, marked));
    r.artifact(c.dot);
}

void maybe_out(Report &r, const Common &c, const std::string &name, const std::string &text) {
    if (c.out.empty()) return;
    auto path = fs::path(c.out) / name;
    write_output(path, text);
    r.artifact(path.string());
}

void set_iso(Report &r, const std::string &prefix, const IsoVerdict &v) {
    r.set(prefix + ".injective", v.injective);
    r.set(prefix + ".surjective", v.surjective);
    r.set(prefix + ".structure_preserving", v.structure_preserving);
}

// ---- commands ---------------------------------------------------------------

void cmd_validate(Report &r, const Common &c, const std::string &file, const std::string &from, const std::string &to) {
    auto text = read_input(file);
    if (text.find("@hom") != std::string::npos && text.find("@algebra") == std::string::npos) {
        if (from.empty() || to.empty()) throw UsageError("validating a morphism needs --from and --to algebras");
        auto doc = parse_morphism(text);
        auto K = load(from, c), L = load(to, c);
        auto checked = check_morphism(K, L, doc.raw, MorphismKind::QuantumHom);
        r.set("morphism.name", doc.raw.name);
        if (!ok(checked)) {
            r.say("not a quantum homomorphism: " + violation(checked).message());
            r.set("violation.kind", std::string(to_string(violation(checked).kind)));
            r.verdict("valid", false);
            return;
        }
        const auto &m = std::get<AlgebraMorphism>(checked);
        r.say("quantum homomorphism " + K->name() + " -> " + L->name());
        r.set("morphism.injective", m.injective());
        r.verdict("valid", true);
        return;
    }
    auto raw = parse_raw_algebra(text);
    if (static_cast<int>(raw.elements.size()) > c.max_elements)
        throw UsageError(file + " has " + std::to_string(raw.elements.size()) + " elements; --max-elements is " +
                         std::to_string(c.max_elements));
    auto checked = check_event_algebra(raw);
    if (!ok(checked)) {
        r.say("invalid: " + violation(checked).message());
        r.set("violation.kind", std::string(to_string(violation(checked).kind)));
        r.verdict("valid", false);
        return;
    }
    const auto &L = std::get<EventAlgebra>(checked);
    r.say(L.name() + ": " + std::to_string(L.size()) + " elements, " + (L.is_boolean() ? "Boolean" : "not Boolean"));
    r.set("algebra.name", L.name());
    r.set("algebra.size", L.size());
    r.set("algebra.atoms", L.atoms().size());
    r.set("algebra.boolean", L.is_boolean());
    r.verdict("valid", true);
    maybe_dot(r, c, L);
    maybe_out(r, c, "algebra.qea", serialize_algebra(L));
}

void cmd_blocks(Report &r, const Common &c, const std::string &file) {
    auto L = load(file, c);
    auto blocks = maximal_boolean_subalgebras(L);
    r.say(std::to_string(blocks.size()) + " blocks");
    r.set("blocks.count", blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        r.set("block." + std::to_string(i), join_ids(*L, blocks[i].image()));
}

void cmd_homs(Report &r, const Common &c, const std::string &src, const std::string &tgt, const std::string &kind_name) {
    auto kind = parse_kind(kind_name);
    if (!kind) throw UsageError("unknown kind '" + kind_name + "'");
    auto K = load(src, c), L = load(tgt, c);
    auto homs = enumerate_homomorphisms(K, L, *kind);
    r.say(std::to_string(homs.size()) + " " + to_string(*kind) + " maps " + K->name() + " -> " + L->name());
    r.set("homs.kind", std::string(to_string(*kind)));
    r.set("homs.count", homs.size());
    for (std::size_t i = 0; i < homs.size(); ++i) r.set("hom." + std::to_string(i), homs[i].graph_string());
    if (!c.out.empty())
        for (std::size_t i = 0; i < homs.size(); ++i)
            maybe_out(r, c, "hom" + std::to_string(i) + ".qhom", serialize_morphism(homs[i]));
}

void cmd_site(Report &r, const Common &c, const std::string &file) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    r.say(S->name() + ": " + std::to_string(S->object_count()) + " objects, " + std::to_string(S->arrow_count()) +
          " arrows");
    r.set("site.name", S->name());
    r.set("site.objects", S->object_count());
    r.set("site.arrows", S->arrow_count());
    for (int o = 0; o < S->object_count(); ++o)
        r.set("object." + std::to_string(o), S->object(o).name + " " + std::to_string(S->object(o).algebra->size()));
    r.verdict("site.functorial", S->coefficient_functorial());
}

void cmd_colimit(Report &r, const Common &c, const std::string &file, const std::string &yoneda_of) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    Presheaf P = yoneda_of.empty() ? hom_presheaf(S, L).presheaf : yoneda(S, yoneda_of);
    r.set("presheaf", yoneda_of.empty() ? std::string("R(" + L->name() + ")") : "y" + yoneda_of);
    try {
        auto C = build_colimit(P);
        const AlgebraRef &target = yoneda_of.empty() ? L : S->object(S->object_index(yoneda_of)).algebra;
        bool iso = find_isomorphism(*C.algebra, *target).has_value();
        r.say("colimit has " + std::to_string(C.algebra->size()) + " classes");
        r.set("colimit.size", C.algebra->size());
        r.verdict("colimit.valid", true);
        r.set("colimit.isomorphic_to_expected", iso);
        maybe_dot(r, c, *C.algebra);
        maybe_out(r, c, "colimit.qea", serialize_algebra(*C.algebra));
    } catch (const StructureFailure &e) {
        r.say(e.what());
        r.verdict("colimit.valid", false);
    }
}

void cmd_counit(Report &r, const Common &c, const std::string &file) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    try {
        auto res = counit(L, S);
        r.say("counit over " + S->name() + ": " + (res.verdict.iso() ? "iso" : "not iso"));
        r.set("colimit.size", res.colimit.algebra->size());
        set_iso(r, "counit", res.verdict);
        r.verdict("counit.iso", res.verdict.iso());
    } catch (const StructureFailure &e) {
        r.say(e.what());
        r.verdict("counit.iso", false);
    }
}

void cmd_adjunction(Report &r, const Common &c, const std::string &file) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    auto check = [&](const std::string &key, const Presheaf &P) {
        try {
            auto rep = adjunction_bijection_check(P, L);
            r.set(key + ".nat", rep.nat_count);
            r.set(key + ".hom", rep.hom_count);
            r.verdict(key + ".bijection", rep.bijection());
        } catch (const StructureFailure &e) {
            r.say(key + ": " + e.what());
            r.verdict(key + ".bijection", false);
        }
    };
    for (int o = 0; o < S->object_count(); ++o) check("adjunction.y" + S->object(o).name, yoneda(S, o));
    check("adjunction.R", hom_presheaf(S, L).presheaf);
    r.say(std::string("Nat(P, R(L)) ~ Hom(LP, L) ") + (r.passed() ? "holds" : "fails") + " on every presheaf checked");
}

PrelocalizationSystem system_from(const HomPresheaf &R, const std::string &generators) {
    const auto &S = *R.presheaf.site;
    if (generators == "all") return full_system(R);
    std::vector<std::pair<int, std::vector<Elem>>> gens;
    if (generators.empty()) {
        for (int o = 0; o < S.object_count(); ++o)
            if (S.object(o).embedding) gens.emplace_back(o, S.object(o).embedding->map);
    } else {
        std::stringstream ss(generators);
        std::string name;
        while (std::getline(ss, name, ',')) {
            int o = S.object_index(name);
            if (!S.object(o).embedding) throw UsageError("object " + name + " has no embedding");
            gens.emplace_back(o, S.object(o).embedding->map);
        }
    }
    return generate_system(R, gens);
}

void cmd_localize(Report &r, const Common &c, const std::string &file, const std::string &generators) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    auto sys = system_from(hom_presheaf(S, L), generators);
    auto rep = is_localization_system(sys);
    r.say(std::to_string(sys.size()) + " sections selected; " +
          (rep.is_localization() ? "a system of localizations" : "not a system of localizations"));
    r.set("system.size", sys.size());
    r.set("system.pairs_checked", rep.pairs_checked);
    r.set("system.monic_covers", rep.monic_covers);
    r.set("localization.ideal", rep.ideal);
    r.set("localization.pairwise_compatible", rep.pairwise_compatible);
    r.set("localization.cocycles", rep.cocycles);
    set_iso(r, "localization.counit", rep.counit);
    if (!rep.witness.empty()) r.set("witness", rep.witness);
    r.verdict("localization", rep.is_localization());
}

void cmd_cocycle(Report &r, const Common &c, const std::string &file) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    std::vector<std::pair<int, AlgebraMorphism>> covers;
    for (int o = 0; o < S->object_count(); ++o)
        if (S->object(o).embedding) covers.emplace_back(o, *S->object(o).embedding);
    auto rep = check_cocycles(covers);
    r.say(std::to_string(covers.size()) + " monic covers, " + std::to_string(rep.triples) + " nonempty triples");
    r.set("cocycle.overlaps", rep.overlaps);
    r.set("cocycle.triples", rep.triples);
    r.verdict("cocycle.identity", rep.identity);
    r.verdict("cocycle.inverse", rep.inverse);
    r.verdict("cocycle.triple", rep.triple);
    if (!rep.witness.empty()) r.set("witness", rep.witness);
}

void cmd_subobjects(Report &r, const Common &c, const std::string &file) {
    auto L = load(file, c);
    auto subs = subobjects(L);
    r.say(std::to_string(subs.size()) + " subobjects of " + L->name());
    r.set("subobjects.count", subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) r.set("subobject." + std::to_string(i), subs[i].label());
}

void cmd_omega(Report &r, const Common &c, const std::string &file) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    try {
        auto O = build_omega(S);
        const auto &W = *O.algebra();
        r.say("Omega has " + std::to_string(W.size()) + " elements, " + std::to_string(O.true_classes().size()) +
              " in the image of True");
        r.set("omega.size", W.size());
        r.set("omega.true_classes", O.true_classes().size());
        r.set("omega.top", W.id(O.top()));
        r.set("omega.site_objects", O.site->object_count());
        r.verdict("omega.valid", true);
        maybe_dot(r, c, W, {O.top()});
        maybe_out(r, c, "omega.qea", serialize_algebra(W));
    } catch (const StructureFailure &e) {
        r.say(e.what());
        r.set("omega.failed_axiom", e.axiom());
        r.verdict("omega.valid", false);
    }
}

void cmd_classify(Report &r, const Common &c, const std::string &file, bool count_homs) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    try {
        auto rep = classifier_check(L, S, std::nullopt, count_homs);
        r.say(std::to_string(rep.subobject_count) + " subobjects, " + std::to_string(rep.classifying_count) +
              " characteristic arrows");
        r.set("classifier.subobjects", rep.subobject_count);
        r.set("classifier.arrows", rep.classifying_count);
        r.set("classifier.counit_iso", rep.counit_iso);
        r.set("classifier.injective", rep.injective);
        for (std::size_t i = 0; i < rep.squares.size(); ++i) {
            const auto &sq = rep.squares[i];
            std::string k = "square." + std::to_string(i);
            r.set(k + ".subobject", sq.subobject);
            r.set(k + ".pullback", sq.ok());
        }
        if (rep.hom_count) {
            r.set("classifier.all_homs", *rep.hom_count);
            r.set("classifier.unique", *rep.unique);
        }
        if (!rep.witness.empty()) r.set("witness", rep.witness);
        r.verdict("classifier", rep.passed());
    } catch (const StructureFailure &e) {
        r.say(e.what());
        r.verdict("classifier", false);
    }
}

void cmd_truth(Report &r, const Common &c, const std::string &file, const std::string &object, const std::string &sub,
               const std::string &element) {
    auto L = load(file, c);
    auto S = resolve_site(L, c);
    OmegaAlgebra O;
    try {
        O = build_omega(S);
    } catch (const StructureFailure &e) {
        r.say(e.what());
        r.verdict("omega.valid", false);
        return;
    }
    int B = O.site->object_index(object);
    const auto &A = O.site->object(B).algebra;
    auto phi = subobject_with_image(A, parse_ids(A, sub));
    auto t = truth_value(O, B, phi, element);
    bool member = phi.contains(A->index(element));
    r.say(phi.label() + "⊗" + element + " is " + t.label);
    r.set("truth.class", O.algebra()->id(t.cls));
    r.set("truth.value", t.label);
    r.set("truth.in_domain", member);
    r.verdict("truth.criterion", t.is_true == member);
}

void cmd_scenario(Report &r, const Common &c, const std::string &file, const std::string &apparatus,
                  const std::string &p, const std::string &q) {
    auto ctx = load(file, c);
    auto rep = valuate_scenario(ctx, parse_ids(ctx, apparatus), ctx->index(p),
                                q.empty() ? std::nullopt : std::optional<Elem>(ctx->index(q)));
    r.say("apparatus ⊗ " + p + " is " + rep.truth.label);
    r.set("scenario.truth", rep.truth.label);
    if (rep.implication) {
        r.set("scenario.implication", ctx->id(*rep.implication));
        r.set("scenario.implication_top", rep.implication_top);
        r.set("scenario.consequent_truth", rep.consequent_truth->label);
    }
    r.set("scenario.reduction", rep.reduction_note);
    if (rep.reduction)
        for (Elem x = 0; x < ctx->size(); ++x)
            r.set("valuation." + ctx->id(x), std::to_string((*rep.reduction)(x) == rep.reduction->target->one()));
}

void cmd_ks(Report &r, const Common &c, const std::string &file, bool list) {
    auto L = load(file, c);
    auto homs = two_valued_homomorphisms(L);
    r.say(std::to_string(homs.size()) + " two-valued homomorphisms" +
          (homs.empty() ? "; no classical valuation exists" : ""));
    r.set("ks.count", homs.size());
    r.set("ks.state_free", homs.empty());
    if (list)
        for (std::size_t i = 0; i < homs.size(); ++i) {
            std::vector<Elem> ones;
            for (Elem e = 0; e < L->size(); ++e)
                if (homs[i](e) == homs[i].target->one()) ones.push_back(e);
            r.set("ks." + std::to_string(i), join_ids(*L, ones));
        }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Finite quantum event algebras, Boolean sites and truth values"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--site", common.site, "default, inclusion, single, or a site file")->capture_default_str();
    app.add_option("--out", common.out, "directory for the report and artifacts");
    app.add_option("--dot", common.dot, "write a Graphviz diagram here");
    app.add_option("--max-elements", common.max_elements, "refuse larger algebras")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    std::string file, file2, from, to, kind = "quantum", object, sub, element, apparatus, p, q, generators, yoneda_of;
    bool count_homs = false, list = false;
    std::function<void(Report &)> run;

    auto with_file = [&](const std::string &name, const std::string &help) {
        auto *sc = app.add_subcommand(name, help);
        sc->add_option("file", file, "algebra file")->required();
        sc->fallthrough();
        return sc;
    };

    auto *validate = with_file("validate", "validate an algebra or morphism file");
    validate->add_option("--from", from, "source algebra of a morphism");
    validate->add_option("--to", to, "target algebra of a morphism");
    validate->callback([&] { run = [&](Report &r) { cmd_validate(r, common, file, from, to); }; });

    with_file("blocks", "list maximal Boolean subalgebras")->callback([&] {
        run = [&](Report &r) { cmd_blocks(r, common, file); };
    });

    auto *homs = app.add_subcommand("homs", "enumerate homomorphisms");
    homs->add_option("source", file, "source algebra")->required();
    homs->add_option("target", file2, "target algebra")->required();
    homs->add_option("--kind", kind, "quantum, boolean or monic")->capture_default_str();
    homs->fallthrough();
    homs->callback([&] { run = [&](Report &r) { cmd_homs(r, common, file, file2, kind); }; });

    with_file("site", "describe the chosen site")->callback([&] { run = [&](Report &r) { cmd_site(r, common, file); }; });

    auto *colimit = with_file("colimit", "colimit of R(L), or of y[B] with --yoneda");
    colimit->add_option("--yoneda", yoneda_of, "site object of a representable presheaf");
    colimit->callback([&] { run = [&](Report &r) { cmd_colimit(r, common, file, yoneda_of); }; });

    with_file("counit", "counit verdict")->callback([&] { run = [&](Report &r) { cmd_counit(r, common, file); }; });
    with_file("adjunction-check", "Nat(P, R(L)) against Hom(LP, L)")->callback([&] {
        run = [&](Report &r) { cmd_adjunction(r, common, file); };
    });

    auto *localize = with_file("localize", "check a system of localizations");
    localize->add_option("--generators", generators, "comma-separated site objects, or 'all'");
    localize->callback([&] { run = [&](Report &r) { cmd_localize(r, common, file, generators); }; });

    with_file("cocycle", "cocycle laws on the embedding covers")->callback([&] {
        run = [&](Report &r) { cmd_cocycle(r, common, file); };
    });
    with_file("subobjects", "list subobjects")->callback([&] { run = [&](Report &r) { cmd_subobjects(r, common, file); }; });
    with_file("omega", "build the truth-values object")->callback([&] { run = [&](Report &r) { cmd_omega(r, common, file); }; });

    auto *classify = with_file("classify", "subobject classifier check");
    classify->add_flag("--count-homs", count_homs, "also count every homomorphism into Omega");
    classify->callback([&] { run = [&](Report &r) { cmd_classify(r, common, file, count_homs); }; });

    auto *truth = with_file("truth", "truth value of phi ⊗ b");
    truth->add_option("--object", object, "object of the truth-value site")->required();
    truth->add_option("--sub", sub, "comma-separated image of phi")->required();
    truth->add_option("--element", element, "element b")->required();
    truth->callback([&] { run = [&](Report &r) { cmd_truth(r, common, file, object, sub, element); }; });

    auto *scenario = with_file("scenario", "valuate a proposition through an apparatus");
    scenario->add_option("--apparatus", apparatus, "comma-separated image of the apparatus")->required();
    scenario->add_option("--p", p, "proposition")->required();
    scenario->add_option("--q", q, "consequent of p -> q");
    scenario->callback([&] { run = [&](Report &r) { cmd_scenario(r, common, file, apparatus, p, q); }; });

    auto *ks = with_file("ks-search", "count two-valued homomorphisms");
    ks->add_flag("--list", list, "list the true elements of each valuation");
    ks->callback([&] { run = [&](Report &r) { cmd_ks(r, common, file, list); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    Report report(app.get_subcommands().front()->get_name());
    try {
        run(report);
        auto text = report.render();
        if (!common.out.empty()) write_output(fs::path(common.out) / "report.txt", text);
        std::cout << text;
        return report.passed() ? kPass : kVerdictFail;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const UsageError &e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const SyntaxError &e) {
        std::cerr << e.what() << "\n";
        return kVerdictFail;
    } catch (const ViolationError &e) {
        std::cerr << e.what() << "\n";
        return kVerdictFail;
    } catch (const ObjectNotInSite &e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const ElementNotFound &e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerdictFail;
    }
}
