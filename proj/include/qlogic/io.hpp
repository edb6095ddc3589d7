#pragma once

#include "qlogic/core_algebra.hpp"

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlogic {

/// Malformed instance document; line and column are 1-based.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int col, const std::string &msg);
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Reads the `@algebra` grammar without validating the axioms.
RawAlgebra parse_raw_algebra(const std::string &text);
/// Parses and validates; axiom failures surface as ViolationError.
EventAlgebra parse_algebra(const std::string &text);
std::string serialize_algebra(const EventAlgebra &L);

struct MorphismDocument {
    std::string from;
    std::string to;
    RawMorphism raw;
};
MorphismDocument parse_morphism(const std::string &text);
std::string serialize_morphism(const AlgebraMorphism &m);

/// `@site NAME` / `object ID e1 e2 ...` (repeatable) / `arrows full|inclusion`.
struct SiteDocument {
    std::string name;
    std::vector<std::pair<std::string, std::vector<std::string>>> objects;
    bool inclusions_only = false;
    std::vector<int> object_lines;  // parallel to objects
};
SiteDocument parse_site(const std::string &text);
/// Resolves the element ids against L; unknown ids raise SyntaxError on the
/// object's line.
std::shared_ptr<const class BooleanSite> build_site(const SiteDocument &doc, const AlgebraRef &L);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const std::string &text);
AlgebraRef load_algebra(const std::filesystem::path &path);

struct CorpusManifest {
    struct Corrupt {
        std::string file;
        std::string kind;
    };
    struct Count {
        std::string file;
        long count;
    };
    struct Blocks {
        std::string file;
        std::vector<std::vector<std::string>> blocks;
    };
    std::filesystem::path dir;
    std::vector<std::string> instances;
    std::vector<Corrupt> corrupt;
    std::vector<Count> two_valued;
    std::vector<Blocks> blocks;

    std::filesystem::path path(const std::string &file) const { return dir / file; }
};
CorpusManifest load_manifest(const std::filesystem::path &path);

/// Hasse diagram in Graphviz DOT; nodes listed in element order, elements in
/// `marked` are drawn filled.
std::string emit_dot(const EventAlgebra &L, const std::set<Elem> &marked = {});

}  // namespace qlogic
