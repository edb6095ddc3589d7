#include "qlogic/io.hpp"
#include "qlogic/site.hpp"

#include <fstream>
#include <sstream>

namespace qlogic {

SyntaxError::SyntaxError(int line, int col, const std::string &msg)
    : std::runtime_error("SyntaxError at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      line_(line), col_(col) {}

namespace {

struct Token {
    std::string text;
    int col;
};

struct Line {
    int number;
    std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string &text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            if (i > start) line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

void expect_args(const Line &line, std::size_t count) {
    if (line.tokens.size() != count + 1) {
        int col = line.tokens.size() > count + 1 ? line.tokens[count + 1].col : line.tokens.back().col;
        throw SyntaxError(line.number, col,
                          "'" + line.tokens[0].text + "' takes " + std::to_string(count) + " argument(s)");
    }
}

}  // namespace

RawAlgebra parse_raw_algebra(const std::string &text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw SyntaxError(1, 1, "missing '@algebra NAME' header");
    const Line &head = lines.front();
    if (head.tokens[0].text != "@algebra") throw SyntaxError(head.number, head.tokens[0].col, "expected '@algebra'");
    expect_args(head, 1);

    RawAlgebra raw;
    raw.name = head.tokens[1].text;
    std::set<std::string> declared;
    bool have_elements = false, have_zero = false, have_one = false;
    auto known = [&](const Line &line, const Token &tok) {
        if (!declared.count(tok.text))
            throw SyntaxError(line.number, tok.col, "unknown element '" + tok.text + "'");
        return tok.text;
    };
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line &line = lines[k];
        const std::string &kw = line.tokens[0].text;
        if (kw == "elements") {
            if (have_elements) throw SyntaxError(line.number, line.tokens[0].col, "second 'elements' line");
            if (line.tokens.size() < 2) throw SyntaxError(line.number, line.tokens[0].col, "'elements' needs ids");
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                raw.elements.push_back(line.tokens[i].text);
                declared.insert(line.tokens[i].text);
            }
            have_elements = true;
            continue;
        }
        if (!have_elements)
            throw SyntaxError(line.number, line.tokens[0].col, "'" + kw + "' before 'elements'");
        if (kw == "zero" || kw == "one") {
            expect_args(line, 1);
            bool &seen = kw == "zero" ? have_zero : have_one;
            if (seen) throw SyntaxError(line.number, line.tokens[0].col, "second '" + kw + "' line");
            seen = true;
            (kw == "zero" ? raw.zero : raw.one) = known(line, line.tokens[1]);
        } else if (kw == "leq" || kw == "ortho") {
            expect_args(line, 2);
            auto pair = std::pair{known(line, line.tokens[1]), known(line, line.tokens[2])};
            (kw == "leq" ? raw.leq : raw.ortho).push_back(std::move(pair));
        } else {
            throw SyntaxError(line.number, line.tokens[0].col, "unknown keyword '" + kw + "'");
        }
    }
    int last = lines.back().number;
    if (!have_elements) throw SyntaxError(last, 1, "missing 'elements' line");
    if (!have_zero) throw SyntaxError(last, 1, "missing 'zero' line");
    if (!have_one) throw SyntaxError(last, 1, "missing 'one' line");
    return raw;
}

EventAlgebra parse_algebra(const std::string &text) { return validate_event_algebra(parse_raw_algebra(text)); }

SiteDocument parse_site(const std::string &text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw SyntaxError(1, 1, "missing '@site NAME' header");
    const Line &head = lines.front();
    if (head.tokens[0].text != "@site") throw SyntaxError(head.number, head.tokens[0].col, "expected '@site'");
    expect_args(head, 1);
    SiteDocument doc;
    doc.name = head.tokens[1].text;
    bool have_arrows = false;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line &line = lines[k];
        const std::string &kw = line.tokens[0].text;
        if (kw == "object") {
            if (line.tokens.size() < 4) throw SyntaxError(line.number, line.tokens[0].col, "'object' needs an id and elements");
            std::vector<std::string> elems;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) elems.push_back(line.tokens[i].text);
            doc.objects.emplace_back(line.tokens[1].text, std::move(elems));
            doc.object_lines.push_back(line.number);
        } else if (kw == "arrows") {
            expect_args(line, 1);
            if (have_arrows) throw SyntaxError(line.number, line.tokens[0].col, "second 'arrows' line");
            const auto &mode = line.tokens[1];
            if (mode.text != "full" && mode.text != "inclusion")
                throw SyntaxError(line.number, mode.col, "expected 'full' or 'inclusion'");
            doc.inclusions_only = mode.text == "inclusion";
            have_arrows = true;
        } else {
            throw SyntaxError(line.number, line.tokens[0].col, "unknown keyword '" + kw + "'");
        }
    }
    if (doc.objects.empty()) throw SyntaxError(lines.back().number, 1, "site has no objects");
    return doc;
}

SiteRef build_site(const SiteDocument &doc, const AlgebraRef &L) {
    std::vector<std::pair<std::string, std::vector<Elem>>> objects;
    for (std::size_t k = 0; k < doc.objects.size(); ++k) {
        const auto &[id, elems] = doc.objects[k];
        int line = k < doc.object_lines.size() ? doc.object_lines[k] : 0;
        std::vector<Elem> img;
        for (const auto &e : elems) {
            auto found = L->find(e);
            if (!found) throw SyntaxError(line, 1, "object " + id + ": unknown element '" + e + "'");
            img.push_back(*found);
        }
        objects.emplace_back(id, std::move(img));
    }
    return custom_site(L, doc.name, objects, doc.inclusions_only);
}

std::string serialize_algebra(const EventAlgebra &L) {
    RawAlgebra raw = L.to_raw();
    std::ostringstream os;
    os << "@algebra " << raw.name << "\nelements";
    for (const auto &e : raw.elements) os << ' ' << e;
    os << "\nzero " << raw.zero << "\none " << raw.one << "\n";
    for (const auto &[a, b] : raw.leq) os << "leq " << a << ' ' << b << "\n";
    for (const auto &[a, b] : raw.ortho) os << "ortho " << a << ' ' << b << "\n";
    return os.str();
}

MorphismDocument parse_morphism(const std::string &text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw SyntaxError(1, 1, "missing '@hom NAME' header");
    const Line &head = lines.front();
    if (head.tokens[0].text != "@hom") throw SyntaxError(head.number, head.tokens[0].col, "expected '@hom'");
    expect_args(head, 1);
    MorphismDocument doc;
    doc.raw.name = head.tokens[1].text;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line &line = lines[k];
        const std::string &kw = line.tokens[0].text;
        if (kw == "from" || kw == "to") {
            expect_args(line, 1);
            (kw == "from" ? doc.from : doc.to) = line.tokens[1].text;
        } else if (kw == "map") {
            expect_args(line, 2);
            doc.raw.map.emplace_back(line.tokens[1].text, line.tokens[2].text);
        } else {
            throw SyntaxError(line.number, line.tokens[0].col, "unknown keyword '" + kw + "'");
        }
    }
    if (doc.from.empty()) throw SyntaxError(lines.back().number, 1, "missing 'from' line");
    if (doc.to.empty()) throw SyntaxError(lines.back().number, 1, "missing 'to' line");
    return doc;
}

std::string serialize_morphism(const AlgebraMorphism &m) {
    std::ostringstream os;
    os << "@hom " << m.name << "\nfrom " << m.source->name() << "\nto " << m.target->name() << "\n";
    for (Elem e = 0; e < m.source->size(); ++e) os << "map " << m.source->id(e) << ' ' << m.target->id(m.map[e]) << "\n";
    return os.str();
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    out << text;
    if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

AlgebraRef load_algebra(const std::filesystem::path &path) {
    return std::make_shared<const EventAlgebra>(parse_algebra(read_file(path)));
}

CorpusManifest load_manifest(const std::filesystem::path &path) {
    CorpusManifest m;
    m.dir = path.parent_path();
    for (const Line &line : tokenize(read_file(path))) {
        const std::string &kw = line.tokens[0].text;
        if (kw == "instance") {
            expect_args(line, 1);
            m.instances.push_back(line.tokens[1].text);
        } else if (kw == "corrupt") {
            expect_args(line, 2);
            m.corrupt.push_back({line.tokens[1].text, line.tokens[2].text});
        } else if (kw == "two_valued") {
            expect_args(line, 2);
            m.two_valued.push_back({line.tokens[1].text, std::stol(line.tokens[2].text)});
        } else if (kw == "blocks") {
            if (line.tokens.size() < 3) throw SyntaxError(line.number, line.tokens[0].col, "'blocks' needs a file and lists");
            CorpusManifest::Blocks b{line.tokens[1].text, {}};
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                if (line.tokens[i].text == "|") continue;
                std::vector<std::string> atoms;
                std::istringstream parts(line.tokens[i].text);
                for (std::string a; std::getline(parts, a, ',');) atoms.push_back(a);
                b.blocks.push_back(std::move(atoms));
            }
            m.blocks.push_back(std::move(b));
        } else {
            throw SyntaxError(line.number, line.tokens[0].col, "unknown keyword '" + kw + "'");
        }
    }
    return m;
}

namespace {

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string emit_dot(const EventAlgebra &L, const std::set<Elem> &marked) {
    std::ostringstream os;
    os << "digraph " << quoted(L.name()) << " {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (Elem e = 0; e < L.size(); ++e) {
        os << "  n" << e << " [label=" << quoted(L.id(e));
        if (marked.count(e)) os << ", style=filled, fillcolor=gold";
        os << "];\n";
    }
    for (auto [a, b] : L.covers()) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace qlogic
