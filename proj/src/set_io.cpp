#include "vilenkin/set_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace vilenkin {

namespace {

struct Token {
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::istream& in) {
    std::vector<Token> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = 0;
        while (i < line.size()) {
            if (line[i] == '#') break;
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            if (line[i] == '{' || line[i] == '}') {
                ++i;
            } else {
                while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                       line[i] != '{' && line[i] != '}' && line[i] != '#')
                    ++i;
            }
            out.push_back({line.substr(start, i - start), lineno, int(start) + 1});
        }
    }
    return out;
}

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}
    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const {
        if (done()) throw ParseError("unexpected end of input", last_line(), 1);
        return tokens_[pos_];
    }
    Token next() {
        Token t = peek();
        ++pos_;
        return t;
    }
    Token expect(const std::string& what) {
        if (done()) throw ParseError("expected " + what + ", got end of input", last_line(), 1);
        return next();
    }
    int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line + 1; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

int parse_int(const Token& t, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(std::string("bad ") + what + ": '" + t.text + "'", t.line, t.column);
    }
}

Cylinder parse_cyl_token(Prime p, const Token& t) {
    auto dot = t.text.find('.');
    if (dot == std::string::npos)
        throw ParseError("cylinder token missing '.': '" + t.text + "'", t.line, t.column);
    int resolution = int(t.text.size() - dot - 1);
    Point anchor(p);
    try {
        anchor = parse_point(p, t.text);
    } catch (const std::invalid_argument& e) {
        // Pinpoint the offending digit for the line/column report.
        for (std::size_t i = 0; i < t.text.size(); ++i) {
            char c = t.text[i];
            if (c == '.') continue;
            int v = c >= '0' && c <= '9' ? c - '0' : (c >= 'a' && c <= 'z' ? c - 'a' + 10 : -1);
            if (v < 0 || v >= p.value())
                throw ParseError(std::string("digit '") + c + "' out of range for p=" +
                                     std::to_string(p.value()),
                                 t.line, t.column + int(i));
        }
        throw ParseError(e.what(), t.line, t.column);
    }
    return Cylinder(std::move(anchor), resolution);
}

} // namespace

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " +
                         std::move(message)),
      line_(line),
      column_(column) {}

PieceStream parse_set(std::istream& in) {
    TokenStream ts(tokenize(in));
    Token pt = ts.expect("'p'");
    if (pt.text != "p") throw ParseError("set file must start with 'p <prime>'", pt.line, pt.column);
    Token pv = ts.expect("prime");
    int pval = parse_int(pv, "prime");
    std::optional<Prime> prime;
    try {
        prime.emplace(pval);
    } catch (const std::invalid_argument&) {
        throw ParseError("not a prime: " + pv.text, pv.line, pv.column);
    }

    std::vector<Cylinder> finite;
    std::vector<Token> finite_tokens;
    std::vector<TailFamily> tails;
    DisjointAccumulator acc(*prime);

    auto add_finite = [&](const Token& t) {
        Cylinder c = parse_cyl_token(*prime, t);
        if (!acc.insert(c)) {
            const Token& prev = finite_tokens[acc.last_overlap_index()];
            throw ParseError("overlapping pieces: '" + t.text + "' overlaps '" + prev.text +
                                 "' from line " + std::to_string(prev.line),
                             t.line, t.column);
        }
        finite.push_back(c);
        finite_tokens.push_back(t);
    };

    while (!ts.done()) {
        Token head = ts.next();
        if (head.text == "cyl") {
            add_finite(ts.expect("point token"));
        } else if (head.text == "tail") {
            Token r = ts.expect("'r'");
            if (r.text != "r") throw ParseError("expected 'r'", r.line, r.column);
            int ratio = parse_int(ts.expect("ratio"), "ratio");
            Token f = ts.expect("'from'");
            if (f.text != "from") throw ParseError("expected 'from'", f.line, f.column);
            int start = parse_int(ts.expect("start index"), "start index");
            Token a = ts.expect("'anchor'");
            if (a.text != "anchor") throw ParseError("expected 'anchor'", a.line, a.column);
            Token anchor_tok = ts.expect("anchor token");
            Point anchor(*prime);
            try {
                anchor = parse_point(*prime, anchor_tok.text);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), anchor_tok.line, anchor_tok.column);
            }
            Token b = ts.expect("'body'");
            if (b.text != "body") throw ParseError("expected 'body'", b.line, b.column);
            Token open = ts.expect("'{'");
            if (open.text != "{") throw ParseError("expected '{'", open.line, open.column);
            std::vector<Cylinder> body;
            while (true) {
                Token t = ts.expect("'cyl' or '}'");
                if (t.text == "}") break;
                if (t.text != "cyl") throw ParseError("expected 'cyl' or '}'", t.line, t.column);
                body.push_back(parse_cyl_token(*prime, ts.expect("point token")));
            }
            if (auto ov = find_overlap(body))
                throw ParseError("overlapping cylinders inside tail body", b.line, b.column);
            if (ratio < 1) throw ParseError("tail ratio must be >= 1", r.line, r.column);
            if (start < 0) throw ParseError("tail start must be >= 0", f.line, f.column);
            if (!anchor.in_lattice())
                throw ParseError("tail anchor must have digits at positions <= 0 only",
                                 anchor_tok.line, anchor_tok.column);
            tails.emplace_back(ratio, std::move(anchor), CylinderSet::of(*prime, body), start);
        } else {
            throw ParseError("expected 'cyl' or 'tail', got '" + head.text + "'", head.line,
                             head.column);
        }
    }

    PieceStream s = PieceStream::with_tails(CylinderSet::of(*prime, finite), std::move(tails));
    if (!s.is_finite()) {
        Verdict dis = s.validate_disjoint(8);
        if (dis.status == Status::fail) {
            std::string detail = dis.witness ? dis.witness->description : "overlap";
            for (const auto& e : dis.witness ? dis.witness->evidence : std::vector<std::string>{})
                detail += "; " + e;
            throw ParseError("overlapping pieces: " + detail, ts.last_line(), 1);
        }
    }
    return s;
}

PieceStream parse_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open set file: " + path);
    try {
        return parse_set(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string format_set(const PieceStream& s) {
    std::ostringstream out;
    out << "p " << s.prime() << "\n";
    for (const Cylinder& c : s.finite_part().refined(0)) out << "cyl " << format_cylinder(c) << "\n";
    for (const TailFamily& t : s.tails()) {
        out << "tail r " << t.ratio << " from " << t.start << " anchor " << format_point(t.anchor)
            << " body {";
        for (const Cylinder& c : t.body.refined(0)) out << " cyl " << format_cylinder(c);
        out << " }\n";
    }
    return out.str();
}

} // namespace vilenkin
