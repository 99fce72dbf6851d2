#include "vilenkin/verdict.hpp"

namespace vilenkin {

std::string status_str(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::pass_certified: return "pass_certified";
        case Status::fail: return "fail";
        case Status::undecided: return "undecided";
    }
    return "?";
}

Verdict Verdict::pass_certified(Rational bound) {
    Verdict v;
    v.status = Status::pass_certified;
    v.uncovered = std::move(bound);
    return v;
}

Verdict Verdict::fail(Witness w) {
    Verdict v;
    v.status = Status::fail;
    v.witness = std::move(w);
    return v;
}

Verdict Verdict::undecided(int depth) {
    Verdict v;
    v.status = Status::undecided;
    v.depth = depth;
    return v;
}

Verdict& Verdict::note(std::string key, std::string value) {
    notes.emplace_back(std::move(key), std::move(value));
    return *this;
}

Verdict& Verdict::part(std::string name, Verdict v) {
    parts.emplace_back(std::move(name), std::move(v));
    return *this;
}

Verdict combine(std::vector<std::pair<std::string, Verdict>> parts) {
    Verdict out;
    for (auto& [name, v] : parts) {
        if (v.status == Status::fail && out.status != Status::fail) {
            out.status = Status::fail;
            out.witness = v.witness;
        } else if (v.status == Status::undecided && out.status != Status::fail) {
            out.status = Status::undecided;
            out.depth = std::max(out.depth, v.depth);
        } else if (v.status == Status::pass_certified && out.status == Status::pass) {
            out.status = Status::pass_certified;
        }
        if (v.status == Status::pass_certified) out.uncovered += v.uncovered;
    }
    if (out.status != Status::pass_certified) out.uncovered = 0;
    out.parts = std::move(parts);
    return out;
}

std::string render_text(const Verdict& v, int indent) {
    std::string pad(std::size_t(indent) * 2, ' ');
    std::string s = pad + status_str(v.status);
    if (v.status == Status::pass_certified) s += " (uncovered <= " + rational_str(v.uncovered) + ")";
    if (v.status == Status::undecided && v.depth >= 0) s += " (depth " + std::to_string(v.depth) + ")";
    s += "\n";
    if (v.witness) {
        s += pad + "  witness: " + v.witness->description + "\n";
        for (const auto& e : v.witness->evidence) s += pad + "    " + e + "\n";
    }
    for (const auto& [k, val] : v.notes) s += pad + "  " + k + ": " + val + "\n";
    for (const auto& [name, part] : v.parts) {
        s += pad + "  [" + name + "]\n";
        s += render_text(part, indent + 2);
    }
    return s;
}

} // namespace vilenkin
