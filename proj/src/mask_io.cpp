#include "vilenkin/mask_io.hpp"

#include "vilenkin/set_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace vilenkin {

namespace {

struct Line {
    int number;
    std::vector<std::string> words;
};

std::vector<Line> split_lines(std::istream& in) {
    std::vector<Line> out;
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{n, {}};
        std::string w;
        while (ls >> w) line.words.push_back(w);
        if (!line.words.empty()) out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
    throw ParseError(msg, l.number, 1);
}

std::uint64_t parse_index(const Line& l, const std::string& w, std::uint64_t limit, const char* what) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(w, &used);
        if (used != w.size() || v >= limit) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail(l, std::string("bad ") + what + ": '" + w + "'");
    }
}

Cyclotomic parse_value(Prime p, const Line& l, std::size_t first_word) {
    std::vector<Rational> coords(std::size_t(p.value() - 1), Rational(0));
    std::size_t count = l.words.size() - first_word;
    if (count == 0 || count > coords.size()) fail(l, "expected 1.." + std::to_string(coords.size()) + " rational coordinates");
    for (std::size_t i = 0; i < count; ++i) {
        try {
            coords[i] = parse_rational(l.words[first_word + i]);
        } catch (const std::invalid_argument& e) {
            fail(l, e.what());
        }
    }
    return Cyclotomic::from_coords(p, std::move(coords));
}

} // namespace

Mask parse_mask(std::istream& in) {
    std::vector<Line> lines = split_lines(in);
    std::optional<Prime> prime;
    int n = 0;
    std::vector<std::pair<std::uint64_t, Cyclotomic>> a_entries, v_entries;

    for (const Line& l : lines) {
        const std::string& head = l.words[0];
        if (head == "p") {
            if (l.words.size() != 2) fail(l, "expected 'p <prime>'");
            try {
                prime.emplace(int(parse_index(l, l.words[1], 1000, "prime")));
            } catch (const std::invalid_argument&) {
                fail(l, "not a prime: " + l.words[1]);
            }
        } else if (head == "n") {
            if (l.words.size() != 2) fail(l, "expected 'n <degree>'");
            n = int(parse_index(l, l.words[1], 16, "degree"));
        } else if (head == "a" || head == "v") {
            if (!prime || n == 0) fail(l, "'p' and 'n' must come before coefficient lines");
            std::uint64_t size = 1;
            for (int i = 0; i < n; ++i) size *= std::uint64_t(prime->value());
            if (l.words.size() < 3) fail(l, "expected '" + head + " <index> <value>'");
            std::uint64_t idx = parse_index(l, l.words[1], size, "index");
            Cyclotomic val = parse_value(*prime, l, 2);
            (head == "a" ? a_entries : v_entries).emplace_back(idx, std::move(val));
        } else {
            fail(l, "expected 'p', 'n', 'a' or 'v', got '" + head + "'");
        }
    }
    if (!prime || n == 0) throw ParseError("mask file must declare 'p' and 'n'", 1, 1);
    if (!a_entries.empty() && !v_entries.empty())
        throw ParseError("'a' and 'v' lines are exclusive", 1, 1);

    std::size_t size = 1;
    for (int i = 0; i < n; ++i) size *= std::size_t(prime->value());
    std::vector<Cyclotomic> cells(size, Cyclotomic::zero(*prime));
    if (!v_entries.empty()) {
        for (auto& [idx, val] : v_entries) cells[idx] = std::move(val);
        return Mask(*prime, n, mask_coefficients_from_values(*prime, n, cells));
    }
    for (auto& [idx, val] : a_entries) cells[idx] = std::move(val);
    return Mask(*prime, n, std::move(cells));
}

Mask parse_mask_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mask file: " + path);
    try {
        return parse_mask(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string format_mask(const Mask& m) {
    std::ostringstream out;
    out << "p " << m.p << "\nn " << m.n << "\n";
    for (std::size_t i = 0; i < m.coeffs.size(); ++i) {
        if (m.coeffs[i].is_zero()) continue;
        out << "a " << i;
        const auto& coords = m.coeffs[i].coords();
        std::size_t last = 0;
        for (std::size_t k = 0; k < coords.size(); ++k)
            if (coords[k] != 0) last = k;
        for (std::size_t k = 0; k <= last; ++k) out << " " << rational_str(coords[k]);
        out << "\n";
    }
    return out.str();
}

} // namespace vilenkin
