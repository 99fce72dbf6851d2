#pragma once

#include "vilenkin/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vilenkin {

enum class Status { fail, undecided, pass_certified, pass };

std::string status_str(Status s);

/// Concrete evidence attached to a Fail: a short description plus the
/// objects (cylinders, cells, points) that re-check the failure.
struct Witness {
    std::string description;
    std::vector<std::string> evidence;
};

/// Uniform result of every checker. Pass only from exhaustive exact
/// computation; PassCertified carries the exact uncovered/tail bound;
/// Fail always carries a witness.
struct Verdict {
    Status status = Status::pass;
    Rational uncovered = 0;                  // bound for pass_certified
    int depth = -1;                          // enumeration depth for undecided
    std::optional<Witness> witness;
    std::vector<std::pair<std::string, std::string>> notes;   // key -> value
    std::vector<std::pair<std::string, Verdict>> parts;        // named sub-conditions

    bool ok() const { return status == Status::pass || status == Status::pass_certified; }

    static Verdict pass() { return {}; }
    static Verdict pass_certified(Rational bound);
    static Verdict fail(Witness w);
    static Verdict undecided(int depth);

    Verdict& note(std::string key, std::string value);
    Verdict& part(std::string name, Verdict v);
};

/// The weakest of the parts: fail < undecided < pass_certified < pass.
/// Certified bounds accumulate.
Verdict combine(std::vector<std::pair<std::string, Verdict>> parts);

/// Multi-line human-readable rendering.
std::string render_text(const Verdict& v, int indent = 0);

} // namespace vilenkin
