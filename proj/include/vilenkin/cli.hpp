#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vilenkin {

/// Validated invocation of one CLI command.
struct RunConfig {
    std::string command;               // "verify wavelet-set", "mask blocked", ...
    std::vector<std::string> inputs;   // --input (repeatable where documented)
    int depth = 24;                    // --depth
    int region = 3;                    // -R
    int resolution = 0;                // -K (0 = automatic)
    int upsilon_n = 0;                 // -n
    std::string closure_candidate;     // construct gss --closure-candidate
    std::string format = "text";       // --format text|json
    std::string out_path;              // --out / --export
};

/// Exit codes: 0 pass or pass-certified, 1 fail, 2 undecided, 3 usage or
/// input error. JSON output is byte-stable for identical inputs and flags.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace vilenkin
