#include "vilenkin/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact verifier and constructor for wavelet sets, generalized scaling sets and "
                 "MRA masks on the Vilenkin group dual"};
    app.require_subcommand(1);

    vilenkin::RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool multi_input) {
        if (multi_input)
            sub->add_option("--input", cfg.inputs, "input set file (repeatable)");
        else
            sub->add_option("--input", cfg.inputs, "input file")->expected(1);
        sub->add_option("--depth", cfg.depth, "stream enumeration depth");
        sub->add_option("-K,--resolution", cfg.resolution, "step-function resolution (0 = auto)");
        sub->add_option("--format", cfg.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* verify = app.add_subcommand("verify", "run a checker");
    verify->require_subcommand(1);
    for (const char* name : {"wavelet-set", "congruence", "gss", "consistency"}) {
        CLI::App* sub = verify->add_subcommand(name);
        add_common(sub, false);
        sub->callback([&cfg, name] { cfg.command = std::string("verify ") + name; });
    }
    {
        CLI::App* sub = verify->add_subcommand("multiwavelet-set");
        add_common(sub, true);
        sub->callback([&cfg] { cfg.command = "verify multiwavelet-set"; });
    }

    CLI::App* construct = app.add_subcommand("construct", "run a construction");
    construct->require_subcommand(1);
    {
        CLI::App* sub = construct->add_subcommand("gss");
        sub->add_option("--from-wavelet-set", cfg.inputs, "wavelet set file")->expected(1);
        sub->add_option("--closure-candidate", cfg.closure_candidate,
                        "finite candidate for the closed-form identity");
        sub->add_option("--depth", cfg.depth, "stream enumeration depth");
        sub->add_option("--out", cfg.out_path, "write the stream to a set file");
        sub->add_option("--format", cfg.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->callback([&cfg] { cfg.command = "construct gss"; });
    }
    {
        CLI::App* sub = construct->add_subcommand("upsilon");
        add_common(sub, false);
        sub->add_option("-n", cfg.upsilon_n, "number of recursion levels")->required();
        sub->callback([&cfg] { cfg.command = "construct upsilon"; });
    }

    CLI::App* mask = app.add_subcommand("mask", "mask analysis");
    mask->require_subcommand(1);
    for (const char* name : {"check", "blocked", "phihat"}) {
        CLI::App* sub = mask->add_subcommand(name);
        add_common(sub, false);
        sub->add_option("-R,--region", cfg.region, "region scale (domain B^R U*)");
        if (std::string(name) == "phihat")
            sub->add_option("--export,--out", cfg.out_path, "write the table as TSV");
        sub->callback([&cfg, name] { cfg.command = std::string("mask ") + name; });
    }

    CLI::App* exp = app.add_subcommand("export", "export views");
    exp->require_subcommand(1);
    {
        CLI::App* sub = exp->add_subcommand("intervals");
        add_common(sub, false);
        sub->add_option("--out", cfg.out_path, "output TSV path")->required();
        sub->callback([&cfg] { cfg.command = "export intervals"; });
    }

    CLI11_PARSE(app, argc, argv);
    return vilenkin::run(cfg, std::cout, std::cerr);
}
