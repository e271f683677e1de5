// Command-line workbench for frame-based curvature computations,
// Kenmotsu-structure verification, eta-Ricci soliton fitting, and
// curvature-condition classification.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "framegeo/workbench.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "framegeo: moving-frame curvature workbench\n"
        "Manifolds are given as spec files or builtin names\n"
        "(kenmotsu-s7, flat3, hyperbolic3, sphere3, kenmotsu-warped)."};
    app.require_subcommand(1);

    framegeo::RunOptions opt;

    auto add_common = [&](CLI::App* cmd, bool with_target) {
        if (with_target)
            cmd->add_option("target", opt.target, "builtin name or spec-file path")->required();
        cmd->add_option("--tol", opt.tol, "verdict tolerance")->capture_default_str();
        cmd->add_option("--points", opt.points, "number of sampled evaluation points")
            ->capture_default_str();
        cmd->add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
        cmd->add_option("--mode", opt.mode, "scalar mode: float | rational")
            ->check(CLI::IsMember({"float", "rational"}))
            ->capture_default_str();
        cmd->add_option("--degree", opt.degree, "jet truncation degree")->capture_default_str();
        cmd->add_flag("--json", opt.json, "emit the JSON report instead of text");
    };

    CLI::App* check = app.add_subcommand("check", "verify geometry and contact structure");
    add_common(check, true);

    CLI::App* soliton = app.add_subcommand("soliton", "fit eta-Ricci soliton constants");
    add_common(soliton, true);
    soliton->add_option("--potential", opt.potential,
                        "potential field: xi or comma-separated frame components")
        ->capture_default_str();
    soliton->add_flag("--mu-zero", opt.mu_zero, "freeze mu = 0 (plain Ricci soliton fit)");

    CLI::App* classify =
        app.add_subcommand("classify", "evaluate the curvature-condition classifications");
    add_common(classify, true);

    CLI::App* report = app.add_subcommand("report", "full report: checks + soliton + classification");
    add_common(report, true);
    report->add_option("--potential", opt.potential,
                       "potential field: xi or comma-separated frame components")
        ->capture_default_str();
    report->add_flag("--mu-zero", opt.mu_zero, "freeze mu = 0 (plain Ricci soliton fit)");

    CLI::App* audit =
        app.add_subcommand("random-audit", "fuzz the universal identities on random frames");
    audit->add_option("--count", opt.audit_count, "number of random frames")
        ->capture_default_str();
    audit->add_option("--seed", opt.audit_seed, "generator seed")->capture_default_str();
    audit->add_option("--degree", opt.degree, "jet truncation degree")->capture_default_str();
    audit->add_flag("--json", opt.json, "emit the JSON report instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opt.command = app.get_subcommands().front()->get_name();
    return framegeo::run_command(opt, std::cout, std::cerr);
}
