#ifndef FRAMEGEO_WORKBENCH_HPP
#define FRAMEGEO_WORKBENCH_HPP

#include <iosfwd>
#include <string>

#include "framegeo/manifold.hpp"
#include "framegeo/report.hpp"

namespace framegeo {

/// Options shared by all CLI commands.
struct RunOptions {
    std::string command;  // check | soliton | classify | report | random-audit
    std::string target;   // builtin name or spec-file path
    double tol = 1e-8;
    int points = 5;
    unsigned long long seed = 0;
    std::string mode = "float";  // float | rational
    bool json = false;
    int degree = 4;
    std::string potential = "xi";  // xi | "<expr>,<expr>,<expr>"
    bool mu_zero = false;
    int audit_count = 100;
    unsigned long long audit_seed = 1;
};

struct RunResult {
    Report report;
    int exit_code = 0;  // 0 all verdicts pass, 1 verdict failure
};

/// Resolve a builtin name or a spec-file path.
ManifoldSpec resolve_target(const std::string& target);

/// Execute a command; throws framegeo::Error subtypes on input errors.
RunResult run(const RunOptions& options);

/// Full CLI semantics: renders the report (text or JSON) to `out`,
/// reports input errors on `err` with exit code 2.
int run_command(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace framegeo

#endif
