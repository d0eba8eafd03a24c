#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <crp.h>

namespace {

// 0: definite verdict; 1: no verdict; 2: input error; 3: proof check failed.
enum ExitCode { kDefinite = 0, kUnknown = 1, kInputError = 2, kCheckFailed = 3 };

std::string fileStem(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0)
        base = base.substr(0, dot);
    return base.empty() ? "problem" : base;
}

void printStatus(const char* verdict, const std::string& name) {
    std::cout << "% SZS status " << verdict << " for " << name << "\n";
}

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { crp_free_string(s); }
    const char* get() const { return s ? s : ""; }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"First-order clausal prover with conflict-driven learning"};

    std::string problemPath;
    std::string variant = "ep";
    std::vector<std::string> includeDirs;
    std::string proofSink;
    uint64_t seed = 0;
    double timeout = 60.0;
    uint64_t maxConflicts = 0;
    bool statsFlag = false;
    bool checkFlag = false;

    app.add_option("problem", problemPath, "TPTP CNF problem file")->required();
    app.add_option("--variant", variant, "Search variant: ep, pd, or td")
        ->check(CLI::IsMember({"ep", "pd", "td"}))
        ->capture_default_str();
    app.add_option("--include", includeDirs,
                   "Directory searched by include() directives (repeatable)");
    app.add_option("--proof", proofSink,
                   "Write the refutation to this file ('-' for standard output)");
    app.add_option("--seed", seed, "Seed for the td variant's coin")
        ->capture_default_str();
    app.add_option("--timeout", timeout,
                   "Time budget in seconds (0 disables the budget)")
        ->capture_default_str();
    app.add_option("--max-conflicts", maxConflicts,
                   "Conflict budget (0 disables the budget)")
        ->capture_default_str();
    app.add_flag("--stats", statsFlag, "Print search statistics");
    app.add_flag("--check", checkFlag,
                 "Re-verify the refutation before reporting it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kDefinite : kInputError;
    }

    const std::string name = fileStem(problemPath);

    std::vector<const char*> dirs;
    dirs.reserve(includeDirs.size());
    for (const std::string& d : includeDirs)
        dirs.push_back(d.c_str());

    crp_problem* problem = nullptr;
    OwnedString diagnostics;
    crp_status st = crp_problem_parse_file(problemPath.c_str(), dirs.data(),
                                           dirs.size(), &problem,
                                           &diagnostics.s);
    if (diagnostics.s && *diagnostics.s)
        std::cerr << diagnostics.get();
    if (st != CRP_OK) {
        printStatus("Error", name);
        return kInputError;
    }

    crp_solver* solver = nullptr;
    crp_solver_new(problem, &solver);
    crp_problem_free(problem);

    crp_variant v = CRP_VARIANT_EP;
    if (variant == "pd")
        v = CRP_VARIANT_PD;
    else if (variant == "td")
        v = CRP_VARIANT_TD;
    crp_solver_set_variant(solver, v);
    crp_solver_set_seed(solver, seed);
    crp_solver_set_time_budget(solver, timeout);
    crp_solver_set_max_conflicts(solver, maxConflicts);

    crp_result result = CRP_RESULT_TIMEOUT;
    st = crp_solver_run(solver, &result);
    if (st != CRP_OK) {
        std::cerr << "error: the solver failed internally (status " << st
                  << ")\n";
        crp_solver_free(solver);
        printStatus("Error", name);
        return kInputError;
    }

    if (checkFlag && result == CRP_RESULT_UNSATISFIABLE) {
        OwnedString why;
        crp_status ck = crp_solver_check_proof(solver, &why.s);
        if (ck != CRP_OK) {
            std::cerr << "error: proof verification FAILED: " << why.get()
                      << "\n";
            crp_solver_free(solver);
            printStatus("Error", name);
            return kCheckFailed;
        }
    }

    OwnedString statusLine;
    crp_solver_status_line(solver, name.c_str(), &statusLine.s);
    std::cout << statusLine.get() << "\n";

    if (result == CRP_RESULT_UNSATISFIABLE && !proofSink.empty()) {
        OwnedString proof;
        if (crp_solver_proof_text(solver, &proof.s) == CRP_OK) {
            if (proofSink == "-") {
                std::cout << proof.get();
            } else {
                std::ofstream out(proofSink);
                if (!out) {
                    std::cerr << "error: cannot write proof to '" << proofSink
                              << "'\n";
                    crp_solver_free(solver);
                    return kInputError;
                }
                out << proof.get();
            }
        }
    }

    if (statsFlag) {
        OwnedString stats;
        if (crp_solver_stats_text(solver, &stats.s) == CRP_OK)
            std::cout << stats.get();
    }

    crp_solver_free(solver);

    switch (result) {
    case CRP_RESULT_UNSATISFIABLE:
    case CRP_RESULT_SATISFIABLE:
        return kDefinite;
    default:
        return kUnknown;
    }
}
