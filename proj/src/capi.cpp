#include "crp.h"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proof.hpp"
#include "search.hpp"
#include "tptp.hpp"

struct crp_problem {
    std::shared_ptr<crp::Problem> problem;
};

struct crp_solver {
    std::shared_ptr<crp::Problem> problem;
    crp::SearchConfig config;
    std::atomic<bool> cancel{false};
    std::optional<crp::SearchResult> result;
};

namespace {

char* heapString(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string joinDiagnostics(const std::vector<crp::Diagnostic>& ds) {
    std::string out;
    for (const crp::Diagnostic& d : ds) {
        out += crp::formatDiagnostic(d);
        out += '\n';
    }
    return out;
}

crp_status finishParse(crp::ParseResult r, crp_problem** out, char** diagnostics) {
    if (diagnostics)
        *diagnostics = heapString(joinDiagnostics(r.diagnostics));
    if (!r.ok())
        return CRP_ERROR_PARSE;
    *out = new crp_problem{
        std::make_shared<crp::Problem>(std::move(*r.problem))};
    return CRP_OK;
}

const char* szsWord(const crp::SearchResult& r) {
    switch (r.outcome) {
    case crp::Outcome::Unsatisfiable: return "Unsatisfiable";
    case crp::Outcome::Satisfiable: return "Satisfiable";
    case crp::Outcome::Unknown:
        return r.reason == crp::StopReason::Timeout ? "Timeout" : "GaveUp";
    }
    return "GaveUp";
}

crp_result resultCode(const crp::SearchResult& r) {
    switch (r.outcome) {
    case crp::Outcome::Unsatisfiable: return CRP_RESULT_UNSATISFIABLE;
    case crp::Outcome::Satisfiable: return CRP_RESULT_SATISFIABLE;
    case crp::Outcome::Unknown: break;
    }
    switch (r.reason) {
    case crp::StopReason::ConflictLimit: return CRP_RESULT_CONFLICT_LIMIT;
    case crp::StopReason::Stalled: return CRP_RESULT_STALLED;
    default: return CRP_RESULT_TIMEOUT;
    }
}

} // namespace

extern "C" {

const char* crp_version(void) { return "0.1.0"; }

void crp_free_string(char* s) { std::free(s); }

crp_status crp_problem_parse_file(const char* path,
                                  const char* const* include_dirs,
                                  size_t include_dir_count, crp_problem** out,
                                  char** diagnostics) {
    if (!path || !out || (include_dir_count > 0 && !include_dirs))
        return CRP_ERROR_ARGUMENT;
    try {
        std::vector<std::string> dirs(include_dirs,
                                      include_dirs + include_dir_count);
        return finishParse(crp::parseProblemFile(path, dirs), out, diagnostics);
    } catch (...) {
        return CRP_ERROR_INTERNAL;
    }
}

crp_status crp_problem_parse_text(const char* text, const char* display_name,
                                  crp_problem** out, char** diagnostics) {
    if (!text || !out)
        return CRP_ERROR_ARGUMENT;
    try {
        return finishParse(
            crp::parseProblemText(text, display_name ? display_name : "input"),
            out, diagnostics);
    } catch (...) {
        return CRP_ERROR_INTERNAL;
    }
}

void crp_problem_free(crp_problem* p) { delete p; }

size_t crp_problem_clause_count(const crp_problem* p) {
    return p ? p->problem->inputs.size() : 0;
}

crp_status crp_problem_clause_text(const crp_problem* p, size_t index,
                                   char** out) {
    if (!p || !out)
        return CRP_ERROR_ARGUMENT;
    if (index >= p->problem->inputs.size())
        return CRP_ERROR_ARGUMENT;
    try {
        *out = heapString(crp::formatClause(p->problem->inputs[index].clause,
                                            p->problem->sig, p->problem->vars));
        return *out ? CRP_OK : CRP_ERROR_INTERNAL;
    } catch (...) {
        return CRP_ERROR_INTERNAL;
    }
}

crp_status crp_solver_new(const crp_problem* p, crp_solver** out) {
    if (!p || !out)
        return CRP_ERROR_ARGUMENT;
    *out = new crp_solver{p->problem, crp::SearchConfig{}, {false}, {}};
    return CRP_OK;
}

void crp_solver_free(crp_solver* s) { delete s; }

crp_status crp_solver_set_variant(crp_solver* s, crp_variant v) {
    if (!s)
        return CRP_ERROR_ARGUMENT;
    switch (v) {
    case CRP_VARIANT_EP: s->config.variant = crp::Variant::EagerPropagation; break;
    case CRP_VARIANT_PD: s->config.variant = crp::Variant::PropagationDepth; break;
    case CRP_VARIANT_TD: s->config.variant = crp::Variant::TermDepth; break;
    default: return CRP_ERROR_ARGUMENT;
    }
    return CRP_OK;
}

crp_status crp_solver_set_seed(crp_solver* s, uint64_t seed) {
    if (!s)
        return CRP_ERROR_ARGUMENT;
    s->config.seed = seed;
    return CRP_OK;
}

crp_status crp_solver_set_time_budget(crp_solver* s, double seconds) {
    if (!s)
        return CRP_ERROR_ARGUMENT;
    s->config.timeBudgetSeconds = seconds;
    return CRP_OK;
}

crp_status crp_solver_set_max_conflicts(crp_solver* s, uint64_t conflicts) {
    if (!s)
        return CRP_ERROR_ARGUMENT;
    s->config.maxConflicts = conflicts;
    return CRP_OK;
}

crp_status crp_solver_set_initial_threshold(crp_solver* s, int threshold) {
    if (!s || threshold < 0)
        return CRP_ERROR_ARGUMENT;
    s->config.initialThreshold = threshold;
    return CRP_OK;
}

void crp_solver_cancel(crp_solver* s) {
    if (s)
        s->cancel.store(true, std::memory_order_relaxed);
}

crp_status crp_solver_run(crp_solver* s, crp_result* out) {
    if (!s)
        return CRP_ERROR_ARGUMENT;
    try {
        crp::SearchConfig cfg = s->config;
        cfg.cancel = &s->cancel;
        crp::Solver solver(*s->problem, cfg);
        s->result = solver.solve();
        if (out)
            *out = resultCode(*s->result);
        return CRP_OK;
    } catch (...) {
        return CRP_ERROR_INTERNAL;
    }
}

int crp_solver_has_result(const crp_solver* s) {
    return s && s->result ? 1 : 0;
}

crp_status crp_solver_result(const crp_solver* s, crp_result* out) {
    if (!s || !out)
        return CRP_ERROR_ARGUMENT;
    if (!s->result)
        return CRP_ERROR_STATE;
    *out = resultCode(*s->result);
    return CRP_OK;
}

crp_status crp_solver_status_line(const crp_solver* s, const char* name,
                                  char** out) {
    if (!s || !out)
        return CRP_ERROR_ARGUMENT;
    if (!s->result)
        return CRP_ERROR_STATE;
    std::string line = "% SZS status ";
    line += szsWord(*s->result);
    line += " for ";
    line += name ? name : "problem";
    *out = heapString(line);
    return *out ? CRP_OK : CRP_ERROR_INTERNAL;
}

crp_status crp_solver_stats_text(const crp_solver* s, char** out) {
    if (!s || !out)
        return CRP_ERROR_ARGUMENT;
    if (!s->result)
        return CRP_ERROR_STATE;
    const crp::SearchStats& st = s->result->stats;
    char elapsed[64];
    std::snprintf(elapsed, sizeof(elapsed), "%.1f", st.elapsedSeconds);
    std::string text;
    text += "% decisions: " + std::to_string(st.decisions) + "\n";
    text += "% propagations: " + std::to_string(st.propagations) + "\n";
    text += "% conflicts: " + std::to_string(st.conflicts) + "\n";
    text += "% restarts: " + std::to_string(st.restarts) + "\n";
    text += "% learned: " + std::to_string(st.learned) + "\n";
    text += "% elapsed: " + std::string(elapsed) + " s\n";
    *out = heapString(text);
    return *out ? CRP_OK : CRP_ERROR_INTERNAL;
}

crp_status crp_solver_proof_text(const crp_solver* s, char** out) {
    if (!s || !out)
        return CRP_ERROR_ARGUMENT;
    if (!s->result || !s->result->refutation)
        return CRP_ERROR_STATE;
    try {
        *out = heapString(crp::exportProof(s->result->refutation,
                                           s->problem->sig, s->problem->vars));
        return *out ? CRP_OK : CRP_ERROR_INTERNAL;
    } catch (...) {
        return CRP_ERROR_INTERNAL;
    }
}

crp_status crp_solver_model_text(const crp_solver* s, char** out) {
    if (!s || !out)
        return CRP_ERROR_ARGUMENT;
    if (!s->result || !s->result->model)
        return CRP_ERROR_STATE;
    try {
        std::string text;
        for (const crp::TrailEntry& e : s->result->model->entries()) {
            text += crp::formatLiteral(e.literal, s->problem->sig,
                                       s->problem->vars);
            text += '\n';
        }
        *out = heapString(text);
        return *out ? CRP_OK : CRP_ERROR_INTERNAL;
    } catch (...) {
        return CRP_ERROR_INTERNAL;
    }
}

crp_status crp_solver_check_proof(const crp_solver* s, char** error_out) {
    if (!s)
        return CRP_ERROR_ARGUMENT;
    if (!s->result || !s->result->refutation)
        return CRP_ERROR_STATE;
    try {
        crp::CheckResult r =
            crp::checkRefutation(s->result->refutation, s->problem->inputs);
        if (r.ok)
            return CRP_OK;
        if (error_out)
            *error_out = heapString(r.error);
        return CRP_ERROR_PROOF;
    } catch (...) {
        return CRP_ERROR_INTERNAL;
    }
}

uint64_t crp_solver_stat(const crp_solver* s, crp_stat which) {
    if (!s || !s->result)
        return 0;
    const crp::SearchStats& st = s->result->stats;
    switch (which) {
    case CRP_STAT_DECISIONS: return st.decisions;
    case CRP_STAT_PROPAGATIONS: return st.propagations;
    case CRP_STAT_CONFLICTS: return st.conflicts;
    case CRP_STAT_RESTARTS: return st.restarts;
    case CRP_STAT_LEARNED: return st.learned;
    }
    return 0;
}

double crp_solver_elapsed_seconds(const crp_solver* s) {
    return s && s->result ? s->result->stats.elapsedSeconds : 0.0;
}

} // extern "C"
