#ifndef CRP_H
#define CRP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status code returned by every fallible call. */
typedef enum crp_status {
    CRP_OK = 0,
    CRP_ERROR_ARGUMENT = 1, /* null pointer or out-of-range argument */
    CRP_ERROR_PARSE = 2,    /* input could not be parsed */
    CRP_ERROR_STATE = 3,    /* call not valid in the handle's current state */
    CRP_ERROR_PROOF = 4,    /* proof verification rejected the derivation */
    CRP_ERROR_INTERNAL = 5  /* unexpected failure inside the library */
} crp_status;

/* Propagation regime of a run. */
typedef enum crp_variant {
    CRP_VARIANT_EP = 0, /* unbounded propagation */
    CRP_VARIANT_PD = 1, /* propagation-depth bounded */
    CRP_VARIANT_TD = 2  /* term-depth bounded, coin-driven decisions */
} crp_variant;

typedef enum crp_result {
    CRP_RESULT_UNSATISFIABLE = 0,
    CRP_RESULT_SATISFIABLE = 1,
    CRP_RESULT_TIMEOUT = 2,        /* time budget exhausted or cancelled */
    CRP_RESULT_CONFLICT_LIMIT = 3, /* conflict budget exhausted */
    CRP_RESULT_STALLED = 4         /* quiescent but uncertifiable */
} crp_result;

typedef enum crp_stat {
    CRP_STAT_DECISIONS = 0,
    CRP_STAT_PROPAGATIONS = 1,
    CRP_STAT_CONFLICTS = 2,
    CRP_STAT_RESTARTS = 3,
    CRP_STAT_LEARNED = 4
} crp_stat;

typedef struct crp_problem crp_problem;
typedef struct crp_solver crp_solver;

const char* crp_version(void);

/* Every char** out-parameter receives a heap string owned by the caller;
 * release it with crp_free_string. NULL out-parameters are skipped. */
void crp_free_string(char* s);

/* Parses a TPTP CNF problem. On success *out receives a new handle.
 * *diagnostics receives parser warnings and errors (one per line, empty
 * string when there are none) on success and failure alike. */
crp_status crp_problem_parse_file(const char* path,
                                  const char* const* include_dirs,
                                  size_t include_dir_count,
                                  crp_problem** out,
                                  char** diagnostics);
crp_status crp_problem_parse_text(const char* text,
                                  const char* display_name,
                                  crp_problem** out,
                                  char** diagnostics);
void crp_problem_free(crp_problem* p);

size_t crp_problem_clause_count(const crp_problem* p);
/* Formats one input clause back to TPTP literal syntax, e.g.
 * "~p(X) | q(f(X))" or "$false". */
crp_status crp_problem_clause_text(const crp_problem* p, size_t index,
                                   char** out);

/* The solver shares ownership of the problem, so the problem handle may be
 * freed while solvers still use it. Clauses learned during a run stay on
 * the shared problem and seed later runs over the same handle. */
crp_status crp_solver_new(const crp_problem* p, crp_solver** out);
void crp_solver_free(crp_solver* s);

crp_status crp_solver_set_variant(crp_solver* s, crp_variant v);
crp_status crp_solver_set_seed(crp_solver* s, uint64_t seed);
/* seconds <= 0 disables the time budget; the default is 60 seconds. */
crp_status crp_solver_set_time_budget(crp_solver* s, double seconds);
/* 0 (the default) disables the conflict budget. */
crp_status crp_solver_set_max_conflicts(crp_solver* s, uint64_t conflicts);
crp_status crp_solver_set_initial_threshold(crp_solver* s, int threshold);

/* Thread-safe. Interrupts a concurrently running crp_solver_run at the
 * next propagation step; the flag is sticky for the handle. */
void crp_solver_cancel(crp_solver* s);

/* Runs the search to a verdict or budget exhaustion and stores the result
 * on the handle. *out (optional) receives the verdict. */
crp_status crp_solver_run(crp_solver* s, crp_result* out);

int crp_solver_has_result(const crp_solver* s);
crp_status crp_solver_result(const crp_solver* s, crp_result* out);

/* "% SZS status <verdict> for <name>" without a trailing newline, using
 * the vocabulary Unsatisfiable / Satisfiable / Timeout / GaveUp. */
crp_status crp_solver_status_line(const crp_solver* s, const char* name,
                                  char** out);
/* One "% <key>: <value>" line per statistic, newline-terminated. */
crp_status crp_solver_stats_text(const crp_solver* s, char** out);
/* Unsatisfiable runs only: the derivation, one inference per line. */
crp_status crp_solver_proof_text(const crp_solver* s, char** out);
/* Satisfiable runs only: the model, one trail literal per line. */
crp_status crp_solver_model_text(const crp_solver* s, char** out);
/* Independently re-verifies a stored refutation. CRP_OK when accepted;
 * CRP_ERROR_PROOF and a reason in *error_out when rejected. */
crp_status crp_solver_check_proof(const crp_solver* s, char** error_out);

/* 0 when the statistic is unknown or no result is stored. */
uint64_t crp_solver_stat(const crp_solver* s, crp_stat which);
double crp_solver_elapsed_seconds(const crp_solver* s);

#ifdef __cplusplus
}
#endif

#endif
