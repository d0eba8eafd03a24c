#ifndef CRP_SEARCH_HPP
#define CRP_SEARCH_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>

#include "proof.hpp"
#include "trail.hpp"

namespace crp {

// The three propagation regimes. EagerPropagation never bounds propagation
// (complete for refutation only where propagation terminates, e.g. the
// function-free fragment). PropagationDepth bounds the derivation depth of
// propagated literals; TermDepth bounds the term depth of their atoms and
// interleaves decisions with threshold increments by a seeded coin.
enum class Variant { EagerPropagation, PropagationDepth, TermDepth };

struct SearchConfig {
    Variant variant = Variant::EagerPropagation;
    uint64_t seed = 0;               // drives TermDepth's coin only
    double timeBudgetSeconds = 60.0; // <= 0: no time budget
    uint64_t maxConflicts = 0;       // 0: no conflict budget
    int initialThreshold = 0;        // starting bound for PD and TD
    // Cooperative interruption: polled between propagation steps.
    const std::atomic<bool>* cancel = nullptr;
};

struct SearchStats {
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    uint64_t conflicts = 0;
    uint64_t restarts = 0; // conflicts that did not learn the empty clause
    uint64_t learned = 0;  // clauses appended to the learned list
    double elapsedSeconds = 0.0;
};

enum class Outcome { Unsatisfiable, Satisfiable, Unknown };

// Why a run ended without a verdict. Stalled: quiescent, nothing to decide,
// yet the model could not be certified (EagerPropagation only).
enum class StopReason { None, Timeout, ConflictLimit, Stalled };

struct SearchResult {
    Outcome outcome = Outcome::Unknown;
    StopReason reason = StopReason::None;
    ProofNodePtr refutation;            // set iff Unsatisfiable
    std::shared_ptr<const Trail> model; // set iff Satisfiable
    SearchStats stats;

    bool unsat() const { return outcome == Outcome::Unsatisfiable; }
    bool sat() const { return outcome == Outcome::Satisfiable; }
};

// One run of the conflict-driven search over a problem. The solver appends
// the clauses it learns to the problem's learned list; the problem must
// outlive the solver and any SearchResult taken from it (the model shares
// the problem's variable pool).
class Solver {
public:
    Solver(Problem& problem, SearchConfig config);

    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    // Runs to a verdict or budget exhaustion. Call at most once.
    SearchResult solve();

    const Trail& trail() const { return trail_; }
    int threshold() const { return threshold_; }

private:
    using Clock = std::chrono::steady_clock;

    // A clause the propagation scan considers: an input clause or a learned
    // clause, its registration in the trail index, and the proof node that
    // concludes it. `produced` is the PropagationDepth round flag.
    struct Active {
        bool fromInput = true;
        size_t index = 0;
        Trail::ClauseRef ref = 0;
        ProofNodePtr source;
        bool produced = false;
    };

    enum class StepKind { NewEntry, ConflictFound, Quiescent };
    struct Step {
        StepKind kind;
        ProofNodePtr conflict;
    };

    const Clause& clauseOf(const Active& a) const;

    Step propagateOnce();
    std::optional<Step> tryClause(Active& a);
    std::optional<Step> tryTarget(Active& a, const Clause& renamed,
                                  const std::vector<const std::vector<size_t>*>& lists,
                                  size_t target);
    std::optional<Step> tryCombo(Active& a, const Clause& renamed,
                                 const std::vector<size_t>& positions,
                                 const std::vector<size_t>& premiseSeqs,
                                 size_t target);

    // nullopt: continue the loop. Otherwise the final result.
    std::optional<SearchResult> handleConflict(const ProofNodePtr& conflict);
    std::optional<SearchResult> quiesceEp();
    std::optional<SearchResult> quiescePd();
    std::optional<SearchResult> quiesceTd();

    bool dismissed(const Clause& c, bool withWeak) const;
    bool allDismissed(bool withWeak) const;
    bool certifyModel() const;
    std::optional<Literal> chooseDecision(bool epPdFilters);
    void decide(const Literal& l);
    bool epGroundFallback();
    void bumpThreshold();

    bool interrupted() const;
    SearchResult finish(Outcome o, StopReason r, ProofNodePtr root);

    Problem* problem_;
    SearchConfig config_;
    Trail trail_;
    std::mt19937_64 rng_;
    SearchStats stats_;
    std::vector<Active> active_;
    size_t cursor_ = 0; // round-robin scan position into active_
    int threshold_ = 0;
    Clock::time_point start_{};
    bool ran_ = false;
};

const char* variantName(Variant v);
std::optional<Variant> variantFromName(const std::string& name);

} // namespace crp

#endif
