#include "search.hpp"

#include <algorithm>
#include <cassert>

namespace crp {

Solver::Solver(Problem& problem, SearchConfig config)
    : problem_(&problem),
      config_(config),
      trail_(problem.vars),
      rng_(config.seed),
      threshold_(config.initialThreshold) {}

const Clause& Solver::clauseOf(const Active& a) const {
    return a.fromInput ? problem_->inputs[a.index].clause
                       : problem_->learned[a.index].clause;
}

SearchResult Solver::solve() {
    assert(!ran_);
    ran_ = true;
    start_ = Clock::now();

    // An empty input clause is its own refutation.
    for (const InputClause& ic : problem_->inputs)
        if (ic.clause.empty())
            return finish(Outcome::Unsatisfiable, StopReason::None, mkAxiom(ic.clause));

    for (size_t i = 0; i < problem_->inputs.size(); ++i) {
        const Clause& c = problem_->inputs[i].clause;
        active_.push_back({true, i, trail_.registerClause(c), mkAxiom(c), false});
    }
    // Lemmas surviving from an earlier run on the same problem stay usable.
    for (size_t i = 0; i < problem_->learned.size(); ++i) {
        const LearnedClause& lc = problem_->learned[i];
        active_.push_back({false, i, trail_.registerClause(lc.clause), lc.source, false});
    }

    for (;;) {
        if (interrupted())
            return finish(Outcome::Unknown, StopReason::Timeout, nullptr);

        Step s = propagateOnce();
        if (s.kind == StepKind::NewEntry)
            continue;
        if (s.kind == StepKind::ConflictFound) {
            if (auto r = handleConflict(s.conflict))
                return *r;
            continue;
        }

        std::optional<SearchResult> r;
        switch (config_.variant) {
        case Variant::EagerPropagation: r = quiesceEp(); break;
        case Variant::PropagationDepth: r = quiescePd(); break;
        case Variant::TermDepth: r = quiesceTd(); break;
        }
        if (r)
            return *r;
    }
}

// One full round-robin pass over the active clauses, resuming after the
// last producer so that an endlessly productive clause cannot starve the
// ones behind it. Returns on the first propagation or conflict.
Solver::Step Solver::propagateOnce() {
    const size_t n = active_.size();
    for (size_t k = 0; k < n; ++k) {
        const size_t i = (cursor_ + k) % n;
        Active& a = active_[i];
        const Clause& c = clauseOf(a);
        if (c.empty())
            continue;
        if (trail_.uniformlySatisfied(c))
            continue;
        if (!trail_.quasiFalsified(a.ref))
            continue;
        if (auto s = tryClause(a)) {
            cursor_ = (i + 1) % n;
            return *s;
        }
    }
    return {StepKind::Quiescent, nullptr};
}

std::optional<Solver::Step> Solver::tryClause(Active& a) {
    const Clause& c = clauseOf(a);
    const size_t n = c.size();

    std::vector<const std::vector<size_t>*> lists(n);
    size_t holePos = n;
    size_t holes = 0;
    for (size_t i = 0; i < n; ++i) {
        lists[i] = &trail_.attackers(a.ref, i);
        if (lists[i]->empty()) {
            holePos = i;
            ++holes;
        }
    }
    // quasiFalsified guarantees holes <= 1; with a hole only that position
    // can be the conclusion, otherwise every position is a candidate.
    Clause renamed = renameFresh(c, problem_->vars);
    for (size_t j = 0; j < n; ++j) {
        if (holes == 1 && j != holePos)
            continue;
        if (auto s = tryTarget(a, renamed, lists, j))
            return s;
    }
    return std::nullopt;
}

std::optional<Solver::Step> Solver::tryTarget(
    Active& a, const Clause& renamed,
    const std::vector<const std::vector<size_t>*>& lists, size_t target) {
    const size_t n = renamed.size();
    std::vector<size_t> positions;
    positions.reserve(n - 1);
    for (size_t i = 0; i < n; ++i)
        if (i != target)
            positions.push_back(i);

    std::vector<size_t> idx(positions.size(), 0);
    std::vector<size_t> premiseSeqs(positions.size(), 0);
    for (;;) {
        for (size_t k = 0; k < positions.size(); ++k)
            premiseSeqs[k] = (*lists[positions[k]])[idx[k]];
        if (auto s = tryCombo(a, renamed, positions, premiseSeqs, target))
            return s;
        // Odometer over the premise choices, last position fastest.
        size_t k = positions.size();
        for (;;) {
            if (k == 0)
                return std::nullopt;
            --k;
            if (++idx[k] < lists[positions[k]]->size())
                break;
            idx[k] = 0;
        }
    }
}

std::optional<Solver::Step> Solver::tryCombo(Active& a, const Clause& renamed,
                                             const std::vector<size_t>& positions,
                                             const std::vector<size_t>& premiseSeqs,
                                             size_t target) {
    Substitution acc;
    for (size_t k = 0; k < positions.size(); ++k) {
        const TrailEntry& e = trail_.entry(premiseSeqs[k]);
        if (!unifyInto(e.literal.atom, renamed.literals()[positions[k]].atom, acc))
            return std::nullopt;
    }

    int depth = 0;
    if (!renamed.unit()) {
        for (size_t seq : premiseSeqs)
            depth = std::max(depth, trail_.entry(seq).depth);
        depth += 1;
    }
    if (config_.variant == Variant::PropagationDepth && depth > threshold_)
        return std::nullopt;

    Literal conclusion(acc.apply(renamed.literals()[target].atom),
                       renamed.literals()[target].positive);
    if (config_.variant == Variant::TermDepth &&
        termDepth(conclusion.atom) >= threshold_)
        return std::nullopt;

    // A conclusion whose dual unifies with a trail literal closes a
    // conflict; adding it instead would leave the trail inconsistent and
    // make the instance-based satisfiability certificate unsound (e.g.
    // p(a) and a propagated ~p(X) certify each other's instances).
    if (auto attacker = trail_.findAttacker(conclusion)) {
        const TrailEntry& e = trail_.entry(*attacker);
        auto sc = unify(conclusion.atom, e.literal.atom);
        assert(sc); // the attacker was found by unifying this very pair
        std::vector<ProofNodePtr> premises;
        premises.reserve(premiseSeqs.size());
        for (size_t ps : premiseSeqs)
            premises.push_back(trail_.entry(ps).node);
        ProofNodePtr upr =
            mkUpr(std::move(premises), a.source, renamed, target, acc);
        ProofNodePtr conflict = mkConflict(upr, e.node, *sc);
        a.produced = true;
        return Step{StepKind::ConflictFound, std::move(conflict)};
    }

    if (trail_.isStronglyTrue(conclusion))
        return std::nullopt;

    std::vector<ProofNodePtr> premises;
    premises.reserve(premiseSeqs.size());
    for (size_t ps : premiseSeqs)
        premises.push_back(trail_.entry(ps).node);
    ProofNodePtr upr = mkUpr(std::move(premises), a.source, renamed, target, acc);
    trail_.addPropagation(upr->literal, depth, premiseSeqs, upr);
    ++stats_.propagations;
    a.produced = true;
    return Step{StepKind::NewEntry, nullptr};
}

std::optional<SearchResult> Solver::handleConflict(const ProofNodePtr& conflict) {
    ++stats_.conflicts;
    ProofNodePtr learned = mkCdcl(conflict);
    if (learned->clause.empty())
        return finish(Outcome::Unsatisfiable, StopReason::None, learned);

    ++stats_.restarts;
    bool duplicate = false;
    for (const LearnedClause& lc : problem_->learned)
        if (clauseEquals(lc.clause, learned->clause)) {
            duplicate = true;
            break;
        }
    if (!duplicate) {
        problem_->learned.push_back({learned->clause, learned, threshold_ + 1});
        active_.push_back({false, problem_->learned.size() - 1,
                           trail_.registerClause(learned->clause), learned, false});
        ++stats_.learned;
    }
    trail_.reset();
    cursor_ = 0;
    if (config_.maxConflicts && stats_.conflicts >= config_.maxConflicts)
        return finish(Outcome::Unknown, StopReason::ConflictLimit, nullptr);
    return std::nullopt;
}

bool Solver::dismissed(const Clause& c, bool withWeak) const {
    if (trail_.uniformlySatisfied(c))
        return true;
    return withWeak && trail_.weaklySatisfied(c, problem_->learned);
}

bool Solver::allDismissed(bool withWeak) const {
    for (const Active& a : active_)
        if (!dismissed(clauseOf(a), withWeak))
            return false;
    return true;
}

bool Solver::certifyModel() const {
    for (const InputClause& ic : problem_->inputs)
        if (!trail_.satisfiedByRelevantInstances(ic.clause))
            return false;
    return true;
}

std::optional<Literal> Solver::chooseDecision(bool epPdFilters) {
    for (const Active& a : active_) {
        const Clause& c = clauseOf(a);
        if (trail_.uniformlySatisfied(c))
            continue;
        if (epPdFilters && trail_.weaklySatisfied(c, problem_->learned))
            continue;
        for (const Literal& l : c.literals()) {
            // An attacked literal (dual unifiable with a trail literal)
            // covers both a falsified one and a useless one: deciding it
            // breaks trail consistency or reproduces known conflicts.
            if (trail_.attacked(l))
                continue;
            return renameFresh(l, problem_->vars);
        }
    }
    return std::nullopt;
}

void Solver::decide(const Literal& l) {
    trail_.addDecision(l, mkDecision(l));
    ++stats_.decisions;
}

std::optional<SearchResult> Solver::quiesceEp() {
    if (allDismissed(true)) {
        if (certifyModel())
            return finish(Outcome::Satisfiable, StopReason::None, nullptr);
        if (epGroundFallback())
            return std::nullopt;
        return finish(Outcome::Unknown, StopReason::Stalled, nullptr);
    }
    if (auto l = chooseDecision(true)) {
        decide(*l);
        return std::nullopt;
    }
    return finish(Outcome::Unknown, StopReason::Stalled, nullptr);
}

std::optional<SearchResult> Solver::quiescePd() {
    if (allDismissed(true)) {
        if (certifyModel())
            return finish(Outcome::Satisfiable, StopReason::None, nullptr);
        bumpThreshold();
        return std::nullopt;
    }
    bool allProduced = true;
    for (const Active& a : active_) {
        if (dismissed(clauseOf(a), true))
            continue;
        if (!a.produced) {
            allProduced = false;
            break;
        }
    }
    if (allProduced) {
        bumpThreshold();
        return std::nullopt;
    }
    if (auto l = chooseDecision(true)) {
        decide(*l);
        return std::nullopt;
    }
    bumpThreshold();
    return std::nullopt;
}

std::optional<SearchResult> Solver::quiesceTd() {
    if (allDismissed(false)) {
        if (certifyModel())
            return finish(Outcome::Satisfiable, StopReason::None, nullptr);
        bumpThreshold();
        return std::nullopt;
    }
    if (rng_() & 1) {
        if (auto l = chooseDecision(false)) {
            decide(*l);
            return std::nullopt;
        }
    }
    bumpThreshold();
    return std::nullopt;
}

// Certification failed although every clause was dismissed: some relevant
// instance is still unsettled. Assume its first open literal and keep
// going; without one the run is honestly stuck.
bool Solver::epGroundFallback() {
    for (const InputClause& ic : problem_->inputs) {
        if (trail_.satisfiedByRelevantInstances(ic.clause))
            continue;
        for (const Clause& inst : relevantInstances(ic.clause, trail_.modelTerms())) {
            if (trail_.uniformlySatisfied(inst))
                continue;
            for (const Literal& l : inst.literals()) {
                if (trail_.attacked(l) || trail_.isStronglyTrue(l))
                    continue;
                decide(renameFresh(l, problem_->vars));
                return true;
            }
            return false;
        }
        return false;
    }
    return false;
}

void Solver::bumpThreshold() {
    ++threshold_;
    for (Active& a : active_)
        a.produced = false;
}

bool Solver::interrupted() const {
    if (config_.cancel && config_.cancel->load(std::memory_order_relaxed))
        return true;
    if (config_.timeBudgetSeconds > 0) {
        std::chrono::duration<double> elapsed = Clock::now() - start_;
        if (elapsed.count() >= config_.timeBudgetSeconds)
            return true;
    }
    return false;
}

SearchResult Solver::finish(Outcome o, StopReason r, ProofNodePtr root) {
    SearchResult res;
    res.outcome = o;
    res.reason = r;
    res.refutation = std::move(root);
    if (o == Outcome::Satisfiable)
        res.model = std::make_shared<Trail>(trail_);
    std::chrono::duration<double> elapsed = Clock::now() - start_;
    stats_.elapsedSeconds = elapsed.count();
    res.stats = stats_;
    return res;
}

const char* variantName(Variant v) {
    switch (v) {
    case Variant::EagerPropagation: return "ep";
    case Variant::PropagationDepth: return "pd";
    case Variant::TermDepth: return "td";
    }
    return "ep";
}

std::optional<Variant> variantFromName(const std::string& name) {
    if (name == "ep") return Variant::EagerPropagation;
    if (name == "pd") return Variant::PropagationDepth;
    if (name == "td") return Variant::TermDepth;
    return std::nullopt;
}

} // namespace crp
