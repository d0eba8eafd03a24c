#ifndef CRP_TRAIL_HPP
#define CRP_TRAIL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "clause.hpp"

namespace crp {

// One model element: a decision literal or a propagated literal together
// with its derivation. Propagated entries reference strictly earlier
// entries as premises; decisions and unit-clause propagations have
// propagation depth 0, other propagations 1 + the maximum premise depth.
struct TrailEntry {
    Literal literal;
    bool decision = false;
    int depth = 0;
    size_t seq = 0;
    ProofNodePtr node;            // derivation of this entry
    std::vector<size_t> premises; // seqs of the unit premises (propagations)
};

// The model under construction. Besides the entry list the trail maintains,
// per registered clause and literal position, the set of entries whose
// literal is unifiable with that literal's dual (its attackers); this index
// drives the quasi-falsification test and supplies propagation candidates.
class Trail {
public:
    using ClauseRef = size_t;

    explicit Trail(VarPool& pool) : pool_(pool) {}

    // Makes a clause known to the index. The stored copy is renamed fresh
    // so index unifications can never capture trail variables.
    ClauseRef registerClause(const Clause& c);
    size_t registeredCount() const { return clauses_.size(); }
    const Clause& registered(ClauseRef cr) const { return clauses_[cr].copy; }

    const std::vector<TrailEntry>& entries() const { return entries_; }
    const TrailEntry& entry(size_t seq) const { return entries_[seq]; }
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    size_t addDecision(Literal l, ProofNodePtr node);
    size_t addPropagation(Literal l, int depth, std::vector<size_t> premises,
                          ProofNodePtr node);
    // Empties the trail but keeps the registered clauses.
    void reset();

    // True: some trail literal generalizes l (the substitution applies to
    // the trail literal only). Strongly true: equal up to renaming.
    bool isTrue(const Literal& l) const;
    bool isStronglyTrue(const Literal& l) const;
    bool isFalsified(const Literal& l) const { return isTrue(l.dual()); }
    // Earliest entry witnessing isTrue(l), if any.
    std::optional<size_t> findGeneralizing(const Literal& l) const;

    // Earliest entry of opposite polarity whose atom unifies with l's.
    // Additions that are attacked would make the trail inconsistent: an
    // attacked propagation is a conflict, an attacked decision is skipped.
    std::optional<size_t> findAttacker(const Literal& l) const;
    bool attacked(const Literal& l) const { return findAttacker(l).has_value(); }

    bool uniformlySatisfied(const Clause& c) const;

    // A decision candidate is useless when it conflicts with the trail and
    // every such conflict would only re-learn a known unit: for each trail
    // literal unifiable with dual(l) (mgu s), the unit clause of
    // dual(apply(l, s)) equals a learned clause or is already true.
    bool uselessDecision(const Literal& l,
                         const std::vector<LearnedClause>& learned) const;
    bool weaklySatisfied(const Clause& c,
                         const std::vector<LearnedClause>& learned) const;

    // Final satisfiability certificate: every instance of c over the
    // current model terms has a true literal. Exponential; used once.
    bool satisfiedByRelevantInstances(const Clause& c) const;

    // At most one literal position of cr has no attacker on the trail.
    bool quasiFalsified(ClauseRef cr) const;
    const std::vector<size_t>& attackers(ClauseRef cr, size_t pos) const {
        return clauses_[cr].attackers[pos];
    }

    // All subterms of the arguments of trail atoms, in first-seen order.
    const std::vector<Term>& modelTerms() const { return modelTerms_; }

    // Recomputes the unifiability index from scratch and compares.
    bool debugIndexConsistent() const;

private:
    struct Registered {
        Clause copy; // fresh-renamed for index unifications
        std::vector<std::vector<size_t>> attackers;
    };

    void indexNewEntry(const TrailEntry& e);
    static bool attacks(const Literal& entryLit, const Literal& clauseLit);

    VarPool& pool_;
    std::vector<TrailEntry> entries_;
    std::vector<Registered> clauses_;
    std::vector<Term> modelTerms_;
};

} // namespace crp

#endif
