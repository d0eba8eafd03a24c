#include "trail.hpp"

#include <cassert>

namespace crp {

Trail::ClauseRef Trail::registerClause(const Clause& c) {
    Registered reg;
    reg.copy = renameFresh(c, pool_);
    reg.attackers.resize(reg.copy.size());
    // Late registration (learned clauses) must see existing entries.
    for (const TrailEntry& e : entries_)
        for (size_t pos = 0; pos < reg.copy.size(); ++pos)
            if (attacks(e.literal, reg.copy.literals()[pos]))
                reg.attackers[pos].push_back(e.seq);
    clauses_.push_back(std::move(reg));
    return clauses_.size() - 1;
}

bool Trail::attacks(const Literal& entryLit, const Literal& clauseLit) {
    return entryLit.positive != clauseLit.positive &&
           unify(entryLit.atom, clauseLit.atom).has_value();
}

void Trail::indexNewEntry(const TrailEntry& e) {
    for (Registered& reg : clauses_)
        for (size_t pos = 0; pos < reg.copy.size(); ++pos)
            if (attacks(e.literal, reg.copy.literals()[pos]))
                reg.attackers[pos].push_back(e.seq);

    std::vector<Term> subs;
    for (const Term& arg : e.literal.atom.args())
        arg.collectSubterms(subs);
    for (const Term& t : subs) {
        bool seen = false;
        for (const Term& have : modelTerms_)
            seen = seen || have == t;
        if (!seen)
            modelTerms_.push_back(t);
    }
}

size_t Trail::addDecision(Literal l, ProofNodePtr node) {
    assert(!isStronglyTrue(l) && "duplicate trail literal");
    TrailEntry e;
    e.literal = std::move(l);
    e.decision = true;
    e.depth = 0;
    e.seq = entries_.size();
    e.node = std::move(node);
    entries_.push_back(e);
    indexNewEntry(entries_.back());
    return entries_.back().seq;
}

size_t Trail::addPropagation(Literal l, int depth, std::vector<size_t> premises,
                             ProofNodePtr node) {
    assert(!isStronglyTrue(l) && "duplicate trail literal");
#ifndef NDEBUG
    for (size_t p : premises)
        assert(p < entries_.size() && "premises must precede the entry");
#endif
    TrailEntry e;
    e.literal = std::move(l);
    e.decision = false;
    e.depth = depth;
    e.seq = entries_.size();
    e.node = std::move(node);
    e.premises = std::move(premises);
    entries_.push_back(e);
    indexNewEntry(entries_.back());
    return entries_.back().seq;
}

void Trail::reset() {
    entries_.clear();
    modelTerms_.clear();
    for (Registered& reg : clauses_)
        for (auto& list : reg.attackers)
            list.clear();
}

bool Trail::isTrue(const Literal& l) const {
    return findGeneralizing(l).has_value();
}

std::optional<size_t> Trail::findGeneralizing(const Literal& l) const {
    for (const TrailEntry& e : entries_) {
        if (e.literal.positive != l.positive)
            continue;
        if (matchTerm(e.literal.atom, l.atom))
            return e.seq;
    }
    return std::nullopt;
}

std::optional<size_t> Trail::findAttacker(const Literal& l) const {
    for (const TrailEntry& e : entries_)
        if (attacks(e.literal, l))
            return e.seq;
    return std::nullopt;
}

bool Trail::isStronglyTrue(const Literal& l) const {
    for (const TrailEntry& e : entries_)
        if (isVariant(e.literal, l))
            return true;
    return false;
}

bool Trail::uniformlySatisfied(const Clause& c) const {
    for (const Literal& l : c.literals())
        if (isTrue(l))
            return true;
    return false;
}

bool Trail::uselessDecision(const Literal& l,
                            const std::vector<LearnedClause>& learned) const {
    bool anyConflict = false;
    for (const TrailEntry& e : entries_) {
        if (e.literal.positive == l.positive)
            continue;
        auto s = unify(e.literal.atom, l.atom);
        if (!s)
            continue;
        anyConflict = true;
        // The conflict with e would learn the unit dual(l s).
        Literal unit(s->apply(l.atom), !l.positive);
        if (isTrue(unit))
            continue;
        Clause unitClause = Clause::fromLiterals({unit});
        bool known = false;
        for (const LearnedClause& lc : learned)
            known = known || clauseEquals(unitClause, lc.clause);
        if (!known)
            return false;
    }
    return anyConflict;
}

bool Trail::weaklySatisfied(const Clause& c,
                            const std::vector<LearnedClause>& learned) const {
    if (c.empty())
        return false;
    for (const Literal& l : c.literals())
        if (!uselessDecision(l, learned))
            return false;
    return true;
}

bool Trail::satisfiedByRelevantInstances(const Clause& c) const {
    for (const Clause& inst : relevantInstances(c, modelTerms_))
        if (!uniformlySatisfied(inst))
            return false;
    return true;
}

bool Trail::quasiFalsified(ClauseRef cr) const {
    const Registered& reg = clauses_[cr];
    size_t holes = 0;
    for (const auto& list : reg.attackers)
        holes += list.empty();
    return holes <= 1;
}

bool Trail::debugIndexConsistent() const {
    for (const Registered& reg : clauses_) {
        for (size_t pos = 0; pos < reg.copy.size(); ++pos) {
            std::vector<size_t> fresh;
            for (const TrailEntry& e : entries_)
                if (attacks(e.literal, reg.copy.literals()[pos]))
                    fresh.push_back(e.seq);
            if (fresh != reg.attackers[pos])
                return false;
        }
    }
    return true;
}

} // namespace crp
