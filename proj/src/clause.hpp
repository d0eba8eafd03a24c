#ifndef CRP_CLAUSE_HPP
#define CRP_CLAUSE_HPP

#include <memory>
#include <string>
#include <vector>

#include "term.hpp"

namespace crp {

class ProofNode;
using ProofNodePtr = std::shared_ptr<const ProofNode>;

// A literal is a predicate atom with a polarity. The atom is an ordinary
// term whose head symbol is a predicate.
struct Literal {
    Term atom;
    bool positive = true;

    Literal() = default;
    Literal(Term a, bool p) : atom(std::move(a)), positive(p) {}

    Literal dual() const { return Literal(atom, !positive); }

    bool operator==(const Literal& other) const {
        return positive == other.positive && atom == other.atom;
    }
    bool operator!=(const Literal& other) const { return !(*this == other); }
};

bool isVariant(const Literal& a, const Literal& b);

// A clause in sequent form: antecedent atoms are the negated literals,
// succedent atoms the positive ones. Each side has set semantics; the
// stored order is the first-occurrence input order. The canonical literal
// enumeration lists the antecedent (negatively) before the succedent.
class Clause {
public:
    Clause() = default;
    Clause(std::vector<Term> antecedent, std::vector<Term> succedent);

    static Clause fromLiterals(const std::vector<Literal>& lits);

    const std::vector<Term>& antecedent() const { return antecedent_; }
    const std::vector<Term>& succedent() const { return succedent_; }
    const std::vector<Literal>& literals() const { return literals_; }

    bool empty() const { return literals_.empty(); }
    bool unit() const { return literals_.size() == 1; }
    size_t size() const { return literals_.size(); }

    // Distinct variables in canonical literal order of first occurrence.
    const std::vector<VarId>& vars() const { return vars_; }
    bool ground() const { return vars_.empty(); }

    Clause apply(const Substitution& s) const;

private:
    std::vector<Term> antecedent_;
    std::vector<Term> succedent_;
    std::vector<Literal> literals_;
    std::vector<VarId> vars_;
};

// Equality of sequents up to a consistent variable renaming. Sides are
// compared as sets, so literal order is irrelevant.
bool clauseEquals(const Clause& a, const Clause& b);

// A fresh copy whose variables come from `pool` and collide with nothing
// allocated before. Needed so clause variables never meet trail variables.
Clause renameFresh(const Clause& c, VarPool& pool);
Literal renameFresh(const Literal& l, VarPool& pool);

// All instances of `c` obtained by substituting every variable by a term
// from `terms`, in deterministic enumeration order. A ground clause has
// itself as its only relevant instance even when `terms` is empty; a
// non-ground clause with no candidate terms has none.
std::vector<Clause> relevantInstances(const Clause& c, const std::vector<Term>& terms);

struct InputClause {
    std::string name;
    std::string role;
    Clause clause;
};

struct LearnedClause {
    Clause clause;
    ProofNodePtr source;     // the learning inference
    int depthStamp = 0;      // propagation-depth threshold + 1 at learn time
};

// A loaded problem: signature, variable names, input clauses, and the
// clauses learned while solving (appended only by the search engine).
struct Problem {
    Signature sig;
    VarPool vars;
    std::vector<InputClause> inputs;
    std::vector<LearnedClause> learned;
};

// Formatting back to TPTP syntax: `$false` for the empty clause,
// `~p(X) | q(X)` style otherwise, canonical literal order.
std::string formatLiteral(const Literal& l, const Signature& sig, const VarPool& vars);
std::string formatClause(const Clause& c, const Signature& sig, const VarPool& vars);

} // namespace crp

#endif
