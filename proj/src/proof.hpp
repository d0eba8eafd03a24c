#ifndef CRP_PROOF_HPP
#define CRP_PROOF_HPP

#include <string>
#include <vector>

#include "clause.hpp"

namespace crp {

enum class Rule {
    Axiom,    // an input clause, used as given
    Decision, // an assumed unit, discharged by a later Cdcl node
    Upr,      // unit-propagating resolution: n units against an n+1 clause
    Conflict, // two units whose atoms unify with opposite polarity
    Cdcl,     // clause learning: turns a conflict into a lemma
};

// One inference in the derivation DAG. The fields used depend on the rule;
// nodes are built through the mk* factories, which validate the side
// conditions and compute the conclusions. The fields stay public so the
// checker tests can assemble deliberately broken nodes.
class ProofNode {
public:
    Rule rule = Rule::Axiom;

    // Axiom: the input clause. Cdcl: the learned clause.
    Clause clause;

    // Decision: the assumed literal. Upr: the conclusion literal.
    Literal literal;

    // Upr: the unit premises, paired in order with the non-target literal
    // positions of renamedClause. Conflict: exactly {left, right}.
    // Cdcl: exactly {the conflict node}.
    std::vector<ProofNodePtr> premises;

    // Upr only: where the resolved clause comes from (Axiom or Cdcl node)
    // and the fresh-renamed copy actually used.
    ProofNodePtr clauseSource;
    Clause renamedClause;
    size_t targetPos = 0;

    // Upr: simultaneous unifier of all premise/literal pairs.
    // Conflict: unifier of the two dual atoms.
    Substitution sigma;

    // Cdcl only: the Decision nodes this learning step discharges.
    std::vector<ProofNodePtr> discharged;
};

// The clause a node concludes: Axiom/Cdcl their clause, Decision/Upr the
// unit clause of their literal, Conflict the empty clause.
Clause conclusionClause(const ProofNode& n);

// True iff the node concludes a unit; the literal is written to *out.
bool concludesUnit(const ProofNode& n, Literal* out);

// Factories. They throw std::logic_error when the rule's side conditions
// fail; reaching such a throw is a solver bug, not an input error.
ProofNodePtr mkAxiom(Clause c);
ProofNodePtr mkDecision(Literal l);
ProofNodePtr mkUpr(std::vector<ProofNodePtr> premises, ProofNodePtr source,
                   Clause renamedClause, size_t targetPos, Substitution sigma);
ProofNodePtr mkConflict(ProofNodePtr left, ProofNodePtr right, Substitution sigma);
ProofNodePtr mkCdcl(ProofNodePtr conflict);

// What a Cdcl node learns: for every undischarged Decision leaf reachable
// from the conflict (not descending into Axiom or Cdcl nodes) and every
// DAG path to it, the dual of the leaf literal under the composition of
// the unifiers along that path.
struct Analysis {
    Clause learned;
    std::vector<ProofNodePtr> discharged; // each decision once, first-seen order
};
Analysis analyzeConflict(const ProofNodePtr& conflict);

struct CheckResult {
    bool ok = false;
    std::string error; // empty when ok

    static CheckResult pass() { return {true, ""}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

// Independent verification of a refutation: walks the DAG from the root,
// rejects cycles, re-checks every node's side conditions by applying the
// stored substitutions, requires every Axiom clause to be an input clause,
// every Decision to be discharged exactly once, and the root to conclude
// the empty clause.
CheckResult checkRefutation(const ProofNodePtr& root,
                            const std::vector<InputClause>& inputs);

// Text form, one line per node, children before parents:
//   <id>. <rule> [<child ids>] <extras> {<substitution>} <conclusion>
std::string exportProof(const ProofNodePtr& root, const Signature& sig,
                        const VarPool& vars);

size_t proofSize(const ProofNodePtr& root);

std::string formatSubstitution(const Substitution& s, const Signature& sig,
                               const VarPool& vars);

} // namespace crp

#endif
