#include "proof.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace crp {

Clause conclusionClause(const ProofNode& n) {
    switch (n.rule) {
    case Rule::Axiom:
    case Rule::Cdcl:
        return n.clause;
    case Rule::Decision:
    case Rule::Upr:
        return Clause::fromLiterals({n.literal});
    case Rule::Conflict:
        return Clause();
    }
    return Clause();
}

bool concludesUnit(const ProofNode& n, Literal* out) {
    switch (n.rule) {
    case Rule::Decision:
    case Rule::Upr:
        if (out)
            *out = n.literal;
        return true;
    case Rule::Axiom:
    case Rule::Cdcl:
        if (n.clause.unit()) {
            if (out)
                *out = n.clause.literals()[0];
            return true;
        }
        return false;
    case Rule::Conflict:
        return false;
    }
    return false;
}

namespace {

void visitPaths(const ProofNodePtr& n, const Substitution& down,
                std::vector<Literal>& lits, std::vector<ProofNodePtr>& decisions) {
    switch (n->rule) {
    case Rule::Decision: {
        lits.push_back(Literal(down.apply(n->literal.atom), !n->literal.positive));
        if (std::find(decisions.begin(), decisions.end(), n) == decisions.end())
            decisions.push_back(n);
        break;
    }
    case Rule::Upr:
    case Rule::Conflict: {
        Substitution next = Substitution::compose(n->sigma, down);
        for (const ProofNodePtr& p : n->premises)
            visitPaths(p, next, lits, decisions);
        break;
    }
    case Rule::Axiom:
    case Rule::Cdcl:
        // Closed subderivations: axioms assume nothing, and a Cdcl node's
        // decisions are already discharged inside it.
        break;
    }
}

// Shared by the factories (which throw) and the checker (which reports).
// Returns "" when the node's local side conditions hold.
std::string validateNode(const ProofNode& n) {
    switch (n.rule) {
    case Rule::Axiom:
        if (!n.premises.empty() || n.clauseSource || !n.discharged.empty())
            return "axiom node with children";
        return "";
    case Rule::Decision:
        if (!n.premises.empty() || n.clauseSource || !n.discharged.empty())
            return "decision node with children";
        if (!n.literal.atom.valid())
            return "decision node without a literal";
        return "";
    case Rule::Upr: {
        if (!n.clauseSource)
            return "resolution without a clause";
        if (n.clauseSource->rule != Rule::Axiom && n.clauseSource->rule != Rule::Cdcl)
            return "resolved clause must come from an input or learned clause";
        if (!clauseEquals(n.renamedClause, conclusionClause(*n.clauseSource)))
            return "renamed clause differs from its source";
        if (n.renamedClause.size() != n.premises.size() + 1)
            return "premise count does not match clause size";
        if (n.targetPos >= n.renamedClause.size())
            return "target position out of range";
        size_t pi = 0;
        for (size_t pos = 0; pos < n.renamedClause.size(); ++pos) {
            if (pos == n.targetPos)
                continue;
            const Literal& cl = n.renamedClause.literals()[pos];
            Literal unit;
            if (!concludesUnit(*n.premises[pi], &unit))
                return "resolution premise is not a unit";
            if (unit.positive == cl.positive)
                return "premise polarity matches the clause literal";
            if (n.sigma.apply(unit.atom) != n.sigma.apply(cl.atom))
                return "substitution fails to unify a premise pair";
            ++pi;
        }
        const Literal& target = n.renamedClause.literals()[n.targetPos];
        if (n.literal.positive != target.positive ||
            n.literal.atom != n.sigma.apply(target.atom))
            return "conclusion is not the unified target literal";
        if (!n.discharged.empty())
            return "resolution node cannot discharge decisions";
        return "";
    }
    case Rule::Conflict: {
        if (n.premises.size() != 2)
            return "conflict requires exactly two premises";
        Literal l, r;
        if (!concludesUnit(*n.premises[0], &l) || !concludesUnit(*n.premises[1], &r))
            return "conflict premise is not a unit";
        if (l.positive == r.positive)
            return "conflict premises have equal polarity";
        if (n.sigma.apply(l.atom) != n.sigma.apply(r.atom))
            return "substitution fails to unify the conflicting atoms";
        if (n.clauseSource || !n.discharged.empty())
            return "conflict node with extra children";
        return "";
    }
    case Rule::Cdcl: {
        if (n.premises.size() != 1 || n.premises[0]->rule != Rule::Conflict)
            return "learning requires exactly one conflict premise";
        Analysis a = analyzeConflict(n.premises[0]);
        if (!clauseEquals(n.clause, a.learned))
            return "learned clause does not match the conflict analysis";
        if (n.discharged.size() != a.discharged.size())
            return "discharged decisions do not match the conflict analysis";
        for (const ProofNodePtr& d : n.discharged)
            if (std::find(a.discharged.begin(), a.discharged.end(), d) ==
                a.discharged.end())
                return "discharged decision does not occur in the conflict";
        for (const ProofNodePtr& d : a.discharged)
            if (std::find(n.discharged.begin(), n.discharged.end(), d) ==
                n.discharged.end())
                return "conflict decision left undischarged";
        return "";
    }
    }
    return "unknown rule";
}

void throwIfInvalid(const ProofNodePtr& n) {
    std::string err = validateNode(*n);
    if (!err.empty())
        throw std::logic_error("invalid inference: " + err);
}

// Children in deterministic order: premises, clause source, discharged.
void eachChild(const ProofNode& n, const std::function<void(const ProofNodePtr&)>& f) {
    for (const ProofNodePtr& p : n.premises)
        f(p);
    if (n.clauseSource)
        f(n.clauseSource);
    for (const ProofNodePtr& d : n.discharged)
        f(d);
}

// Iterative postorder walk; returns false on a cycle.
bool postorder(const ProofNodePtr& root, std::vector<ProofNodePtr>& out) {
    enum { Gray = 1, Black = 2 };
    std::unordered_map<const ProofNode*, int> state;
    std::vector<std::pair<ProofNodePtr, size_t>> stack;
    stack.push_back({root, 0});
    state[root.get()] = Gray;
    while (!stack.empty()) {
        ProofNodePtr node = stack.back().first;
        std::vector<ProofNodePtr> kids;
        eachChild(*node, [&](const ProofNodePtr& c) { kids.push_back(c); });
        size_t next = stack.back().second;
        if (next < kids.size()) {
            stack.back().second = next + 1;
            ProofNodePtr child = kids[next];
            auto it = state.find(child.get());
            if (it == state.end()) {
                state[child.get()] = Gray;
                stack.push_back({child, 0});
            } else if (it->second == Gray) {
                return false;
            }
        } else {
            state[node.get()] = Black;
            out.push_back(node);
            stack.pop_back();
        }
    }
    return true;
}

} // namespace

Analysis analyzeConflict(const ProofNodePtr& conflict) {
    std::vector<Literal> lits;
    Analysis a;
    visitPaths(conflict, Substitution(), lits, a.discharged);
    a.learned = Clause::fromLiterals(lits);
    return a;
}

ProofNodePtr mkAxiom(Clause c) {
    auto n = std::make_shared<ProofNode>();
    n->rule = Rule::Axiom;
    n->clause = std::move(c);
    return n;
}

ProofNodePtr mkDecision(Literal l) {
    auto n = std::make_shared<ProofNode>();
    n->rule = Rule::Decision;
    n->literal = std::move(l);
    throwIfInvalid(n);
    return n;
}

ProofNodePtr mkUpr(std::vector<ProofNodePtr> premises, ProofNodePtr source,
                   Clause renamedClause, size_t targetPos, Substitution sigma) {
    auto n = std::make_shared<ProofNode>();
    n->rule = Rule::Upr;
    n->premises = std::move(premises);
    n->clauseSource = std::move(source);
    n->renamedClause = std::move(renamedClause);
    n->targetPos = targetPos;
    n->sigma = std::move(sigma);
    const Literal& target = n->renamedClause.literals()[targetPos];
    n->literal = Literal(n->sigma.apply(target.atom), target.positive);
    throwIfInvalid(n);
    return n;
}

ProofNodePtr mkConflict(ProofNodePtr left, ProofNodePtr right, Substitution sigma) {
    auto n = std::make_shared<ProofNode>();
    n->rule = Rule::Conflict;
    n->premises = {std::move(left), std::move(right)};
    n->sigma = std::move(sigma);
    throwIfInvalid(n);
    return n;
}

ProofNodePtr mkCdcl(ProofNodePtr conflict) {
    auto n = std::make_shared<ProofNode>();
    n->rule = Rule::Cdcl;
    n->premises = {std::move(conflict)};
    Analysis a = analyzeConflict(n->premises[0]);
    n->clause = std::move(a.learned);
    n->discharged = std::move(a.discharged);
    throwIfInvalid(n);
    return n;
}

CheckResult checkRefutation(const ProofNodePtr& root,
                            const std::vector<InputClause>& inputs) {
    if (!root)
        return CheckResult::fail("no proof");
    std::vector<ProofNodePtr> order;
    if (!postorder(root, order))
        return CheckResult::fail("derivation contains a cycle");

    std::unordered_map<const ProofNode*, size_t> id;
    for (size_t i = 0; i < order.size(); ++i)
        id[order[i].get()] = i;

    std::unordered_map<const ProofNode*, int> dischargeCount;
    for (const ProofNodePtr& n : order) {
        std::string err = validateNode(*n);
        if (!err.empty())
            return CheckResult::fail("node " + std::to_string(id[n.get()]) + ": " +
                                     err);
        if (n->rule == Rule::Axiom) {
            bool found = false;
            for (const InputClause& in : inputs)
                found = found || clauseEquals(in.clause, n->clause);
            if (!found)
                return CheckResult::fail("node " + std::to_string(id[n.get()]) +
                                         ": axiom is not an input clause");
        }
        if (n->rule == Rule::Cdcl)
            for (const ProofNodePtr& d : n->discharged)
                ++dischargeCount[d.get()];
    }

    for (const ProofNodePtr& n : order) {
        if (n->rule != Rule::Decision)
            continue;
        int count = dischargeCount[n.get()];
        if (count == 0)
            return CheckResult::fail("node " + std::to_string(id[n.get()]) +
                                     ": decision never discharged");
        if (count > 1)
            return CheckResult::fail("node " + std::to_string(id[n.get()]) +
                                     ": decision discharged more than once");
    }

    if (!conclusionClause(*root).empty())
        return CheckResult::fail("root does not conclude the empty clause");
    return CheckResult::pass();
}

std::string formatSubstitution(const Substitution& s, const Signature& sig,
                               const VarPool& vars) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s) {
        if (!first)
            out += ", ";
        first = false;
        out += vars.name(v);
        out += " -> ";
        out += formatTerm(t, sig, vars);
    }
    out += "}";
    return out;
}

std::string exportProof(const ProofNodePtr& root, const Signature& sig,
                        const VarPool& vars) {
    std::vector<ProofNodePtr> order;
    if (!postorder(root, order))
        return "% cyclic derivation\n";
    std::unordered_map<const ProofNode*, size_t> id;
    for (size_t i = 0; i < order.size(); ++i)
        id[order[i].get()] = i;

    auto idList = [&](const std::vector<ProofNodePtr>& nodes) {
        std::string out = "[";
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (i)
                out += ",";
            out += std::to_string(id[nodes[i].get()]);
        }
        return out + "]";
    };

    std::ostringstream out;
    for (const ProofNodePtr& n : order) {
        out << id[n.get()] << ". ";
        switch (n->rule) {
        case Rule::Axiom:
            out << "axiom [] {} " << formatClause(n->clause, sig, vars);
            break;
        case Rule::Decision:
            out << "decision [] {} " << formatLiteral(n->literal, sig, vars);
            break;
        case Rule::Upr:
            out << "upr " << idList(n->premises) << " clause "
                << id[n->clauseSource.get()] << " pos " << n->targetPos << " "
                << formatSubstitution(n->sigma, sig, vars) << " "
                << formatLiteral(n->literal, sig, vars);
            break;
        case Rule::Conflict:
            out << "conflict " << idList(n->premises) << " "
                << formatSubstitution(n->sigma, sig, vars) << " $false";
            break;
        case Rule::Cdcl:
            out << "cdcl " << idList(n->premises) << " discharges "
                << idList(n->discharged) << " {} "
                << formatClause(n->clause, sig, vars);
            break;
        }
        out << "\n";
    }
    return out.str();
}

size_t proofSize(const ProofNodePtr& root) {
    std::vector<ProofNodePtr> order;
    if (!postorder(root, order))
        return 0;
    return order.size();
}

} // namespace crp
