#include "clause.hpp"

#include <algorithm>
#include <cassert>

namespace crp {

bool isVariant(const Literal& a, const Literal& b) {
    return a.positive == b.positive && isVariant(a.atom, b.atom);
}

namespace {

void appendUnique(std::vector<Term>& side, const Term& atom) {
    for (const Term& t : side)
        if (t == atom)
            return;
    side.push_back(atom);
}

} // namespace

Clause::Clause(std::vector<Term> antecedent, std::vector<Term> succedent) {
    for (Term& t : antecedent)
        appendUnique(antecedent_, t);
    for (Term& t : succedent)
        appendUnique(succedent_, t);
    literals_.reserve(antecedent_.size() + succedent_.size());
    for (const Term& t : antecedent_)
        literals_.emplace_back(t, false);
    for (const Term& t : succedent_)
        literals_.emplace_back(t, true);
    std::vector<VarId> occurrences;
    for (const Literal& l : literals_)
        l.atom.collectVars(occurrences);
    for (VarId v : occurrences)
        if (std::find(vars_.begin(), vars_.end(), v) == vars_.end())
            vars_.push_back(v);
}

Clause Clause::fromLiterals(const std::vector<Literal>& lits) {
    std::vector<Term> ante, succ;
    for (const Literal& l : lits)
        (l.positive ? succ : ante).push_back(l.atom);
    return Clause(std::move(ante), std::move(succ));
}

Clause Clause::apply(const Substitution& s) const {
    std::vector<Term> ante, succ;
    ante.reserve(antecedent_.size());
    succ.reserve(succedent_.size());
    for (const Term& t : antecedent_)
        ante.push_back(s.apply(t));
    for (const Term& t : succedent_)
        succ.push_back(s.apply(t));
    return Clause(std::move(ante), std::move(succ));
}

namespace {

// Backtracking set match of both sides under one shared variable
// bijection. Atoms of clause `a` are paired one-to-one with atoms of the
// same side of `b`; clauses stay tiny here, so the worst case is fine.
struct SideMatcher {
    const Clause& a;
    const Clause& b;
    std::vector<char> usedAnte, usedSucc;
    std::vector<std::pair<VarId, VarId>> fwd, bwd;

    SideMatcher(const Clause& a, const Clause& b)
        : a(a), b(b), usedAnte(b.antecedent().size(), 0),
          usedSucc(b.succedent().size(), 0) {}

    bool run() { return match(a.antecedent(), b.antecedent(), usedAnte, 0, true); }

    bool match(const std::vector<Term>& xs, const std::vector<Term>& ys,
               std::vector<char>& used, size_t i, bool firstSide) {
        if (i == xs.size()) {
            if (!firstSide)
                return true;
            return match(a.succedent(), b.succedent(), usedSucc, 0, false);
        }
        for (size_t j = 0; j < ys.size(); ++j) {
            if (used[j])
                continue;
            size_t fwdMark = fwd.size(), bwdMark = bwd.size();
            if (variantInto(xs[i], ys[j], fwd, bwd)) {
                used[j] = 1;
                if (match(xs, ys, used, i + 1, firstSide))
                    return true;
                used[j] = 0;
            }
            fwd.resize(fwdMark);
            bwd.resize(bwdMark);
        }
        return false;
    }
};

} // namespace

bool clauseEquals(const Clause& a, const Clause& b) {
    if (a.antecedent().size() != b.antecedent().size() ||
        a.succedent().size() != b.succedent().size())
        return false;
    return SideMatcher(a, b).run();
}

Clause renameFresh(const Clause& c, VarPool& pool) {
    if (c.ground())
        return c;
    std::vector<std::pair<VarId, VarId>> mapping;
    std::vector<Term> ante, succ;
    ante.reserve(c.antecedent().size());
    succ.reserve(c.succedent().size());
    for (const Term& t : c.antecedent())
        ante.push_back(renameTerm(t, mapping, pool));
    for (const Term& t : c.succedent())
        succ.push_back(renameTerm(t, mapping, pool));
    return Clause(std::move(ante), std::move(succ));
}

Literal renameFresh(const Literal& l, VarPool& pool) {
    if (l.atom.ground())
        return l;
    std::vector<std::pair<VarId, VarId>> mapping;
    return Literal(renameTerm(l.atom, mapping, pool), l.positive);
}

std::vector<Clause> relevantInstances(const Clause& c, const std::vector<Term>& terms) {
    if (c.ground())
        return {c};
    if (terms.empty())
        return {};
    std::vector<Clause> out;
    const std::vector<VarId>& vars = c.vars();
    std::vector<size_t> choice(vars.size(), 0);
    for (;;) {
        Substitution s;
        for (size_t i = 0; i < vars.size(); ++i) {
            const Term& t = terms[choice[i]];
            if (!(t.isVar() && t.varId() == vars[i]))
                s.bind(vars[i], t);
        }
        out.push_back(c.apply(s));
        size_t i = 0;
        for (; i < choice.size(); ++i) {
            if (++choice[i] < terms.size())
                break;
            choice[i] = 0;
        }
        if (i == choice.size())
            break;
    }
    return out;
}

std::string formatLiteral(const Literal& l, const Signature& sig, const VarPool& vars) {
    // Equality is parsed as an ordinary binary predicate named "=", but it
    // has to be printed back in infix form to stay lexable.
    if (!l.atom.isVar() && sig.name(l.atom.symbol()) == "=" &&
        l.atom.args().size() == 2) {
        return formatTerm(l.atom.args()[0], sig, vars) +
               (l.positive ? " = " : " != ") +
               formatTerm(l.atom.args()[1], sig, vars);
    }
    std::string out = l.positive ? "" : "~";
    return out + formatTerm(l.atom, sig, vars);
}

std::string formatClause(const Clause& c, const Signature& sig, const VarPool& vars) {
    if (c.empty())
        return "$false";
    std::string out;
    for (size_t i = 0; i < c.literals().size(); ++i) {
        if (i)
            out += " | ";
        out += formatLiteral(c.literals()[i], sig, vars);
    }
    return out;
}

} // namespace crp
