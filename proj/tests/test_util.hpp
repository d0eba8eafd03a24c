#ifndef CRP_TEST_UTIL_HPP
#define CRP_TEST_UTIL_HPP

#include "proof.hpp"
#include "tptp.hpp"
#include "trail.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

namespace crp::test {

// Parses a problem once and lets tests spell terms and literals in TPTP
// syntax. Everything is re-interned into the one shared signature/pool, so
// symbols and variable names coincide across calls.
struct Fixture {
    Problem problem;

    explicit Fixture(const std::string& text = "") {
        if (text.empty())
            return;
        auto r = parseProblemText(text, "fixture");
        REQUIRE(r.ok());
        problem = std::move(*r.problem);
    }

    const Clause& clause(size_t i) const { return problem.inputs[i].clause; }

    Clause parseClause(const std::string& text) {
        auto r = parseProblemText("cnf(t, axiom, " + text + ").", "t");
        REQUIRE(r.ok());
        return reinternClause(*r.problem, r.problem->inputs[0].clause);
    }

    Term termOf(const std::string& text) {
        auto r = parseProblemText("cnf(t, axiom, holds(" + text + ")).", "t");
        REQUIRE(r.ok());
        Problem& sub = *r.problem;
        return reintern(sub, sub.inputs[0].clause.succedent()[0].args()[0]);
    }

    Literal lit(const std::string& text) {
        bool positive = true;
        std::string body = text;
        if (!body.empty() && body[0] == '~') {
            positive = false;
            body = body.substr(1);
        }
        auto r = parseProblemText("cnf(t, axiom, " + body + ").", "t");
        REQUIRE(r.ok());
        const Clause& c = r.problem->inputs[0].clause;
        REQUIRE(c.unit());
        return Literal(reintern(*r.problem, c.succedent()[0]), positive);
    }

    Clause reinternClause(const Problem& from, const Clause& c) {
        std::vector<Term> ante, succ;
        for (const Term& a : c.antecedent())
            ante.push_back(reintern(from, a));
        for (const Term& s : c.succedent())
            succ.push_back(reintern(from, s));
        return Clause(std::move(ante), std::move(succ));
    }

    Term reintern(const Problem& from, const Term& t) {
        if (t.isVar()) {
            // Match variables by display name so repeated names coincide.
            const std::string& name = from.vars.name(t.varId());
            for (size_t v = 0; v < problem.vars.size(); ++v)
                if (problem.vars.name(static_cast<VarId>(v)) == name)
                    return Term::var(static_cast<VarId>(v));
            return Term::var(problem.vars.named(name));
        }
        std::vector<Term> args;
        for (const Term& a : t.args())
            args.push_back(reintern(from, a));
        const auto& info = from.sig.info(t.symbol());
        auto sym = problem.sig.intern(info.name, info.arity, info.predicate);
        REQUIRE(sym.has_value());
        return Term::app(*sym, std::move(args));
    }
};

inline ProofNodePtr dummyNode() {
    static ProofNodePtr n = mkAxiom(Clause());
    return n;
}

} // namespace crp::test

#endif
