#include "trail.hpp"

#include "test_util.hpp"

using namespace crp;
using crp::test::Fixture;
using crp::test::dummyNode;

TEST_CASE("trail truth is one-sided matching against entries") {
    Fixture f("cnf(c, axiom, p(X) | q(a)).");
    Trail trail(f.problem.vars);

    SECTION("a variable entry generalizes its instances") {
        trail.addDecision(f.lit("p(X)"), dummyNode());
        REQUIRE(trail.isTrue(f.lit("p(a)")));
        REQUIRE(trail.isTrue(f.lit("p(f(a))")));
        REQUIRE(trail.isTrue(f.lit("p(Y)")));
        REQUIRE_FALSE(trail.isTrue(f.lit("~p(a)")));
        REQUIRE_FALSE(trail.isTrue(f.lit("q(a)")));
    }
    SECTION("a ground entry does not generalize a variable query") {
        trail.addDecision(f.lit("p(a)"), dummyNode());
        REQUIRE(trail.isTrue(f.lit("p(a)")));
        REQUIRE_FALSE(trail.isTrue(f.lit("p(X)")));
        REQUIRE_FALSE(trail.isTrue(f.lit("p(b)")));
    }
    SECTION("empty trail holds nothing") {
        REQUIRE_FALSE(trail.isTrue(f.lit("p(a)")));
        REQUIRE(trail.empty());
    }
}

TEST_CASE("strong truth is variance, not instance") {
    Fixture f("cnf(c, axiom, p(X)).");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("p(X)"), dummyNode());

    REQUIRE(trail.isStronglyTrue(f.lit("p(Y)")));
    REQUIRE(trail.isStronglyTrue(f.lit("p(X)")));
    REQUIRE_FALSE(trail.isStronglyTrue(f.lit("p(a)")));
    REQUIRE(trail.isTrue(f.lit("p(a)")));

    Trail ground(f.problem.vars);
    ground.addDecision(f.lit("p(a)"), dummyNode());
    REQUIRE(ground.isStronglyTrue(f.lit("p(a)")));
    REQUIRE_FALSE(ground.isStronglyTrue(f.lit("p(X)")));
}

TEST_CASE("falsification uses the dual literal") {
    Fixture f("cnf(c, axiom, p(X)).");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("~p(X)"), dummyNode());
    REQUIRE(trail.isFalsified(f.lit("p(f(a))")));
    REQUIRE(trail.isFalsified(f.lit("p(a)")));
    REQUIRE_FALSE(trail.isFalsified(f.lit("~p(a)")));
}

TEST_CASE("uniform satisfaction needs one true literal") {
    Fixture f("cnf(c1, axiom, p(X) | q(X)).\n"
              "cnf(c2, axiom, p(a) | q(b)).\n"
              "cnf(c3, axiom, $false).\n");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("~p(a)"), dummyNode());
    trail.addDecision(f.lit("p(b)"), dummyNode());
    trail.addDecision(f.lit("q(a)"), dummyNode());
    trail.addDecision(f.lit("~q(b)"), dummyNode());

    // p(X)/q(X) have no single true literal: only instances are true.
    REQUIRE_FALSE(trail.uniformlySatisfied(f.clause(0)));
    // p(a) is falsified but q(b) is not... and q(b) is not true either.
    REQUIRE_FALSE(trail.uniformlySatisfied(f.clause(1)));
    // The empty clause is never satisfied.
    REQUIRE_FALSE(trail.uniformlySatisfied(f.clause(2)));

    Trail t2(f.problem.vars);
    t2.addDecision(f.lit("p(X)"), dummyNode());
    REQUIRE(t2.uniformlySatisfied(f.clause(1))); // p(a) instance of p(X)
}

TEST_CASE("useless decisions only re-learn known units") {
    Fixture f("cnf(c, axiom, p(X) | q(X)).");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("~p(a)"), dummyNode());
    trail.addDecision(f.lit("p(b)"), dummyNode());
    trail.addDecision(f.lit("q(a)"), dummyNode());
    trail.addDecision(f.lit("~q(b)"), dummyNode());

    std::vector<LearnedClause> learned;

    // Deciding p(X) conflicts only with ~p(a); that would learn the unit
    // ~p(a), which is already true on the trail. Same for q(X) with ~q(b).
    REQUIRE(trail.uselessDecision(f.lit("p(X)"), learned));
    REQUIRE(trail.uselessDecision(f.lit("q(X)"), learned));
    // Whole clause: weakly satisfied.
    REQUIRE(trail.weaklySatisfied(f.clause(0), learned));

    // No attacker at all: not useless (a decision could do new work).
    REQUIRE_FALSE(trail.uselessDecision(f.lit("r(b)"), learned));

    // A direct conflict always learns an instance of the attacking trail
    // literal, and that instance is true in the model by construction, so
    // every attacked candidate is useless regardless of what was learned.
    Trail t2(f.problem.vars);
    t2.addDecision(f.lit("~p(f(a))"), dummyNode());
    REQUIRE(t2.uselessDecision(f.lit("p(X)"), learned));
    REQUIRE(t2.uselessDecision(f.lit("p(f(a))"), learned));
    // Same polarity never attacks.
    REQUIRE_FALSE(t2.uselessDecision(f.lit("~p(X)"), learned));
}

TEST_CASE("weak satisfaction requires every literal useless") {
    Fixture f("cnf(c, axiom, p(X) | r(X)).");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("~p(a)"), dummyNode());
    std::vector<LearnedClause> learned;
    // p(X) is useless (re-learns ~p(a), true in M) but r(X) has no
    // attacker, so the clause is not weakly satisfied.
    REQUIRE(trail.uselessDecision(f.lit("p(X)"), learned));
    REQUIRE_FALSE(trail.weaklySatisfied(f.clause(0), learned));
    REQUIRE_FALSE(trail.weaklySatisfied(Clause(), learned));
}

TEST_CASE("relevant-instance satisfaction certifies models") {
    Fixture f("cnf(c1, axiom, p(X) | q(X)).\n"
              "cnf(c2, axiom, p(Y)).\n");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("~p(a)"), dummyNode());
    trail.addDecision(f.lit("p(b)"), dummyNode());
    trail.addDecision(f.lit("q(a)"), dummyNode());
    trail.addDecision(f.lit("~q(b)"), dummyNode());

    // Model terms are {a, b}; all four instances of c1 hold.
    REQUIRE(trail.satisfiedByRelevantInstances(f.clause(0)));
    // p(Y) fails at Y=a.
    REQUIRE_FALSE(trail.satisfiedByRelevantInstances(f.clause(1)));

    std::vector<Term> terms = trail.modelTerms();
    REQUIRE(terms.size() == 2);
    REQUIRE(terms[0] == f.termOf("a"));
    REQUIRE(terms[1] == f.termOf("b"));
}

TEST_CASE("model terms collect argument subterms in first-seen order") {
    Fixture f("cnf(c, axiom, p(a)).");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("p(f(g(a,b)))"), dummyNode());
    trail.addDecision(f.lit("q(b, X)"), dummyNode());

    std::vector<Term> expect = {f.termOf("f(g(a,b))"), f.termOf("g(a,b)"),
                                f.termOf("a"), f.termOf("b")};
    const std::vector<Term>& got = trail.modelTerms();
    REQUIRE(got.size() == 5);
    for (size_t i = 0; i < expect.size(); ++i)
        REQUIRE(got[i] == expect[i]);
    REQUIRE(got[4].isVar()); // the X from the second entry
}

TEST_CASE("the unifiability index tracks attackers per literal position") {
    Fixture f("cnf(c1, axiom, p(X) | q(X) | r(X)).\n"
              "cnf(c2, axiom, p(a) | q(b)).\n"
              "cnf(c3, axiom, p(a)).\n");
    Trail trail(f.problem.vars);
    Trail::ClauseRef c1 = trail.registerClause(f.clause(0));
    Trail::ClauseRef c2 = trail.registerClause(f.clause(1));
    Trail::ClauseRef c3 = trail.registerClause(f.clause(2));

    // Unit clause: vacuously quasi-falsified; two-literal ground clause
    // with no attackers: not.
    REQUIRE(trail.quasiFalsified(c3));
    REQUIRE_FALSE(trail.quasiFalsified(c2));
    REQUIRE_FALSE(trail.quasiFalsified(c1));

    size_t e0 = trail.addDecision(f.lit("~p(a)"), dummyNode());
    REQUIRE(trail.quasiFalsified(c2)); // only q(b) unattacked
    REQUIRE_FALSE(trail.quasiFalsified(c1));

    size_t e1 = trail.addDecision(f.lit("~q(b)"), dummyNode());
    REQUIRE(trail.quasiFalsified(c1)); // r(X) may remain unattacked
    REQUIRE(trail.quasiFalsified(c2));

    REQUIRE(trail.attackers(c1, 0) == std::vector<size_t>{e0});
    REQUIRE(trail.attackers(c1, 1) == std::vector<size_t>{e1});
    REQUIRE(trail.attackers(c1, 2).empty());
    REQUIRE(trail.debugIndexConsistent());

    // Same-polarity entries never attack.
    trail.addDecision(f.lit("p(b)"), dummyNode());
    REQUIRE(trail.attackers(c1, 0) == std::vector<size_t>{e0});
    REQUIRE(trail.debugIndexConsistent());

    SECTION("late registration indexes existing entries") {
        Trail::ClauseRef again = trail.registerClause(f.clause(0));
        REQUIRE(trail.attackers(again, 0) == std::vector<size_t>{e0});
        REQUIRE(trail.attackers(again, 1) == std::vector<size_t>{e1});
        REQUIRE(trail.debugIndexConsistent());
    }
    SECTION("reset clears entries and index but keeps clauses") {
        trail.reset();
        REQUIRE(trail.empty());
        REQUIRE(trail.modelTerms().empty());
        REQUIRE(trail.attackers(c1, 0).empty());
        REQUIRE(trail.registeredCount() == 3);
        REQUIRE(trail.debugIndexConsistent());
        REQUIRE_FALSE(trail.quasiFalsified(c1));
    }
}

TEST_CASE("propagation entries carry depth and premises") {
    Fixture f("cnf(c, axiom, p(a)).");
    Trail trail(f.problem.vars);
    size_t d = trail.addDecision(f.lit("q(a)"), dummyNode());
    REQUIRE(trail.entry(d).depth == 0);
    REQUIRE(trail.entry(d).decision);

    size_t u = trail.addPropagation(f.lit("p(a)"), 0, {}, dummyNode());
    REQUIRE(trail.entry(u).depth == 0);
    REQUIRE_FALSE(trail.entry(u).decision);

    size_t r = trail.addPropagation(f.lit("r(a)"), 1, {d, u}, dummyNode());
    REQUIRE(trail.entry(r).depth == 1);
    REQUIRE(trail.entry(r).premises == std::vector<size_t>{d, u});
    REQUIRE(trail.size() == 3);
}

TEST_CASE("strong truth implies truth on random ground literals") {
    Fixture f("cnf(c, axiom, p(a)).");
    Trail trail(f.problem.vars);
    trail.addDecision(f.lit("p(f(a))"), dummyNode());
    trail.addDecision(f.lit("~q(a, b)"), dummyNode());
    trail.addDecision(f.lit("r(X)"), dummyNode());

    for (const char* text : {"p(f(a))", "~p(f(a))", "q(a, b)", "~q(a, b)",
                             "r(a)", "r(Y)", "~r(b)", "p(a)"}) {
        Literal l = f.lit(text);
        if (trail.isStronglyTrue(l))
            REQUIRE(trail.isTrue(l));
    }
}
