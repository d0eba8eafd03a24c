#include "term.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace crp;

namespace {

// Shared builder so tests can spell terms compactly. Named variables are
// deduplicated here (VarPool::named always mints a fresh id).
struct Builder {
    Signature sig;
    VarPool vars;
    std::vector<std::pair<std::string, VarId>> byName;

    Term v(const std::string& name) {
        for (const auto& [n, id] : byName)
            if (n == name)
                return Term::var(id);
        VarId id = vars.named(name);
        byName.push_back({name, id});
        return Term::var(id);
    }

    Term f(const std::string& name, std::vector<Term> args = {}) {
        auto id = sig.intern(name, static_cast<uint32_t>(args.size()), false);
        REQUIRE(id.has_value());
        return Term::app(*id, std::move(args));
    }
};

Term replaceAll(const Term& t, const Term& what, const Term& to) {
    if (t == what)
        return to;
    if (t.isVar() || t.args().empty())
        return t;
    std::vector<Term> args;
    for (const Term& a : t.args())
        args.push_back(replaceAll(a, what, to));
    return Term::app(t.symbol(), std::move(args));
}

// Random ground term over {a, b, f/1, g/2} with bounded depth.
Term randomGround(Builder& b, std::mt19937_64& rng, int budget) {
    switch (budget > 0 ? rng() % 4 : rng() % 2) {
    case 0: return b.f("a");
    case 1: return b.f("b");
    case 2: return b.f("f", {randomGround(b, rng, budget - 1)});
    default:
        return b.f("g", {randomGround(b, rng, budget - 1),
                         randomGround(b, rng, budget - 1)});
    }
}

Term randomTerm(Builder& b, std::mt19937_64& rng, int budget, int nvars) {
    if (budget > 0 && rng() % 3 != 0) {
        if (rng() % 2)
            return b.f("f", {randomTerm(b, rng, budget - 1, nvars)});
        return b.f("g", {randomTerm(b, rng, budget - 1, nvars),
                         randomTerm(b, rng, budget - 1, nvars)});
    }
    switch (rng() % 3) {
    case 0: return b.v("X" + std::to_string(rng() % nvars));
    case 1: return b.f("a");
    default: return b.f("b");
    }
}

std::vector<VarId> uniqueVars(const Term& t) {
    std::vector<VarId> all;
    t.collectVars(all);
    std::vector<VarId> out;
    for (VarId v : all)
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    return out;
}

} // namespace

TEST_CASE("signature interning reports arity and kind clashes") {
    Signature sig;
    std::string err;
    auto p1 = sig.intern("p", 1, true, &err);
    REQUIRE(p1.has_value());
    REQUIRE(*sig.intern("p", 1, true) == *p1);

    REQUIRE_FALSE(sig.intern("p", 2, true, &err).has_value());
    REQUIRE(err.find("p") != std::string::npos);
    REQUIRE_FALSE(sig.intern("p", 1, false, &err).has_value());

    REQUIRE(sig.find("p") == p1);
    REQUIRE_FALSE(sig.find("q").has_value());
    REQUIRE(sig.arity(*p1) == 1);
    REQUIRE(sig.isPredicate(*p1));
}

TEST_CASE("term depth and groundness are as defined") {
    Builder b;
    Term a = b.f("a");
    Term x = b.v("X");
    REQUIRE(a.depth() == 0);
    REQUIRE(x.depth() == 0);
    REQUIRE(a.ground());
    REQUIRE_FALSE(x.ground());

    Term pa = b.f("p1", {a});
    REQUIRE(pa.depth() == 1);

    Term t = b.f("g", {b.f("f", {x}), a});
    REQUIRE(t.depth() == 2);
    REQUIRE_FALSE(t.ground());
    REQUIRE(termDepth(t) == 2);
    REQUIRE(t.contains(x.varId()));
    REQUIRE_FALSE(a.contains(x.varId()));
}

TEST_CASE("unification solves standard cases") {
    Builder b;
    Term X = b.v("X"), Y = b.v("Y"), Z = b.v("Z");
    Term a = b.f("a"), c = b.f("b");

    SECTION("variable against term") {
        auto s = unify(X, b.f("f", {a}));
        REQUIRE(s);
        REQUIRE(s->apply(X) == b.f("f", {a}));
    }
    SECTION("shared variable forces equal arguments") {
        REQUIRE_FALSE(unify(b.f("g", {X, X}), b.f("g", {a, c})));
        auto s = unify(b.f("g", {X, X}), b.f("g", {Y, a}));
        REQUIRE(s);
        REQUIRE(s->apply(X) == a);
        REQUIRE(s->apply(Y) == a);
    }
    SECTION("chained bindings are resolved") {
        auto s = unify(b.f("g", {X, Y}), b.f("g", {Y, b.f("f", {Z})}));
        REQUIRE(s);
        REQUIRE(s->apply(X) == b.f("f", {Z}));
        REQUIRE(s->apply(Y) == b.f("f", {Z}));
    }
    SECTION("occurs check") {
        REQUIRE_FALSE(unify(X, b.f("f", {X})));
        REQUIRE_FALSE(unify(b.f("g", {X, b.f("f", {X})}), b.f("g", {Y, Y})));
    }
    SECTION("symbol clash") {
        REQUIRE_FALSE(unify(a, c));
        REQUIRE_FALSE(unify(b.f("f", {X}), b.f("g", {X, Y})));
    }
}

TEST_CASE("unifiers are idempotent") {
    Builder b;
    Term l = b.f("g", {b.v("X"), b.v("Y")});
    Term r = b.f("g", {b.v("Y"), b.f("f", {b.v("Z")})});
    auto s = unify(l, r);
    REQUIRE(s);
    Term once = s->apply(l);
    REQUIRE(s->apply(once) == once);
}

TEST_CASE("unifyInto accumulates a simultaneous unifier left to right") {
    Builder b;
    Term X = b.v("X"), Y = b.v("Y");
    Substitution acc;
    REQUIRE(unifyInto(X, Y, acc));
    REQUIRE(unifyInto(Y, b.f("a"), acc));
    REQUIRE(acc.apply(X) == b.f("a"));
    REQUIRE(acc.apply(Y) == b.f("a"));

    Substitution bad;
    REQUIRE(unifyInto(X, b.f("a"), bad));
    REQUIRE_FALSE(unifyInto(X, b.f("b"), bad));
}

TEST_CASE("matching binds only pattern variables") {
    Builder b;
    Term X = b.v("X"), Y = b.v("Y");

    auto s = matchTerm(b.f("f", {X}), b.f("f", {b.f("a")}));
    REQUIRE(s);
    REQUIRE(s->apply(b.f("f", {X})) == b.f("f", {b.f("a")}));

    // Matching is not symmetric: a non-variable pattern never matches a
    // target variable.
    REQUIRE_FALSE(matchTerm(b.f("f", {b.f("a")}), b.f("f", {X})));

    // Pattern variables may map to target variables, consistently.
    auto t = matchTerm(b.f("g", {X, X}), b.f("g", {Y, Y}));
    REQUIRE(t);
    REQUIRE(t->apply(X) == Y);
    REQUIRE_FALSE(matchTerm(b.f("g", {X, X}), b.f("g", {b.f("a"), b.f("b")})));
}

TEST_CASE("substitution iteration is sorted by variable id") {
    Builder b;
    Substitution s;
    VarId x5 = b.vars.named("A5"), x1 = b.vars.named("A1"), x3 = b.vars.named("A3");
    s.bind(x5, b.f("a"));
    s.bind(x1, b.f("b"));
    s.bind(x3, b.f("a"));
    std::vector<VarId> seen;
    for (const auto& [v, t] : s)
        seen.push_back(v);
    std::vector<VarId> sorted = seen;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(seen == sorted);
    REQUIRE(s.size() == 3);
}

TEST_CASE("compose satisfies its defining equation on random inputs") {
    Builder b;
    std::mt19937_64 rng(20260825);
    for (int iter = 0; iter < 200; ++iter) {
        Term t = randomTerm(b, rng, 3, 4);
        Substitution s1, s2;
        for (int v = 0; v < 4; ++v) {
            if (rng() % 2)
                s1.bind(b.v("X" + std::to_string(v)).varId(),
                        randomTerm(b, rng, 2, 4));
            if (rng() % 2)
                s2.bind(b.v("X" + std::to_string(v)).varId(),
                        randomTerm(b, rng, 2, 4));
        }
        Substitution both = Substitution::compose(s1, s2);
        REQUIRE(both.apply(t) == s2.apply(s1.apply(t)));

        Substitution s3;
        s3.bind(b.v("X0").varId(), randomGround(b, rng, 2));
        Term viaLeft = Substitution::compose(both, s3).apply(t);
        Term viaRight = Substitution::compose(s1, Substitution::compose(s2, s3)).apply(t);
        REQUIRE(viaLeft == viaRight);
    }
}

TEST_CASE("random unification agrees with ground sampling") {
    Builder b;
    std::mt19937_64 rng(7);
    int successes = 0, failures = 0;
    for (int iter = 0; iter < 400; ++iter) {
        Term l = randomTerm(b, rng, 3, 3);
        Term r = randomTerm(b, rng, 3, 3);
        auto s = unify(l, r);
        if (s) {
            ++successes;
            REQUIRE(s->apply(l) == s->apply(r));
        } else {
            ++failures;
            // No sampled ground instantiation may unify the pair either.
            for (int probe = 0; probe < 30; ++probe) {
                Substitution g;
                for (int v = 0; v < 3; ++v)
                    g.bind(b.v("X" + std::to_string(v)).varId(),
                           randomGround(b, rng, 2));
                REQUIRE(g.apply(l) != g.apply(r));
            }
        }
    }
    // The generator must exercise both outcomes for this test to mean much.
    REQUIRE(successes > 50);
    REQUIRE(failures > 50);
}

TEST_CASE("computed unifiers are most general") {
    Builder b;
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        // Build a known common instance t, then abstract random ground
        // subterms of it into variables on each side. The abstraction maps
        // form a unifier tau by construction, so the mgu sigma must exist
        // and tau must factor through it.
        Term t = randomGround(b, rng, 4);
        Term l = t, r = t;
        Substitution tau;
        for (int k = 0; k < 2; ++k) {
            std::vector<Term> subs;
            l.collectSubterms(subs);
            std::vector<Term> groundSubs;
            for (const Term& s : subs)
                if (s.ground())
                    groundSubs.push_back(s);
            if (groundSubs.empty())
                break;
            Term pick = groundSubs[rng() % groundSubs.size()];
            Term var = b.v("L" + std::to_string(iter) + "_" + std::to_string(k));
            l = replaceAll(l, pick, var);
            tau.bind(var.varId(), pick);
        }
        for (int k = 0; k < 2; ++k) {
            std::vector<Term> subs;
            r.collectSubterms(subs);
            std::vector<Term> groundSubs;
            for (const Term& s : subs)
                if (s.ground())
                    groundSubs.push_back(s);
            if (groundSubs.empty())
                break;
            Term pick = groundSubs[rng() % groundSubs.size()];
            Term var = b.v("R" + std::to_string(iter) + "_" + std::to_string(k));
            r = replaceAll(r, pick, var);
            tau.bind(var.varId(), pick);
        }
        REQUIRE(tau.apply(l) == t);
        REQUIRE(tau.apply(r) == t);

        auto sigma = unify(l, r);
        REQUIRE(sigma);
        Term joined = sigma->apply(l);
        REQUIRE(joined == sigma->apply(r));

        // Generality witness: mapping sigma's residual variables the way
        // tau maps them must reproduce tau's result exactly.
        Substitution delta;
        for (VarId v : uniqueVars(joined))
            delta.bind(v, tau.apply(Term::var(v)));
        REQUIRE(delta.apply(joined) == t);
    }
}

TEST_CASE("variant checks require a variable bijection") {
    Builder b;
    Term X = b.v("X"), Y = b.v("Y");
    Term a = b.f("a");

    REQUIRE(isVariant(b.f("g", {X, Y}), b.f("g", {Y, X})));
    REQUIRE(isVariant(b.f("f", {X}), b.f("f", {Y})));
    REQUIRE(isVariant(X, Y));
    REQUIRE(isVariant(b.f("g", {X, a}), b.f("g", {Y, a})));

    REQUIRE_FALSE(isVariant(b.f("g", {X, X}), b.f("g", {X, Y})));
    REQUIRE_FALSE(isVariant(b.f("g", {X, Y}), b.f("g", {X, X})));
    REQUIRE_FALSE(isVariant(b.f("g", {X, a}), b.f("g", {a, X})));
    REQUIRE_FALSE(isVariant(X, a));

    // A shared bijection spans several pairs.
    std::vector<std::pair<VarId, VarId>> fwd, bwd;
    REQUIRE(variantInto(X, Y, fwd, bwd));
    REQUIRE(variantInto(X, Y, fwd, bwd));
    REQUIRE_FALSE(variantInto(X, b.v("Z"), fwd, bwd));
    REQUIRE_FALSE(variantInto(b.v("W"), Y, fwd, bwd));
}

TEST_CASE("renaming produces a fresh variant") {
    Builder b;
    Term t = b.f("g", {b.v("X"), b.f("g", {b.v("X"), b.v("Y")})});
    std::vector<std::pair<VarId, VarId>> mapping;
    Term renamed = renameTerm(t, mapping, b.vars);
    REQUIRE(isVariant(t, renamed));
    REQUIRE(renamed != t);
    // Both occurrences of X map to one fresh variable.
    REQUIRE(renamed.args()[0] == renamed.args()[1].args()[0]);
    // Fresh ids do not collide with the originals.
    for (VarId v : uniqueVars(renamed))
        REQUIRE_FALSE(t.contains(v));
}

TEST_CASE("terms print in functional notation") {
    Builder b;
    Term t = b.f("g", {b.f("f", {b.v("X")}), b.f("a")});
    REQUIRE(formatTerm(t, b.sig, b.vars) == "g(f(X),a)");
    REQUIRE(formatTerm(b.v("X"), b.sig, b.vars) == "X");
    REQUIRE(formatTerm(b.f("a"), b.sig, b.vars) == "a");
}
