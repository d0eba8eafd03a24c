#ifndef CRP_TERM_HPP
#define CRP_TERM_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace crp {

using VarId = uint32_t;
using SymbolId = uint32_t;

// Interning table for function and predicate symbols. Every symbol has a
// fixed arity for the lifetime of a problem; intern() reports a clash
// instead of creating a second entry with a different arity or kind.
class Signature {
public:
    struct Info {
        std::string name;
        uint32_t arity;
        bool predicate;
    };

    // Returns the symbol id, or nullopt with *error set on arity/kind clash.
    std::optional<SymbolId> intern(const std::string& name, uint32_t arity,
                                   bool predicate, std::string* error = nullptr);

    std::optional<SymbolId> find(const std::string& name) const;

    const Info& info(SymbolId id) const { return symbols_[id]; }
    const std::string& name(SymbolId id) const { return symbols_[id].name; }
    uint32_t arity(SymbolId id) const { return symbols_[id].arity; }
    bool isPredicate(SymbolId id) const { return symbols_[id].predicate; }
    size_t size() const { return symbols_.size(); }

private:
    std::vector<Info> symbols_;
};

// Immutable first-order term: a variable or a symbol application.
// Constants are applications with zero arguments. Atoms are terms whose
// head symbol is a predicate. Nodes are shared, so substitution
// application copies only the spine it rewrites.
class Term {
public:
    Term() = default;

    static Term var(VarId v);
    static Term app(SymbolId f, std::vector<Term> args);

    bool valid() const { return node_ != nullptr; }
    bool isVar() const { return node_->var; }
    VarId varId() const { return node_->id; }
    SymbolId symbol() const { return node_->id; }
    const std::vector<Term>& args() const { return node_->args; }

    // Depth 0 for variables and constants, 1 + max child depth otherwise.
    int depth() const { return node_->depth; }
    bool ground() const { return node_->ground; }
    size_t hash() const { return node_->hash; }

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

    // Appends every variable occurrence in pre-order (with repeats).
    void collectVars(std::vector<VarId>& out) const;
    bool contains(VarId v) const;

    // Appends this term and all proper subterms in pre-order.
    void collectSubterms(std::vector<Term>& out) const;

private:
    struct Node {
        bool var;
        uint32_t id;
        std::vector<Term> args;
        int depth;
        bool ground;
        size_t hash;
    };

    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

int termDepth(const Term& t);

// Finite map from variables to terms, kept sorted by variable id so that
// iteration (and therefore printing) is deterministic. Unifiers produced
// by unify() are idempotent and never bind a variable to itself.
class Substitution {
public:
    const Term* lookup(VarId v) const;
    void bind(VarId v, Term t);
    bool empty() const { return bindings_.empty(); }
    size_t size() const { return bindings_.size(); }

    Term apply(const Term& t) const;

    // apply(t, compose(a, b)) == apply(apply(t, a), b) for every term t.
    static Substitution compose(const Substitution& a, const Substitution& b);

    // Resolves bindings through each other until a fixpoint, dropping
    // identities. Requires the binding graph to be acyclic.
    void normalize();

    bool operator==(const Substitution& other) const;

    auto begin() const { return bindings_.begin(); }
    auto end() const { return bindings_.end(); }

private:
    std::vector<std::pair<VarId, Term>> bindings_;
};

// Most general unifier with occurs check; nullopt when none exists.
std::optional<Substitution> unify(const Term& a, const Term& b);

// Extends `acc` to a simultaneous unifier of a and b; used for the
// left-to-right accumulation over several pairs. Returns false and leaves
// `acc` unspecified when the pair has no unifier under `acc`.
bool unifyInto(const Term& a, const Term& b, Substitution& acc);

// One-sided matching: finds sigma with apply(pattern, sigma) == target,
// binding only pattern variables. Target variables are treated as rigid.
std::optional<Substitution> matchTerm(const Term& pattern, const Term& target);
bool matchInto(const Term& pattern, const Term& target, Substitution& acc);

// Structural equality up to a variable bijection. `fwd`/`bwd` accumulate
// the bijection across calls so several term pairs can share one renaming.
bool variantInto(const Term& a, const Term& b,
                 std::vector<std::pair<VarId, VarId>>& fwd,
                 std::vector<std::pair<VarId, VarId>>& bwd);
bool isVariant(const Term& a, const Term& b);

// Source of globally fresh variables. Display names are generated lazily;
// parsed variables register their source names here as well.
class VarPool {
public:
    VarId fresh();
    VarId named(const std::string& name);
    const std::string& name(VarId v) const;
    size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
};

Term renameTerm(const Term& t, std::vector<std::pair<VarId, VarId>>& mapping,
                VarPool& pool);

std::string formatTerm(const Term& t, const Signature& sig, const VarPool& vars);

} // namespace crp

#endif
