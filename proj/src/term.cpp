#include "term.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace crp {

std::optional<SymbolId> Signature::intern(const std::string& name, uint32_t arity,
                                          bool predicate, std::string* error) {
    for (SymbolId id = 0; id < symbols_.size(); ++id) {
        if (symbols_[id].name != name)
            continue;
        if (symbols_[id].arity != arity) {
            if (error)
                *error = "symbol '" + name + "' used with arity " +
                         std::to_string(arity) + " but previously with arity " +
                         std::to_string(symbols_[id].arity);
            return std::nullopt;
        }
        if (symbols_[id].predicate != predicate) {
            if (error)
                *error = "symbol '" + name + "' used both as predicate and as function";
            return std::nullopt;
        }
        return id;
    }
    symbols_.push_back({name, arity, predicate});
    return static_cast<SymbolId>(symbols_.size() - 1);
}

std::optional<SymbolId> Signature::find(const std::string& name) const {
    for (SymbolId id = 0; id < symbols_.size(); ++id)
        if (symbols_[id].name == name)
            return id;
    return std::nullopt;
}

namespace {

size_t hashCombine(size_t seed, size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Term Term::var(VarId v) {
    auto node = std::make_shared<Node>();
    node->var = true;
    node->id = v;
    node->depth = 0;
    node->ground = false;
    node->hash = hashCombine(0x5a5a5a5a, v);
    return Term(std::move(node));
}

Term Term::app(SymbolId f, std::vector<Term> args) {
    auto node = std::make_shared<Node>();
    node->var = false;
    node->id = f;
    node->depth = 0;
    node->ground = true;
    node->hash = hashCombine(0xa7a7a7a7, f);
    for (const Term& a : args) {
        assert(a.valid());
        node->depth = std::max(node->depth, a.depth() + 1);
        node->ground = node->ground && a.ground();
        node->hash = hashCombine(node->hash, a.hash());
    }
    node->args = std::move(args);
    return Term(std::move(node));
}

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_)
        return true;
    if (!node_ || !other.node_)
        return false;
    if (node_->hash != other.node_->hash || node_->var != other.node_->var ||
        node_->id != other.node_->id || node_->args.size() != other.node_->args.size())
        return false;
    for (size_t i = 0; i < node_->args.size(); ++i)
        if (!(node_->args[i] == other.node_->args[i]))
            return false;
    return true;
}

void Term::collectVars(std::vector<VarId>& out) const {
    if (isVar()) {
        out.push_back(varId());
        return;
    }
    for (const Term& a : args())
        a.collectVars(out);
}

bool Term::contains(VarId v) const {
    if (isVar())
        return varId() == v;
    if (ground())
        return false;
    for (const Term& a : args())
        if (a.contains(v))
            return true;
    return false;
}

void Term::collectSubterms(std::vector<Term>& out) const {
    out.push_back(*this);
    if (!isVar())
        for (const Term& a : args())
            a.collectSubterms(out);
}

int termDepth(const Term& t) { return t.depth(); }

const Term* Substitution::lookup(VarId v) const {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                               [](const auto& p, VarId x) { return p.first < x; });
    if (it != bindings_.end() && it->first == v)
        return &it->second;
    return nullptr;
}

void Substitution::bind(VarId v, Term t) {
    if (t.isVar() && t.varId() == v)
        return; // identity bindings are represented by absence
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                               [](const auto& p, VarId x) { return p.first < x; });
    if (it != bindings_.end() && it->first == v) {
        it->second = std::move(t);
        return;
    }
    bindings_.insert(it, {v, std::move(t)});
}

Term Substitution::apply(const Term& t) const {
    if (empty())
        return t;
    if (t.isVar()) {
        const Term* bound = lookup(t.varId());
        return bound ? *bound : t;
    }
    if (t.ground())
        return t;
    bool changed = false;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) {
        Term image = apply(a);
        changed = changed || !(image == a);
        args.push_back(std::move(image));
    }
    if (!changed)
        return t;
    return Term::app(t.symbol(), std::move(args));
}

Substitution Substitution::compose(const Substitution& a, const Substitution& b) {
    Substitution out;
    for (const auto& [v, t] : a) {
        Term image = b.apply(t);
        if (!(image.isVar() && image.varId() == v))
            out.bind(v, std::move(image));
    }
    for (const auto& [v, t] : b)
        if (!a.lookup(v))
            out.bind(v, t);
    return out;
}

void Substitution::normalize() {
    // Occurs-checked unifiers have an acyclic binding graph, so repeated
    // self-application reaches a fixpoint; guard the loop anyway.
    for (size_t round = 0; round <= bindings_.size() + 1; ++round) {
        bool changed = false;
        for (auto& [v, t] : bindings_) {
            Term image = apply(t);
            if (!(image == t)) {
                t = std::move(image);
                changed = true;
            }
        }
        if (!changed)
            break;
        assert(round <= bindings_.size() && "cyclic substitution");
    }
    bindings_.erase(std::remove_if(bindings_.begin(), bindings_.end(),
                                   [](const auto& p) {
                                       return p.second.isVar() &&
                                              p.second.varId() == p.first;
                                   }),
                    bindings_.end());
}

bool Substitution::operator==(const Substitution& other) const {
    if (bindings_.size() != other.bindings_.size())
        return false;
    for (size_t i = 0; i < bindings_.size(); ++i)
        if (bindings_[i].first != other.bindings_[i].first ||
            !(bindings_[i].second == other.bindings_[i].second))
            return false;
    return true;
}

namespace {

// Walks a chain of variable bindings to the representative term.
Term walk(Term t, const Substitution& s) {
    while (t.isVar()) {
        const Term* bound = s.lookup(t.varId());
        if (!bound)
            return t;
        t = *bound;
    }
    return t;
}

bool occurs(VarId v, const Term& t, const Substitution& s) {
    Term w = walk(t, s);
    if (w.isVar())
        return w.varId() == v;
    for (const Term& a : w.args())
        if (occurs(v, a, s))
            return true;
    return false;
}

bool unifyWalked(const Term& a, const Term& b, Substitution& s) {
    Term x = walk(a, s);
    Term y = walk(b, s);
    if (x.isVar() && y.isVar() && x.varId() == y.varId())
        return true;
    if (x.isVar()) {
        if (occurs(x.varId(), y, s))
            return false;
        s.bind(x.varId(), y);
        return true;
    }
    if (y.isVar()) {
        if (occurs(y.varId(), x, s))
            return false;
        s.bind(y.varId(), x);
        return true;
    }
    if (x.symbol() != y.symbol() || x.args().size() != y.args().size())
        return false;
    for (size_t i = 0; i < x.args().size(); ++i)
        if (!unifyWalked(x.args()[i], y.args()[i], s))
            return false;
    return true;
}

} // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
    Substitution s;
    if (!unifyWalked(a, b, s))
        return std::nullopt;
    s.normalize();
    return s;
}

bool unifyInto(const Term& a, const Term& b, Substitution& acc) {
    if (!unifyWalked(a, b, acc))
        return false;
    acc.normalize();
    return true;
}

bool matchInto(const Term& pattern, const Term& target, Substitution& acc) {
    if (pattern.isVar()) {
        const Term* bound = acc.lookup(pattern.varId());
        if (bound)
            return *bound == target;
        if (target.isVar() && target.varId() == pattern.varId())
            return true;
        acc.bind(pattern.varId(), target);
        return true;
    }
    if (target.isVar())
        return false;
    if (pattern.symbol() != target.symbol() ||
        pattern.args().size() != target.args().size())
        return false;
    for (size_t i = 0; i < pattern.args().size(); ++i)
        if (!matchInto(pattern.args()[i], target.args()[i], acc))
            return false;
    return true;
}

std::optional<Substitution> matchTerm(const Term& pattern, const Term& target) {
    Substitution s;
    if (!matchInto(pattern, target, s))
        return std::nullopt;
    return s;
}

namespace {

const VarId* lookupPair(const std::vector<std::pair<VarId, VarId>>& map, VarId v) {
    for (const auto& [from, to] : map)
        if (from == v)
            return &to;
    return nullptr;
}

} // namespace

bool variantInto(const Term& a, const Term& b,
                 std::vector<std::pair<VarId, VarId>>& fwd,
                 std::vector<std::pair<VarId, VarId>>& bwd) {
    if (a.isVar() != b.isVar())
        return false;
    if (a.isVar()) {
        const VarId* f = lookupPair(fwd, a.varId());
        const VarId* g = lookupPair(bwd, b.varId());
        if (f || g)
            return f && g && *f == b.varId() && *g == a.varId();
        fwd.push_back({a.varId(), b.varId()});
        bwd.push_back({b.varId(), a.varId()});
        return true;
    }
    if (a.symbol() != b.symbol() || a.args().size() != b.args().size())
        return false;
    for (size_t i = 0; i < a.args().size(); ++i)
        if (!variantInto(a.args()[i], b.args()[i], fwd, bwd))
            return false;
    return true;
}

bool isVariant(const Term& a, const Term& b) {
    std::vector<std::pair<VarId, VarId>> fwd, bwd;
    return variantInto(a, b, fwd, bwd);
}

VarId VarPool::fresh() {
    VarId id = static_cast<VarId>(names_.size());
    names_.push_back("V" + std::to_string(id));
    return id;
}

VarId VarPool::named(const std::string& name) {
    VarId id = static_cast<VarId>(names_.size());
    names_.push_back(name);
    return id;
}

const std::string& VarPool::name(VarId v) const {
    assert(v < names_.size());
    return names_[v];
}

Term renameTerm(const Term& t, std::vector<std::pair<VarId, VarId>>& mapping,
                VarPool& pool) {
    if (t.isVar()) {
        if (const VarId* to = lookupPair(mapping, t.varId()))
            return Term::var(*to);
        VarId to = pool.fresh();
        mapping.push_back({t.varId(), to});
        return Term::var(to);
    }
    if (t.ground())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args())
        args.push_back(renameTerm(a, mapping, pool));
    return Term::app(t.symbol(), std::move(args));
}

std::string formatTerm(const Term& t, const Signature& sig, const VarPool& vars) {
    if (t.isVar())
        return vars.name(t.varId());
    std::string out = sig.name(t.symbol());
    if (t.args().empty())
        return out;
    out += '(';
    for (size_t i = 0; i < t.args().size(); ++i) {
        if (i)
            out += ',';
        out += formatTerm(t.args()[i], sig, vars);
    }
    out += ')';
    return out;
}

} // namespace crp
