#pragma once

// Herbrand terms, equation sets, substitutions and unification.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tra {

/// Immutable Herbrand term: a variable, a constant, or a compound with
/// arity >= 1. Copies share structure.
class Term {
public:
    enum class Kind : std::uint8_t { Variable, Constant, Compound };

    static Term variable(std::string name);
    static Term constant(std::string name);
    static Term integer(long long value);
    /// Throws std::invalid_argument when `args` is empty.
    static Term compound(std::string functor, std::vector<Term> args);

    /// `[a,b|Tail]`; the tail defaults to `[]`.
    static Term list(std::vector<Term> items, std::optional<Term> tail = std::nullopt);
    /// `Left-Right`
    static Term pair(Term left, Term right);

    static Term nil();

    Kind kind() const noexcept;
    bool is_variable() const noexcept { return kind() == Kind::Variable; }
    bool is_constant() const noexcept { return kind() == Kind::Constant; }
    bool is_compound() const noexcept { return kind() == Kind::Compound; }

    /// Variable name, constant name, or functor.
    const std::string& name() const noexcept;
    std::span<const Term> args() const noexcept;
    std::size_t arity() const noexcept { return args().size(); }

    bool is_ground() const noexcept;
    /// 0 for constants and variables, 1 + max child depth for compounds.
    std::size_t depth() const noexcept;

    friend bool operator==(const Term& a, const Term& b) noexcept;
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

private:
    struct Node;
    struct Interner;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

using Tuple = std::vector<Term>;
using VarSet = std::set<std::string>;

inline constexpr const char* kListFunctor = ".";
inline constexpr const char* kPairFunctor = "-";
inline constexpr const char* kNilName = "[]";

std::string to_string(const Term& t);
std::string to_string(std::span<const Term> tuple);
std::ostream& operator<<(std::ostream& os, const Term& t);

/// Distinct variables of `t` in first-occurrence order, appended to `out`.
void collect_variables(const Term& t, std::vector<std::string>& out);
std::vector<std::string> variables(const Term& t);
std::vector<std::string> variables(std::span<const Term> tuple);
bool occurs_in(const std::string& var, const Term& t);
bool is_ground(std::span<const Term> tuple);

struct Equation {
    Term lhs;
    Term rhs;
    friend bool operator==(const Equation&, const Equation&) = default;
};

using EquationSet = std::vector<Equation>;

/// Every lhs is a distinct variable that occurs nowhere else in the set.
bool is_solved_form(const EquationSet& equations);

/// An idempotent substitution, i.e. an equation set in solved form.
class Substitution {
public:
    Substitution() = default;
    explicit Substitution(std::map<std::string, Term> bindings);

    const Term* find(const std::string& var) const;
    bool binds(const std::string& var) const { return find(var) != nullptr; }

    Term apply(const Term& t) const;
    Tuple apply(std::span<const Term> tuple) const;

    const std::map<std::string, Term>& bindings() const noexcept { return bindings_; }
    std::size_t size() const noexcept { return bindings_.size(); }
    bool empty() const noexcept { return bindings_.empty(); }

    EquationSet to_equations() const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<std::string, Term> bindings_;
};

std::ostream& operator<<(std::ostream& os, const Substitution& s);

/// Incremental triangular bindings with an undo trail. Unification always
/// performs the occurs check.
class Bindings {
public:
    /// Follows variable bindings until an unbound variable or non-variable.
    Term walk(Term t) const;
    /// Applies the bindings all the way down.
    Term resolve(const Term& t) const;

    /// Binds a variable on the left side in preference to one on the right.
    /// On failure the bindings made so far are left in place; roll back with
    /// `undo(mark())` taken before the call.
    bool unify(const Term& a, const Term& b);

    std::size_t mark() const noexcept { return trail_.size(); }
    void undo(std::size_t mark);

    /// Idempotent substitution over every bound variable.
    Substitution solved() const;

private:
    bool occurs(const std::string& var, const Term& t) const;
    void bind(const std::string& var, Term value);

    std::unordered_map<std::string, Term> map_;
    std::vector<std::string> trail_;
};

/// Most general solved form of `equations`, or nullopt when unsolvable.
std::optional<Substitution> unify(const EquationSet& equations);

/// Engine-reserved fresh variable names `_G<n>`. Thread-safe.
std::string fresh_variable_name();
Term fresh_variable();
bool is_fresh_name(const std::string& name);

/// Replaces every variable outside `protect` by a fresh variable that is not
/// in `avoid`. The same variable maps to the same fresh variable throughout
/// one call.
Term rename_apart(const Term& t, const VarSet& avoid, const VarSet& protect = {});
Tuple rename_apart(std::span<const Term> tuple, const VarSet& avoid, const VarSet& protect = {});
EquationSet rename_apart(const EquationSet& equations, const VarSet& avoid,
                         const VarSet& protect = {});

/// Stateful form used when several pieces must share one renaming.
class Renamer {
public:
    Renamer(const VarSet& avoid, const VarSet& protect) : avoid_(avoid), protect_(protect) {}
    Term operator()(const Term& t);

private:
    const VarSet& avoid_;
    const VarSet& protect_;
    std::map<std::string, Term> map_;
};

} // namespace tra
