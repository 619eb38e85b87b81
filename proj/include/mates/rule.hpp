#pragma once

#include <string>
#include <vector>

namespace mates {

/// Ground atom `predicate(arg, ...)`. Equality is structural.
struct Fact {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const Fact&) const = default;
    auto operator<=>(const Fact&) const = default;
};

std::string to_string(const Fact& fact);

struct FactHash {
    std::size_t operator()(const Fact& fact) const noexcept;
};

/// Boolean premise tree over ground atoms. `all` and `any` nodes carry at
/// least two children when well formed; `validate` reports trees that don't.
struct PremiseExpr {
    enum class Kind { atom, all, any };

    Kind kind = Kind::atom;
    Fact fact;                          // atom only
    std::vector<PremiseExpr> children;  // all / any only

    static PremiseExpr atom(Fact f);
    static PremiseExpr all_of(std::vector<PremiseExpr> children);
    static PremiseExpr any_of(std::vector<PremiseExpr> children);

    bool operator==(const PremiseExpr&) const = default;
};

/// Propositional production: IF premise THEN assert every conclusion fact.
struct Rule {
    std::string name;
    PremiseExpr premise;
    std::vector<Fact> conclusion;

    bool operator==(const Rule&) const = default;
};

/// Fully parenthesized rendering, e.g. `(a() AND (b(x) OR c(y)))`.
std::string to_string(const PremiseExpr& expr);

} // namespace mates
