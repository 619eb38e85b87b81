#pragma once

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "mates/rule.hpp"

namespace mates {

/// Duplicate-free set of ground facts. Insertion order is kept for
/// reporting only; membership is by structural equality.
class WorkingMemory {
public:
    WorkingMemory() = default;
    WorkingMemory(std::initializer_list<Fact> facts);

    /// Adds `fact` unless already present. Returns true iff it was new.
    bool assert_fact(const Fact& fact);
    bool contains(const Fact& fact) const;

    std::size_t size() const noexcept { return ordered_.size(); }
    bool empty() const noexcept { return ordered_.empty(); }

    /// Facts in insertion order.
    std::span<const Fact> facts() const noexcept { return ordered_; }

private:
    std::vector<Fact> ordered_;
    std::unordered_set<Fact, FactHash> index_;
};

/// One productive rule firing: the facts it newly added during `cycle`.
struct FiringRecord {
    std::size_t cycle = 0;
    std::string rule_name;
    std::vector<Fact> asserted;

    bool operator==(const FiringRecord&) const = default;
};

bool eval_premise(const PremiseExpr& expr, const WorkingMemory& wm);

/// One match-fire cycle.
///
/// Every rule whose `fired[i]` is false is matched against `wm` as it stood
/// at the start of the cycle; each enabled rule then fires once, in list
/// order, and is marked in `fired`. Only firings that add at least one new
/// fact are returned. `fired` is resized to `rules.size()` if shorter.
std::vector<FiringRecord> step(std::span<const Rule> rules, WorkingMemory& wm,
                               std::vector<bool>& fired, std::size_t cycle = 1);

struct FixpointResult {
    WorkingMemory memory;
    std::vector<FiringRecord> firings;
    bool converged = false;
    std::size_t cycles = 0;  // cycles executed, including the final quiet one
};

/// Cycles `step` until a cycle adds nothing (converged) or `max_cycles` have
/// run. Rules fire at most once each, so `rules.size() + 1` cycles always
/// suffice. Throws std::invalid_argument if max_cycles is 0.
FixpointResult run_to_fixpoint(std::span<const Rule> rules, WorkingMemory wm,
                               std::size_t max_cycles);

/// Same, with the `rules.size() + 1` bound.
FixpointResult run_to_fixpoint(std::span<const Rule> rules, WorkingMemory wm);

} // namespace mates
