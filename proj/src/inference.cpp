#include "mates/inference.hpp"

#include <algorithm>
#include <stdexcept>

namespace mates {

WorkingMemory::WorkingMemory(std::initializer_list<Fact> facts) {
    for (const auto& f : facts) assert_fact(f);
}

bool WorkingMemory::assert_fact(const Fact& fact) {
    if (!index_.insert(fact).second) return false;
    ordered_.push_back(fact);
    return true;
}

bool WorkingMemory::contains(const Fact& fact) const {
    return index_.contains(fact);
}

bool eval_premise(const PremiseExpr& expr, const WorkingMemory& wm) {
    switch (expr.kind) {
    case PremiseExpr::Kind::atom:
        return wm.contains(expr.fact);
    case PremiseExpr::Kind::all:
        return std::all_of(expr.children.begin(), expr.children.end(),
                           [&](const PremiseExpr& c) { return eval_premise(c, wm); });
    case PremiseExpr::Kind::any:
        return std::any_of(expr.children.begin(), expr.children.end(),
                           [&](const PremiseExpr& c) { return eval_premise(c, wm); });
    }
    return false;
}

std::vector<FiringRecord> step(std::span<const Rule> rules, WorkingMemory& wm,
                               std::vector<bool>& fired, std::size_t cycle) {
    if (fired.size() < rules.size()) fired.resize(rules.size(), false);

    // Match phase sees only the memory as it stood when the cycle began.
    std::vector<std::size_t> enabled;
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (!fired[i] && eval_premise(rules[i].premise, wm)) enabled.push_back(i);

    std::vector<FiringRecord> records;
    for (std::size_t i : enabled) {
        fired[i] = true;
        FiringRecord rec{cycle, rules[i].name, {}};
        for (const auto& f : rules[i].conclusion)
            if (wm.assert_fact(f)) rec.asserted.push_back(f);
        if (!rec.asserted.empty()) records.push_back(std::move(rec));
    }
    return records;
}

FixpointResult run_to_fixpoint(std::span<const Rule> rules, WorkingMemory wm, std::size_t max_cycles) {
    if (max_cycles == 0) throw std::invalid_argument("max_cycles must be at least 1");

    FixpointResult result;
    result.memory = std::move(wm);
    std::vector<bool> fired(rules.size(), false);
    while (result.cycles < max_cycles) {
        ++result.cycles;
        auto records = step(rules, result.memory, fired, result.cycles);
        if (records.empty()) {
            result.converged = true;
            break;
        }
        std::move(records.begin(), records.end(), std::back_inserter(result.firings));
    }
    return result;
}

FixpointResult run_to_fixpoint(std::span<const Rule> rules, WorkingMemory wm) {
    return run_to_fixpoint(rules, std::move(wm), rules.size() + 1);
}

} // namespace mates
