#pragma once

// Random instance generators shared by the property suites and the
// acceptance binary. Everything is driven by an explicit seed.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mates/diagnosis.hpp"
#include "mates/kb_model.hpp"
#include "mates/rule.hpp"

namespace mates::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) {
    return std::bernoulli_distribution(p)(rng);
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[uniform(rng, 0, items.size() - 1)];
}

/// Random lowercase identifier, always distinct thanks to the numeric suffix.
inline std::string make_ident(Rng& rng, const char* stem, std::size_t n) {
    static const char* prefixes[] = {"", "x_", "a", "q9_", "z"};
    return std::string(prefixes[uniform(rng, 0, 4)]) + stem + std::to_string(n);
}

/// Printable text exercising the string escapes: quotes, backslashes, '#',
/// keywords, and multi-byte UTF-8. Never empty, never contains a line break.
inline std::string make_text(Rng& rng) {
    static const std::vector<std::string> pieces = {
        "Cough", "fever", " ", "\"quoted\"", "back\\slash", "# not a comment", "AND", "OR",
        "IF_UNTREATED:", "(", ")", ",", ":", "30-60mg", "\xc3\xa9t\xc3\xa9", "\xe1\x8a\xa0", "\t"};
    std::string out;
    const std::size_t n = uniform(rng, 1, 6);
    for (std::size_t i = 0; i < n; ++i) out += pick(rng, pieces);
    return out;
}

/// Random premise tree over `pool`; `all`/`any` nodes get 2..4 children.
inline PremiseExpr make_premise(Rng& rng, const std::vector<Fact>& pool, std::size_t depth) {
    if (depth == 0 || coin(rng, 0.55)) return PremiseExpr::atom(pick(rng, pool));
    std::vector<PremiseExpr> children;
    const std::size_t n = uniform(rng, 2, 4);
    for (std::size_t i = 0; i < n; ++i) children.push_back(make_premise(rng, pool, depth - 1));
    return coin(rng) ? PremiseExpr::all_of(std::move(children)) : PremiseExpr::any_of(std::move(children));
}

inline bool self_loop(const Rule& r) {
    return r.premise.kind == PremiseExpr::Kind::atom &&
           std::find(r.conclusion.begin(), r.conclusion.end(), r.premise.fact) != r.conclusion.end();
}

struct KbShape {
    std::size_t max_symptoms = 60;
    std::size_t max_diseases = 20;
    std::size_t max_rules = 8;
    bool rich_text = true;
};

/// Random valid KB: random incidence rows, random texts, random rules over
/// symptom/1, disease/1 and free predicates.
inline KnowledgeBase make_kb(Rng& rng, const KbShape& shape = {}) {
    KnowledgeBase kb;
    const std::size_t n_symptoms = uniform(rng, 1, shape.max_symptoms);
    const std::size_t n_diseases = uniform(rng, 0, shape.max_diseases);
    for (std::size_t i = 0; i < n_symptoms; ++i)
        kb.symptoms.push_back({SymptomId(make_ident(rng, "s", i)),
                               shape.rich_text ? make_text(rng) : "Symptom " + std::to_string(i)});

    const double density = std::uniform_real_distribution<double>(0.02, 0.6)(rng);
    for (std::size_t i = 0; i < n_diseases; ++i) {
        DiseaseRecord d;
        d.id = DiseaseId(make_ident(rng, "d", i));
        d.display_name = shape.rich_text ? make_text(rng) : "Disease " + std::to_string(i);
        for (const auto& s : kb.symptoms)
            if (coin(rng, density)) d.symptoms.push_back(s.id);
        if (d.symptoms.empty()) d.symptoms.push_back(pick(rng, kb.symptoms).id);
        std::shuffle(d.symptoms.begin(), d.symptoms.end(), rng);
        d.care_treatment = shape.rich_text ? make_text(rng) : "treat " + d.id.str();
        d.if_untreated = shape.rich_text ? make_text(rng) : "untreated " + d.id.str();
        kb.diseases.push_back(std::move(d));
    }

    std::vector<Fact> pool;
    for (const auto& s : kb.symptoms) pool.push_back({"symptom", {s.id.str()}});
    for (const auto& d : kb.diseases) pool.push_back({"disease", {d.id.str()}});
    for (std::size_t i = 0; i < 6; ++i) {
        Fact f{"flag" + std::to_string(i), {}};
        for (std::size_t a = uniform(rng, 0, 3); a > 0; --a) f.args.push_back(make_ident(rng, "v", a));
        pool.push_back(std::move(f));
    }

    const std::size_t n_rules = uniform(rng, 0, shape.max_rules);
    for (std::size_t i = 0; i < n_rules; ++i) {
        Rule r;
        r.name = make_ident(rng, "r", i);
        do {
            r.premise = make_premise(rng, pool, 3);
            r.conclusion.clear();
            for (std::size_t c = uniform(rng, 1, 3); c > 0; --c) r.conclusion.push_back(pick(rng, pool));
        } while (self_loop(r));
        kb.rules.push_back(std::move(r));
    }
    return kb;
}

/// Random query over the KB's symptoms, optionally empty.
inline Query make_query(Rng& rng, const KnowledgeBase& kb) {
    Query q;
    if (kb.symptoms.empty()) return q;
    const double p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    for (const auto& s : kb.symptoms)
        if (coin(rng, p)) q.symptoms.insert(s.id);
    return q;
}

struct RuleSystem {
    std::vector<Rule> rules;
    std::vector<Fact> seed;
    std::size_t fact_universe = 0;
};

/// Positive propositional rule set over facts `p(k)` with at most
/// `max_facts` distinct atoms.
inline RuleSystem make_rule_system(Rng& rng, std::size_t max_rules = 50, std::size_t max_facts = 100) {
    RuleSystem sys;
    sys.fact_universe = uniform(rng, 1, max_facts);
    std::vector<Fact> pool;
    for (std::size_t k = 0; k < sys.fact_universe; ++k) pool.push_back({"p", {"k" + std::to_string(k)}});

    const std::size_t n_rules = uniform(rng, 0, max_rules);
    for (std::size_t i = 0; i < n_rules; ++i) {
        Rule r;
        r.name = "r" + std::to_string(i);
        r.premise = make_premise(rng, pool, 2);
        for (std::size_t c = uniform(rng, 1, 3); c > 0; --c) r.conclusion.push_back(pick(rng, pool));
        sys.rules.push_back(std::move(r));
    }
    const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    for (const auto& f : pool)
        if (coin(rng, p)) sys.seed.push_back(f);
    return sys;
}

} // namespace mates::testing
