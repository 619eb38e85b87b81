#include "mates/diagnosis.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "mates/inference.hpp"

namespace mates {

namespace {

Fact unary(const char* predicate, const std::string& arg) {
    return Fact{predicate, {arg}};
}

/// Column indices of the query symptoms; throws on undeclared ids.
std::vector<std::size_t> resolve(const KnowledgeBase& kb, const Query& q) {
    std::vector<std::size_t> indices;
    std::vector<std::string> unknown;
    indices.reserve(q.symptoms.size());
    for (const auto& s : q.symptoms) {
        if (auto j = kb.symptom_index(s))
            indices.push_back(*j);
        else
            unknown.push_back(s.str());
    }
    if (!unknown.empty()) throw UnknownIdError("symptom", std::move(unknown));
    return indices;
}

} // namespace

Query Query::from_tokens(std::span<const std::string> tokens) {
    Query q;
    for (const auto& t : tokens) q.symptoms.emplace(t);
    return q;
}

std::vector<Rule> compile_disease_rules(const KnowledgeBase& kb) {
    std::vector<Rule> rules;
    rules.reserve(kb.diseases.size() * 2);
    for (const auto& d : kb.diseases) {
        const auto& id = d.id.str();
        rules.push_back({"compiled_treatment_" + id, PremiseExpr::atom(unary("disease", id)),
                         {unary(treatment_marker, id)}});
        rules.push_back({"compiled_untreated_" + id, PremiseExpr::atom(unary("disease", id)),
                         {unary(untreated_marker, id)}});
    }
    return rules;
}

std::vector<Rule> consultation_rules(const KnowledgeBase& kb) {
    std::vector<Rule> rules = kb.rules;
    auto compiled = compile_disease_rules(kb);
    std::move(compiled.begin(), compiled.end(), std::back_inserter(rules));
    return rules;
}

std::vector<CarePlan> consult_by_disease(const KnowledgeBase& kb, std::span<const DiseaseId> diseases) {
    if (diseases.empty()) throw std::invalid_argument("at least one disease id is required");

    std::vector<DiseaseId> order;
    std::unordered_set<DiseaseId> seen;
    std::vector<std::string> unknown;
    for (const auto& id : diseases) {
        if (!seen.insert(id).second) continue;
        if (kb.find_disease(id))
            order.push_back(id);
        else
            unknown.push_back(id.str());
    }
    if (!unknown.empty()) throw UnknownIdError("disease", std::move(unknown));

    WorkingMemory seed;
    for (const auto& id : order) seed.assert_fact(unary("disease", id.str()));
    const auto rules = consultation_rules(kb);
    const auto result = run_to_fixpoint(rules, std::move(seed));

    // Diseases derived by user rules follow the requested ones.
    for (const auto& f : result.memory.facts()) {
        if (f.predicate != "disease" || f.args.size() != 1) continue;
        DiseaseId id(f.args.front());
        if (kb.find_disease(id) && seen.insert(id).second) order.push_back(std::move(id));
    }

    std::vector<CarePlan> plans;
    for (const auto& id : order) {
        if (!result.memory.contains(unary(treatment_marker, id.str())) ||
            !result.memory.contains(unary(untreated_marker, id.str())))
            continue;
        const DiseaseRecord* d = kb.find_disease(id);
        plans.push_back({id, d->care_treatment, d->if_untreated});
    }
    return plans;
}

ScoreMap score(const KnowledgeBase& kb, const Query& q) {
    const auto columns = resolve(kb, q);
    const IncidenceMatrix matrix(kb);
    const auto mask = matrix.mask(columns);

    ScoreMap scores;
    scores.entries.reserve(kb.diseases.size());
    for (std::size_t i = 0; i < kb.diseases.size(); ++i)
        scores.entries.push_back({kb.diseases[i].id, matrix.overlap(i, mask)});
    return scores;
}

ConsultationResult rank(const KnowledgeBase& kb, const Query& q) {
    const ScoreMap scores = score(kb, q);

    ConsultationResult result;
    result.query_echo = q;
    for (const auto& e : scores.entries) {
        if (e.score == 0) continue;
        const DiseaseRecord* d = kb.find_disease(e.disease);
        Suggestion s;
        s.disease = e.disease;
        s.score = e.score;
        for (const auto& sym : d->symptoms)
            if (q.symptoms.contains(sym)) s.matched.push_back(sym);
        result.suggestions.push_back(std::move(s));
    }
    std::sort(result.suggestions.begin(), result.suggestions.end(),
              [](const Suggestion& a, const Suggestion& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.disease < b.disease;
              });

    if (result.suggestions.empty()) return result;

    std::vector<DiseaseId> ids;
    ids.reserve(result.suggestions.size());
    for (const auto& s : result.suggestions) ids.push_back(s.disease);
    const auto plans = consult_by_disease(kb, ids);
    for (auto& s : result.suggestions) {
        auto it = std::find_if(plans.begin(), plans.end(),
                               [&](const CarePlan& p) { return p.disease == s.disease; });
        if (it == plans.end())
            throw std::logic_error("no care plan derived for suggested disease " + s.disease.str());
        s.care_treatment = it->care_treatment;
        s.if_untreated = it->if_untreated;
    }
    return result;
}

} // namespace mates
