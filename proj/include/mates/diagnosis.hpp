#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "mates/kb_model.hpp"

namespace mates {

/// Symptom set posed by the user.
struct Query {
    std::set<SymptomId> symptoms;

    Query() = default;
    explicit Query(std::set<SymptomId> s) : symptoms(std::move(s)) {}
    /// Builds from raw tokens; repeats collapse.
    static Query from_tokens(std::span<const std::string> tokens);

    bool operator==(const Query&) const = default;
};

struct CarePlan {
    DiseaseId disease;
    std::string care_treatment;
    std::string if_untreated;

    bool operator==(const CarePlan&) const = default;
};

struct Suggestion {
    DiseaseId disease;
    std::size_t score = 0;
    std::vector<SymptomId> matched;  // in the disease's symptom order
    std::string care_treatment;
    std::string if_untreated;

    bool operator==(const Suggestion&) const = default;
};

struct ConsultationResult {
    std::vector<Suggestion> suggestions;
    Query query_echo;

    bool operator==(const ConsultationResult&) const = default;
};

/// Marker predicates asserted by the compiled disease rules.
inline constexpr const char* treatment_marker = "has_treatment";
inline constexpr const char* untreated_marker = "has_untreated";

/// Two productions per disease, in declaration order:
/// `IF disease(d) THEN has_treatment(d)` and `IF disease(d) THEN has_untreated(d)`.
std::vector<Rule> compile_disease_rules(const KnowledgeBase& kb);

/// The engine's rule list for a KB: user rules, then compiled disease rules.
std::vector<Rule> consultation_rules(const KnowledgeBase& kb);

/// Care and treatment retrieval for known diseases.
///
/// Seeds a fresh working memory with `disease(d)` for each requested id and
/// runs the engine to fixpoint. Each disease whose treatment and untreated
/// markers end up in memory yields a CarePlan: requested ids first, in
/// request order with repeats collapsed, then any diseases inferred by user
/// rules, in the order they were derived.
///
/// Throws UnknownIdError listing every undeclared id, and
/// std::invalid_argument for an empty request.
std::vector<CarePlan> consult_by_disease(const KnowledgeBase& kb,
                                         std::span<const DiseaseId> diseases);

/// score(d) = |symptoms(d) ∩ q| for every declared disease, zeros included.
/// Throws UnknownIdError for undeclared query symptoms.
ScoreMap score(const KnowledgeBase& kb, const Query& q);

/// Diseases matching at least one query symptom, by descending score with
/// ties broken by ascending disease id. Each suggestion carries its care plan.
ConsultationResult rank(const KnowledgeBase& kb, const Query& q);

} // namespace mates
