#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mates/ids.hpp"
#include "mates/rule.hpp"

namespace mates {

struct Symptom {
    SymptomId id;
    std::string display_name;

    bool operator==(const Symptom&) const = default;
};

struct DiseaseRecord {
    DiseaseId id;
    std::string display_name;
    std::vector<SymptomId> symptoms;  // declaration order
    std::string care_treatment;
    std::string if_untreated;

    bool operator==(const DiseaseRecord&) const = default;
};

/// Symptoms, diseases and user-authored rules, in declaration order.
/// Treated as immutable once loaded; share it by const reference.
struct KnowledgeBase {
    std::vector<Symptom> symptoms;
    std::vector<DiseaseRecord> diseases;
    std::vector<Rule> rules;

    const Symptom* find_symptom(const SymptomId& id) const noexcept;
    const DiseaseRecord* find_disease(const DiseaseId& id) const noexcept;
    std::optional<std::size_t> symptom_index(const SymptomId& id) const noexcept;
    std::optional<std::size_t> disease_index(const DiseaseId& id) const noexcept;

    bool operator==(const KnowledgeBase&) const = default;
};

struct Violation {
    enum class Kind {
        invalid_id,
        duplicate_id,
        undeclared_symptom,
        undeclared_disease,
        empty_field,
        invalid_text,
        malformed_premise,
        self_loop,
    };

    Kind kind;
    std::string id;       // offending id (symptom, disease or rule name)
    std::string message;

    bool operator==(const Violation&) const = default;
};

std::string_view to_string(Violation::Kind kind) noexcept;

/// Every broken structural invariant of `kb`; empty iff the KB is consistent.
///
/// Rules reference the KB through the reserved predicates `symptom/1` and
/// `disease/1`: their argument must name a declared symptom or disease.
/// Other predicates are free-form.
std::vector<Violation> validate(const KnowledgeBase& kb);

/// Thrown when a request names ids the KB does not declare. `ids` lists every
/// offender in request order, without repeats.
class UnknownIdError : public std::runtime_error {
public:
    UnknownIdError(std::string kind, std::vector<std::string> ids);

    const std::string& kind() const noexcept { return kind_; }
    const std::vector<std::string>& ids() const noexcept { return ids_; }

private:
    std::string kind_;
    std::vector<std::string> ids_;
};

/// Bit-packed disease x symptom incidence matrix derived from a KB.
/// Row i is disease i, column j is symptom j, both in declaration order.
class IncidenceMatrix {
public:
    explicit IncidenceMatrix(const KnowledgeBase& kb);

    std::size_t disease_count() const noexcept { return rows_; }
    std::size_t symptom_count() const noexcept { return cols_; }

    int at(std::size_t disease, std::size_t symptom) const;

    /// Column mask with a bit set for each listed symptom index.
    std::vector<std::uint64_t> mask(std::span<const std::size_t> symptom_indices) const;

    /// Number of columns set in both row `disease` and `mask`.
    std::size_t overlap(std::size_t disease, std::span<const std::uint64_t> mask) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// 1 iff `symptom` is listed by `disease`, else 0.
/// Throws UnknownIdError if either id is undeclared.
int incidence(const KnowledgeBase& kb, const DiseaseId& disease, const SymptomId& symptom);

/// Per-disease match count, one entry per declared disease in KB order.
struct ScoreMap {
    struct Entry {
        DiseaseId disease;
        std::size_t score = 0;

        bool operator==(const Entry&) const = default;
    };

    std::vector<Entry> entries;

    /// Throws UnknownIdError for an undeclared disease.
    std::size_t at(const DiseaseId& disease) const;
};

/// Location of the bundled `maternal_care.kb`. `MATES_DATA_DIR` overrides
/// the compiled-in data directory.
std::filesystem::path default_kb_path();

/// The shipped maternal-care knowledge base (40 symptoms, 10 diseases).
/// Loaded from `default_kb_path()` on first use and cached.
const KnowledgeBase& default_kb();

} // namespace mates
