#include "mates/kb_model.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace mates {

bool is_identifier(std::string_view token) noexcept {
    if (token.empty() || token.front() < 'a' || token.front() > 'z') return false;
    return std::all_of(token.begin(), token.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
}

const Symptom* KnowledgeBase::find_symptom(const SymptomId& id) const noexcept {
    auto it = std::find_if(symptoms.begin(), symptoms.end(),
                           [&](const Symptom& s) { return s.id == id; });
    return it == symptoms.end() ? nullptr : &*it;
}

const DiseaseRecord* KnowledgeBase::find_disease(const DiseaseId& id) const noexcept {
    auto it = std::find_if(diseases.begin(), diseases.end(),
                           [&](const DiseaseRecord& d) { return d.id == id; });
    return it == diseases.end() ? nullptr : &*it;
}

std::optional<std::size_t> KnowledgeBase::symptom_index(const SymptomId& id) const noexcept {
    if (const Symptom* s = find_symptom(id)) return static_cast<std::size_t>(s - symptoms.data());
    return std::nullopt;
}

std::optional<std::size_t> KnowledgeBase::disease_index(const DiseaseId& id) const noexcept {
    if (const DiseaseRecord* d = find_disease(id)) return static_cast<std::size_t>(d - diseases.data());
    return std::nullopt;
}

std::string_view to_string(Violation::Kind kind) noexcept {
    switch (kind) {
    case Violation::Kind::invalid_id: return "invalid_id";
    case Violation::Kind::duplicate_id: return "duplicate_id";
    case Violation::Kind::undeclared_symptom: return "undeclared_symptom";
    case Violation::Kind::undeclared_disease: return "undeclared_disease";
    case Violation::Kind::empty_field: return "empty_field";
    case Violation::Kind::invalid_text: return "invalid_text";
    case Violation::Kind::malformed_premise: return "malformed_premise";
    case Violation::Kind::self_loop: return "self_loop";
    }
    return "unknown";
}

namespace {

class Validator {
public:
    explicit Validator(const KnowledgeBase& kb) : kb_(kb) {
        for (const auto& s : kb.symptoms) symptom_ids_.insert(s.id.str());
        for (const auto& d : kb.diseases) disease_ids_.insert(d.id.str());
    }

    std::vector<Violation> run() {
        std::unordered_set<std::string> seen;
        for (const auto& s : kb_.symptoms) {
            check_id(s.id.str(), "symptom");
            if (!seen.insert(s.id.str()).second)
                add(Violation::Kind::duplicate_id, s.id.str(), "symptom id declared more than once");
            check_text(s.id.str(), "display name", s.display_name);
        }

        seen.clear();
        for (const auto& d : kb_.diseases) {
            check_id(d.id.str(), "disease");
            if (!seen.insert(d.id.str()).second)
                add(Violation::Kind::duplicate_id, d.id.str(), "disease id declared more than once");
            check_text(d.id.str(), "display name", d.display_name);
            check_text(d.id.str(), "care and treatment", d.care_treatment);
            check_text(d.id.str(), "if-untreated text", d.if_untreated);
            if (d.symptoms.empty())
                add(Violation::Kind::empty_field, d.id.str(), "disease lists no symptoms");
            std::unordered_set<std::string> listed;
            for (const auto& s : d.symptoms) {
                if (!symptom_ids_.contains(s.str()))
                    add(Violation::Kind::undeclared_symptom, s.str(),
                        "disease " + d.id.str() + " references undeclared symptom");
                else if (!listed.insert(s.str()).second)
                    add(Violation::Kind::duplicate_id, s.str(),
                        "symptom listed twice by disease " + d.id.str());
            }
        }

        seen.clear();
        for (const auto& r : kb_.rules) {
            check_id(r.name, "rule name");
            if (!seen.insert(r.name).second)
                add(Violation::Kind::duplicate_id, r.name, "rule name declared more than once");
            check_premise(r.name, r.premise);
            if (r.conclusion.empty())
                add(Violation::Kind::empty_field, r.name, "rule has no conclusion");
            for (const auto& f : r.conclusion) check_fact(r.name, f);
            if (r.premise.kind == PremiseExpr::Kind::atom &&
                std::find(r.conclusion.begin(), r.conclusion.end(), r.premise.fact) != r.conclusion.end())
                add(Violation::Kind::self_loop, r.name, "rule concludes its own sole premise atom");
        }
        return std::move(out_);
    }

private:
    void add(Violation::Kind kind, std::string id, std::string message) {
        out_.push_back({kind, std::move(id), std::move(message)});
    }

    void check_id(const std::string& id, const char* what) {
        if (!is_identifier(id))
            add(Violation::Kind::invalid_id, id, std::string(what) + " is not a lowercase identifier");
    }

    void check_text(const std::string& id, const char* what, const std::string& text) {
        if (text.empty())
            add(Violation::Kind::empty_field, id, std::string(what) + " is empty");
        else if (text.find_first_of("\r\n") != std::string::npos)
            add(Violation::Kind::invalid_text, id, std::string(what) + " contains a line break");
    }

    void check_fact(const std::string& rule, const Fact& f) {
        if (!is_identifier(f.predicate))
            add(Violation::Kind::invalid_id, f.predicate, "predicate in rule " + rule + " is not an identifier");
        for (const auto& a : f.args)
            if (!is_identifier(a))
                add(Violation::Kind::invalid_id, a, "argument in rule " + rule + " is not an identifier");
        const bool is_symptom = f.predicate == "symptom";
        if (!is_symptom && f.predicate != "disease") return;
        if (f.args.size() != 1) {
            add(Violation::Kind::malformed_premise, rule, f.predicate + "/1 used with wrong arity");
            return;
        }
        const auto& arg = f.args.front();
        if (is_symptom && !symptom_ids_.contains(arg))
            add(Violation::Kind::undeclared_symptom, arg, "rule " + rule + " references undeclared symptom");
        if (!is_symptom && !disease_ids_.contains(arg))
            add(Violation::Kind::undeclared_disease, arg, "rule " + rule + " references undeclared disease");
    }

    void check_premise(const std::string& rule, const PremiseExpr& e) {
        if (e.kind == PremiseExpr::Kind::atom) {
            check_fact(rule, e.fact);
            return;
        }
        if (e.children.size() < 2)
            add(Violation::Kind::malformed_premise, rule, "AND/OR node with fewer than two operands");
        for (const auto& c : e.children) check_premise(rule, c);
    }

    const KnowledgeBase& kb_;
    std::unordered_set<std::string> symptom_ids_;
    std::unordered_set<std::string> disease_ids_;
    std::vector<Violation> out_;
};

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

} // namespace

std::vector<Violation> validate(const KnowledgeBase& kb) {
    return Validator(kb).run();
}

UnknownIdError::UnknownIdError(std::string kind, std::vector<std::string> ids)
    : std::runtime_error("unknown " + kind + " id(s): " + join_ids(ids)),
      kind_(std::move(kind)),
      ids_(std::move(ids)) {}

IncidenceMatrix::IncidenceMatrix(const KnowledgeBase& kb)
    : rows_(kb.diseases.size()),
      cols_(kb.symptoms.size()),
      words_per_row_((kb.symptoms.size() + 63) / 64),
      bits_(rows_ * words_per_row_, 0) {
    for (std::size_t d = 0; d < rows_; ++d) {
        for (const auto& s : kb.diseases[d].symptoms) {
            if (auto j = kb.symptom_index(s))
                bits_[d * words_per_row_ + *j / 64] |= std::uint64_t{1} << (*j % 64);
        }
    }
}

int IncidenceMatrix::at(std::size_t disease, std::size_t symptom) const {
    if (disease >= rows_ || symptom >= cols_) throw std::out_of_range("incidence index out of range");
    return static_cast<int>((bits_[disease * words_per_row_ + symptom / 64] >> (symptom % 64)) & 1U);
}

std::vector<std::uint64_t> IncidenceMatrix::mask(std::span<const std::size_t> symptom_indices) const {
    std::vector<std::uint64_t> m(words_per_row_, 0);
    for (std::size_t j : symptom_indices) {
        if (j >= cols_) throw std::out_of_range("symptom index out of range");
        m[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    return m;
}

std::size_t IncidenceMatrix::overlap(std::size_t disease, std::span<const std::uint64_t> mask) const {
    if (disease >= rows_) throw std::out_of_range("disease index out of range");
    const std::uint64_t* row = bits_.data() + disease * words_per_row_;
    std::size_t count = 0;
    for (std::size_t w = 0; w < std::min(words_per_row_, mask.size()); ++w)
        count += static_cast<std::size_t>(std::popcount(row[w] & mask[w]));
    return count;
}

int incidence(const KnowledgeBase& kb, const DiseaseId& disease, const SymptomId& symptom) {
    const DiseaseRecord* d = kb.find_disease(disease);
    if (!d) throw UnknownIdError("disease", {disease.str()});
    if (!kb.find_symptom(symptom)) throw UnknownIdError("symptom", {symptom.str()});
    return std::find(d->symptoms.begin(), d->symptoms.end(), symptom) != d->symptoms.end() ? 1 : 0;
}

std::size_t ScoreMap::at(const DiseaseId& disease) const {
    for (const auto& e : entries)
        if (e.disease == disease) return e.score;
    throw UnknownIdError("disease", {disease.str()});
}

} // namespace mates
