#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mates/kb_model.hpp"

namespace mates {

/// Grammar violation at a 1-based line and column of the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// Message without the position prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// The file could not be opened or read.
class KbIoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximum parenthesis nesting accepted inside a premise.
inline constexpr std::size_t max_premise_depth = 256;

/// Parses a whole knowledge-base file. Throws ParseError; never returns a
/// partial KB. Structural validation is separate (see `validate`).
///
///     SYMPTOM cough "Cough"
///     DISEASE tb "TB"
///       SYMPTOMS: cough, fever
///       TREATMENT: "..."
///       IF_UNTREATED: "..."
///     RULE tb_classic: IF symptom(cough) AND symptom(fever) THEN disease(tb)
///
/// A DISEASE declaration may continue over several lines; each continuation
/// starts with one of its clause keywords.
KnowledgeBase parse_kb(std::string_view text);

/// Parses a premise expression alone. AND binds tighter than OR, both are
/// left associative and flatten into a single n-ary node; parentheses always
/// introduce a node of their own.
PremiseExpr parse_premise(std::string_view text);

/// Canonical text: one declaration per line in KB order, premises fully
/// parenthesized. `parse_kb(render_kb(kb)) == kb` for every valid kb.
std::string render_kb(const KnowledgeBase& kb);

/// Reads and parses a KB file. Throws KbIoError or ParseError.
KnowledgeBase load_kb_file(const std::filesystem::path& path);

} // namespace mates
