#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace mates {

/// True iff `token` matches `[a-z][a-z0-9_]*`.
bool is_identifier(std::string_view token) noexcept;

/// Lowercase identifier token tagged by namespace, so symptom and disease ids
/// cannot be mixed up at compile time.
template <class Tag>
class Id {
public:
    Id() = default;
    explicit Id(std::string token) : token_(std::move(token)) {}

    const std::string& str() const noexcept { return token_; }
    bool valid() const noexcept { return is_identifier(token_); }

    auto operator<=>(const Id&) const = default;
    bool operator==(const Id&) const = default;

private:
    std::string token_;
};

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Id<Tag>& id) {
    return os << id.str();
}

using SymptomId = Id<struct SymptomTag>;
using DiseaseId = Id<struct DiseaseTag>;

} // namespace mates

template <class Tag>
struct std::hash<mates::Id<Tag>> {
    std::size_t operator()(const mates::Id<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
