#include "mates/rule.hpp"

#include <functional>

namespace mates {

namespace {

void hash_combine(std::size_t& seed, std::size_t value) noexcept {
    seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

void render(const PremiseExpr& expr, std::string& out) {
    if (expr.kind == PremiseExpr::Kind::atom) {
        out += to_string(expr.fact);
        return;
    }
    const char* op = expr.kind == PremiseExpr::Kind::all ? " AND " : " OR ";
    out += '(';
    for (std::size_t i = 0; i < expr.children.size(); ++i) {
        if (i != 0) out += op;
        render(expr.children[i], out);
    }
    out += ')';
}

} // namespace

std::string to_string(const Fact& fact) {
    std::string out = fact.predicate;
    out += '(';
    for (std::size_t i = 0; i < fact.args.size(); ++i) {
        if (i != 0) out += ", ";
        out += fact.args[i];
    }
    out += ')';
    return out;
}

std::size_t FactHash::operator()(const Fact& fact) const noexcept {
    std::hash<std::string> h;
    std::size_t seed = h(fact.predicate);
    for (const auto& arg : fact.args) hash_combine(seed, h(arg));
    hash_combine(seed, fact.args.size());
    return seed;
}

PremiseExpr PremiseExpr::atom(Fact f) {
    PremiseExpr e;
    e.kind = Kind::atom;
    e.fact = std::move(f);
    return e;
}

PremiseExpr PremiseExpr::all_of(std::vector<PremiseExpr> children) {
    PremiseExpr e;
    e.kind = Kind::all;
    e.children = std::move(children);
    return e;
}

PremiseExpr PremiseExpr::any_of(std::vector<PremiseExpr> children) {
    PremiseExpr e;
    e.kind = Kind::any;
    e.children = std::move(children);
    return e;
}

std::string to_string(const PremiseExpr& expr) {
    std::string out;
    render(expr, out);
    return out;
}

} // namespace mates
