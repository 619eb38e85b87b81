#include "mates/rule_dsl.hpp"

#include <fstream>
#include <sstream>

namespace mates {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

enum class Tok {
    end,
    newline,
    ident,
    string,
    lparen,
    rparen,
    comma,
    colon,
    kw_symptom,
    kw_disease,
    kw_rule,
    kw_if,
    kw_then,
    kw_and,
    kw_or,
    kw_symptoms,      // SYMPTOMS:
    kw_treatment,     // TREATMENT:
    kw_if_untreated,  // IF_UNTREATED:
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::end: return "end of input";
    case Tok::newline: return "end of line";
    case Tok::ident: return "identifier";
    case Tok::string: return "string";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::kw_symptom: return "SYMPTOM";
    case Tok::kw_disease: return "DISEASE";
    case Tok::kw_rule: return "RULE";
    case Tok::kw_if: return "IF";
    case Tok::kw_then: return "THEN";
    case Tok::kw_and: return "AND";
    case Tok::kw_or: return "OR";
    case Tok::kw_symptoms: return "SYMPTOMS:";
    case Tok::kw_treatment: return "TREATMENT:";
    case Tok::kw_if_untreated: return "IF_UNTREATED:";
    }
    return "token";
}

struct Token {
    Tok kind = Tok::end;
    std::string text;  // identifier or decoded string
    std::size_t line = 1;
    std::size_t column = 1;
};

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// On-demand tokenizer with one token of lookahead.
class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const noexcept { return current_; }

    Token take() {
        Token t = std::move(current_);
        advance();
        return t;
    }

private:
    [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) const {
        throw ParseError(line, column, msg);
    }

    char at(std::size_t i) const noexcept { return i < src_.size() ? src_[i] : '\0'; }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void advance() {
        for (;;) {
            while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r')) bump();
            if (pos_ < src_.size() && src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
                continue;
            }
            break;
        }

        current_ = Token{};
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= src_.size()) {
            current_.kind = Tok::end;
            return;
        }

        const char c = src_[pos_];
        switch (c) {
        case '\n': current_.kind = Tok::newline; bump(); return;
        case '(': current_.kind = Tok::lparen; bump(); return;
        case ')': current_.kind = Tok::rparen; bump(); return;
        case ',': current_.kind = Tok::comma; bump(); return;
        case ':': current_.kind = Tok::colon; bump(); return;
        case '"': lex_string(); return;
        default: break;
        }

        if (is_lower(c)) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && (is_lower(src_[pos_]) || is_digit(src_[pos_]) || src_[pos_] == '_')) bump();
            current_.kind = Tok::ident;
            current_.text.assign(src_.substr(start, pos_ - start));
            return;
        }
        if (is_upper(c)) {
            lex_keyword();
            return;
        }
        fail(line_, column_, std::string("unexpected character '") + describe_char(c) + "'");
    }

    static std::string describe_char(char c) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u >= 0x7f) {
            static const char* hex = "0123456789abcdef";
            return std::string("\\x") + hex[u >> 4] + hex[u & 0xf];
        }
        return std::string(1, c);
    }

    void lex_keyword() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (is_upper(src_[pos_]) || src_[pos_] == '_')) bump();
        const std::string_view word = src_.substr(start, pos_ - start);
        const bool colon = at(pos_) == ':';

        struct Entry { std::string_view word; bool colon; Tok kind; };
        static constexpr Entry table[] = {
            {"SYMPTOM", false, Tok::kw_symptom},     {"DISEASE", false, Tok::kw_disease},
            {"RULE", false, Tok::kw_rule},           {"IF", false, Tok::kw_if},
            {"THEN", false, Tok::kw_then},           {"AND", false, Tok::kw_and},
            {"OR", false, Tok::kw_or},               {"SYMPTOMS", true, Tok::kw_symptoms},
            {"TREATMENT", true, Tok::kw_treatment},  {"IF_UNTREATED", true, Tok::kw_if_untreated},
        };
        for (const auto& e : table) {
            if (e.word != word) continue;
            if (e.colon && !colon)
                fail(line_, column_, "expected ':' after " + std::string(word));
            if (e.colon) bump();
            current_.kind = e.kind;
            return;
        }
        fail(current_.line, current_.column, "unknown keyword '" + std::string(word) + "'");
    }

    void lex_string() {
        const std::size_t line = line_;
        const std::size_t column = column_;
        bump();  // opening quote
        std::string value;
        for (;;) {
            if (pos_ >= src_.size() || src_[pos_] == '\n')
                fail(line, column, "unterminated string");
            const char c = src_[pos_];
            if (c == '"') {
                bump();
                break;
            }
            if (c == '\\') {
                const char next = at(pos_ + 1);
                if (next != '"' && next != '\\')
                    fail(line_, column_, "invalid escape sequence in string");
                bump();
                value += next;
                bump();
                continue;
            }
            value += c;
            bump();
        }
        current_.kind = Tok::string;
        current_.text = std::move(value);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    KnowledgeBase knowledge_base() {
        KnowledgeBase kb;
        for (;;) {
            skip_newlines();
            switch (lex_.peek().kind) {
            case Tok::end: return kb;
            case Tok::kw_symptom: kb.symptoms.push_back(symptom()); break;
            case Tok::kw_disease: kb.diseases.push_back(disease()); break;
            case Tok::kw_rule: kb.rules.push_back(rule()); break;
            default: unexpected("SYMPTOM, DISEASE or RULE");
            }
            end_of_declaration();
        }
    }

    PremiseExpr premise_only() {
        skip_newlines();
        PremiseExpr e = expr(0);
        skip_newlines();
        if (lex_.peek().kind != Tok::end) unexpected("AND, OR or end of input");
        return e;
    }

private:
    [[noreturn]] void unexpected(const std::string& expected) const {
        const Token& t = lex_.peek();
        throw ParseError(t.line, t.column, "expected " + expected + ", found " + describe(t.kind));
    }

    Token expect(Tok kind) {
        if (lex_.peek().kind != kind) unexpected(describe(kind));
        return lex_.take();
    }

    bool accept(Tok kind) {
        if (lex_.peek().kind != kind) return false;
        lex_.take();
        return true;
    }

    void skip_newlines() {
        while (lex_.peek().kind == Tok::newline) lex_.take();
    }

    void end_of_declaration() {
        if (lex_.peek().kind == Tok::end) return;
        expect(Tok::newline);
    }

    Symptom symptom() {
        expect(Tok::kw_symptom);
        Symptom s;
        s.id = SymptomId(expect(Tok::ident).text);
        s.display_name = expect(Tok::string).text;
        return s;
    }

    DiseaseRecord disease() {
        expect(Tok::kw_disease);
        DiseaseRecord d;
        d.id = DiseaseId(expect(Tok::ident).text);
        d.display_name = expect(Tok::string).text;

        skip_newlines();
        expect(Tok::kw_symptoms);
        do {
            d.symptoms.emplace_back(expect(Tok::ident).text);
        } while (accept(Tok::comma));

        skip_newlines();
        expect(Tok::kw_treatment);
        d.care_treatment = expect(Tok::string).text;

        skip_newlines();
        expect(Tok::kw_if_untreated);
        d.if_untreated = expect(Tok::string).text;
        return d;
    }

    Rule rule() {
        expect(Tok::kw_rule);
        Rule r;
        r.name = expect(Tok::ident).text;
        expect(Tok::colon);
        expect(Tok::kw_if);
        r.premise = expr(0);
        expect(Tok::kw_then);
        do {
            r.conclusion.push_back(fact());
        } while (accept(Tok::kw_and));
        return r;
    }

    PremiseExpr expr(std::size_t depth) {
        std::vector<PremiseExpr> terms;
        terms.push_back(term(depth));
        while (accept(Tok::kw_or)) terms.push_back(term(depth));
        if (terms.size() == 1) return std::move(terms.front());
        return PremiseExpr::any_of(std::move(terms));
    }

    PremiseExpr term(std::size_t depth) {
        std::vector<PremiseExpr> atoms;
        atoms.push_back(atom(depth));
        while (accept(Tok::kw_and)) atoms.push_back(atom(depth));
        if (atoms.size() == 1) return std::move(atoms.front());
        return PremiseExpr::all_of(std::move(atoms));
    }

    PremiseExpr atom(std::size_t depth) {
        if (lex_.peek().kind == Tok::lparen) {
            if (depth >= max_premise_depth) {
                const Token& t = lex_.peek();
                throw ParseError(t.line, t.column, "premise nested too deeply");
            }
            lex_.take();
            PremiseExpr inner = expr(depth + 1);
            expect(Tok::rparen);
            return inner;
        }
        if (lex_.peek().kind != Tok::ident) unexpected("fact or '('");
        return PremiseExpr::atom(fact());
    }

    Fact fact() {
        Fact f;
        f.predicate = expect(Tok::ident).text;
        expect(Tok::lparen);
        if (lex_.peek().kind == Tok::ident) {
            do {
                f.args.push_back(expect(Tok::ident).text);
            } while (accept(Tok::comma));
        }
        expect(Tok::rparen);
        return f;
    }

    Lexer lex_;
};

void quote(const std::string& text, std::string& out) {
    out += '"';
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
}

} // namespace

KnowledgeBase parse_kb(std::string_view text) {
    return Parser(text).knowledge_base();
}

PremiseExpr parse_premise(std::string_view text) {
    return Parser(text).premise_only();
}

std::string render_kb(const KnowledgeBase& kb) {
    std::string out;
    for (const auto& s : kb.symptoms) {
        out += "SYMPTOM ";
        out += s.id.str();
        out += ' ';
        quote(s.display_name, out);
        out += '\n';
    }
    for (const auto& d : kb.diseases) {
        out += "DISEASE ";
        out += d.id.str();
        out += ' ';
        quote(d.display_name, out);
        out += " SYMPTOMS: ";
        for (std::size_t i = 0; i < d.symptoms.size(); ++i) {
            if (i != 0) out += ", ";
            out += d.symptoms[i].str();
        }
        out += " TREATMENT: ";
        quote(d.care_treatment, out);
        out += " IF_UNTREATED: ";
        quote(d.if_untreated, out);
        out += '\n';
    }
    for (const auto& r : kb.rules) {
        out += "RULE ";
        out += r.name;
        out += ": IF ";
        out += to_string(r.premise);
        out += " THEN ";
        for (std::size_t i = 0; i < r.conclusion.size(); ++i) {
            if (i != 0) out += " AND ";
            out += to_string(r.conclusion[i]);
        }
        out += '\n';
    }
    return out;
}

KnowledgeBase load_kb_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw KbIoError("cannot open knowledge base file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw KbIoError("failed reading knowledge base file " + path.string());
    return parse_kb(buf.str());
}

} // namespace mates
