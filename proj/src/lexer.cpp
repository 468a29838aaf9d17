#include "lexer.hpp"

#include <cctype>
#include <optional>

namespace adtree::detail {

std::string_view token_kind_name(TokenKind k) {
    switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::Colon: return "':'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::End: return "end of input";
    }
    return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
    Lexer(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags)
        : text_(text), file_(file), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            if (pos_ >= text_.size()) break;
            const int line = line_;
            const int col = col_;
            const char c = text_[pos_];
            Token tok;
            if (ident_start(c)) {
                tok.kind = TokenKind::Ident;
                while (pos_ < text_.size() && ident_char(text_[pos_])) tok.text += advance();
            } else if (digit(c)) {
                tok.kind = TokenKind::Number;
                while (pos_ < text_.size() && digit(text_[pos_])) tok.text += advance();
                if (pos_ + 1 < text_.size() && text_[pos_] == '.' && digit(text_[pos_ + 1])) {
                    tok.text += advance();
                    while (pos_ < text_.size() && digit(text_[pos_])) tok.text += advance();
                }
            } else if (c == '"') {
                if (!read_string(tok, line, col)) continue;
            } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                tok.kind = TokenKind::Arrow;
                tok.text = "->";
                advance();
                advance();
            } else if (const auto kind = punct(c)) {
                tok.kind = *kind;
                tok.text = std::string(1, advance());
            } else {
                std::string bad(1, advance());
                // swallow the rest of a multi-byte sequence
                while (pos_ < text_.size() && (static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80) {
                    bad += text_[pos_++];
                }
                diags_.push_back({DiagnosticSeverity::Error, {file_, line, col, 1}, "E-LEX",
                                  "unexpected character '" + bad + "'"});
                continue;
            }
            tok.span = {file_, line, col, col_ - col};
            out.push_back(std::move(tok));
        }
        out.push_back({TokenKind::End, {}, {file_, line_, col_, 0}});
        return out;
    }

private:
    static std::optional<TokenKind> punct(char c) {
        switch (c) {
        case '{': return TokenKind::LBrace;
        case '}': return TokenKind::RBrace;
        case '[': return TokenKind::LBracket;
        case ']': return TokenKind::RBracket;
        case '(': return TokenKind::LParen;
        case ')': return TokenKind::RParen;
        case ';': return TokenKind::Semicolon;
        case ',': return TokenKind::Comma;
        case ':': return TokenKind::Colon;
        default: return std::nullopt;
        }
    }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    bool read_string(Token& tok, int line, int col) {
        tok.kind = TokenKind::String;
        advance();  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
            char c = advance();
            if (c == '\\' && pos_ < text_.size()) {
                const char esc = advance();
                switch (esc) {
                case 'n': c = '\n'; break;
                case 't': c = '\t'; break;
                case '"': c = '"'; break;
                case '\\': c = '\\'; break;
                default:
                    diags_.push_back({DiagnosticSeverity::Error, {file_, line_, col_ - 2, 2}, "E-LEX",
                                      std::string("unknown escape '\\") + esc + "'"});
                    c = esc;
                }
            }
            tok.text += c;
        }
        if (pos_ >= text_.size() || text_[pos_] != '"') {
            diags_.push_back({DiagnosticSeverity::Error, {file_, line, col, col_ - col}, "E-LEX", "unterminated string"});
            return false;
        }
        advance();  // closing quote
        return true;
    }

    std::string_view text_;
    const std::string& file_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags) {
    return Lexer(text, file, diags).run();
}

}  // namespace adtree::detail
