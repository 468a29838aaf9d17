#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adtree/diagnostic.hpp"

namespace adtree::detail {

enum class TokenKind {
    Ident,
    Number,
    String,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semicolon,
    Comma,
    Colon,
    Arrow,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // identifier/number spelling, or decoded string contents
    SourceSpan span;
};

std::string_view token_kind_name(TokenKind k);

/// Splits `text` into tokens. Bad characters and unterminated strings are
/// reported as E-LEX and skipped; the final token is always End.
std::vector<Token> lex(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags);

}  // namespace adtree::detail
