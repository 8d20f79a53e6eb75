"""Tokenizer for MiniImp source text."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError

KEYWORDS = frozenset({
    "func", "var", "if", "else", "while", "for", "return", "print",
    "true", "false", "int", "bool", "str",
})

# Longest first so that multi-char operators win.
SYMBOLS = (
    "||", "&&", "==", "!=", "<=", ">=", "+=", "-=", "*=",
    "(", ")", "{", "}", "[", "]", ",", ";", ":",
    "+", "-", "*", "/", "%", "<", ">", "=", "!",
)

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


@dataclass
class Token:
    kind: str  # "ident" | "int" | "string" | "keyword" | "symbol" | "eof"
    text: str
    line: int
    col: int
    end_col: int = 0  # inclusive; tokens never span lines

    def is_kw(self, word: str) -> bool:
        return self.kind == "keyword" and self.text == word

    def is_sym(self, sym: str) -> bool:
        return self.kind == "symbol" and self.text == sym


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, start_line, start_col, start_col + len(word) - 1))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("int", source[i:j], start_line, start_col, start_col + (j - i) - 1))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            buf: list[str] = []
            while True:
                if j >= n or source[j] == "\n":
                    raise ParseError(start_line, start_col, "unterminated string literal")
                c = source[j]
                if c == '"':
                    j += 1
                    break
                if c == "\\":
                    if j + 1 >= n or source[j + 1] not in _ESCAPES:
                        raise ParseError(line, col + (j - i), "bad escape sequence")
                    buf.append(_ESCAPES[source[j + 1]])
                    j += 2
                    continue
                buf.append(c)
                j += 1
            tokens.append(Token("string", "".join(buf), start_line, start_col, start_col + (j - i) - 1))
            col += j - i
            i = j
            continue
        for sym in SYMBOLS:
            if source.startswith(sym, i):
                tokens.append(Token("symbol", sym, start_line, start_col, start_col + len(sym) - 1))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError(line, col, f"unexpected character {ch!r}")
    tokens.append(Token("eof", "", line, col, col))
    return tokens
