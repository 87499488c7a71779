"""Shared tokenizer for formula and requirement text."""

from fractions import Fraction

from .errors import ParseError

IDENT = "ident"
NUM = "number"
PUNCT = "punct"
END = "end of input"

_PUNCT_TWO = ("->", "<=", ">=", "!=")
_PUNCT_ONE = "()[],^!&|<>="


class Token:
    __slots__ = ("kind", "text", "value", "line", "col")

    def __init__(self, kind, text, value, line, col):
        self.kind = kind
        self.text = text
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.text)


def _is_ident_start(ch):
    return ch.isalpha() or ch == "_"


def _is_ident(ch):
    return ch.isalnum() or ch == "_"


def tokenize(text):
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        two = text[i:i + 2]
        if two in _PUNCT_TWO:
            tokens.append(Token(PUNCT, two, None, line, start_col))
            i += 2
            col += 2
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] in "./" and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            lexeme = text[i:j]
            value = Fraction(lexeme)
            if value.denominator == 1:
                value = int(value)
            tokens.append(Token(NUM, lexeme, value, line, start_col))
            col += j - i
            i = j
            continue
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident(text[j]):
                j += 1
            lexeme = text[i:j]
            tokens.append(Token(IDENT, lexeme, lexeme, line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT_ONE:
            tokens.append(Token(PUNCT, ch, None, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, start_col)
    tokens.append(Token(END, "", None, line, col))
    return tokens


class TokenStream:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, offset=0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != END:
            self.pos += 1
        return tok

    def at_punct(self, text):
        tok = self.peek()
        return tok.kind == PUNCT and tok.text == text

    def at_word(self, *words):
        tok = self.peek()
        return tok.kind == IDENT and tok.text.lower() in words

    def take_punct(self, text):
        if self.at_punct(text):
            return self.next()
        return None

    def take_word(self, *words):
        if self.at_word(*words):
            return self.next()
        return None

    def expect_punct(self, text):
        tok = self.take_punct(text)
        if tok is None:
            self.fail(expected=("'%s'" % text,))
        return tok

    def expect_word(self, word):
        tok = self.take_word(word)
        if tok is None:
            self.fail(expected=("'%s'" % word,))
        return tok

    def expect_end(self):
        tok = self.peek()
        if tok.kind != END:
            self.fail(expected=(END,))

    def fail(self, message=None, expected=()):
        tok = self.peek()
        got = "end of input" if tok.kind == END else "%r" % tok.text
        raise ParseError(message or "unexpected %s" % got,
                         tok.line, tok.col, expected)
