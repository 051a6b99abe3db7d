"""
TPTP tokenizer.
"""
# builtins
from dataclasses import dataclass
import re
from typing import List


# longest first
PUNCTUATION = [
    '<=>', '<~>', '=>', '<=', '~|', '~&', '!=', '!!', '??', ':=',
    '(', ')', '[', ']', ',', '.', ':', '@', '^', '!', '?', '~', '&', '|', '=', '>', '*', '+',
]

TOKEN_PATTERN = re.compile(r"""
    (?P<space>\s+)
  | (?P<line_comment>%[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<single_quoted>'(?:[^'\\]|\\.)*')
  | (?P<distinct>"(?:[^"\\]|\\.)*")
  | (?P<dollar_word>\$\$?[a-zA-Z_][a-zA-Z0-9_]*)
  | (?P<upper_word>[A-Z][a-zA-Z0-9_]*)
  | (?P<lower_word>[a-z][a-zA-Z0-9_]*)
  | (?P<number>[0-9]+)
""", re.VERBOSE | re.DOTALL)


LOWER_WORD = re.compile(r"^[a-z][a-zA-Z0-9_]*$")
UPPER_WORD = re.compile(r"^[A-Z][a-zA-Z0-9_]*$")


def quote_atom(name: str) -> str:
    if LOWER_WORD.match(name) or name.startswith('$'):
        return name
    escaped: str = name.replace('\\', '\\\\').replace("'", "\\'")
    return f"'{escaped}'"


class TptpSyntaxError(Exception):
    '''
    Raised for malformed TPTP input; carries the 1-based line and column.
    '''
    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line: int = line
        self.column: int = column
        super().__init__(f"{message} (line {line}, column {column})")


@dataclass(frozen=True)
class Token:
    kind: str  # lower_word, upper_word, dollar_word, single_quoted, number, punct, eof
    value: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    '''
    Split TPTP text into tokens, dropping whitespace and comments.
    Raises:
        TptpSyntaxError: on a character that starts no token.
    '''
    tokens: List[Token] = []
    position: int = 0
    line: int = 1
    line_start: int = 0
    while position < len(text):
        column: int = position - line_start + 1
        match = TOKEN_PATTERN.match(text, position)
        if match:
            kind: str = match.lastgroup
            value: str = match.group(kind)
            if kind not in ('space', 'line_comment', 'block_comment'):
                if kind == 'single_quoted':
                    value = value[1:-1].replace("\\'", "'").replace("\\\\", "\\")
                    kind = 'lower_word'
                tokens.append(Token(kind, value, line, column))
        else:
            for punct in PUNCTUATION:
                if text.startswith(punct, position):
                    tokens.append(Token('punct', punct, line, column))
                    value = punct
                    break
            else:
                raise TptpSyntaxError(f"unexpected character {text[position]!r}", line, column)
        newlines: int = value.count('\n')
        if newlines:
            line += newlines
            line_start = position + value.rindex('\n') + 1
        position += len(value) if not match else match.end() - position
    tokens.append(Token('eof', '', line, position - line_start + 1))
    return tokens


def status_header(text: str) -> str:
    '''
    The SZS status recorded in a `% Status : <X>` header comment, or ''.
    '''
    match = re.search(r"^%\s*Status\s*:\s*(\w+)", text, re.MULTILINE)
    return match.group(1) if match else ''
