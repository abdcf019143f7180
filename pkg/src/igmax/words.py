"""Words over named generators, free reduction, and the relation grammar.

A word is a tuple of (generator id, exponent) letters with exponent +1 or -1.
The text grammar used by input files and pretty-printers is whitespace
separated tokens, each ``name`` or ``name^-1``; an equation is written
``lhs = rhs`` and a bare word is a relator (equal to the empty word).  The
token ``1`` denotes the empty word.
"""

from __future__ import annotations

__all__ = [
    "Word",
    "reduce_word",
    "invert_word",
    "word_from_tokens",
    "word_to_tokens",
    "parse_word",
    "parse_relation",
    "format_word",
    "format_relation",
]

Word = tuple[tuple[int, int], ...]

EMPTY: Word = ()


def reduce_word(w: Word) -> Word:
    """Freely reduce: cancel adjacent x x^-1 pairs until none remain."""
    out: list[tuple[int, int]] = []
    for g, e in w:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


class WordSyntaxError(ValueError):
    pass


def parse_word(text: str, gen_ids: dict[str, int]) -> Word:
    """Parse a whitespace separated word against a name -> id mapping."""
    letters: list[tuple[int, int]] = []
    for token in text.split():
        if token == "1":
            continue
        name, exp = token, 1
        if "^" in token:
            name, _, suffix = token.partition("^")
            if suffix != "-1":
                raise WordSyntaxError(
                    f"bad token {token!r}: only ^-1 exponents are allowed"
                )
            exp = -1
        if name not in gen_ids:
            raise WordSyntaxError(f"unknown generator {name!r}")
        letters.append((gen_ids[name], exp))
    return tuple(letters)


def parse_relation(line: str, gen_ids: dict[str, int]) -> tuple[Word, Word]:
    """Parse ``lhs = rhs`` or a bare relator (rhs empty)."""
    if line.count("=") > 1:
        raise WordSyntaxError(f"more than one '=' in relation {line!r}")
    if "=" in line:
        lhs_text, _, rhs_text = line.partition("=")
        return parse_word(lhs_text, gen_ids), parse_word(rhs_text, gen_ids)
    return parse_word(line, gen_ids), EMPTY


def word_from_tokens(tokens: list[str], gen_ids: dict[str, int]) -> Word:
    return parse_word(" ".join(tokens), gen_ids)


def word_to_tokens(w: Word, names: tuple[str, ...] | list[str]) -> list[str]:
    return [names[g] if e == 1 else f"{names[g]}^-1" for g, e in w]


def format_word(w: Word, names: tuple[str, ...] | list[str]) -> str:
    if not w:
        return "1"
    return " ".join(word_to_tokens(w, names))


def format_relation(lhs: Word, rhs: Word, names: tuple[str, ...] | list[str]) -> str:
    return f"{format_word(lhs, names)} = {format_word(rhs, names)}"
