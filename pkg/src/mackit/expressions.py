"""Parser for word expressions such as ``u{1,2}t{3} - 2 u{1}t{3,4}``.

Chains use the letters ``u`` and ``e``, cochains ``u`` and ``t``, algebra
elements ``v`` (for ṽ) and ``u`` (for ũ).  ``1`` is the void word and
``Gamma`` stands for a chain supplied by the caller (the fundamental class).
"""

from __future__ import annotations

import re
from typing import Callable

from .cells import CHAIN, COCHAIN, CellChain, CellWord, check_word
from .complex import SimplicialComplex
from .errors import InputError, ParseError

DGA = "dga"

_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<int>\d+)\s*\*?|(?P<gamma>Gamma)|(?P<part>[a-z])\{(?P<labels>[0-9,\s]*)\})")
_LETTERS = {CHAIN: ("u", "e"), COCHAIN: ("u", "t"), DGA: ("v", "u")}


def _terms(text: str) -> list[tuple[int, object]]:
    """Split into ``(coefficient, word spec)``; a word spec is 'Gamma' or a list of parts."""
    pos, out = 0, []
    sign, coef, parts, gamma, pending = 1, None, [], False, False
    text = text.strip()
    if not text:
        raise ParseError("empty expression")

    def flush():
        nonlocal sign, coef, parts, gamma, pending
        if not pending:
            return
        c = sign * (coef if coef is not None else 1)
        if gamma:
            out.append((c, "Gamma"))
        elif parts:
            out.append((c, parts))
        elif coef is not None:
            out.append((sign, []) if coef == 1 else (c, []))
        else:
            raise ParseError(f"dangling sign in {text!r}")
        sign, coef, parts, gamma, pending = 1, None, [], False, False

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at column {pos + 1}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("sign"):
            if parts or gamma or coef is not None:
                flush()
            elif pending:
                raise ParseError(f"repeated sign at column {pos}")
            sign = -1 if m.group("sign") == "-" else 1
            pending = True
        elif m.group("int") is not None:
            if parts or gamma or coef is not None:
                raise ParseError(f"misplaced coefficient at column {pos}")
            coef = int(m.group("int"))
            pending = True
        elif m.group("gamma"):
            if parts or gamma:
                raise ParseError("Gamma cannot be combined with word parts")
            gamma, pending = True, True
        else:
            if gamma:
                raise ParseError("Gamma cannot be combined with word parts")
            labels = [x for x in re.split(r"[,\s]+", m.group("labels").strip()) if x]
            parts.append((m.group("part"), [int(x) for x in labels]))
            pending = True
    flush()
    return out


def parse_word_expression(text: str, flavor: str, K: SimplicialComplex | None = None,
                          gamma: Callable[[], CellChain] | None = None):
    """Parse into a :class:`CellChain` (or a DGA element when ``flavor='dga'``)."""
    if flavor not in _LETTERS:
        raise InputError(f"unknown flavor {flavor!r}")
    first, second = _LETTERS[flavor]
    result: dict = {}
    extra = None
    for coef, spec in _terms(text):
        if spec == "Gamma":
            if flavor != CHAIN or gamma is None:
                raise ParseError("Gamma is only available in chain expressions")
            g = gamma() * coef
            extra = g if extra is None else extra + g
            continue
        sigma, tau = [], []
        for letter, labels in spec:
            if letter == first:
                sigma += labels
            elif letter == second:
                tau += labels
            else:
                raise ParseError(f"letter {letter!r} not allowed here (use {first} and {second})")
        if len(set(sigma)) != len(sigma) or len(set(tau)) != len(tau):
            raise ParseError(f"repeated label in {text!r}")
        key = (tuple(sorted(sigma)), tuple(sorted(tau)))
        result[key] = result.get(key, 0) + coef
    try:
        if flavor == DGA:
            from .dga import DgaAlgebra, DgaElement, DgaMonomial

            if K is None:
                raise ParseError("algebra expressions need a complex")
            alg = DgaAlgebra.of(K)
            return DgaElement({DgaMonomial(s, t): c for (s, t), c in result.items()}, alg)
        words = {}
        for (s, t), c in result.items():
            w = CellWord(s, t, flavor)
            if K is not None:
                check_word(w, K)
            words[w] = words.get(w, 0) + c
        chain = CellChain(words, flavor)
    except ParseError:
        raise
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    return chain if extra is None else chain + extra


def parse_dga_expression(text: str, K: SimplicialComplex, J=None):
    """``v{...}u{...}`` terms as an element of ``R*_K(J)``."""
    from .dga import DgaAlgebra, DgaElement

    x = parse_word_expression(text, DGA, K)
    if J is None:
        return x
    try:
        return DgaElement(dict(x.terms), DgaAlgebra.of(K, J))
    except InputError as exc:
        raise ParseError(str(exc)) from exc
