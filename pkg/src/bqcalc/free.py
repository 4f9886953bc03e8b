"""Elements of the free algebra k<u, v, w>: words stored verbatim, no rewriting."""
from __future__ import annotations

from typing import Iterable, Mapping

from .scalars import Field, Scalar


class FreeElement:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[tuple, object] | None = None):
        self.field = field
        clean: dict[tuple, Scalar] = {}
        for word, c in (terms or {}).items():
            c = field(c) if not isinstance(c, Scalar) else c
            if c:
                word = tuple(word)
                prev = clean.get(word)
                c = c if prev is None else prev + c
                if c:
                    clean[word] = c
                else:
                    clean.pop(word, None)
        self.terms = clean

    @classmethod
    def word(cls, field: Field, letters: Iterable[str] | str, coeff=1) -> "FreeElement":
        return cls(field, {tuple(letters): coeff})

    @classmethod
    def power(cls, field: Field, letter: str, n: int, coeff=1) -> "FreeElement":
        return cls(field, {(letter,) * n: coeff})

    def __add__(self, other: "FreeElement") -> "FreeElement":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return FreeElement(self.field, terms)

    def __neg__(self) -> "FreeElement":
        return FreeElement(self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            out: dict[tuple, Scalar] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out[w] + c1 * c2 if w in out else c1 * c2
            return FreeElement(self.field, out)
        c = self.field(other) if not isinstance(other, Scalar) else other
        return FreeElement(self.field, {w: c * v for w, v in self.terms.items()})

    def __rmul__(self, other):
        c = self.field(other) if not isinstance(other, Scalar) else other
        return FreeElement(self.field, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lengths(self) -> list[int]:
        return sorted({len(w) for w in self.terms})

    def homogeneous_part(self, n: int) -> "FreeElement":
        return FreeElement(self.field, {w: c for w, c in self.terms.items() if len(w) == n})

    def pieces(self) -> dict[int, "FreeElement"]:
        return {n: self.homogeneous_part(n) for n in self.lengths()}

    def substitute(self, images: Mapping[str, "FreeElement"]) -> "FreeElement":
        """Letter-wise substitution inside the free algebra."""
        out = FreeElement(self.field)
        for w, c in self.terms.items():
            acc = FreeElement(self.field, {(): c})
            for letter in w:
                acc = acc * images[letter]
            out = out + acc
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "*".join(w) if w else ""
            cs = str(c)
            if " " in cs.strip():
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
