from __future__ import annotations

from dataclasses import dataclass

from ..errors import NameClash, ParseError
from ..fim import Alphabet, Word


@dataclass(frozen=True)
class Presentation:
    """An inverse monoid presentation [X : R]; relations kept as given."""

    alphabet: Alphabet
    relations: tuple  # of (Word, Word)

    @classmethod
    def from_strings(cls, generators, relations=()):
        alphabet = Alphabet(generators.split() if isinstance(generators, str) else generators)
        rels = tuple((alphabet.parse(l), alphabet.parse(r)) for l, r in relations)
        return cls(alphabet, rels)

    def format_relation(self, i: int) -> str:
        l, r = self.relations[i]
        return f"{self.alphabet.format(l)} = {self.alphabet.format(r)}"

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.alphabet.generators)]
        lines += ["relation: " + self.format_relation(i) for i in range(len(self.relations))]
        return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Parse the line-based presentation format.

    ``generators: x y`` must be the first non-comment line, followed by any
    number of ``relation: <word> = <word>`` lines; ``#`` starts a comment.
    """
    alphabet = None
    rels: list[tuple[Word, Word]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        if alphabet is None:
            if key != "generators":
                raise ParseError(f"line {lineno}: first line must declare generators")
            alphabet = Alphabet(rest.split())
        elif key == "relation":
            lhs, eq, rhs = rest.partition("=")
            if not eq or "=" in rhs:
                raise ParseError(f"line {lineno}: relation needs exactly one '='")
            if not lhs.strip() or not rhs.strip():
                raise ParseError(f"line {lineno}: empty side (write 1 for the identity)")
            rels.append((alphabet.parse(lhs), alphabet.parse(rhs)))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None:
        raise ParseError("missing generators line")
    return Presentation(alphabet, tuple(rels))


def adjoin_zero(P: Presentation, zero: str = "z") -> Presentation:
    """[Y : R] -> [Y, z : R, zz = z, yz = z, zy = z (y in Y)]."""
    if zero in P.alphabet.generators:
        raise NameClash(zero)
    alphabet = Alphabet(P.alphabet.generators + (zero,))
    z = alphabet.letter(zero)
    rels = list(P.relations)
    rels.append(((z, z), (z,)))
    for name in P.alphabet.generators:
        y = alphabet.letter(name)
        rels.append(((y, z), (z,)))
        rels.append(((z, y), (z,)))
    return Presentation(alphabet, tuple(rels))
