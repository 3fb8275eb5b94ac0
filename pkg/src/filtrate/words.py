"""Words in a free group, monomials in a free monoid, Lyndon words, commutators.

Generators are written x1, x2, ... and indexed from 1.  A group word is a
freely reduced sequence of signed indices (+i for xi, -i for its inverse).
The commutator convention throughout is

    [a, b] = a^-1 b^-1 a b.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

Monomial = tuple[int, ...]


class WordSyntaxError(ValueError):
    """Malformed word expression; position is a 0-based offset into the text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GroupWord:
    """A freely reduced word over x1..xk, stored as a flat signed-index tuple.

    Construction reduces eagerly, so equal group elements compare equal as
    objects.  Instances are immutable and hashable.
    """

    __slots__ = ("alphabet_size", "letters")

    def __init__(self, alphabet_size: int, letters=()):
        if alphabet_size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {alphabet_size}")
        reduced: list[int] = []
        for s in letters:
            if s == 0 or abs(s) > alphabet_size:
                raise ValueError(f"letter {s} outside alphabet of size {alphabet_size}")
            if reduced and reduced[-1] == -s:
                reduced.pop()
            else:
                reduced.append(s)
        object.__setattr__(self, "alphabet_size", alphabet_size)
        object.__setattr__(self, "letters", tuple(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupWord)
            and self.alphabet_size == other.alphabet_size
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash((self.alphabet_size, self.letters))

    def __repr__(self) -> str:
        return f"<GroupWord {format_word(self)} over x1..x{self.alphabet_size}>"

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def _require_same_alphabet(self, other: "GroupWord"):
        if self.alphabet_size != other.alphabet_size:
            raise ValueError(
                f"alphabet mismatch: {self.alphabet_size} vs {other.alphabet_size}"
            )

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        self._require_same_alphabet(other)
        return GroupWord(self.alphabet_size, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.alphabet_size, tuple(-s for s in reversed(self.letters)))

    def __pow__(self, k: int) -> "GroupWord":
        if k == 0:
            return GroupWord(self.alphabet_size)
        base = self.letters if k > 0 else tuple(-s for s in reversed(self.letters))
        return GroupWord(self.alphabet_size, base * abs(k))


def multiply(a: GroupWord, b: GroupWord) -> GroupWord:
    return a * b


def invert(a: GroupWord) -> GroupWord:
    return a.inverse()


def power(a: GroupWord, k: int) -> GroupWord:
    return a ** k


def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    """[a, b] = a^-1 b^-1 a b."""
    a._require_same_alphabet(b)
    inv_a = tuple(-s for s in reversed(a.letters))
    inv_b = tuple(-s for s in reversed(b.letters))
    return GroupWord(a.alphabet_size, inv_a + inv_b + a.letters + b.letters)


def generator(alphabet_size: int, index: int) -> GroupWord:
    return GroupWord(alphabet_size, (index,))


def format_word(w: GroupWord) -> str:
    """Render a word in the expression grammar; inverse of parse_word."""
    if not w.letters:
        return "e"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        run = j - i
        s = letters[i]
        exp = run if s > 0 else -run
        parts.append(f"x{abs(s)}" if exp == 1 else f"x{abs(s)}^{exp}")
        i = j
    return "*".join(parts)


class _WordParser:
    def __init__(self, text: str, alphabet_size: int):
        self.text = text
        self.pos = 0
        self.alphabet_size = alphabet_size

    def error(self, message: str):
        raise WordSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not self.peek().isdigit():
            self.pos = start
            self.error("expected an integer")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def parse_word(self) -> GroupWord:
        w = self.parse_term()
        while True:
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                w = w * self.parse_term()
            else:
                return w

    def parse_term(self) -> GroupWord:
        atom = self.parse_atom()
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            return atom ** self.take_int()
        return atom

    def parse_atom(self) -> GroupWord:
        self.skip_ws()
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            start = self.pos
            if not self.peek().isdigit():
                self.error("expected a generator index after 'x'")
            while self.peek().isdigit():
                self.pos += 1
            index = int(self.text[start:self.pos])
            if not 1 <= index <= self.alphabet_size:
                self.pos = start
                self.error(
                    f"generator x{index} outside alphabet of size {self.alphabet_size}"
                )
            return GroupWord(self.alphabet_size, (index,))
        if ch == "e":
            self.pos += 1
            return GroupWord(self.alphabet_size)
        if ch == "[":
            self.pos += 1
            left = self.parse_word()
            self.skip_ws()
            if self.peek() != ",":
                self.error("expected ',' in commutator")
            self.pos += 1
            right = self.parse_word()
            self.skip_ws()
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            return commutator(left, right)
        if ch == "(":
            self.pos += 1
            w = self.parse_word()
            self.skip_ws()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return w
        self.error("expected a generator, 'e', '[' or '('")


def parse_word(text: str, alphabet_size: int) -> GroupWord:
    """Parse a word expression over x1..x<alphabet_size>.

    Grammar:
        word      := term ("*" term)*
        term      := atom ("^" signed-int)?
        atom      := generator | "e" | "[" word "," word "]" | "(" word ")"
        generator := "x" positive-int

    Whitespace is insignificant.  "e" is the empty word and "[a,b]" is the
    commutator a^-1 b^-1 a b.  Raises WordSyntaxError with the offending
    position on malformed input or out-of-range generator indices.
    """
    parser = _WordParser(text, alphabet_size)
    parser.skip_ws()
    w = parser.parse_word()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("unexpected character")
    return w


def random_word(alphabet_size: int, max_length: int, rng: random.Random) -> GroupWord:
    """A uniformly drawn letter string of length <= max_length, then reduced."""
    length = rng.randint(0, max_length)
    letters = []
    for _ in range(length):
        idx = rng.randint(1, alphabet_size)
        letters.append(idx if rng.random() < 0.5 else -idx)
    return GroupWord(alphabet_size, letters)


def format_monomial(w: Monomial) -> str:
    """Render a monomial as concatenated generators, e.g. (1, 2) -> "x1x2"."""
    return "".join(f"x{i}" for i in w) if w else "e"


def parse_monomial(text: str, alphabet_size: int) -> Monomial:
    """Parse "x1x2..." (or "e") into a tuple of generator indices."""
    text = text.strip()
    if text == "e":
        return ()
    out = []
    pos = 0
    while pos < len(text):
        if text[pos] != "x":
            raise WordSyntaxError("expected 'x'", pos)
        pos += 1
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise WordSyntaxError("expected a generator index after 'x'", start)
        index = int(text[start:pos])
        if not 1 <= index <= alphabet_size:
            raise WordSyntaxError(
                f"generator x{index} outside alphabet of size {alphabet_size}", start
            )
        out.append(index)
    return tuple(out)


def enumerate_monomials(alphabet_size: int, length: int):
    """All monomials of the given length, in lexicographic order."""
    if alphabet_size < 1 or length < 0:
        raise ValueError("need alphabet_size >= 1 and length >= 0")
    return (tuple(t) for t in product(range(1, alphabet_size + 1), repeat=length))


def is_lyndon(w: Monomial) -> bool:
    """Whether w is strictly smaller than every proper rotation of itself."""
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(alphabet_size: int, weight: int):
    """Lyndon words of exactly the given weight, in lexicographic order.

    Duval's algorithm: extend periodically, bump the last letter, discard
    maximal letters from the tail.
    """
    if alphabet_size < 1 or weight < 1:
        raise ValueError("need alphabet_size >= 1 and weight >= 1")
    w = [0]
    while w:
        w[-1] += 1
        m = len(w)
        if m == weight:
            yield tuple(w)
        while len(w) < weight:
            w.append(w[-m])
        while w and w[-1] == alphabet_size:
            w.pop()


@dataclass(frozen=True)
class BasicCommutator:
    """A bracket tree whose leaves are generator indices.

    Either generator is set (leaf) or left and right are set (bracket node).
    """

    gen: int | None = None
    left: "BasicCommutator | None" = None
    right: "BasicCommutator | None" = None

    def __post_init__(self):
        leaf = self.gen is not None
        node = self.left is not None and self.right is not None
        if leaf == node:
            raise ValueError("need exactly one of: generator, (left, right)")

    @property
    def is_leaf(self) -> bool:
        return self.gen is not None

    @property
    def weight(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.weight + self.right.weight

    def leaf_word(self) -> Monomial:
        """The monomial read off the leaves left to right."""
        if self.is_leaf:
            return (self.gen,)
        return self.left.leaf_word() + self.right.leaf_word()

    def __str__(self) -> str:
        if self.is_leaf:
            return f"x{self.gen}"
        return f"[{self.left},{self.right}]"


def basic_commutator(w: Monomial) -> BasicCommutator:
    """Bracket a Lyndon word by splitting at its longest proper Lyndon suffix."""
    if not is_lyndon(w):
        raise ValueError(f"{w!r} is not a Lyndon word")
    if len(w) == 1:
        return BasicCommutator(gen=w[0])
    # the earliest start giving a Lyndon suffix is the longest such suffix,
    # and the left factor of the standard factorization is Lyndon again
    split = next(i for i in range(1, len(w)) if is_lyndon(w[i:]))
    return BasicCommutator(left=basic_commutator(w[:split]), right=basic_commutator(w[split:]))


def realize(bc: BasicCommutator, alphabet_size: int) -> GroupWord:
    """Substitute group commutators for brackets, generators for leaves."""
    if bc.is_leaf:
        if bc.gen > alphabet_size:
            raise ValueError(f"leaf x{bc.gen} outside alphabet of size {alphabet_size}")
        return GroupWord(alphabet_size, (bc.gen,))
    return commutator(realize(bc.left, alphabet_size), realize(bc.right, alphabet_size))
