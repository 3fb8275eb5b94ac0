"""Truncated power series in non-commuting variables and the Magnus expansion.

A series lives in R<<x1..xk>> with all terms of degree > cap discarded.
The expansion sends xi to 1 + xi and xi^-1 to the geometric series
(1 + xi)^-1 = 1 - xi + xi^2 - ..., truncated at the cap.
"""

from __future__ import annotations

from functools import lru_cache

from .coeff import RingSpec, ZZ, is_unit, reduce as ring_reduce
from .words import GroupWord, Monomial, format_monomial


class CapExceededError(ValueError):
    """A coefficient beyond the degree cap was requested; it is unknown, not zero."""


class TruncSeries:
    """Sparse truncated series: a dict from monomials to nonzero ring elements.

    Instances are canonical (coefficients reduced into the ring, zeros never
    stored) and treated as immutable.  Binary operations require matching
    ring, alphabet and cap.
    """

    __slots__ = ("ring", "alphabet_size", "cap", "coeffs")

    def __init__(self, ring: RingSpec, alphabet_size: int, cap: int, coeffs=None):
        if alphabet_size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {alphabet_size}")
        if cap < 1:
            raise ValueError(f"degree cap must be >= 1, got {cap}")
        clean: dict[Monomial, int] = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if len(w) > cap:
                raise ValueError(f"monomial {w} exceeds degree cap {cap}")
            if any(not 1 <= i <= alphabet_size for i in w):
                raise ValueError(f"monomial {w} outside alphabet of size {alphabet_size}")
            c = ring_reduce(c, ring)
            if c:
                clean[w] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "alphabet_size", alphabet_size)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def zero(cls, ring: RingSpec, alphabet_size: int, cap: int) -> "TruncSeries":
        return cls(ring, alphabet_size, cap)

    @classmethod
    def one(cls, ring: RingSpec, alphabet_size: int, cap: int) -> "TruncSeries":
        return cls(ring, alphabet_size, cap, {(): 1})

    @classmethod
    def gen(cls, ring: RingSpec, alphabet_size: int, cap: int, index: int) -> "TruncSeries":
        return cls(ring, alphabet_size, cap, {(index,): 1})

    @property
    def constant_term(self) -> int:
        return self.coeffs.get((), 0)

    def _require_compatible(self, other: "TruncSeries"):
        if (
            self.ring != other.ring
            or self.alphabet_size != other.alphabet_size
            or self.cap != other.cap
        ):
            raise ValueError("mismatched ring, alphabet or cap")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.ring == other.ring
            and self.alphabet_size == other.alphabet_size
            and self.cap == other.cap
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.alphabet_size, self.cap, frozenset(self.coeffs.items())))

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._require_compatible(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return TruncSeries(self.ring, self.alphabet_size, self.cap, out)

    def __neg__(self) -> "TruncSeries":
        return self.scale(-1)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, c: int) -> "TruncSeries":
        return TruncSeries(
            self.ring, self.alphabet_size, self.cap,
            {w: c * a for w, a in self.coeffs.items()},
        )

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        """Concatenation product; terms pushed past the cap are dropped."""
        self._require_compatible(other)
        cap = self.cap
        out: dict[Monomial, int] = {}
        for u, a in self.coeffs.items():
            room = cap - len(u)
            for v, b in other.coeffs.items():
                if len(v) <= room:
                    w = u + v
                    out[w] = out.get(w, 0) + a * b
        return TruncSeries(self.ring, self.alphabet_size, cap, out)

    def degree_slice(self, d: int) -> dict[Monomial, int]:
        """The coefficients in degree exactly d, as a fresh dict."""
        return {w: c for w, c in self.coeffs.items() if len(w) == d}

    def sorted_terms(self):
        """Terms in (length, lex) order."""
        return sorted(self.coeffs.items(), key=lambda item: (len(item[0]), item[0]))

    def __repr__(self) -> str:
        terms = self.sorted_terms()
        if not terms:
            body = "0"
        else:
            body = " + ".join(f"{c}*{format_monomial(w)}" for w, c in terms)
        return f"<TruncSeries {body} over {self.ring}, cap {self.cap}>"


def coefficient(series: TruncSeries, w: Monomial) -> int:
    """The coefficient at w; degrees beyond the cap raise, never silently 0."""
    w = tuple(w)
    if len(w) > series.cap:
        raise CapExceededError(
            f"degree {len(w)} exceeds cap {series.cap}; coefficient is unknown"
        )
    for c in w:
        if not 1 <= c <= series.alphabet_size:
            raise ValueError(
                f"monomial {w} uses letter {c} outside x1..x{series.alphabet_size}"
            )
    return series.coeffs.get(w, 0)


def inverse(series: TruncSeries) -> "TruncSeries":
    """Multiplicative inverse of a series with unit constant term.

    Writes the input as c*(1 - beta) with beta of zero constant term, then
    sums the geometric series 1 + beta + beta^2 + ... to the cap by Horner.
    """
    c0 = series.constant_term
    ring = series.ring
    if not is_unit(c0, ring):
        raise ValueError(f"constant term {c0} is not a unit in {ring}")
    cinv = c0 if ring.modulus == 0 else pow(c0, -1, ring.modulus)
    one = TruncSeries.one(ring, series.alphabet_size, series.cap)
    beta = one - series.scale(cinv)
    acc = one
    for _ in range(series.cap):
        acc = one + beta * acc
    return acc.scale(cinv)


@lru_cache(maxsize=None)
def _letter_series(modulus: int, alphabet_size: int, cap: int, signed: int) -> TruncSeries:
    ring = RingSpec(modulus)
    base = TruncSeries.one(ring, alphabet_size, cap) + TruncSeries.gen(ring, alphabet_size, cap, abs(signed))
    return base if signed > 0 else inverse(base)


def magnus(g: GroupWord, ring: RingSpec, cap: int) -> TruncSeries:
    """The truncated Magnus expansion of a group word.

    Multiplies out 1 + xi or its cached inverse per letter, left to right.
    """
    acc = TruncSeries.one(ring, g.alphabet_size, cap)
    for s in g.letters:
        acc = acc * _letter_series(ring.modulus, g.alphabet_size, cap, s)
    return acc


def series_json(series: TruncSeries) -> dict:
    """JSON-ready form: terms in (length, lex) order, coefficients as strings."""
    return {
        "ring": str(series.ring),
        "cap": series.cap,
        "terms": [
            {"word": format_monomial(w), "coeff": str(c)}
            for w, c in series.sorted_terms()
        ],
    }
