"""Coloring conditions on color multisets, activations, and N(r, L).

A color multiset over ``k`` colors is a tuple of ``k`` repetition counts.
A :class:`ColoringCondition` is a membership predicate on such tuples; it
is total over all sizes, so irregular graphs can be colored too.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import ConditionError

Multiset = tuple[int, ...]

KINDS = ("dominating", "proper", "rainbow", "explicit", "at_least", "projected")


def compositions(size: int, k: int) -> Iterator[Multiset]:
    """All count vectors of length k summing to size (lexicographically descending)."""
    if k == 0:
        if size == 0:
            yield ()
        return
    if k == 1:
        yield (size,)
        return
    for first in range(size, -1, -1):
        for rest in compositions(size - first, k - 1):
            yield (first,) + rest


def multinomial(size: int, counts: Sequence[int]) -> int:
    """Number of maps [size] -> K whose multiset image has these counts."""
    if any(c < 0 for c in counts):
        raise ConditionError(f"negative repetition count in {tuple(counts)}")
    if sum(counts) != size:
        raise ConditionError(f"counts {tuple(counts)} do not sum to {size}")
    out = math.factorial(size)
    for c in counts:
        out //= math.factorial(c)
    return out


@dataclass(frozen=True)
class ColoringCondition:
    """Which color multisets are legal on a neighborhood.

    Use the constructors :meth:`dominating`, :meth:`proper`,
    :meth:`rainbow`, :meth:`at_least`, :meth:`explicit`; :func:`blowup`
    produces the ``projected`` kind.
    """

    k: int
    kind: str
    color: int = 1
    minimum: int = 1
    allowed: frozenset = field(default=frozenset())
    base: ColoringCondition | None = None
    fibers: tuple[int, ...] = ()

    def __post_init__(self):
        if self.k < 0:
            raise ConditionError("color count must be nonnegative")
        if self.kind not in KINDS:
            raise ConditionError(f"unknown condition kind {self.kind!r}")
        if self.kind in ("dominating", "at_least") and not 0 <= self.color < self.k:
            raise ConditionError(f"required color {self.color} not among {self.k} colors")
        for ms in self.allowed:
            if len(ms) != self.k or any(c < 0 for c in ms):
                raise ConditionError(f"explicit multiset {ms} is not over {self.k} colors")

    @classmethod
    def dominating(cls, k: int = 2, color: int = 1) -> ColoringCondition:
        return cls(k, "dominating", color=color, minimum=1)

    @classmethod
    def at_least(cls, k: int, color: int, minimum: int) -> ColoringCondition:
        return cls(k, "at_least", color=color, minimum=minimum)

    @classmethod
    def proper(cls, k: int) -> ColoringCondition:
        return cls(k, "proper")

    @classmethod
    def rainbow(cls, k: int) -> ColoringCondition:
        return cls(k, "rainbow")

    @classmethod
    def explicit(cls, k: int, allowed: Iterable[Sequence[int]]) -> ColoringCondition:
        return cls(k, "explicit", allowed=frozenset(tuple(ms) for ms in allowed))

    def accepts(self, counts: Sequence[int]) -> bool:
        if len(counts) != self.k:
            raise ConditionError(f"multiset {tuple(counts)} is not over {self.k} colors")
        kind = self.kind
        if kind in ("dominating", "at_least"):
            return counts[self.color] >= self.minimum
        if kind == "proper":
            return sum(1 for c in counts if c) >= 2
        if kind == "rainbow":
            return all(c <= 1 for c in counts)
        if kind == "explicit":
            return tuple(counts) in self.allowed
        # projected: fold each fiber of blown-up colors back onto its base color
        folded = []
        pos = 0
        for width in self.fibers:
            folded.append(sum(counts[pos : pos + width]))
            pos += width
        return self.base.accepts(folded)

    __call__ = accepts

    def legal_multisets(self, size: int) -> list[Multiset]:
        return [ms for ms in compositions(size, self.k) if self.accepts(ms)]

    def describe(self) -> str:
        if self.kind in ("dominating", "at_least"):
            return f"{self.kind}(k={self.k}, color={self.color}, min={self.minimum})"
        if self.kind == "projected":
            return f"projected(k={self.k}, fibers={list(self.fibers)}, base={self.base.describe()})"
        if self.kind == "explicit":
            return f"explicit(k={self.k}, {len(self.allowed)} multisets)"
        return f"{self.kind}(k={self.k})"


@dataclass(frozen=True)
class Activation:
    """Positive rational weight per color."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ConditionError(f"activation weights must be positive, got {[str(w) for w in ws]}")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def parse(cls, spec: str | Sequence) -> Activation:
        """From ``"1,3/2"`` or a sequence of ``"p/q"`` strings / numbers."""
        items = spec.split(",") if isinstance(spec, str) else list(spec)
        try:
            return cls(tuple(Fraction(str(x).strip()) for x in items))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConditionError(f"bad activation {spec!r}: {exc}") from None

    @classmethod
    def ones(cls, k: int) -> Activation:
        return cls((Fraction(1),) * k)

    def __len__(self) -> int:
        return len(self.weights)

    def is_integral(self) -> bool:
        return all(w.denominator == 1 for w in self.weights)

    def common_denominator(self) -> int:
        return math.lcm(*(w.denominator for w in self.weights)) if self.weights else 1

    def scaled_integers(self) -> tuple[int, tuple[int, ...]]:
        """(D, integer weights D*lambda) with D the least common denominator."""
        d = self.common_denominator()
        return d, tuple(int(w * d) for w in self.weights)

    def weight_of(self, counts: Sequence[int]) -> Fraction:
        out = Fraction(1)
        for w, c in zip(self.weights, counts):
            out *= w**c
        return out


def legal_function_count(r: int, cond: ColoringCondition) -> int:
    """N(r, L): maps [r] -> K with legal multiset image, summed by multinomials."""
    if r < 0:
        raise ConditionError("r must be nonnegative")
    return sum(multinomial(r, ms) for ms in cond.legal_multisets(r))


def weighted_legal_function_count(r: int, cond: ColoringCondition, lam: Activation) -> Fraction:
    if r < 0:
        raise ConditionError("r must be nonnegative")
    if len(lam) != cond.k:
        raise ConditionError(f"activation has {len(lam)} weights for {cond.k} colors")
    return sum(
        (multinomial(r, ms) * lam.weight_of(ms) for ms in cond.legal_multisets(r)),
        Fraction(0),
    )


def blowup(cond: ColoringCondition, lam: Activation) -> tuple[int, ColoringCondition]:
    """Replace color x by lam(x) copies; a multiset is legal iff its projection is.

    Returns ``(k', L')`` with N(s, L') == N^lam(s, L) for every s.
    """
    if len(lam) != cond.k:
        raise ConditionError(f"activation has {len(lam)} weights for {cond.k} colors")
    if not lam.is_integral():
        raise ConditionError("blow-up needs integer weights; scale the activation first")
    fibers = tuple(int(w) for w in lam.weights)
    k2 = sum(fibers)
    return k2, ColoringCondition(k2, "projected", base=cond, fibers=fibers)


def load_condition(path: str | Path) -> ColoringCondition:
    """Explicit condition from JSON ``{"colors": k, "sizes": {"r": [[c0, ...], ...]}}``."""
    try:
        data = json.loads(Path(path).read_text())
        k = int(data["colors"])
        allowed = []
        for size, vectors in data["sizes"].items():
            for vec in vectors:
                vec = tuple(int(c) for c in vec)
                if sum(vec) != int(size):
                    raise ConditionError(f"count vector {list(vec)} listed under size {size}")
                allowed.append(vec)
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise ConditionError(f"cannot load condition from {path}: {exc}") from None
    return ColoringCondition.explicit(k, allowed)


def load_activation(path: str | Path) -> Activation:
    """Activation from a JSON array of ``"p/q"`` strings."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConditionError(f"cannot load activation from {path}: {exc}") from None
    if not isinstance(data, list):
        raise ConditionError("activation file must hold a JSON array")
    return Activation.parse(data)
