"""Tail numerical semigroups {c_0, ..., c_p} u {r >= m}.

A semigroup is stored as the pair (m, c): m is the tail start and c the
sporadic elements below it.  N itself is (0, ()).  The value m = 1 never
occurs, and c always starts with 0 once m >= 2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactalg import check_guard

ENUMERATE_GUARD = 20


class NotASemigroupError(ValueError):
    """The given set is not closed under addition (or misses 0)."""


@dataclass(frozen=True, order=True)
class TailSemigroup:
    m: int
    c: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if not validate(self.m, self.c):
            raise NotASemigroupError(f"({self.m}, {self.c}) is not a canonical tail semigroup")

    def __contains__(self, r: int) -> bool:
        return contains(self, r)

    def elements_below(self, bound: int) -> list[int]:
        return [r for r in range(bound) if contains(self, r)]

    @property
    def positive_sporadic(self) -> tuple:
        return tuple(x for x in self.c if x > 0)

    def to_json(self):
        return {"m": self.m, "c": list(self.c)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["m"]), tuple(obj["c"]))

    def render(self) -> str:
        if self.m == 0:
            return "{r≥0}"
        return "{" + ",".join(map(str, self.c)) + "} ∪ {r≥" + str(self.m) + "}"

    def __str__(self):
        return self.render()


def validate(m: int, c) -> bool:
    """True iff (m, c) is the canonical description of a tail semigroup."""
    c = tuple(c)
    if m < 0 or any(x < 0 for x in c):
        return False
    if list(c) != sorted(set(c)):
        return False
    if m == 0:
        return not c
    if not c or c[0] != 0 or c[-1] >= m - 1:
        return False
    members = set(c)
    for x in c:
        for y in c:
            s = x + y
            if s < m and s not in members:
                return False
    return True


def contains(s: TailSemigroup, r: int) -> bool:
    if r < 0:
        raise ValueError("semigroup membership is only defined for r >= 0")
    return r >= s.m or r in s.c


def canonicalize(below, bound: int) -> TailSemigroup:
    """Canonical (m, c) of the set `below` (elements < bound) union {r >= bound}."""
    members = {int(x) for x in below if 0 <= x < bound}
    if bound > 0 and 0 not in members:
        raise NotASemigroupError("0 must belong to the semigroup")
    contains_ = lambda r: r >= bound or r in members
    for x in members:
        for y in members:
            if not contains_(x + y):
                raise NotASemigroupError(f"{x} + {y} = {x + y} is missing")
    m = bound
    while m > 0 and contains_(m - 1):
        m -= 1
    if m == 0:
        return TailSemigroup(0, ())
    return TailSemigroup(m, tuple(sorted(r for r in members if r < m)))


def enumerate_semigroups(m_max: int) -> list[TailSemigroup]:
    """All tail semigroups with m <= m_max in lexicographic (m, c) order."""
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    check_guard(m_max, ENUMERATE_GUARD, "m_max")
    out = [TailSemigroup(0, ())]
    for m in range(2, m_max + 1):
        middle = range(1, m - 1)
        found = []
        for size in range(len(middle) + 1):
            for extra in itertools.combinations(middle, size):
                c = (0,) + extra
                if validate(m, c):
                    found.append(TailSemigroup(m, c))
        out.extend(sorted(found))
    return out


# the public name from the module map
enumerate = enumerate_semigroups

NATURALS = TailSemigroup(0, ())


def truncated_exponents(s: TailSemigroup, ambient: int) -> list[int]:
    """Exponents i < ambient lying in s."""
    return [i for i in range(ambient) if contains(s, i)]


def from_exponents(exps, ambient: int) -> TailSemigroup:
    """Semigroup whose truncation at `ambient` is `exps` (tail start <= ambient)."""
    return canonicalize(exps, ambient)
