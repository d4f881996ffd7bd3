"""Batched enumeration of finite artinian algebras.

The exact multiplication of exactalg is used once to tabulate structure
constants over the prime field; after that whole element sets are multiplied
as integer arrays.  This only speeds up enumeration, every number it produces
is an exact residue mod p.
"""
from __future__ import annotations

import itertools

import numpy as np

from .exactalg import (DEFAULT_GUARD, ArtinianAlgebra, PrimeField, SimpleExtension,
                       SubspaceBasis, UnsupportedError, check_guard,
                       invariant_factors_from_counts, nullspace)


def _prime_coordinates(k):
    """(p, r, flatten, unflatten) for a finite base field of size p^r."""
    if isinstance(k, PrimeField):
        return k.p, 1, (lambda a: (a,)), (lambda v: int(v[0]))
    if isinstance(k, SimpleExtension) and isinstance(k.base, PrimeField):
        return (k.base.p, k.degree, (lambda a: tuple(a)),
                (lambda v: tuple(int(x) for x in v)))
    raise UnsupportedError(f"cannot tabulate an algebra over {k!r}")


class FiniteAlgebraTable:
    """An algebra over a finite field viewed as F_p^N with a structure tensor."""

    def __init__(self, alg: ArtinianAlgebra, limit: int | None = None):
        self.alg = alg
        k = alg.base
        self.p, self.r, self._flat, self._unflat = _prime_coordinates(k)
        self.n = alg.dim * self.r
        check_guard(self.p ** self.n, limit or DEFAULT_GUARD, "number of algebra elements")
        basis = []
        for i in range(alg.dim):
            for s in range(self.r):
                if self.r == 1:
                    c = k.one()
                else:
                    c = tuple(1 if t == s else 0 for t in range(self.r))
                v = list(alg.zero())
                v[i] = c
                basis.append(tuple(v))
        self._basis = basis
        T = np.zeros((self.n, self.n, self.n), dtype=np.int64)
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                T[i, j] = self.flatten(alg.multiply(a, b))
        self.T = T.reshape(self.n, self.n * self.n)
        self.one = np.array(self.flatten(alg.one()), dtype=np.int64)
        self._weights = np.array([self.p ** i for i in range(self.n)], dtype=np.int64)

    def flatten(self, a):
        return [x for c in a for x in self._flat(c)]

    def unflatten(self, v):
        r = self.r
        return tuple(self._unflat(v[i * r:(i + 1) * r]) for i in range(len(v) // r))

    def to_tuples(self, arr):
        return [self.unflatten([int(x) for x in row]) for row in arr]

    def array(self, elements):
        return np.array([self.flatten(a) for a in elements], dtype=np.int64).reshape(-1, self.n)

    def all_elements(self):
        grid = np.array(list(itertools.product(range(self.p), repeat=self.n)), dtype=np.int64)
        return grid.reshape(-1, self.n)

    def codes(self, arr):
        return arr @ self._weights

    def mul(self, A, B):
        """Row-wise products of two arrays of elements."""
        M = (A @ self.T).reshape(len(A), self.n, self.n)
        return np.einsum("nj,njk->nk", B, M) % self.p

    def power(self, A, e: int):
        result = np.tile(self.one, (len(A), 1))
        base = A.copy()
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def unit_mask(self, A):
        """Invertible iff the constant residue coefficient of every factor is nonzero."""
        mask = np.ones(len(A), dtype=bool)
        for j, f in enumerate(self.alg.factors):
            off = self.alg.offsets[j] * self.r
            width = f.residue_degree * self.r
            mask &= A[:, off:off + width].any(axis=1)
        return mask

    def units(self):
        A = self.all_elements()
        return A[self.unit_mask(A)]

    def subspace_mask(self, A, sub: SubspaceBasis):
        """Membership of each row in an F_q-subspace, via F_p parity checks."""
        k = self.alg.base
        gens = []
        for row in sub.rows:
            for s in range(self.r):
                c = k.one() if self.r == 1 else tuple(1 if t == s else 0 for t in range(self.r))
                gens.append(self.flatten(tuple(k.mul(c, x) for x in row)))
        if not gens:
            return ~A.any(axis=1)
        Fp = PrimeField(self.p)
        # parity checks: vectors h with h . g = 0 for every generator g
        checks = nullspace(Fp, gens, self.n)
        if not checks:
            return np.ones(len(A), dtype=bool)
        H = np.array(checks, dtype=np.int64)
        return ~((A @ H.T) % self.p).any(axis=1)

    def count_killed(self, A, n: int, subgroup_codes=None) -> int:
        """#{x in A : x^n = 1}, or #{x : x^n in subgroup} when codes are given."""
        P = self.power(A, n)
        if subgroup_codes is None:
            return int((P == self.one).all(axis=1).sum())
        return int(np.isin(self.codes(P), subgroup_codes).sum())

    def invariant_factors(self, A, subgroup=None) -> tuple:
        """Invariant factors of the group A, or of A / subgroup."""
        if subgroup is None:
            return invariant_factors_from_counts(len(A), lambda n: self.count_killed(A, n))
        codes = np.unique(self.codes(subgroup))
        order = len(A) // len(codes)
        return invariant_factors_from_counts(
            order, lambda n: self.count_killed(A, n, codes) // len(codes))

    def coset_representatives(self, A, subgroup):
        """Smallest-code representative of each coset of subgroup in A."""
        codes = self.codes(A)
        order = np.argsort(codes)
        seen = np.zeros(len(A), dtype=bool)
        index = {int(c): i for i, c in enumerate(codes)}
        reps = []
        for i in order:
            if seen[i]:
                continue
            reps.append(A[i])
            coset = self.mul(np.tile(A[i], (len(subgroup), 1)), subgroup)
            for c in self.codes(coset):
                seen[index[int(c)]] = True
        return np.array(reps, dtype=np.int64).reshape(-1, self.n)
