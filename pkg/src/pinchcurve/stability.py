"""Subalgebras of truncated algebras stable under Gm or (in characteristic 0) Ga.

Stability under a group scheme is tested with a generic point: the action of
an indeterminate lam (and mu for a second factor) is applied over k(lam) and
the subspace must be preserved there.  For Gm this is the same as being a sum
of weight spaces, which gives the cheaper `method="weights"` check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactalg import (ArtinianAlgebra, Field, Rationals, SubspaceBasis, UnsupportedError,
                       adjoin_generic_parameter, check_guard, echelon_basis, embed,
                       is_subalgebra, rank_over)
from .semigroups import TailSemigroup, contains, enumerate_semigroups

CLASSIFY_GUARD = 20


@dataclass(frozen=True)
class StableSubalgebraRecord:
    ambient: ArtinianAlgebra
    basis: SubspaceBasis
    kind: str
    semigroups: tuple = ()
    tail: int | None = None

    def to_json(self):
        out = {"kind": self.kind, "ambient": self.ambient.to_json(),
               "basis": self.basis.to_json()}
        if self.kind == "GaTail":
            out["tail"] = self.tail
        else:
            out["semigroups"] = [s.to_json() for s in self.semigroups]
        return out


def truncated_algebra(k: Field, *orders, names=("t", "u")) -> ArtinianAlgebra:
    return ArtinianAlgebra(k, tuple((names[i], m) for i, m in enumerate(orders)))


def monomial_subalgebra(k: Field, m: int, s: TailSemigroup) -> StableSubalgebraRecord:
    """k[t^c_0, ..., t^c_p, t^m]/(t^ambient) inside k[t]/(t^m)."""
    alg = truncated_algebra(k, m)
    rows = [alg.monomial(0, i) for i in range(m) if contains(s, i)]
    return StableSubalgebraRecord(alg, echelon_basis(rows, alg), "GmMonomial", (s,))


def local_subalgebra(k: Field, m: int, n: int, s: TailSemigroup,
                     d: TailSemigroup) -> StableSubalgebraRecord:
    """Positive parts of two monomial algebras plus the diagonal k*(1,1)."""
    alg = truncated_algebra(k, m, n)
    rows = [alg.one()]
    rows += [alg.monomial(0, i) for i in range(1, m) if contains(s, i)]
    rows += [alg.monomial(1, j) for j in range(1, n) if contains(d, j)]
    return StableSubalgebraRecord(alg, echelon_basis(rows, alg), "GmLocal", (s, d))


def ga_tail(k: Field, N: int, n1: int) -> StableSubalgebraRecord:
    """span(1, u^n1, ..., u^(N-1)) inside k[u]/(u^N)."""
    alg = truncated_algebra(k, N, names=("u",))
    rows = [alg.one()] + [alg.monomial(0, i) for i in range(n1, N)]
    return StableSubalgebraRecord(alg, echelon_basis(rows, alg), "GaTail", (), n1)


# ---------------------------------------------------------------------------
# Gm

def _check_gm_ambient(alg: ArtinianAlgebra):
    if len(alg.factors) > 2:
        raise UnsupportedError("Gm stability is implemented for at most two factors")
    if any(f.residue is not None for f in alg.factors):
        raise UnsupportedError("Gm stability needs factors with residue field k")


def gm_weights(alg: ArtinianAlgebra) -> list[int]:
    """Weight of each coordinate: i on (t^i, 0) and -j on (0, u^j)."""
    _check_gm_ambient(alg)
    out = []
    for j, f in enumerate(alg.factors):
        out += [i if j == 0 else -i for i in range(f.order)]
    return out


def _gm_generic(v: SubspaceBasis) -> bool:
    alg = v.ambient
    k = alg.base
    F = adjoin_generic_parameter(k)
    params = [F.gen("lam")]
    if len(alg.factors) == 2:
        F = adjoin_generic_parameter(F)
        params = [F.gen("lam"), F.gen("mu")]
    rows = [[embed(F, k, x) for x in r] for r in v.rows]
    images = []
    for r in rows:
        img = []
        for idx, x in enumerate(r):
            j, i, _ = alg.coordinate_label(idx)
            scale = F.pow(params[j], i if j == 0 else -i)
            img.append(F.mul(scale, x))
        images.append(img)
    return rank_over(F, rows + images, alg.dim) == v.rank


def _gm_weight_spaces(v: SubspaceBasis) -> bool:
    alg = v.ambient
    k = alg.base
    weights = gm_weights(alg)
    for r in v.rows:
        for w in set(weights):
            proj = tuple(x if wt == w else k.zero() for x, wt in zip(r, weights))
            if not v.contains(proj):
                return False
    return True


def is_gm_stable(v: SubspaceBasis, method: str = "weights") -> bool:
    """Is the subspace preserved by t -> lam*t (and u -> mu^-1*u)?"""
    _check_gm_ambient(v.ambient)
    if method == "generic":
        return _gm_generic(v)
    if method == "weights":
        return _gm_weight_spaces(v)
    raise ValueError(f"unknown method {method!r}")


def classify_gm_stable(k: Field, m: int) -> list[StableSubalgebraRecord]:
    """Gm-stable subalgebras of k[t]/(t^m): one per semigroup with tail start <= m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    check_guard(m, CLASSIFY_GUARD, "m")
    return [monomial_subalgebra(k, m, s) for s in enumerate_semigroups(m)]


def classify_gm_stable_local(m: int, n: int, k: Field | None = None) -> list[StableSubalgebraRecord]:
    """Local Gm-stable subalgebras of k[t]/(t^m) x k[u]/(u^n)."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    check_guard(max(m, n), CLASSIFY_GUARD, "m")
    k = k or Rationals()
    return [local_subalgebra(k, m, n, s, d)
            for s in enumerate_semigroups(m) for d in enumerate_semigroups(n)]


def is_local_subalgebra(v: SubspaceBasis) -> bool:
    """A subalgebra is local iff its image in the product of residue fields is a field.

    That image is a subalgebra of a product of fields, so it is a field exactly
    when each projection to a single residue field is injective.
    """
    alg = v.ambient
    if not is_subalgebra(alg, v):
        return False
    k = alg.base
    consts = []
    for r in v.rows:
        c = []
        for j, f in enumerate(alg.factors):
            off = alg.offsets[j]
            c.extend(r[off:off + f.residue_degree])
        consts.append(c)
    image_rank = rank_over(k, consts, len(consts[0]) if consts else 0)
    pos = 0
    for f in alg.factors:
        d = f.residue_degree
        proj = [c[pos:pos + d] for c in consts]
        if rank_over(k, proj, d) != image_rank:
            return False
        pos += d
    return True


# ---------------------------------------------------------------------------
# Ga in characteristic zero

def _ga_substitution_images(v: SubspaceBasis):
    alg = v.ambient
    k = alg.base
    F = adjoin_generic_parameter(k)
    a = F.gen("lam")
    N = alg.factors[0].order
    # u / (1 + a u) = u - a u^2 + ... + (-a)^(N-2) u^(N-1)
    phi = [F.zero()] + [F.pow(F.neg(a), i - 1) for i in range(1, N)]

    def mul(x, y):
        out = [F.zero()] * N
        for i, xi in enumerate(x):
            if F.is_zero(xi):
                continue
            for j in range(N - i):
                out[i + j] = F.add(out[i + j], F.mul(xi, y[j]))
        return out

    powers = [[F.one()] + [F.zero()] * (N - 1)]
    for _ in range(1, N):
        powers.append(mul(powers[-1], phi))
    rows = [[embed(F, k, x) for x in r] for r in v.rows]
    images = []
    for r in rows:
        img = [F.zero()] * N
        for i, x in enumerate(r):
            if not F.is_zero(x):
                img = [F.add(s, F.mul(x, y)) for s, y in zip(img, powers[i])]
        images.append(img)
    return F, rows, images


def is_ga_stable_char0(v: SubspaceBasis) -> bool:
    """Is the subspace preserved by u -> u/(1 + a u) over k(a)?"""
    alg = v.ambient
    if alg.base.characteristic != 0:
        raise UnsupportedError("Ga stability in positive characteristic is not classified")
    if len(alg.factors) != 1 or alg.factors[0].residue is not None:
        raise UnsupportedError("Ga stability is implemented for k[u]/(u^N)")
    F, rows, images = _ga_substitution_images(v)
    return rank_over(F, rows + images, alg.dim) == v.rank


def classify_ga_stable_char0(N: int, k: Field | None = None) -> list[StableSubalgebraRecord]:
    """Ga-stable subalgebras of k[u]/(u^N): the tails for n1 = 1..N (n1 = N is k)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    check_guard(N, CLASSIFY_GUARD, "N")
    k = k or Rationals()
    if k.characteristic != 0:
        raise UnsupportedError("Ga stability in positive characteristic is not classified")
    return [ga_tail(k, N, n1) for n1 in range(1, N + 1)]


# ---------------------------------------------------------------------------
# brute-force oracle

def enumerate_subspaces(k: Field, dim: int):
    """Every subspace of k^dim, once each, as echelon row tuples."""
    elems = k.elements()
    zero, one = k.zero(), k.one()
    for r in range(dim + 1):
        for pivots in itertools.combinations(range(dim), r):
            # free positions: right of the pivot, not in a pivot column
            free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, dim)
                    if c not in pivots]
            for values in itertools.product(elems, repeat=len(free)):
                rows = [[zero] * dim for _ in range(r)]
                for i, p in enumerate(pivots):
                    rows[i][p] = one
                for (i, c), x in zip(free, values):
                    rows[i][c] = x
                yield tuple(tuple(row) for row in rows)


def brute_force_stable_subalgebras(alg: ArtinianAlgebra, stable, local: bool = False):
    """All subalgebras of `alg` passing `stable` (and local when asked)."""
    out = []
    for rows in enumerate_subspaces(alg.base, alg.dim):
        v = SubspaceBasis(alg, rows)
        if not v.contains(alg.one()) or not is_subalgebra(alg, v):
            continue
        if local and not is_local_subalgebra(v):
            continue
        if stable(v):
            out.append(v)
    return out
