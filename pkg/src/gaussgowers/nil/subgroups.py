"""Connected subgroups H of G x G given by a spanning set of their Lie coordinates.

A vector of R^{2s+2} is laid out as (x, y, z, w): x, z horizontal parts of the
two factors, y, w their vertical parts.  The commutator subgroup [H, H] lives in
the 2-dimensional vertical plane; its dimension gives the type:

    type 1: the whole plane, type 2: a line spanned by (lam1, lam2), type 3: trivial.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import NilGroup

TOL = 1e-9


def _rank(m: np.ndarray) -> int:
    return int(np.linalg.matrix_rank(m, tol=TOL)) if m.size else 0


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: NilGroup
    basis: np.ndarray
    kind: int
    lam: tuple | None = None

    @property
    def label(self) -> str:
        if self.kind == 2:
            return f"type2({self.lam[0]:g},{self.lam[1]:g})"
        return f"type{self.kind}"

    def contains(self, other: "Subgroup") -> bool:
        both = np.vstack([self.basis, other.basis])
        return _rank(both) == _rank(self.basis)


def _split(group: NilGroup, v: np.ndarray):
    s = group.s
    return v[..., :s], v[..., s], v[..., s + 1: 2 * s + 1], v[..., 2 * s + 1]


def subgroup_type(group: NilGroup, basis) -> Subgroup:
    basis = np.atleast_2d(np.asarray(basis, float))
    s = group.s
    if basis.shape[1] != 2 * s + 2:
        raise ValueError(f"basis vectors must have length {2 * s + 2}")
    if _rank(basis) != basis.shape[0]:
        raise ValueError("basis vectors are linearly dependent")
    x, _, z, _ = _split(group, basis)
    # closure: v v' = v + v' + (0, beta(x, x'), 0, beta(z, z')) must stay in V
    extra = []
    for a in range(len(basis)):
        for b in range(len(basis)):
            vec = np.zeros(2 * s + 2)
            vec[s] = group.beta(x[a], x[b])
            vec[2 * s + 1] = group.beta(z[a], z[b])
            extra.append(vec)
    if _rank(np.vstack([basis, np.array(extra)])) != _rank(basis):
        raise ValueError("the span is not closed under the group law (not a subgroup)")
    comm = np.array([[group.form(x[a], x[b]), group.form(z[a], z[b])]
                     for a in range(len(basis)) for b in range(len(basis))])
    r = _rank(comm)
    if r == 2:
        return Subgroup(group, basis, 1)
    if r == 0:
        return Subgroup(group, basis, 3)
    row = comm[np.argmax(np.abs(comm).max(axis=1))]
    lead = row[0] if abs(row[0]) > TOL else row[1]
    lam = row / lead
    lam = tuple(0.0 if abs(v) < TOL else float(v) for v in lam)
    return Subgroup(group, basis, 2, lam)


def theta_lambda(lam, x, y, w, z):
    """Coordinate change sending (x, y, w, z) to a pair of elements of G adapted to the line lam.

    For lam1 != 0: ((x; lam1 z), (y; lam2 z + w)); for lam1 = 0: ((x; w), (y; lam2 z)).
    x and y are horizontal vectors, w and z scalars.
    """
    l1, l2 = lam
    x, y = np.asarray(x, float), np.asarray(y, float)
    if abs(l1) > TOL:
        return np.append(x, l1 * z), np.append(y, l2 * z + w)
    return np.append(x, w), np.append(y, l2 * z)


class ContainmentError(ValueError):
    pass


def good_pair_check(h: Subgroup, hp: Subgroup) -> bool:
    """Whether (H, H') is a good pair, for H' <= H."""
    if not h.contains(hp):
        raise ContainmentError("H' is not contained in H")
    pair = (h.kind, hp.kind)
    if pair in ((1, 1), (2, 2)):
        return True
    if pair == (1, 2):
        return abs(hp.lam[0] - hp.lam[1]) > TOL
    if pair in ((1, 3), (2, 3)):
        return False
    if pair == (3, 3):
        # no nonzero frequency survives on either side
        return True
    # a subgroup cannot have a larger commutator group than its ambient group
    raise ContainmentError(f"type pair {pair} is impossible for H' <= H")
