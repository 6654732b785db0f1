"""Lie algebras given by sparse structure constants, and subspaces of them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .report import CheckReport, residual_report
from .scalars import is_zero

ZERO = Fraction(0)


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    """Lie algebra on a labelled basis.

    ``structure`` maps ``(i, j)`` with ``i < j`` to ``((k, c), ...)`` meaning
    ``[e_i, e_j] = sum c e_k``; the ``i > j`` entries follow by antisymmetry.
    """

    name: str
    labels: tuple
    structure: Mapping
    form: tuple

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("basis labels must be distinct")
        for (i, j), terms in self.structure.items():
            if not (0 <= i < j < n):
                raise ValueError(f"structure key {(i, j)} must satisfy i < j < dim")
            for k, _ in terms:
                if not 0 <= k < n:
                    raise ValueError(f"structure index {k} out of range")
        if len(self.form) != n or any(len(r) != n for r in self.form):
            raise ValueError("form must be dim x dim")
        if not linalg.is_symmetric(self.form):
            raise ValueError("form must be symmetric")
        if linalg.positive_definite_failure(self.form) is not None:
            raise ValueError("form must be positive definite")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        return self._index[label]

    def zero(self):
        return (ZERO,) * self.dim

    def basis_vector(self, i: int):
        v = [ZERO] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def vector(self, coeffs: Mapping[str, object]):
        """Vector from a ``{label: coefficient}`` mapping."""
        v = [ZERO] * self.dim
        for lab, c in coeffs.items():
            v[self.index(lab)] += Fraction(c)
        return tuple(v)

    @cached_property
    def _table(self):
        # full (i, j) -> {k: c}, including i > j
        t = {}
        for (i, j), terms in self.structure.items():
            d = {}
            for k, c in terms:
                if c != 0:
                    d[k] = d.get(k, ZERO) + c
            d = {k: c for k, c in d.items() if c != 0}
            if d:
                t[(i, j)] = d
                t[(j, i)] = {k: -c for k, c in d.items()}
        return t

    def bracket_basis(self, i: int, j: int) -> dict:
        return self._table.get((i, j), {})

    def _check(self, *vs):
        for v in vs:
            if len(v) != self.dim:
                raise ValueError(f"dimension mismatch: expected {self.dim}, got {len(v)}")

    def bracket(self, x: Sequence, y: Sequence):
        self._check(x, y)
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a != 0]
        ys = [(j, b) for j, b in enumerate(y) if b != 0]
        table = self._table
        for i, a in xs:
            for j, b in ys:
                d = table.get((i, j))
                if d:
                    ab = a * b
                    for k, c in d.items():
                        out[k] += ab * c
        return tuple(out)

    def ad_operator(self, x: Sequence):
        """Matrix (rows = output coordinates) of y -> [x, y]."""
        self._check(x)
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return linalg.transpose(cols)

    def inner(self, x: Sequence, y: Sequence):
        self._check(x, y)
        return linalg.bilinear(self.form, x, y)

    def label_of(self, v: Sequence) -> str:
        """Readable linear combination such as ``1/2*B0_12 - A_12``."""
        from .scalars import fmt

        parts = []
        for lab, c in zip(self.labels, v):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"+{lab}")
            elif c == -1:
                parts.append(f"-{lab}")
            else:
                s = fmt(c)
                parts.append(f"{'' if s.startswith('-') else '+'}{s}*{lab}")
        if not parts:
            return "0"
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


def jacobi_check(alg: LieAlgebraData) -> CheckReport:
    """Jacobi identity on every basis triple i < j < k (exact)."""
    e = [alg.basis_vector(i) for i in range(alg.dim)]

    def gen():
        for i, j, k in combinations(range(alg.dim), 3):
            s = [a + b + c for a, b, c in zip(
                alg.bracket(e[i], alg.bracket(e[j], e[k])),
                alg.bracket(e[j], alg.bracket(e[k], e[i])),
                alg.bracket(e[k], alg.bracket(e[i], e[j])))]
            r = max((abs(x) for x in s), default=ZERO)
            yield (alg.labels[i], alg.labels[j], alg.labels[k]), r

    return residual_report(f"jacobi[{alg.name}]", gen(), None)


def invariance_check(alg: LieAlgebraData) -> CheckReport:
    """ad-invariance <[x,y],z> + <y,[x,z]> = 0 on every basis triple."""
    n = alg.dim
    form = alg.form

    def lower(d, z):
        return sum((c * form[k][z] for k, c in d.items()), ZERO)

    def gen():
        for x in range(n):
            for y in range(n):
                dxy = alg.bracket_basis(x, y)
                for z in range(y, n):
                    r = lower(dxy, z) + lower(alg.bracket_basis(x, z), y)
                    yield (alg.labels[x], alg.labels[y], alg.labels[z]), r

    return residual_report(f"ad_invariance[{alg.name}]", gen(), None)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of a Lie algebra spanned by linearly independent vectors."""

    parent: LieAlgebraData
    basis: tuple

    def __post_init__(self):
        b = tuple(tuple(Fraction(x) for x in v) for v in self.basis)
        object.__setattr__(self, "basis", b)
        for v in b:
            if len(v) != self.parent.dim:
                raise ValueError("basis vector has wrong length")
        if linalg.rank([list(v) for v in b]) != len(b):
            raise ValueError("subspace basis is linearly dependent")

    @classmethod
    def span(cls, parent: LieAlgebraData, vectors) -> "Subspace":
        """Subspace spanned by ``vectors``; dependent vectors are dropped in order."""
        kept = []
        for v in vectors:
            v = tuple(Fraction(x) for x in v)
            if linalg.rank([list(w) for w in kept + [v]]) == len(kept) + 1:
                kept.append(v)
        return cls(parent, tuple(kept))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _gram(self):
        return [[self.parent.inner(u, v) for v in self.basis] for u in self.basis]

    def contains(self, v) -> bool:
        if not any(x != 0 for x in v):
            return True
        if self.dim == 0:
            return False
        return linalg.rank([list(w) for w in self.basis] + [list(v)]) == self.dim

    def coordinates(self, v):
        """Coordinates of ``v`` (which must lie in the subspace) along the basis."""
        rhs = [self.parent.inner(u, v) for u in self.basis]
        c = linalg.solve(self._gram, rhs)
        w = combine_vectors(self.basis, c, self.parent.dim)
        if any(a != b for a, b in zip(w, v)):
            raise ValueError("vector is not in the subspace")
        return tuple(c)

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.parent, self.basis + other.basis)


def combine_vectors(vectors, coeffs, dim):
    out = [ZERO] * dim
    for v, c in zip(vectors, coeffs):
        if c != 0:
            for i, x in enumerate(v):
                if x != 0:
                    out[i] += c * x
    return tuple(out)


def whole(alg: LieAlgebraData) -> Subspace:
    return Subspace(alg, tuple(alg.basis_vector(i) for i in range(alg.dim)))


def zero_subspace(alg: LieAlgebraData) -> Subspace:
    return Subspace(alg, ())


def _kernel_in(domain: Subspace, images):
    """Kernel of the linear map sending domain.basis[i] to images[i]."""
    if domain.dim == 0:
        return zero_subspace(domain.parent)
    mat = linalg.transpose([list(w) for w in images])
    coeff = linalg.nullspace(mat)
    vecs = [combine_vectors(domain.basis, c, domain.parent.dim) for c in coeff]
    return Subspace(domain.parent, tuple(vecs))


def eigenspace_of_ad_squared(alg: LieAlgebraData, x, lam, domain: Subspace) -> Subspace:
    """Kernel of ad(x)^2 - lam on ``domain`` (rational lam only)."""
    if isinstance(lam, float):
        raise ValueError("unsupported: eigenvalue must be rational in exact mode")
    lam = Fraction(lam)
    images = []
    for v in domain.basis:
        w = alg.bracket(x, alg.bracket(x, v))
        images.append(tuple(a - lam * b for a, b in zip(w, v)))
    return _kernel_in(domain, images)


def centralizer(alg: LieAlgebraData, x, domain: Subspace) -> Subspace:
    return _kernel_in(domain, [alg.bracket(x, v) for v in domain.basis])


def orthogonal_complement(s: Subspace, within: Subspace) -> Subspace:
    alg = s.parent
    if within.dim and linalg.det(within._gram) == 0:
        raise ValueError("degenerate Gram matrix on the ambient subspace")
    if within.dim == 0:
        return zero_subspace(alg)
    cons = [[alg.inner(u, w) for w in within.basis] for u in s.basis]
    if not cons:
        return within
    coeff = linalg.nullspace(cons)
    return Subspace(alg, tuple(combine_vectors(within.basis, c, alg.dim) for c in coeff))


def project(v, s: Subspace):
    """Orthogonal projection of ``v`` onto ``s`` with respect to the form."""
    alg = s.parent
    if s.dim == 0:
        return alg.zero()
    if linalg.det(s._gram) == 0:
        raise ValueError("degenerate Gram matrix")
    rhs = [alg.inner(u, v) for u in s.basis]
    c = linalg.solve(s._gram, rhs)
    return combine_vectors(s.basis, c, alg.dim)


def is_zero_vector(v, tol=None) -> bool:
    return all(is_zero(x, tol) for x in v)
