"""State property systems of finite vector spaces GF(q)^n.

States are the rays, properties the subspaces, and a ray has a subspace as
actual property when it lies inside it.  An optional sesquilinear form adds
the orthogonality [x] _|_ [y] iff form(x, y) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from ..system import StatePropertySystem, StructureError
from .fields import GF, field, left_kernel_vector, normalize, rref

RAY_BUDGET = 400


class SingularFormError(ValueError):
    def __init__(self, kernel: tuple[int, ...]):
        self.kernel = kernel
        super().__init__(f"form is singular; kernel vector {''.join(map(str, kernel))}")


class NonReflexiveFormError(ValueError):
    pass


def label(v: Sequence[int]) -> str:
    return "".join(str(x) for x in v)


@dataclass(frozen=True, eq=False)
class VectorModel:
    q: int
    n: int
    form: tuple[tuple[int, ...], ...] | None = None
    sigma: str = "identity"
    _check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        count = (self.q ** self.n - 1) // (self.q - 1)
        if count > RAY_BUDGET:
            raise ValueError(f"{count} rays exceed the ray budget {RAY_BUDGET}")
        if self.form is not None:
            if len(self.form) != self.n or any(len(r) != self.n for r in self.form):
                raise ValueError("form must be an n x n matrix")
            if self.sigma not in self.F.involutions():
                raise ValueError(f"GF({self.q}) has no involution {self.sigma!r}")
            kernel = left_kernel_vector(self.F, [list(r) for r in self.form])
            if kernel is not None:
                raise SingularFormError(kernel)

    @cached_property
    def F(self) -> GF:
        return field(self.q)

    @cached_property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for v in product(range(self.q), repeat=self.n):
            if any(v) and normalize(self.F, v) == v:
                out.append(v)
        return tuple(out)

    @cached_property
    def _ray_index(self) -> dict[tuple[int, ...], int]:
        return {r: i for i, r in enumerate(self.rays)}

    def ray_of(self, v: Sequence[int]) -> int:
        return self._ray_index[normalize(self.F, tuple(v))]

    def phi(self, x: Sequence[int], y: Sequence[int]) -> int:
        F = self.F
        sig = F.involutions()[self.sigma]
        acc = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                c = self.form[i][j]  # type: ignore[index]
                if c and yj:
                    acc = F.add(acc, F.mul(F.mul(xi, c), sig[yj]))
        return acc

    @cached_property
    def subspaces(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Every subspace as its RREF basis, ordered by dimension then basis."""
        F = self.F
        seen = {(): None}
        frontier = [()]
        while frontier:
            basis = frontier.pop()
            for r in self.rays:
                grown = tuple(rref(F, list(basis) + [r]))
                if grown not in seen:
                    seen[grown] = None
                    frontier.append(grown)
        return tuple(sorted(seen, key=lambda b: (len(b), b)))

    def rays_in(self, basis: tuple[tuple[int, ...], ...]) -> int:
        """Bitmask of the rays spanned by ``basis``."""
        F = self.F
        mask = 0
        for coeffs in product(range(self.q), repeat=len(basis)):
            if not any(coeffs):
                continue
            v = [0] * self.n
            for c, row in zip(coeffs, basis):
                if c:
                    v = [F.add(a, F.mul(c, b)) for a, b in zip(v, row)]
            mask |= 1 << self.ray_of(v)
        return mask

    @cached_property
    def perp_masks(self) -> tuple[int, ...] | None:
        if self.form is None:
            return None
        out = []
        for x in self.rays:
            mask = 0
            for j, y in enumerate(self.rays):
                if self.phi(x, y) == 0:
                    mask |= 1 << j
            out.append(mask)
        if self._check:
            for i, row in enumerate(out):
                for j in range(len(out)):
                    if (row >> j & 1) != (out[j] >> i & 1):
                        raise NonReflexiveFormError(
                            f"form is not reflexive on rays {label(self.rays[i])}, {label(self.rays[j])}"
                        )
        return tuple(out)

    @property
    def null_rays(self) -> list[str]:
        if self.perp_masks is None:
            return []
        return [label(r) for i, r in enumerate(self.rays) if self.perp_masks[i] >> i & 1]


def subspace_name(basis: tuple[tuple[int, ...], ...], n: int) -> str:
    if not basis:
        return "0"
    if len(basis) == n:
        return "I"
    return "<" + ",".join(label(r) for r in basis) + ">"


def from_vector_space(
    q: int,
    n: int,
    form: Sequence[Sequence[int]] | str | None = None,
    sigma: str = "identity",
    name: str = "",
    with_measurements: bool = True,
) -> StatePropertySystem:
    """Rays and subspaces of GF(q)^n, with the orthogonality of ``form`` if given.

    ``form="identity"`` selects the standard dot form.  When the form's
    orthogonal complement is an orthocomplementation of the subspace lattice
    (no null points), the three-valued measurement table it induces is attached
    with every subspace testable.
    """
    if isinstance(form, str):
        if form != "identity":
            raise ValueError(f"unknown named form {form!r}")
        form = [[int(i == j) for j in range(n)] for i in range(n)]
    matrix = None if form is None else tuple(tuple(int(x) for x in row) for row in form)
    model = VectorModel(q, n, matrix, sigma)
    states = [label(r) for r in model.rays]
    bases = model.subspaces
    names = [subspace_name(b, n) for b in bases]
    masks = [model.rays_in(b) for b in bases]
    leq = [(names[i], names[j]) for i in range(len(bases)) for j in range(len(bases))
           if i != j and masks[i] & ~masks[j] == 0]
    actual = {states[r]: [names[i] for i, m in enumerate(masks) if m >> r & 1] for r in range(len(states))}
    system = StatePropertySystem.build(
        states, names, leq, "0", "I", actual, name=name or f"PG({n - 1},{q})"
    )
    if model.perp_masks is None:
        return system
    system = system.replace(orthogonality=model.perp_masks)
    if with_measurements:
        table = _form_measurements(model, masks)
        if table is not None:
            system = system.replace(testable=(1 << len(names)) - 1, mu=table)
    return system


def _form_measurements(model: VectorModel, masks: list[int]) -> dict[tuple[int, int], Fraction] | None:
    """mu = 1 inside W, 0 inside the orthogonal complement of W, 1/2 elsewhere.

    Returns None if W -> W-perp is not a complementation (some null ray).
    """
    perp = model.perp_masks
    assert perp is not None
    index = {m: i for i, m in enumerate(masks)}
    comp = []
    full = (1 << len(model.rays)) - 1
    for m in masks:
        pm = full
        for r in range(len(model.rays)):
            if m >> r & 1:
                pm &= perp[r]
        if pm not in index or pm & m:
            return None
        comp.append(pm)
    table = {}
    for r in range(len(model.rays)):
        bit = 1 << r
        for a, m in enumerate(masks):
            if m & bit:
                table[r, a] = Fraction(1)
            elif comp[a] & bit:
                table[r, a] = Fraction(0)
            else:
                table[r, a] = Fraction(1, 2)
    return table


__all__ = ["VectorModel", "from_vector_space", "SingularFormError", "NonReflexiveFormError", "StructureError"]
