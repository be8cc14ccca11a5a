"""Built-in worked examples: each pairs a computed value with an independent expectation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .cobordism import closed_invariant, glue, handlebody, handlebody_double, solid_torus, wall_cylinder
from .groups import BiSet, FiniteGroup, enumerate_homs, make_group, surface_relator
from .kitaev import ground_space_dim
from .reps import GroupoidRep, MatrixRep
from .surface import excitation, genus_surface, separating_surface, sphere, torus, z_surface

__all__ = ["ExampleResult", "hom_class_count", "free_class_count", "vacuum_covector", "run_examples"]


@dataclass
class ExampleResult:
    topic: str
    name: str
    expected: Any
    computed: Any
    passed: bool

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.topic}: {self.name}: expected {self.expected}, computed {self.computed}"


def hom_class_count(G: FiniteGroup, rank: int, relators) -> int:
    """Number of conjugation classes of tuples satisfying the relators, by canonical forms."""
    if rank == 0:
        return 1
    homs = np.array(enumerate_homs(rank, relators, G), dtype=np.int64).reshape(-1, rank)
    radix = G.order ** np.arange(rank - 1, -1, -1)
    canon = np.full(len(homs), np.iinfo(np.int64).max)
    for g in range(G.order):
        canon = np.minimum(canon, G.conjugate(g, homs) @ radix)
    return len(np.unique(canon))


def free_class_count(G: FiniteGroup, rank: int) -> int:
    """Orbits of simultaneous conjugation on G^rank, by Burnside: (1/|G|) Σ_g |C(g)|^rank."""
    total = sum(Fraction(len(G.centralizer(g)) ** rank) for g in range(G.order))
    value = total / G.order
    assert value.denominator == 1
    return int(value)


def vacuum_covector(labels: list[dict[str, str]], G: FiniteGroup, cls: str) -> list[float]:
    """δ_cls(m1·m2) read off the boundary labels of the solid torus basis."""
    target = G.element(cls)
    return [1.0 if int(G.multiply(G.element(l["m1"]), G.element(l["m2"]))) == target else 0.0 for l in labels]


def _row(c) -> list[float]:
    M = c.matrix()
    if np.max(np.abs(M.imag), initial=0.0) > 1e-8:
        raise ValueError("solid torus covector has an imaginary part")
    return [round(float(x), 9) + 0.0 for x in M.real.ravel()]


def _catalogue() -> list[tuple[str, str, Callable[[], tuple[Any, Any]], Callable[[Any, Any], bool]]]:
    Z2, Z3, S3 = make_group("cyclic", 2), make_group("cyclic", 3), make_group("symmetric", 3)
    T2 = BiSet.transparent(Z2)
    exact = lambda e, c: e == c  # noqa: E731
    close = lambda e, c: len(e) == len(c) and all(abs(a - b) < 1e-8 for a, b in zip(e, c))  # noqa: E731
    ground = "Ground state of the quantum double model"
    items = [
        (ground, "torus, Z2", lambda: (hom_class_count(Z2, 2, [surface_relator(1)]), z_surface(torus(Z2)).dim), exact),
        (ground, "torus, S3", lambda: (hom_class_count(S3, 2, [surface_relator(1)]), z_surface(torus(S3)).dim), exact),
        (ground, "genus 2, Z2",
         lambda: (hom_class_count(Z2, 4, [surface_relator(2)]), z_surface(genus_surface(Z2, 2)).dim), exact),
        (ground, "lattice oracle, torus S3", lambda: (z_surface(torus(S3)).dim, ground_space_dim(torus(S3)).dim), exact),
        (ground, "lattice oracle, sphere S3", lambda: (1, ground_space_dim(sphere(S3)).dim), exact),
    ]
    exc = "Excitations in quantum double models"
    x = excitation("x")
    items += [
        (exc, "sphere, two Z2 fluxes", lambda: (1, z_surface(sphere(Z2, (x, x))).dim), exact),
        (exc, "sphere, one Z2 flux", lambda: (0, z_surface(sphere(Z2, (x, "flat"))).dim), exact),
    ]
    wall = "Domain walls and excitations on domain walls"
    items += [
        (wall, "transparent separating wall, S3, genus 1+1",
         lambda: (hom_class_count(S3, 4, [surface_relator(2)]),
                  z_surface(separating_surface(S3, S3, BiSet.transparent(S3), 1, 1)).dim), exact),
        (wall, "impermeable separating wall, Z2|Z3, genus 1+1",
         lambda: (free_class_count(Z2, 2) * free_class_count(Z3, 2),
                  z_surface(separating_surface(Z2, Z3, BiSet.trivial(Z2, Z3), 1, 1)).dim), exact),
    ]
    closed = "Closed 3-manifolds with defects"
    items += [
        (closed, "handlebody double g=1, transparent S3",
         lambda: (Fraction(1), handlebody_double(1, S3, S3, BiSet.transparent(S3)).enumerated), exact),
        (closed, "handlebody double g=2, transparent Z2",
         lambda: (Fraction(len(enumerate_homs(4, [[1, -3], [2, -4]], Z2)), 2),
                  handlebody_double(2, Z2, Z2, T2).enumerated), exact),
        (closed, "handlebody double g=2, impermeable Z2|Z3",
         lambda: (Fraction(2 ** 1 * 3 ** 1), handlebody_double(2, Z2, Z3, BiSet.trivial(Z2, Z3)).enumerated), exact),
    ]
    gluing = "Closed 3-manifold by gluing handlebodies"

    def glued(G1, G2, N, g):
        S1, S2 = genus_surface(G1, g), genus_surface(G2, g)
        whole = glue(glue(handlebody(G1, g, surface=S1), wall_cylinder(S1, S2, N)),
                     handlebody(G2, g, reverse=True, surface=S2))
        return round(closed_invariant(whole).real, 9)

    items += [
        (gluing, "glued g=2, transparent Z2", lambda: (2.0, glued(Z2, Z2, T2, 2)), exact),
        (gluing, "glued g=2, impermeable Z2|Z3", lambda: (6.0, glued(Z2, Z3, BiSet.trivial(Z2, Z3), 2)), exact),
    ]
    loop = "Solid torus with two defect planes and an isolated loop"

    def vacuum(cls):
        c = solid_torus(Z2, Z2, T2, T2, {"kind": "double_irrep", "class": cls})
        return vacuum_covector(c.basis_labels("source"), Z2, cls), _row(c)

    def impermeable():
        # φ = trivial of dimension 2 on every (m1, m2), so each entry should read dim φ = 2
        def phi(base):
            return GroupoidRep.from_blocks(base, [(o.rep, MatrixRep.trivial(base.group, o.stabilizer, 2))
                                                  for o in base.components()])

        c = solid_torus(Z2, Z3, BiSet.trivial(Z2, Z3, 2), BiSet.trivial(Z3, Z2), phi)
        return [2.0] * c.matrix().shape[1], _row(c)

    items += [
        (loop, "trivial D(Z2) irrep gives the vacuum covector", lambda: vacuum("e"), close),
        (loop, "flux D(Z2) irrep gives δ_x(m1·m2)", lambda: vacuum("x"), close),
        (loop, "impermeable walls, two-dimensional loop label", impermeable, close),
    ]
    return items


def run_examples() -> list[ExampleResult]:
    """Evaluate every built-in example; failures carry both values."""
    out = []
    for topic, name, fn, agree in _catalogue():
        expected, computed = fn()
        out.append(ExampleResult(topic, name, expected, computed, bool(agree(expected, computed))))
    return out
