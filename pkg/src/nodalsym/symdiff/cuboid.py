"""The perfect-cuboid surface on the patch x1 = 1 and its degree-2 forms."""
from __future__ import annotations

from functools import lru_cache

from .cover import MultiQuadraticRing
from .forms import Parametrization, SymmetricForm
from .io import FormFile, data_path, parse_form_text, read_form_file

__all__ = ["cuboid_form_file", "cuboid_ring", "cuboid_forms", "eta", "omega7_projective",
           "pythagorean_conic", "FORM_LABELS"]

FORM_LABELS = ("omega1", "omega2", "omega3", "omega4", "omega5", "omega6", "omega7",
               "x2*omega7", "x3*omega7", "y1*omega7", "y2*omega7", "y3*omega7", "z*omega7")


@lru_cache(maxsize=None)
def cuboid_form_file() -> FormFile:
    return read_form_file(data_path("cuboid_sym2.forms"))


def cuboid_ring() -> MultiQuadraticRing:
    """Q(x2, x3)[y1, y2, y3, z] with the four quadric relations."""
    return cuboid_form_file().ring


def cuboid_forms() -> list:
    """The 13 generators of the degree-2 reflexive symmetric differentials."""
    return list(cuboid_form_file().forms)


_ETA = "(x3^2 + 1)*dx2^2 - 2*x2*x3*dx2*dx3 + (x2^2 + 1)*dx3^2"


def eta(ring: MultiQuadraticRing | None = None) -> SymmetricForm:
    """The quadratic differential on the plane whose integral curves are studied.

    Without a ring it lives over Q(x2, x3); pass ``cuboid_ring()`` to
    compare with forms on the surface.
    """
    if ring is None:
        return read_form_file(data_path("eta.forms"))[0]
    header = "vars: x2, x3\ndiffs: dx2, dx3\n" + "".join(
        f"gen {g}: {g}^2 = {q}\n" for g, q in zip(ring.gens, ring.squares))
    f = parse_form_text(header + _ETA + "\n", "eta")
    if f.ring != ring:
        raise ValueError("ring does not have base variables x2, x3")
    return SymmetricForm(ring, f[0].m, f[0].coeffs, f[0].coords)


@lru_cache(maxsize=None)
def omega7_projective() -> SymmetricForm:
    """omega7 with x1 kept as a variable, for divisibility along x1 = 0."""
    return read_form_file(data_path("cuboid_omega7_projective.forms"))[0]


def pythagorean_conic() -> Parametrization:
    """A conic on the hyperplane x1 = 0 built from the triple (1 - t^2, 2t, 1 + t^2)."""
    return Parametrization.from_strings(
        "t",
        {"x1": "0", "x2": "1 - t^2", "x3": "2*t"},
        {"y1": "1 + t^2", "y2": "2*t", "y3": "1 - t^2", "z": "1 + t^2"},
    )
