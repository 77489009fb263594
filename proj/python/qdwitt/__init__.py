"""Exact window-scale cohomology for the q-deformed Witt Hom-Lie superalgebra.

Thin wrapper over the compiled extension: compound results cross the C++
boundary as JSON and are decoded here, so every method returns plain dicts
and lists.  Coefficients are exact and rendered as strings ("(q^2 - 1)/(q - 1)"
in symbolic mode, "3/2" in sampled mode).
"""

import json

from ._core import Context as _Core
from ._core import ParseError, ReduceError, SlotError

__all__ = ["Context", "ParseError", "ReduceError", "SlotError"]


class Context:
    """Arithmetic context: mode="symbolic" or mode="sampled" with q="p/r"."""

    def __init__(self, mode="sampled", q="2"):
        self._c = _Core(mode, q)

    def describe(self):
        return self._c.describe()

    def q_number(self, n):
        """(1 - q^n)/(1 - q), as an exact string."""
        return self._c.q_number(n)

    def bracket(self, x, y):
        """Bracket of two basis elements given as ("L", n) / ("G", n) pairs.

        Returns {"L[k]": coeff, ...}; an empty dict is zero.
        """
        return dict(self._c.bracket(x[0], x[1], y[0], y[1]))

    def alpha_scale(self, x):
        """Eigenvalue of the twist on the basis element x = (kind, n)."""
        return self._c.alpha_scale(x[0], x[1])

    def jacobi_zero(self, x, y, z):
        return self._c.jacobi_zero(x[0], x[1], y[0], y[1], z[0], z[1])

    def analyze_sector(self, parity, s, N, N_core, threads=1, certificates=True):
        """Cocycle system of one (parity, s) sector; returns the report dict."""
        return json.loads(
            self._c._analyze_sector_json(parity, s, N, N_core, threads, certificates)
        )

    def sweep(self, s_min, s_max, N, N_core, parity="both", threads=1):
        """Reports for all sectors in range, in canonical order."""
        even = parity in ("both", "even")
        odd = parity in ("both", "odd")
        return json.loads(self._c._sweep_json(even, odd, s_min, s_max, N, N_core, threads))

    def kernel(self, parity, s, N, N_core):
        """Nullspace basis of the sector system, as cochain dicts."""
        return json.loads(self._c._kernel_json(parity, s, N, N_core))

    def random_coboundary(self, parity, s, N, N_core, seed):
        """d1 of a seeded random 1-cochain, as a cochain dict."""
        return json.loads(self._c._random_coboundary_json(parity, s, N, N_core, seed))

    def reduce(self, cochain, N, N_core):
        """Constructive reduction: returns the certificate dict.

        certificate["core_exact"] is True iff d1(g) matches the input on the
        core exactly; "window_cocycle" reports whether the input satisfied the
        raw window system.
        """
        return json.loads(self._c._reduce_json(json.dumps(cochain), N, N_core))

    def first_order_deformation(self, cochain, N, N_core):
        """Wrap an even 2-cochain as an order-1 truncated deformation dict."""
        return json.loads(
            self._c._first_order_deformation_json(json.dumps(cochain), N, N_core)
        )

    def deform_check(self, deformation):
        """First-order cocycle test plus trivialization attempt."""
        return json.loads(self._c._deform_check_json(json.dumps(deformation)))
