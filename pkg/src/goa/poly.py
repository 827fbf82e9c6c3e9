"""Polynomials on the Boolean lattice: the quotient algebra with x_i^2 = x_i.

A Poly is a dense vector of exact coefficients indexed by subset mask,
tagged with its basis:

  P basis    p_A, with p_A(B) = 1 iff A is a subset of B, and p_A * p_B = p_{A union B}
  EPS basis  eps_A, the idempotent indicators: eps_A(B) = 1 iff A = B

Coefficients are Python ints or Fractions; the two mix exactly.
"""

from fractions import Fraction

from goa.errors import InputError
from goa.subsets import GroundSet, format_subset, popcount, submasks

P = "P"
EPS = "EPS"


class Poly:
    __slots__ = ("g", "basis", "coeffs")

    def __init__(self, g: GroundSet, basis: str, coeffs):
        if basis not in (P, EPS):
            raise InputError(f"unknown basis {basis!r}")
        coeffs = tuple(coeffs)
        if len(coeffs) != g.size:
            raise InputError(f"coefficient vector must have {g.size} entries, got {len(coeffs)}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(g, basis=P):
        return Poly(g, basis, (0,) * g.size)

    @staticmethod
    def term(g, mask, coeff=1, basis=P):
        c = [0] * g.size
        c[mask] = coeff
        return Poly(g, basis, c)

    @staticmethod
    def one(g):
        return Poly.term(g, 0)

    @staticmethod
    def block_sum(g, masks, basis=P):
        """Sum of basis vectors over an iterable of masks."""
        c = [0] * g.size
        for m in masks:
            c[m] += 1
        return Poly(g, basis, c)

    # -- linear structure ----------------------------------------------

    def _check_compatible(self, other):
        if self.g != other.g:
            raise InputError("polynomials live on different ground sets")
        if self.basis != other.basis:
            raise InputError("mixed-basis arithmetic; convert explicitly first")

    def __add__(self, other):
        self._check_compatible(other)
        return Poly(self.g, self.basis, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check_compatible(other)
        return Poly(self.g, self.basis, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Poly(self.g, self.basis, [-a for a in self.coeffs])

    def scale(self, c):
        return Poly(self.g, self.basis, [c * a for a in self.coeffs])

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.g == other.g
                and self.basis == other.basis
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def __hash__(self):
        return hash((self.g, self.basis, tuple(map(Fraction, self.coeffs))))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def terms(self):
        """Nonzero (mask, coeff) pairs, ascending mask."""
        return [(m, c) for m, c in enumerate(self.coeffs) if c != 0]

    # -- algebra --------------------------------------------------------

    def __mul__(self, other):
        """Product in the common basis.

        P basis: bilinear extension of p_A * p_B = p_{A union B}.
        EPS basis: coefficient-wise, since the eps_A are orthogonal idempotents.
        """
        self._check_compatible(other)
        if self.basis == EPS:
            return Poly(self.g, EPS, [a * b for a, b in zip(self.coeffs, other.coeffs)])
        out = [0] * self.g.size
        right = other.terms()
        for a, ca in self.terms():
            for b, cb in right:
                out[a | b] += ca * cb
        return Poly(self.g, P, out)

    def __rmul__(self, c):
        return self.scale(c)

    def evaluate(self, b: int):
        """Value of the associated function at the subset b."""
        if not 0 <= b < self.g.size:
            raise InputError(f"mask {b} out of range")
        if self.basis == EPS:
            return self.coeffs[b]
        return sum(self.coeffs[a] for a in submasks(b))

    def to_basis(self, target: str):
        """Exact basis change; round trips are the identity.

        P -> EPS is the subset-sum zeta transform of the coefficient
        vector (p_A = sum of eps_B over B containing A); EPS -> P is its
        inverse Moebius transform, carrying the alternating signs.
        Both run in O(n 2^n).
        """
        if target not in (P, EPS):
            raise InputError(f"unknown basis {target!r}")
        if target == self.basis:
            return self
        c = list(self.coeffs)
        n = self.g.n
        if target == EPS:
            for i in range(n):
                bit = 1 << i
                for m in range(self.g.size):
                    if m & bit:
                        c[m] = c[m] + c[m ^ bit]
        else:
            for i in range(n):
                bit = 1 << i
                for m in range(self.g.size):
                    if m & bit:
                        c[m] = c[m] - c[m ^ bit]
        return Poly(self.g, target, c)

    def __repr__(self):
        return f"Poly({self.g.n}, {self.basis}, {dict(self.terms())})"


def from_function(g: GroundSet, f) -> Poly:
    """The polynomial whose evaluation is f (a map mask -> value), in EPS basis."""
    if callable(f):
        vals = [f(m) for m in g.masks()]
    else:
        vals = [f[m] for m in g.masks()]
    return Poly(g, EPS, vals)


def format_poly(p: Poly) -> str:
    """Line-oriented text form: 'basis X' header, then 'coeff * subset' per term."""
    lines = [f"basis {p.basis}"]
    for m, c in sorted(p.terms(), key=lambda t: (popcount(t[0]), t[0])):
        lines.append(f"{c} * {format_subset(m)}")
    return "\n".join(lines)
