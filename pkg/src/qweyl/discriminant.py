"""Trace-form discriminant over the central polynomial subring.

Every x_i^2 is central, so V_n(A) is a free module of rank 2^n over
C = k[x_1^2, ..., x_n^2] with basis the square-free monomials b_eps,
eps in {0,1}^n.  CenterPoly represents elements of C in variables
y_i = x_i^2.  The discriminant is the determinant of the 2^n x 2^n
matrix of traces of b_eps b_eps', normalized to leading coefficient 1
under graded-lex order (y1 > ... > yn).

For n even C is the full center and the determinant is the discriminant
of V_n(A) over its center; for n odd the result is still the
determinant over C, and callers are expected to label it as such.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotProportional, ZeroDeterminant
from .algebra import Element, format_terms
from .scalars import Scalar


class CenterPoly:
    """Commutative polynomial in y_1..y_n with Scalar coefficients."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field, n, terms):
        self.field = field
        self.n = n
        self.terms = terms

    @staticmethod
    def zero(field, n):
        return CenterPoly(field, n, {})

    @staticmethod
    def constant(field, n, c):
        c = field.coerce(c)
        if c.is_zero():
            return CenterPoly(field, n, {})
        return CenterPoly(field, n, {(0,) * n: c})

    @staticmethod
    def one(field, n):
        return CenterPoly.constant(field, n, 1)

    @staticmethod
    def monomial(field, n, exps, coeff=None):
        c = field.coerce(coeff) if coeff is not None else field.one
        if c.is_zero():
            return CenterPoly(field, n, {})
        return CenterPoly(field, n, {tuple(exps): c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CenterPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((e, c.key()) for e, c in self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return CenterPoly(self.field, self.n, out)

    def __neg__(self):
        return CenterPoly(self.field, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not self.terms or not other.terms:
            return CenterPoly(self.field, self.n, {})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                add = c1 * c2
                s = out.get(e)
                s = add if s is None else s + add
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return CenterPoly(self.field, self.n, out)

    def scale(self, c):
        c = self.field.coerce(c)
        if c.is_zero():
            return CenterPoly(self.field, self.n, {})
        return CenterPoly(self.field, self.n, {e: c * v for e, v in self.terms.items()})

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=float("-inf"))

    def leading_monomial(self):
        """Graded-lex maximum (degree first, then y1 most significant)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda e: (sum(e), e))

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        if not self.terms:
            return self
        inv = self.leading_coeff().inverse()
        return self.scale(inv)

    def exact_div(self, g) -> "CenterPoly":
        """Exact quotient self / g; raises ValueError if not divisible."""
        if g.is_zero():
            raise ZeroDivisionError("division of center polynomial by zero")
        rem = dict(self.terms)
        glead = g.leading_monomial()
        gc = g.terms[glead]
        gcinv = gc.inverse()
        out = {}
        while rem:
            e = max(rem, key=lambda m: (sum(m), m))
            diff = tuple(a - b for a, b in zip(e, glead))
            if any(d < 0 for d in diff):
                raise ValueError("inexact division of center polynomials")
            c = rem[e] * gcinv
            out[diff] = c
            for e2, c2 in g.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, e2))
                s = rem.get(tgt, self.field.zero) - c * c2
                if s.is_zero():
                    rem.pop(tgt, None)
                else:
                    rem[tgt] = s
        return CenterPoly(self.field, self.n, out)

    def as_element(self, pres) -> Element:
        """Substitute y_i = x_i^2, giving a central Element of V_n(A)."""
        terms = {tuple(2 * e for e in exps): c for exps, c in self.terms.items()}
        return Element.from_terms(pres, terms)

    def apply_affine(self, auto) -> "CenterPoly":
        """Push y_i through x_i -> r_i x_{sigma(i)}, so y_i -> r_i^2 y_{sigma(i)}."""
        out = {}
        for exps, c in self.terms.items():
            tgt = [0] * self.n
            coeff = c
            for i0, e in enumerate(exps):
                if e:
                    tgt[auto.perm[i0]] += e
                    coeff = coeff * auto.scalars[i0] ** (2 * e)
            key = tuple(tgt)
            s = out.get(key)
            s = coeff if s is None else s + coeff
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return CenterPoly(self.field, self.n, out)

    def __str__(self):
        return format_terms(self.terms, "y", self.field)

    def __repr__(self):
        return f"CenterPoly({self})"


def central_decompose(u: Element):
    """Write u = sum_eps c_eps(y) b_eps; returns {eps: CenterPoly}.

    Each PBW monomial splits as x^e = (prod_i y_i^(e_i // 2)) b_(e mod 2)
    because the squares are central.
    """
    n = u.ring.n
    field = u.ring.field
    out = {}
    for exps, c in u.terms.items():
        eps = tuple(e & 1 for e in exps)
        ymon = tuple(e >> 1 for e in exps)
        comp = out.get(eps)
        if comp is None:
            comp = {}
            out[eps] = comp
        comp[ymon] = comp.get(ymon, field.zero) + c
    return {eps: CenterPoly(field, n, terms) for eps, terms in out.items()}


def central_reconstruct(components, pres) -> Element:
    """Inverse of central_decompose."""
    terms = {}
    for eps, poly in components.items():
        for ymon, c in poly.terms.items():
            exps = tuple(2 * y + e for y, e in zip(ymon, eps))
            s = terms.get(exps, pres.field.zero) + c
            if s.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = s
    return Element(pres, terms)


def squarefree_basis(n: int):
    """The 2^n square-free exponent vectors, sorted by (weight, tuple)."""
    eps = [tuple(reversed(bits)) for bits in itertools.product((0, 1), repeat=n)]
    eps.sort(key=lambda e: (sum(e), e))
    return eps


def internal_trace(u: Element) -> CenterPoly:
    """Trace of left multiplication by u on the rank-2^n free module
    over C; C-linear, with trace(1) = 2^n."""
    pres = u.ring
    n = pres.n
    total = CenterPoly.zero(pres.field, n)
    for eps in squarefree_basis(n):
        b = Element.monomial(pres, eps)
        prod = u * b
        comp = central_decompose(prod).get(eps)
        if comp is not None:
            total = total + comp
    return total


def trace_matrix(pres):
    """Basis (list of eps) and the symmetric matrix of traces of
    b_eps b_eps' as CenterPolys."""
    n = pres.n
    basis = squarefree_basis(n)
    size = len(basis)
    rows = [[None] * size for _ in range(size)]
    for i in range(size):
        bi = Element.monomial(pres, basis[i])
        for j in range(i, size):
            bj = Element.monomial(pres, basis[j])
            t = internal_trace(bi * bj)
            rows[i][j] = t
            rows[j][i] = t
    return basis, rows


def bareiss_determinant(rows):
    """Fraction-free Bareiss determinant of a square CenterPoly matrix."""
    size = len(rows)
    if size == 0:
        raise ValueError("empty matrix")
    field = rows[0][0].field
    n = rows[0][0].n
    m = [list(r) for r in rows]
    sign = 1
    prev = CenterPoly.one(field, n)
    for k in range(size - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, size):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return CenterPoly.zero(field, n)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if k > 0 else num
            m[i][k] = CenterPoly.zero(field, n)
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return det.scale(field.from_int(sign)) if sign < 0 else det


@dataclass
class DiscriminantResult:
    poly: CenterPoly          # normalized to leading coefficient 1
    unit: Scalar              # leading coefficient of the raw determinant
    over_full_center: bool    # True for n even; for n odd this is the
                              # determinant over C only
    basis: list


def discriminant(pres) -> DiscriminantResult:
    """Normalized determinant of the trace pairing of V_n(A) over C.

    The trace matrix vanishes outside the blocks of constant weight
    parity (products of square-free monomials with odd symmetric
    difference have no diagonal part), so the determinant splits as the
    product of the two parity-block determinants; each block uses
    fraction-free Bareiss elimination.
    """
    basis, rows = trace_matrix(pres)
    even_idx = [i for i, e in enumerate(basis) if sum(e) % 2 == 0]
    odd_idx = [i for i, e in enumerate(basis) if sum(e) % 2 == 1]
    blocked = all(
        rows[i][j].is_zero() for i in even_idx for j in odd_idx
    )
    if blocked:
        det = CenterPoly.one(pres.field, pres.n)
        for idx in (even_idx, odd_idx):
            sub = [[rows[i][j] for j in idx] for i in idx]
            det = det * bareiss_determinant(sub)
    else:  # pragma: no cover - parity blocking is a theorem
        det = bareiss_determinant(rows)
    if det.is_zero():
        raise ZeroDeterminant("trace pairing is degenerate; arithmetic bug")
    unit = det.leading_coeff()
    return DiscriminantResult(
        poly=det.monic(),
        unit=unit,
        over_full_center=(pres.n % 2 == 0),
        basis=basis,
    )


def check_disc_invariance(auto, pres, disc: DiscriminantResult = None) -> Scalar:
    """The unit c with g(d) = c d for an affine automorphism g.

    Raises NotProportional if the image fails to be a scalar multiple
    (which would contradict discriminant invariance and indicates a bug
    or an invalid automorphism).
    """
    if disc is None:
        disc = discriminant(pres)
    d = disc.poly
    image = d.apply_affine(auto)
    c = image.terms.get(d.leading_monomial())
    if c is None or image != d.scale(c):
        raise NotProportional("automorphism image of the discriminant is not proportional")
    return c
