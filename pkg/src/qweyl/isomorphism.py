"""Isomorphism testing between V_n(A) and V_n(A') and canonical scaled
forms.

Two presentations of the same even dimension are isomorphic exactly when
some permutation and nonzero scalars satisfy
a'_ij = lambda_i lambda_j a_sigma(i)sigma(j); the search is therefore a
scan of all permutations through the scaling solver.  For odd n the same
search runs but a negative answer only rules out witnesses of this
shape, and results carry an explicit completeness flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionMismatch, PresentationMismatch
from .algebra import Presentation
from .autgroup import identity_perm, invert_perm, solve_scaling
from .scalars import Scalar, try_sqrt


@dataclass(frozen=True)
class IsoWitness:
    """x'_i -> lambda_i x_sigma(i) data: a'_ij = l_i l_j a_sigma(i)sigma(j)."""

    perm: tuple
    lambdas: tuple

    def is_valid(self, pres_a: Presentation, pres_b: Presentation) -> bool:
        """Exact check that self turns pres_a into pres_b."""
        for i, j in pres_b.generator_pairs():
            lhs = pres_b.a(i, j)
            rhs = self.lambdas[i - 1] * self.lambdas[j - 1] * pres_a.a(
                self.perm[i - 1] + 1, self.perm[j - 1] + 1
            )
            if lhs != rhs:
                return False
        return True

    def inverse(self) -> "IsoWitness":
        inv = invert_perm(self.perm)
        lambdas = tuple(self.lambdas[inv[i]].inverse() for i in range(len(inv)))
        return IsoWitness(inv, lambdas)


ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not_isomorphic"
UNDECIDED_NEEDS_SQRT = "undecided_needs_sqrt"


@dataclass
class IsoResult:
    verdict: str
    witness: IsoWitness | None
    complete: bool                 # True when n is even: the affine
                                   # search decides isomorphism outright
    sqrt_obstructions: tuple = ()

    def __bool__(self):
        return self.verdict == ISOMORPHIC


def is_isomorphic(pres_a: Presentation, pres_b: Presentation) -> IsoResult:
    """Decide V_n(A) isomorphic to V_n(B).

    Scans permutations in lexicographic order, returning the first
    witness found (least permutation, then least scalar vector under the
    fixed scalar order).  When no witness exists over K but some
    permutation failed only through a missing square root, the verdict
    is undecided: a witness exists over a quadratic extension of K.
    """
    if pres_a.n != pres_b.n:
        raise DimensionMismatch(f"n = {pres_a.n} vs {pres_b.n}")
    if pres_a.field != pres_b.field:
        raise PresentationMismatch("presentations over different scalar fields")
    n = pres_a.n
    obstructions = []
    for perm in itertools.permutations(range(n)):
        sol = solve_scaling(pres_b, pres_a, perm)
        if sol.vectors:
            witness = IsoWitness(perm, sol.vectors[0])
            assert witness.is_valid(pres_a, pres_b)
            return IsoResult(
                verdict=ISOMORPHIC, witness=witness, complete=(n % 2 == 0)
            )
        for value in sol.sqrt_obstructions:
            if value not in obstructions:
                obstructions.append(value)
    if obstructions:
        return IsoResult(
            verdict=UNDECIDED_NEEDS_SQRT,
            witness=None,
            complete=(n % 2 == 0),
            sqrt_obstructions=tuple(obstructions),
        )
    return IsoResult(verdict=NOT_ISOMORPHIC, witness=None, complete=(n % 2 == 0))


def apply_witness(pres: Presentation, witness: IsoWitness) -> Presentation:
    """The presentation with entries l_i l_j a_sigma(i)sigma(j)."""
    n = pres.n
    params = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            params[(i, j)] = (
                witness.lambdas[i - 1]
                * witness.lambdas[j - 1]
                * pres.a(witness.perm[i - 1] + 1, witness.perm[j - 1] + 1)
            )
    return Presentation(n, params, pres.field)


@dataclass
class CanonicalScalingResult:
    presentation: Presentation
    witness: IsoWitness
    changed: bool
    missing_sqrts: tuple = ()       # square roots absent from K
    note: str | None = None

    @property
    def succeeded(self):
        return not self.missing_sqrts and self.note is None


def canonical_scaling(pres: Presentation) -> CanonicalScalingResult:
    """Rescale generators so a_12 = a_13 = a_23 = 1 and a_1i = 1 for
    i > 3, when all parameters are nonzero and the single required
    square root (of a_12 a_13 a_23) exists in K.

    On failure the input is returned unchanged together with the missing
    square root or a note about zero parameters.
    """
    n = pres.n
    field = pres.field
    ident = IsoWitness(identity_perm(n), (field.one,) * n)
    if not pres.all_nonzero():
        return CanonicalScalingResult(
            presentation=pres,
            witness=ident,
            changed=False,
            note="zero parameters present; no canonical rescaling",
        )
    if n == 2:
        lam = (field.one, pres.a(1, 2).inverse())
        witness = IsoWitness(identity_perm(2), lam)
        result = apply_witness(pres, witness)
        return CanonicalScalingResult(
            presentation=result, witness=witness, changed=(result != pres)
        )
    prod = pres.a(1, 2) * pres.a(1, 3) * pres.a(2, 3)
    root = try_sqrt(prod)
    if root is None:
        return CanonicalScalingResult(
            presentation=pres, witness=ident, changed=False, missing_sqrts=(prod,)
        )
    s = root.inverse()
    lam = [None] * n
    lam[0] = pres.a(2, 3) * s
    lam[1] = pres.a(1, 3) * s
    lam[2] = pres.a(1, 2) * s
    for i in range(4, n + 1):
        lam[i - 1] = (lam[0] * pres.a(1, i)).inverse()
    witness = IsoWitness(identity_perm(n), tuple(lam))
    result = apply_witness(pres, witness)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        assert result.a(i, j).is_one()
    for i in range(4, n + 1):
        assert result.a(1, i).is_one()
    return CanonicalScalingResult(
        presentation=result, witness=witness, changed=(result != pres)
    )


def q_power_family(n: int, exponents, field) -> list:
    """Presentations with a_12 = q^k (k over the given exponents) and
    all other parameters 1; pairwise non-isomorphic for distinct k,
    which realizes an infinite family of pairwise non-isomorphic
    algebras in each even dimension."""
    out = []
    for k in exponents:
        params = {
            (i, j): field.one for i in range(1, n + 1) for j in range(i + 1, n + 1)
        }
        params[(1, 2)] = field.q(k)
        out.append(Presentation(n, params, field))
    return out
