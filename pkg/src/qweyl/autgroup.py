"""Affine automorphism groups of V_n(A).

An affine automorphism is x_i -> r_i x_sigma(i); it preserves the
relations exactly when a_ij = r_i r_j a_sigma(i)sigma(j) for all i != j.
For each permutation the scaling vectors solve a multiplicative system
r_i r_j = c_ij on the graph of nonzero parameters, handled by a spanning
forest: each tree assignment alternates the exponent of one free
parameter t per component, odd cycles pin t by a condition t^2 = c, and
components without such a condition contribute free (torus) parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InfiniteGroup
from .algebra import Element, Presentation, substitute_generators
from .scalars import Scalar, try_nth_root, try_sqrt


# ----- permutations (0-based image tuples) -----


def identity_perm(n):
    return tuple(range(n))


def compose_perms(p, q):
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert_perm(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_parity(p):
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return -1 if parity else 1


def cycle_notation(p) -> str:
    n = len(p)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        cycles.append(cyc)
    if not cycles:
        return "id"
    sep = "," if n > 9 else ""
    return "".join("(" + sep.join(str(v) for v in c) + ")" for c in cycles)


@dataclass(frozen=True)
class AffineAuto:
    """x_i -> scalars[i] * x_perm[i] (indices 0-based internally)."""

    perm: tuple
    scalars: tuple

    @property
    def n(self):
        return len(self.perm)

    @staticmethod
    def identity(n, field):
        return AffineAuto(identity_perm(n), (field.one,) * n)

    @staticmethod
    def minus_one(n, field):
        minus = -field.one
        return AffineAuto(identity_perm(n), (minus,) * n)

    def is_identity(self):
        return self.perm == identity_perm(self.n) and all(
            c.is_one() for c in self.scalars
        )

    def is_valid(self, pres: Presentation) -> bool:
        """Exact check of a_ij = r_i r_j a_sigma(i)sigma(j)."""
        for i, j in pres.generator_pairs():
            lhs = pres.a(i, j)
            rhs = self.scalars[i - 1] * self.scalars[j - 1] * pres.a(
                self.perm[i - 1] + 1, self.perm[j - 1] + 1
            )
            if lhs != rhs:
                return False
        return True

    def compose(self, other: "AffineAuto") -> "AffineAuto":
        """self after other: (self o other)(x) = self(other(x))."""
        perm = compose_perms(self.perm, other.perm)
        scalars = tuple(
            other.scalars[i] * self.scalars[other.perm[i]] for i in range(self.n)
        )
        return AffineAuto(perm, scalars)

    def inverse(self) -> "AffineAuto":
        inv = invert_perm(self.perm)
        scalars = tuple(self.scalars[inv[i]].inverse() for i in range(self.n))
        return AffineAuto(inv, scalars)

    def hdet(self) -> Scalar:
        """Homological determinant: the product of the r_i.

        The permutation part contributes 1 and the diagonal part
        contributes the product of its scalars, so the value is
        multiplicative on compositions.
        """
        out = self.scalars[0]
        for c in self.scalars[1:]:
            out = out * c
        return out

    def images(self, ring) -> tuple:
        return tuple(
            Element.monomial(
                ring,
                tuple(1 if k == self.perm[i] else 0 for k in range(self.n)),
                self.scalars[i],
            )
            for i in range(self.n)
        )

    def apply(self, u: Element) -> Element:
        return substitute_generators(u, self.images(u.ring))

    def key(self):
        return (self.perm, tuple(c.key() for c in self.scalars))

    def sort_key(self):
        return (self.perm, tuple(c.sort_key() for c in self.scalars))

    def __str__(self):
        rvec = ", ".join(str(c) for c in self.scalars)
        return f"({cycle_notation(self.perm)}, ({rvec}))"


@dataclass(frozen=True)
class FreeComponent:
    """One connected component of the scaling-constraint graph whose
    parameter t stays free: r_v = alpha_v * t^sign_v."""

    vertices: tuple   # 0-based
    signs: tuple      # +1 / -1 per vertex
    alphas: tuple     # Scalar per vertex


@dataclass
class ScalingSolutions:
    """Complete solution set of r_i r_j = a_ij / b_sigma(i)sigma(j).

    status is 'empty', 'finite' or 'parametrized'.  For 'finite' the
    vectors list is exhaustive; for 'parametrized' it holds the
    representatives with every free parameter set to 1 and
    free_components describes the torus directions.  sqrt_obstructions
    lists values c of unsatisfied cycle conditions t^2 = c: the system
    has no solution over K but acquires one over a quadratic extension.
    """

    status: str
    vectors: tuple = ()
    free_components: tuple = ()
    sqrt_obstructions: tuple = ()


def solve_scaling(pres_a: Presentation, pres_b: Presentation, perm) -> ScalingSolutions:
    """All r with a_ij = r_i r_j b_sigma(i)sigma(j), sigma = perm."""
    n = pres_a.n
    if pres_b.n != n:
        raise ValueError("presentations must share the same dimension")
    field = pres_a.field
    edges = {}
    for i, j in pres_a.generator_pairs():
        av = pres_a.a(i, j)
        bv = pres_b.a(perm[i - 1] + 1, perm[j - 1] + 1)
        if av.is_zero() != bv.is_zero():
            return ScalingSolutions(status="empty")
        if not av.is_zero():
            edges[(i - 1, j - 1)] = av / bv

    adjacency = {v: [] for v in range(n)}
    for (u, v), c in edges.items():
        adjacency[u].append((v, c))
        adjacency[v].append((u, c))

    components = []
    obstructions = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        order = []
        alpha = {root: field.one}
        sign = {root: 1}
        seen[root] = True
        stack = [root]
        tree_edges = set()
        while stack:
            u = stack.pop()
            order.append(u)
            for v, c in adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    alpha[v] = c / alpha[u]
                    sign[v] = -sign[u]
                    tree_edges.add((min(u, v), max(u, v)))
                    stack.append(v)
        # non-tree edges give consistency or t^2 conditions
        square_value = None
        for (u, v), c in edges.items():
            if u not in alpha or (min(u, v), max(u, v)) in tree_edges:
                continue
            if v not in alpha:
                continue
            k = sign[u] + sign[v]
            prod = alpha[u] * alpha[v]
            if k == 0:
                if prod != c:
                    return ScalingSolutions(status="empty")
            else:
                value = c / prod if k > 0 else prod / c
                if square_value is None:
                    square_value = value
                elif square_value != value:
                    return ScalingSolutions(status="empty")
        roots = None
        if square_value is not None:
            s = try_sqrt(square_value)
            if s is None:
                obstructions.append(square_value)
            else:
                roots = (s, -s)
        components.append(
            (tuple(order), sign, alpha, roots, square_value is not None)
        )

    if obstructions:
        return ScalingSolutions(status="empty", sqrt_obstructions=tuple(obstructions))

    constrained = [c for c in components if c[4]]
    free = [c for c in components if not c[4]]
    vectors = []
    for choice in itertools.product(*[c[3] for c in constrained]):
        r = [None] * n
        for (verts, sign, alpha, _roots, _), t in zip(constrained, choice):
            for v in verts:
                r[v] = alpha[v] * (t if sign[v] > 0 else t.inverse())
        for verts, sign, alpha, _roots, _ in free:
            for v in verts:
                r[v] = alpha[v]
        vectors.append(tuple(r))

    # exact recheck of every produced vector against all entries
    for r in vectors:
        for i, j in pres_a.generator_pairs():
            av = pres_a.a(i, j)
            bv = pres_b.a(perm[i - 1] + 1, perm[j - 1] + 1)
            assert av == r[i - 1] * r[j - 1] * bv
    vectors.sort(key=lambda r: tuple(c.sort_key() for c in r))

    free_components = tuple(
        FreeComponent(
            vertices=verts,
            signs=tuple(sign[v] for v in verts),
            alphas=tuple(alpha[v] for v in verts),
        )
        for verts, sign, alpha, _roots, _ in free
    )
    status = "parametrized" if free_components else "finite"
    return ScalingSolutions(
        status=status, vectors=tuple(vectors), free_components=free_components
    )


@dataclass
class GroupDescription:
    """The affine automorphism group as explicit data.

    elements lists every automorphism when order is finite; with a
    positive torus rank it lists one representative per coset family
    (free parameters set to 1) and order is None (infinite).

    perm_image holds the permutations realized over K itself.
    extension_perms holds (perm, obstruction values) pairs whose scaling
    systems are consistent but need square roots missing from K; they
    become automorphisms over a quadratic extension and are reported
    rather than silently dropped.
    """

    n: int
    elements: tuple
    torus_rank: int
    perm_image: tuple
    order: int | None
    kernel_solution: ScalingSolutions | None = None
    sqrt_obstructions: tuple = ()
    extension_perms: tuple = ()

    def order_str(self):
        return "infinite" if self.order is None else str(self.order)

    def full_perm_image(self):
        """Permutations realized over K or over a quadratic extension."""
        return tuple(sorted(set(self.perm_image) | {p for p, _ in self.extension_perms}))

    def element_keys(self):
        return {g.key() for g in self.elements}

    def contains(self, auto: AffineAuto) -> bool:
        return auto.key() in self.element_keys()

    def verify_closure(self) -> bool:
        """Composition and inverse closure of the finite element list."""
        if self.torus_rank:
            raise InfiniteGroup("closure check requires a finite group")
        keys = self.element_keys()
        for g in self.elements:
            if g.inverse().key() not in keys:
                return False
        for g in self.elements:
            for h in self.elements:
                if g.compose(h).key() not in keys:
                    return False
        return True


def affine_automorphisms(pres: Presentation) -> GroupDescription:
    """Enumerate the affine automorphism group of V_n(A).

    Permutations are scanned in lexicographic order; each one
    contributes the complete solution set of its scaling system.
    """
    n = pres.n
    elements = []
    perm_image = []
    extension_perms = []
    torus_rank = 0
    kernel_solution = None
    obstructions = []
    for perm in itertools.permutations(range(n)):
        sol = solve_scaling(pres, pres, perm)
        if perm == identity_perm(n):
            kernel_solution = sol
            torus_rank = len(sol.free_components)
        for value in sol.sqrt_obstructions:
            if value not in obstructions:
                obstructions.append(value)
        if sol.status == "empty":
            if sol.sqrt_obstructions:
                extension_perms.append((perm, sol.sqrt_obstructions))
            continue
        perm_image.append(perm)
        for r in sol.vectors:
            elements.append(AffineAuto(perm, r))
    order = None if torus_rank else len(elements)
    return GroupDescription(
        n=n,
        elements=tuple(elements),
        torus_rank=torus_rank,
        perm_image=tuple(perm_image),
        order=order,
        kernel_solution=kernel_solution,
        sqrt_obstructions=tuple(obstructions),
        extension_perms=tuple(extension_perms),
    )


def hdet(auto: AffineAuto) -> Scalar:
    return auto.hdet()


def _torus_hdet_exponents(component: FreeComponent):
    return sum(component.signs)


def hdet_one_subgroup(group: GroupDescription) -> GroupDescription:
    """The subgroup of elements with homological determinant 1.

    For a finite group this filters the element list.  With a positive
    torus rank, hdet restricted to a coset family is a constant times a
    character prod t_c^(k_c) of the free parameters; if every k_c is 0
    the condition is a plain constant test, otherwise it cuts the torus
    rank by one and representatives are re-anchored so their hdet is 1.
    """
    if group.torus_rank == 0:
        kept = tuple(g for g in group.elements if g.hdet().is_one())
        perms = tuple(sorted({g.perm for g in kept}))
        return GroupDescription(
            n=group.n,
            elements=kept,
            torus_rank=0,
            perm_image=perms,
            order=len(kept),
            sqrt_obstructions=group.sqrt_obstructions,
        )

    comps = group.kernel_solution.free_components
    k_exponents = [_torus_hdet_exponents(c) for c in comps]
    nonzero = [k for k in k_exponents if k]
    if not nonzero:
        kept = tuple(g for g in group.elements if g.hdet().is_one())
        perms = tuple(sorted({g.perm for g in kept}))
        return GroupDescription(
            n=group.n,
            elements=kept,
            torus_rank=group.torus_rank,
            perm_image=perms,
            order=None if kept else 0,
            kernel_solution=group.kernel_solution,
            sqrt_obstructions=group.sqrt_obstructions,
        )

    # Bezout combination of the nonzero exponents
    g0 = 0
    for k in nonzero:
        g0 = _gcd(g0, abs(k))
    kept = []
    for rep in group.elements:
        w = rep.hdet().inverse()
        root = try_nth_root(w, g0) if g0 > 1 else w
        if root is None:
            continue
        # choose t_c = root^(u_c) with sum k_c u_c = g0
        coeffs = _bezout_vector([k for k in k_exponents], g0)
        scalars = list(rep.scalars)
        for comp, k, u in zip(comps, k_exponents, coeffs):
            if u == 0:
                continue
            t = root ** u
            for v, s in zip(comp.vertices, comp.signs):
                scalars[v] = scalars[v] * (t if s > 0 else t.inverse())
        adjusted = AffineAuto(rep.perm, tuple(scalars))
        assert adjusted.hdet().is_one()
        kept.append(adjusted)
    perms = tuple(sorted({g.perm for g in kept}))
    new_rank = group.torus_rank - 1
    return GroupDescription(
        n=group.n,
        elements=tuple(kept),
        torus_rank=new_rank,
        perm_image=perms,
        order=(len(kept) if new_rank == 0 else None) if kept else 0,
        sqrt_obstructions=group.sqrt_obstructions,
    )


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _bezout_vector(ks, g0):
    """Integer u with sum k_c u_c = g0 (ks not all zero)."""
    out = [0] * len(ks)
    cur_g, cur_combo = 0, [0] * len(ks)
    for idx, k in enumerate(ks):
        if k == 0:
            continue
        if cur_g == 0:
            cur_g = abs(k)
            cur_combo = [0] * len(ks)
            cur_combo[idx] = 1 if k > 0 else -1
            continue
        g, x, y = _ext_gcd(cur_g, abs(k))
        cur_combo = [x * c for c in cur_combo]
        cur_combo[idx] += y * (1 if k > 0 else -1)
        cur_g = g
    assert cur_g == g0
    return cur_combo


def _ext_gcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


# ----- permutation-group utilities for the certificate shortcut -----


def perm_closure(generators):
    """Subgroup of S_n generated by the given permutations."""
    if not generators:
        return set()
    n = len(next(iter(generators)))
    ident = identity_perm(n)
    group = {ident}
    frontier = [ident]
    gens = list(set(generators))
    while frontier:
        new_frontier = []
        for p in frontier:
            for g in gens:
                q = compose_perms(g, p)
                if q not in group:
                    group.add(q)
                    new_frontier.append(q)
        frontier = new_frontier
    return group


def commutator_subgroup(perms):
    perms = set(perms)
    commutators = set()
    for g in perms:
        for h in perms:
            c = compose_perms(
                compose_perms(g, h), compose_perms(invert_perm(g), invert_perm(h))
            )
            commutators.add(c)
    return perm_closure(commutators)


def perm_image_is_perfect(perms) -> bool:
    """True when the permutation group equals its commutator subgroup."""
    group = perm_closure(set(perms))
    return commutator_subgroup(group) == group


@dataclass
class CertificateResult:
    certified: bool
    reason: str | None = None
    witness: AffineAuto | None = None

    def __bool__(self):
        return self.certified


def gorenstein_certificate(pres: Presentation, group: GroupDescription) -> CertificateResult:
    """Certify that the fixed subring under the given automorphism group
    is filtered AS Gorenstein, via trivial homological determinant.

    Two routes are reported: the direct elementwise hdet check, and the
    commutator-subgroup shortcut (a perfect permutation image with
    kernel inside {1, -1} forces every hdet to be 1 when n is even).
    The certificate asserts the homological conclusion; it does not
    recompute homology.
    """
    if group.torus_rank > 0:
        comps = group.kernel_solution.free_components if group.kernel_solution else ()
        k_nonzero = any(_torus_hdet_exponents(c) for c in comps)
        reps_trivial = all(g.hdet().is_one() for g in group.elements)
        if not k_nonzero and reps_trivial:
            return CertificateResult(
                certified=True,
                reason="homological determinant is identically 1 on the full "
                "(infinite) group",
            )
        raise InfiniteGroup(
            "group is infinite and its homological determinant is not "
            "identically trivial"
        )

    witnesses = [g for g in group.elements if not g.hdet().is_one()]
    if not witnesses:
        reason = "every element has homological determinant 1"
        if (
            group.n % 2 == 0
            and perm_image_is_perfect(group.perm_image)
            and len(group.perm_image) > 1
        ):
            reason += (
                "; the permutation image equals its own commutator subgroup, "
                "which forces this"
            )
        return CertificateResult(certified=True, reason=reason)
    witness = min(witnesses, key=lambda g: g.sort_key())
    return CertificateResult(certified=False, witness=witness)
