"""PBW arithmetic in the modified (-1)-quantum Weyl algebra.

V_n(A) is generated by x_1, ..., x_n subject to x_i x_j + x_j x_i = a_ij
for i != j.  Sorted monomials x_1^e_1 ... x_n^e_n form a linear basis, so
elements are sparse maps from exponent vectors to nonzero scalars.  The
single rewrite x_j x_i -> -x_i x_j + a_ij (j > i) drives all products;
moving one generator left through a power batch gives

    x_j^e x_i = (-1)^e x_i x_j^e + [e odd] a_ij x_j^(e-1)

which is what ``rmul_terms`` implements.
"""

from __future__ import annotations

import itertools

from .errors import IndexOutOfRange, PresentationMismatch
from .scalars import Scalar, ScalarField, scalar_display_parts

NEG_INFINITY = float("-inf")


class Presentation:
    """Dimension n plus the symmetric parameter matrix (a_ij) over K."""

    def __init__(self, n: int, params, field: ScalarField):
        if n < 2:
            raise ValueError("presentation needs n >= 2")
        self.n = n
        self.field = field
        table = {}
        for (i, j), value in params.items():
            if i == j:
                raise ValueError("diagonal entries are unused and must be absent")
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexOutOfRange(f"entry ({i},{j}) outside 1..{n}")
            if i > j:
                i, j = j, i
            value = field.coerce(value)
            if (i, j) in table and table[(i, j)] != value:
                raise ValueError(f"conflicting values for entry ({i},{j})")
            table[(i, j)] = value
        self._a = {
            (i, j): table.get((i, j), field.zero)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        }

    def a(self, i: int, j: int) -> Scalar:
        """Parameter a_ij for any i != j (symmetric)."""
        if i == j:
            raise ValueError("a_ii is undefined")
        return self._a[(i, j) if i < j else (j, i)]

    def upper_entries(self):
        return self._a.items()

    def all_nonzero(self) -> bool:
        return all(not v.is_zero() for v in self._a.values())

    def zero_pattern(self):
        return frozenset(k for k, v in self._a.items() if v.is_zero())

    def rmul_terms(self, exps, i0):
        """Terms of x^exps * x_(i0+1); i0 is 0-based.

        Yields (exponent tuple, None-or-scalar) pairs where None stands
        for the coefficient +1 or -1 carried in the first slot's sign.
        Returned as (exps, sign, extra) with extra a list of
        (exps, scalar) corrections.
        """
        suffix = sum(exps[i0 + 1 :])
        main = exps[:i0] + (exps[i0] + 1,) + exps[i0 + 1 :]
        sign = -1 if suffix & 1 else 1
        extra = []
        tail = suffix
        for j in range(i0 + 1, self.n):
            ej = exps[j]
            tail -= ej
            if ej & 1:
                c = self._a[(i0 + 1, j + 1)]
                if not c.is_zero():
                    s = -1 if tail & 1 else 1
                    lowered = exps[:j] + (ej - 1,) + exps[j + 1 :]
                    extra.append((lowered, c if s > 0 else -c))
        return main, sign, extra

    def relation_residual(self, img_i, img_j, i, j):
        """phi(x_i) phi(x_j) + phi(x_j) phi(x_i) - a_ij as an Element."""
        lhs = img_i * img_j + img_j * img_i
        return lhs - Element.constant(self, self.a(i, j))

    def generator_pairs(self):
        n = self.n
        return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

    def __eq__(self, other):
        return (
            isinstance(other, Presentation)
            and self.n == other.n
            and self.field == other.field
            and self._a == other._a
        )

    def __hash__(self):
        return hash((self.n, self.field, tuple(sorted((k, v.key()) for k, v in self._a.items()))))

    def __repr__(self):
        entries = ", ".join(f"a[{i},{j}]={v}" for (i, j), v in sorted(self._a.items()))
        return f"Presentation(n={self.n}, {entries})"


def weyl_presentation(n: int, field: ScalarField = None) -> Presentation:
    """W_n: every a_ij equal to 1."""
    field = field or ScalarField()
    return Presentation(
        n, {(i, j): field.one for i in range(1, n + 1) for j in range(i + 1, n + 1)}, field
    )


def _rings_match(r1, r2):
    return r1 is r2 or r1 == r2


class Element:
    """A finite K-linear combination of sorted monomials over a ring
    presentation.  Treated as immutable after construction."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._key = None

    # ----- constructors -----

    @staticmethod
    def zero(ring):
        return Element(ring, {})

    @staticmethod
    def one(ring):
        return Element(ring, {(0,) * ring.n: ring.field.one})

    @staticmethod
    def constant(ring, c):
        c = ring.field.coerce(c)
        if c.is_zero():
            return Element(ring, {})
        return Element(ring, {(0,) * ring.n: c})

    @staticmethod
    def generator(ring, i: int):
        if not (1 <= i <= ring.n):
            raise IndexOutOfRange(f"generator index {i} outside 1..{ring.n}")
        exps = tuple(1 if k == i - 1 else 0 for k in range(ring.n))
        return Element(ring, {exps: ring.field.one})

    @staticmethod
    def monomial(ring, exps, coeff=None):
        exps = tuple(int(e) for e in exps)
        if len(exps) != ring.n or any(e < 0 for e in exps):
            raise ValueError("exponent vector must be length n and nonnegative")
        c = ring.field.coerce(coeff) if coeff is not None else ring.field.one
        if c.is_zero():
            return Element(ring, {})
        return Element(ring, {exps: c})

    @staticmethod
    def from_terms(ring, terms):
        return Element(ring, {e: c for e, c in terms.items() if not c.is_zero()})

    # ----- queries -----

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def filtration_degree(self):
        """Max total exponent degree; -inf for the zero element."""
        if not self.terms:
            return NEG_INFINITY
        return max(sum(e) for e in self.terms)

    def z2_parity(self):
        """'even', 'odd' or 'mixed' by total-degree parity (0 counts as even)."""
        parities = {sum(e) & 1 for e in self.terms}
        if parities == {1}:
            return "odd"
        if parities <= {0}:
            return "even"
        return "mixed"

    def support_indices(self):
        """1-based generator indices appearing with positive exponent."""
        out = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    out.add(i + 1)
        return out

    def key(self):
        if self._key is None:
            self._key = tuple(sorted((e, c.key()) for e, c in self.terms.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return _rings_match(self.ring, other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    # ----- linear arithmetic -----

    def _check_ring(self, other):
        if not _rings_match(self.ring, other.ring):
            raise PresentationMismatch("elements over different presentations")

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Element.constant(self.ring, other)
        self._check_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Element(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Element.constant(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = self.ring.field.coerce(c)
        if c.is_zero():
            return Element(self.ring, {})
        return Element(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        self._check_ring(other)
        return _multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined for algebra elements")
        out = Element.one(self.ring)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self):
        return format_terms(self.terms, "x", self.ring.field)

    def __repr__(self):
        return f"Element({self})"


def _rmul_generator(ring, terms: dict, i0: int) -> dict:
    """Right-multiply a term dict by the generator with 0-based index i0."""
    out = {}
    for exps, coeff in terms.items():
        main, sign, extra = ring.rmul_terms(exps, i0)
        c = coeff if sign > 0 else -coeff
        s = out.get(main)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(main, None)
        else:
            out[main] = s
        for exps2, factor in extra:
            c2 = coeff * factor
            s = out.get(exps2)
            s = c2 if s is None else s + c2
            if s.is_zero():
                out.pop(exps2, None)
            else:
                out[exps2] = s
    return out


def _multiply(u: Element, v: Element) -> Element:
    ring = u.ring
    out = {}
    for exps, cv in v.terms.items():
        cur = u.terms
        for i0, e in enumerate(exps):
            for _ in range(e):
                cur = _rmul_generator(ring, cur, i0)
        for e2, c in cur.items():
            add = cv * c
            s = out.get(e2)
            s = add if s is None else s + add
            if s.is_zero():
                out.pop(e2, None)
            else:
                out[e2] = s
    return Element(ring, out)


def normal_form(word, pres) -> Element:
    """Image of a word of 1-based generator indices in the PBW basis.

    The empty word maps to 1.
    """
    for letter in word:
        if not (1 <= letter <= pres.n):
            raise IndexOutOfRange(f"generator index {letter} outside 1..{pres.n}")
    terms = {(0,) * pres.n: pres.field.one}
    for letter in word:
        terms = _rmul_generator(pres, terms, letter - 1)
    return Element(pres, terms)


def multiply(u: Element, v: Element) -> Element:
    return u * v


def filtration_degree(u: Element):
    return u.filtration_degree()


def z2_parity(u: Element) -> str:
    return u.z2_parity()


def is_central(u: Element) -> bool:
    """True iff u commutes with every generator."""
    ring = u.ring
    for i in range(1, ring.n + 1):
        xi = Element.generator(ring, i)
        if u * xi != xi * u:
            return False
    return True


def omega(indices, pres) -> Element:
    """Fully antisymmetrized product over the given distinct 1-based
    indices: the signed sum of all orderings, in normal form."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError("omega requires distinct indices")
    total = Element.zero(pres)
    for perm in itertools.permutations(idx):
        sign = _perm_sign_of_word(idx, perm)
        term = normal_form(perm, pres)
        total = total + (term if sign > 0 else -term)
    return total


def _perm_sign_of_word(base, word):
    pos = {v: i for i, v in enumerate(base)}
    seq = [pos[w] for w in word]
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


def substitute_generators(u: Element, images, out_ring=None) -> Element:
    """Apply the algebra map x_i -> images[i-1] to u.

    The images live in out_ring (default: the ring of the images).  A
    power cache keeps repeated exponent blocks cheap.
    """
    if out_ring is None:
        out_ring = images[0].ring
    if u.ring.field != out_ring.field:
        raise PresentationMismatch("substitution across different scalar fields")
    pow_cache = [[Element.one(out_ring), img] for img in images]
    result = Element.zero(out_ring)

    def power(i0, e):
        cache = pow_cache[i0]
        while len(cache) <= e:
            cache.append(cache[-1] * cache[1])
        return cache[e]

    for exps, coeff in u.terms.items():
        term = Element.constant(out_ring, coeff)
        for i0, e in enumerate(exps):
            if e:
                term = term * power(i0, e)
        result = result + term
    return result


def monomials_up_to_degree(n: int, degree: int):
    """All exponent vectors of length n with total degree <= degree,
    ascending by degree and lexicographically within a degree."""
    out = []
    for d in range(degree + 1):
        block = []

        def rec_exact(prefix, remaining, slots):
            if slots == 1:
                block.append(tuple(prefix + [remaining]))
                return
            for e in range(remaining + 1):
                rec_exact(prefix + [e], remaining - e, slots - 1)

        rec_exact([], d, n)
        block.sort()
        out.extend(block)
    return out


# ----- display -----


def display_sort_key(exps):
    """Sort key for term display: degree descending, then exponent
    tuples ascending."""
    return (-sum(exps), exps)


def _format_monomial(exps, var):
    parts = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        parts.append(f"{var}{i + 1}" if e == 1 else f"{var}{i + 1}^{e}")
    return "*".join(parts)


def format_terms(terms: dict, var: str, field) -> str:
    """Shared renderer for Element (var='x') and center polynomials
    (var='y'); e.g. ``-x1*x2 + q^2``."""
    if not terms:
        return "0"
    chunks = []
    for exps in sorted(terms, key=display_sort_key):
        coeff = terms[exps]
        mon = _format_monomial(exps, var)
        sign, body, atomic = scalar_display_parts(coeff)
        if mon:
            if body == "1":
                piece = mon
            elif atomic:
                piece = f"{body}*{mon}"
            else:
                piece = f"({body})*{mon}"
        else:
            piece = body
        if not chunks:
            chunks.append(f"-{piece}" if sign < 0 else piece)
        else:
            chunks.append(f" - {piece}" if sign < 0 else f" + {piece}")
    return "".join(chunks)
