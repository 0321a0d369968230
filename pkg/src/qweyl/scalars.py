"""Exact arithmetic in K = (Q[a]/(m(a)))(q).

The coefficient field is built in two layers: a number field K0 given by a
monic integer minimal polynomial m(a), and rational functions in one
transcendental q over K0.  Elements of K0 are fixed-length tuples of
Fractions (coefficients of 1, a, ..., a^(d-1)); polynomials in q are
trimmed tuples of K0 elements.  Every Scalar is kept in canonical form:
denominator monic in q, gcd(numerator, denominator) = 1, zero stored
as 0/1.  Equality is therefore structural.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonInvertible, ParseError

_F0 = Fraction(0)
_F1 = Fraction(1)


def _int_nth_root(x: int, k: int):
    """Integer k-th root of x >= 0, or None if x is not a perfect power."""
    if x < 0:
        return None
    if x in (0, 1):
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    return r if r ** k == x else None


def _fraction_nth_root(x: Fraction, k: int):
    neg = x < 0
    if neg and k % 2 == 0:
        return None
    y = -x if neg else x
    rn = _int_nth_root(y.numerator, k)
    rd = _int_nth_root(y.denominator, k)
    if rn is None or rd is None:
        return None
    root = Fraction(rn, rd)
    return -root if neg else root


class NumberFieldSpec:
    """A number field Q[a]/(m(a)) given by its monic integer minimal
    polynomial.

    Degree-1 specs describe Q itself.  For degree >= 2 a rational-root
    check is run as a cheap necessary condition for irreducibility; full
    irreducibility is asserted by the caller and only detected lazily,
    when an inversion hits a zero divisor.
    """

    def __init__(self, minpoly):
        coeffs = tuple(int(c) for c in minpoly)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if list(minpoly) != [int(c) for c in minpoly]:
            raise ValueError("minimal polynomial must have integer coefficients")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        if self.degree >= 2:
            self._check_no_rational_root()

    def _check_no_rational_root(self):
        c0 = self.minpoly[0]
        candidates = {0} if c0 == 0 else set()
        r = 1
        while r * r <= abs(c0):
            if c0 % r == 0:
                candidates.update({r, -r, c0 // r, -(c0 // r)})
            r += 1
        for root in candidates:
            if sum(c * root ** i for i, c in enumerate(self.minpoly)) == 0:
                raise ValueError(
                    f"minimal polynomial has rational root {root}; not irreducible"
                )

    def __eq__(self, other):
        return isinstance(other, NumberFieldSpec) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberFieldSpec({list(self.minpoly)})"


RATIONALS = NumberFieldSpec((0, 1))  # m(a) = a, so a = 0 and K0 = Q


class ScalarField:
    """Arithmetic context for K = (Q[a]/(m(a)))(q)."""

    def __init__(self, spec: NumberFieldSpec = RATIONALS):
        self.spec = spec
        d = spec.degree
        self.d = d
        self.k0_zero = (_F0,) * d
        self.k0_one = (_F1,) + (_F0,) * (d - 1)
        # a^d, ..., a^(2d-2) reduced mod m, used by k0_mul
        self._apow = []
        if d > 1:
            red = tuple(Fraction(-c) for c in spec.minpoly[:-1])  # a^d
            self._apow.append(red)
            for _ in range(d - 2):
                red = self._shift_reduce(red)
                self._apow.append(red)
        self._p_one = (self.k0_one,)
        self.zero = Scalar(self, (), self._p_one)
        self.one = Scalar(self, self._p_one, self._p_one)

    def _shift_reduce(self, vec):
        # multiply a K0 vector by a, reducing with the precomputed a^d row
        d = self.d
        top = vec[d - 1]
        out = [_F0] + list(vec[: d - 1])
        if top:
            for i, c in enumerate(self._apow[0]):
                out[i] += top * c
        return tuple(out)

    # ----- K0 (number field) arithmetic on coefficient tuples -----

    def k0_from_fraction(self, x) -> tuple:
        return (Fraction(x),) + (_F0,) * (self.d - 1)

    def k0_is_zero(self, x) -> bool:
        return not any(x)

    def k0_add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def k0_sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def k0_neg(self, x):
        return tuple(-a for a in x)

    def k0_mul(self, x, y):
        d = self.d
        if d == 1:
            return (x[0] * y[0],)
        conv = [_F0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        conv[i + j] += a * b
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                red = self._apow[k - d]
                for i, r in enumerate(red):
                    out[i] += c * r
        return tuple(out)

    def k0_inv(self, x):
        """Inverse in Q[a]/(m); raises NonInvertible on a zero divisor."""
        if self.k0_is_zero(x):
            raise ZeroDivisionError("division by zero in number field")
        if self.d == 1:
            return (1 / x[0],)
        # extended Euclid for gcd(x, m) over Q[a]
        m = [Fraction(c) for c in self.spec.minpoly]
        r1 = list(x)
        while r1 and not r1[-1]:
            r1.pop()
        r0 = m
        s0, s1 = [], [_F1]
        while any(r1):
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        if len(r0) != 1:
            raise NonInvertible(
                "zero divisor encountered; the supplied minimal polynomial is reducible"
            )
        inv_lc = 1 / r0[0]
        out = [c * inv_lc for c in s0]
        out = out[: self.d] + [_F0] * max(0, self.d - len(out))
        # s0 has degree < deg m = d already, just pad
        return tuple(out[: self.d])

    def k0_pow(self, x, e: int):
        out = self.k0_one
        base = x
        if e < 0:
            base = self.k0_inv(x)
            e = -e
        while e:
            if e & 1:
                out = self.k0_mul(out, base)
            base = self.k0_mul(base, base)
            e >>= 1
        return out

    # ----- polynomials in q over K0 (trimmed tuples of K0 tuples) -----

    def p_trim(self, coeffs):
        n = len(coeffs)
        while n and not any(coeffs[n - 1]):
            n -= 1
        return tuple(coeffs[:n])

    def p_add(self, u, v):
        if len(u) < len(v):
            u, v = v, u
        out = list(u)
        for i, c in enumerate(v):
            out[i] = self.k0_add(out[i], c)
        return self.p_trim(out)

    def p_neg(self, u):
        return tuple(self.k0_neg(c) for c in u)

    def p_sub(self, u, v):
        return self.p_add(u, self.p_neg(v))

    def p_mul(self, u, v):
        if not u or not v:
            return ()
        out = [self.k0_zero] * (len(u) + len(v) - 1)
        for i, a in enumerate(u):
            if any(a):
                for j, b in enumerate(v):
                    if any(b):
                        out[i + j] = self.k0_add(out[i + j], self.k0_mul(a, b))
        return self.p_trim(out)

    def p_scale(self, u, c):
        if self.k0_is_zero(c):
            return ()
        return self.p_trim([self.k0_mul(a, c) for a in u])

    def p_divmod(self, u, v):
        if not v:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lc = self.k0_inv(v[-1])
        rem = list(u)
        dv = len(v) - 1
        quo = [self.k0_zero] * max(0, len(u) - dv)
        while len(rem) >= len(v):
            while rem and not any(rem[-1]):
                rem.pop()
            if len(rem) < len(v):
                break
            c = self.k0_mul(rem[-1], inv_lc)
            shift = len(rem) - len(v)
            quo[shift] = c
            for i, b in enumerate(v):
                rem[shift + i] = self.k0_sub(rem[shift + i], self.k0_mul(c, b))
            rem.pop()
        return self.p_trim(quo), self.p_trim(rem)

    def p_gcd(self, u, v):
        """Monic gcd in K0[q]."""
        a, b = self.p_trim(u), self.p_trim(v)
        while b:
            a, b = b, self.p_divmod(a, b)[1]
        if not a:
            return ()
        return self.p_scale(a, self.k0_inv(a[-1]))

    def p_pow(self, u, e: int):
        out = self._p_one
        base = u
        while e:
            if e & 1:
                out = self.p_mul(out, base)
            base = self.p_mul(base, base)
            e >>= 1
        return out

    # ----- Scalar construction -----

    def scalar(self, num, den=None) -> "Scalar":
        """Canonical Scalar from numerator/denominator polynomials."""
        if den is None:
            den = self._p_one
        num = self.p_trim(num)
        den = self.p_trim(den)
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if not num:
            return self.zero
        if den != self._p_one:
            g = self.p_gcd(num, den)
            if len(g) > 1:
                num = self.p_divmod(num, g)[0]
                den = self.p_divmod(den, g)[0]
            lc = den[-1]
            if lc != self.k0_one:
                inv = self.k0_inv(lc)
                num = self.p_scale(num, inv)
                den = self.p_scale(den, inv)
        return Scalar(self, num, den)

    def from_fraction(self, x) -> "Scalar":
        x = Fraction(x)
        if not x:
            return self.zero
        return Scalar(self, (self.k0_from_fraction(x),), self._p_one)

    def from_int(self, x: int) -> "Scalar":
        return self.from_fraction(x)

    def from_k0(self, vec) -> "Scalar":
        if self.k0_is_zero(vec):
            return self.zero
        return Scalar(self, (vec,), self._p_one)

    def q(self, power: int = 1) -> "Scalar":
        if power < 0:
            return self.q(-power).inverse()
        num = (self.k0_zero,) * power + (self.k0_one,)
        return Scalar(self, num, self._p_one)

    def a(self) -> "Scalar":
        if self.d == 1:
            # a is congruent to the root of the degree-1 minimal polynomial
            return self.from_fraction(-self.spec.minpoly[0])
        vec = (_F0, _F1) + (_F0,) * (self.d - 2)
        return self.from_k0(vec)

    def coerce(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field is not self and x.field != self:
                raise ValueError("scalar from a different field")
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    def parse(self, text: str) -> "Scalar":
        return _parse_scalar(self, text)

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"ScalarField({self.spec!r})"


def _qpoly_divmod(u, v):
    """divmod for plain Fraction-list polynomials (used by k0_inv)."""
    rem = list(u)
    quo = [_F0] * max(0, len(u) - len(v) + 1)
    inv_lc = 1 / v[-1]
    while len(rem) >= len(v):
        while rem and not rem[-1]:
            rem.pop()
        if len(rem) < len(v):
            break
        c = rem[-1] * inv_lc
        shift = len(rem) - len(v)
        quo[shift] = c
        for i, b in enumerate(v):
            rem[shift + i] -= c * b
        rem.pop()
    while rem and not rem[-1]:
        rem.pop()
    return quo, rem


def _qpoly_mul(u, v):
    if not u or not v:
        return []
    out = [_F0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    while out and not out[-1]:
        out.pop()
    return out


def _qpoly_sub(u, v):
    out = list(u) + [_F0] * max(0, len(v) - len(u))
    for i, b in enumerate(v):
        out[i] -= b
    while out and not out[-1]:
        out.pop()
    return out


class Scalar:
    """An element of K in canonical num/den form.  Immutable."""

    __slots__ = ("field", "num", "den", "_key")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._key = None

    # construction goes through ScalarField.scalar, which canonicalizes

    def key(self):
        if self._key is None:
            self._key = (self.num, self.den)
        return self._key

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == self.field._p_one and self.den == self.field._p_one

    def is_constant(self):
        return len(self.num) <= 1 and self.den == self.field._p_one

    def constant_value(self):
        """The K0 coefficient tuple of a constant scalar."""
        if not self.is_constant():
            raise ValueError("scalar is not constant in q")
        return self.num[0] if self.num else self.field.k0_zero

    def rational_value(self):
        vec = self.constant_value()
        if any(vec[1:]):
            raise ValueError("scalar is not rational")
        return vec[0]

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        f = self.field
        other = f.coerce(other)
        if self.den == f._p_one and other.den == f._p_one:
            return f.scalar(f.p_add(self.num, other.num))
        num = f.p_add(f.p_mul(self.num, other.den), f.p_mul(other.num, self.den))
        return f.scalar(num, f.p_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field.p_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self.field.coerce(other))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        f = self.field
        other = f.coerce(other)
        if self.den == f._p_one and other.den == f._p_one:
            return f.scalar(f.p_mul(self.num, other.num))
        return f.scalar(f.p_mul(self.num, other.num), f.p_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero scalar")
        return self.field.scalar(self.den, self.num)

    def __pow__(self, e: int):
        f = self.field
        if e == 0:
            return f.one
        base = self if e > 0 else self.inverse()
        e = abs(e)
        num = f.p_pow(base.num, e)
        den = f.p_pow(base.den, e)
        return f.scalar(num, den)  # powers of coprime polys stay coprime

    def sort_key(self):
        """A fixed total order on canonical scalars (for tie-breaking)."""
        flat_num = tuple(c for vec in self.num for c in vec)
        flat_den = tuple(c for vec in self.den for c in vec)
        lead = _lead_sign(self.num)
        return (len(self.num), len(self.den), 0 if lead >= 0 else 1, flat_num, flat_den)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)})"


def _lead_sign(num):
    if not num:
        return 0
    vec = num[-1]
    for c in reversed(vec):
        if c:
            return 1 if c > 0 else -1
    return 0


# ----- square and higher roots -----


def _monic_poly_nth_root(field, p, k):
    """Monic k-th root of a monic polynomial in q, or None."""
    deg = len(p) - 1
    if deg % k:
        return None
    m = deg // k
    root = [field.k0_zero] * m + [field.k0_one]
    kf = field.k0_from_fraction(Fraction(k))
    kinv = field.k0_inv(kf)
    for i in range(1, m + 1):
        cur = field.p_pow(field.p_trim(root), k)
        cur_c = cur[k * m - i] if len(cur) > k * m - i else field.k0_zero
        delta = field.k0_sub(p[k * m - i], cur_c)
        root[m - i] = field.k0_mul(delta, kinv)
    root = field.p_trim(root)
    if field.p_pow(root, k) != field.p_trim(p):
        return None
    return root


def _k0_nth_root_quadratic(field, w, k):
    """Closed-form k-th root in a degree-2 number field (k = 2 only)."""
    if k != 2:
        return _k0_nth_root_sympy(field, w, k)
    c0, c1, _ = (Fraction(c) for c in field.spec.minpoly)
    w0, w1 = w
    # v = 0 branch
    if not w1:
        u = _fraction_nth_root(w0, 2)
        if u is not None:
            return (u, _F0)
    # (u + v a)^2 = w with v != 0 reduces to a quadratic in V = v^2
    A = c1 * c1 - 4 * c0
    B = 2 * c1 * w1 - 4 * w0
    C = w1 * w1
    disc = B * B - 4 * A * C
    s = _fraction_nth_root(disc, 2)
    if s is None:
        return None
    for V in ((-B + s) / (2 * A), (-B - s) / (2 * A)):
        if V <= 0:
            continue
        v = _fraction_nth_root(V, 2)
        if v is None:
            continue
        for vv in (v, -v):
            u = (w1 + c1 * vv * vv) / (2 * vv)
            cand = (u, vv)
            if field.k0_mul(cand, cand) == w:
                return cand
    return None


def _k0_nth_root_sympy(field, w, k):
    """General number-field root via factoring z^k - w; assumes the
    minimal polynomial is irreducible."""
    import sympy

    asym, zsym = sympy.symbols("a z")
    mpoly = sympy.Poly(
        sum(int(c) * asym ** i for i, c in enumerate(field.spec.minpoly)), asym
    )
    alpha = sympy.CRootOf(mpoly, 0)
    dom = sympy.QQ.algebraic_field(alpha)
    w_expr = sum(
        sympy.Rational(c.numerator, c.denominator) * alpha ** i
        for i, c in enumerate(w)
    )
    poly = sympy.Poly(zsym ** k - w_expr, zsym, domain=dom)
    candidates = []
    for fac, _mult in poly.factor_list()[1]:
        if fac.degree() != 1:
            continue
        lead, const = fac.rep.to_list()
        root = dom.exquo(-const, lead)
        coeffs = list(reversed(root.to_list()))
        vec = tuple(
            Fraction(int(c.numerator), int(c.denominator)) for c in coeffs
        ) + (_F0,) * (field.d - len(coeffs))
        if field.k0_pow(vec, k) == w:
            candidates.append(vec)
    if not candidates:
        return None
    return min(candidates, key=lambda v: tuple(v))


def _k0_nth_root(field, w, k):
    if field.k0_is_zero(w):
        return field.k0_zero
    if field.d == 1:
        r = _fraction_nth_root(w[0], k)
        return None if r is None else (r,)
    # rational shortcut inside a bigger field
    if not any(w[1:]):
        r = _fraction_nth_root(w[0], k)
        if r is not None:
            return field.k0_from_fraction(r)
    if field.d == 2 and k == 2:
        return _k0_nth_root_quadratic(field, w, k)
    return _k0_nth_root_sympy(field, w, k)


def try_nth_root(x: Scalar, k: int):
    """Exact k-th root of x inside K, or None.  Never extends the field."""
    if k < 1:
        raise ValueError("root order must be >= 1")
    if k == 1 or x.is_zero():
        return x
    f = x.field
    lc = x.num[-1]
    num_monic = f.p_scale(x.num, f.k0_inv(lc))
    root_num = _monic_poly_nth_root(f, num_monic, k)
    if root_num is None:
        return None
    root_den = _monic_poly_nth_root(f, x.den, k)
    if root_den is None:
        return None
    root_lc = _k0_nth_root(f, lc, k)
    if root_lc is None:
        return None
    result = Scalar(f, f.p_scale(root_num, root_lc), root_den)
    assert result ** k == x
    return result


def try_sqrt(x: Scalar):
    """Exact square root of x inside K, or None when x is not a perfect
    square there."""
    return try_nth_root(x, 2)


# ----- scalar literal grammar -----
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := ('+'|'-')* power
#   power  := atom ('^' ('-')? INT)?
#   atom   := INT | 'q' | 'a' | '(' expr ')'


def _tokenize_scalar(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
        elif ch.isalpha():
            if ch not in ("q", "a") or (i + 1 < len(text) and text[i + 1].isalnum()):
                raise ParseError(f"unknown symbol starting at {text[i:i+8]!r}", col=i + 1)
            tokens.append(("NAME", ch, i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", col=i + 1)
    tokens.append(("END", None, len(text)))
    return tokens


class _ScalarParser:
    def __init__(self, field, tokens):
        self.field = field
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[0]}", col=tok[2] + 1)
        self.pos += 1
        return tok

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError("trailing input in scalar literal", col=tok[2] + 1)
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, col = self.take()
            rhs = self.factor()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero in scalar literal", col=col + 1)
                val = val / rhs
        return val

    def factor(self):
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        val = self.power()
        return val if sign > 0 else -val

    def power(self):
        val = self.atom()
        if self.peek()[0] == "^":
            self.take()
            esign = 1
            while self.peek()[0] in ("+", "-"):
                if self.take()[0] == "-":
                    esign = -esign
            tok = self.take("INT")
            e = esign * tok[1]
            if e < 0 and val.is_zero():
                raise ParseError("zero raised to a negative power", col=tok[2] + 1)
            val = val ** e
        return val

    def atom(self):
        kind, value, col = self.take()
        if kind == "INT":
            return self.field.from_int(value)
        if kind == "NAME":
            return self.field.q() if value == "q" else self.field.a()
        if kind == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected token {kind!r} in scalar literal", col=col + 1)


def _parse_scalar(field, text):
    return _ScalarParser(field, _tokenize_scalar(text)).parse()


# ----- display -----


def _format_k0(vec):
    """Render a K0 element as a polynomial in a; '' impossible (zero -> '0')."""
    parts = []
    for i in range(len(vec) - 1, -1, -1):
        c = vec[i]
        if not c:
            continue
        if i == 0:
            body = str(c if c > 0 else -c)
        else:
            apow = "a" if i == 1 else f"a^{i}"
            mag = c if c > 0 else -c
            body = apow if mag == 1 else f"{mag}*{apow}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts) if parts else "0"


def _k0_term_count(vec):
    return sum(1 for c in vec if c)


def _format_qpoly(field, poly):
    """Render a polynomial in q; returns (text, number_of_terms)."""
    parts = []
    nterms = 0
    for e in range(len(poly) - 1, -1, -1):
        vec = poly[e]
        if field.k0_is_zero(vec):
            continue
        nterms += 1
        qpow = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
        multi = _k0_term_count(vec) > 1
        body = _format_k0(vec)
        neg = False
        if not multi and body.startswith("-"):
            neg = True
            body = body[1:]
        if qpow:
            if multi:
                body = f"({body})*{qpow}"
            elif body == "1":
                body = qpow
            else:
                body = f"{body}*{qpow}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return ("".join(parts) if parts else "0"), nterms


def format_scalar(x: Scalar) -> str:
    f = x.field
    if x.is_zero():
        return "0"
    num_txt, num_terms = _format_qpoly(f, x.num)
    if x.den == f._p_one:
        return num_txt
    den_txt, den_terms = _format_qpoly(f, x.den)
    if num_terms > 1:
        num_txt = f"({num_txt})"
    if den_terms > 1 or "*" in den_txt:
        den_txt = f"({den_txt})"
    return f"{num_txt}/{den_txt}"


def scalar_display_parts(x: Scalar):
    """(sign, body, atomic) for embedding coefficients in term displays.

    atomic means the body can be joined to a monomial with '*' without
    parentheses.
    """
    f = x.field
    if x.is_zero():
        return 1, "0", True
    sign = _lead_sign(x.num)
    y = -x if sign < 0 else x
    txt = format_scalar(y)
    single_num = sum(1 for vec in y.num if not f.k0_is_zero(vec)) == 1
    atomic = y.den == f._p_one and single_num and _k0_term_count(y.num[-1]) <= 1
    return sign, txt, atomic
