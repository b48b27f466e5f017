"""Exact arithmetic in prime fields F_p and their extensions F_{p^m}.

A field is described by a :class:`FieldSpec` holding the characteristic ``p``,
the extension degree ``m`` and a monic degree-``m`` modulus over F_p.  For
``m >= 2`` the modulus must be primitive, so the residue class of ``x``
generates the whole multiplicative group.  Elements are immutable coefficient
vectors ``(b_0, ..., b_{m-1})`` with respect to the power basis of ``x``;
every element also carries an integer ``code`` (base-``p`` packing of the
coefficients) used for table lookups and serialization.

Construction goes through :func:`make_field`, which validates primality and
primitivity, picks the lexicographically smallest primitive modulus when none
is given, and caches specs so repeated lookups share arithmetic tables.

Small fields (order up to ``2**16``) intern all their elements and keep
log/antilog tables; the smallest ones additionally keep dense add/mul tables.
Larger fields fall back to plain polynomial arithmetic.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import FieldMismatch, NotPrime, NotPrimitive

_INTERN_LIMIT = 1 << 16  # intern elements and build log/antilog up to this order
_LOOKUP_LIMIT = 512      # dense add/mul tables up to this order


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate at the scales used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _code_to_coeffs(code: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        out.append(code % p)
        code //= p
    return tuple(out)


def _coeffs_to_code(coeffs: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


def _mul_coeffs(a, b, p, m, x_pow_m):
    """Product of two coefficient tuples modulo the field modulus.

    x_pow_m holds the coefficients of x^m reduced by the modulus.
    """
    if m == 1:
        return ((a[0] * b[0]) % p,)
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[k] % p
        if c:
            base = k - m
            for i, ri in enumerate(x_pow_m):
                if ri:
                    prod[base + i] += c * ri
        prod[k] = 0
    return tuple(v % p for v in prod[:m])


def _pow_coeffs(a, e, p, m, x_pow_m):
    result = tuple([1] + [0] * (m - 1))
    base = a
    while e:
        if e & 1:
            result = _mul_coeffs(result, base, p, m, x_pow_m)
        base = _mul_coeffs(base, base, p, m, x_pow_m)
        e >>= 1
    return result


def _passes_order_test(p: int, m: int, pi: tuple[int, ...]) -> bool:
    """True iff the class of x modulo the monic polynomial pi + x^m has
    multiplicative order exactly p^m - 1.

    That is equivalent to pi being primitive: a full-order unit forces the
    quotient ring to be a field and pi to be the minimal polynomial of a
    generator.
    """
    n = p ** m - 1
    x_pow_m = tuple((-a) % p for a in pi)
    one = tuple([1] + [0] * (m - 1))
    x = tuple([0, 1] + [0] * (m - 2)) if m >= 2 else (x_pow_m[0],)
    if _pow_coeffs(x, n, p, m, x_pow_m) != one:
        return False
    for q in prime_factors(n):
        if _pow_coeffs(x, n // q, p, m, x_pow_m) == one:
            return False
    return True


class FieldElem:
    """Element of F_{p^m} as coefficients (b_0, ..., b_{m-1}) over F_p."""

    __slots__ = ("spec", "coeffs", "code")

    def __init__(self, spec: "FieldSpec", coeffs: tuple[int, ...], code: int):
        self.spec = spec
        self.coeffs = coeffs
        self.code = code

    def _coerce(self, other):
        spec = self.spec
        if isinstance(other, FieldElem):
            if other.spec is spec or other.spec == spec:
                return other
            raise FieldMismatch(
                f"operands live in different fields: {self.spec!r} vs {other.spec!r}")
        if isinstance(other, int):
            return spec.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        spec = self.spec
        t = spec._add_t
        if t is not None:
            return spec._elems[t[self.code][other.code]]
        p = spec.p
        coeffs = tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs))
        return spec._from_coeffs(coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        spec = self.spec
        if spec.p == 2:
            return self
        p = spec.p
        return spec._from_coeffs(tuple((-x) % p for x in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        spec = self.spec
        t = spec._mul_t
        if t is not None:
            return spec._elems[t[self.code][other.code]]
        log = spec._log
        if log is not None:
            a, b = self.code, other.code
            if a == 0 or b == 0:
                return spec._elems[0]
            return spec._elems[spec._exp[(log[a] + log[b]) % (spec.order - 1)]]
        coeffs = _mul_coeffs(self.coeffs, other.coeffs, spec.p, spec.m, spec._x_pow_m)
        return spec._from_coeffs(coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, e: int):
        spec = self.spec
        if self.code == 0:
            if e < 0:
                raise ZeroDivisionError("inverse power of the zero element")
            return spec.one if e == 0 else spec.zero
        n = spec.order - 1
        e %= n
        log = spec._log
        if log is not None:
            return spec._elems[spec._exp[(log[self.code] * e) % n]]
        coeffs = _pow_coeffs(self.coeffs, e, spec.p, spec.m, spec._x_pow_m)
        return spec._from_coeffs(coeffs)

    def inv(self) -> "FieldElem":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if self.code == 0:
            raise ZeroDivisionError("inverse of the zero element")
        return self ** (-1)

    def lift(self, target: "FieldSpec") -> "FieldElem":
        """Embed an F_p element into an extension of F_p as a constant."""
        if self.spec.m != 1:
            raise FieldMismatch("only ground-field elements can be lifted")
        if target.p != self.spec.p:
            raise FieldMismatch("lift target has a different characteristic")
        return target.from_code(self.code)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.code == other.code and (
            other.spec is self.spec or other.spec == self.spec)

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        return hash((self.spec._hash, self.code))

    def __repr__(self):
        return f"{self.spec!r}({list(self.coeffs)})"


class FieldSpec:
    """Descriptor of F_{p^m} plus its arithmetic tables.

    ``pi`` holds the low coefficients (a_0, ..., a_{m-1}) of the monic
    modulus a_0 + a_1 x + ... + x^m.  Two specs with equal (p, m, pi) define
    identical arithmetic.  Instances are immutable after construction and
    safe to share across threads; prefer :func:`make_field`, which caches.
    """

    __slots__ = ("p", "m", "pi", "order", "_hash", "_x_pow_m", "_gen_code",
                 "_elems", "_log", "_exp", "_add_t", "_mul_t", "_cache",
                 "__weakref__")

    def __init__(self, p: int, m: int, pi: tuple[int, ...]):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        pi = tuple(int(a) % p for a in pi)
        if len(pi) != m:
            raise ValueError("modulus must have degree exactly m")
        if m >= 2 and not _passes_order_test(p, m, pi):
            raise NotPrimitive(
                f"modulus {list(pi) + [1]} is not primitive over GF({p})")
        self.p = p
        self.m = m
        self.pi = pi
        self.order = p ** m
        self._hash = hash((p, m, pi))
        self._x_pow_m = tuple((-a) % p for a in pi)
        self._cache: dict = {}
        self._gen_code = self._find_generator_code()
        if self.order <= _INTERN_LIMIT:
            self._elems = [FieldElem(self, _code_to_coeffs(c, p, m), c)
                           for c in range(self.order)]
            self._log, self._exp = self._build_log_tables()
        else:
            self._elems = None
            self._log = self._exp = None
        if self.order <= _LOOKUP_LIMIT:
            self._add_t, self._mul_t = self._build_dense_tables()
        else:
            self._add_t = self._mul_t = None

    # -- construction helpers -------------------------------------------------

    def _find_generator_code(self) -> int:
        if self.m >= 2:
            return self.p  # the class of x; full order by the modulus check
        p = self.p
        if p == 2:
            return 1
        n = p - 1
        for g in range(2, p):
            if all(pow(g, n // q, p) != 1 for q in prime_factors(n)):
                return g
        raise AssertionError("no generator found; p is not prime?")

    def _build_log_tables(self):
        n = self.order - 1
        exp = [0] * n
        log = [-1] * self.order
        gen = _code_to_coeffs(self._gen_code, self.p, self.m)
        acc = tuple([1] + [0] * (self.m - 1))
        for k in range(n):
            code = _coeffs_to_code(acc, self.p)
            exp[k] = code
            log[code] = k
            acc = _mul_coeffs(acc, gen, self.p, self.m, self._x_pow_m)
        assert _coeffs_to_code(acc, self.p) == 1, "generator does not have full order"
        return log, exp

    def _build_dense_tables(self):
        p, m, order = self.p, self.m, self.order
        coeffs = [_code_to_coeffs(c, p, m) for c in range(order)]
        add_t = []
        mul_t = []
        for a in range(order):
            ca = coeffs[a]
            add_t.append([_coeffs_to_code(
                tuple((x + y) % p for x, y in zip(ca, coeffs[b])), p)
                for b in range(order)])
            mul_t.append([_coeffs_to_code(
                _mul_coeffs(ca, coeffs[b], p, m, self._x_pow_m), p)
                for b in range(order)])
        return add_t, mul_t

    # -- element factories ----------------------------------------------------

    def _from_coeffs(self, coeffs: tuple[int, ...]) -> FieldElem:
        elems = self._elems
        if elems is not None:
            return elems[_coeffs_to_code(coeffs, self.p)]
        return FieldElem(self, coeffs, _coeffs_to_code(coeffs, self.p))

    def from_code(self, code: int) -> FieldElem:
        """Element with base-p packed coefficient code in [0, p^m)."""
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for {self!r}")
        elems = self._elems
        if elems is not None:
            return elems[code]
        return FieldElem(self, _code_to_coeffs(code, self.p, self.m), code)

    def element(self, value) -> FieldElem:
        """Coerce an int (constant mod p), coefficient sequence, or element."""
        if isinstance(value, FieldElem):
            if value.spec is self or value.spec == self:
                return value
            raise FieldMismatch(f"element of {value.spec!r} is not in {self!r}")
        if isinstance(value, int):
            return self.from_code(value % self.p)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            if any(coeffs[self.m:]):
                raise ValueError("coefficient vector longer than the degree")
            coeffs = coeffs[: self.m]
        coeffs += [0] * (self.m - len(coeffs))
        return self._from_coeffs(tuple(coeffs))

    @property
    def zero(self) -> FieldElem:
        return self.from_code(0)

    @property
    def one(self) -> FieldElem:
        return self.from_code(1)

    def elements(self) -> Iterator[FieldElem]:
        """All elements in ascending code order."""
        for code in range(self.order):
            yield self.from_code(code)

    def nonzero_elements(self) -> Iterator[FieldElem]:
        for code in range(1, self.order):
            yield self.from_code(code)

    def random_element(self, rng, nonzero: bool = False) -> FieldElem:
        return self.from_code(rng.randrange(1 if nonzero else 0, self.order))

    @property
    def modulus_coeffs(self) -> tuple[int, ...]:
        """Full modulus coefficient vector (a_0, ..., a_{m-1}, 1)."""
        return self.pi + (1,)

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self.p == other.p and self.m == other.m and self.pi == other.pi

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


_SPEC_CACHE: dict[tuple[int, int, tuple[int, ...]], FieldSpec] = {}
_DEFAULT_MODULUS_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive monic modulus, coefficients
    compared low-degree-first.  For m = 1 the conventional placeholder is x;
    ground-field arithmetic never consults it."""
    key = (p, m)
    hit = _DEFAULT_MODULUS_CACHE.get(key)
    if hit is not None:
        return hit
    if m == 1:
        pi = (0,)
    else:
        pi = None
        for code in range(p ** m):
            cand = tuple(reversed(_code_to_coeffs(code, p, m)))
            if cand[0] == 0:
                continue  # x divides, so the class of x can never be a unit
            if _passes_order_test(p, m, cand):
                pi = cand
                break
        assert pi is not None, "a primitive polynomial always exists"
    _DEFAULT_MODULUS_CACHE[key] = pi
    return pi


def _normalize_modulus(p: int, m: int, pi) -> tuple[int, ...]:
    coeffs = getattr(pi, "coeffs", pi)
    vals = []
    for c in coeffs:
        code = getattr(c, "code", c)
        vals.append(int(code) % p)
    if len(vals) == m + 1:
        if vals[-1] != 1:
            raise ValueError("modulus must be monic")
        vals = vals[:-1]
    if len(vals) != m:
        raise ValueError(
            f"modulus must have degree {m}: got coefficient vector of length {len(vals)}")
    return tuple(vals)


def make_field(p: int, m: int, pi=None) -> FieldSpec:
    """Build (or fetch from cache) the field F_{p^m}.

    ``pi`` may be omitted (lexicographically smallest primitive modulus is
    selected), or given as a low-degree-first coefficient sequence of length
    m (leading 1 implicit) or m+1 (explicit leading 1), or as any object with
    a ``coeffs`` attribute.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise ValueError("extension degree must be a positive integer")
    if pi is None:
        pi_t = _default_modulus(p, m)
    else:
        pi_t = _normalize_modulus(p, m, pi)
    key = (p, m, pi_t)
    spec = _SPEC_CACHE.get(key)
    if spec is None:
        spec = FieldSpec(p, m, pi_t)
        _SPEC_CACHE[key] = spec
    return spec


def prime_field(p_or_spec) -> FieldSpec:
    """The ground field F_p of a spec (or of a prime given directly)."""
    if isinstance(p_or_spec, FieldSpec):
        return make_field(p_or_spec.p, 1)
    return make_field(p_or_spec, 1)


def primitive_element(spec: FieldSpec) -> FieldElem:
    """A generator of the multiplicative group.

    For m >= 2 this is the class of x, primitive because the modulus is.
    For m = 1 it is the smallest generator of F_p* (the element 1 when p = 2).
    """
    return spec.from_code(spec._gen_code)


def minpoly_degree(e: FieldElem) -> int:
    """Degree of the minimal polynomial of e over F_p.

    Computed as the size of the orbit of e under the p-power map; always a
    divisor of m.  The zero element has degree 1 (annihilated by x).
    """
    p = e.spec.p
    y = e ** p
    d = 1
    while y != e:
        y = y ** p
        d += 1
    return d


def conjugates(e: FieldElem) -> list[FieldElem]:
    """Orbit of e under the p-power map: e, e^p, e^{p^2}, ..."""
    out = [e]
    p = e.spec.p
    y = e ** p
    while y != e:
        out.append(y)
        y = y ** p
    return out


# -- element notation ---------------------------------------------------------


def element_exponent(e: FieldElem) -> int | None:
    """k such that e = a^k for the canonical generator a, or None for zero."""
    if e.code == 0:
        return None
    spec = e.spec
    if spec._log is not None:
        return spec._log[e.code]
    acc = spec.one
    gen = spec.from_code(spec._gen_code)
    for k in range(spec.order - 1):
        if acc == e:
            return k
        acc = acc * gen
    raise AssertionError("generator does not reach the element")


def format_element(e: FieldElem, style: str = "coeffs"):
    """Serialize an element as a coefficient list or as 'a^k' ('a^inf' = 0)."""
    if style == "coeffs":
        return list(e.coeffs)
    if style == "power":
        k = element_exponent(e)
        return "a^inf" if k is None else f"a^{k}"
    raise ValueError(f"unknown element style {style!r}")


def parse_element(spec: FieldSpec, value) -> FieldElem:
    """Parse an element from an int (constant mod p), a coefficient list, or
    an 'a^k' / 'a^inf' exponent string."""
    if isinstance(value, str):
        text = value.strip()
        if not text.startswith("a^"):
            raise ValueError(f"cannot parse element notation {value!r}")
        suffix = text[2:]
        if suffix == "inf":
            return spec.zero
        return primitive_element(spec) ** int(suffix)
    return spec.element(value)
