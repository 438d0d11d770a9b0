"""Monomials of fixed total degree and dense homogeneous forms.

Monomials are indexed in graded-lexicographic order with x1 > x2 > ... > xn;
within one total degree that is plain descending lex on exponent vectors.
Forms are dense coefficient vectors over a pluggable coefficient domain,
either a prime field or the exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bounds import binomial, dim_forms

__all__ = [
    "monomials",
    "mono_rank",
    "mono_unrank",
    "PrimeDomain",
    "RationalDomain",
    "QQ",
    "Point",
    "Form",
    "multiply",
    "evaluate",
    "product_index_table",
    "form_to_text",
]


@lru_cache(maxsize=None)
def monomials(n: int, e: int) -> tuple[tuple[int, ...], ...]:
    """All degree-e exponent vectors in n variables, in index order."""
    if n < 1 or e < 0:
        raise ValueError(f"need n >= 1 and e >= 0, got ({n}, {e})")

    def gen(k, rem):
        if k == 1:
            yield (rem,)
            return
        for a in range(rem, -1, -1):
            for rest in gen(k - 1, rem - a):
                yield (a,) + rest

    return tuple(gen(n, e))


def mono_rank(exponents) -> int:
    """Index of an exponent vector among all monomials of its degree.

    Computed by counting predecessors with binomial sums, O(n) per call.
    """
    exponents = tuple(exponents)
    n = len(exponents)
    if n < 1 or any(a < 0 for a in exponents):
        raise ValueError(f"invalid exponent vector {exponents}")
    rem = sum(exponents)
    idx = 0
    for k in range(n - 1):
        a = exponents[k]
        # monomials sharing the prefix but with k-th exponent above a come first
        if rem - a - 1 >= 0:
            idx += binomial((n - k - 1) + (rem - a - 1), n - k - 1)
        rem -= a
    return idx


def mono_unrank(n: int, e: int, index: int) -> tuple[int, ...]:
    """Inverse of mono_rank for monomials of degree e in n variables."""
    total = dim_forms(n, e)
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range for {total} monomials")
    expo = []
    rem = e
    for k in range(n - 1):
        vars_left = n - k - 1
        for a in range(rem, -1, -1):
            block = dim_forms(vars_left, rem - a)
            if index < block:
                expo.append(a)
                rem -= a
                break
            index -= block
    expo.append(rem)
    return tuple(expo)


@lru_cache(maxsize=None)
def product_index_table(n: int, e1: int, e2: int) -> tuple[tuple[int, ...], ...]:
    """table[i][j] = index of (monomial i of degree e1) * (monomial j of degree e2)."""
    m1 = monomials(n, e1)
    m2 = monomials(n, e2)
    return tuple(
        tuple(mono_rank(tuple(a + b for a, b in zip(u, v))) for v in m2) for u in m1
    )


class PrimeDomain:
    """Field of integers mod a prime p, elements held as residues in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"prime modulus must be >= 2, got {p}")
        self.p = p

    zero = 0
    one = 1

    def convert(self, x):
        """Coerce an int or Fraction into the field.

        Fractions need a denominator coprime to p; otherwise ValueError.
        """
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"denominator of {x} is divisible by p={self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeDomain) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeDomain", self.p))

    def __repr__(self):
        return f"PrimeDomain({self.p})"


class RationalDomain:
    """Exact rational numbers (arbitrary-precision fractions)."""

    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __hash__(self):
        return hash("RationalDomain")

    def __repr__(self):
        return "QQ"


QQ = RationalDomain()


@dataclass(frozen=True)
class Point:
    """A projective point, stored through one choice of coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords or all(c == 0 for c in self.coords):
            raise ValueError("a point needs at least one nonzero coordinate")

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Form:
    """A homogeneous polynomial as a dense coefficient vector.

    coeffs[i] is the coefficient of the i-th degree-`degree` monomial in
    index order; the length is always dim_forms(n, degree).
    """

    n: int
    degree: int
    coeffs: tuple
    domain: object

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        expect = dim_forms(self.n, self.degree)
        if len(self.coeffs) != expect:
            raise ValueError(
                f"expected {expect} coefficients for degree {self.degree} in "
                f"{self.n} variables, got {len(self.coeffs)}"
            )

    @classmethod
    def zero(cls, n, degree, domain=QQ):
        return cls(n, degree, (domain.zero,) * dim_forms(n, degree), domain)

    @classmethod
    def from_coeffs(cls, n, degree, coeffs, domain=QQ):
        return cls(n, degree, tuple(domain.convert(c) for c in coeffs), domain)

    @classmethod
    def from_terms(cls, n, degree, terms, domain=QQ):
        """Build from {exponent tuple: coefficient}."""
        coeffs = [domain.zero] * dim_forms(n, degree)
        for expo, c in terms.items():
            if sum(expo) != degree or len(expo) != n:
                raise ValueError(f"term {expo} does not have degree {degree} in {n} vars")
            idx = mono_rank(expo)
            coeffs[idx] = domain.add(coeffs[idx], domain.convert(c))
        return cls(n, degree, tuple(coeffs), domain)

    def is_zero(self) -> bool:
        return all(c == self.domain.zero for c in self.coeffs)

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other, same_degree=True)
        add = self.domain.add
        return Form(
            self.n,
            self.degree,
            tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)),
            self.domain,
        )

    def __sub__(self, other: "Form") -> "Form":
        self._check_compatible(other, same_degree=True)
        sub = self.domain.sub
        return Form(
            self.n,
            self.degree,
            tuple(sub(a, b) for a, b in zip(self.coeffs, other.coeffs)),
            self.domain,
        )

    def scale(self, c) -> "Form":
        c = self.domain.convert(c)
        mul = self.domain.mul
        return Form(self.n, self.degree, tuple(mul(c, a) for a in self.coeffs), self.domain)

    def __mul__(self, other: "Form") -> "Form":
        return multiply(self, other)

    def evaluate(self, point: Point):
        return evaluate(self, point)

    def reduce_mod(self, p: int) -> "Form":
        """Image of a rational form in the prime field F_p."""
        gf = PrimeDomain(p)
        return Form(self.n, self.degree, tuple(gf.convert(c) for c in self.coeffs), gf)

    def _check_compatible(self, other: "Form", same_degree: bool = False):
        if not isinstance(other, Form):
            raise ValueError(f"expected a Form, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"variable counts differ: {self.n} vs {other.n}")
        if other.domain != self.domain:
            raise ValueError(f"coefficient domains differ: {self.domain} vs {other.domain}")
        if same_degree and other.degree != self.degree:
            raise ValueError(f"degrees differ: {self.degree} vs {other.degree}")


def multiply(f: Form, g: Form) -> Form:
    """Exact product of two forms over the same domain."""
    f._check_compatible(g)
    dom = f.domain
    table = product_index_table(f.n, f.degree, g.degree)
    out = [dom.zero] * dim_forms(f.n, f.degree + g.degree)
    for i, ci in enumerate(f.coeffs):
        if ci == dom.zero:
            continue
        row = table[i]
        for j, cj in enumerate(g.coeffs):
            if cj == dom.zero:
                continue
            k = row[j]
            out[k] = dom.add(out[k], dom.mul(ci, cj))
    return Form(f.n, f.degree + g.degree, tuple(out), dom)


def evaluate(f: Form, point: Point):
    """Value of f at the point's coordinate representative.

    Homogeneous, so rescaling the coordinates by c rescales the value by
    c**degree.
    """
    if point.n != f.n:
        raise ValueError(f"point has {point.n} coordinates, form has {f.n} variables")
    dom = f.domain
    coords = [dom.convert(c) for c in point.coords]
    # powers[v][k] = coords[v] ** k
    powers = []
    for x in coords:
        row = [dom.one]
        for _ in range(f.degree):
            row.append(dom.mul(row[-1], x))
        powers.append(row)
    acc = dom.zero
    for c, expo in zip(f.coeffs, monomials(f.n, f.degree)):
        if c == dom.zero:
            continue
        term = c
        for v, a in enumerate(expo):
            if a:
                term = dom.mul(term, powers[v][a])
        acc = dom.add(acc, term)
    return acc


def _coeff_to_text(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c) if isinstance(c, Fraction) else c)


def form_to_text(f: Form) -> str:
    """Render as "c * x1^a1 ... xn^an + ..." with exact "p/q" coefficients."""
    terms = []
    for c, expo in zip(f.coeffs, monomials(f.n, f.degree)):
        if c == f.domain.zero:
            continue
        mono = " ".join(f"x{v + 1}^{a}" for v, a in enumerate(expo))
        terms.append(f"{_coeff_to_text(c)} * {mono}")
    return " + ".join(terms) if terms else "0"
