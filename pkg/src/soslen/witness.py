"""Rational sums of squares with certified exact length.

A certificate is built from s random rational points: the witness form is
the sum of squares of a canonical basis of the degree-d forms vanishing on
them.  Its length is pinned from both sides.  The upper bound is the basis
size b = N_d - s.  For the lower bound, every summand of any
representation must vanish on the (real) points, hence lies in the span of
the basis; and the pairwise products of the basis are independent —
witnessed by full row rank of their coefficient matrix mod p, which
implies full rational rank — so the symmetric coefficient tensor of every
representation coincides with that of the basis representation, whose rank
is b.  The certified length claim is unconditional for the recorded
points; no conjecture enters.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bounds import DegreeParams, binomial, dim_forms, s_min
from .errors import CertificationError, GenericityError
from .generic import DEFAULT_SEED, derive_seed, pair_products_rank
from .linalg import (
    DEFAULT_PRIMES,
    RationalMatrix,
    kernel_basis_rational,
    rank_rational,
)
from .ring import QQ, Form, Point, monomials, product_index_table

__all__ = [
    "COORD_BOUND",
    "SosRepresentation",
    "GramTensor",
    "LengthCertificate",
    "build_witness",
    "basis_representation",
    "gram_tensor",
    "gram_equivalent",
    "certify_unique_representation",
    "random_rational_orthogonal",
    "mix_representation",
    "random_mix",
    "save_certificate",
    "load_certificate",
    "save_representation",
    "load_sos_file",
]

# Point coordinates are drawn from [-COORD_BOUND, COORD_BOUND]: small enough
# to keep the fraction-free kernel entries manageable, large enough that the
# genericity gate essentially always passes on the first round.
COORD_BOUND = 1000


@dataclass(frozen=True)
class SosRepresentation:
    """A tuple of degree-d forms together with the sum of their squares."""

    summands: tuple[Form, ...]
    target: Form

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise ValueError("need at least one summand")
        n, d = self.summands[0].n, self.summands[0].degree
        for q in self.summands:
            if q.n != n or q.degree != d or q.domain != QQ:
                raise ValueError("summands must be rational forms of one (n, degree)")
        total = Form.zero(n, 2 * d, QQ)
        for q in self.summands:
            total = total + q * q
        if total.coeffs != self.target.coeffs or self.target.degree != 2 * d:
            raise ValueError("summand squares do not sum to the stated target")

    @classmethod
    def from_summands(cls, summands) -> "SosRepresentation":
        summands = tuple(summands)
        n, d = summands[0].n, summands[0].degree
        total = Form.zero(n, 2 * d, QQ)
        for q in summands:
            total = total + q * q
        return cls(summands=summands, target=total)

    @property
    def n(self) -> int:
        return self.summands[0].n

    @property
    def d(self) -> int:
        return self.summands[0].degree


@dataclass(frozen=True)
class GramTensor:
    """Symmetric coefficient tensor sum(v_i v_i^T) in the full monomial basis."""

    n: int
    d: int
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def basis(self):
        return monomials(self.n, self.d)

    def rank(self) -> int:
        return rank_rational(RationalMatrix(self.matrix))


def gram_tensor(rep: SosRepresentation) -> GramTensor:
    """Exact symmetric tensor of a representation; rank = dim span(summands)."""
    N = dim_forms(rep.n, rep.d)
    mat = [[Fraction(0)] * N for _ in range(N)]
    for q in rep.summands:
        coeffs = q.coeffs
        for i in range(N):
            ci = coeffs[i]
            if ci:
                row = mat[i]
                for j in range(N):
                    if coeffs[j]:
                        row[j] += ci * coeffs[j]
    return GramTensor(rep.n, rep.d, tuple(tuple(row) for row in mat))


def gram_equivalent(rep1: SosRepresentation, rep2: SosRepresentation) -> bool:
    """Whether two representations of one form are orthogonally equivalent.

    Over a real coefficient field equal tensors are equivalent
    representations and conversely, so exact entrywise comparison decides.
    """
    if (rep1.n, rep1.d) != (rep2.n, rep2.d):
        raise ValueError("representations live in different spaces")
    if rep1.target.coeffs != rep2.target.coeffs:
        raise ValueError("representations have different targets")
    return gram_tensor(rep1).matrix == gram_tensor(rep2).matrix


@dataclass(frozen=True)
class LengthCertificate:
    """Self-contained record pinning the exact sos length of the witness.

    The fields mirror the serialized format: integer points, the canonical
    integer basis of the vanishing forms (graded-lex coefficient order),
    the witness coefficients, and the injectivity evidence (primes at
    which the pair-product matrix reached full row rank).
    """

    n: int
    d: int
    s: int
    primes: tuple[int, ...]
    seed: int
    points: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]
    witness: tuple[int, ...]
    length: int
    injectivity_rank: int

    @property
    def nonnegativity_note(self) -> str:
        return "nonnegative on real points: the witness is a sum of squares by construction"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "s": self.s,
            "primes": list(self.primes),
            "seed": self.seed,
            "points": [list(p) for p in self.points],
            "basis": [list(v) for v in self.basis],
            "witness": list(self.witness),
            "length": self.length,
            "injectivity_rank": self.injectivity_rank,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LengthCertificate":
        return cls(
            n=data["n"],
            d=data["d"],
            s=data["s"],
            primes=tuple(data["primes"]),
            seed=data["seed"],
            points=tuple(tuple(p) for p in data["points"]),
            basis=tuple(tuple(v) for v in data["basis"]),
            witness=tuple(data["witness"]),
            length=data["length"],
            injectivity_rank=data["injectivity_rank"],
        )


def _eval_rows_int(points, n: int, e: int) -> list[list[int]]:
    """Exact integer evaluation matrix: one row of monomial values per point."""
    monos = monomials(n, e)
    rows = []
    for coords in points:
        pw = [[x**k for k in range(e + 1)] for x in coords]
        row = []
        for expo in monos:
            val = 1
            for v, a in enumerate(expo):
                if a:
                    val *= pw[v][a]
            row.append(val)
        rows.append(row)
    return rows


def _sum_of_squares_int(vectors, n: int, d: int) -> list[int]:
    table = product_index_table(n, d, d)
    out = [0] * dim_forms(n, 2 * d)
    for v in vectors:
        nz = [(i, c) for i, c in enumerate(v) if c]
        for i, ci in nz:
            row = table[i]
            for j, cj in nz:
                out[row[j]] += ci * cj
    return out


def build_witness(
    n: int,
    d: int,
    s: int | None = None,
    seed: int = DEFAULT_SEED,
    primes=DEFAULT_PRIMES,
    rounds: int = 5,
) -> LengthCertificate:
    """Construct a rational sum of squares whose exact length is N_d - s.

    Samples s integer points, checks genericity exactly over the
    rationals, takes the canonical integer kernel basis of the evaluation
    matrix, and certifies injectivity of the pair-product map by full row
    rank mod p.  Defaults to the smallest certifiable point count
    s_min(n, d).
    """
    if n < 3 or d < 2:
        raise ValueError(f"witness construction needs n >= 3 and d >= 2, got ({n}, {d})")
    params = DegreeParams(n, d)
    N_d = params.N_d
    smallest = s_min(params)
    if s is None:
        s = smallest
    if not smallest <= s < N_d:
        raise ValueError(
            f"s={s} outside the certifiable range [{smallest}, {N_d}): below "
            f"s_min the pair products are forced dependent, at N_d the kernel is 0"
        )
    b = N_d - s
    target_rank = binomial(b + 1, 2)
    N_prev = dim_forms(n, d - 1)
    gate_failed = injectivity_failed = False

    for rnd in range(rounds):
        rng = random.Random(derive_seed(seed, "witness", n, d, s, rnd))
        points = []
        for _ in range(s):
            while True:
                coords = tuple(rng.randint(-COORD_BOUND, COORD_BOUND) for _ in range(n))
                if any(coords):
                    break
            points.append(coords)

        eval_d = _eval_rows_int(points, n, d)
        if rank_rational(RationalMatrix(eval_d)) != s:
            gate_failed = True
            continue
        if rank_rational(RationalMatrix(_eval_rows_int(points, n, d - 1))) != N_prev:
            gate_failed = True
            continue

        basis = kernel_basis_rational(RationalMatrix(eval_d))
        if len(basis) != b:
            gate_failed = True
            continue

        evidence_primes = tuple(
            p for p in primes if pair_products_rank(basis, n, d, p) == target_rank
        )
        if not evidence_primes:
            injectivity_failed = True
            continue

        witness_vec = _sum_of_squares_int(basis, n, d)

        # exact self-checks: basis and witness vanish on every point
        for row in eval_d:
            for v in basis:
                if sum(a * c for a, c in zip(row, v)) != 0:
                    raise CertificationError("kernel vector does not vanish on a point")
        for row2d, coords in zip(_eval_rows_int(points, n, 2 * d), points):
            if sum(a * c for a, c in zip(row2d, witness_vec)) != 0:
                raise CertificationError(f"witness does not vanish at {coords}")

        return LengthCertificate(
            n=n,
            d=d,
            s=s,
            primes=evidence_primes,
            seed=seed,
            points=tuple(points),
            basis=tuple(tuple(v) for v in basis),
            witness=tuple(witness_vec),
            length=b,
            injectivity_rank=target_rank,
        )

    if injectivity_failed:
        raise CertificationError(
            f"pair-product rank stayed below {target_rank} at every prime for "
            f"{rounds} samples at (n={n}, d={d}, s={s})"
        )
    raise GenericityError(
        f"no rational sample of {s} points passed the exact rank gate in {rounds} rounds"
    )


def basis_representation(cert: LengthCertificate) -> SosRepresentation:
    """The certificate's own representation: squares of the kernel basis."""
    summands = [Form.from_coeffs(cert.n, cert.d, v, QQ) for v in cert.basis]
    target = Form.from_coeffs(cert.n, 2 * cert.d, cert.witness, QQ)
    return SosRepresentation(summands=tuple(summands), target=target)


def certify_unique_representation(cert: LengthCertificate, alt: SosRepresentation) -> bool:
    """Check that an alternative representation of the witness is equivalent.

    Every summand must vanish on the certified points (over the reals this
    is forced by the target vanishing there); the decision is then exact
    tensor comparison against the basis representation.
    """
    if (alt.n, alt.d) != (cert.n, cert.d):
        raise ValueError("representation does not match the certificate's degrees")
    witness_coeffs = tuple(Fraction(c) for c in cert.witness)
    if alt.target.coeffs != witness_coeffs:
        raise ValueError("representation target differs from the certificate witness")
    for q in alt.summands:
        for coords in cert.points:
            if q.evaluate(Point(coords)) != 0:
                raise ValueError(
                    "summand does not vanish on the certified points; "
                    "it cannot occur in any representation of the witness"
                )
    return gram_equivalent(alt, basis_representation(cert))


# (leg, leg, hypotenuse): rational cos/sin pairs for exact rotations
PYTHAGOREAN_TRIPLES = (
    (3, 4, 5),
    (5, 12, 13),
    (8, 15, 17),
    (7, 24, 25),
    (20, 21, 29),
    (9, 40, 41),
    (12, 35, 37),
    (28, 45, 53),
)


def random_rational_orthogonal(size: int, seed: int, steps: int | None = None):
    """Random orthogonal matrix with rational entries.

    Composed of Givens rotations with Pythagorean-triple cosines on random
    coordinate pairs, plus occasional sign flips.
    """
    if size < 1:
        raise ValueError("size must be positive")
    rng = random.Random(seed)
    rows = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    if size == 1:
        return ((Fraction(rng.choice((1, -1))),),)
    if steps is None:
        steps = 2 * size + 2
    for _ in range(steps):
        i, j = rng.sample(range(size), 2)
        a, b, c = rng.choice(PYTHAGOREAN_TRIPLES)
        cs, sn = Fraction(a, c), Fraction(b, c)
        if rng.random() < 0.5:
            sn = -sn
        for row in rows:
            ri, rj = row[i], row[j]
            row[i] = cs * ri - sn * rj
            row[j] = sn * ri + cs * rj
        if rng.random() < 0.25:
            k = rng.randrange(size)
            for row in rows:
                row[k] = -row[k]
    return tuple(tuple(row) for row in rows)


def mix_representation(rep: SosRepresentation, matrix) -> SosRepresentation:
    """Right-multiply the summand tuple by an orthogonal matrix.

    New summand j is sum_i matrix[i][j] * p_i; orthogonality preserves the
    sum of squares, which the constructor re-verifies exactly.
    """
    m = len(rep.summands)
    if len(matrix) != m or any(len(row) != m for row in matrix):
        raise ValueError(f"mixing matrix must be {m}x{m}")
    new = []
    for j in range(m):
        q = Form.zero(rep.n, rep.d, QQ)
        for i, p_i in enumerate(rep.summands):
            c = matrix[i][j]
            if c:
                q = q + p_i.scale(c)
        new.append(q)
    return SosRepresentation(summands=tuple(new), target=rep.target)


def random_mix(rep: SosRepresentation, seed: int) -> SosRepresentation:
    return mix_representation(rep, random_rational_orthogonal(len(rep.summands), seed))


def _canonical_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def save_certificate(cert: LengthCertificate, path) -> None:
    Path(path).write_text(_canonical_json(cert.to_dict()))


def load_certificate(path) -> LengthCertificate:
    return LengthCertificate.from_dict(json.loads(Path(path).read_text()))


def representation_to_dict(rep: SosRepresentation) -> dict:
    return {
        "kind": "sos_representation",
        "n": rep.n,
        "d": rep.d,
        "summands": [[str(c) for c in q.coeffs] for q in rep.summands],
        "target": [str(c) for c in rep.target.coeffs],
    }


def representation_from_dict(data: dict) -> SosRepresentation:
    n, d = data["n"], data["d"]
    summands = tuple(
        Form.from_coeffs(n, d, [Fraction(c) for c in vec], QQ)
        for vec in data["summands"]
    )
    target = Form.from_coeffs(n, 2 * d, [Fraction(c) for c in data["target"]], QQ)
    return SosRepresentation(summands=summands, target=target)


def save_representation(rep: SosRepresentation, path) -> None:
    Path(path).write_text(_canonical_json(representation_to_dict(rep)))


def load_sos_file(path) -> SosRepresentation:
    """Load either a certificate or a representation file as a representation."""
    data = json.loads(Path(path).read_text())
    if "basis" in data and "witness" in data:
        return basis_representation(LengthCertificate.from_dict(data))
    if data.get("kind") == "sos_representation":
        return representation_from_dict(data)
    raise ValueError(f"{path} is neither a certificate nor a representation file")
