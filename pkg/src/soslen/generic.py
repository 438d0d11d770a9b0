"""Generic instances and dimension experiments over prime fields.

Every dimension count here is probabilistic only in the completeness
direction: a rank computed mod p never exceeds the rational rank of the
same integer instance, and the instance rank never exceeds the generic
rank.  So whenever a computed Hilbert-function value meets its proven
lower bound, that single instance is an unconditional certificate; excess
values only ever trigger resampling, never refutation.

All experiments run the same integer instance at two primes and require
agreement.  Coordinates are sampled below the smaller prime so one integer
point set serves every modulus.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import random
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .bounds import DegreeParams, binomial, dim_forms, lambda_lower
from .errors import GenericityError, GuardError, InternalCheckError
from .linalg import (
    DEFAULT_PRIMES,
    PrimeMatrix,
    kernel_basis_mod_p,
    rank_mod_p,
)
from .ring import monomials, product_index_table

__all__ = [
    "DEFAULT_SEED",
    "MAX_DENSE_ENTRIES",
    "derive_seed",
    "Quantity",
    "Status",
    "DimensionReport",
    "PointSample",
    "sample_points",
    "VanishingComponent",
    "vanishing_component",
    "pair_products_rank",
    "dim_square_component",
    "EXCEPTIONAL_TRIPLES",
    "ik_expected",
    "ik_verify",
    "generic_ideal_dim",
    "TypicalStatus",
    "TypicalLengthResult",
    "typical_length",
    "run_jobs",
]

DEFAULT_SEED = 271828
MAX_DENSE_ENTRIES = 40_000_000
_SAMPLE_ROUNDS = 5


def derive_seed(base: int, *tags) -> int:
    """Stable 64-bit seed derived from a base seed and hashable tags."""
    digest = hashlib.sha256(repr((int(base), tags)).encode()).digest()
    return int.from_bytes(digest[:8], "big")


class Quantity(str, Enum):
    DIM_VANISHING_D = "DimVanishing_d"
    DIM_SQUARE_COMPONENT_2D = "DimSquareComponent_2d"
    HILBERT_H_2D = "HilbertH2d"
    GENERIC_IDEAL_DIM_M_R = "GenericIdealDim_m_r"
    FULL_RANK_AT_DEGREE_2D = "FullRankAtDegree2d"


class Status(str, Enum):
    VERIFIED = "Verified"
    INCONCLUSIVE_HIGH = "InconclusiveHigh"
    INTERNAL_ERROR = "InternalError"


@dataclass(frozen=True)
class DimensionReport:
    """Outcome of one rank experiment, replayable from (args, seed, primes)."""

    quantity: Quantity
    computed: int
    expected: int | None
    status: Status
    n: int
    d: int
    s: int | None
    r: int | None
    seed: int
    primes: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity.value,
            "computed": self.computed,
            "expected": self.expected,
            "status": self.status.value,
            "n": self.n,
            "d": self.d,
            "s": self.s,
            "r": self.r,
            "seed": self.seed,
            "primes": list(self.primes),
        }


@dataclass(frozen=True)
class PointSample:
    """Random points over F_p that passed the genericity gate."""

    n: int
    d: int
    s: int
    prime: int
    seed: int
    points: tuple[tuple[int, ...], ...]


def _raw_points(n: int, s: int, bound: int, rng: random.Random) -> list[tuple[int, ...]]:
    pts = []
    for _ in range(s):
        while True:
            coords = tuple(rng.randrange(bound) for _ in range(n))
            if any(coords):
                break
        pts.append(coords)
    return pts


def _eval_matrix_mod_p(points, n: int, e: int, p: int):
    """s x N_{n,e} matrix of monomial values at the points, reduced mod p."""
    monos = monomials(n, e)
    if p * p < 2**63:
        E = np.array(monos, dtype=np.int64)
        rows = np.empty((len(points), len(monos)), dtype=np.int64)
        for i, coords in enumerate(points):
            pw = np.array(
                [[pow(int(x), k, p) for k in range(e + 1)] for x in coords],
                dtype=np.int64,
            )
            vals = np.ones(len(monos), dtype=np.int64)
            for v in range(n):
                vals = vals * pw[v, E[:, v]] % p
            rows[i] = vals
        return rows
    out = []
    for coords in points:
        pw = [[pow(int(x), k, p) for k in range(e + 1)] for x in coords]
        row = []
        for expo in monos:
            val = 1
            for v, a in enumerate(expo):
                if a:
                    val = val * pw[v][a] % p
            row.append(val)
        out.append(row)
    return out


def _gate_ok(points, n: int, d: int, p: int) -> bool:
    """Genericity gate: maximal evaluation rank, and no forms of degree d-1
    vanish on the whole set whenever the point count allows that check."""
    s = len(points)
    N_d = dim_forms(n, d)
    mat = PrimeMatrix(_eval_matrix_mod_p(points, n, d, p), p, cols=N_d)
    if rank_mod_p(mat) != min(s, N_d):
        return False
    N_prev = dim_forms(n, d - 1) if d >= 1 else 0
    if d >= 1 and s >= N_prev:
        prev = PrimeMatrix(_eval_matrix_mod_p(points, n, d - 1, p), p, cols=N_prev)
        if rank_mod_p(prev) != N_prev:
            return False
    return True


def _sample_instance(n, d, s, seed, primes, rounds=_SAMPLE_ROUNDS):
    """Integer point set passing the gate at every prime, or GenericityError."""
    bound = min(primes)
    for rnd in range(rounds):
        rng = random.Random(derive_seed(seed, "points", rnd))
        pts = _raw_points(n, s, bound, rng)
        if all(_gate_ok(pts, n, d, p) for p in primes):
            return tuple(pts)
    raise GenericityError(
        f"no generic sample of {s} points found in {rounds} rounds at "
        f"(n={n}, d={d}); prime too small or pathological parameters"
    )


def sample_points(n: int, d: int, s: int, seed: int, prime: int) -> PointSample:
    """Random points whose degree-d evaluation matrix has rank min(s, N_d)."""
    if n < 1 or d < 1 or s < 1:
        raise ValueError(f"need n, d, s >= 1, got ({n}, {d}, {s})")
    pts = _sample_instance(n, d, s, seed, (prime,))
    return PointSample(n=n, d=d, s=s, prime=prime, seed=seed, points=pts)


@dataclass(frozen=True)
class VanishingComponent:
    """Kernel of the evaluation matrix: the degree-d vanishing forms."""

    dim: int
    basis: object  # (dim x N_d) array of residues mod the sample's prime
    sample: PointSample
    report: DimensionReport


def vanishing_component(sample: PointSample, d: int) -> VanishingComponent:
    """Degree-d component of the vanishing ideal of the sampled points."""
    n, s = sample.n, sample.s
    N_d = dim_forms(n, d)
    if s > N_d:
        raise ValueError(f"vanishing component needs s <= N_d, got s={s} > {N_d}")
    mat = PrimeMatrix(_eval_matrix_mod_p(sample.points, n, d, sample.prime),
                      sample.prime, cols=N_d)
    basis = kernel_basis_mod_p(mat)
    dim = len(basis)
    if dim != N_d - s:
        raise InternalCheckError(
            f"vanishing dimension {dim} != N_d - s = {N_d - s} after gate"
        )
    report = DimensionReport(
        quantity=Quantity.DIM_VANISHING_D,
        computed=dim,
        expected=N_d - s,
        status=Status.VERIFIED,
        n=n,
        d=d,
        s=s,
        r=None,
        seed=sample.seed,
        primes=(sample.prime,),
    )
    return VanishingComponent(dim=dim, basis=basis, sample=sample, report=report)


def pair_products_rank(vectors, n: int, d: int, prime: int) -> int:
    """Rank mod prime of the C(b+1,2) x N_{2d} matrix of pairwise products.

    ``vectors`` are degree-d coefficient vectors (any integers; reduced
    here).  Full row rank certifies that the products are independent over
    the rationals as well.
    """
    N_d = dim_forms(n, d)
    N_2d = dim_forms(n, 2 * d)
    T = product_index_table(n, d, d)
    if prime * prime < 2**63:
        vecs = np.asarray(
            [[int(x) % prime for x in v] for v in vectors], dtype=np.int64
        ).reshape(len(vectors), N_d)
        b = vecs.shape[0]
        Ta = np.asarray(T, dtype=np.int64)
        rows = np.zeros((b * (b + 1) // 2, N_2d), dtype=np.int64)
        k = 0
        for i in range(b):
            for j in range(i, b):
                outer = vecs[i][:, None] * vecs[j][None, :] % prime
                np.add.at(rows[k], Ta.ravel(), outer.ravel())
                k += 1
        rows %= prime
        return rank_mod_p(PrimeMatrix(rows, prime, cols=N_2d))
    vecs = [[int(x) % prime for x in v] for v in vectors]
    rows = []
    for i in range(len(vecs)):
        for j in range(i, len(vecs)):
            row = [0] * N_2d
            for a, ca in enumerate(vecs[i]):
                if ca:
                    ti = T[a]
                    for bidx, cb in enumerate(vecs[j]):
                        if cb:
                            row[ti[bidx]] = (row[ti[bidx]] + ca * cb) % prime
            rows.append(row)
    return rank_mod_p(PrimeMatrix(rows, prime, cols=N_2d))


def _square_rank(points, n: int, d: int, p: int) -> int:
    """Rank of the matrix of pairwise products of a vanishing-ideal basis."""
    N_d = dim_forms(n, d)
    mat = PrimeMatrix(_eval_matrix_mod_p(points, n, d, p), p, cols=N_d)
    kern = kernel_basis_mod_p(mat)
    return pair_products_rank(kern, n, d, p)


def _check_guard(entries: int, allow_large: bool, what: str):
    if entries > MAX_DENSE_ENTRIES and not allow_large:
        raise GuardError(
            f"{what} needs a dense matrix with {entries} entries "
            f"(> {MAX_DENSE_ENTRIES}); pass allow_large/--allow-large to run it"
        )


def dim_square_component(
    n: int,
    d: int,
    s: int,
    seed: int = DEFAULT_SEED,
    primes=DEFAULT_PRIMES,
    allow_large: bool = False,
    rounds: int = _SAMPLE_ROUNDS,
) -> DimensionReport:
    """Dimension of span{p_i p_j} for a vanishing-ideal basis of s generic points.

    Runs the same integer instance at every prime and demands agreement.
    The report carries the rank facet; the Hilbert-function value is
    N_{2d} - computed.  A rank above the conjectured dimension would break
    a proven inequality and raises InternalCheckError.
    """
    params = DegreeParams(n, d)
    N_d, N_2d = params.N_d, params.N_2d
    if not 1 <= s <= N_d:
        raise ValueError(f"need 1 <= s <= N_d = {N_d}, got s={s}")
    b = N_d - s
    _check_guard(binomial(b + 1, 2) * N_2d, allow_large, "square-component job")

    expected_rank = None
    if n >= 3 and d >= 2 and dim_forms(n, d - 1) <= s < N_d:
        expected_rank = N_2d - ik_expected(n, d, s)

    for rnd in range(rounds):
        pts = _sample_instance(n, d, s, derive_seed(seed, "square", rnd), primes)
        ranks = [_square_rank(pts, n, d, p) for p in primes]
        if len(set(ranks)) != 1:
            continue  # prime disagreement: resample
        computed = ranks[0]
        report = DimensionReport(
            quantity=Quantity.DIM_SQUARE_COMPONENT_2D,
            computed=computed,
            expected=expected_rank,
            status=Status.VERIFIED,
            n=n,
            d=d,
            s=s,
            r=None,
            seed=seed,
            primes=tuple(primes),
        )
        if expected_rank is None or computed == expected_rank:
            return report
        if computed < expected_rank:
            return replace(report, status=Status.INCONCLUSIVE_HIGH)
        raise InternalCheckError(
            f"square-component rank {computed} exceeds the structural bound "
            f"{expected_rank} at (n={n}, d={d}, s={s})",
            report=replace(report, status=Status.INTERNAL_ERROR),
        )
    raise GenericityError(
        f"prime disagreement persisted for {rounds} samples at (n={n}, d={d}, s={s})"
    )


EXCEPTIONAL_TRIPLES = frozenset({(3, 2, 5), (4, 2, 9), (5, 2, 14)})


def ik_expected(n: int, d: int, s: int) -> int:
    """Conjectured Hilbert-function value h_{2d} of the squared point ideal.

    max{n*s, N_{2d} - C(N_d - s + 1, 2)}, with max replaced by min at the
    three exceptional triples (3,2,5), (4,2,9), (5,2,14).
    """
    if n < 3 or d < 2:
        raise ValueError(f"expected-value formula needs n >= 3, d >= 2, got ({n}, {d})")
    params = DegreeParams(n, d)
    N_d, N_2d = params.N_d, params.N_2d
    if not dim_forms(n, d - 1) <= s < N_d:
        raise ValueError(
            f"s={s} outside [N_(d-1), N_d) = [{dim_forms(n, d - 1)}, {N_d})"
        )
    a = n * s
    c = N_2d - binomial(N_d - s + 1, 2)
    return min(a, c) if (n, d, s) in EXCEPTIONAL_TRIPLES else max(a, c)


def ik_verify(
    n: int,
    d: int,
    s: int,
    trials: int = 3,
    seed: int = DEFAULT_SEED,
    primes=DEFAULT_PRIMES,
    allow_large: bool = False,
) -> DimensionReport:
    """Search for one concrete instance meeting the conjectured h_{2d}.

    Since computed h >= exact h >= generic h >= expected, equality at any
    instance certifies the value for (n, d, s); excess is never a
    refutation, so failed trials only yield InconclusiveHigh.
    """
    expected = ik_expected(n, d, s)
    N_2d = dim_forms(n, 2 * d)
    last = None
    for t in range(trials):
        trial_seed = derive_seed(seed, "ik", n, d, s, t)
        rep = dim_square_component(
            n, d, s, seed=trial_seed, primes=primes, allow_large=allow_large
        )
        hrep = DimensionReport(
            quantity=Quantity.HILBERT_H_2D,
            computed=N_2d - rep.computed,
            expected=expected,
            status=rep.status,
            n=n,
            d=d,
            s=s,
            r=None,
            seed=trial_seed,
            primes=tuple(primes),
        )
        if hrep.status is Status.VERIFIED:
            return hrep
        last = hrep
    return last


def _ideal_matrix(forms: np.ndarray, n: int, d: int, p: int) -> np.ndarray:
    """Rows p_i * x^beta over all degree-d monomials x^beta, reduced mod p."""
    r, N_d = forms.shape
    N_2d = dim_forms(n, 2 * d)
    T = np.asarray(product_index_table(n, d, d), dtype=np.int64)
    out = np.zeros((r * N_d, N_2d), dtype=np.int64)
    rows_idx = np.arange(N_d)[:, None]
    for i in range(r):
        block = out[i * N_d : (i + 1) * N_d]
        block[rows_idx, T] = forms[i][None, :] % p
    return out


def generic_ideal_dim(
    n: int,
    d: int,
    r: int,
    seed: int = DEFAULT_SEED,
    primes=DEFAULT_PRIMES,
    expected: int | None = None,
    quantity: Quantity = Quantity.GENERIC_IDEAL_DIM_M_R,
    allow_large: bool = False,
    rounds: int = _SAMPLE_ROUNDS,
) -> DimensionReport:
    """Degree-2d dimension of the ideal generated by r random degree-d forms.

    The computed rank is a certified lower bound for the generic value m_r;
    with no expected value the report is Verified as soon as both primes
    agree.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    params = DegreeParams(n, d)
    N_d, N_2d = params.N_d, params.N_2d
    _check_guard(r * N_d * N_2d, allow_large, "generic-ideal job")
    bound = min(primes)
    for rnd in range(rounds):
        rng = random.Random(derive_seed(seed, "forms", rnd))
        forms = np.array(
            [[rng.randrange(bound) for _ in range(N_d)] for _ in range(r)],
            dtype=np.int64,
        )
        ranks = []
        for p in primes:
            mat = PrimeMatrix(_ideal_matrix(forms, n, d, p), p, cols=N_2d)
            ranks.append(rank_mod_p(mat))
        if len(set(ranks)) != 1:
            continue
        computed = ranks[0]
        status = Status.VERIFIED
        if expected is not None:
            if computed > expected:
                raise InternalCheckError(
                    f"ideal dimension {computed} exceeds the cap {expected}",
                    report=DimensionReport(
                        quantity, computed, expected, Status.INTERNAL_ERROR,
                        n, d, None, r, seed, tuple(primes),
                    ),
                )
            if computed < expected:
                status = Status.INCONCLUSIVE_HIGH
        return DimensionReport(
            quantity=quantity,
            computed=computed,
            expected=expected,
            status=status,
            n=n,
            d=d,
            s=None,
            r=r,
            seed=seed,
            primes=tuple(primes),
        )
    raise GenericityError(
        f"prime disagreement persisted for {rounds} samples at (n={n}, d={d}, r={r})"
    )


class TypicalStatus(str, Enum):
    EXACT = "Exact"
    INTERVAL_ONLY = "IntervalOnly"


@dataclass(frozen=True)
class TypicalLengthResult:
    """Smallest square count whose generic sums fill a dense set of forms."""

    n: int
    d: int
    r_found: int | None
    certified_lower: int
    fos_cap: int
    status: TypicalStatus

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "r_found": self.r_found,
            "certified_lower": self.certified_lower,
            "fos_cap": self.fos_cap,
            "status": self.status.value,
        }


def typical_length(
    n: int,
    d: int,
    r_max: int | None = None,
    seed: int = DEFAULT_SEED,
    primes=DEFAULT_PRIMES,
    trials: int = 3,
    allow_large: bool = False,
) -> TypicalLengthResult:
    """Smallest r whose generic degree-2d ideal component is full.

    One full-rank instance certifies the upper bound (rank is maximal on a
    dense open set); the lower certificate is the counting bound, whose
    ceiling is also where the scan starts, since r*N_d - C(r,2) < N_{2d}
    makes full rank impossible over any field.
    """
    params = DegreeParams(n, d)
    N_d, N_2d = params.N_d, params.N_2d
    cap = 2 ** (n - 1)
    limit = cap if r_max is None else min(r_max, cap)
    if limit < 1:
        raise ValueError(f"need r_max >= 1, got {r_max}")
    certified_lower = lambda_lower(params)[1]
    r_found = None
    for r in range(1, limit + 1):
        if r * N_d - binomial(r, 2) < N_2d:
            continue  # too few independent products to fill degree 2d
        for t in range(trials):
            rep = generic_ideal_dim(
                n,
                d,
                r,
                seed=derive_seed(seed, "typical", n, d, r, t),
                primes=primes,
                expected=N_2d,
                quantity=Quantity.FULL_RANK_AT_DEGREE_2D,
                allow_large=allow_large,
            )
            if rep.status is Status.VERIFIED:
                r_found = r
                break
        if r_found is not None:
            break
    if r_found is not None and not certified_lower <= r_found <= cap:
        raise InternalCheckError(
            f"typical length {r_found} escapes [{certified_lower}, {cap}] at (n={n}, d={d})"
        )
    status = TypicalStatus.EXACT if r_found == certified_lower else TypicalStatus.INTERVAL_ONLY
    return TypicalLengthResult(
        n=n,
        d=d,
        r_found=r_found,
        certified_lower=certified_lower,
        fos_cap=cap,
        status=status,
    )


def _call_with_kwargs(job):
    worker, kwargs = job
    return worker(**kwargs)


def run_jobs(worker, kwargs_list, parallelism: int = 1):
    """Run independent experiment jobs, results in submission order.

    Each job owns its matrices, so jobs only share read-only tables; with
    parallelism > 1 they are dispatched to a process pool.
    """
    jobs = [(worker, kwargs) for kwargs in kwargs_list]
    if parallelism <= 1:
        return [_call_with_kwargs(job) for job in jobs]
    with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(_call_with_kwargs, jobs))
