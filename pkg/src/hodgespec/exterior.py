"""The complexified exterior algebra of C^n with its Euclidean Kahler
structure.

Basis forms are dz_S ^ dzbar_T with S, T ascending subsets of {1..n};
the dz block always precedes the dzbar block, and every sign in the
package is derived from that single ordering rule.  Conventions:

* metric: <dz_j, dz_k> = 2 delta_jk, so a (p,q) basis form has squared
  norm 2^(p+q) and distinct basis forms are orthogonal;
* Kahler form: omega = (i/2) sum_j dz_j ^ dzbar_j;
* covectors: a real covector is encoded by its (1,0)-coefficients
  w in Q(i)^n, theta = sum_j (conj(w_j)/2) dz_j + (w_j/2) dzbar_j,
  with |theta|^2 = sum_j |w_j|^2.

Under these choices L (wedge with omega), its metric adjoint and the
degree-counting operator H = sum_k (n-k) pi^k satisfy the sl2
commutation relations; ``operator_suite`` verifies this the first time
each dimension n is used.

Block ordering contract (stable, part of the public API): within total
degree k the (p,q) blocks are listed with p descending, and inside a
block the (S,T) labels are ordered lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import NamedTuple

from .errors import DimensionMismatchError
from .exactla import ExactMatrix, HermitianGram, adjoint_wrt
from .scalars import GaussianRational

_HALF_I = GaussianRational(0, Fraction(1, 2))


class FormBasisIndex(NamedTuple):
    """Label of the basis form dz_S ^ dzbar_T (1-based ascending indices)."""

    holo: tuple[int, ...]
    anti: tuple[int, ...]

    @property
    def bidegree(self) -> tuple[int, int]:
        return (len(self.holo), len(self.anti))


def _insert_front(indices: tuple[int, ...], j: int):
    """Wedge a single generator from the left into an ascending tuple.

    Returns (sign, new_tuple) or None when j already occurs.
    """
    if j in indices:
        return None
    pos = sum(1 for x in indices if x < j)
    sign = -1 if pos % 2 else 1
    return sign, tuple(sorted(indices + (j,)))


class GradedBasis:
    """Ordered bases of all (p,q) components for fixed n, with the
    flattening maps between bidegree-local, degree-local, and
    full-algebra indices."""

    def __init__(self, n: int):
        if n < 1:
            raise DimensionMismatchError("complex dimension must be >= 1")
        self.n = n
        self.by_bidegree: dict[tuple[int, int], tuple[FormBasisIndex, ...]] = {}
        for p in range(n + 1):
            for q in range(n + 1):
                forms = [
                    FormBasisIndex(s, t)
                    for s in combinations(range(1, n + 1), p)
                    for t in combinations(range(1, n + 1), q)
                ]
                forms.sort()
                self.by_bidegree[(p, q)] = tuple(forms)
        self._local_index = {
            (pq, form): i
            for pq, forms in self.by_bidegree.items()
            for i, form in enumerate(forms)
        }

    def bidegree_dim(self, p: int, q: int) -> int:
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return comb(self.n, p) * comb(self.n, q)
        return 0

    def degree_dim(self, k: int) -> int:
        if 0 <= k <= 2 * self.n:
            return comb(2 * self.n, k)
        return 0

    @property
    def total_dim(self) -> int:
        return 4**self.n

    def degree_blocks(self, k: int) -> list[tuple[int, int]]:
        """(p,q) blocks of degree k, p descending (the stable order)."""
        return [
            (p, k - p)
            for p in range(min(k, self.n), -1, -1)
            if 0 <= k - p <= self.n
        ]

    def local_index(self, form: FormBasisIndex) -> int:
        return self._local_index[(form.bidegree, form)]

    def degree_offset(self, p: int, q: int) -> int:
        """Offset of block (p,q) inside the degree-(p+q) flattening."""
        off = 0
        for pq in self.degree_blocks(p + q):
            if pq == (p, q):
                return off
            off += self.bidegree_dim(*pq)
        raise DimensionMismatchError(f"block ({p},{q}) out of range")

    def full_offset(self, p: int, q: int) -> int:
        """Offset of block (p,q) in the full-algebra flattening
        (degrees ascending, blocks p-descending inside each degree)."""
        k = p + q
        off = sum(self.degree_dim(d) for d in range(k))
        return off + self.degree_offset(p, q)


@lru_cache(maxsize=None)
def graded_basis(n: int) -> GradedBasis:
    return GradedBasis(n)


# -- structural operators (mode independent) --------------------------------


@lru_cache(maxsize=None)
def bidegree_gram(n: int, p: int, q: int) -> HermitianGram:
    dim = graded_basis(n).bidegree_dim(p, q)
    return HermitianGram.diagonal([Fraction(2 ** (p + q))] * dim)


@lru_cache(maxsize=None)
def lefschetz_blocks(n: int) -> dict[tuple[int, int], ExactMatrix]:
    """Blocks of L = omega ^ -, keyed by source (p,q)."""
    basis = graded_basis(n)
    blocks = {}
    for (p, q), forms in basis.by_bidegree.items():
        if p + 1 > n or q + 1 > n:
            continue
        tgt_dim = basis.bidegree_dim(p + 1, q + 1)
        grid = [[GaussianRational(0)] * len(forms) for _ in range(tgt_dim)]
        for col, form in enumerate(forms):
            for j in range(1, n + 1):
                anti = _insert_front(form.anti, j)
                if anti is None:
                    continue
                holo = _insert_front(form.holo, j)
                if holo is None:
                    continue
                sign_t, new_t = anti
                sign_s, new_s = holo
                sign = sign_t * sign_s * (-1 if p % 2 else 1)
                row = basis.local_index(FormBasisIndex(new_s, new_t))
                grid[row][col] = grid[row][col] + _HALF_I * sign
        blocks[(p, q)] = ExactMatrix.from_entries(grid) if tgt_dim else (
            ExactMatrix.zeros(0, len(forms))
        )
    return blocks


@lru_cache(maxsize=None)
def lefschetz_lambda_blocks(n: int) -> dict[tuple[int, int], ExactMatrix]:
    """Blocks of the metric adjoint of L, keyed by source (p,q)."""
    blocks = {}
    for (p, q), mat in lefschetz_blocks(n).items():
        blocks[(p + 1, q + 1)] = adjoint_wrt(
            mat, bidegree_gram(n, p, q), bidegree_gram(n, p + 1, q + 1)
        )
    return blocks


def counting_weight(n: int, k: int) -> int:
    """Scalar by which H acts on degree-k forms."""
    return n - k


@lru_cache(maxsize=None)
def conjugation_blocks(n: int) -> dict[tuple[int, int], ExactMatrix]:
    """Matrix blocks of complex conjugation, keyed by source (p,q).

    Conjugation sends dz_S ^ dzbar_T to (-1)^(pq) dz_T ^ dzbar_S; the
    returned block maps the (p,q) component to the (q,p) component.  It
    is the matrix part of an antilinear map: the action on coordinates
    is x -> C conj(x).
    """
    basis = graded_basis(n)
    blocks = {}
    for (p, q), forms in basis.by_bidegree.items():
        tgt_dim = basis.bidegree_dim(q, p)
        sign = -1 if (p * q) % 2 else 1
        grid = [[0] * len(forms) for _ in range(tgt_dim)]
        for col, form in enumerate(forms):
            row = basis.local_index(FormBasisIndex(form.anti, form.holo))
            grid[row][col] = sign
        blocks[(p, q)] = ExactMatrix.from_entries(grid)
    return blocks


# -- covectors and wedge operators ------------------------------------------


@dataclass(frozen=True)
class Covector:
    """A real covector given by its (1,0)-part coefficients w in Q(i)^n."""

    w: tuple[GaussianRational, ...]

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def norm_sq(self) -> Fraction:
        return sum((z.abs_sq() for z in self.w), Fraction(0))

    def is_zero(self) -> bool:
        return all(z.is_zero() for z in self.w)


def _wedge_generator_blocks(n, coeffs, antiholomorphic):
    """Blocks of wedging with sum_j coeffs[j] * (dz_j or dzbar_j)."""
    basis = graded_basis(n)
    blocks = {}
    for (p, q), forms in basis.by_bidegree.items():
        tp, tq = (p, q + 1) if antiholomorphic else (p + 1, q)
        if tp > n or tq > n:
            continue
        tgt_dim = basis.bidegree_dim(tp, tq)
        grid = [[GaussianRational(0)] * len(forms) for _ in range(tgt_dim)]
        cross = -1 if (antiholomorphic and p % 2) else 1
        for col, form in enumerate(forms):
            block = form.anti if antiholomorphic else form.holo
            for j in range(1, n + 1):
                if coeffs[j - 1].is_zero():
                    continue
                ins = _insert_front(block, j)
                if ins is None:
                    continue
                sign, new_block = ins
                target = (
                    FormBasisIndex(form.holo, new_block)
                    if antiholomorphic
                    else FormBasisIndex(new_block, form.anti)
                )
                row = basis.local_index(target)
                grid[row][col] = grid[row][col] + coeffs[j - 1] * (sign * cross)
        blocks[(p, q)] = ExactMatrix.from_entries(grid)
    return blocks


def wedge_holo_blocks(theta: Covector) -> dict[tuple[int, int], ExactMatrix]:
    """Blocks of theta^(1,0) ^ - , i.e. sum_j (conj(w_j)/2) dz_j ^ -."""
    half = Fraction(1, 2)
    coeffs = [z.conjugate() * half for z in theta.w]
    return _wedge_generator_blocks(theta.n, coeffs, antiholomorphic=False)


def wedge_anti_blocks(theta: Covector) -> dict[tuple[int, int], ExactMatrix]:
    """Blocks of theta^(0,1) ^ - , i.e. sum_j (w_j/2) dzbar_j ^ -."""
    half = Fraction(1, 2)
    coeffs = [z * half for z in theta.w]
    return _wedge_generator_blocks(theta.n, coeffs, antiholomorphic=True)


# -- full-algebra matrices (public spec surface) -----------------------------


def _blocks_to_full(n: int, shift: tuple[int, int], blocks) -> ExactMatrix:
    """Assemble a homogeneous block family into one matrix on the full
    2^(2n)-dimensional algebra, in the documented flattening order."""
    basis = graded_basis(n)
    dim = basis.total_dim
    grid = [[GaussianRational(0)] * dim for _ in range(dim)]
    dp, dq = shift
    for (p, q), mat in blocks.items():
        tp, tq = p + dp, q + dq
        if not (0 <= tp <= n and 0 <= tq <= n):
            continue
        roff = basis.full_offset(tp, tq)
        coff = basis.full_offset(p, q)
        for i in range(mat.rows):
            for j in range(mat.cols):
                v = mat.entry(i, j)
                if v:
                    grid[roff + i][coff + j] = v
    return ExactMatrix.from_entries(grid)


def wedge_matrix(basis: GradedBasis, theta: Covector, part: str = "full") -> ExactMatrix:
    """Matrix of alpha -> theta^(part) ^ alpha on the full algebra.

    ``part`` is one of ``"full"``, ``"holo"``, ``"antiholo"``.
    """
    if theta.n != basis.n:
        raise DimensionMismatchError(
            f"covector dimension {theta.n} != basis dimension {basis.n}"
        )
    n = basis.n
    if part == "holo":
        return _blocks_to_full(n, (1, 0), wedge_holo_blocks(theta))
    if part == "antiholo":
        return _blocks_to_full(n, (0, 1), wedge_anti_blocks(theta))
    if part == "full":
        return _blocks_to_full(n, (1, 0), wedge_holo_blocks(theta)) + _blocks_to_full(
            n, (0, 1), wedge_anti_blocks(theta)
        )
    raise ValueError(f"unknown wedge part {part!r}")


def gram(basis: GradedBasis, degree=None, bidegree=None) -> HermitianGram:
    """Gram matrix of a degree or bidegree component (diagonal, 2^(p+q))."""
    if (degree is None) == (bidegree is None):
        raise ValueError("specify exactly one of degree / bidegree")
    if bidegree is not None:
        p, q = bidegree
        return bidegree_gram(basis.n, p, q)
    k = degree
    if not 0 <= k <= 2 * basis.n:
        raise DimensionMismatchError(f"degree {k} out of range")
    return HermitianGram.diagonal([Fraction(2**k)] * basis.degree_dim(k))


def lefschetz_L(basis: GradedBasis) -> ExactMatrix:
    """Full-algebra matrix of L = omega ^ -."""
    return _blocks_to_full(basis.n, (1, 1), lefschetz_blocks(basis.n))


def lefschetz_Lambda(basis: GradedBasis) -> ExactMatrix:
    """Full-algebra matrix of the metric adjoint of L."""
    return _blocks_to_full(basis.n, (-1, -1), lefschetz_lambda_blocks(basis.n))


def counting_H(basis: GradedBasis) -> ExactMatrix:
    """Full-algebra diagonal matrix acting by n-k on degree k."""
    n = basis.n
    values = []
    for k in range(2 * n + 1):
        values.extend([n - k] * basis.degree_dim(k))
    return ExactMatrix.diagonal(values)


# -- convention self-test ----------------------------------------------------

_verified_dims: set[int] = set()


def verify_conventions(n: int) -> None:
    """Check the sl2 relations block-by-block for this n (once).

    The metric scale and the Kahler form normalization are only
    consistent with the degree-counting operator for one choice up to
    global scale; this guards against any silent drift in the sign and
    ordering rules above.
    """
    if n in _verified_dims:
        return
    basis = graded_basis(n)
    lef = lefschetz_blocks(n)
    lam = lefschetz_lambda_blocks(n)
    for p in range(n + 1):
        for q in range(n + 1):
            d = basis.bidegree_dim(p, q)
            k = p + q
            down_up = _compose_or_zero(lam.get((p + 1, q + 1)), lef.get((p, q)), d)
            up_down = _compose_or_zero(lef.get((p - 1, q - 1)), lam.get((p, q)), d)
            h = ExactMatrix.scalar(d, n - k)
            if down_up - up_down != h:
                raise AssertionError(
                    f"sl2 relation [Lambda, L] = H fails on block ({p},{q}) for n={n}"
                )
    _verified_dims.add(n)


def _compose_or_zero(second, first, dim):
    if second is None or first is None:
        return ExactMatrix.zeros(dim, dim)
    return second @ first


@dataclass(frozen=True)
class OperatorSuite:
    """Cached mode-independent structure for one complex dimension."""

    n: int
    basis: GradedBasis
    grams: dict
    lefschetz: dict
    lefschetz_adjoint: dict
    conjugation: dict


@lru_cache(maxsize=None)
def operator_suite(n: int) -> OperatorSuite:
    verify_conventions(n)
    basis = graded_basis(n)
    grams = {
        (p, q): bidegree_gram(n, p, q)
        for p in range(n + 1)
        for q in range(n + 1)
    }
    return OperatorSuite(
        n=n,
        basis=basis,
        grams=grams,
        lefschetz=lefschetz_blocks(n),
        lefschetz_adjoint=lefschetz_lambda_blocks(n),
        conjugation=conjugation_blocks(n),
    )
