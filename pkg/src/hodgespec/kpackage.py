"""Kahler spectral packages: bigraded inner-product complexes with
del and delbar, the universal input of the verifier.

A package stores, per bidegree (p,q) with 0 <= p,q <= n:

* the dimension and a positive-definite Gram matrix,
* the block of del mapping (p,q) -> (p+1,q),
* the block of delbar mapping (p,q) -> (p,q+1),
* the block of the Lefschetz operator mapping (p,q) -> (p+1,q+1),
* optionally the conjugation block mapping (p,q) -> (q,p).

Conjugation is antilinear: the stored matrix C acts on coordinates as
x -> C conj(x).  Adjoints are always derived from the Grams, never
supplied.  ``GradedOperator`` is the workhorse: a formal sum of
homogeneous bidegree-shift components, supporting exact composition,
adjoints, and comparison, which keeps every verifier identity an exact
matrix statement even on deliberately broken inputs.

File format (JSON): fields ``n``, ``dims`` (map "p,q" -> int),
``gram``, ``partial``, ``dbar``, ``L``, ``conj`` (maps "p,q" -> row-major
matrix of scalar strings; target block implied; absent blocks are zero
maps), plus an optional ``eigenvalues`` list of rational strings naming
the candidate spectrum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ParseError, ShapeMismatchError
from .exactla import ExactMatrix, HermitianGram, adjoint_wrt
from .scalars import GaussianRational, format_rational, parse_rational

Shift = tuple[int, int]
BlockKey = tuple[int, int]


def block_keys(n: int):
    for p in range(n + 1):
        for q in range(n + 1):
            yield (p, q)


class GradedOperator:
    """A sum of homogeneous components acting blockwise on a grading.

    ``components[shift][source_pq]`` is the matrix of the shift-
    homogeneous part restricted to the (p,q) block.  Zero blocks are
    pruned, so equality and zero tests are structural.
    """

    __slots__ = ("n", "dims", "components")

    def __init__(self, n: int, dims, components):
        self.n = n
        self.dims = dict(dims)
        clean: dict[Shift, dict[BlockKey, ExactMatrix]] = {}
        for shift, blocks in components.items():
            kept = {}
            for (p, q), mat in blocks.items():
                tp, tq = p + shift[0], q + shift[1]
                src = self.dims.get((p, q), 0)
                tgt = self.dims.get((tp, tq), 0)
                if mat.shape != (tgt, src):
                    raise ShapeMismatchError(
                        f"block ({p},{q}) shift {shift}: shape {mat.shape}, "
                        f"expected ({tgt},{src})"
                    )
                if src and tgt and not mat.is_zero():
                    kept[(p, q)] = mat
            if kept:
                clean[shift] = kept
        self.components = clean

    @classmethod
    def from_blocks(cls, n, dims, shift, blocks) -> "GradedOperator":
        return cls(n, dims, {shift: dict(blocks)})

    @classmethod
    def zero(cls, n, dims) -> "GradedOperator":
        return cls(n, dims, {})

    @classmethod
    def scalar(cls, n, dims, value) -> "GradedOperator":
        blocks = {
            pq: ExactMatrix.scalar(dim, value)
            for pq, dim in dims.items()
            if dim
        }
        return cls(n, dims, {(0, 0): blocks})

    @classmethod
    def counting(cls, n, dims) -> "GradedOperator":
        """H = sum_k (n-k) pi^k."""
        blocks = {
            (p, q): ExactMatrix.scalar(dim, n - p - q)
            for (p, q), dim in dims.items()
            if dim
        }
        return cls(n, dims, {(0, 0): blocks})

    def block(self, shift: Shift, pq: BlockKey) -> ExactMatrix | None:
        return self.components.get(shift, {}).get(pq)

    def block_or_zero(self, shift: Shift, pq: BlockKey) -> ExactMatrix:
        mat = self.block(shift, pq)
        if mat is not None:
            return mat
        tgt = self.dims.get((pq[0] + shift[0], pq[1] + shift[1]), 0)
        return ExactMatrix.zeros(tgt, self.dims.get(pq, 0))

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        merged: dict[Shift, dict[BlockKey, ExactMatrix]] = {}
        for op in (self, other):
            for shift, blocks in op.components.items():
                tgt = merged.setdefault(shift, {})
                for pq, mat in blocks.items():
                    tgt[pq] = tgt[pq] + mat if pq in tgt else mat
        return GradedOperator(self.n, self.dims, merged)

    def __neg__(self) -> "GradedOperator":
        return GradedOperator(
            self.n,
            self.dims,
            {
                shift: {pq: -mat for pq, mat in blocks.items()}
                for shift, blocks in self.components.items()
            },
        )

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale(self, value) -> "GradedOperator":
        return GradedOperator(
            self.n,
            self.dims,
            {
                shift: {pq: mat.scale(value) for pq, mat in blocks.items()}
                for shift, blocks in self.components.items()
            },
        )

    def times_i(self) -> "GradedOperator":
        return GradedOperator(
            self.n,
            self.dims,
            {
                shift: {pq: mat.times_i() for pq, mat in blocks.items()}
                for shift, blocks in self.components.items()
            },
        )

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        """Composition self after other."""
        out: dict[Shift, dict[BlockKey, ExactMatrix]] = {}
        for s2, blocks2 in other.components.items():
            for s1, blocks1 in self.components.items():
                shift = (s1[0] + s2[0], s1[1] + s2[1])
                for pq, mat2 in blocks2.items():
                    mid = (pq[0] + s2[0], pq[1] + s2[1])
                    mat1 = blocks1.get(mid)
                    if mat1 is None:
                        continue
                    tgt = out.setdefault(shift, {})
                    prod = mat1 @ mat2
                    tgt[pq] = tgt[pq] + prod if pq in tgt else prod
        return GradedOperator(self.n, self.dims, out)

    def adjoint(self, grams) -> "GradedOperator":
        out: dict[Shift, dict[BlockKey, ExactMatrix]] = {}
        for (dp, dq), blocks in self.components.items():
            shift = (-dp, -dq)
            tgt = out.setdefault(shift, {})
            for (p, q), mat in blocks.items():
                cod = (p + dp, q + dq)
                tgt[cod] = adjoint_wrt(mat, grams[(p, q)], grams[cod])
        return GradedOperator(self.n, self.dims, out)

    def commutator(self, other: "GradedOperator") -> "GradedOperator":
        return (self @ other) - (other @ self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def first_nonzero(self):
        """Deterministic witness locator: (shift, pq, row, col, value)."""
        for shift in sorted(self.components):
            blocks = self.components[shift]
            for pq in sorted(blocks):
                found = blocks[pq].first_nonzero()
                if found is not None:
                    i, j, v = found
                    return shift, pq, i, j, v
        return None


# -- degree-level flattening --------------------------------------------------


def degree_blocks(n: int, dims, k: int) -> list[BlockKey]:
    """(p,q) blocks of total degree k, p descending (stable order)."""
    return [(p, k - p) for p in range(min(k, n), -1, -1) if 0 <= k - p <= n]


def degree_dim(n: int, dims, k: int) -> int:
    return sum(dims.get(pq, 0) for pq in degree_blocks(n, dims, k))


def degree_offsets(n: int, dims, k: int) -> dict[BlockKey, int]:
    off = 0
    table = {}
    for pq in degree_blocks(n, dims, k):
        table[pq] = off
        off += dims.get(pq, 0)
    return table


def assemble_degree(op: GradedOperator, k: int, dk: int) -> ExactMatrix:
    """Matrix of the degree-shift-dk part of ``op`` from degree k.

    Components whose total shift differs from dk are ignored, so pass
    the exact shift you mean to extract (the verifier always assembles
    one total degree at a time).
    """
    n, dims = op.n, op.dims
    src_off = degree_offsets(n, dims, k)
    tgt_off = degree_offsets(n, dims, k + dk)
    out = _MutableBlockMatrix(degree_dim(n, dims, k + dk), degree_dim(n, dims, k))
    for (dp, dq), blocks in op.components.items():
        if dp + dq != dk:
            continue
        for (p, q), mat in blocks.items():
            if p + q != k:
                continue
            out.add_block(tgt_off[(p + dp, q + dq)], src_off[(p, q)], mat)
    return out.freeze()


def embed_in_degree(n: int, dims, pq: BlockKey, mat: ExactMatrix) -> ExactMatrix:
    """Embed a (p,q)-block column family into degree-(p+q) coordinates."""
    k = pq[0] + pq[1]
    out = _MutableBlockMatrix(degree_dim(n, dims, k), mat.cols)
    out.add_block(degree_offsets(n, dims, k)[pq], 0, mat)
    return out.freeze()


class _MutableBlockMatrix:
    """Scratch grid for assembling block matrices entrywise."""

    def __init__(self, rows, cols):
        self.rows = rows
        self.cols = cols
        self.grid = [[GaussianRational(0)] * cols for _ in range(rows)]

    def add_block(self, roff, coff, mat: ExactMatrix):
        for i in range(mat.rows):
            row = self.grid[roff + i]
            for j in range(mat.cols):
                v = mat.entry(i, j)
                if v:
                    row[coff + j] = row[coff + j] + v

    def freeze(self) -> ExactMatrix:
        if self.rows == 0 or self.cols == 0:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix.from_entries(self.grid)


# -- the package ---------------------------------------------------------------


class KahlerPackage:
    """A finite-dimensional bigraded inner-product complex."""

    def __init__(self, n, dims, grams, partial, dbar, lef, conj=None):
        self.n = n
        self.dims = {pq: int(dims.get(pq, 0)) for pq in block_keys(n)}
        self.grams = {}
        for pq, dim in self.dims.items():
            if dim == 0:
                continue
            gram = grams.get(pq)
            if gram is None:
                raise ShapeMismatchError(f"missing Gram for block {pq}")
            if gram.dim != dim:
                raise ShapeMismatchError(
                    f"Gram for block {pq} has dim {gram.dim}, expected {dim}"
                )
            self.grams[pq] = gram
        self.partial = self._clean_blocks(partial, (1, 0), "partial")
        self.dbar = self._clean_blocks(dbar, (0, 1), "dbar")
        self.lef = self._clean_blocks(lef, (1, 1), "L")
        self.conj = None
        if conj is not None:
            cleaned = {}
            for (p, q), mat in conj.items():
                tgt = self.dims.get((q, p), 0)
                src = self.dims.get((p, q), 0)
                if mat.shape != (tgt, src):
                    raise ShapeMismatchError(
                        f"conj block ({p},{q}): shape {mat.shape}, "
                        f"expected ({tgt},{src})"
                    )
                if src and tgt:
                    cleaned[(p, q)] = mat
            self.conj = cleaned
        self._derived = None

    def _clean_blocks(self, blocks, shift, label):
        out = {}
        for (p, q), mat in (blocks or {}).items():
            tgt = self.dims.get((p + shift[0], q + shift[1]), 0)
            src = self.dims.get((p, q), 0)
            if mat.shape != (tgt, src):
                raise ShapeMismatchError(
                    f"{label} block ({p},{q}): shape {mat.shape}, "
                    f"expected ({tgt},{src})"
                )
            if src and tgt and not mat.is_zero():
                out[(p, q)] = mat
        return out

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def operator(self, blocks, shift) -> GradedOperator:
        return GradedOperator.from_blocks(self.n, self.dims, shift, blocks)

    def derived(self) -> "DerivedOperators":
        if self._derived is None:
            self._derived = DerivedOperators.build(self)
        return self._derived

    def conjugation_apply(self, pq: BlockKey, columns: ExactMatrix) -> ExactMatrix:
        """Apply the antilinear conjugation to a column family at (p,q)."""
        if self.conj is None:
            raise ShapeMismatchError("package carries no conjugation data")
        block = self.conj.get(pq)
        if block is None:
            tgt = self.dims.get((pq[1], pq[0]), 0)
            return ExactMatrix.zeros(tgt, columns.cols)
        return block @ columns.conjugate()

    # -- direct sums ------------------------------------------------------

    @staticmethod
    def direct_sum(packages) -> "KahlerPackage":
        """Blockwise direct sum; conjugation kept only if all parts have it."""
        packages = list(packages)
        if not packages:
            raise ShapeMismatchError("empty direct sum")
        n = packages[0].n
        if any(p.n != n for p in packages):
            raise ShapeMismatchError("direct sum requires equal weight n")
        dims = {
            pq: sum(p.dims.get(pq, 0) for p in packages) for pq in block_keys(n)
        }
        grams = {}
        for pq in block_keys(n):
            mats = [p.grams[pq].matrix for p in packages if pq in p.grams]
            if mats:
                grams[pq] = HermitianGram(_block_diag(mats))
        def summed(attr, target):
            out = {}
            for pq in block_keys(n):
                tgt_pq = target(pq)
                if dims.get(pq, 0) == 0 or dims.get(tgt_pq, 0) == 0:
                    continue
                parts = []
                for p in packages:
                    src = p.dims.get(pq, 0)
                    tgt = p.dims.get(tgt_pq, 0)
                    blk = getattr(p, attr).get(pq)
                    parts.append(blk if blk is not None else ExactMatrix.zeros(tgt, src))
                out[pq] = _block_diag_rect(parts)
            return out
        partial = summed("partial", lambda pq: (pq[0] + 1, pq[1]))
        dbar = summed("dbar", lambda pq: (pq[0], pq[1] + 1))
        lef = summed("lef", lambda pq: (pq[0] + 1, pq[1] + 1))
        conj = None
        if all(p.conj is not None for p in packages):
            conj = {}
            for pq in block_keys(n):
                tgt_pq = (pq[1], pq[0])
                if dims.get(pq, 0) == 0 or dims.get(tgt_pq, 0) == 0:
                    continue
                parts = []
                for p in packages:
                    src = p.dims.get(pq, 0)
                    tgt = p.dims.get(tgt_pq, 0)
                    blk = p.conj.get(pq)
                    parts.append(blk if blk is not None else ExactMatrix.zeros(tgt, src))
                conj[pq] = _block_diag_rect(parts)
        return KahlerPackage(n, dims, grams, partial, dbar, lef, conj)

    # -- serialization -----------------------------------------------------

    def to_dict(self, eigenvalues=None) -> dict:
        doc = {
            "format": "kahler-package/1",
            "n": self.n,
            "dims": {_key_str(pq): d for pq, d in self.dims.items()},
            "gram": {
                _key_str(pq): _matrix_strings(g.matrix)
                for pq, g in sorted(self.grams.items())
            },
            "partial": _blockmap_strings(self.partial),
            "dbar": _blockmap_strings(self.dbar),
            "L": _blockmap_strings(self.lef),
        }
        if self.conj is not None:
            doc["conj"] = _blockmap_strings(self.conj)
        if eigenvalues is not None:
            doc["eigenvalues"] = [format_rational(mu) for mu in eigenvalues]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> tuple["KahlerPackage", list[Fraction] | None]:
        try:
            n = int(doc["n"])
        except (KeyError, TypeError, ValueError):
            raise ParseError("package document needs an integer field 'n'")
        dims = {}
        for key, value in doc.get("dims", {}).items():
            dims[_parse_key(key)] = int(value)
        grams = {
            pq: HermitianGram(mat)
            for pq, mat in _parse_blockmap(doc.get("gram", {})).items()
        }
        partial = _parse_blockmap(doc.get("partial", {}))
        dbar = _parse_blockmap(doc.get("dbar", {}))
        lef = _parse_blockmap(doc.get("L", {}))
        conj = _parse_blockmap(doc["conj"]) if "conj" in doc else None
        eigenvalues = None
        if "eigenvalues" in doc:
            eigenvalues = sorted(parse_rational(s) for s in doc["eigenvalues"])
        pkg = cls(n, dims, grams, partial, dbar, lef, conj)
        return pkg, eigenvalues

    def save(self, path, eigenvalues=None) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(eigenvalues=eigenvalues), fh, sort_keys=True, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> tuple["KahlerPackage", list[Fraction] | None]:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid package file: {exc}") from None
        return cls.from_dict(doc)


@dataclass
class DerivedOperators:
    """Operators derived from a package: adjoints, d, the Laplacian,
    the dual Lefschetz operator and the counting operator."""

    P: GradedOperator
    Q: GradedOperator
    L: GradedOperator
    P_star: GradedOperator
    Q_star: GradedOperator
    d: GradedOperator
    d_star: GradedOperator
    delta: GradedOperator
    Lambda: GradedOperator
    H: GradedOperator

    @staticmethod
    def build(pkg: KahlerPackage) -> "DerivedOperators":
        for gram in pkg.grams.values():
            gram.validate()
        P = pkg.operator(pkg.partial, (1, 0))
        Q = pkg.operator(pkg.dbar, (0, 1))
        L = pkg.operator(pkg.lef, (1, 1))
        P_star = P.adjoint(pkg.grams)
        Q_star = Q.adjoint(pkg.grams)
        d = P + Q
        d_star = P_star + Q_star
        delta = (d @ d_star) + (d_star @ d)
        Lambda = L.adjoint(pkg.grams)
        H = GradedOperator.counting(pkg.n, pkg.dims)
        return DerivedOperators(P, Q, L, P_star, Q_star, d, d_star, delta, Lambda, H)


# -- helpers -------------------------------------------------------------------


def _block_diag(mats) -> ExactMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = _MutableBlockMatrix(rows, cols)
    r = c = 0
    for m in mats:
        out.add_block(r, c, m)
        r += m.rows
        c += m.cols
    return out.freeze()


def _block_diag_rect(mats) -> ExactMatrix:
    return _block_diag(mats)


def _key_str(pq: BlockKey) -> str:
    return f"{pq[0]},{pq[1]}"


def _parse_key(key: str) -> BlockKey:
    try:
        p, q = key.split(",")
        return (int(p), int(q))
    except ValueError:
        raise ParseError(f"malformed block key {key!r}") from None


def _matrix_strings(mat: ExactMatrix) -> list[list[str]]:
    return [[str(mat.entry(i, j)) for j in range(mat.cols)] for i in range(mat.rows)]


def _blockmap_strings(blocks) -> dict:
    return {
        _key_str(pq): _matrix_strings(mat) for pq, mat in sorted(blocks.items())
    }


def _parse_blockmap(doc) -> dict[BlockKey, ExactMatrix]:
    out = {}
    for key, rows in doc.items():
        pq = _parse_key(key)
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise ParseError(f"block {key!r} must be an array of arrays")
        entries = [[GaussianRational.parse(s) for s in row] for row in rows]
        out[pq] = ExactMatrix.from_entries(entries)
    return out


@lru_cache(maxsize=None)
def _binomial_dims(n: int) -> tuple:
    from math import comb

    return tuple(
        ((p, q), comb(n, p) * comb(n, q)) for p in range(n + 1) for q in range(n + 1)
    )


def exterior_dims(n: int) -> dict[BlockKey, int]:
    """The dims table of the full exterior algebra of C^n."""
    return dict(_binomial_dims(n))
