"""Linear codes given as null spaces of parity-check matrices over F_q.

Matrix entries are packed field elements (see :mod:`gvlab.field`).  A column of
an r-row matrix is packed into one integer with row 0 most significant, so a
column is also the index of a syndrome in a table of size q**r.  Minimum
distance and the greedy GV construction both work on such tables: the entry
for a syndrome s holds the fewest columns (with nonzero coefficients) whose
combination equals s.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    LengthMismatch,
    ParseError,
    PreconditionError,
    SizeGuard,
    TrivialCode,
)
from .field import FieldSpec, field_make

DEFAULT_BUDGET = 1 << 28
ORACLE_LIMIT = 1 << 24
SYNDROME_TABLE_LIMIT = 1 << 24
ENUMERATION_LIMIT = 1 << 28


def default_budget() -> int:
    """Enumeration budget, overridable through the GVLAB_BUDGET variable."""
    raw = os.environ.get("GVLAB_BUDGET")
    if raw:
        try:
            value = int(raw, 0)
        except ValueError:
            raise PreconditionError(f"GVLAB_BUDGET is not an integer: {raw!r}") from None
        if value < 1:
            raise PreconditionError("GVLAB_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


def ball_volume(n: int, w: int, q: int) -> int:
    """Number of vectors in F_q^n of weight at most w."""
    if not 0 <= w <= n:
        raise PreconditionError(f"need 0 <= w <= n, got w={w}, n={n}")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(w + 1))


@dataclass(frozen=True)
class CheckMatrix:
    """An r x n matrix over ``spec``; as a parity-check matrix its null space
    is the code.  Rows may be linearly dependent and r may be zero."""

    spec: FieldSpec
    n: int
    r: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"block length must be >= 1, got {self.n}")
        if self.r != len(self.rows):
            raise PreconditionError(f"r={self.r} but {len(self.rows)} rows given")
        q = self.spec.q
        for row in self.rows:
            if len(row) != self.n:
                raise LengthMismatch(f"row of length {len(row)}, expected {self.n}")
            for x in row:
                if not 0 <= x < q:
                    raise PreconditionError(f"entry {x} is not an element of F_{q}")

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence], n: int | None = None) -> CheckMatrix:
        packed = tuple(tuple(spec.index(x) for x in row) for row in rows)
        if n is None:
            if not packed:
                raise PreconditionError("n is required for a matrix with no rows")
            n = len(packed[0])
        return cls(spec, n, len(packed), packed)

    @classmethod
    def zero(cls, spec: FieldSpec, r: int, n: int) -> CheckMatrix:
        return cls(spec, n, r, tuple((0,) * n for _ in range(r)))

    @classmethod
    def from_columns(cls, spec: FieldSpec, r: int, columns: Sequence[int]) -> CheckMatrix:
        cols = [spec.vec_from_index(c, r) for c in columns]
        rows = tuple(tuple(col[j] for col in cols) for j in range(r))
        return cls(spec, len(columns), r, rows)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(
            self.spec.vec_index([row[i] for row in self.rows]) for i in range(self.n)
        )

    def syndrome(self, word: Sequence[int]) -> tuple[int, ...]:
        """H times ``word`` as a tuple of packed field elements."""
        if len(word) != self.n:
            raise LengthMismatch(f"word of length {len(word)}, expected {self.n}")
        spec = self.spec
        out = []
        for row in self.rows:
            acc = 0
            for h, x in zip(row, word):
                if h and x:
                    acc = spec.add(acc, spec.mul(h, x))
            out.append(acc)
        return tuple(out)

    def contains(self, word: Sequence[int]) -> bool:
        return not any(self.syndrome(word))


@dataclass(frozen=True)
class CodeSummary:
    n: int
    k: int
    rate: float
    d_min: int
    delta: float

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "rate": self.rate, "d_min": self.d_min, "delta": self.delta}


# --- linear algebra over F_q ---------------------------------------------

def row_reduce(spec: FieldSpec, rows: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(n):
        piv = next((i for i in range(top, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        inv = spec.inv(mat[top][col])
        mat[top] = [spec.mul(inv, x) for x in mat[top]]
        for i in range(len(mat)):
            if i != top and mat[i][col]:
                f = mat[i][col]
                mat[i] = [spec.sub(a, spec.mul(f, b)) for a, b in zip(mat[i], mat[top])]
        pivots.append(col)
        top += 1
        if top == len(mat):
            break
    return mat[:top], pivots


def rank(H: CheckMatrix) -> int:
    return len(row_reduce(H.spec, H.rows, H.n)[1])


def null_space(H: CheckMatrix) -> CheckMatrix:
    """A generator matrix (as a CheckMatrix-shaped object) whose rows span ker H."""
    spec, n = H.spec, H.n
    red, pivots = row_reduce(spec, H.rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = spec.neg(row[f])
        basis.append(tuple(v))
    return CheckMatrix(spec, n, len(basis), tuple(basis))


# --- syndrome tables -------------------------------------------------------

def _shift_table(spec: FieldSpec, r: int, c: int) -> np.ndarray:
    """Index array t with t[s] = s + c as vectors of F_q^r."""
    size = spec.q ** r
    idx = np.arange(size, dtype=np.int64)
    if spec.p == 2:
        return idx ^ c
    p = spec.p
    out = np.zeros(size, dtype=np.int64)
    w = 1
    for _ in range(r * spec.m):
        out += ((idx // w + c // w) % p) * w
        w *= p
    return out


def _scaled_columns(spec: FieldSpec, r: int, c: int) -> list[int]:
    vec = spec.vec_from_index(c, r)
    return [spec.vec_index([spec.mul(b, x) for x in vec]) for b in range(1, spec.q)]


class _SyndromeDistances:
    """Fewest-columns table over all q**r syndromes, grown one column at a time."""

    INF = np.uint16(0x7FFF)

    def __init__(self, spec: FieldSpec, r: int):
        self.spec = spec
        self.r = r
        self.dist = np.full(spec.q ** r, self.INF, dtype=np.uint16)
        self.dist[0] = 0

    def __getitem__(self, s: int) -> int:
        v = int(self.dist[s])
        return math.inf if v == self.INF else v

    def add_column(self, c: int) -> None:
        old = self.dist
        best = old.copy()
        for bc in set(_scaled_columns(self.spec, self.r, c)):
            if bc == 0:
                continue
            cand = old[_shift_table(self.spec, self.r, bc)]
            np.minimum(best, np.minimum(cand, self.INF - 1) + 1, out=best)
        self.dist = best


# --- minimum distance ------------------------------------------------------

def _min_distance_syndrome(H: CheckMatrix, budget: int) -> int | None:
    spec, r = H.spec, H.r
    work = H.n * (spec.q - 1) * spec.q ** r
    if work > budget:
        raise SizeGuard(f"syndrome search needs {work} table updates, budget {budget}")
    table = _SyndromeDistances(spec, r)
    best = math.inf
    for c in H.columns:
        # a codeword whose last support position is this column
        best = min(best, table[c] + 1)
        if best == 1:
            return 1
        table.add_column(c)
    return None if best == math.inf else int(best)


def _min_distance_enumerate(H: CheckMatrix, budget: int) -> int | None:
    spec, n, q = H.spec, H.n, H.spec.q
    cols = H.columns
    width = H.r
    # scaled[i][b-1] = b * column i, packed
    scaled = [_scaled_columns(spec, width, c) for c in cols]

    if spec.p == 2:
        def vadd(u, v):
            return u ^ v
    else:
        p, digits = spec.p, width * spec.m

        def vadd(u, v):
            out, w = 0, 1
            for _ in range(digits):
                out += ((u // w + v // w) % p) * w
                w *= p
            return out

    spent = 0
    for w in range(1, n + 1):
        spent += math.comb(n, w) * (q - 1) ** (w - 1)
        if spent > budget:
            raise SizeGuard(f"enumeration of weight {w} exceeds budget {budget}")
        for support in itertools.combinations(range(n), w):
            head = scaled[support[0]][0]
            for vals in itertools.product(range(1, q), repeat=w - 1):
                s = head
                for i, b in zip(support[1:], vals):
                    s = vadd(s, scaled[i][b - 1])
                if s == 0:
                    return w
    return None


def min_distance(H: CheckMatrix, budget: int | None = None, method: str = "auto") -> CodeSummary:
    """Exact minimum distance of ker H, probing weights in increasing order.

    ``method="syndrome"`` grows a fewest-columns table over all syndromes;
    ``method="enumerate"`` tests candidate words weight by weight.  ``auto``
    picks the table whenever it fits in memory.
    """
    budget = default_budget() if budget is None else budget
    k = H.n - rank(H)
    if k == 0:
        raise TrivialCode("null space is {0}; the code has no nonzero codeword")
    if method == "auto":
        method = "syndrome" if H.spec.q ** H.r <= SYNDROME_TABLE_LIMIT else "enumerate"
    if method == "syndrome":
        d = _min_distance_syndrome(H, budget)
    elif method == "enumerate":
        d = _min_distance_enumerate(H, budget)
    else:
        raise PreconditionError(f"unknown method {method!r}")
    if d is None:
        raise AssertionError("positive-dimensional code without a nonzero codeword")
    return CodeSummary(n=H.n, k=k, rate=k / H.n, d_min=d, delta=d / H.n)


def min_distance_oracle(G: CheckMatrix) -> int:
    """Minimum nonzero weight over every codeword spanned by the rows of G."""
    spec, q = G.spec, G.spec.q
    if q ** G.r > ORACLE_LIMIT:
        raise SizeGuard(f"{q}^{G.r} codewords exceed the oracle limit {ORACLE_LIMIT}")
    words = np.zeros((1, G.n), dtype=np.int64)
    for row in G.rows:
        g = np.array(row, dtype=np.int64)
        words = np.concatenate(
            [spec.add_array(words, spec.scale_array(a, g)[None, :]) for a in range(q)]
        )
    weights = np.count_nonzero(words, axis=1)
    nonzero = weights[weights > 0]
    if nonzero.size == 0:
        raise TrivialCode("generator rows span only the zero word")
    return int(nonzero.min())


# --- low-weight enumeration -------------------------------------------------

def low_weight_count(n: int, wmax: int, q: int) -> int:
    return ball_volume(n, wmax, q) - 1


def enumerate_low_weight(
    n: int, wmax: int, spec: FieldSpec, start_weight: int = 1, start_index: int = 0
) -> Iterator[tuple[int, ...]]:
    """Yield every nonzero vector of weight 1..wmax once, ordered by weight,
    then support, then values.  ``start_weight``/``start_index`` resume the
    stream at the given position within that weight class."""
    if not 1 <= wmax <= n:
        raise PreconditionError(f"need 1 <= wmax <= n, got wmax={wmax}, n={n}")
    total = low_weight_count(n, wmax, spec.q)
    if total > ENUMERATION_LIMIT:
        raise SizeGuard(f"{total} low-weight vectors exceed {ENUMERATION_LIMIT}")
    return _low_weight_stream(n, wmax, spec.q, start_weight, start_index)


def _low_weight_stream(n, wmax, q, start_weight, start_index):
    for w in range(start_weight, wmax + 1):
        stream = _weight_class(n, w, q)
        if w == start_weight and start_index:
            stream = itertools.islice(stream, start_index, None)
        yield from stream


def _weight_class(n: int, w: int, q: int) -> Iterator[tuple[int, ...]]:
    for support in itertools.combinations(range(n), w):
        for vals in itertools.product(range(1, q), repeat=w):
            vec = [0] * n
            for i, v in zip(support, vals):
                vec[i] = v
            yield tuple(vec)


# --- constructions ------------------------------------------------------------

def gv_greedy_construct(n: int, d: int, spec: FieldSpec) -> CheckMatrix:
    """Greedy Varshamov construction of a check matrix with d_min >= d.

    For r = 1, 2, ... columns are chosen in increasing packed order, each the
    first nonzero vector not expressible through d-2 or fewer earlier columns.
    The first r for which all n columns can be placed is returned.
    """
    if not 2 <= d <= n:
        raise PreconditionError(f"need 2 <= d <= n, got d={d}, n={n}")
    q = spec.q
    r = 1
    while True:
        if q ** r > SYNDROME_TABLE_LIMIT:
            raise SizeGuard(f"column space {q}^{r} exceeds {SYNDROME_TABLE_LIMIT}")
        table = _SyndromeDistances(spec, r)
        chosen: list[int] = []
        for _ in range(n):
            free = np.flatnonzero(table.dist >= d - 1)
            if free.size == 0:
                break
            c = int(free[0])
            chosen.append(c)
            if len(chosen) < n:
                table.add_column(c)
        if len(chosen) == n:
            return CheckMatrix.from_columns(spec, r, chosen)
        r += 1


def random_matrix(n: int, r: int, spec: FieldSpec, seed: int) -> CheckMatrix:
    """Uniform r x n matrix from numpy's PCG64 generator seeded with ``seed``.

    Entries are drawn row-major by ``Generator.integers(0, q)``; the stream is
    the same on every platform for a given numpy major version.
    """
    entries = random_entries(n, r, spec, seed, 1)[0]
    return CheckMatrix(spec, n, r, tuple(tuple(int(x) for x in row) for row in entries))


def random_entries(n: int, r: int, spec: FieldSpec, seed: int, count: int) -> np.ndarray:
    """``count`` matrices from one seeded stream; the first equals random_matrix."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, spec.q, size=(count, r, n), dtype=np.int64)


def hamming_check_matrix(r: int = 3) -> CheckMatrix:
    """Binary Hamming check matrix: column j is j written in binary, j = 1 .. 2^r - 1."""
    spec = field_make(2, 1)
    return CheckMatrix.from_columns(spec, r, list(range(1, 2 ** r)))


def matrix_index(H: CheckMatrix) -> int:
    """Position of H in the row-major base-q ordering of all r x n matrices."""
    out = 0
    for row in H.rows:
        for x in row:
            out = out * H.spec.q + x
    return out


def matrix_from_index(spec: FieldSpec, n: int, r: int, idx: int) -> CheckMatrix:
    flat = spec.vec_from_index(idx, r * n)
    return CheckMatrix(spec, n, r, tuple(flat[j * n:(j + 1) * n] for j in range(r)))


# --- text format --------------------------------------------------------------

def format_matrix(H: CheckMatrix) -> str:
    spec = H.spec
    lines = [f"{spec.p} {spec.m} {H.n} {H.r}"]
    for row in H.rows:
        lines.append(" ".join(":".join(map(str, spec.coords(x))) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, spec: FieldSpec | None = None) -> CheckMatrix:
    """Read the "p m n r" header format; elements are colon-joined residues."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        p, m, n, r = (int(t) for t in lines[0].split())
    except ValueError:
        raise ParseError(f"bad header {lines[0]!r}; expected 'p m n r'") from None
    if spec is None:
        spec = field_make(p, m)
    elif (spec.p, spec.m) != (p, m):
        raise ParseError(f"file is over F_{p}^{m}, expected F_{spec.p}^{spec.m}")
    body = lines[1:]
    if len(body) != r:
        raise ParseError(f"header announces {r} rows, found {len(body)}")
    rows = []
    for ln in body:
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"row has {len(toks)} entries, expected {n}")
        try:
            rows.append(tuple(spec.from_coords([int(c) for c in t.split(":")]) for t in toks))
        except ValueError as exc:
            raise ParseError(f"bad entry in row {ln!r}: {exc}") from None
    return CheckMatrix(spec, n, r, tuple(rows))
