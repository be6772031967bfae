"""GL(1), GL(2), AGL(1), AGL(2) over a FieldCtx.

An affine element is stored as a pair ``(linear, translation)`` and acts as
the block matrix ``[[1, 0], [alpha, A]]``, so

    (alpha, A) * (beta, B) = (alpha + A beta, A B).

Components are field codes; the canonical integer encoding reads the
component vector (linear part row-major, then translation) as base-q digits,
least significant first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .ffield import FieldCtx

DEFAULT_MAX_GROUP_ORDER = 2**30


class GroupError(ValueError):
    pass


def max_group_order(default: int = DEFAULT_MAX_GROUP_ORDER) -> int:
    env = os.environ.get("KNOTVAR_MAX_GROUP_ORDER")
    return int(env) if env else default


@dataclass(frozen=True)
class GroupDescriptor:
    ctx: FieldCtx
    rank: int
    affine: bool

    def __post_init__(self):
        if self.rank not in (1, 2):
            raise GroupError(f"rank must be 1 or 2, got {self.rank}")

    @property
    def name(self) -> str:
        return f"{'A' if self.affine else ''}GL{self.rank}(F_{self.ctx.q})"

    def __repr__(self) -> str:
        return f"GroupDescriptor({self.name})"

    @property
    def ncomp(self) -> int:
        return self.rank * self.rank + (self.rank if self.affine else 0)

    def order(self) -> int:
        q, r = self.ctx.q, self.rank
        gl = q - 1 if r == 1 else (q * q - 1) * (q * q - q)
        return gl * (q**r if self.affine else 1)

    @property
    def code_bound(self) -> int:
        return self.ctx.q**self.ncomp

    # -- scalar API ---------------------------------------------------------
    def element(self, linear, translation=()) -> "GroupElement":
        lin = tuple(int(x) for x in linear)
        tr = tuple(int(x) for x in translation)
        if len(lin) != self.rank**2 or len(tr) != (self.rank if self.affine else 0):
            raise GroupError(f"bad component shape for {self.name}")
        if _det(self.ctx, lin) == 0:
            raise GroupError("singular linear part")
        return GroupElement(self, lin, tr)

    @property
    def identity(self) -> "GroupElement":
        lin = (1,) if self.rank == 1 else (1, 0, 0, 1)
        return GroupElement(self, lin, (0,) * (self.rank if self.affine else 0))

    def mul(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        if g.group != self or h.group != self:
            raise GroupError(f"descriptor mismatch: {g.group!r} vs {h.group!r}")
        ctx = self.ctx
        lin = _matmul(ctx, g.linear, h.linear)
        if not self.affine:
            return GroupElement(self, lin, ())
        av = _matvec(ctx, g.linear, h.translation)
        tr = tuple(ctx.add(a, b) for a, b in zip(g.translation, av))
        return GroupElement(self, lin, tr)

    def inverse(self, g: "GroupElement") -> "GroupElement":
        ctx = self.ctx
        linv = _matinv(ctx, g.linear)
        if not self.affine:
            return GroupElement(self, linv, ())
        t = _matvec(ctx, linv, g.translation)
        return GroupElement(self, linv, tuple(ctx.neg(x) for x in t))

    def pow(self, g: "GroupElement", e: int) -> "GroupElement":
        if e < 0:
            g, e = self.inverse(g), -e
        result, base = self.identity, g
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def encode(self, g: "GroupElement") -> int:
        q = self.ctx.q
        code = 0
        for c in reversed(g.components):
            code = code * q + c
        return code

    def decode(self, code: int) -> "GroupElement":
        if not 0 <= code < self.code_bound:
            raise GroupError(f"invalid code {code} for {self.name}")
        q = self.ctx.q
        comps = []
        for _ in range(self.ncomp):
            code, r = divmod(code, q)
            comps.append(r)
        r2 = self.rank**2
        lin = tuple(comps[:r2])
        if _det(self.ctx, lin) == 0:
            raise GroupError("code decodes to a singular matrix")
        return GroupElement(self, lin, tuple(comps[r2:]))

    def elements(self, bound: int | None = None) -> Iterator["GroupElement"]:
        """Every element once, ascending canonical code."""
        check_order(self, bound)
        r2 = self.rank**2
        for batch in self.batches():
            for row in batch.tolist():
                yield GroupElement(self, tuple(row[:r2]), tuple(row[r2:]))

    # -- batch API (numpy, rows of components) ------------------------------
    def linear_codes(self) -> np.ndarray:
        """Components of every invertible linear part, ascending code."""
        q = self.ctx.q
        if self.rank == 1:
            return np.arange(1, q, dtype=np.int64)[:, None]
        out = []
        for a00 in range(q):
            cand = _digit_grid(q, 3)  # (a01, a10, a11) ascending code
            full = np.concatenate([np.full((len(cand), 1), a00, dtype=np.int64), cand], axis=1)
            det = batch_det(self.ctx, full)
            out.append(full[det != 0])
        lin = np.concatenate(out)
        order = np.argsort(batch_encode_comps(q, lin), kind="stable")
        return lin[order]

    def batches(self, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
        """Component arrays covering the group in ascending code order."""
        lin = self.linear_codes()
        if not self.affine:
            for i in range(0, len(lin), chunk):
                yield lin[i:i + chunk]
            return
        q, r = self.ctx.q, self.rank
        per = max(1, chunk // len(lin))
        trans = _digit_grid(q, r)
        for i in range(0, len(trans), per):
            tr = trans[i:i + per]
            rep_lin = np.tile(lin, (len(tr), 1))
            rep_tr = np.repeat(tr, len(lin), axis=0)
            yield np.concatenate([rep_lin, rep_tr], axis=1)

    def all_components(self) -> np.ndarray:
        check_order(self, None)
        return np.concatenate(list(self.batches()))

    def batch_mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        ctx, r2 = self.ctx, self.rank**2
        lin = batch_matmul(ctx, X[:, :r2], Y[:, :r2], self.rank)
        if not self.affine:
            return lin
        av = batch_matvec(ctx, X[:, :r2], Y[:, r2:], self.rank)
        tr = ctx.add_table[X[:, r2:], av]
        return np.concatenate([lin, tr], axis=1)

    def batch_identity(self, n: int) -> np.ndarray:
        return np.tile(np.array(self.identity.components, dtype=np.int64), (n, 1))

    def batch_pow(self, X: np.ndarray, e: int) -> np.ndarray:
        if e < 0:
            raise GroupError("batch_pow takes a nonnegative exponent")
        result = self.batch_identity(len(X))
        base = X
        while e:
            if e & 1:
                result = self.batch_mul(result, base)
            e >>= 1
            if e:
                base = self.batch_mul(base, base)
        return result

    def batch_encode(self, X: np.ndarray) -> np.ndarray:
        return batch_encode_comps(self.ctx.q, X)


@dataclass(frozen=True)
class GroupElement:
    group: GroupDescriptor
    linear: tuple[int, ...]
    translation: tuple[int, ...] = ()

    @property
    def components(self) -> tuple[int, ...]:
        return self.linear + self.translation

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.mul(self, other)

    def __pow__(self, e: int) -> "GroupElement":
        return self.group.pow(self, e)

    def inverse(self) -> "GroupElement":
        return self.group.inverse(self)

    @property
    def code(self) -> int:
        return self.group.encode(self)

    @property
    def linear_element(self) -> "GroupElement":
        """The linear part as an element of GL_r."""
        g = self.group
        return GroupElement(GroupDescriptor(g.ctx, g.rank, False), self.linear, ())

    def __repr__(self) -> str:
        if self.group.affine:
            return f"<{self.group.name} A={list(self.linear)} alpha={list(self.translation)}>"
        return f"<{self.group.name} {list(self.linear)}>"


def gmul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g.group.mul(g, h)


def gpow(g: GroupElement, e: int) -> GroupElement:
    return g.group.pow(g, e)


def gencode(g: GroupElement) -> int:
    return g.group.encode(g)


def gdecode(d: GroupDescriptor, i: int) -> GroupElement:
    return d.decode(i)


def genumerate(d: GroupDescriptor, bound: int | None = None) -> Iterator[GroupElement]:
    return d.elements(bound)


def check_order(d: GroupDescriptor, bound: int | None) -> None:
    bound = max_group_order() if bound is None else bound
    if d.order() > bound:
        raise GroupError(f"|{d.name}| = {d.order()} exceeds enumeration bound {bound}")


# -- scalar matrix helpers (flat row-major tuples of codes) ------------------

def _det(ctx: FieldCtx, a: tuple[int, ...]) -> int:
    if len(a) == 1:
        return a[0]
    return ctx.sub(ctx.mul(a[0], a[3]), ctx.mul(a[1], a[2]))


def _matmul(ctx: FieldCtx, a, b) -> tuple[int, ...]:
    if len(a) == 1:
        return (ctx.mul(a[0], b[0]),)
    m, s = ctx.mul, ctx.add
    return (s(m(a[0], b[0]), m(a[1], b[2])), s(m(a[0], b[1]), m(a[1], b[3])),
            s(m(a[2], b[0]), m(a[3], b[2])), s(m(a[2], b[1]), m(a[3], b[3])))


def _matvec(ctx: FieldCtx, a, v) -> tuple[int, ...]:
    if len(a) == 1:
        return (ctx.mul(a[0], v[0]),)
    m, s = ctx.mul, ctx.add
    return (s(m(a[0], v[0]), m(a[1], v[1])), s(m(a[2], v[0]), m(a[3], v[1])))


def _matinv(ctx: FieldCtx, a) -> tuple[int, ...]:
    if len(a) == 1:
        return (ctx.inv(a[0]),)
    di = ctx.inv(_det(ctx, a))
    m = ctx.mul
    return (m(a[3], di), m(ctx.neg(a[1]), di), m(ctx.neg(a[2]), di), m(a[0], di))


# -- vectorized helpers -------------------------------------------------------

def _digit_grid(q: int, width: int) -> np.ndarray:
    """All width-digit base-q vectors, ascending by sum(d_i q^i)."""
    codes = np.arange(q**width, dtype=np.int64)
    out = np.empty((len(codes), width), dtype=np.int64)
    for i in range(width):
        codes, out[:, i] = np.divmod(codes, q)
    return out


def batch_encode_comps(q: int, X: np.ndarray) -> np.ndarray:
    code = np.zeros(len(X), dtype=np.int64)
    for i in range(X.shape[1] - 1, -1, -1):
        code = code * q + X[:, i]
    return code


def batch_det(ctx: FieldCtx, A: np.ndarray) -> np.ndarray:
    if A.shape[1] == 1:
        return A[:, 0]
    M, S, N = ctx.mul_table, ctx.add_table, ctx.neg_table
    return S[M[A[:, 0], A[:, 3]], N[M[A[:, 1], A[:, 2]]]]


def batch_matmul(ctx: FieldCtx, A: np.ndarray, B: np.ndarray, rank: int) -> np.ndarray:
    M, S = ctx.mul_table, ctx.add_table
    if rank == 1:
        return M[A[:, 0], B[:, 0]][:, None]
    return np.stack([
        S[M[A[:, 0], B[:, 0]], M[A[:, 1], B[:, 2]]],
        S[M[A[:, 0], B[:, 1]], M[A[:, 1], B[:, 3]]],
        S[M[A[:, 2], B[:, 0]], M[A[:, 3], B[:, 2]]],
        S[M[A[:, 2], B[:, 1]], M[A[:, 3], B[:, 3]]],
    ], axis=1)


def batch_matvec(ctx: FieldCtx, A: np.ndarray, v: np.ndarray, rank: int) -> np.ndarray:
    M, S = ctx.mul_table, ctx.add_table
    if rank == 1:
        return M[A[:, 0], v[:, 0]][:, None]
    return np.stack([
        S[M[A[:, 0], v[:, 0]], M[A[:, 1], v[:, 1]]],
        S[M[A[:, 2], v[:, 0]], M[A[:, 3], v[:, 1]]],
    ], axis=1)


def batch_matadd(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return ctx.add_table[A, B]


def batch_cyclotomic_sum(ctx: FieldCtx, A: np.ndarray, l: int) -> np.ndarray:
    """Phi_l(A) = I + A + ... + A^(l-1) for a batch of 2x2 (or 1x1) matrices."""
    rank = 1 if A.shape[1] == 1 else 2
    ident = np.array([1] if rank == 1 else [1, 0, 0, 1], dtype=np.int64)
    # Horner: acc <- acc * A + I
    acc = np.tile(ident, (len(A), 1))
    for _ in range(l - 1):
        acc = ctx.add_table[batch_matmul(ctx, acc, A, rank), ident[None, :]]
    return acc
