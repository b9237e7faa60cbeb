"""Timing comparison of iterative vs doubling evaluation of (u_n, v_n).

With a prime modulus the run uses raw-integer modular loops (the fastest
honest realization of each strategy, so the reported speedup is
conservative); without one it falls back to the exact generic paths.
Correctness is asserted by comparing both strategies' results.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .field import PrimeField, format_scalar
from .sequences import HoradamParams, SequenceKind, fast_uv, term


@dataclass(frozen=True)
class BenchReport:
    n: int
    modulus: Optional[int]
    u: object
    v: object
    iterative_seconds: float
    doubling_seconds: float
    iterative_steps: int
    doubling_steps: int
    results_match: bool

    @property
    def speedup(self) -> float:
        if self.doubling_seconds == 0:
            return float("inf")
        return self.iterative_seconds / self.doubling_seconds

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "modulus": self.modulus,
            "u": format_scalar(self.u),
            "v": format_scalar(self.v),
            "iterative_seconds": self.iterative_seconds,
            "doubling_seconds": self.doubling_seconds,
            "iterative_steps": self.iterative_steps,
            "doubling_steps": self.doubling_steps,
            "results_match": self.results_match,
            "speedup": self.speedup,
        }


def _iterative_uv_mod(p: int, q: int, n: int, mod: int):
    x0, x1 = 0, 1
    for _ in range(n):
        x0, x1 = x1, (p * x1 - q * x0) % mod
    return x0, (2 * x1 - p * x0) % mod


def _doubling_uv_mod(p: int, q: int, n: int, mod: int):
    uk, uk1 = 0, 1
    for i in range(n.bit_length() - 1, -1, -1):
        u2 = uk * (2 * uk1 - p * uk) % mod
        u21 = (uk1 * uk1 - q * uk * uk) % mod
        if (n >> i) & 1:
            uk, uk1 = u21, (p * u21 - q * u2) % mod
        else:
            uk, uk1 = u2, u21
    return uk, (2 * uk1 - p * uk) % mod


def run_bench(p: Fraction, q: Fraction, n: int, modulus: Optional[int] = None) -> BenchReport:
    """Time both strategies for u_n, v_n and check they agree.

    modulus, when given, must be prime (negative-index division and rational
    parameter reduction need invertibility).
    """
    if n < 1:
        raise ValueError("bench needs n >= 1")
    if modulus is not None:
        fld = PrimeField(modulus)  # raises CompositeModulus
        pm, qm = fld(Fraction(p)).value, fld(Fraction(q)).value
        t0 = time.perf_counter()
        it_u, it_v = _iterative_uv_mod(pm, qm, n, modulus)
        t1 = time.perf_counter()
        db_u, db_v = _doubling_uv_mod(pm, qm, n, modulus)
        t2 = time.perf_counter()
        u, v = fld(db_u), fld(db_v)
        match = (it_u, it_v) == (db_u, db_v)
    else:
        params = HoradamParams(0, 1, p, q)
        t0 = time.perf_counter()
        it_u = term(params, SequenceKind.U, n)
        it_v = term(params, SequenceKind.V, n)
        t1 = time.perf_counter()
        u, v = fast_uv(params, n)
        t2 = time.perf_counter()
        match = (it_u, it_v) == (u, v)
    return BenchReport(
        n=n,
        modulus=modulus,
        u=u,
        v=v,
        iterative_seconds=t1 - t0,
        doubling_seconds=t2 - t1,
        iterative_steps=n,
        doubling_steps=n.bit_length(),
        results_match=match,
    )
