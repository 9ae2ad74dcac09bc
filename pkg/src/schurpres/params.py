"""Parameter bundle shared by the torus, tensor and presentation layers."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .exact_arith import Field, floor_log, is_prime
from .weights import RSParams


@dataclass(frozen=True)
class AlgebraParams:
    """(n, r, s) plus the ground field: p = 0 for characteristic 0, else q = p**m.

    The polynomial Schur algebra S(n, d) is the case s = 0, r = d.
    """

    n: int
    r: int
    s: int = 0
    p: int = 0
    m: int = 0

    def __post_init__(self):
        if self.n < 1 or self.r < 0 or self.s < 0:
            raise ParameterError(f"invalid (n, r, s) = ({self.n}, {self.r}, {self.s})")
        if self.p:
            if not is_prime(self.p):
                raise ParameterError(f"p = {self.p} is not prime")
            if self.m < 1:
                raise ParameterError("characteristic p needs m >= 1")
            if self.d >= self.q:
                raise ParameterError(f"need d = r+(n-1)s = {self.d} < q = p^m = {self.q}")
        elif self.m:
            raise ParameterError("m is only meaningful in characteristic p")

    @classmethod
    def polynomial(cls, n: int, d: int, p: int = 0, m: int = 0) -> "AlgebraParams":
        return cls(n, d, 0, p, m)

    @property
    def d(self) -> int:
        return self.r + (self.n - 1) * self.s

    @property
    def q(self) -> int:
        return self.p**self.m if self.p else 0

    @property
    def t(self) -> int:
        """[log_p n], the truncation offset for the infinite j-families."""
        return floor_log(self.n, self.p)

    @property
    def field(self) -> Field:
        return Field(self.p)

    @property
    def rs(self) -> RSParams:
        return RSParams(self.n, self.r, self.s)

    def require_rational(self) -> "AlgebraParams":
        if self.n < 2:
            raise ParameterError("rational Schur algebras need n >= 2")
        return self

    def as_dict(self) -> dict:
        out = {"n": self.n, "r": self.r, "s": self.s, "p": self.p}
        if self.p:
            out["m"] = self.m
        return out
