"""Exact rational functions in two variables ``q`` and ``t``.

:class:`QTCoeff` is a reduced fraction of integer polynomials backed by
FLINT's ``fmpz_mpoly``.  The canonical form has ``gcd(num, den) = 1`` and a
denominator whose leading coefficient (graded lexicographic order, ``q > t``)
is positive, so equality is structural and hashing is well defined.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational

import flint

from ._config import PoleError

CTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "deglex")
_Q, _T = CTX.gens()
_ONE = CTX.from_dict({(0, 0): 1})
_ZERO = CTX.from_dict({})


def _const(c: int):
    return CTX.from_dict({(0, 0): int(c)}) if c else _ZERO


class QTCoeff:
    """Element of Q(q, t) in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, *, _reduced=False):
        if isinstance(num, QTCoeff):
            if den is not None:
                raise TypeError("cannot combine a QTCoeff numerator with a denominator")
            self.num, self.den = num.num, num.den
            return
        num = _as_poly(num)
        den = _ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("QTCoeff with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = _ONE
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------
    @classmethod
    def q(cls) -> "QTCoeff":
        return cls(_Q, _reduced=True)

    @classmethod
    def t(cls) -> "QTCoeff":
        return cls(_T, _reduced=True)

    @classmethod
    def from_dict(cls, terms: dict, den: dict | None = None) -> "QTCoeff":
        """Build from ``{(i, j): coeff}`` meaning ``coeff * q**i * t**j``."""
        num = CTX.from_dict({k: int(v) for k, v in terms.items() if v})
        d = _ONE if den is None else CTX.from_dict({k: int(v) for k, v in den.items() if v})
        return cls(num, d)

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> "QTCoeff":
        if i < 0 or j < 0:
            num = CTX.from_dict({(max(i, 0), max(j, 0)): coeff})
            den = CTX.from_dict({(max(-i, 0), max(-j, 0)): 1})
            return cls(num, den)
        return cls(CTX.from_dict({(i, j): coeff}), _reduced=True)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return QTCoeff(self.num + other.num, self.den)
        return QTCoeff(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QTCoeff(-self.num, self.den, _reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            other = Fraction(other)
            if other == 0 or self.num.is_zero():
                return QTCoeff()
            return QTCoeff(self.num * int(other.numerator), self.den * int(other.denominator))
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return QTCoeff()
        # cross-cancel so the product is already reduced
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QTCoeff(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "QTCoeff":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero QTCoeff")
        return QTCoeff(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return QTCoeff(self.num**k, self.den**k, _reduced=True)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(sorted(self.num.to_dict().items())), tuple(sorted(self.den.to_dict().items()))))

    # -- substitutions --------------------------------------------------
    def swap(self) -> "QTCoeff":
        """Exchange q and t."""
        return QTCoeff(_swap_poly(self.num), _swap_poly(self.den))

    def invert_t(self) -> "QTCoeff":
        """Substitute t -> 1/t."""
        dn = max((e[1] for e in self.num.monoms()), default=0)
        dd = max((e[1] for e in self.den.monoms()), default=0)
        d = max(dn, dd)
        num = CTX.from_dict({(a, d - b): c for (a, b), c in self.num.to_dict().items()})
        den = CTX.from_dict({(a, d - b): c for (a, b), c in self.den.to_dict().items()})
        return QTCoeff(num, den)

    def scale_powers(self, k: int) -> "QTCoeff":
        """Substitute q -> q**k, t -> t**k."""
        num = CTX.from_dict({(a * k, b * k): c for (a, b), c in self.num.to_dict().items()})
        den = CTX.from_dict({(a * k, b * k): c for (a, b), c in self.den.to_dict().items()})
        return QTCoeff(num, den)

    def evaluate(self, q0, t0) -> Fraction:
        """Exact value at ``(q0, t0)``; raises :class:`PoleError` at a pole."""
        q0, t0 = Fraction(q0), Fraction(t0)
        d = _eval_poly(self.den, q0, t0)
        if d == 0:
            raise PoleError(f"denominator {_poly_str(self.den)} vanishes at q={q0}, t={t0}")
        return _eval_poly(self.num, q0, t0) / d

    # -- views ----------------------------------------------------------
    def numerator_dict(self) -> dict:
        return {tuple(int(x) for x in k): int(v) for k, v in self.num.to_dict().items()}

    def denominator_dict(self) -> dict:
        return {tuple(int(x) for x in k): int(v) for k, v in self.den.to_dict().items()}

    def to_int(self) -> int:
        if not self.is_constant() or not self.den.is_one():
            raise ValueError(f"{self} is not an integer")
        return int(self.num.leading_coefficient()) if not self.num.is_zero() else 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        n = int(self.num.leading_coefficient()) if not self.num.is_zero() else 0
        return Fraction(n, int(self.den.leading_coefficient()))

    def nonnegative_integer_polynomial(self) -> bool:
        return self.is_polynomial() and all(v >= 0 for v in self.num.to_dict().values())

    def __str__(self):
        if self.den.is_one():
            return _poly_str(self.num)
        return f"{_wrap(self.num)}/{_wrap(self.den)}"

    def __repr__(self):
        return f"QTCoeff({self})"

    def as_factor(self) -> str:
        """String usable as a left factor ``coeff*...``: parenthesized unless a
        single monomial with positive coefficient."""
        if self.den.is_one() and len(self.num.to_dict()) == 1:
            (_, c), = self.num.to_dict().items()
            if c > 0:
                return str(self)
        if self.den.is_one():
            return f"({_poly_str(self.num)})"
        return f"({self})"

    @classmethod
    def parse(cls, text: str) -> "QTCoeff":
        """Parse ``+ - * / ^ **``, parentheses, integers and the names q, t."""
        try:
            tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse rational function {text!r}") from exc
        return _eval_ast(tree.body, text)


def _as_poly(x):
    if isinstance(x, flint.fmpz_mpoly):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return _const(x)
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, QTCoeff):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return QTCoeff(_const(x), _reduced=True)
    if isinstance(x, Rational):
        f = Fraction(x)
        return QTCoeff(_const(f.numerator), _const(f.denominator))
    return NotImplemented


def _swap_poly(p):
    return CTX.from_dict({(b, a): c for (a, b), c in p.to_dict().items()})


def _eval_poly(p, q0: Fraction, t0: Fraction) -> Fraction:
    total = Fraction(0)
    for (a, b), c in p.to_dict().items():
        total += int(c) * q0 ** int(a) * t0 ** int(b)
    return total


def _mono_str(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("q" if a == 1 else f"q^{a}")
    if b:
        parts.append("t" if b == 1 else f"t^{b}")
    return "*".join(parts)


def _poly_str(p) -> str:
    if p.is_zero():
        return "0"
    out = []
    for (a, b), c in p.terms():
        a, b, c = int(a), int(b), int(c)
        mono = _mono_str(a, b)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+" if c > 0 else "-") + body)
    return "".join(out)


def _wrap(p) -> str:
    body = _poly_str(p)
    if len(p.to_dict()) > 1 or body.startswith("-") or "*" in body:
        return f"({body})"
    return body


def _eval_ast(node, text):
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, text)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError(f"exponent must be an integer literal in {text!r}")
            return left ** node.right.value
        right = _eval_ast(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    elif isinstance(node, ast.UnaryOp):
        val = _eval_ast(node.operand, text)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
    elif isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return QTCoeff(node.value)
    elif isinstance(node, ast.Name) and node.id in ("q", "t"):
        return QTCoeff.q() if node.id == "q" else QTCoeff.t()
    raise ValueError(f"unsupported syntax in rational function {text!r}")


ZERO = QTCoeff()
ONE = QTCoeff(1)
q = QTCoeff.q()
t = QTCoeff.t()
