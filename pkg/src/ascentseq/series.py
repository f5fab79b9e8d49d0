"""Exact truncated formal power series over arbitrary-precision rationals.

Two representations: USeries is a dense univariate series, MSeries a
sparse series in two or three variables truncated by total degree (the
count tables are triangular, so total-degree order N captures levels
1..N exactly).  Coefficients are fractions.Fraction throughout, so every
operation is exact; equality of series means equality of every stored
coefficient.

On top of the ring operations sit the closed forms used by the avoidance
counts: the column and diagonal generating functions of the pair tree,
the g0/g1 generating functions of the 0021 tree, the class totals, and
the two univariate series f and g tied to the column structure of the g0
arrays.  All of them are radical expressions over sqrt(5t^2 - 6t + 1),
expanded here by Newton iteration, exact inversion, and exact division.
`residual` substitutes the closed forms into the functional equations
they are supposed to solve, with denominators cleared to polynomial
form, and returns what should be the zero series.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "InexactDivisionError",
    "USeries",
    "MSeries",
    "invert_unit",
    "sqrt_unit",
    "exact_divide",
    "substitute",
    "diagonal",
    "catalan",
    "binom",
    "a007317",
    "GF_NAMES",
    "RESIDUAL_NAMES",
    "build_closed_form",
    "residual",
]

F0 = Fraction(0)
F1 = Fraction(1)


class InexactDivisionError(ArithmeticError):
    """Division that should be exact left a remainder."""


# ---------------------------------------------------------------------------
# Univariate series
# ---------------------------------------------------------------------------


class USeries:
    """Truncated univariate power series with exact rational coefficients."""

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, order: int, coeffs: Iterable):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != order + 1:
            raise ValueError(f"need {order + 1} coefficients, got {len(cs)}")
        self.var = var
        self.order = order
        self.coeffs = cs

    @classmethod
    def poly(cls, var: str, order: int, terms: Mapping[int, int | Fraction]) -> "USeries":
        cs = [F0] * (order + 1)
        for k, c in terms.items():
            if k < 0:
                raise ValueError("negative exponent")
            if k <= order:
                cs[k] += Fraction(c)
        return cls(var, order, cs)

    @classmethod
    def zero(cls, var: str, order: int) -> "USeries":
        return cls(var, order, [F0] * (order + 1))

    @classmethod
    def one(cls, var: str, order: int) -> "USeries":
        return cls.poly(var, order, {0: 1})

    def coeff(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} outside truncation order {self.order}")
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def degree(self) -> int | None:
        for k in range(self.order, -1, -1):
            if self.coeffs[k]:
                return k
        return None

    def truncate(self, order: int) -> "USeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return USeries(self.var, order, self.coeffs[: order + 1])

    def _check_compatible(self, other: "USeries") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, USeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.order, tuple(self.coeffs)))

    def __add__(self, other: "USeries") -> "USeries":
        self._check_compatible(other)
        return USeries(
            self.var, self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "USeries") -> "USeries":
        self._check_compatible(other)
        return USeries(
            self.var, self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "USeries":
        return USeries(self.var, self.order, [-c for c in self.coeffs])

    def scale(self, c) -> "USeries":
        c = Fraction(c)
        return USeries(self.var, self.order, [c * a for a in self.coeffs])

    def __mul__(self, other: "USeries") -> "USeries":
        self._check_compatible(other)
        n = self.order
        out = [F0] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(0, n - i + 1):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return USeries(self.var, n, out)

    def invert_unit(self) -> "USeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.coeffs[0]
        if not c0:
            raise ValueError("series with zero constant term is not invertible")
        inv0 = F1 / c0
        out = [inv0] + [F0] * self.order
        for d in range(1, self.order + 1):
            acc = F0
            for u in range(1, d + 1):
                cu = self.coeffs[u]
                if cu:
                    acc += cu * out[d - u]
            if acc:
                out[d] = -inv0 * acc
        return USeries(self.var, self.order, out)

    def sqrt_unit(self) -> "USeries":
        """Square root with constant term 1, by Newton iteration.

        Starts from the constant series 1 and doubles the trusted order
        each step via s <- (s + a/s) / 2.
        """
        if self.coeffs[0] != 1:
            raise ValueError("sqrt requires constant term 1")
        s = USeries.one(self.var, 0)
        m = 0
        while m < self.order:
            m = min(2 * m + 1, self.order)
            s_ext = USeries(self.var, m, s.coeffs + [F0] * (m - s.order))
            a_trunc = self.truncate(m)
            s = (s_ext + a_trunc * s_ext.invert_unit()).scale(Fraction(1, 2))
        return s

    def shift_down(self, k: int) -> "USeries":
        """Divide by var**k; the k lowest coefficients must vanish."""
        if k < 0:
            raise ValueError("negative shift")
        if any(self.coeffs[:k]):
            raise InexactDivisionError(
                f"nonzero coefficient below {self.var}^{k}; cannot shift down"
            )
        return USeries(self.var, self.order - k, self.coeffs[k:])

    def shift_up(self, k: int) -> "USeries":
        """Multiply by var**k, keeping the truncation order."""
        if k < 0:
            raise ValueError("negative shift")
        cs = ([F0] * k + self.coeffs)[: self.order + 1]
        return USeries(self.var, self.order, cs)

    def __repr__(self) -> str:
        parts = [
            f"{c}*{self.var}^{k}" for k, c in enumerate(self.coeffs) if c
        ] or ["0"]
        return f"USeries({' + '.join(parts[:8])}{' + ...' if len(parts) > 8 else ''})"

    def to_json_dict(self) -> dict:
        return {
            "variables": [self.var],
            "order": self.order,
            "terms": [
                [k, f"{c.numerator}/{c.denominator}"]
                for k, c in enumerate(self.coeffs)
                if c
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "USeries":
        (var,) = d["variables"]
        out = cls.zero(var, d["order"])
        for *exps, val in d["terms"]:
            (k,) = exps
            out.coeffs[k] = Fraction(val)
        return out


def _useries_val_divide(num: USeries, den: USeries) -> USeries:
    """num / den where den may have positive valuation; exact or raises."""
    v = den.valuation()
    if v is None:
        raise ValueError("division by the zero series")
    return num.shift_down(v) * den.shift_down(v).invert_unit()


# ---------------------------------------------------------------------------
# Multivariate series
# ---------------------------------------------------------------------------

Exp = tuple[int, ...]


class MSeries:
    """Sparse multivariate power series truncated by total degree."""

    __slots__ = ("vars", "order", "terms")

    def __init__(self, variables: Sequence[str], order: int, terms: Mapping[Exp, int | Fraction]):
        if order < 0:
            raise ValueError("order must be non-negative")
        vs = tuple(variables)
        if len(vs) not in (2, 3) or len(set(vs)) != len(vs):
            raise ValueError("need two or three distinct variable names")
        self.vars = vs
        self.order = order
        clean: dict[Exp, Fraction] = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != len(vs) or any(x < 0 for x in e):
                raise ValueError(f"bad exponent tuple {e}")
            if sum(e) > order:
                continue
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, F0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def poly(cls, variables: Sequence[str], order: int, terms: Mapping[Exp, int | Fraction]) -> "MSeries":
        return cls(variables, order, terms)

    @classmethod
    def zero(cls, variables: Sequence[str], order: int) -> "MSeries":
        return cls(variables, order, {})

    @classmethod
    def one(cls, variables: Sequence[str], order: int) -> "MSeries":
        return cls(variables, order, {(0,) * len(tuple(variables)): 1})

    def _zero_exp(self) -> Exp:
        return (0,) * len(self.vars)

    def coeff(self, exps: Exp) -> Fraction:
        e = tuple(exps)
        if sum(e) > self.order:
            raise IndexError(f"exponent {e} outside truncation order {self.order}")
        return self.terms.get(e, F0)

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, order: int) -> "MSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return MSeries(
            self.vars, order, {e: c for e, c in self.terms.items() if sum(e) <= order}
        )

    def _check_compatible(self, other: "MSeries") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MSeries):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, self.order, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "MSeries") -> "MSeries":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            nv = out.get(e, F0) + c
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
        return self._wrap(out)

    def __sub__(self, other: "MSeries") -> "MSeries":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            nv = out.get(e, F0) - c
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
        return self._wrap(out)

    def __neg__(self) -> "MSeries":
        return self._wrap({e: -c for e, c in self.terms.items()})

    def scale(self, c) -> "MSeries":
        c = Fraction(c)
        if not c:
            return MSeries.zero(self.vars, self.order)
        return self._wrap({e: c * v for e, v in self.terms.items()})

    def _wrap(self, terms: dict[Exp, Fraction]) -> "MSeries":
        out = MSeries.__new__(MSeries)
        out.vars = self.vars
        out.order = self.order
        out.terms = terms
        return out

    def _slices(self) -> dict[int, list[tuple[Exp, Fraction]]]:
        out: dict[int, list[tuple[Exp, Fraction]]] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), []).append((e, c))
        return out

    def __mul__(self, other: "MSeries") -> "MSeries":
        self._check_compatible(other)
        order = self.order
        a_sl = self._slices()
        b_sl = other._slices()
        out: dict[Exp, Fraction] = {}
        for da, la in a_sl.items():
            for db, lb in b_sl.items():
                if da + db > order:
                    continue
                for ea, ca in la:
                    for eb, cb in lb:
                        e = tuple(x + y for x, y in zip(ea, eb))
                        nv = out.get(e, F0) + ca * cb
                        if nv:
                            out[e] = nv
                        else:
                            del out[e]
        return self._wrap(out)

    def invert_unit(self) -> "MSeries":
        """Multiplicative inverse, built degree slice by degree slice."""
        c0 = self.terms.get(self._zero_exp(), F0)
        if not c0:
            raise ValueError("series with zero constant term is not invertible")
        inv0 = F1 / c0
        a_sl = self._slices()
        a_sl.pop(0, None)
        q_sl: dict[int, dict[Exp, Fraction]] = {0: {self._zero_exp(): inv0}}
        for d in range(1, self.order + 1):
            acc: dict[Exp, Fraction] = {}
            for u, la in a_sl.items():
                if u > d:
                    continue
                qs = q_sl.get(d - u)
                if not qs:
                    continue
                for ea, ca in la:
                    for eq, cq in qs.items():
                        e = tuple(x + y for x, y in zip(ea, eq))
                        nv = acc.get(e, F0) + ca * cq
                        if nv:
                            acc[e] = nv
                        else:
                            del acc[e]
            if acc:
                q_sl[d] = {e: -inv0 * v for e, v in acc.items()}
        out: dict[Exp, Fraction] = {}
        for sl in q_sl.values():
            out.update(sl)
        return self._wrap(out)

    def sqrt_unit(self) -> "MSeries":
        """Square root with constant term 1, by Newton iteration."""
        if self.terms.get(self._zero_exp(), F0) != 1:
            raise ValueError("sqrt requires constant term 1")
        s = MSeries.one(self.vars, 0)
        m = 0
        while m < self.order:
            m = min(2 * m + 1, self.order)
            s_ext = MSeries(self.vars, m, s.terms)
            a_trunc = self.truncate(m)
            s = (s_ext + a_trunc * s_ext.invert_unit()).scale(Fraction(1, 2))
        return s

    def substitute(self, var: str, value: Union[int, str]) -> "MSeries":
        """Set a variable to 1, or rename it onto another variable.

        The variable list is preserved; the substituted variable simply no
        longer occurs.  Total degree never grows, so truncation is safe.
        """
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        if value == 1:
            j = None
        elif isinstance(value, str):
            if value not in self.vars or value == var:
                raise ValueError(f"cannot substitute {var!r} by {value!r}")
            j = self.vars.index(value)
        else:
            raise ValueError("substitution value must be 1 or another variable name")
        out: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            le = list(e)
            if j is not None:
                le[j] += le[i]
            le[i] = 0
            key = tuple(le)
            nv = out.get(key, F0) + c
            if nv:
                out[key] = nv
            else:
                del out[key]
        return self._wrap(out)

    def diagonal(self, out_var: str = "z") -> USeries:
        """For a bivariate series, the univariate series of equal-exponent
        coefficients; reliable through half the truncation order."""
        if len(self.vars) != 2:
            raise ValueError("diagonal extraction needs a bivariate series")
        half = self.order // 2
        return USeries(
            out_var, half, [self.terms.get((n, n), F0) for n in range(half + 1)]
        )

    def as_useries(self, var: str | None = None) -> USeries:
        """View a series supported on one variable as a USeries."""
        idx = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        if len(idx) > 1:
            raise ValueError("series involves more than one variable")
        if var is None:
            var = self.vars[idx[0]] if idx else self.vars[0]
        i = self.vars.index(var)
        if any(e[j] for e in self.terms for j in range(len(self.vars)) if j != i):
            raise ValueError(f"series has terms outside variable {var!r}")
        out = USeries.zero(var, self.order)
        for e, c in self.terms.items():
            out.coeffs[e[i]] = c
        return out

    def __repr__(self) -> str:
        items = sorted(self.terms.items())[:6]
        parts = [f"{c}*{e}" for e, c in items] or ["0"]
        more = " + ..." if len(self.terms) > 6 else ""
        return f"MSeries{self.vars}({' + '.join(parts)}{more})"

    def to_json_dict(self) -> dict:
        return {
            "variables": list(self.vars),
            "order": self.order,
            "terms": [
                [*e, f"{c.numerator}/{c.denominator}"]
                for e, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "MSeries":
        out = cls.zero(tuple(d["variables"]), d["order"])
        terms = {}
        for *exps, val in d["terms"]:
            terms[tuple(exps)] = Fraction(val)
        return cls(tuple(d["variables"]), d["order"], terms)


# ---------------------------------------------------------------------------
# Exact division
# ---------------------------------------------------------------------------


def _homog_divide(P: dict[Exp, Fraction], B: dict[Exp, Fraction]) -> dict[Exp, Fraction]:
    """Exact division of homogeneous P by homogeneous B, or raise.

    Repeatedly cancels the lexicographically largest term; for a single
    divisor the remainder vanishes exactly when B divides P.
    """
    if not P:
        return {}
    eb = max(B)
    cb = B[eb]
    rem = dict(P)
    quot: dict[Exp, Fraction] = {}
    while rem:
        e = max(rem)
        m = tuple(x - y for x, y in zip(e, eb))
        if any(x < 0 for x in m):
            raise InexactDivisionError(f"term {e} is not divisible by {eb}")
        c = rem[e] / cb
        quot[m] = c
        for e2, c2 in B.items():
            key = tuple(x + y for x, y in zip(m, e2))
            nv = rem.get(key, F0) - c * c2
            if nv:
                rem[key] = nv
            else:
                rem.pop(key, None)
    return quot


def _mseries_exact_divide(a: MSeries, b: MSeries) -> MSeries:
    a._check_compatible(b)
    if not b.terms:
        raise ValueError("division by the zero polynomial")
    b_sl = b._slices()
    v = min(b_sl)
    deg_b = max(b_sl)
    if any(sum(e) < v for e in a.terms):
        raise InexactDivisionError(
            f"dividend has terms below total degree {v} of the divisor"
        )
    bv = dict(b_sl[v])
    higher = {u: dict(sl) for u, sl in ((u, b_sl[u]) for u in b_sl) if u > v}
    a_sl = {d: dict(sl) for d, sl in a._slices().items()}
    q_sl: dict[int, dict[Exp, Fraction]] = {}
    for d in range(0, a.order - v + 1):
        rhs = dict(a_sl.get(d + v, {}))
        for u, bu in higher.items():
            qs = q_sl.get(d + v - u)
            if not qs:
                continue
            for eb, cb in bu.items():
                for eq, cq in qs.items():
                    e = tuple(x + y for x, y in zip(eb, eq))
                    nv = rhs.get(e, F0) - cb * cq
                    if nv:
                        rhs[e] = nv
                    else:
                        rhs.pop(e, None)
        q_sl[d] = _homog_divide(rhs, bv)
    out: dict[Exp, Fraction] = {}
    for sl in q_sl.values():
        out.update(sl)
    return MSeries(a.vars, a.order - deg_b, out)


def _useries_exact_divide(a: USeries, b: USeries) -> USeries:
    a._check_compatible(b)
    v = b.valuation()
    if v is None:
        raise ValueError("division by the zero polynomial")
    deg_b = b.degree()
    q = _useries_val_divide(a, b)
    return q.truncate(a.order - deg_b)


def exact_divide(a, b):
    """Quotient a / b for a polynomial divisor b, exact through the

    truncation or raising InexactDivisionError; the result is truncated to
    order(a) - deg(b)."""
    if isinstance(a, USeries) and isinstance(b, USeries):
        return _useries_exact_divide(a, b)
    if isinstance(a, MSeries) and isinstance(b, MSeries):
        return _mseries_exact_divide(a, b)
    raise TypeError("operands must both be USeries or both MSeries")


# ---------------------------------------------------------------------------
# Module-level operation wrappers
# ---------------------------------------------------------------------------


def invert_unit(a):
    return a.invert_unit()


def sqrt_unit(a):
    return a.sqrt_unit()


def substitute(a: MSeries, var: str, value: Union[int, str]) -> MSeries:
    return a.substitute(var, value)


def diagonal(a: MSeries, out_var: str = "z") -> USeries:
    return a.diagonal(out_var)


# ---------------------------------------------------------------------------
# Reference sequences
# ---------------------------------------------------------------------------

_CATALAN: list[int] = [1]


def catalan(k: int) -> int:
    """Catalan numbers by the convolution recurrence."""
    if k < 0:
        raise ValueError("negative index")
    while len(_CATALAN) <= k:
        m = len(_CATALAN) - 1
        _CATALAN.append(sum(_CATALAN[i] * _CATALAN[m - i] for i in range(m + 1)))
    return _CATALAN[k]


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def a007317(n: int) -> int:
    """Binomial convolution of the Catalan numbers (OEIS A007317):
    sum over k of C(n-1, k) * catalan(k), for n >= 1."""
    if n < 1:
        raise ValueError("index must be at least 1")
    return sum(binom(n - 1, k) * catalan(k) for k in range(n))


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

GF_NAMES = (
    "C_pair",
    "D_pair",
    "C2",
    "C_total_pair",
    "C_0021",
    "D_0021",
    "total_0021",
    "f",
    "g",
)


def _radical_u(var: str, order: int) -> USeries:
    """sqrt(5 t^2 - 6 t + 1) as a univariate series."""
    return USeries.poly(var, order, {0: 1, 1: -6, 2: 5}).sqrt_unit()


def _radical_m(variables: Sequence[str], order: int, var: str) -> MSeries:
    """sqrt(5 t^2 - 6 t + 1) in variable var inside a multivariate ring."""
    vs = tuple(variables)
    i = vs.index(var)

    def mono(k: int) -> Exp:
        e = [0] * len(vs)
        e[i] = k
        return tuple(e)

    return MSeries.poly(vs, order, {mono(0): 1, mono(1): -6, mono(2): 5}).sqrt_unit()


def _total_formula(var: str, order: int) -> USeries:
    """(-1 + t + sqrt(5 t^2 - 6 t + 1)) / (2 (t - 1))."""
    rad = _radical_u(var, order)
    num = USeries.poly(var, order, {0: -1, 1: 1}) + rad
    den = USeries.poly(var, order, {0: -2, 1: 2})
    return num * den.invert_unit()


def _build_c2(order: int) -> USeries:
    rad = _radical_u("y", order)
    num = (USeries.poly("y", order, {0: -1, 1: 1}) + rad) * USeries.poly(
        "y", order, {1: -1}
    )
    den = USeries.poly("y", order, {0: 2, 1: -4, 2: 2})
    return num * den.invert_unit()


def _build_f(order: int) -> USeries:
    rad = _radical_u("z", order + 1)
    num = USeries.poly("z", order + 1, {0: 1, 1: -1}) - rad
    return exact_divide(num, USeries.poly("z", order + 1, {1: 2}))


def _build_g(order: int) -> USeries:
    n = order + 2
    rad = _radical_u("z", n)
    one_minus = USeries.poly("z", n, {0: 1, 1: -1}) + rad
    other = USeries.poly("z", n, {0: -1, 1: 3}) + rad
    den = one_minus * one_minus * one_minus * other
    num = USeries.poly("z", n, {2: -16, 3: 16})
    return _useries_val_divide(num, den).truncate(order)


def _build_c_pair(order: int) -> MSeries:
    vs = ("x", "y")
    rad = _radical_m(vs, order, "y")
    num = (
        rad * MSeries.poly(vs, order, {(1, 0): 1})
        + MSeries.poly(vs, order, {(1, 1): -1, (1, 0): 1, (0, 1): 2, (0, 0): -2})
    ) * MSeries.poly(vs, order, {(1, 1): 1})
    den = MSeries.poly(
        vs, order, {(2, 1): 2, (1, 1): 2, (1, 0): -2, (0, 1): -2, (0, 0): 2}
    ) * MSeries.poly(vs, order, {(0, 1): 1, (0, 0): -1})
    return num * den.invert_unit()


def _build_d_pair(order: int) -> MSeries:
    vs = ("x", "y")
    rad = _radical_m(vs, order, "y")
    inner = rad * MSeries.poly(vs, order, {(2, 1): 1}) + MSeries.poly(
        vs,
        order,
        {
            (2, 2): 1,
            (2, 1): -1,
            (1, 2): 4,
            (1, 1): -6,
            (0, 2): -2,
            (1, 0): 2,
            (0, 1): 4,
            (0, 0): -2,
        },
    )
    num = (-inner) * MSeries.poly(vs, order, {(1, 1): 1})
    den = MSeries.poly(
        vs,
        order,
        {
            (2, 2): 2,
            (2, 1): -2,
            (1, 2): 2,
            (1, 1): -4,
            (0, 2): -2,
            (1, 0): 2,
            (0, 1): 4,
            (0, 0): -2,
        },
    ) * MSeries.poly(vs, order, {(0, 1): 1, (0, 0): -1})
    return num * den.invert_unit()


def _build_c_0021(order: int) -> MSeries:
    vs = ("x", "y", "z")
    rad = _radical_m(vs, order, "z")
    w = (
        MSeries.poly(vs, order, {(0, 0, 0): 1, (0, 0, 1): -1, (0, 1, 1): -1}) * rad
        + MSeries.poly(vs, order, {(0, 0, 0): 1, (0, 0, 1): -3, (0, 1, 1): -1})
        * MSeries.poly(vs, order, {(0, 0, 0): 1, (0, 0, 1): -1})
    )
    geo_xz = MSeries.poly(vs, order, {(0, 0, 0): 1, (1, 0, 1): -1}).invert_unit()
    return (
        MSeries.poly(vs, order, {(1, 2, 3): 2}) * geo_xz * w.invert_unit()
    )


def _build_d_0021(order: int) -> MSeries:
    vs = ("x", "y", "z")
    rad = _radical_m(vs, order, "z")
    w = rad * MSeries.poly(vs, order, {(0, 1, 0): 1}) + MSeries.poly(
        vs, order, {(0, 1, 1): 1, (0, 0, 1): -2, (0, 1, 0): -1, (0, 0, 0): 2}
    )
    geo_xz = MSeries.poly(vs, order, {(0, 0, 0): 1, (1, 0, 1): -1}).invert_unit()
    return MSeries.poly(vs, order, {(1, 1, 2): 2}) * geo_xz * w.invert_unit()


_BUILDERS = {
    "C_pair": _build_c_pair,
    "D_pair": _build_d_pair,
    "C2": _build_c2,
    "C_total_pair": lambda order: _total_formula("y", order),
    "C_0021": _build_c_0021,
    "D_0021": _build_d_0021,
    "total_0021": lambda order: _total_formula("z", order),
    "f": _build_f,
    "g": _build_g,
}


def build_closed_form(which: str, order: int):
    """Expand one of the named closed forms to the given truncation order.

    Univariate names (C2, C_total_pair, total_0021, f, g) return USeries;
    the rest return MSeries (C_pair, D_pair in x, y; C_0021, D_0021 in
    x, y, z).
    """
    try:
        builder = _BUILDERS[which]
    except KeyError:
        raise ValueError(f"unknown closed form {which!r}; choose from {GF_NAMES}")
    return builder(order)


# ---------------------------------------------------------------------------
# Functional-equation residuals
# ---------------------------------------------------------------------------

RESIDUAL_NAMES = ("pair_c", "pair_d", "t0021_c", "t0021_d")


def _residual_pair(which: str, order: int) -> MSeries:
    vs = ("x", "y")
    C = _build_c_pair(order)
    D = _build_d_pair(order)
    one_minus_y = MSeries.poly(vs, order, {(0, 0): 1, (0, 1): -1})
    if which == "pair_c":
        # (1-x)(1-y) C + x(1-y) D = xy + x^2 (1-y) C2, both sides times (1-y)
        c2 = _build_c2(order)
        c2_m = MSeries.poly(vs, order, {(0, k): c for k, c in enumerate(c2.coeffs)})
        lhs = (
            MSeries.poly(vs, order, {(0, 0): 1, (1, 0): -1}) * one_minus_y * C
            + MSeries.poly(vs, order, {(1, 0): 1}) * one_minus_y * D
        )
        rhs = MSeries.poly(vs, order, {(1, 1): 1}) + (
            MSeries.poly(vs, order, {(2, 0): 1}) * one_minus_y * c2_m
        )
        return lhs - rhs
    # (1-y) D - xy C = xy, times (1-y)
    lhs = one_minus_y * (one_minus_y * D - MSeries.poly(vs, order, {(1, 1): 1}) * C)
    rhs = one_minus_y * MSeries.poly(vs, order, {(1, 1): 1})
    return lhs - rhs


def _residual_0021_c(order: int) -> MSeries:
    vs = ("x", "y", "z")
    full = 2 * order  # substitution at y=1 folds degrees down; build deep enough
    C_full = _build_c_0021(full)
    D_full = _build_d_0021(full)
    C = C_full.truncate(order)
    D = D_full.truncate(order)
    C1 = C_full.substitute("y", 1).truncate(order)
    D1 = D_full.substitute("y", 1).truncate(order)

    def poly(t):
        return MSeries.poly(vs, order, t)

    geo_z = poly({(0, 0, 0): 1, (0, 0, 1): -1}).invert_unit()
    geo_yz = poly({(0, 0, 0): 1, (0, 1, 1): -1}).invert_unit()
    geo_xz = poly({(0, 0, 0): 1, (1, 0, 1): -1}).invert_unit()
    y_minus_1 = poly({(0, 1, 0): 1, (0, 0, 0): -1})
    zy = poly({(0, 1, 1): 1})
    zy2 = poly({(0, 2, 1): 1})
    lhs = y_minus_1 * C
    # the standalone rational term carries z^3: it is the generating
    # function of the boundary cells q + r = n, which start at level 3
    rhs = (
        y_minus_1 * poly({(0, 0, 1): 1}) * C
        + zy * C
        - zy2 * C1
        + y_minus_1 * poly({(1, 2, 3): 1}) * geo_z * geo_yz * geo_xz
        + zy2 * (D - poly({(1, 1, 2): 1}) * geo_xz * geo_yz)
        - zy2 * (D1 - poly({(1, 0, 2): 1}) * geo_xz * geo_z)
    )
    return lhs - rhs


def _residual_0021_d(order: int) -> MSeries:
    vs = ("x", "y", "z")
    C = _build_c_0021(order)
    D = _build_d_0021(order)
    Cyy = C.substitute("x", "y")
    Dyy = D.substitute("x", "y")

    def poly(t):
        return MSeries.poly(vs, order, t)

    geo_yz = poly({(0, 0, 0): 1, (0, 1, 1): -1}).invert_unit()
    geo_xz = poly({(0, 0, 0): 1, (1, 0, 1): -1}).invert_unit()
    x_minus_y = poly({(1, 0, 0): 1, (0, 1, 0): -1})
    zx = poly({(1, 0, 1): 1})
    lhs = x_minus_y * D
    rhs = (
        x_minus_y * poly({(1, 1, 2): 1}) * geo_xz * geo_yz
        + zx * D
        - zx * Dyy
        + zx * C
        - zx * Cyy
    )
    return lhs - rhs


def residual(which: str, order: int) -> MSeries:
    """Substitute the closed forms into one functional equation and return

    LHS - RHS with denominators cleared to polynomial form: the pair
    equations are multiplied through by (1-y), the 0021 C-equation by
    (y-1), and the 0021 D-equation by (x-y).  A correct transcription
    yields the zero series through the requested order.
    """
    if which in ("pair_c", "pair_d"):
        return _residual_pair(which, order)
    if which == "t0021_c":
        return _residual_0021_c(order)
    if which == "t0021_d":
        return _residual_0021_d(order)
    raise ValueError(f"unknown residual {which!r}; choose from {RESIDUAL_NAMES}")
