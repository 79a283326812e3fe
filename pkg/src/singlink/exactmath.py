"""Exact sparse multivariate Laurent polynomial arithmetic.

A polynomial is a map from exponent vectors to nonzero coefficients,
attached to a ring descriptor that fixes the variable names, their order,
the coefficient domain (integers, rationals, or a prime field) and which
variables are allowed negative exponents (Laurent variables).

Canonical form: zero coefficients are never stored, prime-field
coefficients are reduced to [0, p), and the printed form orders terms by
graded lex (total degree descending, ties broken lexicographically by the
declared variable order).  Two polynomials are equal iff their rings and
term maps are equal, so canonical forms are directly comparable and
hashable.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class ExactMathError(ValueError):
    """Base class for errors raised by this module."""


class RingMismatchError(ExactMathError):
    pass


class SubstitutionError(ExactMathError):
    pass


class EvaluationError(ExactMathError):
    pass


class PolynomialParseError(ExactMathError):
    pass


class DivisionError(ExactMathError):
    pass


_VAR_TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Domain:
    """Coefficient domain: ``Z`` (integers), ``Q`` (rationals) or ``GF`` (prime field)."""

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "Q", "GF"):
            raise ExactMathError(f"unknown coefficient domain {self.kind!r}")
        if self.kind == "GF":
            if self.p is None or not is_prime(self.p):
                raise ExactMathError(f"prime field modulus must be prime, got {self.p}")
        elif self.p is not None:
            raise ExactMathError("modulus only allowed for prime fields")

    def coerce(self, value):
        if self.kind == "Z":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ExactMathError(f"{value} is not an integer coefficient")
                return int(value)
            return int(value)
        if self.kind == "Q":
            return Fraction(value)
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "GF" else a + b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "GF" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "GF" else -a

    def __str__(self) -> str:
        return {"Z": "ZZ", "Q": "QQ"}.get(self.kind) or f"GF({self.p})"


ZZ = Domain("Z")
QQ = Domain("Q")


def GF(p: int) -> Domain:
    return Domain("GF", p)


@dataclass(frozen=True)
class RingDescriptor:
    """Ambient ring: ordered variable names, coefficient domain, Laurent flags.

    The declared variable order is part of the data: it fixes exponent
    vector layout and the graded-lex term order used for printing.
    """

    variables: tuple[str, ...]
    domain: Domain = ZZ
    laurent: frozenset[str] = frozenset()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "laurent", frozenset(self.laurent))
        if len(set(self.variables)) != len(self.variables):
            raise ExactMathError("variable names must be unique")
        for name in self.variables:
            if not _VAR_TOKEN.match(name):
                raise ExactMathError(f"invalid variable name {name!r}")
        unknown = self.laurent - set(self.variables)
        if unknown:
            raise ExactMathError(f"Laurent flags for unknown variables {sorted(unknown)}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.variables)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ExactMathError(f"unknown variable {name!r}") from None

    def is_laurent(self, name: str) -> bool:
        return name in self.laurent

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, value) -> "Polynomial":
        c = self.domain.coerce(value)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str, power: int = 1) -> "Polynomial":
        i = self.index(name)
        if power < 0 and name not in self.laurent:
            raise ExactMathError(f"negative exponent on non-Laurent variable {name!r}")
        if power == 0:
            return self.one()
        exp = [0] * self.nvars
        exp[i] = power
        return Polynomial(self, {tuple(exp): self.domain.coerce(1)})


def _grlex_key(exp: tuple[int, ...]):
    # Sort key for descending graded lex: larger total degree first, then
    # lexicographically larger exponent vector (first variable most significant).
    return (-sum(exp), tuple(-e for e in exp))


def _fast_poly(ring: RingDescriptor, terms: dict) -> "Polynomial":
    # Internal constructor for terms already in canonical form.
    p = object.__new__(Polynomial)
    p.ring = ring
    p.terms = terms
    p._hash = None
    return p


class Polynomial:
    """Immutable sparse Laurent polynomial over a :class:`RingDescriptor`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        clean = {}
        nv = ring.nvars
        all_laurent = len(ring.laurent) == nv
        for exp, coeff in terms.items():
            if len(exp) != nv:
                raise ExactMathError("exponent vector length does not match ring")
            c = ring.domain.coerce(coeff)
            if c == 0:
                continue
            if not all_laurent:
                for name, e in zip(ring.variables, exp):
                    if e < 0 and name not in ring.laurent:
                        raise ExactMathError(
                            f"negative exponent on non-Laurent variable {name!r}"
                        )
            clean[tuple(exp)] = c
        self.terms = clean
        self._hash = None

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int | None:
        """Largest term degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def constant_value(self):
        """Coefficient of the constant monomial (0 if absent)."""
        return self.terms.get((0,) * self.ring.nvars, 0)

    def coefficient(self, exp: tuple[int, ...]):
        return self.terms.get(tuple(exp), 0)

    def leading_term(self) -> tuple[tuple[int, ...], object]:
        if not self.terms:
            raise ExactMathError("zero polynomial has no leading term")
        exp = min(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def variables_used(self) -> set[str]:
        used = set()
        for exp in self.terms:
            for name, e in zip(self.ring.variables, exp):
                if e != 0:
                    used.add(name)
        return used

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    # -- arithmetic -------------------------------------------------------

    def _check_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = dom.add(out.get(exp, 0), c)
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return _fast_poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        dom = self.ring.domain
        return _fast_poly(self.ring, {e: dom.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        dom = self.ring.domain
        if len(self.terms) * len(other.terms) > 4096 and self.ring.nvars > 1:
            return _mul_packed(self, other)
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = dom.add(out.get(exp, 0), dom.mul(c1, c2))
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return _fast_poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ExactMathError("polynomial powers must be non-negative integers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    # -- substitution, evaluation ------------------------------------------

    def substitute(self, name: str, replacement: "Polynomial") -> "Polynomial":
        """Replace every occurrence of ``name`` by ``replacement``, exactly expanded.

        Rejected if the variable carries a negative exponent anywhere in
        this polynomial (substituting into t^-1 has no polynomial meaning).
        """
        idx = self.ring.index(name)
        self._check_ring(replacement)
        if any(exp[idx] < 0 for exp in self.terms):
            raise SubstitutionError(
                f"cannot substitute into {name!r}: negative exponents present"
            )
        result = self.ring.zero()
        power_cache: dict[int, Polynomial] = {0: self.ring.one()}
        for exp, coeff in self.terms.items():
            e = exp[idx]
            if e not in power_cache:
                power_cache[e] = replacement ** e
            rest = list(exp)
            rest[idx] = 0
            mono = Polynomial(self.ring, {tuple(rest): coeff})
            result = result + mono * power_cache[e]
        return result

    def evaluate_mod(self, assignment: Mapping[str, int], q: int) -> int:
        """Evaluate in the prime field F_q at the given variable assignment.

        Every variable of the ring must be assigned; Laurent variables must
        get nonzero values (their inverses are needed).
        """
        if not is_prime(q):
            raise EvaluationError(f"modulus {q} is not prime")
        values = []
        for name in self.ring.variables:
            if name not in assignment:
                raise EvaluationError(f"missing assignment for variable {name!r}")
            v = assignment[name] % q
            if v == 0 and name in self.ring.laurent:
                raise EvaluationError(f"Laurent variable {name!r} assigned zero")
            values.append(v)
        total = 0
        for exp, coeff in self.terms.items():
            c = coeff
            if isinstance(c, Fraction):
                den = c.denominator % q
                if den == 0:
                    raise EvaluationError("coefficient denominator vanishes mod q")
                c = c.numerator * pow(den, q - 2, q)
            term = int(c) % q
            for v, e in zip(values, exp):
                if e == 0:
                    continue
                if e < 0:
                    if v == 0:
                        raise EvaluationError("zero raised to negative power")
                    term = term * pow(pow(v, q - 2, q), -e, q) % q
                else:
                    term = term * pow(v, e, q) % q
            total = (total + term) % q
        return total

    # -- printing ----------------------------------------------------------

    def _monomial_text(self, exp: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.ring.variables, exp):
            if e == 0:
                continue
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def to_text(self) -> str:
        """Deterministic serialization; round-trips through :func:`parse_polynomial`."""
        if not self.terms:
            return "0"
        chunks = []
        for exp in sorted(self.terms, key=_grlex_key):
            coeff = self.terms[exp]
            mono = self._monomial_text(exp)
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __str__(self) -> str:
        return self.to_text()


def _exp_box(terms) -> tuple[list[int], list[int]]:
    it = iter(terms)
    first = next(it)
    lows, highs = list(first), list(first)
    for exp in it:
        for i, e in enumerate(exp):
            if e < lows[i]:
                lows[i] = e
            elif e > highs[i]:
                highs[i] = e
    return lows, highs


def _mul_packed(a: Polynomial, b: Polynomial) -> Polynomial:
    """Large-product fast path: exponent vectors packed into single integers.

    Field widths are sized per multiplication from the operands' exponent
    boxes, so packed addition can never carry between fields; the result
    is exactly the schoolbook product.
    """
    ring = a.ring
    dom = ring.domain
    alo, ahi = _exp_box(a.terms)
    blo, bhi = _exp_box(b.terms)
    nv = ring.nvars
    shifts = [0] * nv
    shift = 0
    masks = [0] * nv
    for i in range(nv):
        span = (ahi[i] - alo[i]) + (bhi[i] - blo[i])
        width = max(span.bit_length(), 1)
        shifts[i] = shift
        masks[i] = (1 << width) - 1
        shift += width

    def pack(exp, lo):
        key = 0
        for i in range(nv):
            key |= (exp[i] - lo[i]) << shifts[i]
        return key

    packed_b = [(pack(e, blo), c) for e, c in b.terms.items()]
    out: dict[int, object] = {}
    get = out.get
    if dom.kind == "Z":
        for e1, c1 in a.terms.items():
            k1 = pack(e1, alo)
            for k2, c2 in packed_b:
                key = k1 + k2
                s = get(key, 0) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
    else:
        for e1, c1 in a.terms.items():
            k1 = pack(e1, alo)
            for k2, c2 in packed_b:
                key = k1 + k2
                s = dom.add(get(key, 0), dom.mul(c1, c2))
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s

    base = [alo[i] + blo[i] for i in range(nv)]
    result = {
        tuple(((key >> shifts[i]) & masks[i]) + base[i] for i in range(nv)): coeff
        for key, coeff in out.items()
    }
    return _fast_poly(ring, result)


def poly_arith(op: str, a: Polynomial, b: Polynomial | None = None) -> Polynomial:
    """Dispatch exact arithmetic: ``add``, ``mul``, or ``neg`` (b ignored for neg)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ExactMathError(f"unknown operation {op!r}")


# -- exact division -------------------------------------------------------


def divide_exact(num: Polynomial, den: Polynomial) -> Polynomial:
    """Exact division ``num / den`` in the Laurent polynomial ring.

    Both arguments are shifted by monomials into the ordinary polynomial
    ring, divided by leading-term cancellation (graded lex), and the
    monomial shift is restored.  Raises :class:`DivisionError` when the
    quotient does not exist in the ring.
    """
    if num.ring != den.ring:
        raise RingMismatchError("polynomials live in different rings")
    if den.is_zero():
        raise DivisionError("division by zero polynomial")
    if num.is_zero():
        return num
    ring = num.ring
    nv = ring.nvars

    def min_exps(p: Polynomial) -> tuple[int, ...]:
        # True per-variable minimum: shifting by it lands the polynomial in
        # the ordinary ring with zero low-degree in every variable, where a
        # Laurent quotient (when it exists) is an ordinary polynomial.
        it = iter(p.terms)
        mins = list(next(it))
        for exp in it:
            for i, e in enumerate(exp):
                if e < mins[i]:
                    mins[i] = e
        return tuple(mins)

    num_shift = min_exps(num)
    den_shift = min_exps(den)
    work = {tuple(e - s for e, s in zip(exp, num_shift)): c for exp, c in num.terms.items()}
    dterms = {tuple(e - s for e, s in zip(exp, den_shift)): c for exp, c in den.terms.items()}

    dom = ring.domain
    dlead = min(dterms, key=_grlex_key)
    dlead_coeff = dterms[dlead]
    quotient: dict[tuple[int, ...], object] = {}
    # Leading terms are extracted through a lazy-deletion heap: exponents
    # whose coefficients have cancelled are skipped on pop.
    heap = [(_grlex_key(exp), exp) for exp in work]
    heapq.heapify(heap)
    while work:
        while True:
            _, wlead = heap[0]
            if wlead in work:
                break
            heapq.heappop(heap)
        wc = work[wlead]
        qexp = tuple(a - b for a, b in zip(wlead, dlead))
        if any(e < 0 for e in qexp):
            raise DivisionError("inexact polynomial division (monomial mismatch)")
        if dom.kind == "GF":
            qc = wc * pow(dlead_coeff, dom.p - 2, dom.p) % dom.p
        else:
            qc = Fraction(wc, dlead_coeff) if dom.kind == "Q" else _int_div(wc, dlead_coeff)
        quotient[qexp] = qc
        for dexp, dc in dterms.items():
            exp = tuple(a + b for a, b in zip(qexp, dexp))
            old = work.get(exp)
            s = dom.add(old, dom.neg(dom.mul(qc, dc))) if old is not None else dom.neg(dom.mul(qc, dc))
            if s == 0:
                work.pop(exp, None)
            else:
                if old is None:
                    heapq.heappush(heap, (_grlex_key(exp), exp))
                work[exp] = s
    shift = tuple(a - b for a, b in zip(num_shift, den_shift))
    result = {tuple(a + b for a, b in zip(exp, shift)): c for exp, c in quotient.items()}
    try:
        return Polynomial(ring, result)
    except ExactMathError as exc:
        raise DivisionError(f"quotient leaves the ring: {exc}") from None


def _int_div(a: int, b: int) -> int:
    if a % b != 0:
        raise DivisionError("inexact polynomial division (coefficient mismatch)")
    return a // b


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z][A-Za-z0-9]*|\^|\*|\+|-|/)")


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    """Parse the polynomial text grammar into canonical form.

    Grammar: ``term (("+"|"-") term)*`` with
    ``term = [coeff "*"] var["^" int] ("*" var["^" int])*``; a bare
    number is also a term.  Exponents may be negative only on Laurent
    variables.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolynomialParseError(f"unexpected input at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def parse_int() -> int:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        tok = peek()
        if tok is None or not tok.isdigit():
            raise PolynomialParseError("expected integer")
        return sign * int(take())

    def parse_term(sign: int) -> Polynomial:
        coeff = None
        factors: list[tuple[str, int]] = []
        while True:
            tok = peek()
            if tok is None:
                break
            if tok.isdigit():
                value = int(take())
                if peek() == "/":
                    take()
                    value = Fraction(value, parse_int())
                coeff = value if coeff is None else coeff * value
            elif _VAR_TOKEN.match(tok):
                name = take()
                power = 1
                if peek() == "^":
                    take()
                    power = parse_int()
                factors.append((name, power))
            else:
                raise PolynomialParseError(f"unexpected token {tok!r}")
            if peek() == "*":
                take()
                continue
            break
        if coeff is None and not factors:
            raise PolynomialParseError("empty term")
        result = ring.const(sign if coeff is None else sign * coeff)
        for name, power in factors:
            if power < 0 and not ring.is_laurent(name):
                raise PolynomialParseError(
                    f"negative exponent on non-Laurent variable {name!r}"
                )
            result = result * ring.var(name, power)
        return result

    total = ring.zero()
    sign = 1
    while peek() in ("+", "-"):
        if take() == "-":
            sign = -sign
    total = total + parse_term(sign)
    while peek() is not None:
        tok = take()
        if tok == "+":
            sign = 1
        elif tok == "-":
            sign = -1
        else:
            raise PolynomialParseError(f"expected '+' or '-', got {tok!r}")
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        total = total + parse_term(sign)
    return total


# -- polynomial matrices -----------------------------------------------------


class PolyMatrix:
    """Rectangular matrix of polynomials sharing one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingDescriptor, entries: Iterable[Iterable[Polynomial]]):
        grid = tuple(tuple(row) for row in entries)
        if not grid or not grid[0]:
            raise ExactMathError("matrix must be non-empty")
        ncols = len(grid[0])
        for row in grid:
            if len(row) != ncols:
                raise ExactMathError("matrix rows must have equal length")
            for entry in row:
                if entry.ring != ring:
                    raise RingMismatchError("matrix entries in different rings")
        self.ring = ring
        self.rows = len(grid)
        self.cols = ncols
        self.entries = grid

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "PolyMatrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, key: tuple[int, int]) -> Polynomial:
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ExactMathError("matrix shapes do not compose")
        if self.ring != other.ring:
            raise RingMismatchError("matrices in different rings")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def det(self) -> Polynomial:
        """Determinant by column-subset minor expansion (exact)."""
        if self.rows != self.cols:
            raise ExactMathError("determinant of non-square matrix")
        n = self.rows
        cache: dict[tuple[int, ...], Polynomial] = {(): self.ring.one()}

        def minor(row: int, cols: tuple[int, ...]) -> Polynomial:
            if cols in cache:
                return cache[cols]
            acc = self.ring.zero()
            for pos, col in enumerate(cols):
                entry = self.entries[row][col]
                if entry.is_zero():
                    continue
                rest = cols[:pos] + cols[pos + 1 :]
                sub = minor(row + 1, rest)
                contrib = entry * sub
                acc = acc + (contrib if pos % 2 == 0 else -contrib)
            cache[cols] = acc
            return acc

        return minor(0, tuple(range(n)))
