"""Moduli equations for simple microlocal sheaves on chain-of-cycles skeleta.

Two generators produce the same n-equation system in the 2n variables
x_1..x_n, a_1..a_n (monodromy trivializations along a chain of n
vanishing cycles):

* the recursion form  x_1 a_1 + 1 = -x_2,  1 + x_j a_j = a_{j-1} x_{j+1}
  (middle),  x_n a_n + 1 = -a_{n-1};
* the wedge form, imposing v_i ^ v_{i+1} = 1 on the vector tuple
  (1,0), (1,0), (-1, x_1), (a_1, x_2), ..., (a_{n-1}, x_n), (a_n, -1)
  for i in [3, n+2] (the leading gauge-fixed vectors contribute no
  equations).

Every equation is normalized to have a positive leading coefficient in
graded lex, which makes the two generators agree as exact polynomial
sets.  For n = 2, eliminating x_2 turns the system into the surface
x*y*z + x - z - 1 = 0 under (x, y, z) = (a_2, x_1, a_1).

Point counting over F_q: a transfer/chain dynamic program exploits the
banded variable structure (fast, any n), with a budget-guarded brute
force over F_q^(2n) as the independent oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import Polynomial, RingDescriptor, is_prime

BRUTE_FORCE_BUDGET = 10**8

THETA_METHODS = ("recursion", "wedge")


class ThetaError(ValueError):
    pass


class BudgetExceededError(ThetaError):
    pass


def theta_ring(n: int) -> RingDescriptor:
    names = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"a{i}" for i in range(1, n + 1))
    return RingDescriptor(names)


@dataclass(frozen=True)
class ThetaSystem:
    """n equations in (x_1..x_n, a_1..a_n) describing the sheaf moduli."""

    n: int
    ring: RingDescriptor
    equations: tuple[Polynomial, ...]

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables


def _sign_normalized(p: Polynomial) -> Polynomial:
    """Flip the global sign so the graded-lex leading coefficient is positive."""
    if p.is_zero():
        return p
    _, lead = p.leading_term()
    return -p if lead < 0 else p


def theta_equations_recursion(n: int) -> ThetaSystem:
    """Boundary and middle trivialization equations, sign-normalized."""
    if n < 2:
        raise ThetaError("the chain system needs n >= 2 (boundary equations collide)")
    ring = theta_ring(n)
    x = [ring.var(f"x{i}") for i in range(1, n + 1)]
    a = [ring.var(f"a{i}") for i in range(1, n + 1)]
    equations = [_sign_normalized(x[0] * a[0] + 1 + x[1])]
    for j in range(2, n):
        equations.append(_sign_normalized(ring.one() + x[j - 1] * a[j - 1] - a[j - 2] * x[j]))
    equations.append(_sign_normalized(x[n - 1] * a[n - 1] + 1 + a[n - 2]))
    return ThetaSystem(n, ring, tuple(equations))


def theta_equations_wedge(n: int) -> ThetaSystem:
    """Consecutive wedge conditions v_i ^ v_{i+1} = 1 on the vector tuple."""
    if n < 2:
        raise ThetaError("the chain system needs n >= 2 (boundary equations collide)")
    ring = theta_ring(n)
    one, zero = ring.one(), ring.zero()
    x = [ring.var(f"x{i}") for i in range(1, n + 1)]
    a = [ring.var(f"a{i}") for i in range(1, n + 1)]
    vectors = [(one, zero), (one, zero), (-one, x[0])]
    for j in range(1, n):
        vectors.append((a[j - 1], x[j]))
    vectors.append((a[n - 1], -one))
    equations = []
    for i in range(2, n + 2):  # 0-based: v_i ^ v_{i+1} for i in [3, n+2]
        (p1, q1), (p2, q2) = vectors[i], vectors[i + 1]
        equations.append(_sign_normalized(p1 * q2 - q1 * p2 - one))
    return ThetaSystem(n, ring, tuple(equations))


def theta_system(n: int, method: str = "recursion") -> ThetaSystem:
    if method not in THETA_METHODS:
        raise ThetaError(f"unknown generator {method!r}")
    return theta_equations_recursion(n) if method == "recursion" else theta_equations_wedge(n)


def count_theta_points_brute(system: ThetaSystem, q: int, budget: int = BRUTE_FORCE_BUDGET) -> int:
    """Oracle: enumerate F_q^(2n) and test every equation."""
    if not is_prime(q):
        raise ThetaError(f"{q} is not prime")
    nvars = 2 * system.n
    if q**nvars > budget:
        raise BudgetExceededError(f"q^(2n) = {q}^{nvars} exceeds the enumeration budget")
    names = system.variables
    count = 0
    for values in itertools.product(range(q), repeat=nvars):
        assignment = dict(zip(names, values))
        if all(eq.evaluate_mod(assignment, q) == 0 for eq in system.equations):
            count += 1
    return count


def count_theta_points_chain(n: int, q: int) -> int:
    """Exact count via the chain structure of the equations.

    Processing vanishing cycles left to right, the state after step j is
    (a_j, x_{j+1}); each equation determines the next coordinate (or
    branches by a free choice when a leading coefficient vanishes).  This
    is polynomial in q and n, and agrees with the brute-force oracle.
    """
    if n < 2:
        raise ThetaError("the chain system needs n >= 2")
    if not is_prime(q):
        raise ThetaError(f"{q} is not prime")
    inverse = {v: pow(v, q - 2, q) for v in range(1, q)}
    # E_1: x_2 = -1 - x_1 a_1, state (a_1, x_2).
    states: dict[tuple[int, int], int] = {}
    for x1 in range(q):
        for a1 in range(q):
            key = (a1, (-1 - x1 * a1) % q)
            states[key] = states.get(key, 0) + 1
    # Middle equations: 1 + x_j a_j = a_{j-1} x_{j+1}.
    for _ in range(2, n):
        new_states: dict[tuple[int, int], int] = {}
        for (a_prev, x_j), count in states.items():
            if a_prev != 0:
                inv = inverse[a_prev]
                for a_j in range(q):
                    key = (a_j, (1 + x_j * a_j) * inv % q)
                    new_states[key] = new_states.get(key, 0) + count
            elif x_j != 0:
                a_j = (-inverse[x_j]) % q
                for x_next in range(q):
                    key = (a_j, x_next)
                    new_states[key] = new_states.get(key, 0) + count
        states = new_states
    # E_n: x_n a_n + 1 + a_{n-1} = 0.
    total = 0
    for (a_prev, x_n), count in states.items():
        if x_n != 0:
            total += count
        elif a_prev == (q - 1):
            total += count * q
    return total


def count_theta_points(n: int, q: int, method: str = "chain") -> int:
    """Solution count of the chain system over F_q by the chosen method."""
    if method == "chain":
        return count_theta_points_chain(n, q)
    if method == "brute":
        return count_theta_points_brute(theta_equations_recursion(n), q)
    raise ThetaError(f"unknown counting method {method!r}")


def eliminate_x2(system: ThetaSystem) -> Polynomial:
    """For n = 2: substitute x_2 = -1 - x_1 a_1 into the second equation.

    The sign-normalized result equals x*y*z + x - z - 1 under the variable
    relabeling (x, y, z) = (a_2, x_1, a_1).
    """
    if system.n != 2:
        raise ThetaError("elimination shortcut is defined for n = 2")
    ring = system.ring
    x1a1 = ring.var("x1") * ring.var("a1")
    replacement = -ring.one() - x1a1
    return _sign_normalized(system.equations[1].substitute("x2", replacement))


def interpolate_integer_polynomial(points: list[tuple[int, int]]) -> list[Fraction] | None:
    """Coefficients (ascending degree) of the poly through the given points.

    Newton's divided differences over exact rationals; returns None when
    any coefficient fails to be an integer.
    """
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    m = len(points)
    table = list(ys)
    newton = []
    for level in range(m):
        newton.append(table[0])
        table = [
            (table[i + 1] - table[i]) / (xs[i + 1 + level] - xs[i])
            for i in range(len(table) - 1)
        ]
    # Expand Newton form into monomial coefficients.
    coeffs = [Fraction(0)] * m
    basis = [Fraction(1)] + [Fraction(0)] * (m - 1)
    for level in range(m):
        for i, c in enumerate(basis):
            coeffs[i] += newton[level] * c
        # basis *= (x - xs[level])
        new_basis = [Fraction(0)] * m
        for i, c in enumerate(basis):
            if c == 0:
                continue
            if i + 1 < m:
                new_basis[i + 1] += c
            new_basis[i] -= c * xs[level]
        basis = new_basis
    if any(c.denominator != 1 for c in coeffs):
        return None
    return coeffs


def check_point_count_polynomiality(
    n: int, primes: tuple[int, ...] = (2, 3, 5, 7, 11)
) -> dict:
    """Fit counts over the first deg+1 primes and verify on the rest.

    The interpolation degree is n (the dimension of the chain system);
    returns the counts, integer coefficients, and verification outcome.
    """
    counts = [(q, count_theta_points_chain(n, q)) for q in primes]
    need = n + 1
    if len(counts) < need:
        raise ThetaError(f"need at least {need} primes to interpolate degree {n}")
    coeffs = interpolate_integer_polynomial(counts[:need])
    result = {
        "n": n,
        "counts": counts,
        "degree": n,
        "integer_coefficients": coeffs is not None,
        "verified": False,
    }
    if coeffs is None:
        return result

    def value(q: int) -> int:
        total = Fraction(0)
        for i, c in enumerate(coeffs):
            total += c * q**i
        return int(total)

    result["coefficients"] = [int(c) for c in coeffs]
    result["verified"] = all(value(q) == count for q, count in counts[need:])
    return result


# -- exploratory positroid comparison ----------------------------------------


def count_positroid_points(n: int, q: int, budget: int = 4 * 10**6) -> int:
    """Points of the cyclic open positroid stratum in Gr(2, n+3) over F_q.

    Counts row-reduced full-rank 2 x (n+3) matrices whose cyclically
    consecutive Pluecker minors P_{i,i+1} (indices mod n+3) all vanish
    nowhere.  Reported alongside the chain count for comparison; the
    torus-factor relation between the two is not asserted.
    """
    if not is_prime(q):
        raise ThetaError(f"{q} is not prime")
    m = n + 3
    total_points = (q**m - 1) * (q ** (m - 1) - 1) // ((q**2 - 1) * (q - 1))
    if total_points > budget:
        raise BudgetExceededError(f"Gr(2,{m}) over F_{q} has {total_points} points")
    count = 0
    for i in range(m - 1):
        for j in range(i + 1, m):
            free1 = [c for c in range(i + 1, m) if c != j]
            free2 = list(range(j + 1, m))
            for vals1 in itertools.product(range(q), repeat=len(free1)):
                row1 = [0] * m
                row1[i] = 1
                for c, v in zip(free1, vals1):
                    row1[c] = v
                for vals2 in itertools.product(range(q), repeat=len(free2)):
                    row2 = [0] * m
                    row2[j] = 1
                    for c, v in zip(free2, vals2):
                        row2[c] = v
                    ok = True
                    for c in range(m):
                        d = c + 1 if c + 1 < m else 0
                        minor = (row1[c] * row2[d] - row1[d] * row2[c]) % q
                        if minor == 0:
                            ok = False
                            break
                    if ok:
                        count += 1
    return count


def system_to_json_dict(system: ThetaSystem) -> dict:
    return {
        "n": system.n,
        "variables": list(system.variables),
        "equations": [eq.to_text() for eq in system.equations],
    }
