"""Augmentation-variety equation systems for (-1)-framed positive braid closures.

For a word with crossings sigma_{k_1} .. sigma_{k_s} on n strands, the
system consists of the n^2 entries of

    diag(t, 1, ..., 1) + P_{k_1}(z_1) P_{k_2}(z_2) ... P_{k_s}(z_s),

where P_k(z) is the identity with the 2x2 block [[0, 1], [1, z]] in rows
and columns k, k+1.  The intended input is beta * Delta^2 for a rainbow
closure braid beta.  A ``t-inverse`` convention replacing diag(t, 1, ..)
by diag(t^-1, 1, ..) is available; t and t^-1 differ by a unit
relabeling, so solution counts agree.

Caveat for multi-component closures: the system is emitted with a single
base-point variable t exactly as in the knot case.  The honest moduli
for an l-component link is a quotient of this variety times (C*)^l by a
torus action; that quotient is out of scope here, so counts for links
are raw variety counts.

Counting oracles: a brute-force loop over the stored equations, and an
independent dynamic program over the distribution of partial matrix
products in M_n(F_q).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactmath import Polynomial, PolyMatrix, RingDescriptor, is_prime
from .links import BraidWord

BRUTE_FORCE_BUDGET = 10**8
DP_STATE_BUDGET = 10**6

T_CONVENTIONS = ("t", "t-inverse")


class AugmentError(ValueError):
    pass


class BudgetExceededError(AugmentError):
    pass


def augmentation_ring(s: int) -> RingDescriptor:
    """Z[z_1..z_s, t, t^-1]: one z per crossing plus the Laurent base-point variable."""
    names = tuple(f"z{i}" for i in range(1, s + 1)) + ("t",)
    return RingDescriptor(names, laurent=frozenset({"t"}))


def pk_matrix(ring: RingDescriptor, n: int, k: int, var: str) -> PolyMatrix:
    """The n x n matrix P_k(z): identity except rows/columns k, k+1.

    The exceptional block is [[0, 1], [1, z]]; its determinant is -1 for
    every n and k.
    """
    if not 1 <= k <= n - 1:
        raise AugmentError(f"generator index {k} out of range for {n} strands")
    one, zero = ring.one(), ring.zero()
    z = ring.var(var)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if (i, j) == (k, k + 1) or (i, j) == (k + 1, k):
                row.append(one)
            elif i == j == k + 1:
                row.append(z)
            elif i == j and i != k:
                row.append(one)
            else:
                row.append(zero)
        rows.append(row)
    return PolyMatrix(ring, rows)


@dataclass(frozen=True)
class AugmentationSystem:
    """The n^2 equations cutting out the augmentation variety in C^s x C*."""

    strands: int
    word: BraidWord
    ring: RingDescriptor
    equations: tuple[Polynomial, ...]
    t_convention: str

    @property
    def z_count(self) -> int:
        return len(self.word)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables

    def equation(self, i: int, j: int) -> Polynomial:
        """Row-major access, 1-based."""
        return self.equations[(i - 1) * self.strands + (j - 1)]


def braid_matrix(ring: RingDescriptor, word: BraidWord) -> PolyMatrix:
    """B(word) = P_{k_1}(z_1) ... P_{k_s}(z_s), left-to-right."""
    n = word.strands
    product = PolyMatrix.identity(ring, n)
    for pos, k in enumerate(word.letters, start=1):
        product = product @ pk_matrix(ring, n, k, f"z{pos}")
    return product


def augmentation_equations(word: BraidWord, t_convention: str = "t") -> AugmentationSystem:
    """Equations of diag(t, 1, .., 1) + B(word), row-major.

    The word is expected to be the full braid (beta * Delta^2 for rainbow
    closures); no twist is appended here.
    """
    if t_convention not in T_CONVENTIONS:
        raise AugmentError(f"unknown t convention {t_convention!r}")
    n = word.strands
    ring = augmentation_ring(len(word))
    b = braid_matrix(ring, word)
    t_power = 1 if t_convention == "t" else -1
    t_entry = ring.var("t", t_power)
    equations = []
    for i in range(n):
        for j in range(n):
            entry = b[i, j]
            if i == j:
                entry = entry + (t_entry if i == 0 else ring.one())
            equations.append(entry)
    return AugmentationSystem(
        strands=n,
        word=word,
        ring=ring,
        equations=tuple(equations),
        t_convention=t_convention,
    )


def _compile_terms(p: Polynomial, s: int):
    """Precompile for F_q evaluation: (coeff, z-index list, t exponent).

    Entries of products of P_k matrices are multilinear in each z, so
    z-exponents are 0/1; t appears only through the diagonal convention
    term with exponent +-1.
    """
    compiled = []
    for exp, coeff in p.terms.items():
        zs = []
        for idx in range(s):
            e = exp[idx]
            if e == 1:
                zs.append(idx)
            elif e != 0:
                raise AugmentError("unexpected exponent in augmentation equation")
        compiled.append((int(coeff), tuple(zs), exp[s]))
    return compiled


def count_solutions_bruteforce(
    system: AugmentationSystem,
    q: int,
    chunk_size: int = 4096,
    threads: int = 1,
    budget: int = BRUTE_FORCE_BUDGET,
) -> int:
    """Exact number of (z, t) in F_q^s x F_q^* solving every equation.

    Enumerates all z-assignments (budget-guarded), testing each stored
    equation with early exit; the workload is split into chunks whose
    partial counts are summed in order, so the result is independent of
    the worker count.  Every solution found is checked against the sign
    law t = (-1)^(n+s).
    """
    if not is_prime(q):
        raise AugmentError(f"{q} is not prime")
    s = len(system.word)
    if q**s > budget:
        raise BudgetExceededError(f"q^s = {q}^{s} exceeds the enumeration budget")
    compiled = [_compile_terms(p, s) for p in system.equations]
    n = system.strands
    expected_t = (-1) ** (n + s) % q
    inverse = {v: pow(v, q - 2, q) for v in range(1, q)}

    def eval_equation(eq, zs, t_val) -> int:
        total = 0
        for coeff, z_idx, t_exp in eq:
            term = coeff
            for idx in z_idx:
                term = term * zs[idx]
            if t_exp == 1:
                term = term * t_val
            elif t_exp == -1:
                term = term * inverse[t_val]
            total += term
        return total % q

    def count_chunk(chunk) -> int:
        found = 0
        for zs in chunk:
            for t_val in range(1, q):
                if all(eval_equation(eq, zs, t_val) == 0 for eq in compiled):
                    if t_val != expected_t:
                        raise AugmentError(
                            f"solution with t = {t_val} violates t = (-1)^(n+s) = {expected_t}"
                        )
                    found += 1
        return found

    assignments = itertools.product(range(q), repeat=s)

    def chunks():
        while True:
            chunk = list(itertools.islice(assignments, chunk_size))
            if not chunk:
                return
            yield chunk

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(count_chunk, chunks()))
    return sum(count_chunk(chunk) for chunk in chunks())


def count_solutions_dp(word: BraidWord, q: int, t_convention: str = "t") -> int:
    """Independent count via the distribution of partial products in M_n(F_q).

    Maintains, letter by letter, how many z-prefixes produce each matrix
    value of P_{k_1}(z_1)...P_{k_r}(z_r); the final answer sums the
    multiplicity of -diag(t, 1, .., 1) over t in F_q^*.  Agrees exactly
    with :func:`count_solutions_bruteforce`.
    """
    if not is_prime(q):
        raise AugmentError(f"{q} is not prime")
    if t_convention not in T_CONVENTIONS:
        raise AugmentError(f"unknown t convention {t_convention!r}")
    n = word.strands
    if q ** (n * n) > DP_STATE_BUDGET:
        raise BudgetExceededError(f"q^(n^2) = {q}^{n*n} exceeds the DP state budget")
    identity = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    dist = {identity: 1}
    for k in word.letters:
        ck = k - 1
        new_dist: dict[tuple[int, ...], int] = {}
        for matrix, count in dist.items():
            rows = [matrix[r * n : (r + 1) * n] for r in range(n)]
            for z in range(q):
                flat = []
                for row in rows:
                    new_row = list(row)
                    a, b = row[ck], row[ck + 1]
                    new_row[ck] = b
                    new_row[ck + 1] = (a + z * b) % q
                    flat.extend(new_row)
                key = tuple(flat)
                new_dist[key] = new_dist.get(key, 0) + count
        dist = new_dist
    total = 0
    for t_val in range(1, q):
        # Both conventions sum the same multiset of diagonal targets.
        target = tuple(
            (-(t_val if i == 0 else 1)) % q if i == j else 0
            for i in range(n)
            for j in range(n)
        )
        total += dist.get(target, 0)
    return total


def symbolic_determinant(word: BraidWord) -> Polynomial:
    """det B(word) as an exact polynomial; equals (-1)^s identically."""
    ring = augmentation_ring(len(word))
    return braid_matrix(ring, word).det()


def system_to_json_dict(system: AugmentationSystem) -> dict:
    return {
        "strands": system.strands,
        "word": list(system.word.letters),
        "t_convention": system.t_convention,
        "variables": list(system.variables),
        "equations": [eq.to_text() for eq in system.equations],
    }
