"""Brute-force reference solvers for the group-support minimization problems.

Two questions are answered exactly on desk-scale instances:

* the smallest number of M-server groups that can carry positive file
  fractions while filling every server's budget of M/N exactly
  (`min_eta_star`), and
* the smallest number of groups when all fractions are forced equal
  (`min_eta_equal`).

Both enumerate candidate supports outright and decide each candidate with
an exact-rational feasibility kernel (unit propagation plus a phase-1
simplex under Bland's rule), so the results are certificates, not
estimates. Instances are hard-capped at N <= 8; the combinatorics explode
beyond that and these solvers exist to certify bounds, not to scale.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .sda import eta_lower_bound

Subset = tuple[int, ...]

MAX_SERVERS = 8
MAX_CAP = 12


class OracleBudgetError(RuntimeError):
    """Raised when the requested search exceeds the desk-scale budget."""


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: dict[Subset, Fraction] | None

    def __post_init__(self):
        if self.feasible and not self.witness:
            raise ValueError("feasible result needs a witness")


# ---------------------------------------------------------------------------
# Feasibility kernel
# ---------------------------------------------------------------------------


def _propagate(subsets: list[Subset], n: int, mu: Fraction):
    """Unit propagation on the per-server equality constraints.

    Returns (alpha, remaining) where alpha[j] is a decided value or None,
    and remaining[i] is server i+1's still-unassigned budget; returns None
    when a contradiction is reached. Only forced deductions are made, so
    the reduced system is equivalent to the original.
    """
    alpha: list[Fraction | None] = [None] * len(subsets)
    remaining = [mu] * n
    covers = [[j for j, s in enumerate(subsets) if i + 1 in s] for i in range(n)]
    progress = True
    while progress:
        progress = False
        for i in range(n):
            live = [j for j in covers[i] if alpha[j] is None]
            if not live:
                if remaining[i] != 0:
                    return None
                continue
            if remaining[i] == 0:
                # exhausted server: every remaining group through it is forced to 0
                for j in live:
                    alpha[j] = Fraction(0)
                progress = True
            elif len(live) == 1:
                j = live[0]
                value = remaining[i]
                alpha[j] = value
                for server in subsets[j]:
                    remaining[server - 1] -= value
                    if remaining[server - 1] < 0:
                        return None
                progress = True
    return alpha, remaining


def _phase1_simplex(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve A x = b, x >= 0 (b >= 0) exactly; returns x or None if infeasible.

    Phase-1 simplex over Fractions: minimize the sum of one artificial
    variable per constraint, pivoting by Bland's rule so termination is
    guaranteed.
    """
    p = len(rows)
    s = len(rows[0]) if p else 0
    total = s + p
    tab = [rows[r][:] + [Fraction(int(i == r)) for i in range(p)] + [rhs[r]] for r in range(p)]
    basis = [s + r for r in range(p)]
    # reduced-cost row for the artificial objective: column sums minus costs
    obj = [sum(tab[r][j] for r in range(p)) - (1 if j >= s else 0) for j in range(total)]
    obj_rhs = sum(rhs)
    while True:
        enter = next((j for j in range(total) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for r in range(p):
            coeff = tab[r][enter]
            if coeff > 0:
                ratio = tab[r][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            raise RuntimeError("phase-1 objective unbounded")  # cannot happen: bounded by 0
        pivot = tab[leave][enter]
        tab[leave] = [v / pivot for v in tab[leave]]
        for r in range(p):
            if r != leave and tab[r][enter] != 0:
                factor = tab[r][enter]
                tab[r] = [v - factor * w for v, w in zip(tab[r], tab[leave])]
        factor = obj[enter]
        obj = [v - factor * w for v, w in zip(obj, tab[leave][:total])]
        obj_rhs -= factor * tab[leave][-1]
        basis[leave] = enter
    if obj_rhs != 0:
        return None
    x = [Fraction(0)] * s
    for r, var in enumerate(basis):
        if var < s:
            x[var] = tab[r][-1]
    return x


def _solve_support(subsets: list[Subset], n: int, mu: Fraction):
    """Nonnegative solution of the per-server equalities on this support,
    or None. Propagation first; simplex only on the undecided remainder."""
    state = _propagate(subsets, n, mu)
    if state is None:
        return None
    alpha, remaining = state
    open_idx = [j for j, v in enumerate(alpha) if v is None]
    if not open_idx:
        if any(remaining):
            return None
        return alpha
    live_servers = [i for i in range(n) if any(i + 1 in subsets[j] for j in open_idx)]
    rows = [[Fraction(int(i + 1 in subsets[j])) for j in open_idx] for i in live_servers]
    rhs = [remaining[i] for i in live_servers]
    solution = _phase1_simplex(rows, rhs)
    if solution is None:
        return None
    for j, value in zip(open_idx, solution):
        alpha[j] = value
    return alpha


def _as_subsets(candidate, n: int, m: int) -> list[Subset]:
    subsets = [tuple(sorted(s)) for s in candidate]
    if not subsets:
        raise ValueError("candidate support is empty")
    for s in subsets:
        if len(set(s)) != m:
            raise ValueError(f"candidate group {s} does not have {m} distinct servers")
        if not all(1 <= v <= n for v in s):
            raise ValueError(f"candidate group {s} has a server outside 1..{n}")
    if len(set(subsets)) != len(subsets):
        raise ValueError("candidate groups are not pairwise distinct")
    return subsets


def lp_feasible(candidate, n: int, m: int) -> FeasibilityResult:
    """Decide whether the per-server budget equalities admit a nonnegative
    solution supported on the candidate groups.

    Zero entries of the vertex solution are dropped from the witness, so a
    feasible witness is strictly positive on a (possibly smaller) support.
    This makes feasibility monotone under adding groups; the minimum-size
    searches are unaffected because a witness on a strict sub-support would
    already have been found at the smaller size.
    """
    subsets = _as_subsets(candidate, n, m)
    solution = _solve_support(subsets, n, Fraction(m, n))
    if solution is None:
        return FeasibilityResult(False, None)
    witness = {s: v for s, v in zip(subsets, solution) if v > 0}
    return FeasibilityResult(True, witness)


# ---------------------------------------------------------------------------
# Minimum-support searches
# ---------------------------------------------------------------------------


def _check_scale(n: int, m: int, cap: int) -> None:
    if not (2 <= m <= n):
        raise ValueError(f"need 2 <= M <= N, got N={n}, M={m}")
    if n > MAX_SERVERS:
        raise ValueError(f"oracle is desk-scale only: N={n} exceeds {MAX_SERVERS}")
    if cap > MAX_CAP:
        raise ValueError(f"support cap {cap} exceeds {MAX_CAP}")


def min_eta_star(n: int, m: int, cap: int = MAX_CAP, prune_symmetry: bool = False):
    """Smallest feasible support size, with a strictly positive witness.

    Searches sizes upward from the combinatorial lower bound, enumerating
    every size-k set of M-subsets. With prune_symmetry the enumeration
    fixes {1..M} as the lexicographically smallest group, which is sound
    because feasibility is invariant under relabeling servers.
    """
    _check_scale(n, m, cap)
    mu = Fraction(m, n)
    universe = list(combinations(range(1, n + 1), m))
    tried = 0
    for size in range(eta_lower_bound(n, m), cap + 1):
        if prune_symmetry and size >= 1:
            candidates = (
                (universe[0],) + rest for rest in combinations(universe[1:], size - 1)
            )
        else:
            candidates = combinations(universe, size)
        for candidate in candidates:
            tried += 1
            solution = _solve_support(list(candidate), n, mu)
            if solution is not None:
                witness = {s: v for s, v in zip(candidate, solution) if v > 0}
                return size, witness
    raise OracleBudgetError(
        f"no feasible support of size <= {cap} for N={n}, M={m} ({tried} candidates tried)"
    )


def min_eta_equal(n: int, m: int, cap: int = MAX_CAP):
    """Smallest eta for which some eta-multiset of M-subsets covers every
    server exactly M*eta/N times (all group fractions equal 1/eta).

    Sizes that make M*eta/N non-integral are impossible and skipped; the
    rest are decided by depth-first search over multisets.
    """
    _check_scale(n, m, cap)
    universe = list(combinations(range(1, n + 1), m))
    for eta in range(1, cap + 1):
        if (m * eta) % n:
            continue
        target = m * eta // n
        witness = _equal_cover(universe, n, eta, target)
        if witness is not None:
            return eta, witness
    raise OracleBudgetError(f"no equal-size cover of size <= {cap} for N={n}, M={m}")


def _equal_cover(universe: list[Subset], n: int, picks: int, target: int):
    """Multiset of `picks` subsets covering each server exactly `target`
    times, or None. Chosen indices are nondecreasing, so each multiset is
    visited once."""
    deficit = [target] * n
    chosen: list[Subset] = []

    def dfs(start: int, left: int) -> bool:
        if left == 0:
            return not any(deficit)
        if max(deficit) > left:
            return False
        for j in range(start, len(universe)):
            s = universe[j]
            if all(deficit[i - 1] > 0 for i in s):
                for i in s:
                    deficit[i - 1] -= 1
                chosen.append(s)
                if dfs(j, left - 1):
                    return True
                chosen.pop()
                for i in s:
                    deficit[i - 1] += 1
        return False

    return list(chosen) if dfs(0, picks) else None
