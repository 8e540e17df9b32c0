"""Single linear equations with integer coefficients and their solutions.

An equation ``a_1 x_1 + ... + a_k x_k = 0`` is stored as its coefficient
vector.  Positive coefficients are read as left-hand-side variables and
negative ones as right-hand-side variables, so ``(1, 1, -1)`` is Schur's
``x + y = z``.  Solutions may repeat values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

# Meet-in-the-middle is used for balanced equations with at least this many
# variables, when |A| is at least MITM_MIN_SET and the half-table fits.
MITM_MIN_VARS = 4
MITM_MIN_SET = 64
MITM_TABLE_LIMIT = 2_000_000


@dataclass(frozen=True)
class LinearEquation:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coefficients)
        if not coeffs:
            raise ValueError("an equation needs at least one coefficient")
        if any(a == 0 for a in coeffs):
            raise ValueError(f"zero coefficient in {coeffs}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def balanced(cls, l: int, r: int) -> LinearEquation:
        """``x_1 + ... + x_l = y_1 + ... + y_r``."""
        if l < 1 or r < 0:
            raise ValueError(f"bad balanced shape ({l}, {r})")
        return cls((1,) * l + (-1,) * r)

    @classmethod
    def parse(cls, text: str) -> LinearEquation:
        """Parse ``"1 1 -1"`` or the shorthand ``"balanced 3 2"``."""
        parts = text.split()
        if not parts:
            raise ValueError("empty equation string")
        if parts[0] == "balanced":
            if len(parts) != 3:
                raise ValueError(f"expected 'balanced L R', got {text!r}")
            return cls.balanced(int(parts[1]), int(parts[2]))
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"cannot parse equation {text!r}: {exc}") from None

    def __len__(self):
        return len(self.coefficients)

    @property
    def balanced_form(self) -> Optional[tuple[int, int]]:
        """``(l, r)`` when every coefficient is +1 or -1, else None."""
        if any(abs(a) != 1 for a in self.coefficients):
            return None
        l = sum(1 for a in self.coefficients if a == 1)
        return l, len(self.coefficients) - l

    @property
    def is_canonical_balanced(self) -> bool:
        """Balanced with all +1 entries before all -1 entries."""
        form = self.balanced_form
        if form is None:
            return False
        l, r = form
        return self.coefficients == (1,) * l + (-1,) * r

    def to_text(self) -> str:
        return " ".join(str(a) for a in self.coefficients)


@dataclass(frozen=True)
class SolutionWitness:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def to_list(self) -> list[int]:
        return list(self.values)


def is_invariant(eq: LinearEquation) -> bool:
    return sum(eq.coefficients) == 0


def is_regular(eq: LinearEquation) -> bool:
    """Rado's criterion for one equation: some nonempty subset of coefficients sums to 0."""
    reachable: set[int] = set()
    for a in eq.coefficients:
        reachable |= {s + a for s in reachable} | {a}
    return 0 in reachable


def check_solution(eq: LinearEquation, w: SolutionWitness | Sequence[int]) -> bool:
    values = w.values if isinstance(w, SolutionWitness) else tuple(w)
    if len(values) != len(eq.coefficients):
        raise ValueError(
            f"witness has {len(values)} values, equation has {len(eq.coefficients)} variables"
        )
    return sum(a * x for a, x in zip(eq.coefficients, values)) == 0


def find_solution_naive(eq: LinearEquation, A: Iterable[int]) -> Optional[SolutionWitness]:
    """Exhaustive enumeration in lexicographic order; the reference oracle."""
    values = sorted(set(A))
    coeffs = eq.coefficients
    for combo in itertools.product(values, repeat=len(coeffs)):
        if sum(a * x for a, x in zip(coeffs, combo)) == 0:
            return SolutionWitness(combo)
    return None


def _mitm_split(eq: LinearEquation) -> int:
    if eq.is_canonical_balanced:
        l, _ = eq.balanced_form
        if 0 < l < len(eq.coefficients):
            return l
    return len(eq.coefficients) // 2


def find_solution_mitm(eq: LinearEquation, A: Iterable[int]) -> Optional[SolutionWitness]:
    """Meet in the middle over a split of the variables.

    For canonical balanced equations the split is LHS/RHS.  The table maps
    each second-half sum to its lexicographically first tuple, so scanning
    first-half tuples in lexicographic order returns the overall
    lexicographically smallest witness.
    """
    values = sorted(set(A))
    if not values:
        return None
    coeffs = eq.coefficients
    h = _mitm_split(eq)
    head, tail = coeffs[:h], coeffs[h:]
    table: dict[int, tuple[int, ...]] = {}
    for combo in itertools.product(values, repeat=len(tail)):
        table.setdefault(sum(a * x for a, x in zip(tail, combo)), combo)
    for combo in itertools.product(values, repeat=len(head)):
        rest = table.get(-sum(a * x for a, x in zip(head, combo)))
        if rest is not None:
            return SolutionWitness(combo + rest)
    return None


def _shift(bits: int, d: int) -> int:
    return bits << d if d >= 0 else bits >> -d


def find_solution_dp(eq: LinearEquation, A: Iterable[int]) -> Optional[SolutionWitness]:
    """Reachable-suffix-sum tables (as int bitsets) plus a greedy lexicographic descent."""
    values = sorted(set(A))
    if not values:
        return None
    coeffs = eq.coefficients
    k = len(coeffs)
    # bit (s + base) set  <=>  suffix sum s reachable
    base = sum(-a for a in coeffs if a < 0) * values[-1]
    suffix = [0] * (k + 1)
    suffix[k] = 1 << base
    for i in range(k - 1, -1, -1):
        acc = 0
        nxt = suffix[i + 1]
        for x in values:
            acc |= _shift(nxt, coeffs[i] * x)
        suffix[i] = acc
    if not (suffix[0] >> base) & 1:
        return None
    chosen = []
    prefix = 0
    for i, a in enumerate(coeffs):
        for x in values:
            need = -(prefix + a * x) + base
            if need >= 0 and (suffix[i + 1] >> need) & 1:
                chosen.append(x)
                prefix += a * x
                break
        else:  # pragma: no cover - suffix table guarantees a continuation
            raise AssertionError("descent lost the reachable path")
    return SolutionWitness(chosen)


def _mitm_applies(eq: LinearEquation, size: int) -> bool:
    if eq.balanced_form is None or len(eq) < MITM_MIN_VARS or size < MITM_MIN_SET:
        return False
    h = _mitm_split(eq)
    return size ** max(h, len(eq) - h) <= MITM_TABLE_LIMIT


def find_solution_in_set(
    eq: LinearEquation, A: Iterable[int], method: str = "auto"
) -> Optional[SolutionWitness]:
    """Lexicographically smallest witness with every value drawn from ``A``.

    ``method`` is one of ``auto``, ``naive``, ``mitm`` or ``dp``; all return
    the same witness.
    """
    values = sorted(set(A))
    if not values:
        return None
    if method == "auto":
        method = "mitm" if _mitm_applies(eq, len(values)) else "dp"
    if method == "naive":
        return find_solution_naive(eq, values)
    if method == "mitm":
        return find_solution_mitm(eq, values)
    if method == "dp":
        return find_solution_dp(eq, values)
    raise ValueError(f"unknown method {method!r}")


def has_solution_using(eq: LinearEquation, A: Iterable[int], m: int) -> bool:
    """True iff some solution over ``A | {m}`` uses ``m`` at least once.

    Used by the backtracking search: when ``m`` joins a class, only the new
    solutions (those involving ``m``) need checking.
    """
    values = sorted(set(A) | {m})
    coeffs = eq.coefficients
    base = sum(-a for a in coeffs if a < 0) * values[-1]
    without = 1 << base
    with_m = 0
    for a in coeffs:
        nw = 0
        nm = _shift(without, a * m) | _shift(with_m, a * m)
        for x in values:
            if x == m:
                continue
            d = a * x
            nw |= _shift(without, d)
            nm |= _shift(with_m, d)
        without, with_m = nw, nm
    return bool((with_m >> base) & 1)


def extend_solution(
    eq: LinearEquation, w: SolutionWitness, t: int, w_pad: int
) -> tuple[LinearEquation, SolutionWitness]:
    """Turn an (l, r) witness into an (lt + w_pad, rt + w_pad) witness.

    Each left value and each right value is repeated ``t`` times in place,
    then ``w_pad`` copies of the first left value go on both sides.
    """
    form = eq.balanced_form
    if form is None or not eq.is_canonical_balanced:
        raise ValueError("extend_solution needs a balanced equation with +1 entries first")
    if t < 1 or w_pad < 0:
        raise ValueError(f"need t >= 1 and w_pad >= 0, got t={t}, w_pad={w_pad}")
    if not check_solution(eq, w):
        raise ValueError(f"{w.values} does not solve {eq.to_text()}")
    l, r = form
    xs, ys = w.values[:l], w.values[l:]
    pad = (xs[0],) * w_pad
    new_x = tuple(x for x in xs for _ in range(t)) + pad
    new_y = tuple(y for y in ys for _ in range(t)) + pad
    return LinearEquation.balanced(l * t + w_pad, r * t + w_pad), SolutionWitness(new_x + new_y)


def find_solution_in_interval(eq: LinearEquation, lo: int, hi: int) -> Optional[SolutionWitness]:
    """Lexicographically smallest witness with values in ``[lo, hi]``, for +-1 coefficients.

    Sums of j values from an interval fill ``[j lo, j hi]`` with no gaps, so
    every suffix-sum table is itself an interval and the descent in
    :func:`find_solution_dp` runs in closed form.
    """
    if eq.balanced_form is None:
        raise ValueError("interval solver needs +-1 coefficients")
    if lo > hi:
        return None
    coeffs = eq.coefficients
    k = len(coeffs)
    # suffix sums of positions i.. lie in [low[i], high[i]]
    low = [0] * (k + 1)
    high = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        if coeffs[i] > 0:
            low[i], high[i] = low[i + 1] + lo, high[i + 1] + hi
        else:
            low[i], high[i] = low[i + 1] - hi, high[i + 1] - lo
    if not low[0] <= 0 <= high[0]:
        return None
    chosen = []
    prefix = 0
    for i, a in enumerate(coeffs):
        # need prefix + a x + S = 0 for some S in [low[i+1], high[i+1]]
        if a > 0:
            x = max(lo, -prefix - high[i + 1])
        else:
            x = max(lo, prefix + low[i + 1])
        assert x <= hi
        chosen.append(x)
        prefix += a * x
    return SolutionWitness(chosen)
