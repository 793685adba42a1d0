"""Core types for the box-search games: costs, variants, allocations, hider
mixtures and the searcher's information state.

Numbers are either ``fractions.Fraction`` (exact mode) or ``float``. Every
function in the package works with whichever type it is handed; mixing the
two silently degrades to float, which is what Python does anyway.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence, Union

Number = Union[Fraction, float, int]
Allocation = tuple  # tuple[int, ...], ball count per box

LOOK_MODES = ("multi", "single")
PAYOFF_MODES = ("cost", "regret")


class InvalidInstance(ValueError):
    """An instance (costs, k, variant) violates a precondition."""


class InvalidOrder(ValueError):
    """An operation that needs costs sorted in decreasing order got unsorted input."""


class PolicyViolation(RuntimeError):
    """A searcher policy put mass on an inadmissible box or a bad distribution."""


def to_number(value, exact: bool = True) -> Number:
    """Convert ``value`` (int, float, Fraction or decimal string) to the working type.

    In exact mode floats go through their shortest repr, so ``0.99`` becomes
    ``99/100`` rather than the binary approximation.
    """
    if exact:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            return Fraction(repr(value))
        return Fraction(value)
    if isinstance(value, str):
        # rational strings such as "1/3" are accepted in float mode too
        return float(Fraction(value)) if "/" in value else float(value)
    return float(value)


def is_exact(values: Iterable) -> bool:
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in values)


def as_costs(costs: Sequence, exact: bool | None = None) -> tuple:
    """Validate a cost vector and return it as a tuple.

    ``exact=None`` keeps floats and Fractions as given and lifts ints and
    decimal strings to Fraction.
    """
    costs = tuple(costs)
    if len(costs) < 1:
        raise InvalidInstance("need at least one box")
    try:
        if exact is not None:
            costs = tuple(to_number(c, exact) for c in costs)
        else:
            costs = tuple(Fraction(c) if isinstance(c, (int, str)) else c for c in costs)
    except (ValueError, OverflowError, TypeError) as err:
        raise InvalidInstance(f"bad cost value: {err}") from None
    for c in costs:
        if isinstance(c, float) and not math.isfinite(c):
            raise InvalidInstance(f"costs must be finite, got {c!r}")
        if not c > 0:
            raise InvalidInstance(f"costs must be strictly positive, got {c!r}")
    return costs


@dataclass(frozen=True)
class CostVector:
    costs: tuple

    def __post_init__(self):
        object.__setattr__(self, "costs", as_costs(self.costs))

    def __len__(self):
        return len(self.costs)

    def __iter__(self):
        return iter(self.costs)

    def __getitem__(self, i):
        return self.costs[i]

    @property
    def n(self) -> int:
        return len(self.costs)


@dataclass(frozen=True)
class GameVariant:
    look_mode: str = "multi"
    payoff_mode: str = "cost"

    def __post_init__(self):
        if self.look_mode not in LOOK_MODES:
            raise InvalidInstance(f"look_mode must be one of {LOOK_MODES}")
        if self.payoff_mode not in PAYOFF_MODES:
            raise InvalidInstance(f"payoff_mode must be one of {PAYOFF_MODES}")

    @classmethod
    def parse(cls, name: "str | GameVariant") -> "GameVariant":
        if isinstance(name, GameVariant):
            return name
        try:
            look, pay = str(name).split("-")
        except ValueError:
            raise InvalidInstance(f"bad variant {name!r}; expected e.g. 'multi-cost'") from None
        return cls(look, pay)

    @property
    def single(self) -> bool:
        return self.look_mode == "single"

    @property
    def regret(self) -> bool:
        return self.payoff_mode == "regret"

    def __str__(self):
        return f"{self.look_mode}-{self.payoff_mode}"


MULTI_COST = GameVariant("multi", "cost")
MULTI_REGRET = GameVariant("multi", "regret")
SINGLE_COST = GameVariant("single", "cost")
SINGLE_REGRET = GameVariant("single", "regret")


def _check_instance(n: int, k: int, look_mode: str):
    if n < 1 or k < 0:
        raise InvalidInstance(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if look_mode == "single" and k > n:
        raise InvalidInstance(f"single-look needs k <= n, got n={n}, k={k}")


def enumerate_allocations(n: int, k: int, look_mode: str = "multi") -> list[Allocation]:
    """All hider pure strategies in lexicographic order."""
    _check_instance(n, k, look_mode)
    if look_mode == "single":
        out = [tuple(1 if i in chosen else 0 for i in range(n))
               for chosen in itertools.combinations(range(n), k)]
        return sorted(out)
    out = []

    def rec(prefix, left, boxes):
        if boxes == 1:
            out.append(prefix + (left,))
            return
        for first in range(left + 1):
            rec(prefix + (first,), left - first, boxes - 1)

    rec((), k, n)
    return out


def allocation_count(n: int, k: int, look_mode: str = "multi") -> int:
    return comb(n + k - 1, k) if look_mode == "multi" else comb(n, k)


def check_allocation(x: Sequence[int], n: int, k: int, look_mode: str = "multi") -> Allocation:
    x = tuple(int(v) for v in x)
    if len(x) != n:
        raise InvalidInstance(f"allocation {x} has length {len(x)}, expected {n}")
    if any(v < 0 for v in x) or sum(x) != k:
        raise InvalidInstance(f"allocation {x} must be non-negative and sum to {k}")
    if look_mode == "single" and any(v > 1 for v in x):
        raise InvalidInstance(f"single-look allocation {x} has a box with more than one ball")
    return x


def clairvoyant_cost(costs: Sequence, x: Sequence[int]):
    """Cost paid by a searcher who knows the allocation: sum of x_i * c_i."""
    if len(costs) != len(x):
        raise InvalidInstance("cost vector and allocation lengths differ")
    return sum((xi * ci for xi, ci in zip(x, costs)), 0)


def _prob_total_ok(total) -> bool:
    if isinstance(total, float):
        return abs(total - 1.0) <= 1e-9
    return total == 1


@dataclass(frozen=True)
class HiderMixed:
    """A finitely supported distribution over allocations.

    Zero-probability entries are dropped; iteration order is the
    lexicographic order of the allocations.
    """

    probs: Mapping
    look_mode: str = "multi"
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        items = sorted((tuple(x), p) for x, p in dict(self.probs).items() if p != 0)
        if not items:
            raise InvalidInstance("hider distribution has empty support")
        n, k = len(items[0][0]), sum(items[0][0])
        for x, p in items:
            check_allocation(x, n, k, self.look_mode)
            if p < 0:
                raise InvalidInstance(f"negative probability {p} on {x}")
        total = sum(p for _, p in items)
        if not _prob_total_ok(total):
            raise InvalidInstance(f"hider probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", dict(items))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    def items(self):
        return self.probs.items()

    def support(self) -> list[Allocation]:
        return list(self.probs)

    def __getitem__(self, x):
        return self.probs.get(tuple(x), 0)

    @classmethod
    def point(cls, x: Sequence[int], look_mode: str = "multi") -> "HiderMixed":
        return cls({tuple(x): Fraction(1)}, look_mode)

    def to_json(self) -> dict:
        return {
            "kind": "hider",
            "look_mode": self.look_mode,
            "allocations": [list(x) for x in self.probs],
            "probabilities": [format_number(p, exact=isinstance(p, Fraction))
                              for p in self.probs.values()],
        }

    @classmethod
    def from_json(cls, data: dict, exact: bool = True) -> "HiderMixed":
        probs = {tuple(x): to_number(p, exact)
                 for x, p in zip(data["allocations"], data["probabilities"])}
        return cls(probs, data.get("look_mode", "multi"))


@dataclass(frozen=True)
class InfoState:
    """What the searcher knows: balls found per box and which boxes are dead.

    A box is dead once it has been revealed empty; under single-look it is
    also dead after its one permitted open.
    """

    found: tuple
    dead: tuple

    @classmethod
    def initial(cls, n: int) -> "InfoState":
        return cls((0,) * n, (False,) * n)

    @property
    def n(self) -> int:
        return len(self.found)

    @property
    def total_found(self) -> int:
        return sum(self.found)

    def remaining(self, k: int) -> int:
        return k - sum(self.found)

    def live(self) -> list[int]:
        return [i for i, d in enumerate(self.dead) if not d]

    def after(self, box: int, ball: bool, single: bool = False) -> "InfoState":
        found = self.found
        if ball:
            found = found[:box] + (found[box] + 1,) + found[box + 1:]
        dead = self.dead
        if not ball or single:
            dead = dead[:box] + (True,) + dead[box + 1:]
        return InfoState(found, dead)

    def consistent(self, x: Sequence[int]) -> bool:
        """Whether allocation ``x`` could have produced this state."""
        for f, d, xi in zip(self.found, self.dead, x):
            if xi < f or (d and xi != f):
                return False
        return True


@dataclass(frozen=True)
class Instance:
    costs: tuple
    k: int
    variant: GameVariant = MULTI_COST

    def __post_init__(self):
        object.__setattr__(self, "costs", as_costs(self.costs))
        object.__setattr__(self, "variant", GameVariant.parse(self.variant))
        _check_instance(len(self.costs), self.k, self.variant.look_mode)

    @property
    def n(self) -> int:
        return len(self.costs)

    @property
    def exact(self) -> bool:
        return is_exact(self.costs)

    def allocations(self) -> list[Allocation]:
        return enumerate_allocations(self.n, self.k, self.variant.look_mode)

    def to_json(self) -> dict:
        return {"costs": [format_number(c, exact=self.exact) for c in self.costs],
                "balls": self.k, "variant": str(self.variant)}


def load_instance(text: str, exact: bool = True) -> Instance:
    """Parse the instance JSON schema.

    ``{"costs": [...], "balls": k, "variant": "multi-cost"}``; costs may be
    JSON numbers or decimal strings.
    """
    data = json.loads(text, parse_float=str)
    return instance_from_dict(data, exact)


def instance_from_dict(data: dict, exact: bool = True) -> Instance:
    try:
        costs = [to_number(c, exact) for c in data["costs"]]
        k = int(data["balls"])
    except (KeyError, TypeError, ValueError) as err:
        raise InvalidInstance(f"malformed instance: {err}") from None
    return Instance(tuple(costs), k, GameVariant.parse(data.get("variant", "multi-cost")))


def format_number(v, exact: bool = False, digits: int = 6) -> "str | float":
    """Rational string in exact mode, otherwise a float rounded to ``digits`` significant digits."""
    if exact and isinstance(v, (Fraction, int)):
        return str(Fraction(v))
    return float(f"{float(v):.{digits}g}")
