"""A Frobenius monad on the one-object category of relations ℕ -> ℕ.

Writing n = 2m + b with b ∈ {0, 1}, the functor is R ↦ R ⊗ id_2, and μ, η
come from the monoid on {0, 1} whose only products are 0·0 = 0 and
1·1 = 1 and whose unit is {0, 1}:

    T(R) = {(2m, 2n), (2m+1, 2n+1) | (m, n) ∈ R}
    η    = {(n, 2n), (n, 2n+1)}
    μ    = {(4n, 2n), (4n+3, 2n+1)}

Every relation here is given by exact forward/backward generators with
finite images, so an equation can be evaluated on a finite window
{0, ..., 4N+3} and trusted on every input whose intermediate values all
stay inside that window.  Only those closed inputs are compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from dagcat.rel import FiniteSet, Relation, rel_compose

Gen = Callable[[int], frozenset]

MIN_WINDOW = 8


@dataclass(frozen=True)
class NatRelation:
    name: str
    forward: Gen
    backward: Gen

    def dagger(self) -> NatRelation:
        return NatRelation(f"{self.name}†", self.backward, self.forward)

    def materialize(self, size: int) -> Relation:
        """Restriction to {0..size-1} × {0..size-1}."""
        S = FiniteSet.range(size)
        rows = []
        for x in range(size):
            row = 0
            for y in self.forward(x):
                if y < size:
                    row |= 1 << y
            rows.append(row)
        return Relation(S, S, tuple(rows))


def nat_identity() -> NatRelation:
    return NatRelation("id", lambda x: frozenset((x,)), lambda y: frozenset((y,)))


def nat_T(R: NatRelation) -> NatRelation:
    return NatRelation(
        f"T({R.name})",
        lambda x: frozenset(2 * n + x % 2 for n in R.forward(x // 2)),
        lambda y: frozenset(2 * m + y % 2 for m in R.backward(y // 2)),
    )


def _mu_forward(x: int) -> frozenset:
    return frozenset((x // 2,)) if x % 4 in (0, 3) else frozenset()


def _mu_backward(y: int) -> frozenset:
    return frozenset((2 * y + y % 2,))


NAT_MU = NatRelation("μ", _mu_forward, _mu_backward)
NAT_ETA = NatRelation(
    "η", lambda x: frozenset((2 * x, 2 * x + 1)), lambda y: frozenset((y // 2,))
)
# taken literally, {(2n, 2n+1)} is not total, so μ∘η = id cannot hold for it
NAT_ETA_LITERAL = NatRelation(
    "η_literal",
    lambda x: frozenset((x + 1,)) if x % 2 == 0 else frozenset(),
    lambda y: frozenset((y - 1,)) if y % 2 == 1 else frozenset(),
)


def sample_relations() -> list[NatRelation]:
    """Test relations for naturality and dagger-functoriality."""
    return [
        NatRelation("succ", lambda x: frozenset((x + 1,)), lambda y: frozenset((y - 1,)) if y else frozenset()),
        NatRelation("double", lambda x: frozenset((2 * x,)), lambda y: frozenset((y // 2,)) if y % 2 == 0 else frozenset()),
        NatRelation("half", lambda x: frozenset((x // 2,)), lambda y: frozenset((2 * y, 2 * y + 1))),
        NatRelation("le1", lambda x: frozenset((x, x + 1)), lambda y: frozenset(v for v in (y - 1, y) if v >= 0)),
    ]


def _closed_image(chain: Iterable[NatRelation], x: int, size: int) -> frozenset | None:
    """Exact image of x along the chain, or None if it ever leaves the window."""
    frontier = frozenset((x,))
    for R in chain:
        nxt = set()
        for y in frontier:
            nxt |= R.forward(y)
        if any(v >= size for v in nxt):
            return None
        frontier = frozenset(nxt)
    return frontier


@dataclass
class LawCoverage:
    law: str
    checked: int = 0
    violations: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.violations


def check_chains(law: str, lhs: list[NatRelation], rhs: list[NatRelation], size: int) -> LawCoverage:
    """Compare two composites (each in diagrammatic order) on all closed inputs."""
    S = FiniteSet.range(size)

    def windowed(chain):
        rel = Relation.identity(S)
        for R in chain:
            rel = rel_compose(R.materialize(size), rel)
        return rel

    L, Rr = windowed(lhs), windowed(rhs)
    cov = LawCoverage(law)
    for x in range(size):
        if _closed_image(lhs, x, size) is None or _closed_image(rhs, x, size) is None:
            continue
        cov.checked += 1
        if L.rows[x] != Rr.rows[x]:
            cov.violations.append(x)
    return cov


@dataclass
class NatMonadReport:
    window: int
    size: int
    laws: dict[str, LawCoverage]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.laws.values())

    @property
    def violations(self) -> int:
        return sum(len(c.violations) for c in self.laws.values())


def nat_monad_demo(N: int, eta: NatRelation = NAT_ETA) -> NatMonadReport:
    if N < MIN_WINDOW:
        raise ValueError(f"window N={N} is too small to close any composite; need N >= {MIN_WINDOW}")
    size = 4 * N + 4
    mu, T = NAT_MU, nat_T
    idn = nat_identity()
    laws = {}
    laws["associative"] = check_chains("μ∘T(μ) = μ∘μ", [T(mu), mu], [mu, mu], size)
    laws["unit_left"] = check_chains("μ∘η = id", [eta, mu], [idn], size)
    laws["unit_right"] = check_chains("μ∘T(η) = id", [T(eta), mu], [idn], size)
    laws["frobenius_monad"] = check_chains(
        "T(μ)∘μ† = μ∘T(μ†)", [mu.dagger(), T(mu)], [T(mu.dagger()), mu], size
    )
    for R in sample_relations():
        laws[f"eta_natural[{R.name}]"] = check_chains("T(R)∘η = η∘R", [eta, T(R)], [R, eta], size)
        laws[f"mu_natural[{R.name}]"] = check_chains("T(R)∘μ = μ∘T²(R)", [mu, T(R)], [T(T(R)), mu], size)
        laws[f"dagger_functor[{R.name}]"] = check_chains(
            "T(R†) = T(R)†", [T(R.dagger())], [T(R).dagger()], size
        )
    return NatMonadReport(N, size, laws)
