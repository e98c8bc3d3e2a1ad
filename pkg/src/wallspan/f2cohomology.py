"""Graded polynomial quotient rings over F_2 and the line-bundle splitting obstruction.

Three cohomology rings are modelled exactly, as quotient rings presented by
generators and rewrite relations:

* Dold manifold P(m, n):   F_2[c, d] / (c^(m+1), d^(n+1)),   |c| = 1, |d| = 2
* Wall manifold Q(m, n):   F_2[x, c, d] / (x^2, c^(m+1) - c^m x, d^(n+1))
* complex projective CP^n: F_2[a] / (a^(n+1)),               |a| = 2

Elements are sets of normal-form monomials (characteristic 2, so a set is a
polynomial).  Rewriting is confluent; this is verified exhaustively on all
monomials up to the top degree when a presentation is built.  Everything is
truncated above the manifold dimension, where the cohomology of a closed
manifold vanishes.

On top of the ring arithmetic sits the mod-2 obstruction to splitting k
line bundles off the tangent bundle: if k independent line fields exist,
then for some degree-1 classes x_1, ..., x_k the virtual total class
w(Q) / prod(1 + x_i) has no component in degrees above dim - k.  Ruling
out every choice of the x_i bounds the projective span by k - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .invariants import WallParams

Mono = tuple[int, ...]

_IN_PROGRESS = "in progress"


class RingPresentation:
    """Graded quotient ring over F_2 given by generators and rewrite rules.

    `generators` is an ordered sequence of (name, degree) pairs; a monomial
    is the tuple of exponents in that order.  `relations` is an ordered
    sequence of (lead monomial, replacement polynomial) pairs: any monomial
    divisible by a lead is rewritten by substituting the replacement.  The
    first applicable relation is used, and construction verifies that the
    choice never matters (unique normal forms up to `top_degree`).
    """

    def __init__(
        self,
        generators: Iterable[tuple[str, int]],
        relations: Iterable[tuple[Mono, Iterable[Mono]]],
        top_degree: int,
        *,
        kind: str = "custom",
        m: int | None = None,
        n: int | None = None,
    ) -> None:
        self.generators = tuple((str(name), int(deg)) for name, deg in generators)
        self.relations = tuple((tuple(lead), frozenset(map(tuple, rhs))) for lead, rhs in relations)
        self.top_degree = int(top_degree)
        self.kind = kind
        self.m = m
        self.n = n

        names = [name for name, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names: {names}")
        if any(deg < 1 for _, deg in self.generators):
            raise ValueError("generator degrees must be >= 1")
        if self.top_degree < 0:
            raise ValueError("top degree must be >= 0")
        self._degrees = tuple(deg for _, deg in self.generators)
        self._index = {name: i for i, (name, _) in enumerate(self.generators)}
        width = len(self.generators)
        for lead, rhs in self.relations:
            if len(lead) != width or any(len(r) != width for r in rhs):
                raise ValueError("relation monomials must match the generator count")
            lead_deg = self.degree(lead)
            if any(self.degree(r) != lead_deg for r in rhs):
                raise ValueError("rewrite rules must be degree-homogeneous")

        self._nf: dict[Mono, frozenset[Mono] | str] = {}
        self._basis: dict[int, tuple[Mono, ...]] = {}
        self._check_confluence()

    # -- monomial arithmetic -------------------------------------------------

    def degree(self, mono: Mono) -> int:
        return sum(e * d for e, d in zip(mono, self._degrees))

    def normal_form_monomial(self, mono: Mono) -> frozenset[Mono]:
        """Normal form of a single free monomial, as a set of basis monomials."""
        cached = self._nf.get(mono)
        if cached is _IN_PROGRESS:
            raise ValueError(f"rewriting does not terminate at {self.render_monomial(mono)}")
        if cached is not None:
            return cached  # type: ignore[return-value]
        self._nf[mono] = _IN_PROGRESS
        if self.degree(mono) > self.top_degree:
            result: frozenset[Mono] = frozenset()
        else:
            for lead, rhs in self.relations:
                if all(e >= l for e, l in zip(mono, lead)):
                    quotient = tuple(e - l for e, l in zip(mono, lead))
                    result = self._substitute(quotient, rhs)
                    break
            else:
                result = frozenset((mono,))
        self._nf[mono] = result
        return result

    def _substitute(self, quotient: Mono, rhs: frozenset[Mono]) -> frozenset[Mono]:
        acc: set[Mono] = set()
        for r in rhs:
            acc ^= self.normal_form_monomial(tuple(q + e for q, e in zip(quotient, r)))
        return frozenset(acc)

    def reduce(self, monos: Iterable[Mono]) -> frozenset[Mono]:
        """XOR of the normal forms of the given monomials (coefficients mod 2)."""
        acc: set[Mono] = set()
        for mono in monos:
            acc ^= self.normal_form_monomial(tuple(mono))
        return frozenset(acc)

    def monomials_up_to(self, limit: int) -> Iterator[Mono]:
        """All free monomials of degree <= limit, in lexicographic order."""

        def rec(i: int, budget: int, prefix: tuple[int, ...]) -> Iterator[Mono]:
            if i == len(self._degrees):
                yield prefix
                return
            step = self._degrees[i]
            for e in range(budget // step + 1):
                yield from rec(i + 1, budget - e * step, prefix + (e,))

        yield from rec(0, limit, ())

    def _check_confluence(self) -> None:
        # Every single-step fork must rejoin: for each monomial and each
        # applicable rule, rewriting by that rule first must reach the same
        # normal form as the default (first-rule) strategy.
        for mono in self.monomials_up_to(self.top_degree):
            default = self.normal_form_monomial(mono)
            for lead, rhs in self.relations:
                if all(e >= l for e, l in zip(mono, lead)):
                    quotient = tuple(e - l for e, l in zip(mono, lead))
                    if self._substitute(quotient, rhs) != default:
                        raise ValueError(
                            f"rewriting is not confluent at {self.render_monomial(mono)}"
                        )

    def basis(self, q: int) -> tuple[Mono, ...]:
        """Normal-form monomials of degree exactly q, lexicographically sorted."""
        cached = self._basis.get(q)
        if cached is None:
            cached = tuple(
                mono
                for mono in self.monomials_up_to(min(q, self.top_degree))
                if self.degree(mono) == q and self.normal_form_monomial(mono) == {mono}
            )
            self._basis[q] = cached
        return cached

    # -- element constructors ------------------------------------------------

    def zero(self) -> GradedF2Poly:
        return GradedF2Poly(self, frozenset(), _normalized=True)

    def one(self) -> GradedF2Poly:
        return self.element([(0,) * len(self.generators)])

    def gen(self, name: str) -> GradedF2Poly:
        if name not in self._index:
            raise ValueError(f"unknown generator {name!r}; have {list(self._index)}")
        mono = tuple(1 if i == self._index[name] else 0 for i in range(len(self.generators)))
        return self.element([mono])

    def element(self, monos: Iterable[Mono]) -> GradedF2Poly:
        return GradedF2Poly(self, monos)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return (
            self.generators == other.generators
            and self.relations == other.relations
            and self.top_degree == other.top_degree
        )

    def __hash__(self) -> int:
        return hash((self.generators, self.relations, self.top_degree))

    def render_monomial(self, mono: Mono) -> str:
        parts = []
        for (name, _), e in zip(self.generators, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        gens = ", ".join(f"{name}:{deg}" for name, deg in self.generators)
        return f"RingPresentation({self.kind}; {gens}; top={self.top_degree})"


class GradedF2Poly:
    """Element of a `RingPresentation`: a set of normal-form monomials."""

    __slots__ = ("pres", "monos")

    def __init__(self, pres: RingPresentation, monos: Iterable[Mono], *, _normalized: bool = False) -> None:
        self.pres = pres
        self.monos = frozenset(monos) if _normalized else pres.reduce(monos)

    def _check_same_ring(self, other: GradedF2Poly) -> None:
        if self.pres != other.pres:
            raise ValueError(f"mixed presentations: {self.pres!r} vs {other.pres!r}")

    def __add__(self, other: GradedF2Poly) -> GradedF2Poly:
        self._check_same_ring(other)
        return GradedF2Poly(self.pres, self.monos ^ other.monos, _normalized=True)

    def __mul__(self, other: GradedF2Poly) -> GradedF2Poly:
        self._check_same_ring(other)
        pres = self.pres
        acc: set[Mono] = set()
        for a in self.monos:
            for b in other.monos:
                acc ^= pres.normal_form_monomial(tuple(x + y for x, y in zip(a, b)))
        return GradedF2Poly(pres, acc, _normalized=True)

    def __pow__(self, e: int) -> GradedF2Poly:
        if e < 0:
            raise ValueError("negative powers are not defined; see unit_inverse")
        result = self.pres.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedF2Poly):
            return NotImplemented
        return self.pres == other.pres and self.monos == other.monos

    def __hash__(self) -> int:
        return hash((self.pres, self.monos))

    def is_zero(self) -> bool:
        return not self.monos

    def component(self, q: int) -> GradedF2Poly:
        """The degree-q graded piece."""
        return GradedF2Poly(
            self.pres,
            frozenset(mo for mo in self.monos if self.pres.degree(mo) == q),
            _normalized=True,
        )

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({self.pres.degree(mo) for mo in self.monos}))

    def max_degree(self) -> int:
        """Top degree with a nonzero component; -1 for the zero polynomial."""
        return max((self.pres.degree(mo) for mo in self.monos), default=-1)

    def render(self) -> str:
        if not self.monos:
            return "0"
        ordered = sorted(self.monos, key=lambda mo: (self.pres.degree(mo), mo))
        return " + ".join(self.pres.render_monomial(mo) for mo in ordered)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GradedF2Poly({self.render()})"


# -- the three presentations --------------------------------------------------


@lru_cache(maxsize=None)
def dold_presentation(m: int, n: int) -> RingPresentation:
    """H^*(P(m, n); F_2) = F_2[c, d] / (c^(m+1), d^(n+1))."""
    if m < 0 or n < 0:
        raise ValueError(f"need m, n >= 0, got ({m}, {n})")
    relations = [
        ((m + 1, 0), []),
        ((0, n + 1), []),
    ]
    return RingPresentation(
        [("c", 1), ("d", 2)], relations, m + 2 * n, kind="dold", m=m, n=n
    )


@lru_cache(maxsize=None)
def wall_presentation(m: int, n: int) -> RingPresentation:
    """H^*(Q(m, n); F_2) = F_2[x, c, d] / (x^2, c^(m+1) - c^m x, d^(n+1)).

    m = 0 is rejected: the relation c^(m+1) = c^m x would collapse c onto x
    and the normal-form basis below assumes m >= 1.  The c-rule is listed
    before the x-rule so that c^(m+1) rewrites to c^m x before squares of x
    are killed; confluence of this order is checked at construction.
    """
    if m < 1:
        raise ValueError(f"the Wall ring needs m >= 1, got m = {m}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    relations = [
        ((0, m + 1, 0), [(1, m, 0)]),
        ((2, 0, 0), []),
        ((0, 0, n + 1), []),
    ]
    return RingPresentation(
        [("x", 1), ("c", 1), ("d", 2)], relations, m + 2 * n + 1, kind="wall", m=m, n=n
    )


@lru_cache(maxsize=None)
def cpn_presentation(n: int) -> RingPresentation:
    """H^*(CP^n; F_2) = F_2[a] / (a^(n+1)) with |a| = 2."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    return RingPresentation([("a", 2)], [((n + 1,), [])], 2 * n, kind="cpn", n=n)


def make_presentation(kind: str, m: int | None = None, n: int | None = None) -> RingPresentation:
    """Dispatch on kind in {"dold", "wall", "cpn"}; cpn ignores m."""
    key = kind.lower()
    if key == "dold":
        if m is None or n is None:
            raise ValueError("dold presentation needs m and n")
        return dold_presentation(m, n)
    if key == "wall":
        if m is None or n is None:
            raise ValueError("wall presentation needs m and n")
        return wall_presentation(m, n)
    if key == "cpn":
        if n is None:
            raise ValueError("cpn presentation needs n")
        return cpn_presentation(n)
    raise ValueError(f"unknown presentation kind {kind!r}")


# -- characteristic classes ----------------------------------------------------


def total_sw_wall(p: WallParams) -> GradedF2Poly:
    """Total Stiefel-Whitney class of Q(m, n).

    w(Q(m, n)) = (1 + c + x) * (1 + c)^(m-1) * (1 + c + d)^(n+1), reduced to
    normal form in the Wall ring.
    """
    pres = wall_presentation(p.m, p.n)
    one = pres.one()
    x, c, d = pres.gen("x"), pres.gen("c"), pres.gen("d")
    return (one + c + x) * (one + c) ** (p.m - 1) * (one + c + d) ** (p.n + 1)


def total_sw_cpn(n: int) -> GradedF2Poly:
    """Total Stiefel-Whitney class of CP^n: (1 + a)^(n+1) mod 2."""
    pres = cpn_presentation(n)
    return (pres.one() + pres.gen("a")) ** (n + 1)


def fiber_restriction(p: GradedF2Poly) -> GradedF2Poly:
    """Restriction along the fibre inclusion CP^n -> Q(m, n): x, c -> 0, d -> a."""
    if p.pres.kind != "wall":
        raise ValueError(f"fiber_restriction expects a Wall-ring element, got {p.pres!r}")
    assert p.pres.n is not None
    target = cpn_presentation(p.pres.n)
    return target.element([(j,) for (e, i, j) in p.monos if e == 0 and i == 0])


def unit_inverse(p: GradedF2Poly) -> GradedF2Poly:
    """Multiplicative inverse of a unit (degree-0 component equal to 1).

    Geometric series in the positive-degree tail, exact because the tail is
    nilpotent above the top degree.
    """
    one = p.pres.one()
    if p.component(0) != one:
        raise ValueError("not a unit: the degree-0 component must be 1")
    tail = p + one
    inverse = one
    power = one
    for _ in range(p.pres.top_degree):
        power = power * tail
        if power.is_zero():
            break
        inverse = inverse + power
    return inverse


# -- the virtual Stiefel-Whitney obstruction ------------------------------------

H1_LABELS = ("0", "x", "c", "x+c")


@dataclass(frozen=True)
class MultisetWitness:
    """Outcome for one multiset {x_1, ..., x_k} of degree-1 classes.

    `counts` gives the multiplicities of (0, x, c, x+c).  `failure_degree`
    is the smallest degree above dim - k where the virtual class
    w / prod(1 + x_i) is nonzero, or None if every such component vanishes
    (the multiset satisfies the necessary condition).
    """

    counts: tuple[int, int, int, int]
    failure_degree: int | None

    def describe(self) -> str:
        elements: list[str] = []
        for label, count in zip(H1_LABELS, self.counts):
            elements.extend([label] * count)
        return "{" + ", ".join(elements) + "}"


@dataclass(frozen=True)
class RuleOutResult:
    """Result of testing whether k independent line fields are impossible."""

    k: int
    ruled_out: bool
    max_allowed_degree: int
    witnesses: tuple[MultisetWitness, ...]


class VirtualSwSearch:
    """Brute-force scan of the splitting obstruction over all degree-1 multisets.

    The virtual class for a multiset depends only on the multiplicities of
    the three nonzero degree-1 elements, so the scan walks the lattice of
    multiplicity triples and reuses products incrementally across k.
    """

    def __init__(self, p: WallParams) -> None:
        self.params = p
        self.pres = wall_presentation(p.m, p.n)
        self.w = total_sw_wall(p)
        one = self.pres.one()
        x, c = self.pres.gen("x"), self.pres.gen("c")
        self._inverses = (
            unit_inverse(one + x),
            unit_inverse(one + c),
            unit_inverse(one + x + c),
        )
        self._virtual: dict[tuple[int, int, int], GradedF2Poly] = {(0, 0, 0): self.w}
        self._max_degree: dict[tuple[int, int, int], int] = {}

    def virtual_class(self, triple: tuple[int, int, int]) -> GradedF2Poly:
        """w / ((1+x)^k1 (1+c)^k2 (1+x+c)^k3) for multiplicities (k1, k2, k3)."""
        value = self._virtual.get(triple)
        if value is None:
            k1, k2, k3 = triple
            if k3:
                value = self.virtual_class((k1, k2, k3 - 1)) * self._inverses[2]
            elif k2:
                value = self.virtual_class((k1, k2 - 1, 0)) * self._inverses[1]
            else:
                value = self.virtual_class((k1 - 1, 0, 0)) * self._inverses[0]
            self._virtual[triple] = value
        return value

    def max_degree(self, triple: tuple[int, int, int]) -> int:
        value = self._max_degree.get(triple)
        if value is None:
            value = self.virtual_class(triple).max_degree()
            self._max_degree[triple] = value
        return value

    def rule_out(self, k: int) -> RuleOutResult:
        dim = self.pres.top_degree
        if not 1 <= k <= dim:
            raise ValueError(f"need 1 <= k <= dim = {dim}, got k = {k}")
        allowed = dim - k
        witnesses: list[MultisetWitness] = []
        ruled_out = True
        for k1 in range(k + 1):
            for k2 in range(k - k1 + 1):
                for k3 in range(k - k1 - k2 + 1):
                    counts = (k - k1 - k2 - k3, k1, k2, k3)
                    if self.max_degree((k1, k2, k3)) <= allowed:
                        witnesses.append(MultisetWitness(counts, None))
                        ruled_out = False
                        break
                    u = self.virtual_class((k1, k2, k3))
                    failure = min(q for q in u.degrees() if q > allowed)
                    witnesses.append(MultisetWitness(counts, failure))
                if not ruled_out:
                    break
            if not ruled_out:
                break
        return RuleOutResult(k, ruled_out, allowed, tuple(witnesses))


def virtual_sw_rules_out(p: WallParams, k: int) -> RuleOutResult:
    """Test whether the mod-2 obstruction forbids k independent line fields.

    Enumerates every multiset of k degree-1 classes (the four-element group
    {0, x, c, x+c}); `ruled_out` is True iff the virtual class of every
    multiset has a nonzero component in some degree above dim - k.
    """
    return VirtualSwSearch(p).rule_out(k)


def sw_upper_bound(p: WallParams) -> int:
    """Best upper bound for pspan(Q(m, n)) the mod-2 obstruction can certify.

    The smallest ruled-out k, minus one; dim Q(m, n) if nothing is ruled out.
    """
    search = VirtualSwSearch(p)
    for k in range(1, p.dim + 1):
        if search.rule_out(k).ruled_out:
            return k - 1
    return p.dim
