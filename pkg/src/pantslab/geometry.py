"""Exact geometry of the A_n weight and coweight spaces.

All angle-valued quantities are stored as rational multiples of pi: the
coordinate ``Fraction(2, 3)`` means ``2*pi/3``.  Points of the torus
``R^{n+1} / (R*(1,...,1) + 2*pi*Z^{n+1})`` are compared through a
canonical representative: subtract the first coordinate, then reduce every
coordinate modulo 2 (i.e. modulo 2*pi).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .combinatorics import CyclicPartition, full_mask, members, popcount, submasks


@dataclass(frozen=True)
class RatVector:
    """Coordinate vector of exact rationals.

    `homogeneous` vectors are defined modulo the all-ones vector; `angle`
    vectors carry an implicit factor of pi.
    """

    coords: tuple[Fraction, ...]
    homogeneous: bool = True
    angle: bool = False

    @classmethod
    def of(cls, values: Iterable, homogeneous: bool = True, angle: bool = False) -> "RatVector":
        return cls(tuple(Fraction(v) for v in values), homogeneous, angle)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __add__(self, other: "RatVector") -> "RatVector":
        return RatVector(tuple(a + b for a, b in zip(self.coords, other.coords)),
                         self.homogeneous, self.angle)

    def __sub__(self, other: "RatVector") -> "RatVector":
        return RatVector(tuple(a - b for a, b in zip(self.coords, other.coords)),
                         self.homogeneous, self.angle)

    def __neg__(self) -> "RatVector":
        return RatVector(tuple(-a for a in self.coords), self.homogeneous, self.angle)

    def scale(self, c) -> "RatVector":
        c = Fraction(c)
        return RatVector(tuple(c * a for a in self.coords), self.homogeneous, self.angle)

    def dot(self, other: "RatVector") -> Fraction:
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def norm2(self) -> Fraction:
        return self.dot(self)

    def normalized(self) -> tuple[Fraction, ...]:
        """Representative with first coordinate 0 (homogeneous normal form)."""
        x0 = self.coords[0]
        return tuple(a - x0 for a in self.coords)

    def torus_normal_form(self) -> tuple[Fraction, ...]:
        """Representative in [0, 2) (units of pi) with first coordinate 0."""
        return tuple(a % 2 for a in self.normalized())

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.coords)
        return f"pi*[{body}]" if self.angle else f"[{body}]"


def equal_homogeneous(x: RatVector, y: RatVector) -> bool:
    """Equality modulo the constant vector."""
    return x.normalized() == y.normalized()


def equal_in_torus(x: RatVector, y: RatVector) -> bool:
    """Equality modulo constant vectors and 2*pi times integer vectors."""
    return x.torus_normal_form() == y.torus_normal_form()


# -- two-partitions and weights ------------------------------------------------

@dataclass(frozen=True)
class TwoPartition:
    """Ordered pair ``(I_minus, I_plus)`` of complementary non-empty subsets of ``{0..n}``."""

    I_minus: int
    I_plus: int
    size: int

    def __post_init__(self):
        if not self.I_minus or not self.I_plus:
            raise ValueError("both sides of a two-partition must be non-empty")
        if self.I_minus & self.I_plus or self.I_minus | self.I_plus != full_mask(self.size):
            raise ValueError("sides must be complementary in {0..n}")

    @classmethod
    def from_minus(cls, I_minus: int, n: int) -> "TwoPartition":
        return cls(I_minus, full_mask(n + 1) & ~I_minus, n + 1)

    @property
    def n(self) -> int:
        return self.size - 1

    @property
    def r(self) -> int:
        return popcount(self.I_minus)

    @property
    def s(self) -> int:
        return popcount(self.I_plus)

    def swap(self) -> "TwoPartition":
        return TwoPartition(self.I_plus, self.I_minus, self.size)

    def __str__(self) -> str:
        return f"({','.join(map(str, members(self.I_minus)))} | {','.join(map(str, members(self.I_plus)))})"


def all_two_partitions(n: int) -> list[TwoPartition]:
    """Every ordered two-partition of ``{0..n}`` (there are 2^{n+1} - 2)."""
    full = full_mask(n + 1)
    return [TwoPartition.from_minus(m, n) for m in submasks(full) if m != full]


def fundamental_weight(p: TwoPartition) -> RatVector:
    """w = (r/(n+1)) sum_{I+} e_j - (s/(n+1)) sum_{I-} e_i."""
    N = p.size
    coords = []
    for i in range(N):
        if p.I_plus >> i & 1:
            coords.append(Fraction(p.r, N))
        else:
            coords.append(Fraction(-p.s, N))
    return RatVector(tuple(coords), homogeneous=False)


@dataclass(frozen=True)
class AffineFunctional:
    """Linear form ``coeffs . x`` compared against ``bound`` (units of pi).

    relation is one of ``"<="``, ``"=="`` or ``"==mod2"`` (equality modulo 2*pi).
    """

    coeffs: tuple[Fraction, ...]
    bound: Fraction
    relation: str = "<="
    name: str = ""

    def __post_init__(self):
        if sum(self.coeffs) != 0:
            raise ValueError("coefficients must sum to 0 to be defined on homogeneous coordinates")
        if self.relation not in ("<=", "==", "==mod2"):
            raise ValueError(f"unknown relation {self.relation!r}")

    def evaluate(self, x: RatVector) -> Fraction:
        return sum((a * b for a, b in zip(self.coeffs, x.coords)), Fraction(0))

    def residual(self, x: RatVector) -> Fraction:
        """``value - bound``; reduced into (-1, 1] for modular equalities."""
        d = self.evaluate(x) - self.bound
        if self.relation == "==mod2":
            d %= 2
            if d > 1:
                d -= 2
        return d

    def holds(self, x: RatVector) -> bool:
        d = self.residual(x)
        return d <= 0 if self.relation == "<=" else d == 0

    def is_tight(self, x: RatVector) -> bool:
        return self.residual(x) == 0


def perm_facet(p: TwoPartition) -> AffineFunctional:
    w = fundamental_weight(p)
    return AffineFunctional(w.coords, Fraction(p.r * p.s, p.size), "<=", f"facet{p}")


def perm_facets(n: int) -> list[AffineFunctional]:
    return [perm_facet(p) for p in all_two_partitions(n)]


def perm_vertex(order: Sequence[int]) -> RatVector:
    """The element at position t of `order` gets (2t+1)/(n+1) (units of pi)."""
    N = len(order)
    if sorted(order) != list(range(N)):
        raise ValueError("order must be a permutation of {0..n}")
    coords = [Fraction(0)] * N
    for t, e in enumerate(order):
        coords[e] = Fraction(2 * t + 1, N)
    return RatVector(tuple(coords), homogeneous=True, angle=True)


def zonotope_vertex(p: TwoPartition) -> RatVector:
    """pi on I_plus, 0 on I_minus."""
    return RatVector(tuple(Fraction(p.I_plus >> i & 1) for i in range(p.size)),
                     homogeneous=True, angle=True)


def dominant_weights(order: Sequence[int]) -> list[TwoPartition]:
    """The n two-partitions whose negative side is a proper prefix of `order`."""
    n = len(order) - 1
    out = []
    m = 0
    for e in order[:-1]:
        m |= 1 << e
        out.append(TwoPartition.from_minus(m, n))
    return out


def pairing_report(n: int) -> dict:
    """Check <rho(order), w> = rs/(n+1) (units of pi) for all orders and their dominant weights."""
    checked = 0
    for order in permutations(range(n + 1)):
        rho = perm_vertex(order)
        for p in dominant_weights(order):
            value = rho.dot(fundamental_weight(p))
            expected = Fraction(p.r * p.s, n + 1)
            if value != expected:
                return {"ok": False, "checked": checked,
                        "witness": {"order": list(order), "weight": str(p),
                                    "value": str(value), "expected": str(expected)}}
            checked += 1
    return {"ok": True, "checked": checked, "witness": None}


def check_zonotope_in_perm(n: int) -> dict:
    """Evaluate every zonotope vertex against every facet inequality exactly.

    Passes when every value is within its bound and each vertex is tight on
    exactly one facet, namely the facet of its own two-partition.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    facets = all_two_partitions(n)
    functionals = [perm_facet(p) for p in facets]
    evaluations = 0
    for p in facets:
        x = zonotope_vertex(p)
        tight = []
        for q, f in zip(facets, functionals):
            evaluations += 1
            d = f.residual(x)
            if d > 0:
                return {"ok": False, "n": n, "evaluations": evaluations,
                        "witness": {"vertex": str(p), "facet": str(q),
                                    "value": str(f.evaluate(x)), "bound": str(f.bound)}}
            if d == 0:
                tight.append(q)
        if tight != [p]:
            return {"ok": False, "n": n, "evaluations": evaluations,
                    "witness": {"vertex": str(p), "tight": [str(q) for q in tight]}}
    return {"ok": True, "n": n, "vertices": len(facets), "facets": len(facets),
            "evaluations": evaluations, "witness": None}


def perm_vertex_tight_facets(order: Sequence[int]) -> list[TwoPartition]:
    x = perm_vertex(order)
    return [p for p in all_two_partitions(len(order) - 1) if perm_facet(p).is_tight(x)]


# -- the skeleton Sigma ----------------------------------------------------------

def _gammas(sigma: CyclicPartition) -> list[Fraction]:
    out = []
    acc = 0
    for p in sigma.parts:
        k = popcount(p)
        out.append(Fraction(acc) + Fraction(k, 2))
        acc += k
    return out


def sigma_barycenter(sigma: CyclicPartition) -> RatVector:
    """(2/(n+1)) * gamma_s on the elements of part s, gamma_s = sum_{j<s}|I_j| + |I_s|/2."""
    N = sigma.size
    coords = [Fraction(0)] * N
    for p, g in zip(sigma.parts, _gammas(sigma)):
        for e in members(p):
            coords[e] = Fraction(2, N) * g
    return RatVector(tuple(coords), homogeneous=True, angle=True)


def _average(part: int, N: int, sign: int = 1) -> list[Fraction]:
    k = popcount(part)
    return [Fraction(sign, k) if part >> i & 1 else Fraction(0) for i in range(N)]


def sigma_face_equations(sigma: CyclicPartition) -> list[AffineFunctional]:
    """theta_{I_{s+1}} - theta_{I_s} = (|I_s| + |I_{s+1}|)/(n+1), modulo 2, cyclically."""
    k = len(sigma.parts)
    if k < 2:
        raise ValueError("face equations need at least two parts")
    N = sigma.size
    out = []
    for s in range(k):
        a, b = sigma.parts[s], sigma.parts[(s + 1) % k]
        coeffs = tuple(x + y for x, y in zip(_average(b, N), _average(a, N, -1)))
        rhs = Fraction(popcount(a) + popcount(b), N)
        out.append(AffineFunctional(coeffs, rhs, "==mod2", f"eq{s}"))
    return out


def sigma_face_inequalities(sigma: CyclicPartition) -> list[AffineFunctional]:
    """|theta_{I'} - theta_{I_s}| <= (|I_s| - |I'|)/(n+1) for proper non-empty I' of each part."""
    if len(sigma.parts) < 2:
        raise ValueError("face inequalities need at least two parts")
    N = sigma.size
    out = []
    for s, part in enumerate(sigma.parts):
        for sub in submasks(part):
            if sub == part:
                continue
            diff = tuple(x + y for x, y in zip(_average(sub, N), _average(part, N, -1)))
            bound = Fraction(popcount(part) - popcount(sub), N)
            out.append(AffineFunctional(diff, bound, "<=", f"ineq{s}+{sub}"))
            out.append(AffineFunctional(tuple(-c for c in diff), bound, "<=", f"ineq{s}-{sub}"))
    return out


def distinct_in_torus(points: Iterable[RatVector]) -> int:
    return len({p.torus_normal_form() for p in points})


def distinct_homogeneous(points: Iterable[RatVector]) -> int:
    return len({p.normalized() for p in points})


# -- affine chart for n = 3 export -------------------------------------------------

def affine_chart(x: RatVector) -> tuple[Fraction, ...]:
    """Coordinates y_i = x_i - x_0, i = 1..n."""
    return x.normalized()[1:]
