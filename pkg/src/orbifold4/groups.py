"""Finite subgroups of U(2) with exact cyclotomic entries.

Closure from generators, the complex-reflection / free-acting trichotomy of
elements, the reflection-generated normal subgroup, the quotient group, and
the cyclic action data (m, q) induced on the invariant coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CyclotomicScalar, root_of_unity_log
from .unitary import UMat2


class NotFiniteWithinBound(ValueError):
    pass


class Unsupported(Exception):
    """A computation the artifact deliberately refuses to guess."""

    def __init__(self, reason: str, **info):
        self.reason = reason
        self.info = info
        super().__init__(reason)


@dataclass(frozen=True)
class GroupElement:
    matrix: UMat2
    order: int
    canonical_key: tuple

    def __hash__(self):
        return hash(self.canonical_key)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.canonical_key == other.canonical_key


@dataclass(frozen=True)
class ElementClass:
    kind: str  # "identity" | "reflection" | "free"
    fixed_line: tuple | None = None  # normalized projective pair for reflections


@dataclass(frozen=True)
class CyclicActionData:
    m: int
    q: int


@dataclass
class CosetGroup:
    """An abstract finite group given by a multiplication table.

    Element 0 is the identity; table[i][j] is the product of elements i, j.
    """

    table: list[list[int]]
    labels: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.table)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i))

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def inverse(self, i: int) -> int:
        return next(j for j in range(self.order) if self.table[i][j] == 0)

    def subgroup_generated(self, gens: list[int]) -> set[int]:
        got = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in got:
                    got.add(y)
                    frontier.append(y)
        return got

    def quotient_by(self, subgroup: set[int]) -> "CosetGroup":
        # assumes subgroup normal (always used with abelian groups here)
        cosets: list[frozenset[int]] = []
        index: dict[int, int] = {}
        for i in range(self.order):
            if i in index:
                continue
            cs = frozenset(self.table[i][h] for h in subgroup)
            k = len(cosets)
            cosets.append(cs)
            for x in cs:
                index[x] = k
        # identity coset first
        id_pos = index[0]
        if id_pos != 0:
            order_map = {id_pos: 0, 0: id_pos}
            remap = [order_map.get(i, i) for i in range(len(cosets))]
        else:
            remap = list(range(len(cosets)))
        reps = [None] * len(cosets)
        for i in range(self.order):
            reps[remap[index[i]]] = reps[remap[index[i]]] if reps[remap[index[i]]] is not None else i
        k = len(cosets)
        table = [[0] * k for _ in range(k)]
        for a in range(k):
            for b in range(k):
                table[a][b] = remap[index[self.table[reps[a]][reps[b]]]]
        return CosetGroup(table)

    def abelian_invariants(self) -> list[int]:
        """Invariant factors d1 | d2 | ... (each > 1) of an abelian group."""
        if not self.is_abelian():
            raise ValueError("group is not abelian")
        if self.order == 1:
            return []
        orders = [self.element_order(i) for i in range(self.order)]
        e = max(orders)  # in a finite abelian group some element realizes the exponent
        g = orders.index(e)
        sub = self.subgroup_generated([g])
        rest = self.quotient_by(sub).abelian_invariants()
        return rest + [e]


class UnitaryGroup:
    """A finite subgroup of U(2), closed under product and inverse."""

    def __init__(self, conductor: int, elements: dict, generators: list[GroupElement]):
        self.conductor = conductor
        self.elements: dict[tuple, GroupElement] = elements
        self.generators = generators
        self._classes: dict[tuple, ElementClass] = {}
        self.reflections = [g for g in self if classify_element(g).kind == "reflection"]
        self.gamma_star, self.gamma_star_normal = _reflection_subgroup(self)
        self.gamma_prime = _quotient_table(self, self.gamma_star)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements.values())

    def __contains__(self, g) -> bool:
        if isinstance(g, GroupElement):
            return g.canonical_key in self.elements
        if isinstance(g, UMat2):
            # an entry may be declared over a field that does not embed in
            # the group's; compare via the minimal subfield of each entry
            need = 1
            entries = []
            for i in range(2):
                row = []
                for j in range(2):
                    d, coeffs = g.entries[i][j]._minimal()
                    need = need * d // math.gcd(need, d)
                    row.append(CyclotomicScalar(d, coeffs))
                entries.append(row)
            if self.conductor % need != 0:
                return False
            lifted = UMat2(entries, check=False)
            return lifted.canonical_key(self.conductor) in self.elements
        return False

    def identity(self) -> GroupElement:
        return self.elements[UMat2.identity(self.conductor).canonical_key(self.conductor)]

    def element_list(self) -> list[GroupElement]:
        return sorted(self.elements.values(), key=lambda g: (g.order, g.canonical_key))


def _element_order(m: UMat2, conductor: int, bound: int) -> int:
    ident = UMat2.identity(conductor)
    x = m
    for k in range(1, bound + 1):
        if x == ident:
            return k
        x = x @ m
    raise NotFiniteWithinBound(f"element order exceeds bound {bound}")


def generate_group(gens: list[UMat2], max_order: int = 512) -> UnitaryGroup:
    """Worklist closure of the subgroup generated by unitary matrices."""
    conductor = 1
    for g in gens:
        for i in range(2):
            for j in range(2):
                c = g.entries[i][j].conductor
                conductor = conductor * c // math.gcd(conductor, c)
    gens_n = [g.to_conductor(conductor) for g in gens]
    ident = UMat2.identity(conductor)

    def make(m: UMat2) -> GroupElement:
        return GroupElement(m, _element_order(m, conductor, max_order + 1), m.canonical_key(conductor))

    elements: dict[tuple, GroupElement] = {ident.canonical_key(conductor): make(ident)}
    frontier = [ident]
    gen_elements = []
    for g in gens_n:
        key = g.canonical_key(conductor)
        if key not in elements:
            elements[key] = make(g)
            frontier.append(g)
        gen_elements.append(elements[key])
    while frontier:
        x = frontier.pop()
        for g in gens_n:
            y = x @ g
            key = y.canonical_key(conductor)
            if key not in elements:
                if len(elements) >= max_order:
                    raise NotFiniteWithinBound(f"closure exceeds max_order={max_order}")
                elements[key] = make(y)
                frontier.append(y)
    return UnitaryGroup(conductor, elements, gen_elements)


def classify_element(g: GroupElement) -> ElementClass:
    """Identity / complex reflection (eigenvalue 1 of multiplicity 1) / free."""
    m = g.matrix
    e = m.entries
    one = CyclotomicScalar.one()
    a = e[0][0] - one
    b = e[0][1]
    c = e[1][0]
    d = e[1][1] - one
    if a.is_zero() and b.is_zero() and c.is_zero() and d.is_zero():
        return ElementClass("identity")
    det = a * d - b * c
    if not det.is_zero():
        return ElementClass("free")
    # rank-1 kernel of (g - I): read the fixed line off a nonzero row
    if not (a.is_zero() and b.is_zero()):
        row = (a, b)
    else:
        row = (c, d)
    v = (-row[1], row[0])
    return ElementClass("reflection", fixed_line=_normalize_line(v))


def _normalize_line(v) -> tuple:
    """Canonical representative of a projective pair of cyclotomic coordinates."""
    v0, v1 = v
    if not v0.is_zero():
        v1 = v1 / v0
        v0 = CyclotomicScalar.one()
    else:
        v1 = CyclotomicScalar.one()
    return (v0._minimal(), v1._minimal())


def _reflection_subgroup(G: UnitaryGroup):
    refl = [g for g in G if classify_element(g).kind == "reflection"]
    sub = _closure_within(G, refl)
    normal = all(
        (gamma.matrix @ s.matrix @ gamma.matrix.inverse()).canonical_key(G.conductor) in sub
        for gamma in G
        for s in sub.values()
    )
    return sub, normal


def _closure_within(G: UnitaryGroup, gens: list[GroupElement]) -> dict:
    ident = UMat2.identity(G.conductor)
    got = {ident.canonical_key(G.conductor): G.elements[ident.canonical_key(G.conductor)]}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x @ g.matrix
            key = y.canonical_key(G.conductor)
            if key not in got:
                got[key] = G.elements[key]
                frontier.append(y)
    return got


def reflection_subgroup(G: UnitaryGroup):
    """The subgroup generated by all complex reflections, plus its normality."""
    return G.gamma_star, G.gamma_star_normal


class NotNormalError(ValueError):
    pass


def _quotient_table(G: UnitaryGroup, subgroup_elements: dict) -> CosetGroup:
    sub_keys = set(subgroup_elements.keys())
    cosets: list[frozenset] = []
    index: dict[tuple, int] = {}
    ident_key = UMat2.identity(G.conductor).canonical_key(G.conductor)
    ordering = [ident_key] + [k for k in sorted(G.elements) if k != ident_key]
    reps: list[tuple] = []
    for k in ordering:
        if k in index:
            continue
        g = G.elements[k].matrix
        cs = frozenset((g @ s.matrix).canonical_key(G.conductor) for s in subgroup_elements.values())
        idx = len(cosets)
        cosets.append(cs)
        reps.append(k)
        for x in cs:
            index[x] = idx
    n = len(cosets)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            prod = G.elements[reps[a]].matrix @ G.elements[reps[b]].matrix
            table[a][b] = index[prod.canonical_key(G.conductor)]
    return CosetGroup(table, labels=reps)


def quotient_group(G: UnitaryGroup, N) -> CosetGroup:
    """Coset table of G/N; N given as a dict of elements or a list of them."""
    if isinstance(N, dict):
        sub = N
    else:
        sub = {g.canonical_key: g for g in N}
    keys = set(sub.keys())
    for gamma in G:
        for s in sub.values():
            conj = gamma.matrix @ s.matrix @ gamma.matrix.inverse()
            if conj.canonical_key(G.conductor) not in keys:
                raise NotNormalError("subgroup is not normal in G")
    return _quotient_table(G, sub)


def stratum_class(G: UnitaryGroup) -> str:
    """Which stratum a point with isotropy G belongs to."""
    if G.order == 1:
        return "Manifold"
    lines = {classify_element(g).fixed_line for g in G.reflections}
    if not lines:
        return "Sigma0"
    if len(lines) == 1:
        return "SigmaStar"
    return "Sigma1"


def _is_abelian(G: UnitaryGroup) -> bool:
    els = list(G)
    return all((a.matrix @ b.matrix) == (b.matrix @ a.matrix) for i, a in enumerate(els) for b in els[:i])


def _eigen_split(m: UMat2, conductor: int):
    """Eigenvalues/eigenvectors of a non-scalar diagonalizable matrix,
    searched among the roots of unity of Q(zeta_N).  None if they fall
    outside the declared field."""
    tr = m.trace()
    det = m.det()
    candidates = [CyclotomicScalar.zeta(conductor, k) for k in range(conductor)]
    if conductor % 2 == 1:
        candidates += [c * -1 for c in candidates]
    roots = []
    for lam in candidates:
        if (lam * lam - tr * lam + det).is_zero() and all(lam != r for r in roots):
            roots.append(lam)
        if len(roots) == 2:
            break
    if len(roots) < 2:
        return None
    vecs = []
    for lam in roots:
        a = m.entries[0][0] - lam
        b = m.entries[0][1]
        c = m.entries[1][0]
        d = m.entries[1][1] - lam
        if not (a.is_zero() and b.is_zero()):
            vecs.append((-b, a))
        else:
            vecs.append((-d, c))
    return roots, vecs


def _diagonalize(G: UnitaryGroup):
    """Simultaneous diagonal entries (alpha, beta) for every element of an
    abelian G, over the declared field only.  Raises Unsupported otherwise."""
    els = list(G)

    def diag_of(m: UMat2):
        if m.entries[0][1].is_zero() and m.entries[1][0].is_zero():
            return (m.entries[0][0], m.entries[1][1])
        return None

    if all(diag_of(g.matrix) is not None for g in els):
        return [diag_of(g.matrix) for g in els]

    pivot = next((g for g in els if diag_of(g.matrix) is None), None)
    split = _eigen_split(pivot.matrix, G.conductor)
    if split is None:
        raise Unsupported("eigenvalues fall outside the declared cyclotomic field")
    _, (v1, v2) = split
    # change of basis P = [v1 v2]; conjugate everything by P^-1
    det = v1[0] * v2[1] - v2[0] * v1[1]
    if det.is_zero():
        raise Unsupported("eigenvectors are not independent over the declared field")
    out = []
    for g in els:
        e = g.matrix.entries
        # P^-1 g P, computed entrywise
        inv = det.inverse()
        p = [[v1[0], v2[0]], [v1[1], v2[1]]]
        pinv = [[p[1][1] * inv, (-1) * p[0][1] * inv], [(-1) * p[1][0] * inv, p[0][0] * inv]]
        gp = [[sum((e[i][k] * p[k][j] for k in range(2)), CyclotomicScalar.zero()) for j in range(2)] for i in range(2)]
        res = [[sum((pinv[i][k] * gp[k][j] for k in range(2)), CyclotomicScalar.zero()) for j in range(2)] for i in range(2)]
        if not (res[0][1].is_zero() and res[1][0].is_zero()):
            raise Unsupported("group is not simultaneously diagonalizable in the eigenbasis")
        out.append((res[0][0], res[1][1]))
    return out


def induced_cyclic_data(G: UnitaryGroup) -> CyclicActionData:
    """Normal form (m, q) of the action induced by G/Gamma* on the invariant
    coordinates (z^a, w^b) of the reflection subgroup."""
    if not _is_abelian(G):
        raise Unsupported("non-abelian isotropy group", order=G.order, abelian=False)
    diag_all = _diagonalize(G)
    els = list(G)
    star_keys = set(G.gamma_star.keys())
    star_diag = [d for g, d in zip(els, diag_all) if g.canonical_key in star_keys]

    # torsion exponent bookkeeping in zeta_M with M the field's full torsion
    def log(u: CyclotomicScalar) -> tuple[int, int]:
        return root_of_unity_log(u.to_conductor(G.conductor))

    modulus = None
    exps = []
    for alpha, beta in diag_all:
        (m1, e1), (m2, e2) = log(alpha), log(beta)
        mm = m1  # root_of_unity_log fixes M by the field, identical across calls
        assert m1 == m2
        modulus = mm
        exps.append((e1, e2))
    star_exps = [exps[i] for i, g in enumerate(els) if g.canonical_key in star_keys]

    a = len({e1 % modulus for (e1, e2) in star_exps if e2 % modulus == 0})
    b = len({e2 % modulus for (e1, e2) in star_exps if e1 % modulus == 0})

    # induced action on (z^a, w^b): exponent pairs mod the torsion order
    image = {(0, 0)}
    pairs = sorted({((e1 * a) % modulus, (e2 * b) % modulus) for (e1, e2) in exps})
    frontier = list(image)
    while frontier:
        x = frontier.pop()
        for p in pairs:
            y = ((x[0] + p[0]) % modulus, (x[1] + p[1]) % modulus)
            if y not in image:
                image.add(y)
                frontier.append(y)
    m = len(image)
    if m != G.order // len(star_keys):
        raise Unsupported("induced action is not faithful on the invariant coordinates")
    if m == 1:
        return CyclicActionData(1, 0)  # manifold point sentinel

    def pair_order(p):
        k = 1
        x = p
        while x != (0, 0):
            x = ((x[0] + p[0]) % modulus, (x[1] + p[1]) % modulus)
            k += 1
        return k

    gen = next((p for p in sorted(image) if pair_order(p) == m), None)
    if gen is None:
        raise Unsupported("induced quotient action is not cyclic, hence not free off 0")
    # gen acts as (zeta_M^g1, zeta_M^g2); rescale to order-m roots
    g1 = gen[0] * m // modulus if (gen[0] * m) % modulus == 0 else None
    g2 = gen[1] * m // modulus if (gen[1] * m) % modulus == 0 else None
    assert g1 is not None and g2 is not None  # orders divide m by construction
    if math.gcd(g1, m) != 1:
        raise Unsupported("induced action fixes the first invariant axis: not free off 0")
    # normalize the generator so the first weight is 1
    s = pow(g1, -1, m)
    q = (g2 * s) % m
    if math.gcd(q, m) != 1:
        raise Unsupported("induced action fixes the second invariant axis: not free off 0")
    return CyclicActionData(m, q)


# named built-in groups for specs and the CLI
def builtin_group(name: str) -> UnitaryGroup:
    minus_one = CyclotomicScalar.from_rational(-1, 2)
    one = CyclotomicScalar.one()
    if name == "minus_identity":
        return generate_group([UMat2.diagonal(minus_one, minus_one)])
    if name == "klein_four":
        return generate_group([UMat2.diagonal(minus_one, one), UMat2.diagonal(one, minus_one)])
    raise KeyError(f"unknown built-in group {name!r}")
