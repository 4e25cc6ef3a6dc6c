"""GL(2,Z) words over three generators, the wedge-of-three-circles train track,
circle immersions read from cyclic words, and torus-bundle descriptors."""
from __future__ import annotations

from dataclasses import dataclass, field

from .branched import BranchedManifold, Immersion, LocalProjection, immersion_violation
from .complex import SimplicialComplex, SimplicialMap, star
from .fixtures import cycle, path

LETTERS = ("a1", "a2", "a3")


@dataclass(frozen=True)
class Matrix2Z:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "Matrix2Z":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "Matrix2Z":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @property
    def rows(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "Matrix2Z") -> "Matrix2Z":
        return Matrix2Z(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                        self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "Matrix2Z":
        e = self.det
        if e not in (1, -1):
            raise ValueError(f"matrix with determinant {e} is not invertible over the integers")
        return Matrix2Z(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


GENERATORS = {
    "a1": Matrix2Z(1, 1, 0, 1),
    "a2": Matrix2Z(1, 0, 0, -1),
    "a3": Matrix2Z(0, 1, 1, 0),
}
A1_INVERSE = ("a2", "a1", "a2")


def parse_word(text) -> tuple:
    """Accept ``"a1 a2"``, ``"a1a2"`` or a sequence of letters."""
    if isinstance(text, str):
        letters = text.replace(",", " ").split()
        if len(letters) == 1 and len(letters[0]) > 2:
            s = letters[0]
            letters = [s[i:i + 2] for i in range(0, len(s), 2)]
    else:
        letters = list(text)
    for k, l in enumerate(letters):
        if l not in GENERATORS:
            raise ValueError(f"letter {k} is {l!r}, expected one of {', '.join(LETTERS)}")
    return tuple(letters)


def eval_word(w) -> Matrix2Z:
    """Left-to-right product of the letters."""
    m = Matrix2Z.identity()
    for l in parse_word(w):
        m = m @ GENERATORS[l]
    return m


def _simplify(word: list) -> list:
    out: list = []
    for l in word:
        out.append(l)
        while True:
            if len(out) >= 2 and out[-1] == out[-2] and out[-1] in ("a2", "a3"):
                del out[-2:]
            elif len(out) >= 4 and tuple(out[-4:]) in (("a1", "a2", "a1", "a2"),
                                                       ("a2", "a1", "a2", "a1")):
                del out[-4:]
            else:
                break
    return out


def factor_matrix(c: Matrix2Z) -> tuple:
    """A positive word evaluating to ``c``.

    ``c`` is reduced to the identity by right multiplication: a Euclidean
    scheme on the bottom row (the entry of smaller absolute value is the
    pivot, ties going to the left entry; a3 swaps the columns), then signs
    are fixed with a2 and a3 a2 a3 and the top-right entry is cleared with
    powers of a1.  The word is the reversed list of inverses, with the
    inverse of a1 written as a2 a1 a2.
    """
    if c.det not in (1, -1):
        raise ValueError(f"determinant {c.det} is not +-1")
    m = c
    steps: list = []

    def right(g: str, times: int = 1):
        nonlocal m
        mat = GENERATORS["a1"].inverse() if g == "a1inv" else GENERATORS[g]
        for _ in range(times):
            m = m @ mat
            steps.append(g)

    while m.c != 0:
        if m.d != 0 and abs(m.c) <= abs(m.d):
            q = m.d // m.c
            if q > 0:
                right("a1inv", q)
            elif q < 0:
                right("a1", -q)
        else:
            right("a3")
    if m.d == -1:
        right("a2")
    if m.a == -1:
        right("a3")
        right("a2")
        right("a3")
    if m.b > 0:
        right("a1inv", m.b)
    elif m.b < 0:
        right("a1", -m.b)
    assert m == Matrix2Z.identity()

    word: list = []
    for g in reversed(steps):
        if g == "a1":
            word.extend(A1_INVERSE)
        elif g == "a1inv":
            word.append("a1")
        else:
            word.append(g)
    return tuple(_simplify(word))


def rotate(w, k: int = 1) -> tuple:
    w = parse_word(w)
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


# -- the train track --------------------------------------------------------------

WEDGE = 0


def loop_vertices(i: int) -> tuple:
    """``(out, in)`` vertices subdividing loop ``i`` (1..3)."""
    return 2 * i - 1, 2 * i


def train_track() -> BranchedManifold:
    """Wedge of three circles, each subdivided into a triangle through the wedge vertex.

    The wedge vertex is projected onto a path ``in - x - out`` with every
    ``in_i - x - out_j`` edge path as a sheet, so any letter may follow any other.
    """
    edges = []
    for i in (1, 2, 3):
        o, n = loop_vertices(i)
        edges += [(WEDGE, o), (o, n), (n, WEDGE)]
    G = SimplicialComplex(edges)
    chart = path(3)
    vmap = {WEDGE: 1}
    for i in (1, 2, 3):
        o, n = loop_vertices(i)
        vmap[o], vmap[n] = 2, 0
    sheets = tuple(SimplicialComplex([(loop_vertices(i)[1], WEDGE), (WEDGE, loop_vertices(j)[0])])
                   for i in (1, 2, 3) for j in (1, 2, 3))
    projections = [LocalProjection(star(G, WEDGE), chart, vmap, sheets)]
    for v in G.vertices:
        if v != WEDGE:
            S = star(G, v)
            projections.append(LocalProjection(S, S, {u: u for u in S.vertices}, (S,)))
    return BranchedManifold(G, tuple(projections), 1)


def circle_immersion(w, track: BranchedManifold | None = None) -> Immersion:
    """Immersion of a cycle of length 3|w| running once around loop i per letter a_i."""
    w = parse_word(w)
    if not w:
        raise ValueError("circle immersion needs a nonempty word")
    track = track or train_track()
    m = len(w)
    C = cycle(3 * m)
    vmap = {}
    for k, l in enumerate(w):
        o, n = loop_vertices(int(l[1]))
        vmap[3 * k], vmap[3 * k + 1], vmap[3 * k + 2] = WEDGE, o, n
    f = SimplicialMap(C, track.complex, vmap)
    reason, witnesses = immersion_violation(C, track, f)
    if reason is not None:
        raise RuntimeError(f"word {' '.join(w)} does not give an immersion: {reason}")
    return Immersion(f, witnesses)


@dataclass(frozen=True)
class BundleDescriptor:
    """Torus bundle over the circle read from a cyclic word.

    ``crossings`` lists, per circle edge crossing a loop, the loop index and
    the gluing matrix of the fiber over it; the bundle map covers the circle
    immersion fiberwise.
    """
    word: tuple
    monodromy: Matrix2Z
    immersion: Immersion
    fiber: str = "T2"
    crossings: tuple = field(default=())
    covering: str = "q o F = f o p"


def bundle_certificate(w) -> BundleDescriptor:
    w = parse_word(w)
    imm = circle_immersion(w)
    crossings = tuple(((3 * k + 1, 3 * k + 2), int(l[1]), GENERATORS[l]) for k, l in enumerate(w))
    return BundleDescriptor(w, eval_word(w), imm, crossings=crossings)
