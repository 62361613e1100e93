"""Exact arithmetic in dihedral groups and Coxeter groups.

Dihedral elements use the normal form ``rho**r * s**eps`` with ``rho = st``.
General Coxeter groups are handled by Tits' solution to the word problem:
a word is reduced iff no sequence of braid moves exposes two equal adjacent
letters, and reduced words of one element are connected by braid moves.
Canonical forms are the lexicographically least reduced word (letters ordered
by generator index), cached per group.  The caches are plain dicts; concurrent
callers may insert the same key twice but always with identical values.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .defgraph import DefiningGraph

Word = tuple[str, ...]


@dataclass(frozen=True)
class DihedralElement:
    """``rho**rotation * s**reflection`` in the dihedral group of order ``2m``."""

    reflection: int
    rotation: int
    m: int

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        if self.m != other.m:
            raise ValueError("moduli differ")
        sign = -1 if self.reflection else 1
        return DihedralElement(
            (self.reflection + other.reflection) % 2,
            (self.rotation + sign * other.rotation) % self.m,
            self.m,
        )

    @classmethod
    def identity(cls, m: int) -> DihedralElement:
        return cls(0, 0, m)

    def is_identity(self) -> bool:
        return self.reflection == 0 and self.rotation == 0

    def order(self) -> int:
        x, k = self, 1
        while not x.is_identity():
            x, k = x * self, k + 1
        return k


def dihedral_generator(letter: str, m: int) -> DihedralElement:
    if letter == "s":
        return DihedralElement(1, 0, m)
    if letter == "t":
        return DihedralElement(1, m - 1, m)
    raise ValueError(f"letter {letter!r} is not 's' or 't'")


def dihedral_eval(word: Iterable[str], m: int) -> DihedralElement:
    if m < 2:
        raise ValueError("dihedral modulus must be >= 2")
    x = DihedralElement.identity(m)
    for letter in word:
        x = x * dihedral_generator(letter, m)
    return x


def alternating(first: str, second: str, length: int) -> Word:
    return tuple(first if p % 2 == 0 else second for p in range(length))


def dihedral_elements(m: int) -> set[DihedralElement]:
    """Closure of ``{s, t}`` under multiplication."""
    gens = [dihedral_generator("s", m), dihedral_generator("t", m)]
    seen = {DihedralElement.identity(m)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def exponent_sum(word: Iterable[str | tuple[str, int]]) -> int:
    """Image under the map sending every generator to ``1`` in the integers.

    Letters are plain names (exponent ``+1``) or ``(name, exponent)`` pairs.
    """
    total = 0
    for item in word:
        total += item[1] if isinstance(item, tuple) else 1
    return total


@dataclass(frozen=True)
class DihedralCase:
    name: str
    claim: str
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "claim": self.claim, "passed": self.passed}


@dataclass(frozen=True)
class DihedralReport:
    m: int
    cases: tuple[DihedralCase, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_dict(self) -> dict:
        return {"m": self.m, "passed": self.passed, "cases": [c.to_dict() for c in self.cases]}


def verify_dihedral_lemmas(m: int) -> DihedralReport:
    """Evaluate the finite base cases behind the square-exclusion lemmas in ``I2(m)``.

    For ``m`` odd the twisted coset equality would force an alternating word
    of length ``m - 1`` to be trivial; for ``m`` even, words of length
    ``m - 2`` or ``m``.  Both starting letters are checked.
    """
    if m <= 2:
        raise ValueError(f"label {m} <= 2: the lemmas require a label greater than 2")

    def ev(word: Sequence[str]) -> DihedralElement:
        return dihedral_eval(word, m)

    one = DihedralElement.identity(m)
    cases = [
        DihedralCase("toy/ts!=st", "ts != st", ev("ts") != ev("st")),
        DihedralCase("toy/s!=t", "s != t", ev("s") != ev("t")),
        DihedralCase(
            "relation",
            f"alternating words of length {m} agree",
            ev(alternating("s", "t", m)) == ev(alternating("t", "s", m)),
        ),
    ]
    tau_len = m if m % 2 else m + 1
    cases.append(
        DihedralCase(
            "twist/exponent",
            f"tau has exponent sum {tau_len}",
            exponent_sum(alternating("s", "t", tau_len)) == tau_len,
        )
    )
    lengths = (m - 1,) if m % 2 else (m - 2, m)
    tag = "odd" if m % 2 else "even"
    for length in lengths:
        for first, second in (("s", "t"), ("t", "s")):
            word = alternating(first, second, length)
            cases.append(
                DihedralCase(
                    f"twist/{tag}/len{length}/{first}",
                    f"{''.join(word)} != 1",
                    ev(word) != one,
                )
            )
    return DihedralReport(m, tuple(cases))


def dihedral_sweep(m_max: int, order_check_max: int = 12) -> list[dict]:
    rows = []
    for m in range(3, m_max + 1):
        report = verify_dihedral_lemmas(m)
        row = {"m": m, "cases": len(report.cases), "passed": report.passed}
        if m <= order_check_max:
            order = len(dihedral_elements(m))
            row["order"] = order
            row["passed"] = row["passed"] and order == 2 * m
        rows.append(row)
    return rows


class CoxeterMatrix:
    """Coxeter matrix on ordered generators; ``None`` means infinity."""

    def __init__(self, generators: Sequence[str], labels: Mapping[tuple[str, str], int]):
        self.generators = tuple(generators)
        self.index = {v: i for i, v in enumerate(self.generators)}
        self._m: dict[frozenset[str], int] = {}
        for (u, v), m in labels.items():
            if u == v or m < 2:
                raise ValueError(f"bad Coxeter label {m} on {(u, v)}")
            self._m[frozenset((u, v))] = m

    @classmethod
    def from_graph(cls, g: DefiningGraph) -> CoxeterMatrix:
        return cls(g.vertices, g.labels)

    @classmethod
    def dihedral(cls, m: int, s: str = "s", t: str = "t") -> CoxeterMatrix:
        return cls((s, t), {(s, t): m})

    def m(self, u: str, v: str) -> int | None:
        if u == v:
            return 1
        return self._m.get(frozenset((u, v)))

    def restrict(self, subset: Iterable[str]) -> CoxeterMatrix:
        keep = set(subset)
        gens = [v for v in self.generators if v in keep]
        return CoxeterMatrix(
            gens,
            {tuple(sorted(p, key=self.index.__getitem__)): m for p, m in self._m.items() if p <= keep},
        )


class BallOverflowError(RuntimeError):
    def __init__(self, message: str, partial: int):
        super().__init__(f"{message} (partial count {partial})")
        self.partial = partial


class CoxeterGroup:
    """Word problem in a Coxeter group via braid-move closure."""

    def __init__(self, matrix: CoxeterMatrix, class_cap: int = 200_000):
        self.matrix = matrix
        self.generators = matrix.generators
        self.class_cap = class_cap
        self._classes: dict[Word, frozenset[Word]] = {}
        self._canon: dict[Word, Word] = {}
        self._mul: dict[tuple[Word, str], Word] = {}

    def _key(self, word: Word) -> tuple[int, ...]:
        return tuple(self.matrix.index[x] for x in word)

    def _braid_neighbors(self, word: Word) -> Iterable[Word]:
        for p in range(len(word) - 1):
            x, y = word[p], word[p + 1]
            if x == y:
                continue
            m = self.matrix.m(x, y)
            if m is None or p + m > len(word):
                continue
            if word[p : p + m] == alternating(x, y, m):
                yield word[:p] + alternating(y, x, m) + word[p + m :]

    def braid_class(self, word: Sequence[str]) -> frozenset[Word]:
        """All words reachable from ``word`` by braid moves."""
        word = tuple(word)
        canon = self._canon.get(word)
        if canon is not None and canon in self._classes:
            return self._classes[canon]
        seen = {word}
        queue = deque([word])
        while queue:
            w = queue.popleft()
            for u in self._braid_neighbors(w):
                if u not in seen:
                    seen.add(u)
                    if len(seen) > self.class_cap:
                        raise BallOverflowError("braid class too large", len(seen))
                    queue.append(u)
        cls = frozenset(seen)
        canon = min(cls, key=self._key)
        self._classes[canon] = cls
        for u in cls:
            self._canon[u] = canon
        return cls

    def canonical(self, reduced_word: Sequence[str]) -> Word:
        """Canonical form of a word already known to be reduced."""
        word = tuple(reduced_word)
        if word not in self._canon:
            self.braid_class(word)
        return self._canon[word]

    def mul_gen(self, w: Word, x: str) -> Word:
        """Canonical form of ``w * x`` for canonical ``w``."""
        key = (w, x)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        if x not in self.matrix.index:
            raise KeyError(f"unknown generator {x!r}")
        result = None
        for u in self.braid_class(w):
            if u[-1:] == (x,):
                result = self.canonical(u[:-1])
                break
        if result is None:
            result = self.canonical(w + (x,))
        self._mul[key] = result
        return result

    def reduce(self, word: Iterable[str]) -> Word:
        """Canonical reduced word of the element represented by ``word``."""
        cur: Word = ()
        for x in word:
            cur = self.mul_gen(cur, x)
        return cur

    def length(self, word: Iterable[str]) -> int:
        return len(self.reduce(word))

    def multiply(self, u: Iterable[str], v: Iterable[str]) -> Word:
        cur = self.reduce(u)
        for x in v:
            cur = self.mul_gen(cur, x)
        return cur

    def inverse(self, word: Iterable[str]) -> Word:
        return self.reduce(tuple(word)[::-1])

    def equal(self, u: Iterable[str], v: Iterable[str]) -> bool:
        return self.reduce(u) == self.reduce(v)

    def support(self, word: Iterable[str]) -> frozenset[str]:
        return frozenset(self.reduce(word))

    def is_parabolic_member(self, word: Iterable[str], subset: Iterable[str]) -> bool:
        return self.support(word) <= frozenset(subset)

    def has_right_descent(self, w: Word, x: str) -> bool:
        return len(self.mul_gen(w, x)) < len(w)

    def has_left_descent(self, w: Word, x: str) -> bool:
        return any(u[:1] == (x,) for u in self.braid_class(w))

    def min_coset_rep(self, word: Iterable[str], subset: Iterable[str]) -> Word:
        """Unique shortest element of the left coset ``w W_subset``."""
        w = self.reduce(word)
        subset = sorted(set(subset), key=self.matrix.index.__getitem__)
        changed = True
        while changed:
            changed = False
            for u in subset:
                if self.has_right_descent(w, u):
                    w = self.mul_gen(w, u)
                    changed = True
                    break
        return w

    def min_double_coset_rep(
        self, word: Iterable[str], left: Iterable[str], right: Iterable[str]
    ) -> Word:
        """Unique shortest element of ``W_left w W_right``."""
        w = self.reduce(word)
        left = sorted(set(left), key=self.matrix.index.__getitem__)
        right = sorted(set(right), key=self.matrix.index.__getitem__)
        changed = True
        while changed:
            changed = False
            for x in left:
                if self.has_left_descent(w, x):
                    w = self.reduce((x,) + w)
                    changed = True
                    break
            if changed:
                continue
            for y in right:
                if self.has_right_descent(w, y):
                    w = self.mul_gen(w, y)
                    changed = True
                    break
        return w

    def in_double_product(self, word: Iterable[str], left: Iterable[str], right: Iterable[str]) -> bool:
        """Whether ``w`` lies in ``W_left * W_right``."""
        return self.min_double_coset_rep(word, left, right) == ()

    def ball(self, radius: int, cap: int = 1_000_000) -> dict[Word, int]:
        """Canonical forms of all elements of length ``<= radius``."""
        found: dict[Word, int] = {(): 0}
        frontier: list[Word] = [()]
        for length in range(1, radius + 1):
            nxt = []
            for w in frontier:
                for x in self.generators:
                    u = self.mul_gen(w, x)
                    if len(u) == length and u not in found:
                        found[u] = length
                        nxt.append(u)
                        if len(found) > cap:
                            raise BallOverflowError(f"ball of radius {radius} exceeds cap {cap}", len(found))
            if not nxt:
                break
            frontier = nxt
        return found

    def is_finite(self, probe_radius: int = 64, cap: int = 100_000) -> bool | None:
        """True if the group closes below ``probe_radius``; ``None`` if undecided."""
        try:
            ball = self.ball(probe_radius, cap)
        except BallOverflowError:
            return None
        top = max(ball.values())
        return True if top < probe_radius else None


def tits_reduce(word: Iterable[str], matrix: CoxeterMatrix | CoxeterGroup) -> Word:
    group = matrix if isinstance(matrix, CoxeterGroup) else CoxeterGroup(matrix)
    return group.reduce(word)


def words_equal(u: Iterable[str], v: Iterable[str], matrix: CoxeterMatrix | CoxeterGroup) -> bool:
    group = matrix if isinstance(matrix, CoxeterGroup) else CoxeterGroup(matrix)
    return group.equal(u, v)


def parabolic_member(w: Iterable[str], subset: Iterable[str], group: CoxeterGroup) -> bool:
    return group.is_parabolic_member(w, subset)


def enumerate_ball(matrix: CoxeterMatrix | CoxeterGroup, radius: int, cap: int = 1_000_000) -> dict[Word, int]:
    group = matrix if isinstance(matrix, CoxeterGroup) else CoxeterGroup(matrix)
    return group.ball(radius, cap)
