"""Finite abelian groups given by invariant factors, with elements as exponent tuples."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

Element = tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    """Z_{m_1} x ... x Z_{m_n}; the trivial group is ``FinAbGroup((1,))``."""

    factors: tuple[int, ...]

    def __post_init__(self):
        facs = tuple(int(m) for m in self.factors)
        if not facs:
            raise ValueError("factor list may not be empty")
        if any(m < 1 for m in facs):
            raise ValueError("factors must be positive")
        object.__setattr__(self, "factors", facs)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.factors, 1)

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.factors, 1)

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def generator(self, l: int) -> Element:
        return tuple(1 % m if k == l else 0 for k, m in enumerate(self.factors))

    def generators(self) -> list[Element]:
        return [self.generator(l) for l in range(self.rank)]

    @cached_property
    def elements(self) -> list[Element]:
        return [tuple(e) for e in product(*(range(m) for m in self.factors))]

    @cached_property
    def index(self) -> dict[Element, int]:
        return {e: k for k, e in enumerate(self.elements)}

    def element(self, exps: Iterable[int]) -> Element:
        exps = tuple(int(x) for x in exps)
        if len(exps) != self.rank:
            raise ValueError(f"element {exps} does not match group rank {self.rank}")
        return tuple(x % m for x, m in zip(exps, self.factors))

    def check(self, a: Sequence[int]) -> Element:
        a = tuple(a)
        if len(a) != self.rank or any(not 0 <= x < m for x, m in zip(a, self.factors)):
            raise ValueError(f"{a} is not a canonical element of Z{self.factors}")
        return a

    def mul(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.factors))

    def inv(self, a: Element) -> Element:
        return tuple(-x % m for x, m in zip(a, self.factors))

    def power(self, a: Element, k: int) -> Element:
        return tuple(x * k % m for x, m in zip(a, self.factors))

    def elem_order(self, a: Element) -> int:
        return reduce(lcm, (m // gcd(m, x) for x, m in zip(a, self.factors)), 1)

    def to_json(self) -> dict:
        return {"factors": list(self.factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FinAbGroup":
        return cls(tuple(data["factors"]))

    def __str__(self):
        return " x ".join(f"Z{m}" for m in self.factors)


def elem_mul(G: FinAbGroup, a: Sequence[int], b: Sequence[int]) -> Element:
    if len(a) != G.rank or len(b) != G.rank:
        raise ValueError("element dimension does not match group")
    return G.mul(tuple(a), tuple(b))


def elem_order(G: FinAbGroup, a: Sequence[int]) -> int:
    return G.elem_order(tuple(a))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism determined by the images of the domain generators."""

    domain: FinAbGroup
    codomain: FinAbGroup
    images: tuple[Element, ...]

    def __post_init__(self):
        imgs = tuple(self.codomain.element(x) for x in self.images)
        if len(imgs) != self.domain.rank:
            raise ValueError("need one image per domain generator")
        for m, x in zip(self.domain.factors, imgs):
            if m % self.codomain.elem_order(x):
                raise ValueError(f"image {x} has order not dividing {m}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, G: FinAbGroup) -> "GroupHom":
        return cls(G, G, tuple(G.generators()))

    def __call__(self, a: Sequence[int]) -> Element:
        out = self.codomain.identity
        for k, img in zip(a, self.images):
            out = self.codomain.mul(out, self.codomain.power(img, k))
        return out


@dataclass(frozen=True)
class Section:
    """Set-theoretic map G -> G_hat sending canonical exponents to the same exponents."""

    domain: FinAbGroup
    codomain: FinAbGroup

    def __call__(self, a: Sequence[int]) -> Element:
        return self.codomain.element(self.domain.check(a))


def hat_group(G: FinAbGroup) -> tuple[FinAbGroup, GroupHom, Section]:
    """(G_hat, pi, iota) with G_hat = prod Z_{m_l^2}."""
    H = FinAbGroup(tuple(m * m for m in G.factors))
    pi = GroupHom(H, G, tuple(G.generators()))
    return H, pi, Section(G, H)


def generated_subgroup(G: FinAbGroup, gens: Iterable[Sequence[int]]) -> list[Element]:
    """Sorted element list of the subgroup generated by ``gens``."""
    seen = {G.identity}
    frontier = [G.identity]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = G.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)
