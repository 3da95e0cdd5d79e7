"""JSON descriptors for groups, cochains and modules."""

from __future__ import annotations

import numpy as np

from .cocycles import (
    Coboundary,
    Cochain2,
    Cochain3,
    Cocycle3,
    ProductCochain3,
    Pullback,
    ScaledCochain3,
    TableCochain3,
)
from .groups import FinAbGroup, GroupHom
from .ydmod import ModuleError, Monomial, YDModule


class DescriptorError(ValueError):
    pass


def group_from_json(data) -> FinAbGroup:
    if isinstance(data, list):
        return FinAbGroup(tuple(data))
    try:
        return FinAbGroup.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(f"bad group descriptor: {exc}") from None


def hom_to_json(f: GroupHom) -> dict:
    return {
        "domain": f.domain.to_json(),
        "codomain": f.codomain.to_json(),
        "images": [list(x) for x in f.images],
    }


def hom_from_json(data: dict) -> GroupHom:
    return GroupHom(group_from_json(data["domain"]), group_from_json(data["codomain"]), tuple(map(tuple, data["images"])))


def cochain3_to_json(phi: Cochain3) -> dict:
    if isinstance(phi, Cocycle3):
        return phi.to_json()
    if isinstance(phi, Pullback):
        return {"pullback": cochain3_to_json(phi.base), "hom": hom_to_json(phi.hom)}
    if isinstance(phi, ProductCochain3):
        return {"product": [cochain3_to_json(phi.left), cochain3_to_json(phi.right)]}
    if isinstance(phi, ScaledCochain3):
        return {"power": phi.power, "of": cochain3_to_json(phi.base)}
    if isinstance(phi, Coboundary):
        return {"coboundary": phi.J.to_json()}
    return {
        "group": phi.group.to_json(),
        "modulus": phi.modulus,
        "exponents": phi.table.ravel().tolist(),
    }


def cochain3_from_json(data: dict) -> Cochain3:
    try:
        if "pullback" in data:
            return Pullback(cochain3_from_json(data["pullback"]), hom_from_json(data["hom"]))
        if "product" in data:
            a, b = (cochain3_from_json(x) for x in data["product"])
            return ProductCochain3(a, b)
        if "power" in data:
            return ScaledCochain3(cochain3_from_json(data["of"]), int(data["power"]))
        if "coboundary" in data:
            return Coboundary(Cochain2.from_json(data["coboundary"]))
        G = group_from_json(data["group"])
        if "exponents" in data:
            N = G.order
            t = np.asarray(data["exponents"], dtype=np.int64).reshape(N, N, N)
            return TableCochain3(G, t, int(data["modulus"]))
        c2 = {}
        for entry in data.get("c2", []):
            i, j, c = entry
            c2[(i - 1, j - 1)] = c
        c3 = {}
        for entry in data.get("c3", []):
            r, s, t, c = entry
            c3[(r - 1, s - 1, t - 1)] = c
        c1 = list(data.get("c", []))
        if len(c1) > G.rank:
            raise DescriptorError("more c entries than generators")
        if c3 and G.rank < 3:
            raise DescriptorError("c3 parameters need a group of rank at least 3")
        return Cocycle3.from_parts(G, c1, c2, c3)
    except DescriptorError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(f"bad cocycle descriptor: {exc}") from None


def module_to_json(V: YDModule) -> dict:
    return V.to_json()


def module_from_json(data: dict) -> YDModule:
    try:
        G = group_from_json(data["group"])
        phi = cochain3_from_json(data["cocycle"])
        degrees = [tuple(d) for d in data["degrees"]]
        n = len(degrees)
        acts = [Monomial.from_json(n, a) for a in data["actions"]]
        return YDModule(G, phi, degrees, acts, data.get("components"), data.get("labels"))
    except (KeyError, TypeError, ValueError, ModuleError) as exc:
        raise DescriptorError(f"bad module descriptor: {exc}") from None
