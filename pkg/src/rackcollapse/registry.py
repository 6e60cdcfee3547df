"""Stable group identifiers, so certificates can name and rebuild their ambient group."""
from __future__ import annotations

import functools
import re

from .permgrp import PermGroup, direct_product
from .ree_small import build_2g2_3, build_psl2
from .suzuki import build_sz, sz2_affine_model

FAMILIES = ("sz", "psl2", "psl2x2", "ree-g2-3", "sz2-affine")


class UnknownGroup(ValueError):
    pass


def group_id(family: str, h: int | None = None, q: int | None = None) -> str:
    if family == "sz":
        if h is None:
            raise UnknownGroup("family sz needs h")
        return f"sz:h={h}"
    if family in ("psl2", "psl2x2"):
        if q is None:
            raise UnknownGroup(f"family {family} needs q")
        return f"{family}:q={q}"
    if family in ("ree-g2-3", "sz2-affine"):
        return family
    raise UnknownGroup(f"unknown family {family!r}")


@functools.lru_cache(maxsize=None)
def build_group(gid: str) -> PermGroup:
    m = re.fullmatch(r"(sz|psl2|psl2x2):(h|q)=(\d+)", gid)
    if m:
        fam, key, val = m.group(1), m.group(2), int(m.group(3))
        if fam == "sz" and key == "h":
            return sz_context(val).perm_group
        if fam == "psl2" and key == "q":
            return build_psl2(val)
        if fam == "psl2x2" and key == "q":
            P = build_psl2(val)
            return direct_product(P, P, name=gid)
    if gid == "ree-g2-3":
        return ree_context().group
    if gid == "sz2-affine":
        return sz2_affine_model()
    raise UnknownGroup(f"unknown group id {gid!r}")


@functools.lru_cache(maxsize=None)
def sz_context(h: int):
    """Cached Suzuki build; its permutation group is shared with :func:`build_group`."""
    return build_sz(h)


@functools.lru_cache(maxsize=None)
def ree_context():
    return build_2g2_3()
