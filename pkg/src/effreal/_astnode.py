"""Shared decorator for AST node classes.

Nodes are frozen dataclasses whose hash is computed once and cached on the
instance: the trees are immutable and deep, and the checkers hash the same
subtrees constantly (memoized normalization, hypothesis sets), so the
recursive re-hashing would otherwise dominate checking time.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


def astnode(cls):
    cls = dataclass(frozen=True)(cls)
    names = tuple(f.name for f in dataclasses.fields(cls))
    tag = cls.__qualname__

    def __hash__(self, _names=names, _tag=tag):
        try:
            return object.__getattribute__(self, "_cached_hash")
        except AttributeError:
            h = hash((_tag,) + tuple(getattr(self, n) for n in _names))
            object.__setattr__(self, "_cached_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls
