"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``CHARRANK_PURE_PYTHON=1`` to force the fallback. The compiled kernels
pack vectors into 64-bit words, so algebras with a Betti number above 64
always run on the Python path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import _pykernel

_ckernel = None
if os.environ.get("CHARRANK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel  # type: ignore[no-redef]
    except ImportError:
        _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"
BACKENDS = ("cython", "python") if _ckernel is not None else ("python",)


@dataclass(frozen=True)
class PackedAlgebra:
    dim: int
    betti: tuple[int, ...]
    table: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def word_sized(self) -> bool:
        return max(self.betti) <= 64


def pack(alg) -> PackedAlgebra:
    """Flatten the positive-degree structure constants of ``alg``."""
    d = alg.dim
    stride = d + 1
    table: list[int] = []
    offsets = [-1] * (stride * stride)
    for i in range(1, stride):
        for k in range(1, stride - i):
            offsets[i * stride + k] = len(table)
            rows = alg._table[i][k]
            for p in range(alg.betti[i]):
                table.extend(rows[p])
    return PackedAlgebra(d, tuple(alg.betti), tuple(table), tuple(offsets))


def _impl(backend: Optional[str], word_sized: bool = True):
    name = backend or BACKEND
    if name == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        return _ckernel if word_sized else _pykernel
    if name == "python":
        return _pykernel
    raise ValueError(f"unknown backend {name!r}")


def charrank_batch(
    packed: PackedAlgebra, profiles: Sequence[Sequence[int]], backend: Optional[str] = None
) -> list[int]:
    """Characteristic rank of each profile (tuples ``(1, w_1, ..., w_dim)`` of bits)."""
    impl = _impl(backend, packed.word_sized)
    return impl.charrank_batch(packed.dim, packed.betti, packed.table, packed.offsets, profiles)


def rank_u64(rows: Iterable[int], backend: Optional[str] = None) -> int:
    """Rank of vectors of width <= 64."""
    return _impl(backend).rank_u64(list(rows))
