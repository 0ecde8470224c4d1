"""Compiled kernel ops (numba).

Each op is an ``@njit`` function over numpy arrays; LLVM vectorizes the
per-lane loops to the host's widest SIMD registers.  Lane semantics are
bitwise-identical to the emulated backend (unmasked expand-load lanes are
zero-filled here too, so full registers can be compared across backends).

Import of this module succeeds without numba; constructing ``NativeKernel``
raises ``BackendUnavailableError`` when the compiled path cannot be used.
"""

import os

import numpy as np

try:  # pragma: no cover - exercised via BackendUnavailableError paths
    if os.environ.get("VRTREE_DISABLE_NUMBA", "") not in ("", "0"):
        raise ImportError("numba disabled via VRTREE_DISABLE_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):  # type: ignore
        if args and callable(args[0]):
            return args[0]

        def deco(f):
            return f

        return deco


class BackendUnavailableError(RuntimeError):
    """Requested kernel backend cannot run on this host."""


_CMP_CODE = {"<": 0, "<=": 1, ">": 2, ">=": 3, "==": 4}


@njit(cache=True)
def _load(mem, offset, w):
    if offset < 0 or offset + w > mem.shape[0]:
        raise IndexError("load out of bounds")
    out = np.empty(w, mem.dtype)
    for i in range(w):
        out[i] = mem[offset + i]
    return out


@njit(cache=True)
def _gather(idx, mem):
    w = idx.shape[0]
    out = np.empty(w, mem.dtype)
    for i in range(w):
        out[i] = mem[idx[i]]
    return out


@njit(cache=True)
def _expand_load(mask, mem, offset, w):
    out = np.zeros(w, mem.dtype)
    j = offset
    for i in range(w):
        if (mask >> i) & 1:
            out[i] = mem[j]
            j += 1
    return out


@njit(cache=True)
def _broadcast_pair(v):
    w = v.shape[0]
    out = np.empty(w, v.dtype)
    for i in range(w):
        out[i] = v[i & 1]
    return out


@njit(cache=True)
def _store(v, mem, offset):
    if offset < 0 or offset + v.shape[0] > mem.shape[0]:
        raise IndexError("store out of bounds")
    for i in range(v.shape[0]):
        mem[offset + i] = v[i]


@njit(cache=True)
def _compress_store(mask, v, mem, offset):
    j = offset
    for i in range(v.shape[0]):
        if (mask >> i) & 1:
            mem[j] = v[i]
            j += 1
    return j - offset


@njit(cache=True)
def _permute(idx, v):
    w = idx.shape[0]
    out = np.empty(w, v.dtype)
    for i in range(w):
        out[i] = v[idx[i]]
    return out


@njit(cache=True)
def _blend(mask, v1, v2):
    w = v1.shape[0]
    out = np.empty(w, v1.dtype)
    for i in range(w):
        out[i] = v2[i] if (mask >> i) & 1 else v1[i]
    return out


@njit(cache=True)
def _compare(code, v1, v2):
    mask = 0
    for i in range(v1.shape[0]):
        if code == 0:
            hit = v1[i] < v2[i]
        elif code == 1:
            hit = v1[i] <= v2[i]
        elif code == 2:
            hit = v1[i] > v2[i]
        elif code == 3:
            hit = v1[i] >= v2[i]
        else:
            hit = v1[i] == v2[i]
        if hit:
            mask |= 1 << i
    return mask


@njit(cache=True)
def _masked_add(mask, v1, v2):
    w = v1.shape[0]
    out = np.empty(w, v1.dtype)
    for i in range(w):
        out[i] = v1[i] + v2[i] if (mask >> i) & 1 else v1[i]
    return out


def _smoke_compile():
    a = np.arange(4, dtype=np.float32)
    if _compare(3, _load(a, 0, 4), a) != 0b1111:
        raise AssertionError("native kernel self-check failed")


class NativeKernel:
    """Kernel ops backed by compiled (numba) machine code."""

    name = "native"

    def __init__(self, lanes: int = 16):
        if not NUMBA_AVAILABLE:
            raise BackendUnavailableError(
                "native backend requested but numba is unavailable "
                "(or disabled via VRTREE_DISABLE_NUMBA)"
            )
        if lanes not in (4, 8, 16):
            raise ValueError(f"unsupported lane count {lanes}")
        self.lanes = lanes
        self.ref_lanes = lanes // 2
        try:
            _smoke_compile()
        except Exception as exc:  # pragma: no cover - depends on host toolchain
            raise BackendUnavailableError(f"native backend failed to compile: {exc}") from exc

    def lane_count(self, arr: np.ndarray) -> int:
        return self.lanes if arr.dtype.itemsize == 4 else self.ref_lanes

    def load(self, mem, offset):
        return _load(mem, offset, self.lane_count(mem))

    def gather(self, idx, mem):
        return _gather(idx, mem)

    def expand_load(self, mask, mem, offset):
        return _expand_load(mask, mem, offset, self.lane_count(mem))

    def broadcast(self, value, dtype):
        dt = np.dtype(dtype)
        w = self.lanes if dt.itemsize == 4 else self.ref_lanes
        return np.full(w, value, dt)

    def broadcast_pair(self, v):
        return _broadcast_pair(v)

    def store(self, v, mem, offset):
        _store(v, mem, offset)

    def compress_store(self, mask, v, mem, offset):
        return _compress_store(mask, v, mem, offset)

    def permute(self, idx, v):
        return _permute(idx, v)

    def blend(self, mask, v1, v2):
        return _blend(mask, v1, v2)

    def compare(self, op, v1, v2):
        return _compare(_CMP_CODE[op], v1, v2)

    def masked_add(self, mask, v1, v2):
        return _masked_add(mask, v1, v2)

    def prefetch(self, ref, hint: str = "l1") -> None:
        pass  # no portable prefetch intrinsic from Python; advisory no-op
