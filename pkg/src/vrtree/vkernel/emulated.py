"""Portable pure-numpy emulation of the wide-register kernel ops.

A "register" is a plain numpy array: 32-bit elements fill ``lanes`` lanes,
64-bit elements (node/object references) fill ``lanes // 2`` lanes, mirroring
a fixed-width hardware register.  A mask is a plain int with bit i set iff
lane i is selected; rendered as a bit string, lane 0 is printed leftmost.

All loads return copies (register contents are snapshots, never views), and
every memory-touching op bounds-checks its access.
"""

import numpy as np

_CMP = {
    "<": np.less,
    "<=": np.less_equal,
    ">": np.greater,
    ">=": np.greater_equal,
    "==": np.equal,
}

COMPARATORS = tuple(_CMP)


def mask_str(mask: int, lanes: int) -> str:
    """Render a lane mask with lane 0 leftmost, e.g. 0b1001 at 4 lanes -> '1001'."""
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(lanes))


def mask_from_str(s: str) -> int:
    """Inverse of mask_str: leftmost character is lane 0."""
    m = 0
    for i, c in enumerate(s):
        if c == "1":
            m |= 1 << i
    return m


class EmulatedKernel:
    """Reference backend; semantics authority for the other backends."""

    name = "emulated"

    def __init__(self, lanes: int = 16):
        if lanes not in (4, 8, 16):
            raise ValueError(f"unsupported lane count {lanes}")
        self.lanes = lanes
        self.ref_lanes = lanes // 2
        # per-width lane bit tables, used to splat a mask int into lane bools
        self._bits = {
            w: (np.int64(1) << np.arange(w, dtype=np.int64)) for w in (self.ref_lanes, lanes)
        }

    # -- helpers ---------------------------------------------------------

    def lane_count(self, arr: np.ndarray) -> int:
        return self.lanes if arr.dtype.itemsize == 4 else self.ref_lanes

    def _mask_bools(self, mask: int, w: int):
        return (mask & self._bits[w]) != 0

    def _pack(self, bools) -> int:
        return int.from_bytes(np.packbits(bools, bitorder="little").tobytes(), "little")

    # -- loads -----------------------------------------------------------

    def load(self, mem: np.ndarray, offset: int) -> np.ndarray:
        w = self.lane_count(mem)
        if offset < 0 or offset + w > mem.shape[0]:
            raise IndexError(f"load of {w} lanes at {offset} exceeds array of {mem.shape[0]}")
        return mem[offset : offset + w].copy()

    def gather(self, idx: np.ndarray, mem: np.ndarray) -> np.ndarray:
        if idx.min() < 0 or idx.max() >= mem.shape[0]:
            raise IndexError("gather index out of bounds")
        return mem[idx]

    def expand_load(self, mask: int, mem: np.ndarray, offset: int) -> np.ndarray:
        w = self.lane_count(mem)
        bools = self._mask_bools(mask, w)
        k = int(bools.sum())
        if offset < 0 or offset + k > mem.shape[0]:
            raise IndexError("expand_load exceeds array")
        out = np.zeros(w, mem.dtype)  # unmasked lanes zero-filled for determinism
        out[bools] = mem[offset : offset + k]
        return out

    def broadcast(self, value, dtype) -> np.ndarray:
        dt = np.dtype(dtype)
        w = self.lanes if dt.itemsize == 4 else self.ref_lanes
        return np.full(w, value, dt)

    def broadcast_pair(self, v: np.ndarray) -> np.ndarray:
        return np.tile(v[:2], v.shape[0] // 2)

    # -- stores ----------------------------------------------------------

    def store(self, v: np.ndarray, mem: np.ndarray, offset: int) -> None:
        w = v.shape[0]
        if offset < 0 or offset + w > mem.shape[0]:
            raise IndexError("store exceeds array")
        mem[offset : offset + w] = v

    def compress_store(self, mask: int, v: np.ndarray, mem: np.ndarray, offset: int) -> int:
        picked = v[self._mask_bools(mask, v.shape[0])]
        k = picked.shape[0]
        if offset < 0 or offset + k > mem.shape[0]:
            raise IndexError("compress_store exceeds array")
        mem[offset : offset + k] = picked
        return k

    # -- lane shuffles ----------------------------------------------------

    def permute(self, idx: np.ndarray, v: np.ndarray) -> np.ndarray:
        if idx.min() < 0 or idx.max() >= v.shape[0]:
            raise IndexError("permute lane index out of range")
        return v[idx]

    def blend(self, mask: int, v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
        return np.where(self._mask_bools(mask, v1.shape[0]), v2, v1)

    # -- arithmetic --------------------------------------------------------

    def compare(self, op: str, v1: np.ndarray, v2: np.ndarray) -> int:
        return self._pack(_CMP[op](v1, v2))

    def masked_add(self, mask: int, v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
        return np.where(self._mask_bools(mask, v1.shape[0]), v1 + v2, v1)

    # -- prefetch ----------------------------------------------------------

    def prefetch(self, ref: int, hint: str = "l1") -> None:
        pass  # advisory only; no effect in emulation
