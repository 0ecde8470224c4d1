"""Per-operation invocation tallies for the counting backend."""

from dataclasses import dataclass, fields


@dataclass
class OpCounts:
    """Tally of kernel-op invocations since the last reset.

    One field per operation family.  ``loads`` counts 32-bit data-register
    loads only; loads of 64-bit reference registers are tallied separately
    under ``ref_loads`` so per-node load formulas stay in data-load units.
    """

    loads: int = 0
    ref_loads: int = 0
    gathers: int = 0
    expand_loads: int = 0
    broadcasts: int = 0
    stores: int = 0
    compress_stores: int = 0
    permutes: int = 0
    blends: int = 0
    compares: int = 0
    masked_adds: int = 0
    prefetches: int = 0

    def copy(self) -> "OpCounts":
        return OpCounts(**self.as_dict())

    def reset(self) -> None:
        for f in fields(self):
            setattr(self, f.name, 0)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def total(self) -> int:
        return sum(self.as_dict().values())

    def __sub__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(
            **{k: v - o for (k, v), o in zip(self.as_dict().items(), other.as_dict().values())}
        )


COUNT_FIELDS = tuple(f.name for f in fields(OpCounts))
