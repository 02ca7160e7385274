"""Gray presentations: signature plus tiles and engine mode.

A presentation owns the rewriting alphabet.  In the default mode the
alphabet is the operational 3-generators together with all (forward)
interchange generators; in ``q`` mode it is the operational generators
together with the four oriented interchange families of the
self-duality system, and the natural branching class is dropped.

Independence and naturality 4-generators are schema markers and are
never enumerated; tiles are the user-supplied (or completion-emitted)
4-generators with explicit parallel 3-cell boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .cells import (
    CellError,
    Signature,
    ThreeCell,
    length,
)


@dataclass(frozen=True)
class Tile:
    """A 4-generator identifying two parallel 3-cells."""

    name: str
    lhs: ThreeCell
    rhs: ThreeCell


@dataclass(frozen=True)
class QMode:
    """Names of the cap and cup 2-generators driving the oriented rules."""

    eta: str
    eps: str


@dataclass(frozen=True)
class GrayPresentation:
    name: str
    sig: Signature
    tiles: Tuple[Tile, ...] = ()
    qmode: Optional[QMode] = None

    def with_tiles(self, tiles) -> "GrayPresentation":
        return GrayPresentation(self.name, self.sig, tuple(tiles), self.qmode)

    def operational(self):
        return tuple(self.sig.three.keys())


@dataclass
class ValidationReport:
    well_typed: bool = True
    positive: bool = True
    operational_sources_positive: bool = True
    messages: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.well_typed


def validate(pres: GrayPresentation) -> ValidationReport:
    """Well-typedness and positivity diagnostics; never raises."""
    rep = ValidationReport()
    sig = pres.sig
    for name, (src, tgt) in sig.two.items():
        if length(tgt) == 0:
            rep.positive = False
            rep.messages.append(f"2-generator {name} has an identity target (not positive)")
    for name, (src, tgt) in sig.three.items():
        if length(src) == 0:
            rep.operational_sources_positive = False
            rep.messages.append(f"3-generator {name} has an identity source")
    for tile in pres.tiles:
        try:
            sig.check3(tile.lhs)
            sig.check3(tile.rhs)
        except CellError as exc:
            rep.well_typed = False
            rep.messages.append(f"tile {tile.name}: {exc}")
            continue
        if sig.source(tile.lhs) != sig.source(tile.rhs) or sig.target(tile.lhs) != sig.target(tile.rhs):
            rep.well_typed = False
            rep.messages.append(f"tile {tile.name}: boundaries are not parallel 3-cells")
    if pres.qmode is not None:
        for gen in (pres.qmode.eta, pres.qmode.eps):
            if gen not in sig.two:
                rep.well_typed = False
                rep.messages.append(f"q-mode generator {gen} is not a declared 2-generator")
    return rep
