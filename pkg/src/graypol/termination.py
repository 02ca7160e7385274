"""Reduction-order certification for presented rewriting systems.

Four strategies are implemented:

* ``interp``: a linear monotone interpretation handles the operational
  generators and the interchange norm handles the interchangers
  (requires positivity),
* ``interchange``: the interchange norm alone, for presentations whose
  alphabet is interchangers only,
* ``connected``: operational generators strictly drop the whisker count
  and every diagram is connected, so interchanger chains terminate by a
  cited external theorem, recorded as an explicit assumption,
* ``selfdual``: the counting measure of the oriented self-duality
  system, valid on connected diagrams.

Certificates carry replayable witnesses; refusal names the first
failing comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .cells import (
    CellError,
    OneCell,
    QInterchanger,
    Signature,
    TwoCell,
    length,
)
from .presentation import GrayPresentation, validate


class TerminationRefused(CellError):
    def __init__(self, strategy: str, reason: str):
        super().__init__(f"{strategy}: {reason}")
        self.strategy = strategy
        self.reason = reason


# ---------------------------------------------------------------- interchange norm


def interchange_norm(phi: TwoCell) -> Tuple[int, ...]:
    """Reversed sequence of left-context lengths of the whiskers."""
    return tuple(len(w.left.word) for w in reversed(phi.whiskers))


def seq_less(a: Tuple[int, ...], b: Tuple[int, ...]) -> Optional[bool]:
    """Same-length lexicographic comparison; None when incomparable."""
    if len(a) != len(b):
        return None
    return a < b


def check_positive_intnorm(pres: GrayPresentation):
    """Positivity makes the interchange norm drop across every interchanger."""
    sig = pres.sig
    for name, (_, tgt) in sig.two.items():
        if length(tgt) == 0:
            raise TerminationRefused(
                "interchange",
                f"presentation is not positive: 2-generator {name} has an identity target",
            )
    witnesses = []
    for alpha in sig.two:
        for beta in sig.two:
            for mid in _small_middles(sig, alpha, beta, 2):
                src, tgt = sig.interchanger_boundaries(alpha, mid, beta)
                ns, nt = interchange_norm(src), interchange_norm(tgt)
                if seq_less(nt, ns) is not True:
                    raise TerminationRefused(
                        "interchange",
                        f"norm does not drop across the interchanger on ({alpha}, {beta})",
                    )
                witnesses.append(("interchanger", alpha, tuple(mid.word), beta, ns, nt))
    return witnesses


def _small_middles(sig: Signature, alpha: str, beta: str, max_len: int):
    start = sig.end0(sig.src1(alpha))
    goal = sig.src1(beta).start
    frontier = [OneCell(start, ())]
    for _ in range(max_len + 1):
        nxt = []
        for u in frontier:
            if sig.end0(u) == goal:
                yield u
            for g, (s, t) in sig.one.items():
                if s == sig.end0(u):
                    nxt.append(OneCell(u.start, u.word + (g,)))
        frontier = nxt


# ---------------------------------------------------------------- linear interpretations


@dataclass(frozen=True)
class AffineMap:
    """Affine map ``N^m -> N^n``: ``x -> matrix @ x + const``."""

    m: int
    matrix: Tuple[Tuple[int, ...], ...]  # n rows of m entries
    const: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.const)

    @staticmethod
    def identity(n: int) -> "AffineMap":
        return AffineMap(
            n,
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
            (0,) * n,
        )

    @staticmethod
    def make(m, matrix, const) -> "AffineMap":
        matrix = tuple(tuple(int(v) for v in row) for row in matrix)
        const = tuple(int(v) for v in const)
        if len(matrix) != len(const):
            raise CellError("affine map: matrix row count must match constant length")
        if any(len(r) != m for r in matrix):
            raise CellError("affine map: matrix rows must have the input arity")
        if any(v < 0 for row in matrix for v in row) or any(v < 0 for v in const):
            raise CellError("affine map: coefficients must be natural numbers")
        return AffineMap(int(m), matrix, const)

    def after(self, other: "AffineMap") -> "AffineMap":
        """Composite ``self . other`` (apply ``other`` first)."""
        if self.m != other.n:
            raise CellError("affine map composition arity mismatch")
        mat = tuple(
            tuple(
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(other.n))
                for j in range(other.m)
            )
            for i in range(self.n)
        )
        cst = tuple(
            sum(self.matrix[i][k] * other.const[k] for k in range(other.n)) + self.const[i]
            for i in range(self.n)
        )
        return AffineMap(other.m, mat, cst)

    def widen(self, left: int, right: int) -> "AffineMap":
        """Block sum ``id_left (+) self (+) id_right``."""
        total = left + self.m + right
        rows = []
        for i in range(left):
            rows.append(tuple(1 if j == i else 0 for j in range(total)))
        for i in range(self.n):
            rows.append((0,) * left + self.matrix[i] + (0,) * right)
        for i in range(right):
            rows.append(tuple(1 if j == left + self.m + i else 0 for j in range(total)))
        return AffineMap(total, tuple(rows), (0,) * left + self.const + (0,) * right)

    def strictly_monotone(self) -> bool:
        if self.n == 0:
            return self.m == 0
        for j in range(self.m):
            if not any(self.matrix[i][j] > 0 for i in range(self.n)):
                return False
        return True

    def symbolic(self) -> str:
        names = "xyzuvw"
        outs = []
        for i in range(self.n):
            terms = []
            for j, coef in enumerate(self.matrix[i]):
                var = names[j] if j < len(names) else f"x{j}"
                if coef == 1:
                    terms.append(var)
                elif coef > 1:
                    terms.append(f"{coef}{var}")
            if self.const[i] or not terms:
                terms.append(str(self.const[i]))
            outs.append(" + ".join(terms))
        return "(" + ", ".join(outs) + ")"


@dataclass(frozen=True)
class LinearInterpretation:
    """Arity weights for 1-generators and affine maps for 2-generators."""

    weights: Dict[str, int]
    maps: Dict[str, AffineMap]

    def word_weight(self, u: OneCell) -> int:
        return sum(self.weights[g] for g in u.word)


def _check_interpretation(sig: Signature, interp: LinearInterpretation):
    for g in sig.one:
        if g not in interp.weights:
            raise TerminationRefused("interp", f"no weight for 1-generator {g}")
    for name, (src, tgt) in sig.two.items():
        f = interp.maps.get(name)
        if f is None:
            raise TerminationRefused("interp", f"no interpretation for 2-generator {name}")
        if f.m != interp.word_weight(src) or f.n != interp.word_weight(tgt):
            raise TerminationRefused(
                "interp", f"interpretation of {name} does not respect its boundaries"
            )
        if not f.strictly_monotone():
            raise TerminationRefused(
                "interp", f"interpretation of {name} is not strictly monotone (zero column)"
            )


def eval_interpretation(sig: Signature, interp: LinearInterpretation, phi: TwoCell) -> AffineMap:
    """Symbolic affine composite of a 2-cell under the interpretation."""
    _check_interpretation(sig, interp)
    acc = AffineMap.identity(interp.word_weight(sig.source(phi)))
    for w in phi.whiskers:
        stage = interp.maps[w.gen].widen(interp.word_weight(w.left), interp.word_weight(w.right))
        acc = stage.after(acc)
    return acc


def _dominates(big: AffineMap, small: AffineMap) -> bool:
    """Sufficient pointwise-decrease criterion: entrywise >= with one constant >."""
    if big.n != small.n or big.m != small.m:
        return False
    for rb, rs in zip(big.matrix, small.matrix):
        if any(b < s for b, s in zip(rb, rs)):
            return False
    if any(b < s for b, s in zip(big.const, small.const)):
        return False
    return any(b > s for b, s in zip(big.const, small.const))


def check_interpretation_decrease(pres: GrayPresentation, interp: LinearInterpretation):
    sig = pres.sig
    _check_interpretation(sig, interp)
    witnesses = []
    for name, (src, tgt) in sig.three.items():
        fs = eval_interpretation(sig, interp, src)
        ft = eval_interpretation(sig, interp, tgt)
        if not _dominates(fs, ft):
            raise TerminationRefused(
                "interp", f"interpretation does not strictly decrease across {name}"
            )
        witnesses.append(("operational", name, fs.symbolic(), ft.symbolic()))
    for alpha in sig.two:
        for beta in sig.two:
            for mid in _small_middles(sig, alpha, beta, 2):
                src, tgt = sig.interchanger_boundaries(alpha, mid, beta)
                if eval_interpretation(sig, interp, src) != eval_interpretation(sig, interp, tgt):
                    raise TerminationRefused(
                        "interp",
                        f"interpretation not invariant across the interchanger on ({alpha}, {beta})",
                    )
    return witnesses


# ---------------------------------------------------------------- cospans and connectedness


@dataclass(frozen=True)
class Cospan:
    """Finite cospan up to component relabeling.

    ``left`` and ``right`` map boundary positions to components
    ``0..parts-1``; ``floating`` counts components hit by neither map.
    """

    m: int
    n: int
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    floating: int

    @property
    def parts(self) -> int:
        return (max(self.left + self.right) + 1 if (self.left or self.right) else 0) + self.floating


def _canon_cospan(m, n, left, right, total_parts):
    relabel = {}
    for c in tuple(left) + tuple(right):
        if c not in relabel:
            relabel[c] = len(relabel)
    floating = total_parts - len(relabel)
    return Cospan(m, n, tuple(relabel[c] for c in left), tuple(relabel[c] for c in right), floating)


def cospan_identity(m: int) -> Cospan:
    return Cospan(m, m, tuple(range(m)), tuple(range(m)), 0)


def cospan_generator(m: int, n: int) -> Cospan:
    """A 2-generator collapses to a single component."""
    if m == 0 and n == 0:
        return Cospan(0, 0, (), (), 1)
    return Cospan(m, n, (0,) * m, (0,) * n, 0)


def cospan_compose(a: Cospan, b: Cospan) -> Cospan:
    """Pushout along the shared boundary: merge glued components."""
    if a.n != b.m:
        raise CellError("cospan composition boundary mismatch")
    pa, pb = a.parts, b.parts
    parent = list(range(pa + pb))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for k in range(a.n):
        union(a.right[k], pa + b.left[k])
    roots = {}
    def comp(i):
        r = find(i)
        if r not in roots:
            roots[r] = len(roots)
        return roots[r]

    left = tuple(comp(c) for c in a.left)
    right = tuple(comp(pa + c) for c in b.right)
    total = len({find(i) for i in range(pa + pb)})
    return _canon_cospan(a.m, b.n, left, right, total)


def cospan_whisker(p: int, c: Cospan, q: int) -> Cospan:
    shift = p
    left = tuple(range(p)) + tuple(c.left[i] + shift for i in range(c.m)) + tuple(
        p + c.parts + i for i in range(q)
    )
    right = tuple(range(p)) + tuple(c.right[i] + shift for i in range(c.n)) + tuple(
        p + c.parts + i for i in range(q)
    )
    total = p + c.parts + q
    return _canon_cospan(p + c.m + q, p + c.n + q, left, right, total)


def cospan_of(sig: Signature, phi: TwoCell) -> Cospan:
    acc = cospan_identity(len(sig.source(phi).word))
    for w in phi.whiskers:
        gen = cospan_generator(len(sig.src1(w.gen).word), len(sig.tgt1(w.gen).word))
        acc = cospan_compose(acc, cospan_whisker(len(w.left.word), gen, len(w.right.word)))
    return acc


def is_connected(sig: Signature, phi: TwoCell) -> bool:
    """Every component is hit by a boundary wire."""
    return cospan_of(sig, phi).floating == 0


def _closed_diagram_possible(sig: Signature, depth: int = 4) -> Optional[str]:
    """Search for a cap feeding a cup, which yields floating components.

    Returns a description of the offending pair, or None.  The search
    explores composite 2-cells between cap targets and cup sources up to
    a bounded 1-cell length; catalog signatures are decided exactly.
    """
    caps = [g for g, (s, _) in sig.two.items() if length(s) == 0]
    cups = [g for g, (_, t) in sig.two.items() if length(t) == 0]
    for cap in caps:
        for cup in cups:
            start = sig.tgt1(cap)
            goal = sig.src1(cup)
            seen = {start}
            frontier = [start]
            for _ in range(depth):
                nxt = []
                for u in frontier:
                    if u == goal:
                        return f"{cap} feeds {cup}"
                    for g, (gs, gt) in sig.two.items():
                        for cut in range(len(u.word) + 1):
                            pre = OneCell(u.start, u.word[:cut])
                            if sig.end0(pre) != gs.start:
                                continue
                            if u.word[cut : cut + len(gs.word)] != gs.word:
                                continue
                            post = u.word[cut + len(gs.word) :]
                            v = OneCell(u.start, pre.word + gt.word + post)
                            if len(v.word) <= depth + 2 and v not in seen:
                                seen.add(v)
                                nxt.append(v)
                frontier = nxt
    return None


# ---------------------------------------------------------------- self-duality measure


@dataclass(frozen=True)
class SelfDualMeasure:
    n1: int
    n2_eta: Tuple[int, ...]
    n2_eps: Tuple[int, ...]

    def as_tuple(self):
        return (self.n1, self.n2_eta, self.n2_eps)


def selfdual_measure(pres: GrayPresentation, phi: TwoCell) -> SelfDualMeasure:
    """Counting measure of the oriented self-duality system."""
    if pres.qmode is None:
        raise TerminationRefused("selfdual", "presentation has no q-mode configuration")
    eta, eps = pres.qmode.eta, pres.qmode.eps
    gens = [w.gen for w in phi.whiskers]
    for g in gens:
        if g not in (eta, eps):
            raise TerminationRefused("selfdual", f"2-generator {g} is outside the measured alphabet")
    n1 = 0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if gens[i] == eta and gens[j] == eps:
                n1 += 1
    etas = [len(w.right.word) for w in phi.whiskers if w.gen == eta]
    epss = [len(w.right.word) for w in phi.whiskers if w.gen == eps]
    return SelfDualMeasure(n1, tuple(reversed(etas)), tuple(epss))


def measure_less(a: SelfDualMeasure, b: SelfDualMeasure) -> bool:
    """Strict lexicographic comparison; shapes must agree."""
    if len(a.n2_eta) != len(b.n2_eta) or len(a.n2_eps) != len(b.n2_eps):
        raise TerminationRefused("selfdual", "measures of different shapes are incomparable")
    return a.as_tuple() < b.as_tuple()


def check_q_system(pres: GrayPresentation, max_mid: int = 3):
    """Measure decrease for each oriented rule kind and plain length drop."""
    if pres.qmode is None:
        raise TerminationRefused("selfdual", "presentation has no q-mode configuration")
    sig = pres.sig
    witnesses = []
    for name, (src, tgt) in sig.three.items():
        if length(tgt) >= length(src):
            raise TerminationRefused(
                "selfdual", f"operational rule {name} does not shrink the whisker count"
            )
        witnesses.append(("operational", name, length(src), length(tgt)))
    q = pres.qmode
    kinds = [(q.eta, q.eta, True), (q.eta, q.eps, False), (q.eps, q.eta, True), (q.eps, q.eps, False)]
    for alpha, beta, rev in kinds:
        for mid in _small_middles(sig, alpha, beta, max_mid):
            inst = QInterchanger(alpha, mid, beta, rev)
            src, tgt = sig.inst_source(inst), sig.inst_target(inst)
            if not measure_less(selfdual_measure(pres, tgt), selfdual_measure(pres, src)):
                raise TerminationRefused(
                    "selfdual",
                    f"measure does not drop across the oriented rule on ({alpha}, {beta})",
                )
        witnesses.append(("oriented-interchange", alpha, beta, "measure drops"))
    return witnesses


# ---------------------------------------------------------------- certificates


EXTERNAL_INTERCHANGER_THEOREM = (
    "interchanger rewriting terminates on connected diagrams (external theorem, assumed)"
)


@dataclass
class TerminationCertificate:
    strategy: str
    witnesses: List[tuple] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)
    scope: str = "all 2-cells"

    def summary(self) -> dict:
        return {
            "strategy": self.strategy,
            "witnesses": [list(w) for w in self.witnesses],
            "assumptions": list(self.assumptions),
            "scope": self.scope,
        }


def _certify_interp(pres, interpretation):
    if interpretation is None:
        raise TerminationRefused("interp", "no linear interpretation available")
    w1 = check_interpretation_decrease(pres, interpretation)
    w2 = check_positive_intnorm(pres)
    return TerminationCertificate("interp", w1 + w2)


def _certify_interchange(pres):
    if pres.sig.three:
        raise TerminationRefused(
            "interchange", "operational generators are not covered by the interchange norm"
        )
    return TerminationCertificate("interchange", check_positive_intnorm(pres))


def _certify_connected(pres):
    sig = pres.sig
    witnesses = []
    for name, (src, tgt) in sig.three.items():
        if length(tgt) >= length(src):
            raise TerminationRefused(
                "connected", f"operational rule {name} does not shrink the whisker count"
            )
        if cospan_of(sig, src) != cospan_of(sig, tgt):
            raise TerminationRefused(
                "connected", f"operational rule {name} does not preserve connectedness"
            )
        witnesses.append(("operational", name, length(src), length(tgt)))
    for alpha in sig.two:
        for beta in sig.two:
            for mid in _small_middles(sig, alpha, beta, 2):
                src, tgt = sig.interchanger_boundaries(alpha, mid, beta)
                if cospan_of(sig, src) != cospan_of(sig, tgt):
                    raise TerminationRefused(
                        "connected",
                        f"interchanger on ({alpha}, {beta}) does not preserve connectedness",
                    )
    offender = _closed_diagram_possible(sig)
    if offender is not None:
        raise TerminationRefused(
            "connected", f"closed diagrams are constructible ({offender}); not every 2-cell is connected"
        )
    witnesses.append(("closed-diagrams", "impossible"))
    return TerminationCertificate("connected", witnesses, [EXTERNAL_INTERCHANGER_THEOREM])


def _certify_selfdual(pres):
    cert = TerminationCertificate("selfdual", check_q_system(pres), scope="connected 2-cells")
    return cert


STRATEGIES = ("interp", "interchange", "connected", "selfdual")


def certify_termination(
    pres: GrayPresentation,
    strategy: Optional[str] = None,
    interpretation: Optional[LinearInterpretation] = None,
) -> TerminationCertificate:
    """Certificate for the chosen strategy, or the first that applies."""
    rep = validate(pres)
    if not rep.ok:
        raise TerminationRefused(strategy or "auto", "presentation failed validation")
    if strategy is not None:
        if strategy == "interp":
            return _certify_interp(pres, interpretation)
        if strategy == "interchange":
            return _certify_interchange(pres)
        if strategy == "connected":
            return _certify_connected(pres)
        if strategy == "selfdual":
            return _certify_selfdual(pres)
        raise TerminationRefused(strategy, f"unknown strategy (choose from {STRATEGIES})")
    failures = []
    for name in STRATEGIES:
        try:
            return certify_termination(pres, name, interpretation)
        except TerminationRefused as exc:
            failures.append(f"{name}: {exc.reason}")
    raise TerminationRefused("auto", "no strategy applies: " + " | ".join(failures))
