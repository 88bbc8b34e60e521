"""Quiver data for rational tangles: assembly from loop invariants, the
second Q path through two-point loops, and the almost-quiver reduction.

All vectors and matrices are over ``basis``, a list of standard indices
(or of arc-order labels for ``closed_form_n1``, see ``labeling``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import windings as W
from .arcdiagram import ArcDiagram, BlockPartition, build_diagram, partition_xyz
from .tanglecore import Role, TangleFraction, TangleState, continued_fraction, state_of


class PartitionInconsistency(ValueError):
    """A proposed pair fails the S/A/Q relations required for dropping it."""


@dataclass(frozen=True)
class QuiverData:
    fraction: TangleFraction
    state: TangleState
    basis: tuple[int, ...]
    active: tuple[bool, ...]
    K: tuple[int, ...]
    S: tuple[int, ...]
    A: tuple[int, ...]
    T: tuple[int, ...]
    Q: tuple[tuple[int, ...], ...]
    reduced: bool = False
    punctures: tuple[tuple[Role, Fraction], ...] = ()
    labeling: str = "standard"
    omega: int | None = None

    def __post_init__(self) -> None:
        n = len(self.basis)
        for name in ("active", "K", "S", "A", "T"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} has the wrong length")
        if len(self.Q) != n or any(len(row) != n for row in self.Q):
            raise ValueError("Q must be square over the basis")

    def __len__(self) -> int:
        return len(self.basis)

    def position(self, index: int) -> int:
        return self.basis.index(index)

    def is_symmetric(self) -> bool:
        n = len(self)
        return all(self.Q[i][k] == self.Q[k][i] for i in range(n) for k in range(i))

    def restrict(self, keep: list[int], K: list[int] | None = None, reduced: bool | None = None) -> "QuiverData":
        """Sub-data on the listed basis labels, in the given order."""
        pos = [self.position(i) for i in keep]
        return QuiverData(
            fraction=self.fraction,
            state=self.state,
            basis=tuple(keep),
            active=tuple(self.active[p] for p in pos),
            K=tuple(K) if K is not None else tuple(self.K[p] for p in pos),
            S=tuple(self.S[p] for p in pos),
            A=tuple(self.A[p] for p in pos),
            T=tuple(self.T[p] for p in pos),
            Q=tuple(tuple(self.Q[p][r] for r in pos) for p in pos),
            reduced=self.reduced if reduced is None else reduced,
            punctures=self.punctures,
            labeling=self.labeling,
            omega=self.omega,
        )

    def relabel(self, mapping: dict[int, int], labeling: str) -> "QuiverData":
        """Rename basis labels and re-sort by the new labels."""
        order = sorted(self.basis, key=lambda b: mapping[b])
        out = self.restrict(order)
        return QuiverData(
            fraction=out.fraction, state=out.state,
            basis=tuple(mapping[b] for b in order),
            active=out.active, K=out.K, S=out.S, A=out.A, T=out.T, Q=out.Q,
            reduced=out.reduced, punctures=out.punctures, labeling=labeling,
            omega=None if out.omega is None else mapping[out.omega],
        )

    def forms_equal(self, other: "QuiverData") -> bool:
        keys = ("basis", "active", "K", "S", "A", "T", "Q", "reduced")
        return all(getattr(self, k) == getattr(other, k) for k in keys)

    # serialization

    def to_dict(self) -> dict:
        return {
            "tangle": str(self.fraction),
            "state": {
                "orientation": self.state.orientation.value,
                "punctures": [{"role": r.value, "x": str(x)} for r, x in self.punctures],
            },
            "reduced": self.reduced,
            "basis": list(self.basis),
            "K": list(self.K),
            "S": list(self.S),
            "A": list(self.A),
            "T": list(self.T),
            "Q": [list(row) for row in self.Q],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["," + ",".join(str(b) for b in self.basis)]
        for b, row in zip(self.basis, self.Q):
            lines.append(f"{b}," + ",".join(str(x) for x in row))
        return "\n".join(lines) + "\n"

    def to_pretty(self) -> str:
        """Block layout: web label, the [K|S|A|T] columns, then Q."""
        x = self.state.orientation.value
        lines = [f"tangle {self.fraction}  state {self.state}  web {x}"]
        w = max([2] + [len(str(v)) for row in self.Q for v in row]
                + [len(str(v)) for v in self.S + self.A + self.T])
        lines.append("[K|S|A|T]")
        for i, b in enumerate(self.basis):
            cells = [self.K[i], self.S[i], self.A[i], self.T[i]]
            tag = "A" if self.active[i] else "I"
            lines.append(f"{b:>3}{tag} " + " ".join(f"{c:>{w}}" for c in cells))
        lines.append("Q")
        for row in self.Q:
            lines.append("     " + " ".join(f"{c:>{w}}" for c in row))
        return "\n".join(lines) + "\n"


def puncture_positions(f: TangleFraction, state: TangleState) -> tuple[tuple[Role, Fraction], ...]:
    """Roles read left to right onto the puncture x-values."""
    xs = (-1, 1, 2) if f.u >= f.v or f.trivial else (-2, -1, 1)
    return tuple((r, Fraction(x)) for r, x in zip(state.arrangement, xs))


# assembly from loops


def _kron(d: ArcDiagram, i: int) -> tuple[int, int]:
    """(is active, is inactive) as 0/1."""
    a = 1 if d.point(i).active else 0
    return a, 1 - a


def _z_is_xplus(d: ArcDiagram) -> int:
    return 1 if d.middle_role is Role.X_PLUS else 0


def _check_state(d: ArcDiagram, state: TangleState | None) -> None:
    if state is not None and state != d.state:
        raise ValueError(f"state {state} does not belong to {d.fraction} (expected {d.state})")


def compute_quiver(d: ArcDiagram, state: TangleState | None = None) -> QuiverData:
    """Linear and quadratic forms over the standard basis from loop invariants."""
    _check_state(d, state)
    idx = d.indices()
    w = d.omega
    wa, wi = _kron(d, w)
    z = _z_is_xplus(d)
    all_roles = (Role.X_MINUS, Role.X_PLUS, Role.Y)
    S, A, diag = {}, {}, {}
    for i in idx:
        ia, ii = _kron(d, i)
        loop = W.loop_gamma(d, i)
        xp = W.psi(d, [Role.X_PLUS], loop)
        S[i] = W.psi(d, all_roles, loop) + ia * wi - ii * wa
        A[i] = 2 * xp + z * (ia * wi - ii * wa)
        diag[i] = W.psi(d, [Role.X_MINUS, Role.Y], loop) - 3 * xp + 2 * z * (ii * wa - ia * wi)
    Q = []
    for i in idx:
        ia, ii = _kron(d, i)
        row = []
        for j in idx:
            if i == j:
                row.append(diag[i])
                continue
            ja, ji = _kron(d, j)
            phi = W.phi2(W.loop_tilde(d, j, i))
            xp = W.psi(d, [Role.X_PLUS], W.loop_gamma_pair(d, j, i))
            row.append(diag[i] + phi - 2 * xp + z * (ia * ji - ja * ii))
        Q.append(tuple(row))
    Svec = tuple(S[i] for i in idx)
    return QuiverData(
        fraction=d.fraction,
        state=d.state,
        basis=tuple(idx),
        active=tuple(d.point(i).active for i in idx),
        K=(0,) * len(idx),
        S=Svec,
        A=tuple(A[i] for i in idx),
        T=tuple(-x for x in Svec),
        Q=tuple(Q),
        punctures=d.punctures,
        omega=w,
    )


def conf2_correction(d: ArcDiagram, i: int, j: int) -> int:
    """The delta terms added to the two-point loop value of Q_ij."""
    z = _z_is_xplus(d)
    if not z:
        return 0
    ia, ii = _kron(d, i)
    ja, ji = _kron(d, j)
    wa, wi = _kron(d, d.omega)
    return (2 * ii * ji * wa - 2 * ia * ja * wi + ia * ji * wa + ii * ja * wa
            - ii * ja * wi - ia * ji * wi)


def conf2_value(d: ArcDiagram, loop: W.Loop2) -> int:
    """2 phi2 - psi2 at X+, i.e. phi2 plus twice the clockwise winding about X+."""
    return 2 * W.phi2(loop) - W.psi2_xplus(d, loop)


def compute_q_conf2(d: ArcDiagram, state: TangleState | None = None,
                    cross_return: str = "near") -> tuple[tuple[int, ...], ...]:
    """Q from two-point loops alone; must agree with ``compute_quiver``."""
    _check_state(d, state)
    idx = d.indices()
    return tuple(
        tuple(conf2_value(d, W.loop_conf2(d, j, i, cross_return)) + conf2_correction(d, i, j) for j in idx)
        for i in idx
    )


def block_partition(d: ArcDiagram, qd: QuiverData) -> BlockPartition:
    def winds_y(a: int, b: int) -> int:
        return W.psi(d, [Role.Y], W.loop_gamma_pair(d, a, b))

    return partition_xyz(d, winds_y, lambda i: qd.S[qd.position(i)])


def check_pair(qd: QuiverData, x: int, y: int) -> None:
    """Relations a dropped pair must satisfy; raises PartitionInconsistency."""
    px, py = qd.position(x), qd.position(y)
    problems = []
    if qd.S[px] != qd.S[py] + 1:
        problems.append("S")
    if qd.A[px] != qd.A[py]:
        problems.append("A")
    if qd.Q[px][px] != qd.Q[py][py] + 1:
        problems.append("Q diagonal")
    if problems:
        raise PartitionInconsistency(f"pair ({x}, {y}) of {qd.fraction} breaks {', '.join(problems)}")


def reduce_almost(qd: QuiverData, bp: BlockPartition) -> QuiverData:
    """Drop the larger-S member of every pair; survivors of a pair get K = 1.

    Output order is the paired block then the unpaired one, each in the
    order ``bp`` lists them (arc order from ``partition_xyz``).
    """
    if qd.reduced:
        raise ValueError("data is already reduced")
    for x, y in bp.pairs:
        check_pair(qd, x, y)
    keep = list(bp.y_block) + list(bp.z_block)
    if sorted(keep + list(bp.x_block)) != sorted(qd.basis):
        raise PartitionInconsistency("blocks do not cover the basis exactly once")
    return qd.restrict(keep, K=[1] * len(bp.y_block) + [0] * len(bp.z_block), reduced=True)


def quiver_for(f: TangleFraction, reduced: bool = False) -> QuiverData:
    d = build_diagram(f)
    qd = compute_quiver(d)
    if reduced:
        qd = reduce_almost(qd, block_partition(d, qd))
    return qd


# closed forms for n/1


def band(i: int, j: int) -> int:
    """The k with (i, j) in the k-th hook band, i.e. max(i, j)."""
    return max(i, j)


def closed_form_n1(n: int) -> tuple[QuiverData, QuiverData]:
    """Full and reduced data for n/1 straight from the closed formulas.

    Labels are arc-order labels 1..n+1; n+1 is the inactive point.  Pairs
    are (2m-1, 2m), the odd member being dropped.  For odd n the active
    point n stays unpaired next to the inactive one.
    """
    if n < 1:
        raise ValueError("n must be positive")
    f = TangleFraction(n, 1)
    state = state_of(continued_fraction(f))
    size = n + 1
    labels = tuple(range(1, size + 1))
    S = tuple(n - i + 1 if i <= n else 0 for i in labels)
    Q = tuple(
        tuple(n - band(i, k) if band(i, k) <= n else 0 for k in labels) for i in labels
    )
    full = QuiverData(
        fraction=f,
        state=state,
        basis=labels,
        active=tuple(i <= n for i in labels),
        K=(0,) * size,
        S=S,
        A=(0,) * size,
        T=tuple(-s for s in S),
        Q=Q,
        punctures=puncture_positions(f, state),
        labeling="arc",
        omega=size,
    )
    kept = [2 * m for m in range(1, n // 2 + 1)]
    tail = [n, n + 1] if n % 2 else [n + 1]
    reduced = full.restrict(kept + tail, K=[1] * len(kept) + [0] * len(tail), reduced=True)
    return full, reduced
