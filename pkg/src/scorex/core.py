"""Validated probability mass vectors and reproducible simplex sampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LengthMismatch, NotStrictlyInterior, OutcomeError, RealmMismatch, SumNotOne

SUM_TOL = 1e-9
SAMPLE_EDGE = 1e-12
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class Realm:
    """A finite realm of ``size`` possible outcomes, indexed 1..size."""

    size: int

    def __post_init__(self):
        if isinstance(self.size, bool) or not isinstance(self.size, (int, np.integer)):
            raise TypeError(f"realm size must be an integer, got {self.size!r}")
        if self.size < 2:
            raise ValueError(f"realm size must be at least 2, got {self.size}")


class Pmv:
    """A strictly interior probability mass vector.

    Construct through :func:`validate_pmv` (or :meth:`Pmv.of`) so the
    invariants hold. The weights are stored as a read-only float64 array.
    """

    __slots__ = ("_w",)

    def __init__(self, weights: np.ndarray):
        w = np.array(weights, dtype=np.float64)
        w.setflags(write=False)
        self._w = w

    @classmethod
    def of(cls, raw: Sequence[float]) -> "Pmv":
        """Validate ``raw`` against a realm of its own length."""
        return validate_pmv(raw, Realm(len(raw)))

    @property
    def weights(self) -> np.ndarray:
        return self._w

    @property
    def n(self) -> int:
        return self._w.shape[0]

    @property
    def realm(self) -> Realm:
        return Realm(self.n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, outcome: int) -> float:
        """Weight of the 1-based ``outcome``."""
        return float(self._w[check_outcome(outcome, self.realm) - 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pmv):
            return NotImplemented
        return np.array_equal(self._w, other._w)

    def __hash__(self) -> int:
        return hash(self._w.tobytes())

    def __repr__(self) -> str:
        return f"Pmv({self._w.tolist()!r})"


def validate_pmv(raw: Sequence[float], realm: Realm) -> Pmv:
    """Check ``raw`` is a strictly interior pmv over ``realm``.

    No renormalization is done: the returned weights are ``raw`` unchanged.
    Errors carry the 1-based index of the offending component.
    """
    w = np.asarray(raw, dtype=np.float64)
    if w.ndim != 1 or w.shape[0] != realm.size:
        raise LengthMismatch(
            f"expected {realm.size} weights, got {w.size if w.ndim else 0}",
            index=None,
        )
    for i, x in enumerate(w, start=1):
        if not np.isfinite(x) or x <= 0.0 or x >= 1.0:
            raise NotStrictlyInterior(
                f"weight {i} = {x!r} is not strictly inside (0, 1)", index=i
            )
    total = float(np.sum(w))
    if abs(total - 1.0) > SUM_TOL:
        # blame the largest component; it moves the sum the most
        raise SumNotOne(
            f"weights sum to {total!r}, not 1 (tolerance {SUM_TOL})",
            index=int(np.argmax(w)) + 1,
        )
    return Pmv(w)


def check_outcome(index: int, realm: Realm) -> int:
    """Return ``index`` if it names an outcome of ``realm`` (1-based)."""
    if isinstance(index, bool) or not isinstance(index, (int, np.integer)):
        raise OutcomeError(f"outcome must be an integer, got {index!r}")
    if not 1 <= index <= realm.size:
        raise OutcomeError(f"outcome {index} outside 1..{realm.size}")
    return int(index)


def same_realm(*pmvs: Pmv) -> Realm:
    n = pmvs[0].n
    for other in pmvs[1:]:
        if other.n != n:
            raise RealmMismatch(f"pmvs have different sizes: {n} and {other.n}")
    return Realm(n)


def uniform(n: int) -> Pmv:
    return Pmv(np.full(n, 1.0 / n))


def substream(seed: int, trial_index: int) -> np.random.Generator:
    """Independent generator keyed by ``(seed, trial_index)``."""
    if trial_index < 0:
        raise ValueError(f"trial_index must be non-negative, got {trial_index}")
    return np.random.default_rng(np.random.SeedSequence([int(seed) & _U64, int(trial_index)]))


def _spacings(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        cuts = np.sort(rng.random(n - 1))
        w = np.empty(n)
        w[0] = cuts[0]
        w[1:-1] = np.diff(cuts)
        w[-1] = 1.0 - cuts[-1]
        if np.all((w > SAMPLE_EDGE) & (w < 1.0 - SAMPLE_EDGE)):
            return w


def sample_simplex_uniform(realm: Realm, seed: int, trial_index: int) -> Pmv:
    """Draw a pmv uniformly from the open simplex over ``realm``.

    Uses uniform spacings: sort ``N-1`` uniforms on (0, 1) and take the gaps,
    end gaps included. Draws with any weight within ``1e-12`` of 0 or 1 are
    rejected and redrawn from the same substream, so the result is a pure
    function of ``(seed, trial_index)``.
    """
    return Pmv(_spacings(substream(seed, trial_index), realm.size))
