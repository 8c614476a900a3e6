"""Canonical valley-following paths on the potential torus.

The similarity score of two closed curves is the mean potential along a
cyclic monotone walk through the torus: from cell (i, j) the walk moves to
whichever of (i, j+1), (i+1, j+1), (i+1, j) carries the minimal guide value,
indices mod the torus size, and ends at the first revisited cell. The cycle
between that cell's two occurrences is the canonical path; any pre-cycle tail
is discarded.

Three methods are provided: the base walk starting at the global potential
minimum, a multi-start variant over one torus row (alternative I), and a
lookahead variant guided by minimal continuation sums (alternative II).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import SearchError
from .features import FeatureMatrix, feature_matrix
from .ingest import BinaryMask
from .normalize import normalized_from_curve
from .potential import PotentialTorus, build_potential
from .trace import outer_borderline

# step preference for deterministic ties: diagonal, then right (i+1), then down (j+1)
_STEPS = ((1, 1), (1, 0), (0, 1))

Method = Literal["base", "multistart", "lookahead"]
TieRule = Literal["random", "deterministic"]


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the path search.

    tie: how a non-unique minimum is resolved, at the start cell and at every
    step. "random" draws from a generator seeded with `seed`; "deterministic"
    prefers the lexicographically smallest start cell and the diagonal > right
    > down step order. start_row is the fixed j of alternative I's start set.
    """

    method: Method = "base"
    n: int = 0
    tie: TieRule = "random"
    seed: int = 0
    start_row: int = 0
    step_budget: int = 36000

    def __post_init__(self) -> None:
        if self.method not in ("base", "multistart", "lookahead"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.tie not in ("random", "deterministic"):
            raise ValueError(f"unknown tie rule {self.tie!r}")
        if self.n < 0:
            raise ValueError("lookahead depth n must be >= 0")
        if self.step_budget < 3601:
            raise ValueError("step budget must be at least 3601")


@dataclass(frozen=True)
class TorusPath:
    """A cyclic monotone walk: distinct cells, legal steps, closing step legal."""

    cells: np.ndarray
    wrap_count_x: int
    wrap_count_y: int

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class MatchResult:
    path: TorusPath
    mean_potential: float
    method: str
    tie_events: int
    n: int | None = None
    seed: int | None = None


def _as_values(torus: PotentialTorus | np.ndarray) -> np.ndarray:
    v = torus.values if isinstance(torus, PotentialTorus) else np.asarray(torus)
    if v.ndim != 2 or v.shape[0] < 2 or v.shape[1] < 2:
        raise SearchError(f"torus must be at least 2x2, got shape {v.shape}")
    return v.astype(np.float64)


def _close_cycle(cells: list[tuple[int, int]], shape: tuple[int, int]) -> TorusPath:
    """Wrap a cell list into a TorusPath, verifying step legality."""
    arr = np.array(cells, dtype=np.int64)
    ni, nj = shape
    di = (np.roll(arr[:, 0], -1) - arr[:, 0]) % ni
    dj = (np.roll(arr[:, 1], -1) - arr[:, 1]) % nj
    legal = ((di == 0) & (dj == 1)) | ((di == 1) & (dj == 1)) | ((di == 1) & (dj == 0))
    if not legal.all():
        raise SearchError("walk produced an illegal step")
    return TorusPath(
        cells=arr,
        wrap_count_x=int(di.sum()) // ni,
        wrap_count_y=int(dj.sum()) // nj,
    )


def _walk(
    guide: np.ndarray,
    start: tuple[int, int],
    config: SearchConfig,
    rng: np.random.Generator | None,
) -> tuple[TorusPath, int]:
    """Run the greedy walk; returns the limit cycle and the tie-event count."""
    ni, nj = guide.shape
    i, j = int(start[0]) % ni, int(start[1]) % nj
    seen: dict[tuple[int, int], int] = {(i, j): 0}
    seq: list[tuple[int, int]] = [(i, j)]
    ties = 0
    for _ in range(config.step_budget):
        cands = tuple(((i + di) % ni, (j + dj) % nj) for di, dj in _STEPS)
        vals = tuple(guide[c] for c in cands)
        best = min(vals)
        tied = tuple(c for c, v in zip(cands, vals) if v == best)
        if len(tied) > 1:
            ties += 1
            if config.tie == "random":
                assert rng is not None
                nxt = tied[int(rng.integers(len(tied)))]
            else:
                nxt = tied[0]
        else:
            nxt = tied[0]
        if nxt in seen:
            return _close_cycle(seq[seen[nxt] :], guide.shape), ties
        seen[nxt] = len(seq)
        seq.append(nxt)
        i, j = nxt
    raise SearchError(f"walk exceeded the step budget of {config.step_budget}")


def greedy_walk(
    torus: PotentialTorus | np.ndarray,
    start: tuple[int, int],
    guide: np.ndarray | None = None,
    config: SearchConfig | None = None,
) -> TorusPath:
    """Greedy valley-following walk from `start`, guided by `guide` (default V)."""
    config = config or SearchConfig()
    v = _as_values(torus)
    g = v if guide is None else np.asarray(guide, dtype=np.float64)
    if g.shape != v.shape:
        raise SearchError(f"guide shape {g.shape} does not match torus {v.shape}")
    rng = np.random.default_rng(config.seed) if config.tie == "random" else None
    path, _ = _walk(g, start, config, rng)
    return path


def _pick_start(
    guide: np.ndarray, config: SearchConfig, rng: np.random.Generator | None
) -> tuple[tuple[int, int], int]:
    """Cell with the minimal guide value; ties resolved per the tie rule."""
    minima = np.argwhere(guide == guide.min())
    if len(minima) == 1:
        return (int(minima[0][0]), int(minima[0][1])), 0
    if config.tie == "random":
        assert rng is not None
        row = minima[int(rng.integers(len(minima)))]
    else:
        row = minima[0]  # argwhere rows come lexicographically sorted
    return (int(row[0]), int(row[1])), 1


def _mean_along(v: np.ndarray, path: TorusPath) -> float:
    return float(np.mean(v[path.cells[:, 0], path.cells[:, 1]]))


def canonical_path_base(
    torus: PotentialTorus | np.ndarray, config: SearchConfig | None = None
) -> MatchResult:
    """Greedy walk from the global potential minimum, guided by V itself."""
    config = config or SearchConfig()
    v = _as_values(torus)
    rng = np.random.default_rng(config.seed) if config.tie == "random" else None
    start, start_ties = _pick_start(v, config, rng)
    path, step_ties = _walk(v, start, config, rng)
    return MatchResult(
        path=path,
        mean_potential=_mean_along(v, path),
        method="base",
        tie_events=start_ties + step_ties,
        seed=config.seed if config.tie == "random" else None,
    )


def canonical_path_multistart(
    torus: PotentialTorus | np.ndarray, config: SearchConfig | None = None
) -> MatchResult:
    """Alternative I: one walk per cell of a torus row, minimal mean wins.

    The start set is the row j = start_row, cells (i, start_row) for all i.
    Each start gets its own child random stream, so results do not depend on
    the order the walks run in. tie_events reports the winning walk's count,
    plus one if several walks tied on the minimal mean.
    """
    config = config or SearchConfig()
    v = _as_values(torus)
    ni, nj = v.shape
    if not 0 <= config.start_row < nj:
        raise SearchError(f"start row {config.start_row} outside torus of {nj} columns")
    if config.tie == "random":
        children = np.random.SeedSequence(config.seed).spawn(ni + 1)
        rngs = [np.random.default_rng(c) for c in children[:ni]]
        pick_rng = np.random.default_rng(children[ni])
    else:
        rngs = [None] * ni
        pick_rng = None

    results = []
    for i in range(ni):
        path, ties = _walk(v, (i, config.start_row), config, rngs[i])
        results.append((path, ties, _mean_along(v, path)))
    means = np.array([r[2] for r in results])
    tied = np.flatnonzero(means == means.min())
    pick_tie = 0
    if len(tied) > 1:
        pick_tie = 1
        winner = int(tied[int(pick_rng.integers(len(tied)))]) if pick_rng is not None else int(tied[0])
    else:
        winner = int(tied[0])
    path, ties, mean = results[winner]
    return MatchResult(
        path=path,
        mean_potential=mean,
        method="multistart",
        tie_events=ties + pick_tie,
        seed=config.seed if config.tie == "random" else None,
    )


def lookahead_sums(torus: PotentialTorus | np.ndarray, n: int) -> np.ndarray:
    """S_n(i, j): minimal potential sum over all continuations of length n.

    S_0 = V; S_m(i, j) = V(i, j) + min of S_{m-1} over the three successor
    cells. A continuation of length n covers the cell itself plus n steps.
    """
    if n < 0:
        raise SearchError("lookahead depth must be >= 0")
    v = _as_values(torus)
    s = v.copy()
    for _ in range(n):
        down = np.roll(s, -1, axis=1)
        right = np.roll(s, -1, axis=0)
        diag = np.roll(right, -1, axis=1)
        s = v + np.minimum(np.minimum(diag, right), down)
    return s


def canonical_path_lookahead(
    torus: PotentialTorus | np.ndarray, config: SearchConfig | None = None
) -> MatchResult:
    """Alternative II: start and step by S_n; the mean still averages V."""
    config = config or SearchConfig()
    v = _as_values(torus)
    s = lookahead_sums(v, config.n)
    rng = np.random.default_rng(config.seed) if config.tie == "random" else None
    start, start_ties = _pick_start(s, config, rng)
    path, step_ties = _walk(s, start, config, rng)
    return MatchResult(
        path=path,
        mean_potential=_mean_along(v, path),
        method="lookahead",
        tie_events=start_ties + step_ties,
        n=config.n,
        seed=config.seed if config.tie == "random" else None,
    )


def canonical_path(
    torus: PotentialTorus | np.ndarray, config: SearchConfig | None = None
) -> MatchResult:
    """Dispatch to the configured path method."""
    config = config or SearchConfig()
    if config.method == "multistart":
        return canonical_path_multistart(torus, config)
    if config.method == "lookahead":
        return canonical_path_lookahead(torus, config)
    return canonical_path_base(torus, config)


def mask_features(mask: BinaryMask, signed: bool = False) -> FeatureMatrix:
    """Feature matrix of a mask's outer borderline (trace, resample, normalize)."""
    return feature_matrix(normalized_from_curve(outer_borderline(mask)), signed=signed)


def similarity(
    mask_x: BinaryMask,
    mask_y: BinaryMask,
    weights: np.ndarray | None = None,
    config: SearchConfig | None = None,
) -> MatchResult:
    """Similarity of two masks: mean potential along the canonical path.

    Composes the full pipeline: outer borderline, resampling, normalization,
    feature extraction, potential torus, then the configured path method.
    Zero means identical down to the features; larger means less similar.
    """
    torus = build_potential(mask_features(mask_x), mask_features(mask_y), weights)
    return canonical_path(torus, config)
