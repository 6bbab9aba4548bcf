"""End-to-end sampling pipelines and experiment grids.

A pipeline draw is: uniform accessible structure (canonical form), i.i.d.
finals with probability 1/2, then a decoration of the configured output
size, optionally with a forced minimum fraction of pop transitions.  The
draw order is fixed, so one (seed, stream) pair fully determines every
sample regardless of which metric is collected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import reachability as _reach
from .core import AcceptanceMode, Alphabets, Rdpda, UnderlyingDfa
from .decorate import _assemble, _draw_composition, _draw_min_pop_parts, _draw_word_symbols
from .dfa_sampler import _draw_canonical_targets, _draw_finals
from .dfa_sampler import SamplerReport
from .errors import GiveUpError, ParameterError
from .rng import make_rng

METRICS = (
    "reachable",
    "empty-stack-reachable",
    "nonempty-fraction",
    "pop-count",
    "generations",
    "rejects",
)


@dataclass(frozen=True)
class PipelineConfig:
    """Parameters of one sampling pipeline.

    Exactly one of `lam` (output size lam * rho * n, must be integral) and
    `output_size` is given.  `min_pop_fraction` f forces at least
    ceil(f * s) pop transitions.
    """

    num_states: int
    alphabets: Alphabets
    lam: Fraction | None = None
    output_size: int | None = None
    mode: AcceptanceMode = AcceptanceMode.FINAL_STATE
    min_pop_fraction: Fraction | None = None
    max_rejects: int = 300

    def __post_init__(self):
        if self.num_states < 1:
            raise ParameterError("need num_states >= 1")
        if self.alphabets.rho < 2:
            raise ParameterError("sampling needs rho = alpha * beta >= 2")
        if (self.lam is None) == (self.output_size is None):
            raise ParameterError("give exactly one of lam and output_size")
        if self.lam is not None:
            object.__setattr__(self, "lam", Fraction(self.lam))
            if self.lam < 0:
                raise ParameterError("lam must be non-negative")
            if (self.lam * self.s).denominator != 1:
                raise ParameterError(
                    f"output size lam * rho * n = {self.lam * self.s} is not an integer"
                )
        elif self.output_size < 0:
            raise ParameterError("output_size must be non-negative")
        if self.min_pop_fraction is not None:
            object.__setattr__(self, "min_pop_fraction", Fraction(self.min_pop_fraction))
            if not 0 <= self.min_pop_fraction <= 1:
                raise ParameterError("min_pop_fraction must be in [0, 1]")
            if self.s - self.forced_pops < 1 and self.m > 0:
                raise ParameterError("all transitions forced to pop but m > 0")
        if self.max_rejects < 1:
            raise ParameterError("need max_rejects >= 1")

    @property
    def s(self) -> int:
        """Transition count of a complete structure."""
        return self.num_states * self.alphabets.rho

    @property
    def m(self) -> int:
        if self.output_size is not None:
            return self.output_size
        return int(self.lam * self.s)

    @property
    def forced_pops(self) -> int:
        if self.min_pop_fraction is None:
            return 0
        return math.ceil(self.min_pop_fraction * self.s)


@dataclass(frozen=True)
class _Draw:
    targets: np.ndarray
    finals: np.ndarray
    parts: np.ndarray
    symbols: np.ndarray
    rejects: int


def _draw(cfg: PipelineConfig, rng: np.random.Generator) -> _Draw:
    n, rho, beta = cfg.num_states, cfg.alphabets.rho, cfg.alphabets.beta
    targets, rejects = _draw_canonical_targets(n, rho, rng)
    finals = _draw_finals(n, rng)
    if cfg.min_pop_fraction is not None:
        parts, _ = _draw_min_pop_parts(cfg.s, cfg.m, cfg.forced_pops, rng)
    else:
        parts = _draw_composition(cfg.m, cfg.s, rng)
    symbols = _draw_word_symbols(cfg.m, beta, rng)
    return _Draw(targets, finals, parts, symbols, rejects)


def _to_rdpda(cfg: PipelineConfig, d: _Draw) -> Rdpda:
    dfa = UnderlyingDfa(
        num_states=cfg.num_states,
        alphabets=cfg.alphabets,
        initial_state=0,
        finals=frozenset(int(q) for q in np.flatnonzero(d.finals)),
        targets=tuple(d.targets.tolist()),
    )
    return _assemble(dfa, d.parts, d.symbols)


def _pack_draw(cfg: PipelineConfig, d: _Draw) -> _reach._RulePack:
    """Rewrite rules of a drawn machine, without building it.

    Flat transition index q * rho + a * beta + x makes the source state and
    the read symbol pure index arithmetic; the composition offsets slice the
    symbol pool into the pushed words (stored orientation, as the kernel
    expects).
    """
    s = cfg.s
    off = np.zeros(s + 1, dtype=np.int32)
    np.cumsum(d.parts, out=off[1:])
    flat = np.arange(s, dtype=np.int32)
    return _reach._RulePack(
        n_control=cfg.num_states,
        n_gamma=cfg.alphabets.beta,
        r_from=flat // cfg.alphabets.rho,
        r_sym=flat % cfg.alphabets.beta,
        r_to=np.ascontiguousarray(d.targets, dtype=np.int32),
        r_off=off,
        r_pool=np.ascontiguousarray(d.symbols, dtype=np.int32),
    )


def _masks(
    cfg: PipelineConfig, d: _Draw, need_empty: bool = True
) -> tuple[np.ndarray, np.ndarray | None]:
    # canonical draws start in state 0 with gamma[0] on the stack
    return _reach._state_masks(_pack_draw(cfg, d), 0, 0, need_empty)


def _is_nonempty(cfg: PipelineConfig, d: _Draw) -> bool:
    if cfg.mode is AcceptanceMode.FINAL_STATE:
        reach, _ = _masks(cfg, d, need_empty=False)
        return bool((reach & d.finals).any())
    _, empty = _masks(cfg, d)
    if cfg.mode is AcceptanceMode.EMPTY_STACK:
        return bool(empty.any())
    return bool((empty & d.finals).any())


def sample_rdpda(cfg: PipelineConfig, rng: np.random.Generator) -> Rdpda:
    """One uniform complete accessible machine in canonical form."""
    return _to_rdpda(cfg, _draw(cfg, rng))


def sample_nonempty(cfg: PipelineConfig, rng: np.random.Generator) -> tuple[Rdpda, SamplerReport]:
    """Redraw until the accepted language is non-empty under cfg.mode.

    Uniform over the non-empty machines of the configured size.  Raises
    GiveUpError once cfg.max_rejects draws have been discarded.
    """
    rejects = 0
    while True:
        d = _draw(cfg, rng)
        if _is_nonempty(cfg, d):
            return _to_rdpda(cfg, d), SamplerReport(rejects)
        rejects += 1
        if rejects >= cfg.max_rejects:
            raise GiveUpError(f"no non-empty machine within {rejects} rejects", rejects)


def sample_reachable(cfg: PipelineConfig, rng: np.random.Generator) -> tuple[Rdpda, SamplerReport]:
    """Redraw until every state occurs in some run.

    Uniform over the fully reachable machines of the configured size.
    Raises GiveUpError once cfg.max_rejects draws have been discarded.
    """
    rejects = 0
    while True:
        d = _draw(cfg, rng)
        reach, _ = _masks(cfg, d, need_empty=False)
        if reach.all():
            return _to_rdpda(cfg, d), SamplerReport(rejects)
        rejects += 1
        if rejects >= cfg.max_rejects:
            raise GiveUpError(f"no fully reachable machine within {rejects} rejects", rejects)


@dataclass(frozen=True)
class TableStats:
    """Per-cell summary: mean with standard error over `count` samples.

    `gave_up` marks a cell abandoned by a rejection sampler; `note` marks a
    cell skipped before sampling (non-integral output size).
    """

    metric: str
    count: int
    mean: float
    stderr: float
    gave_up: bool = False
    note: str = ""

    def cell(self) -> str:
        if self.note:
            return "n/a"
        if self.gave_up:
            return "-"
        return f"{self.mean:.2f}±{self.stderr:.2f}"


def _summary(metric: str, values: list[float], gave_up: bool = False) -> TableStats:
    count = len(values)
    if count == 0:
        return TableStats(metric, 0, math.nan, math.nan, gave_up=gave_up)
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(count)) if count > 1 else math.nan
    return TableStats(metric, count, mean, stderr, gave_up=gave_up)


def collect_cell(
    metric: str, cfg: PipelineConfig, samples: int, rng: np.random.Generator
) -> TableStats:
    """Sample one grid cell.

    `generations` counts draws per fully reachable success (rejects + 1);
    `rejects` counts the discarded draws alone.  Either way the cell is
    abandoned (gave_up) as soon as one rejection run exhausts its budget,
    mirroring how dashes are usually reported for intractable cells.
    """
    if metric not in METRICS:
        raise ParameterError(f"unknown metric {metric!r}")
    if samples < 1:
        raise ParameterError("need at least one sample per cell")
    values: list[float] = []
    if metric in ("generations", "rejects"):
        for _ in range(samples):
            try:
                _, report = sample_reachable(cfg, rng)
            except GiveUpError:
                return _summary(metric, values, gave_up=True)
            count = report.generations if metric == "generations" else report.rejects
            values.append(float(count))
        return _summary(metric, values)
    for _ in range(samples):
        d = _draw(cfg, rng)
        if metric == "pop-count":
            values.append(float((d.parts == 0).sum()))
        elif metric == "nonempty-fraction":
            values.append(1.0 if _is_nonempty(cfg, d) else 0.0)
        elif metric == "reachable":
            reach, _ = _masks(cfg, d, need_empty=False)
            values.append(float(reach.sum()))
        else:
            _, empty = _masks(cfg, d)
            values.append(float(empty.sum()))
    return _summary(metric, values)


def collect_table(
    metric: str,
    lambdas,
    sizes,
    samples: int,
    alphabets: Alphabets,
    *,
    mode: AcceptanceMode = AcceptanceMode.FINAL_STATE,
    min_pop_fraction=None,
    max_rejects: int = 300,
    seed: int = 0,
) -> dict[tuple[Fraction, int], TableStats]:
    """Sample a (lambda, n) grid of one metric.

    Cells draw from independent streams derived from the seed, so the grid
    is reproducible cell by cell and safe to split across workers.  Cells
    whose output size lam * rho * n is not an integer are skipped with an
    explanatory note.
    """
    grid: dict[tuple[Fraction, int], TableStats] = {}
    stream = 0
    for lam in lambdas:
        lam = Fraction(lam)
        for n in sizes:
            rng = make_rng(seed, stream)
            stream += 1
            m = lam * n * alphabets.rho
            if m.denominator != 1:
                grid[(lam, n)] = TableStats(
                    metric, 0, math.nan, math.nan,
                    note=f"skipped: output size {m} is not an integer",
                )
                continue
            cfg = PipelineConfig(
                num_states=n,
                alphabets=alphabets,
                lam=lam,
                mode=mode,
                min_pop_fraction=min_pop_fraction,
                max_rejects=max_rejects,
            )
            grid[(lam, n)] = collect_cell(metric, cfg, samples, rng)
    return grid


@dataclass(frozen=True)
class XpTable:
    """One named experiment grid; blocks are (alpha, beta) pairs."""

    metric: str
    blocks: tuple[tuple[int, int], ...]
    lambdas: tuple[Fraction, ...]
    sizes: tuple[int, ...]
    min_pop_fraction: Fraction | None = None


_F = Fraction
XP_TABLES: dict[str, XpTable] = {
    "xp2": XpTable(
        "empty-stack-reachable",
        ((2, 2),),
        (_F(1, 2), _F(1), _F(3, 2), _F(2), _F(3), _F(5)),
        (5, 10, 15, 20, 30, 40, 60, 100),
    ),
    "xp3": XpTable(
        "reachable",
        ((2, 2),),
        (_F(1), _F(2), _F(3), _F(5)),
        (10, 20, 30, 40, 50, 60, 80, 100),
    ),
    "xp4": XpTable(
        "reachable",
        ((3, 5),),
        (_F(1), _F(2), _F(3), _F(5)),
        (10, 20, 30, 40, 50, 60, 80, 100),
    ),
    "xp5": XpTable(
        "generations",
        ((2, 2), (4, 2), (2, 4)),
        (_F(1), _F(3, 2), _F(2), _F(3), _F(5)),
        (10, 20, 30, 40, 50, 60, 80, 100),
    ),
    "xp6": XpTable(
        "empty-stack-reachable",
        ((2, 2),),
        (_F(1, 2), _F(1), _F(3, 2), _F(2), _F(3), _F(5)),
        (5, 10, 15, 20, 30, 40, 60, 100),
        min_pop_fraction=_F(2, 5),
    ),
}
