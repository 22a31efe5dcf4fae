"""Verification campaigns for the two long-cycle theorems and the Theorem C conjecture.

Exhaustive mode walks every labelled loop-free digraph of order ``n`` by its
integer encoding: bit ``b`` of the code is the ``b``-th ordered pair ``(u, v)``
in lexicographic order.  Sampled mode draws seeded random strong digraphs over
a sweep of arc probabilities.

Filters run cheapest first (strongness, semi-degrees, degree condition) and
only survivors reach the exact cycle search.
"""

from __future__ import annotations

import enum
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Iterator, Sequence

from . import oracle
from .conditions import Condition, min_semidegree, satisfies
from .digraph import Digraph, GraphError, is_strong
from .families import ExtremalTag, recognize
from .formats import format_edgelist, read_edgelist

__all__ = [
    "Theorem",
    "Mode",
    "EXHAUSTIVE_MAX_ORDER",
    "DEFAULT_SWEEP",
    "Witness",
    "VerificationReport",
    "Verdict",
    "arc_pairs",
    "code_of",
    "digraph_from_code",
    "iter_digraphs",
    "enumerate_digraphs",
    "random_strong_digraph",
    "judge",
    "verify",
    "verify_theorem_1",
    "verify_theorem_2",
    "explore_conjecture",
    "write_fixtures",
    "read_fixtures",
]

EXHAUSTIVE_MAX_ORDER = 5
DEFAULT_SWEEP = (0.3, 0.5, 0.7, 0.9)
MAX_REJECTIONS = 1000


class Theorem(enum.Enum):
    T1 = "T1"
    T2 = "T2"
    CONJECTURE = "ConjectureC"


class Mode(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


# -- encoding -------------------------------------------------------------


@lru_cache(maxsize=None)
def arc_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v)


@lru_cache(maxsize=None)
def _chunk_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """``tables[u][chunk]`` expands the ``n - 1`` bits of vertex ``u`` into an out-mask."""
    tables: list[tuple[int, ...]] = [()]
    for u in range(1, n + 1):
        heads = [v for v in range(1, n + 1) if v != u]
        row = []
        for chunk in range(1 << (n - 1)):
            mask = 0
            for b, v in enumerate(heads):
                if chunk >> b & 1:
                    mask |= 1 << v
            row.append(mask)
        tables.append(tuple(row))
    return tuple(tables)


def digraph_from_code(n: int, code: int) -> Digraph:
    tables = _chunk_tables(n)
    width = n - 1
    low = (1 << width) - 1
    out = [0] * (n + 1)
    for u in range(1, n + 1):
        out[u] = tables[u][(code >> ((u - 1) * width)) & low]
    return Digraph.from_masks(n, out)


def code_of(D: Digraph) -> int:
    code = 0
    for b, (u, v) in enumerate(arc_pairs(D.n)):
        if D.has_arc(u, v):
            code |= 1 << b
    return code


def iter_digraphs(n: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, Digraph]]:
    total = 1 << (n * (n - 1))
    stop = total if stop is None else min(stop, total)
    for code in range(start, stop):
        yield code, digraph_from_code(n, code)


def enumerate_digraphs(n: int, visit: Callable[[int, Digraph], Any] | None = None) -> int:
    """Visit every labelled digraph on ``n <= 5`` vertices once, in encoding order."""
    if not 1 <= n <= EXHAUSTIVE_MAX_ORDER:
        raise GraphError(f"exhaustive enumeration supports 1 <= n <= {EXHAUSTIVE_MAX_ORDER}, got {n}")
    count = 0
    for code, D in iter_digraphs(n):
        if visit is not None:
            visit(code, D)
        count += 1
    return count


def random_strong_digraph(n: int, arc_probability: float, seed: int | random.Random = 0) -> Digraph:
    """Independent arcs with the given probability, resampled until strong."""
    if not 0 < arc_probability < 1:
        raise GraphError(f"arc probability must lie in (0, 1), got {arc_probability}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    pairs = arc_pairs(n)
    for _ in range(MAX_REJECTIONS):
        D = Digraph(n, [p for p in pairs if rng.random() < arc_probability])
        if is_strong(D):
            return D
    raise GraphError(
        f"{MAX_REJECTIONS} consecutive non-strong samples at n={n}, p={arc_probability}; "
        "use a higher arc probability"
    )


def _sample_rng(seed: int, index: int) -> random.Random:
    return random.Random((seed << 32) | index)


# -- judging one digraph ----------------------------------------------------


class Verdict(enum.Enum):
    OUTSIDE = "outside"  # hypothesis fails
    CONCLUSION = "conclusion"  # has a cycle of length n - 1
    EXTREMAL = "extremal"  # no C_{n-1}, known extremal digraph
    COUNTEREXAMPLE = "counterexample"  # no C_{n-1}, not excluded


def _is_directed_cycle(D: Digraph) -> bool:
    return all(D._out[v].bit_count() == 1 and D._in[v].bit_count() == 1 for v in D.vertices)


def hypothesis(theorem: Theorem, D: Digraph) -> bool:
    if not is_strong(D):
        return False
    if theorem is Theorem.T1:
        return min_semidegree(D).value >= 2 and satisfies(D, Condition.STAR)
    if theorem is Theorem.T2:
        return not _is_directed_cycle(D) and satisfies(D, Condition.STAR_STAR)
    return satisfies(D, Condition.THEOREM_C)


def _allowed_exception(theorem: Theorem, D: Digraph) -> str | None:
    if D.n % 2:
        return None
    cls = recognize(D)
    if not cls.is_balanced:
        return None
    if cls.tag is ExtremalTag.COMPLETE_BIPARTITE:
        return cls.tag.value
    if cls.tag is ExtremalTag.MINUS_ARC and theorem is Theorem.T1:
        return cls.tag.value
    return None


def judge(theorem: Theorem, D: Digraph, timeout: float | None = oracle.DEFAULT_TIMEOUT) -> Verdict:
    if D.n < 4:
        raise GraphError(f"the theorems concern n >= 4, got {D.n}")
    if not hypothesis(theorem, D):
        return Verdict.OUTSIDE
    if oracle.has_cycle_of_length(D, D.n - 1, timeout) is not None:
        return Verdict.CONCLUSION
    if theorem is not Theorem.CONJECTURE and _allowed_exception(theorem, D):
        return Verdict.EXTREMAL
    return Verdict.COUNTEREXAMPLE


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A digraph without ``C_{n-1}`` that passed the hypothesis filter."""

    encoding: int
    n: int
    arcs: tuple[tuple[int, int], ...]
    recognized: str

    def digraph(self) -> Digraph:
        return Digraph(self.n, self.arcs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "encoding": self.encoding,
            "n": self.n,
            "arcs": [list(a) for a in self.arcs],
            "recognized": self.recognized,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Witness:
        return cls(
            int(data["encoding"]),
            int(data["n"]),
            tuple((int(u), int(v)) for u, v in data["arcs"]),
            str(data["recognized"]),
        )

    @classmethod
    def of(cls, D: Digraph) -> Witness:
        return cls(code_of(D), D.n, tuple(D.arcs()), recognize(D).tag.value)


@dataclass
class VerificationReport:
    theorem: Theorem
    n: int
    mode: Mode
    samples: int | None = None
    seed: int | None = None
    arc_probabilities: tuple[float, ...] | None = None
    digraphs_considered: int = 0
    hypothesis_satisfying: int = 0
    conclusion_holds: int = 0
    extremal_hits: int = 0
    # For the conjecture explorer these are candidate exceptional digraphs.
    counterexamples: list[Witness] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def witness_key(self) -> str:
        return "candidates" if self.theorem is Theorem.CONJECTURE else "counterexamples"

    @property
    def found_counterexample(self) -> bool:
        return self.theorem is not Theorem.CONJECTURE and bool(self.counterexamples)

    def partition_holds(self) -> bool:
        return (
            self.conclusion_holds + self.extremal_hits + len(self.counterexamples)
            == self.hypothesis_satisfying
        )

    def merge(self, other: VerificationReport) -> None:
        self.digraphs_considered += other.digraphs_considered
        self.hypothesis_satisfying += other.hypothesis_satisfying
        self.conclusion_holds += other.conclusion_holds
        self.extremal_hits += other.extremal_hits
        self.counterexamples = sorted(
            self.counterexamples + other.counterexamples, key=lambda w: w.encoding
        )

    def to_dict(self, include_elapsed: bool = False) -> dict[str, Any]:
        mode: dict[str, Any] = {"kind": self.mode.value}
        if self.mode is Mode.SAMPLED:
            mode.update(
                count=self.samples, seed=self.seed, arc_probabilities=list(self.arc_probabilities or ())
            )
        data = {
            "theorem": self.theorem.value,
            "n": self.n,
            "mode": mode,
            "digraphs_considered": self.digraphs_considered,
            "hypothesis_satisfying": self.hypothesis_satisfying,
            "conclusion_holds": self.conclusion_holds,
            "extremal_hits": self.extremal_hits,
            self.witness_key: [w.to_dict() for w in self.counterexamples],
        }
        if include_elapsed:
            data["elapsed"] = round(self.elapsed, 3)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerificationReport:
        theorem = Theorem(data["theorem"])
        mode = data["mode"]
        key = "candidates" if theorem is Theorem.CONJECTURE else "counterexamples"
        probs = mode.get("arc_probabilities")
        return cls(
            theorem=theorem,
            n=int(data["n"]),
            mode=Mode(mode["kind"]),
            samples=mode.get("count"),
            seed=mode.get("seed"),
            arc_probabilities=tuple(probs) if probs is not None else None,
            digraphs_considered=int(data["digraphs_considered"]),
            hypothesis_satisfying=int(data["hypothesis_satisfying"]),
            conclusion_holds=int(data["conclusion_holds"]),
            extremal_hits=int(data["extremal_hits"]),
            counterexamples=[Witness.from_dict(w) for w in data[key]],
            elapsed=float(data.get("elapsed", 0.0)),
        )


def _tally(report: VerificationReport, D: Digraph, timeout: float | None) -> None:
    report.digraphs_considered += 1
    verdict = judge(report.theorem, D, timeout)
    if verdict is Verdict.OUTSIDE:
        return
    report.hypothesis_satisfying += 1
    if verdict is Verdict.CONCLUSION:
        report.conclusion_holds += 1
    elif verdict is Verdict.EXTREMAL:
        report.extremal_hits += 1
    else:
        report.counterexamples.append(Witness.of(D))


def _exhaustive_chunk(args: tuple[Theorem, int, int, int, float | None]) -> VerificationReport:
    theorem, n, start, stop, timeout = args
    report = VerificationReport(theorem, n, Mode.EXHAUSTIVE)
    for _, D in iter_digraphs(n, start, stop):
        _tally(report, D, timeout)
    return report


def _sampled_chunk(
    args: tuple[Theorem, int, int, int, int, tuple[float, ...], float | None]
) -> VerificationReport:
    theorem, n, seed, start, stop, sweep, timeout = args
    report = VerificationReport(theorem, n, Mode.SAMPLED)
    for i in range(start, stop):
        D = random_strong_digraph(n, sweep[i % len(sweep)], _sample_rng(seed, i))
        _tally(report, D, timeout)
    return report


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    step = -(-total // parts)
    return [(a, min(a + step, total)) for a in range(0, total, step)]


def verify(
    theorem: Theorem,
    n: int,
    mode: Mode = Mode.EXHAUSTIVE,
    samples: int = 100_000,
    seed: int = 0,
    sweep: Sequence[float] = DEFAULT_SWEEP,
    jobs: int = 1,
    timeout: float | None = oracle.DEFAULT_TIMEOUT,
) -> VerificationReport:
    """Run one campaign; results do not depend on ``jobs``."""
    if n < 4:
        raise GraphError(f"the theorems concern n >= 4, got {n}")
    began = time.perf_counter()
    sweep = tuple(sweep)
    if mode is Mode.EXHAUSTIVE:
        if n > EXHAUSTIVE_MAX_ORDER:
            raise GraphError(f"exhaustive mode supports n <= {EXHAUSTIVE_MAX_ORDER}, got {n}")
        total = 1 << (n * (n - 1))
        tasks = [(theorem, n, a, b, timeout) for a, b in _split(total, max(jobs, 1) * 4)]
        worker: Callable = _exhaustive_chunk
        report = VerificationReport(theorem, n, mode)
    else:
        if samples < 1:
            raise GraphError("sampled mode needs at least one sample")
        tasks = [(theorem, n, seed, a, b, sweep, timeout) for a, b in _split(samples, max(jobs, 1) * 4)]
        worker = _sampled_chunk
        report = VerificationReport(theorem, n, mode, samples=samples, seed=seed, arc_probabilities=sweep)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(worker, tasks))
    else:
        parts = [worker(t) for t in tasks]
    for part in parts:
        report.merge(part)
    report.elapsed = time.perf_counter() - began
    return report


def verify_theorem_1(n: int, mode: Mode = Mode.EXHAUSTIVE, **kwargs: Any) -> VerificationReport:
    """Strong, minimum semi-degree >= 2 and (*) imply ``C_{n-1}`` or balanced ``K*`` (minus an arc)."""
    return verify(Theorem.T1, n, mode, **kwargs)


def verify_theorem_2(n: int, mode: Mode = Mode.EXHAUSTIVE, **kwargs: Any) -> VerificationReport:
    """Strong, not a directed ``n``-cycle and (**) imply ``C_{n-1}`` or balanced ``K*``."""
    return verify(Theorem.T2, n, mode, **kwargs)


def explore_conjecture(n: int, mode: Mode = Mode.EXHAUSTIVE, **kwargs: Any) -> VerificationReport:
    """List every strong digraph meeting Theorem C's condition that lacks ``C_{n-1}``."""
    return verify(Theorem.CONJECTURE, n, mode, **kwargs)


def _fixture_name(theorem: Theorem, w: Witness) -> str:
    return f"{theorem.value}_n{w.n}_{w.encoding}.edgelist"


def write_fixtures(report: VerificationReport, directory: str | Path) -> list[Path]:
    """One edge-list file per listed digraph; returns the paths written."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for w in report.counterexamples:
        path = directory / _fixture_name(report.theorem, w)
        note = f"{report.theorem.value} n={w.n} encoding={w.encoding} recognized={w.recognized}"
        path.write_text(format_edgelist(w.digraph(), comment=note), encoding="utf-8")
        paths.append(path)
    return paths


def read_fixtures(directory: str | Path, theorem: Theorem, n: int) -> list[Digraph]:
    """Digraphs written by :func:`write_fixtures`, in encoding order."""
    paths = sorted(
        Path(directory).glob(f"{theorem.value}_n{n}_*.edgelist"),
        key=lambda p: int(p.stem.rsplit("_", 1)[1]),
    )
    return [read_edgelist(p) for p in paths]
