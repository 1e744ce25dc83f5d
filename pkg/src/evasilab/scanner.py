"""Sweeps of the property space, with duality reductions and checkpoints.

Candidate properties are ClassId bitmasks enumerated numerically.  A
property, its set-complement, its image under graph complementation, and
the composition of the two are equally evasive, so by default only the
numerically smallest member of each such orbit is solved and findings are
expanded back through both dualities before reporting.

The per-candidate work is a vectorised bottom-up pass over the canonical
position table that evaluates a whole batch of properties at once: a
position is winning for Bob iff its completion set is one-sided or some
unknown edge has both answers winning.  Findings (nontrivial nonevasive
properties) are rare and are each re-verified with the scalar solver plus
a full strategy replay before they are reported.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .positions import PositionTable, build_position_table
from .properties import Property, is_complement_closed
from .solver import extract_strategy, replay_verify, solve

CHECKPOINT_VERSION = 1

MODE_FULL = "full"
MODE_COMPLEMENT_CLOSED = "complement-closed"
MODE_SAMPLE = "sample"


class CheckpointError(ValueError):
    """Raised for unusable checkpoint files (corrupt, wrong version, wrong scan)."""


@dataclass
class ScanCounters:
    examined: int = 0
    skipped_set_dual: int = 0
    skipped_graph_dual: int = 0
    pruned_parity: int = 0
    evasive: int = 0
    nonevasive: int = 0

    def add(self, other: "ScanCounters") -> None:
        self.examined += other.examined
        self.skipped_set_dual += other.skipped_set_dual
        self.skipped_graph_dual += other.skipped_graph_dual
        self.pruned_parity += other.pruned_parity
        self.evasive += other.evasive
        self.nonevasive += other.nonevasive

    @property
    def processed(self) -> int:
        return self.examined + self.skipped_set_dual + self.skipped_graph_dual + self.pruned_parity

    def as_dict(self) -> dict:
        return {
            "examined": self.examined,
            "skipped_set_dual": self.skipped_set_dual,
            "skipped_graph_dual": self.skipped_graph_dual,
            "pruned_parity": self.pruned_parity,
            "evasive": self.evasive,
            "nonevasive": self.nonevasive,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScanCounters":
        return cls(**{k: int(d[k]) for k in cls().as_dict()})


@dataclass(frozen=True)
class Finding:
    """A nontrivial nonevasive property, re-verified by a direct solve and replay."""

    classes: tuple[int, ...]
    depth: int
    complement_closed: bool
    replay_ok: bool


@dataclass(frozen=True)
class ScanReport:
    n: int
    mode: str
    counters: ScanCounters
    findings: tuple[Finding, ...]
    candidates_total: int
    complete: bool
    next_index: int
    wall_time: float = field(compare=False)


@dataclass(frozen=True)
class ScanOptions:
    """Knobs for a sweep; the defaults reproduce the trusted configuration."""

    use_dualities: bool = True
    parity_prune: bool = False
    checkpoint_path: str | None = None
    checkpoint_every: int = 1 << 20
    checkpoint_seconds: float = 60.0
    resume: bool = False
    workers: int | None = None  # None -> EVASILAB_WORKERS env var, else 1
    batch_size: int = 8192
    limit: int | None = None


def _effective_workers(options: ScanOptions) -> int:
    if options.workers is not None:
        return max(1, options.workers)
    env = os.environ.get("EVASILAB_WORKERS", "").strip()
    return max(1, int(env)) if env else 1


class BatchEvaluator:
    """Evaluates Bob-wins for a batch of property masks in one bottom-up pass."""

    def __init__(self, tbl: PositionTable) -> None:
        total = len(tbl)
        self.total = total
        self.reach = np.array(tbl.reachable, dtype=np.int64)
        self.single_unknown = np.array([u == 1 for u in tbl.unknown_count])
        self.pairs_a: list[np.ndarray | None] = [None] * total
        self.pairs_b: list[np.ndarray | None] = [None] * total
        for i in range(total):
            if tbl.unknown_count[i] > 1:
                self.pairs_a[i] = np.array([a for _, a, _ in tbl.children[i]], dtype=np.int64)
                self.pairs_b[i] = np.array([b for _, _, b in tbl.children[i]], dtype=np.int64)

    def bob_wins(self, masks: np.ndarray) -> np.ndarray:
        """Boolean array: True where the property is nonevasive."""
        win = np.zeros((self.total, len(masks)), dtype=bool)
        reach = self.reach
        for i in range(self.total - 1, -1, -1):  # ascending unknown count
            hit = masks & reach[i]
            decided = (hit == reach[i]) | (hit == 0)
            if self.single_unknown[i]:
                win[i] = decided
            else:
                win[i] = decided | (win[self.pairs_a[i]] & win[self.pairs_b[i]]).any(axis=0)
        return win[0]


def _graph_dual_images(masks: np.ndarray, complement_class: tuple[int, ...]) -> np.ndarray:
    out = np.zeros_like(masks)
    for c, cc in enumerate(complement_class):
        out |= ((masks >> c) & 1) << cc
    return out


def _parity_bits(masks: np.ndarray, odd_orbit_mask: int) -> np.ndarray:
    x = masks & np.int64(odd_orbit_mask)
    for shift in (32, 16, 8, 4, 2, 1):
        x = x ^ (x >> shift)
    return (x & 1).astype(bool)


@dataclass(frozen=True)
class _ModeSpec:
    """Resolved candidate space of one sweep."""

    name: str
    n: int
    total: int
    orbit_masks: tuple[int, ...] | None = None  # complement-closed mode
    sample_masks: tuple[int, ...] | None = None  # sample mode
    seed: int | None = None

    def candidate_masks(self, lo: int, hi: int) -> np.ndarray:
        if self.name == MODE_FULL:
            return np.arange(lo, hi, dtype=np.int64)
        if self.name == MODE_COMPLEMENT_CLOSED:
            idx = np.arange(lo, hi, dtype=np.int64)
            masks = np.zeros_like(idx)
            for b, om in enumerate(self.orbit_masks):
                masks |= ((idx >> b) & 1) * np.int64(om)
            return masks
        return np.array(self.sample_masks[lo:hi], dtype=np.int64)


def _scan_range(spec: _ModeSpec, lo: int, hi: int, options: ScanOptions) -> tuple[ScanCounters, list[int]]:
    """Process candidates [lo, hi); returns counters and raw nonevasive nontrivial masks."""
    tbl = build_position_table(spec.n)
    ct = tbl.class_table
    evaluator = _evaluator_for(spec.n)
    counters = ScanCounters()
    raw: list[int] = []
    full = np.int64((1 << ct.num_classes) - 1)
    odd_orbit_mask = 0
    for c, size in enumerate(ct.orbit_size):
        if size & 1:
            odd_orbit_mask |= 1 << c

    for start in range(lo, hi, options.batch_size):
        masks = spec.candidate_masks(start, min(start + options.batch_size, hi))
        keep = np.ones(len(masks), dtype=bool)
        if options.use_dualities:
            set_dual = full ^ masks
            graph_dual = _graph_dual_images(masks, ct.complement_class)
            both = full ^ graph_dual
            skip_set = masks > set_dual
            skip_graph = ~skip_set & ((masks > graph_dual) | (masks > both))
            counters.skipped_set_dual += int(skip_set.sum())
            counters.skipped_graph_dual += int(skip_graph.sum())
            keep &= ~(skip_set | skip_graph)
        if options.parity_prune:
            odd = _parity_bits(masks, odd_orbit_mask) & keep
            counters.pruned_parity += int(odd.sum())
            keep &= ~odd
        survivors = masks[keep]
        counters.examined += len(survivors)
        if len(survivors) == 0:
            continue
        wins = evaluator.bob_wins(survivors)
        counters.nonevasive += int(wins.sum())
        counters.evasive += int(len(survivors) - wins.sum())
        if wins.any():
            nontrivial = (survivors != 0) & (survivors != full)
            for mask in survivors[wins & nontrivial]:
                raw.append(int(mask))
    return counters, raw


_EVALUATORS: dict[int, BatchEvaluator] = {}


def _evaluator_for(n: int) -> BatchEvaluator:
    if n not in _EVALUATORS:
        _EVALUATORS[n] = BatchEvaluator(build_position_table(n))
    return _EVALUATORS[n]


def _dual_orbit(mask: int, n: int) -> set[int]:
    full = (1 << len(build_position_table(n).class_table.complement_class)) - 1
    comp = build_position_table(n).class_table.complement_class

    def image(m: int) -> int:
        out = 0
        for c in range(len(comp)):
            if m >> c & 1:
                out |= 1 << comp[c]
        return out

    return {mask, full ^ mask, image(mask), full ^ image(mask)}


def _finalize_findings(raw_masks, n: int) -> tuple[Finding, ...]:
    tbl = build_position_table(n)
    full = (1 << tbl.class_table.num_classes) - 1
    expanded: set[int] = set()
    for mask in raw_masks:
        expanded |= _dual_orbit(mask, n)
    expanded.discard(0)
    expanded.discard(full)
    findings = []
    for mask in sorted(expanded):
        prop = Property(n, mask)
        report = solve(prop, tbl)
        if report.evasive:
            raise RuntimeError(f"finding {prop.class_ids()} failed its re-solve")
        audit = replay_verify(extract_strategy(prop, tbl), prop, tbl)
        findings.append(
            Finding(
                classes=prop.class_ids(),
                depth=report.depth,
                complement_closed=is_complement_closed(prop),
                replay_ok=audit.ok,
            )
        )
    findings.sort(key=lambda f: (len(f.classes), f.classes))
    return tuple(findings)


def _write_checkpoint(path: str, spec: _ModeSpec, next_index: int, counters: ScanCounters,
                      raw_masks: list[int]) -> None:
    tbl = build_position_table(spec.n)
    k = tbl.class_table.num_classes
    doc = {
        "version": CHECKPOINT_VERSION,
        "n": spec.n,
        "mode": spec.name,
        "next": next_index,
        "counters": counters.as_dict(),
        "findings": [[c for c in range(k) if m >> c & 1] for m in sorted(set(raw_masks))],
    }
    if spec.name == MODE_SAMPLE:
        doc["seed"] = spec.seed
        doc["count"] = spec.total
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)


def _load_checkpoint(path: str, spec: _ModeSpec) -> tuple[int, ScanCounters, list[int]]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if doc.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint version {doc.get('version')!r} != {CHECKPOINT_VERSION}")
    if doc.get("n") != spec.n or doc.get("mode") != spec.name:
        raise CheckpointError(
            f"checkpoint is for n={doc.get('n')} mode={doc.get('mode')!r}, "
            f"expected n={spec.n} mode={spec.name!r}"
        )
    if spec.name == MODE_SAMPLE and (doc.get("seed") != spec.seed or doc.get("count") != spec.total):
        raise CheckpointError("checkpoint seed/count do not match this sample scan")
    counters = ScanCounters.from_dict(doc["counters"])
    raw = [sum(1 << c for c in ids) for ids in doc["findings"]]
    next_index = int(doc["next"])
    if not 0 <= next_index <= spec.total:
        raise CheckpointError(f"checkpoint next={next_index} out of range 0..{spec.total}")
    return next_index, counters, raw


def _run_scan(spec: _ModeSpec, options: ScanOptions) -> ScanReport:
    t0 = time.monotonic()
    start_index = 0
    counters = ScanCounters()
    raw_masks: list[int] = []
    if options.resume:
        if not options.checkpoint_path:
            raise CheckpointError("resume requested without a checkpoint path")
        start_index, counters, raw_masks = _load_checkpoint(options.checkpoint_path, spec)

    end_index = spec.total
    if options.limit is not None:
        end_index = min(end_index, start_index + options.limit)

    workers = _effective_workers(options)
    pool = None
    if workers > 1:
        import multiprocessing

        pool = ProcessPoolExecutor(max_workers=workers, mp_context=multiprocessing.get_context("fork"))
    try:
        next_index = start_index
        last_ckpt_index = start_index
        last_ckpt_time = time.monotonic()
        while next_index < end_index:
            chunk_hi = min(next_index + options.checkpoint_every, end_index)
            if pool is None:
                got, masks = _scan_range(spec, next_index, chunk_hi, options)
                counters.add(got)
                raw_masks.extend(masks)
            else:
                bounds = np.linspace(next_index, chunk_hi, workers + 1, dtype=np.int64)
                futures = [
                    pool.submit(_scan_range, spec, int(lo), int(hi), options)
                    for lo, hi in zip(bounds[:-1], bounds[1:])
                    if lo < hi
                ]
                for fut in futures:  # merge in shard order; sums are order-independent anyway
                    got, masks = fut.result()
                    counters.add(got)
                    raw_masks.extend(masks)
            next_index = chunk_hi
            if options.checkpoint_path and (
                next_index - last_ckpt_index >= options.checkpoint_every
                or time.monotonic() - last_ckpt_time >= options.checkpoint_seconds
                or next_index == end_index
            ):
                _write_checkpoint(options.checkpoint_path, spec, next_index, counters, raw_masks)
                last_ckpt_index = next_index
                last_ckpt_time = time.monotonic()
    finally:
        if pool is not None:
            pool.shutdown()

    return ScanReport(
        n=spec.n,
        mode=spec.name,
        counters=counters,
        findings=_finalize_findings(raw_masks, spec.n),
        candidates_total=spec.total,
        complete=next_index >= spec.total,
        next_index=next_index,
        wall_time=time.monotonic() - t0,
    )


def _check_scan_n(n: int) -> None:
    if not 2 <= n <= 5:
        raise ValueError(f"property sweeps are supported for n in 2..5, got {n}")


def scan_full(n: int, options: ScanOptions = ScanOptions()) -> ScanReport:
    """Sweep all 2^|classes| candidate properties of n-vertex graphs."""
    _check_scan_n(n)
    k = build_position_table(n).class_table.num_classes
    spec = _ModeSpec(name=MODE_FULL, n=n, total=1 << k)
    return _run_scan(spec, options)


def scan_complement_closed(n: int = 5, options: ScanOptions = ScanOptions()) -> ScanReport:
    """Sweep the complement-closed subfamily: subsets of complement orbits of classes."""
    if n != 5:
        raise ValueError("the complement-closed sweep is defined for n=5")
    ct = build_position_table(n).class_table
    orbit_masks = []
    for c in range(ct.num_classes):
        cc = ct.complement_class[c]
        if cc == c:
            orbit_masks.append(1 << c)
        elif c < cc:
            orbit_masks.append((1 << c) | (1 << cc))
    spec = _ModeSpec(
        name=MODE_COMPLEMENT_CLOSED,
        n=n,
        total=1 << len(orbit_masks),
        orbit_masks=tuple(orbit_masks),
    )
    return _run_scan(spec, options)


def scan_sample(n: int, count: int, seed: int, options: ScanOptions = ScanOptions(),
                exhaustive_fallback: bool = False) -> ScanReport:
    """Solve `count` seed-deterministic nontrivial property masks.

    With exhaustive_fallback=True and count at least the size of the full
    candidate space, the whole space is enumerated instead of sampled and
    nothing is skipped.
    """
    import random

    _check_scan_n(n)
    if count < 0:
        raise ValueError("count must be nonnegative")
    k = build_position_table(n).class_table.num_classes
    no_skip = replace(options, use_dualities=False, parity_prune=False)
    if exhaustive_fallback and count >= 1 << k:
        spec = _ModeSpec(name=MODE_SAMPLE, n=n, total=1 << k,
                         sample_masks=tuple(range(1 << k)), seed=seed)
        return _run_scan(spec, no_skip)
    rng = random.Random(f"scan-sample:{n}:{seed}")
    full = (1 << k) - 1
    masks = []
    for _ in range(count):
        mask = rng.getrandbits(k)
        while mask in (0, full):
            mask = rng.getrandbits(k)
        masks.append(mask)
    spec = _ModeSpec(name=MODE_SAMPLE, n=n, total=count, sample_masks=tuple(masks), seed=seed)
    return _run_scan(spec, no_skip)
