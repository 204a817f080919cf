"""Monte Carlo experiment runner: sweeps, independence test, curve export.

Determinism contract: every trial owns a private generator seeded by
(master_seed XOR global_trial_index), where the global index is
point_index * trials_per_point + trial_index.  Aggregation is integer
counting, so the output CSV is byte-identical for any worker count.

The sweep CSV schema is fixed:

    snr_db,trials,word_errors,frac_failures,ml_errors,wer,wer_ci_lo,wer_ci_hi,ser

For the q-ary symmetric channel the first column carries the flip
probability instead of an SNR; the header text stays fixed.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.stats import beta as _beta_dist

from . import codes as _codes
from .channel import PskAwgnScheme, QarySymmetricScheme, snr_to_noise
from .codes import Code, load_code
from .decoder import codebook, lp_decode
from .simplex import SimplexError

__all__ = [
    "ExperimentConfig",
    "PointStats",
    "SweepResult",
    "IndependenceReport",
    "parse_config_file",
    "config_from_mapping",
    "run_sweep",
    "run_independence_test",
    "emit_curves",
    "collect_fractional_failures",
    "binomial_ci",
]

MASK64 = (1 << 64) - 1
SEED_STRIDE = 0x9E3779B9  # offset between the two independence-test streams
CONFIG_KEYS = (
    "code", "scheme", "snr_db", "eps", "trials", "seed", "mode", "policy",
    "workers", "out",
)
_MODES = ("float", "rational", "float-with-rational-recheck")
_POLICIES = ("all-zero", "random-codeword")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: code, channel, grid, trial budget, seeding, output."""

    code: str
    scheme: str = "psk"
    snr_db: tuple = ()
    eps: tuple = ()
    trials: int = 1000
    seed: int = 1
    mode: str = "float"
    policy: str = "all-zero"
    workers: int = 1
    out: str = "sweep.csv"

    def __post_init__(self):
        if self.scheme not in ("psk", "qsc"):
            raise ValueError(f"scheme must be psk or qsc, got {self.scheme!r}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.policy not in _POLICIES:
            raise ValueError(f"policy must be one of {_POLICIES}, got {self.policy!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not self.grid:
            raise ValueError("grid is empty: set snr_db (psk) or eps (qsc)")

    @property
    def grid(self) -> tuple:
        return self.snr_db if self.scheme == "psk" else self.eps


def _parse_grid(text: str) -> tuple:
    parts = [p for chunk in str(text).split(",") for p in chunk.split()]
    return tuple(float(p) for p in parts if p)


def parse_config_file(path) -> dict:
    """Read a flat key = value config file into a string mapping."""
    raw = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, val = line.split("=", 1)
            key = key.strip()
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in raw:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            raw[key] = val.strip()
    return raw


def config_from_mapping(raw: dict) -> ExperimentConfig:
    """Build a validated config from string values (file and/or CLI)."""
    known = dict(raw)
    unknown = set(known) - set(CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "code" not in known:
        raise ValueError("config needs a code path (key 'code')")
    kwargs = {"code": known["code"]}
    for key in ("scheme", "mode", "policy", "out"):
        if key in known:
            kwargs[key] = str(known[key])
    for key in ("trials", "seed", "workers"):
        if key in known:
            kwargs[key] = int(known[key])
    if "snr_db" in known:
        kwargs["snr_db"] = _parse_grid(known["snr_db"])
    if "eps" in known:
        kwargs["eps"] = _parse_grid(known["eps"])
    return ExperimentConfig(**kwargs)


@dataclass(frozen=True)
class PointStats:
    """Aggregated counts for one grid point."""

    grid_value: float
    n: int
    trials: int
    word_errors: int
    frac_failures: int
    ml_errors: int
    symbol_errors: int
    aborts: int
    clipped: int
    decode_seconds: float

    @property
    def wer(self) -> float:
        return self.word_errors / self.trials

    @property
    def ser(self) -> float:
        """Per-symbol error rate: wrong positions over all sent positions."""
        return self.symbol_errors / (self.trials * self.n)

    @property
    def successes(self) -> int:
        return self.trials - self.word_errors - self.aborts


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    points: tuple
    csv_path: str | None

    @property
    def total_aborts(self) -> int:
        return sum(p.aborts for p in self.points)

    @property
    def ok(self) -> bool:
        return self.total_aborts == 0


def binomial_ci(k: int, n: int, conf: float = 0.95) -> tuple:
    """95% CI for a binomial proportion.

    Normal approximation for k >= 10 events; Clopper-Pearson below that,
    where the normal interval is unusable.
    """
    if not 0 <= k <= n or n <= 0:
        raise ValueError("need 0 <= k <= n, n > 0")
    alpha = 1.0 - conf
    p = k / n
    if k >= 10 and n - k >= 10:
        half = 1.959963984540054 * (p * (1.0 - p) / n) ** 0.5
        return (max(p - half, 0.0), min(p + half, 1.0))
    lo = 0.0 if k == 0 else float(_beta_dist.ppf(alpha / 2.0, k, n - k + 1))
    hi = 1.0 if k == n else float(_beta_dist.ppf(1.0 - alpha / 2.0, k + 1, n - k))
    return (lo, hi)


def _code_rate(code: Code) -> float:
    if code.k_hint is not None:
        return code.k_hint / code.n
    k = round(np.log(len(codebook(code))) / np.log(code.ring.q))
    return k / code.n


def _make_scheme(code: Code, scheme: str, grid_value: float):
    if scheme == "psk":
        e_ch, n0 = snr_to_noise(grid_value, _code_rate(code))
        return PskAwgnScheme(code.ring.q, e_ch, n0)
    return QarySymmetricScheme(code.ring.q, grid_value)


def _decode_mode(mode: str) -> str:
    return "recheck" if mode == "float-with-rational-recheck" else mode


def _symbol_errors(code: Code, result, transmitted, tol: float = 1e-6) -> int:
    """Per-position error count; a fractional position always counts."""
    if result.outcome == "integral":
        return int(np.sum(result.word != transmitted))
    q = code.ring.q
    f = [float(v) for v in result.f]
    errors = 0
    for i in range(code.n):
        row = f[i * (q - 1): (i + 1) * (q - 1)]
        ints = [round(v) for v in row]
        if any(abs(v - r) > tol for v, r in zip(row, ints)) or sum(ints) > 1:
            errors += 1
            continue
        sym = ints.index(1) + 1 if 1 in ints else 0
        if sym != transmitted[i]:
            errors += 1
    return errors


def _pick_word(code: Code, rng, policy: str, book) -> np.ndarray:
    if policy == "all-zero":
        return np.zeros(code.n, dtype=np.int64)
    idx = int(rng.random() * len(book))
    return book[min(idx, len(book) - 1)]


def run_trials(code: Code, scheme, point_idx: int, trials_per_point: int,
               t_range, master_seed: int, policy: str, mode: str) -> dict:
    """Run a contiguous block of trials; returns integer counters.

    Pure given its arguments: each trial derives its generator from the
    master seed and its global index alone.
    """
    book = codebook(code) if policy == "random-codeword" else None
    counts = {"trials": 0, "word_errors": 0, "frac_failures": 0, "ml_errors": 0,
              "symbol_errors": 0, "aborts": 0, "clipped": 0, "decode_seconds": 0.0}
    dec_mode = _decode_mode(mode)
    for t in t_range:
        g = point_idx * trials_per_point + t
        rng = np.random.default_rng((master_seed ^ g) & MASK64)
        word = _pick_word(code, rng, policy, book)
        sent = scheme.modulate(word)
        received = scheme.transmit(sent, rng)
        lam = scheme.cost_vector(received)
        counts["trials"] += 1
        if lam.clipped:
            counts["clipped"] += 1
        t0 = time.perf_counter()
        try:
            result = lp_decode(code, lam, mode=dec_mode)
        except SimplexError:
            counts["aborts"] += 1
            counts["decode_seconds"] += time.perf_counter() - t0
            continue
        counts["decode_seconds"] += time.perf_counter() - t0
        if result.outcome == "fractional":
            counts["word_errors"] += 1
            counts["frac_failures"] += 1
        elif not np.array_equal(result.word, word):
            counts["word_errors"] += 1
            counts["ml_errors"] += 1
        counts["symbol_errors"] += _symbol_errors(code, result, word)
    return counts


_WORKER_CODE_MEMO: dict = {}


def _code_spec(code: Code):
    ring = code.ring
    if _codes._is_zq(ring):
        tables = None
    else:
        tables = (ring.add_table.tobytes(), ring.mul_table.tobytes())
    return (ring.q, tables, code.H.tobytes(), code.H.shape, code.k_hint)


def _code_from_spec(spec) -> Code:
    key = spec[:4]
    hit = _WORKER_CODE_MEMO.get(key)
    if hit is not None:
        return hit
    q, tables, h_bytes, shape, k_hint = spec
    if tables is None:
        ring = _codes.make_zq(q)
    else:
        add = np.frombuffer(tables[0], dtype=np.int64).reshape(q, q)
        mul = np.frombuffer(tables[1], dtype=np.int64).reshape(q, q)
        ring = _codes.RingSpec(q, add.copy(), mul.copy())
    H = np.frombuffer(h_bytes, dtype=np.int64).reshape(shape).copy()
    code = Code(ring=ring, H=H, k_hint=k_hint)
    _WORKER_CODE_MEMO[key] = code
    return code


def _worker_block(args) -> dict:
    (spec, scheme_kind, grid_value, point_idx, trials_per_point, lo, hi,
     master_seed, policy, mode) = args
    code = _code_from_spec(spec)
    scheme = _make_scheme(code, scheme_kind, grid_value)
    return run_trials(code, scheme, point_idx, trials_per_point, range(lo, hi),
                      master_seed, policy, mode)


def _merge(counts_list) -> dict:
    total = {"trials": 0, "word_errors": 0, "frac_failures": 0, "ml_errors": 0,
             "symbol_errors": 0, "aborts": 0, "clipped": 0, "decode_seconds": 0.0}
    for c in counts_list:
        for k in total:
            total[k] += c[k]
    return total


def _resolve_code(config: ExperimentConfig) -> Code:
    if config.code == "golay":
        from .codes import golay_code_path
        return load_code(golay_code_path())
    return load_code(config.code)


def _run_point(code: Code, config: ExperimentConfig, point_idx: int,
               grid_value: float, pool) -> PointStats:
    scheme = _make_scheme(code, config.scheme, grid_value)
    trials = config.trials
    if pool is None:
        counts = run_trials(code, scheme, point_idx, trials, range(trials),
                            config.seed, config.policy, config.mode)
    else:
        block = max(1, trials // (config.workers * 8))
        spec = _code_spec(code)
        jobs = []
        lo = 0
        while lo < trials:
            hi = min(lo + block, trials)
            jobs.append((spec, config.scheme, grid_value, point_idx, trials,
                         lo, hi, config.seed, config.policy, config.mode))
            lo = hi
        counts = _merge(pool.map(_worker_block, jobs))
    return PointStats(grid_value=grid_value, n=code.n, **counts)


def _csv_lines(points) -> list:
    lines = ["snr_db,trials,word_errors,frac_failures,ml_errors,"
             "wer,wer_ci_lo,wer_ci_hi,ser"]
    for p in points:
        lo, hi = binomial_ci(p.word_errors, p.trials)
        lines.append(
            f"{p.grid_value:g},{p.trials},{p.word_errors},{p.frac_failures},"
            f"{p.ml_errors},{p.wer:.10g},{lo:.10g},{hi:.10g},{p.ser:.10g}"
        )
    return lines


def run_sweep(config: ExperimentConfig, write_csv: bool = True) -> SweepResult:
    """Run the full grid; write the CSV; abort counts fail the run.

    The CSV is still written when aborts occur (the counts are real);
    the result's ok flag and the CLI exit code carry the failure.
    """
    code = _resolve_code(config)
    points = []
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for idx, gv in enumerate(config.grid):
                points.append(_run_point(code, config, idx, gv, pool))
    else:
        for idx, gv in enumerate(config.grid):
            points.append(_run_point(code, config, idx, gv, None))
    csv_path = None
    if write_csv and config.out:
        csv_path = config.out
        with open(csv_path, "w") as fh:
            fh.write("\n".join(_csv_lines(points)) + "\n")
    return SweepResult(config=config, points=tuple(points), csv_path=csv_path)


@dataclass(frozen=True)
class IndependenceReport:
    """Per-point comparison of the two transmitted-word policies."""

    grid: tuple
    zero_points: tuple
    random_points: tuple
    rows: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return all(r["overlap"] for r in self.rows)

    def lines(self) -> list:
        out = ["grid_value  wer_zero [ci]            wer_random [ci]          overlap"]
        for r in self.rows:
            out.append(
                f"{r['grid_value']:<11g} {r['wer_zero']:.5f} "
                f"[{r['ci_zero'][0]:.5f},{r['ci_zero'][1]:.5f}] "
                f"{r['wer_random']:.5f} "
                f"[{r['ci_random'][0]:.5f},{r['ci_random'][1]:.5f}] "
                f"{'yes' if r['overlap'] else 'NO'}"
            )
        out.append(f"overall: {'pass' if self.passed else 'FAIL'}")
        return out


def run_independence_test(config: ExperimentConfig) -> IndependenceReport:
    """Compare all-zero and random-codeword transmission empirically.

    Two full sweeps with independent seeds (the second stream offset by
    a fixed odd constant); the per-point report checks 95% CI overlap.
    Requires a channel scheme with a symmetry shift (tau); both built-in
    schemes have one.
    """
    code = _resolve_code(config)
    scheme = _make_scheme(code, config.scheme, config.grid[0])
    if not hasattr(scheme, "tau"):
        raise ValueError("scheme has no symmetry shift; independence test "
                         "is only meaningful under the symmetry condition")
    base = config.out or "independence"
    stem = base[:-4] if base.endswith(".csv") else base
    cfg_zero = replace(config, policy="all-zero", out=f"{stem}.zero.csv")
    cfg_rand = replace(config, policy="random-codeword", seed=(config.seed + SEED_STRIDE) & MASK64,
                       out=f"{stem}.random.csv")
    res_zero = run_sweep(cfg_zero)
    res_rand = run_sweep(cfg_rand)
    rows = []
    for pz, pr in zip(res_zero.points, res_rand.points):
        ci_z = binomial_ci(pz.word_errors, pz.trials)
        ci_r = binomial_ci(pr.word_errors, pr.trials)
        overlap = ci_z[0] <= ci_r[1] and ci_r[0] <= ci_z[1]
        rows.append({
            "grid_value": pz.grid_value,
            "wer_zero": pz.wer, "ci_zero": ci_z,
            "wer_random": pr.wer, "ci_random": ci_r,
            "overlap": overlap,
        })
    return IndependenceReport(grid=config.grid, zero_points=res_zero.points,
                              random_points=res_rand.points, rows=tuple(rows))


def emit_curves(config: ExperimentConfig, out_dir: str, n_hd: int = 11,
                t_hd: int = 2, run_simulation: bool = True) -> dict:
    """Write analytic and simulated curves on one SNR grid.

    Produces hard_decision.csv and union_bound.csv (snr_db,wer) plus,
    when run_simulation is set, the full sweep CSV lp_sim.csv.  PSK
    scheme only: the analytic references model the PSK hard decision.
    """
    import os

    from .analysis import hard_decision_curve, union_bound_curve, write_curve_csv
    from .codes import weight_enumerator

    if config.scheme != "psk":
        raise ValueError("analytic reference curves are defined for the psk scheme")
    code = _resolve_code(config)
    rate = _code_rate(code)
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    hd = hard_decision_curve(config.grid, n_hd, t_hd, rate, code.ring.q)
    paths["hard_decision"] = os.path.join(out_dir, "hard_decision.csv")
    write_curve_csv(paths["hard_decision"], hd)
    enum = weight_enumerator(code)
    ub = union_bound_curve(config.grid, enum, rate)
    paths["union_bound"] = os.path.join(out_dir, "union_bound.csv")
    write_curve_csv(paths["union_bound"], ub)
    if run_simulation:
        sim_cfg = replace(config, out=os.path.join(out_dir, "lp_sim.csv"))
        result = run_sweep(sim_cfg)
        paths["lp_sim"] = result.csv_path
        paths["_sim_result"] = result
    return paths


def collect_fractional_failures(code: Code, snr_db: float, master_seed: int,
                                want: int, max_trials: int = 100000,
                                scheme_kind: str = "psk"):
    """Gather decoding failures with exact rational optima for extraction.

    Transmits all-zero words at one SNR until `want` fractional failures
    are found.  Each returned entry is (global_index, cost_vector,
    DecodeResult) with the solution in exact arithmetic.
    """
    scheme = _make_scheme(code, scheme_kind, snr_db)
    found = []
    for t in range(max_trials):
        rng = np.random.default_rng((master_seed ^ t) & MASK64)
        word = np.zeros(code.n, dtype=np.int64)
        received = scheme.transmit(scheme.modulate(word), rng)
        lam = scheme.cost_vector(received)
        result = lp_decode(code, lam, mode="recheck")
        if result.outcome == "fractional":
            assert result.solution.mode == "rational"
            found.append((t, lam, result))
            if len(found) >= want:
                return found
    raise RuntimeError(
        f"only {len(found)} fractional failures in {max_trials} trials at "
        f"{snr_db} dB; lower the SNR"
    )
