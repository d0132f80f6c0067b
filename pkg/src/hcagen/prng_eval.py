"""Walsh spectra, correlation immunity, entropy and a small test battery.

Truth tables are indexed by the integer whose bits are the inputs. For an
elementary rule the input index is 4*x[i-1] + 2*x[i] + x[i+1], so the mask
0b101 selects the two outer neighbors.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .bits import BitSequence, bits_to_bytes
from .ca import Rule

MAX_WALSH_ARITY = 20

# FIPS 140-2 (change notice 1) bands for a 20000-bit block
FIPS = {
    "block_bits": 20000,
    "monobit": (9725, 10275),
    "poker": (2.16, 46.17),
    "runs": {1: (2315, 2685), 2: (1114, 1386), 3: (527, 723),
             4: (240, 384), 5: (103, 209), 6: (103, 209)},
    "long_run": 26,
}

# chi-square on 256 byte bins (255 dof): 1% and 99% quantiles
CHI2_BYTES = (205.42, 310.46)
CHI2_MIN_BYTES = 1280
SERIAL_MAX_ABS = 0.05
SERIAL_MIN_BITS = 1000
ENTROPY_WINDOW = 4
ENTROPY_MAX_DEFICIT = 0.1
MONTE_CARLO_POINTS = 100_000
MONTE_CARLO_COORD_BITS = 24
MONTE_CARLO_TOLERANCE = 0.05


# -- boolean functions -----------------------------------------------------

@dataclass(frozen=True)
class BooleanFunction:
    arity: int
    truth_table: BitSequence

    def __post_init__(self):
        table = tuple(int(b) for b in self.truth_table)
        if len(table) != 1 << self.arity:
            raise ValueError(f"truth table of length {len(table)} does not match arity {self.arity}")
        object.__setattr__(self, "truth_table", table)

    @classmethod
    def from_table(cls, table: Sequence[int]) -> "BooleanFunction":
        n = len(table)
        if n == 0 or n & (n - 1):
            raise ValueError("truth table length must be a power of two")
        return cls(n.bit_length() - 1, tuple(table))

    @property
    def weight(self) -> int:
        return sum(self.truth_table)


def rule_function(rule: Rule | int) -> BooleanFunction:
    rule = rule if isinstance(rule, Rule) else Rule(rule)
    return BooleanFunction(3, rule.table)


@dataclass(frozen=True)
class WalshSpectrum:
    values: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.values).bit_length() - 1

    def __getitem__(self, mask: int) -> int:
        return self.values[mask]

    def abs_multiset(self) -> list[int]:
        return sorted(abs(v) for v in self.values)


def walsh_spectrum(f: BooleanFunction) -> WalshSpectrum:
    """W(w) = sum over x of (-1)^(f(x) xor w.x), by the fast butterfly."""
    if f.arity > MAX_WALSH_ARITY:
        raise ValueError(f"arity {f.arity} exceeds the supported {MAX_WALSH_ARITY}")
    a = 1 - 2 * np.asarray(f.truth_table, dtype=np.int64)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1)
        h *= 2
    return WalshSpectrum(tuple(int(v) for v in a.reshape(-1)))


def _masks_up_to_weight(arity: int, order: int) -> list[int]:
    return [w for w in range(1, 1 << arity) if w.bit_count() <= order]


def is_correlation_immune(f: BooleanFunction, order: int, spectrum: WalshSpectrum | None = None) -> bool:
    """Xiao-Massey: W vanishes on every mask of weight 1..order."""
    if not 1 <= order <= f.arity:
        raise ValueError(f"order must be in 1..{f.arity}")
    w = spectrum or walsh_spectrum(f)
    return all(w[m] == 0 for m in _masks_up_to_weight(f.arity, order))


def is_balanced(f: BooleanFunction) -> bool:
    return 2 * f.weight == len(f.truth_table)


def is_resilient(f: BooleanFunction, order: int, spectrum: WalshSpectrum | None = None) -> bool:
    """Balanced and correlation immune of the given order."""
    w = spectrum or walsh_spectrum(f)
    return w[0] == 0 and is_correlation_immune(f, order, w)


def is_linear(f: BooleanFunction, spectrum: WalshSpectrum | None = None) -> bool:
    """Affine test: |W| = 2^k at exactly one mask."""
    w = spectrum or walsh_spectrum(f)
    full = 1 << f.arity
    return sum(abs(v) == full for v in w.values) == 1


# -- reports ------------------------------------------------------------------

@dataclass
class TestReport:
    test: str
    params: dict[str, Any] = field(default_factory=dict)
    statistics: dict[str, Any] = field(default_factory=dict)
    passed: bool | None = None
    length: int = 0
    error: str | None = None

    __test__ = False  # not a pytest class

    def to_dict(self) -> dict[str, Any]:
        out = {"test": self.test, "params": self.params,
               "statistics": self.statistics, "pass": self.passed,
               "length": self.length}
        if self.error is not None:
            out["error"] = self.error
        return out


def rule_rows() -> list[dict[str, Any]]:
    """Per-rule linearity, balance and correlation-immunity flags."""
    rows = []
    for r in range(256):
        f = rule_function(r)
        w = walsh_spectrum(f)
        linear = is_linear(f, w)
        rows.append({
            "rule": r,
            "linear": linear,
            "nonlinear": not linear,
            "balanced": is_balanced(f),
            "ci1": is_correlation_immune(f, 1, w),
            "resilient1": is_resilient(f, 1, w),
            "walsh": list(w.values),
        })
    return rows


def scan_elementary_rules() -> TestReport:
    """Look for rules that are both nonlinear and correlation immune.

    ``pass`` is the plain Xiao-Massey claim (no nonlinear CI(1) rule). The
    statistics also carry the balanced variant, where immunity is only
    counted for balanced rule functions.
    """
    rows = rule_rows()
    nonlinear_ci = [r["rule"] for r in rows if r["nonlinear"] and r["ci1"]]
    nonlinear_res = [r["rule"] for r in rows if r["nonlinear"] and r["resilient1"]]
    linear = [r["rule"] for r in rows if r["linear"]]
    stats = {
        "affine_count": len(linear),
        "affine_rules": linear,
        "nonlinear_ci1": nonlinear_ci,
        "nonlinear_resilient1": nonlinear_res,
        "rows": rows,
    }
    return TestReport("scan_elementary_rules", {"order": 1}, stats,
                      passed=not nonlinear_ci, length=256)


# -- entropy ------------------------------------------------------------------

def koza_entropy(s: Sequence[int], h: int, k: int = 2) -> float:
    """Shannon entropy (bits) of the overlapping length-h windows of s."""
    if k != 2:
        raise ValueError("only binary sequences (k = 2) are supported")
    if h < 1:
        raise ValueError("window length must be >= 1")
    if len(s) < h:
        raise ValueError(f"sequence of length {len(s)} has no window of length {h}")
    mask = (1 << h) - 1
    counts: Counter[int] = Counter()
    w = 0
    for i, b in enumerate(s):
        w = ((w << 1) | b) & mask
        if i >= h - 1:
            counts[w] += 1
    total = len(s) - h + 1
    e = -sum(c / total * math.log2(c / total) for c in counts.values())
    return max(e, 0.0)


# -- battery ------------------------------------------------------------------

class InsufficientLength(ValueError):
    pass


def _fips_block(s: Sequence[int]) -> Sequence[int]:
    n = FIPS["block_bits"]
    if len(s) < n:
        raise InsufficientLength(f"FIPS tests need {n} bits, got {len(s)}")
    return s[:n]


def _runs(s: Sequence[int]) -> list[tuple[int, int]]:
    runs = []
    prev, length = s[0], 0
    for b in s:
        if b == prev:
            length += 1
        else:
            runs.append((prev, length))
            prev, length = b, 1
    runs.append((prev, length))
    return runs


def monobit_test(s: Sequence[int]) -> TestReport:
    block = _fips_block(s)
    ones = sum(block)
    lo, hi = FIPS["monobit"]
    return TestReport("monobit", {"band": [lo, hi]}, {"ones": ones},
                      lo < ones < hi, len(block))


def poker_test(s: Sequence[int]) -> TestReport:
    block = _fips_block(s)
    counts = [0] * 16
    for i in range(0, len(block), 4):
        nib = block[i] << 3 | block[i + 1] << 2 | block[i + 2] << 1 | block[i + 3]
        counts[nib] += 1
    x = 16 / 5000 * sum(c * c for c in counts) - 5000
    lo, hi = FIPS["poker"]
    return TestReport("poker", {"band": [lo, hi]}, {"x": x, "counts": counts},
                      lo < x < hi, len(block))


def runs_test(s: Sequence[int]) -> TestReport:
    block = _fips_block(s)
    tally = {bit: {k: 0 for k in range(1, 7)} for bit in (0, 1)}
    for bit, length in _runs(block):
        tally[bit][min(length, 6)] += 1
    bands = FIPS["runs"]
    ok = all(bands[k][0] <= tally[bit][k] <= bands[k][1] for bit in (0, 1) for k in bands)
    stats = {"zeros": tally[0], "ones": tally[1]}
    return TestReport("runs", {"bands": {k: list(v) for k, v in bands.items()}},
                      stats, ok, len(block))


def long_run_test(s: Sequence[int]) -> TestReport:
    block = _fips_block(s)
    longest = max(length for _, length in _runs(block))
    limit = FIPS["long_run"]
    return TestReport("long_run", {"limit": limit}, {"longest": longest},
                      longest < limit, len(block))


def chi_square_test(s: Sequence[int]) -> TestReport:
    data = bits_to_bytes(s)
    if len(data) < CHI2_MIN_BYTES:
        raise InsufficientLength(f"chi-square needs {CHI2_MIN_BYTES} bytes, got {len(data)}")
    counts = Counter(data)
    expected = len(data) / 256
    chi2 = sum((counts.get(b, 0) - expected) ** 2 / expected for b in range(256))
    lo, hi = CHI2_BYTES
    return TestReport("chi2", {"band": [lo, hi], "bins": 256}, {"chi2": chi2},
                      lo < chi2 < hi, len(s))


def serial_correlation_test(s: Sequence[int]) -> TestReport:
    """Lag-1 cyclic correlation coefficient of the bits."""
    n = len(s)
    if n < SERIAL_MIN_BITS:
        raise InsufficientLength(f"serial correlation needs {SERIAL_MIN_BITS} bits, got {n}")
    x = np.asarray(s, dtype=np.float64)
    y = np.roll(x, -1)
    sx, sxx, sxy = x.sum(), (x * x).sum(), (x * y).sum()
    denom = n * sxx - sx * sx
    r = float((n * sxy - sx * sx) / denom) if denom else 1.0
    return TestReport("serial", {"max_abs": SERIAL_MAX_ABS}, {"r": r},
                      abs(r) < SERIAL_MAX_ABS, n)


def entropy_test(s: Sequence[int], h: int = ENTROPY_WINDOW) -> TestReport:
    e = koza_entropy(s, h)
    return TestReport("entropy", {"h": h, "min": h - ENTROPY_MAX_DEFICIT},
                      {"entropy": e}, e >= h - ENTROPY_MAX_DEFICIT, len(s))


def monte_carlo_test(s: Sequence[int], points: int = MONTE_CARLO_POINTS) -> TestReport:
    """Estimate pi from 24-bit coordinate pairs (48 bits per point)."""
    c = MONTE_CARLO_COORD_BITS
    need = 2 * c * points
    if len(s) < need:
        raise InsufficientLength(f"Monte Carlo with {points} points needs {need} bits, got {len(s)}")
    arr = np.asarray(s[:need], dtype=np.int64).reshape(points, 2, c)
    weights = 1 << np.arange(c - 1, -1, -1, dtype=np.int64)
    coords = arr @ weights
    radius = float((1 << c) - 1)
    inside = int(np.count_nonzero(coords[:, 0] ** 2 + coords[:, 1] ** 2 <= radius * radius))
    estimate = 4 * inside / points
    return TestReport("montecarlo", {"points": points, "tolerance": MONTE_CARLO_TOLERANCE},
                      {"pi": estimate, "error": abs(estimate - math.pi)},
                      abs(estimate - math.pi) < MONTE_CARLO_TOLERANCE, need)


TESTS = {
    "monobit": monobit_test,
    "poker": poker_test,
    "runs": runs_test,
    "long_run": long_run_test,
    "chi2": chi_square_test,
    "serial": serial_correlation_test,
    "entropy": entropy_test,
    "montecarlo": monte_carlo_test,
}
GROUPS = {"fips": ["monobit", "poker", "runs", "long_run"]}


def expand_selection(tests: Iterable[str]) -> list[str]:
    names = []
    for t in tests:
        t = t.strip()
        for name in GROUPS.get(t, [t]):
            if name not in TESTS:
                raise ValueError(f"unknown test {name!r}; choose from {sorted(TESTS) + sorted(GROUPS)}")
            if name not in names:
                names.append(name)
    return names


def battery(s: Sequence[int], tests: Iterable[str] = ("fips",)) -> list[TestReport]:
    """Run the selected tests; a test that cannot run reports an error entry."""
    s = tuple(s)
    reports = []
    for name in sorted(expand_selection(tests)):
        try:
            reports.append(TESTS[name](s))
        except InsufficientLength as exc:
            reports.append(TestReport(name, passed=False, length=len(s), error=str(exc)))
    return reports

