"""Distribution tests and heavy-tail fits for win-probability samples.

The two-sample Kolmogorov-Smirnov distance is computed exactly in
integer units of 1/(n_a*n_b), so tie handling and permutation tests
never depend on float rounding.  For small pooled samples the p-value
is the exact permutation probability (a closed form when both samples
have equal size and no ties, full enumeration when the split count is
small, seeded Monte Carlo otherwise); large samples use the asymptotic
Kolmogorov distribution, which is approximate for 16-point samples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, fsum, log, pi, sqrt

import numpy as np
from scipy.special import erfc, kolmogorov

from .core import as_rng
from .crmodel import CrParams, generate_cr
from .winprob import WinProbVector, exact_uniform_win_probs

__all__ = [
    "EmpiricalSample",
    "KsResult",
    "FitResult",
    "LrtResult",
    "ScanStep",
    "ScanResult",
    "UndefinedTestError",
    "ecdf_points",
    "ccdf_points",
    "ks_two_sample",
    "fit_power_law",
    "fit_lognormal",
    "likelihood_ratio_test",
    "scan_cr",
]


class UndefinedTestError(ValueError):
    """The requested test statistic is undefined on this input."""


@dataclass(frozen=True)
class EmpiricalSample:
    """Positive observations, stored sorted ascending."""

    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        if not self.values:
            raise ValueError("sample must not be empty")
        vals = tuple(float(v) for v in self.values)
        if any(not np.isfinite(v) or v <= 0 for v in vals):
            raise ValueError("sample values must be positive and finite")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be sorted ascending; use from_values()")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values, label: str = "") -> "EmpiricalSample":
        return cls(values=tuple(sorted(float(v) for v in values)), label=label)

    @classmethod
    def from_win_probs(cls, v: WinProbVector, label: str = "") -> "EmpiricalSample":
        return cls.from_values(v.entries, label=label)

    @property
    def size(self) -> int:
        return len(self.values)


def ecdf_points(s: EmpiricalSample) -> list[tuple[float, float]]:
    """Step points (x, F(x)) of the empirical CDF, F right-continuous."""
    vals = np.array(s.values)
    xs = np.unique(vals)
    f = np.searchsorted(vals, xs, side="right") / vals.size
    return list(zip(xs.tolist(), f.tolist()))


def ccdf_points(s: EmpiricalSample) -> list[tuple[float, float]]:
    """Step points (x, 1 - F(x)); the strict convention P(X > x)."""
    return [(x, 1.0 - f) for x, f in ecdf_points(s)]


@dataclass(frozen=True)
class KsResult:
    """Two-sample KS outcome.

    ``resamples`` is None when the permutation p-value is exact (closed
    form or full enumeration) and the Monte Carlo replicate count
    otherwise; it is always None for the asymptotic method.
    """

    statistic: float
    p_value: float
    method: str
    resamples: int | None = None


def _counts_at_pooled(a: np.ndarray, b: np.ndarray, pooled: np.ndarray):
    ca = np.searchsorted(a, pooled, side="right")
    cb = np.searchsorted(b, pooled, side="right")
    return ca, cb


def _distance_int(a: np.ndarray, b: np.ndarray) -> int:
    # sup |F_a - F_b| in exact units of 1/(n_a n_b)
    pooled = np.concatenate([a, b])
    pooled.sort()
    ca, cb = _counts_at_pooled(a, b, pooled)
    return int(np.abs(ca * b.size - cb * a.size).max())


def _equal_size_tail_prob(n: int, k: int) -> float:
    # P(D >= k/n) for two tie-free samples of equal size n, by the
    # reflection argument over lattice paths; identical to enumerating
    # all C(2n, n) assignments.
    if k <= 0:
        return 1.0
    acc = 0
    j = 1
    while n - j * k >= 0:
        acc += (-1) ** (j - 1) * comb(2 * n, n - j * k)
        j += 1
    return min(1.0, 2 * acc / comb(2 * n, n))


def _run_ends(pooled: np.ndarray) -> np.ndarray:
    if pooled.size == 1:
        return np.array([0], dtype=np.intp)
    ends = np.flatnonzero(pooled[1:] != pooled[:-1])
    return np.append(ends, pooled.size - 1)


def _assignment_distances(weights: np.ndarray, ends: np.ndarray) -> np.ndarray:
    cum = np.cumsum(weights, axis=1)
    return np.abs(cum[:, ends]).max(axis=1)


def ks_two_sample(
    a: EmpiricalSample,
    b: EmpiricalSample,
    method: str = "auto",
    rng=0,
    resamples: int = 10_000,
    enumeration_limit: int = 200_000,
) -> KsResult:
    """Two-sample Kolmogorov-Smirnov test.

    ``method`` is ``"auto"`` (permutation when the pooled size is at
    most 32, asymptotic otherwise), ``"permutation"``, or
    ``"asymptotic"``.  The permutation p-value is exact whenever it can
    be: closed form for equal tie-free samples, full enumeration when
    there are at most ``enumeration_limit`` splits, otherwise seeded
    Monte Carlo with ``resamples`` replicates.
    """
    av = np.array(a.values)
    bv = np.array(b.values)
    na, nb = av.size, bv.size
    d_int = _distance_int(av, bv)
    d = d_int / (na * nb)

    if method == "auto":
        method = "permutation" if na + nb <= 32 else "asymptotic"
    if method == "asymptotic":
        en = na * nb / (na + nb)
        p = float(kolmogorov(sqrt(en) * d))
        return KsResult(statistic=d, p_value=min(1.0, max(0.0, p)), method="asymptotic")
    if method != "permutation":
        raise ValueError(f"unknown method: {method!r}")

    pooled = np.concatenate([av, bv])
    pooled.sort()
    tie_free = np.unique(pooled).size == pooled.size
    if tie_free and na == nb:
        p = _equal_size_tail_prob(na, d_int // na)
        return KsResult(statistic=d, p_value=p, method="permutation")

    m = na + nb
    ends = _run_ends(pooled)
    n_splits = comb(m, na)
    if n_splits <= enumeration_limit:
        hits = 0
        chunk = []
        for combo in itertools.combinations(range(m), na):
            w = np.full(m, -na)
            w[list(combo)] = nb
            chunk.append(w)
            if len(chunk) == 4096:
                hits += int((_assignment_distances(np.array(chunk), ends) >= d_int).sum())
                chunk = []
        if chunk:
            hits += int((_assignment_distances(np.array(chunk), ends) >= d_int).sum())
        return KsResult(statistic=d, p_value=hits / n_splits, method="permutation")

    gen = as_rng(rng)
    base = np.concatenate([np.full(na, nb), np.full(nb, -na)])
    hits = 0
    left = resamples
    while left > 0:
        r = min(4096, left)
        w = gen.permuted(np.tile(base, (r, 1)), axis=1)
        hits += int((_assignment_distances(w, ends) >= d_int).sum())
        left -= r
    p = (1 + hits) / (1 + resamples)
    return KsResult(statistic=d, p_value=p, method="permutation", resamples=resamples)


@dataclass(frozen=True)
class FitResult:
    """A fitted tail family and its parameters.

    ``support_min`` is the smallest sample value the fit covers (for a
    power law this equals ``xmin``); ``sample_size`` counts the covered
    values.  For the power law the density is
    ``(alpha-1)/xmin * (x/xmin)**-alpha``; the implicit constant in the
    ``c * x**-alpha`` reading is exposed as ``scale_constant``.
    """

    family: str
    log_likelihood: float
    sample_size: int
    support_min: float
    alpha: float | None = None
    xmin: float | None = None
    mu: float | None = None
    sigma: float | None = None

    @property
    def scale_constant(self) -> float:
        if self.family != "power-law":
            raise ValueError("scale_constant is defined for power-law fits only")
        return (self.alpha - 1) * self.xmin ** (self.alpha - 1)

    def logpdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.family == "power-law":
            return (
                log(self.alpha - 1)
                - log(self.xmin)
                - self.alpha * np.log(x / self.xmin)
            )
        lx = np.log(x)
        return (
            -lx
            - log(self.sigma)
            - 0.5 * log(2 * pi)
            - (lx - self.mu) ** 2 / (2 * self.sigma**2)
        )

    def survival(self, x) -> np.ndarray:
        """P(X > x) under the fitted family (conditional on the tail)."""
        x = np.asarray(x, dtype=float)
        if self.family == "power-law":
            return np.where(x < self.xmin, 1.0, (x / self.xmin) ** (1 - self.alpha))
        z = (np.log(x) - self.mu) / (self.sigma * sqrt(2))
        return 0.5 * erfc(z)


def _powerlaw_alpha(tail: np.ndarray, xm: float) -> tuple[float, float]:
    logs = np.log(tail / xm)
    ssum = float(logs.sum())
    if ssum <= 0.0:
        raise ValueError("cannot fit a power law to values with no spread above xmin")
    m = tail.size
    alpha = 1.0 + m / ssum
    loglik = m * log(alpha - 1) - m * log(xm) - alpha * ssum
    return alpha, loglik


def fit_power_law(
    s: EmpiricalSample, xmin: float | None = None, scan: bool = False
) -> FitResult:
    """Continuous maximum-likelihood power-law fit to the tail x >= xmin.

    By default ``xmin`` is the sample minimum (the whole sample is the
    tail).  With ``scan=True`` every distinct value is tried as ``xmin``
    and the one minimising the KS distance between the fitted and
    empirical tail distributions wins.
    """
    vals = np.array(s.values)
    if scan:
        if xmin is not None:
            raise ValueError("give either xmin or scan=True, not both")
        best = None
        for cand in np.unique(vals)[:-1]:
            tail = vals[vals >= cand]
            if tail.size < 2:
                continue
            try:
                alpha, _ = _powerlaw_alpha(tail, float(cand))
            except ValueError:
                continue
            tail_sorted = np.sort(tail)
            model = 1.0 - (tail_sorted / cand) ** (1.0 - alpha)
            hi = np.arange(1, tail.size + 1) / tail.size
            lo = np.arange(0, tail.size) / tail.size
            dist = max(np.abs(hi - model).max(), np.abs(lo - model).max())
            if best is None or dist < best[0]:
                best = (dist, float(cand))
        if best is None:
            raise ValueError("no viable xmin candidate; sample has no spread")
        xmin = best[1]
    xm = float(vals.min()) if xmin is None else float(xmin)
    if xm <= 0:
        raise ValueError("xmin must be positive")
    tail = vals[vals >= xm]
    if tail.size < 2:
        raise ValueError("need at least two values at or above xmin")
    alpha, loglik = _powerlaw_alpha(tail, xm)
    return FitResult(
        family="power-law",
        log_likelihood=loglik,
        sample_size=int(tail.size),
        support_min=xm,
        alpha=alpha,
        xmin=xm,
    )


def fit_lognormal(s: EmpiricalSample) -> FitResult:
    """Maximum-likelihood log-normal fit to the full sample.

    sigma is the population standard deviation of log values (divisor
    m); a sample with no spread has sigma = 0 and is rejected.
    """
    vals = np.array(s.values)
    logs = np.log(vals)
    mu = float(logs.mean())
    sigma = float(logs.std(ddof=0))
    if sigma == 0.0:
        raise ValueError("cannot fit a log-normal to a zero-spread sample")
    m = vals.size
    loglik = float(
        -logs.sum() - m * log(sigma) - 0.5 * m * log(2 * pi)
        - float(((logs - mu) ** 2).sum()) / (2 * sigma**2)
    )
    return FitResult(
        family="log-normal",
        log_likelihood=loglik,
        sample_size=int(m),
        support_min=float(vals.min()),
        mu=mu,
        sigma=sigma,
    )


@dataclass(frozen=True)
class LrtResult:
    """Normalised log-likelihood ratio between two fitted families.

    Positive ``r`` favours the first-listed family; the two-sided
    p-value is the probability of an |r| this large when neither family
    fits better.
    """

    r: float
    p_value: float
    first: str
    second: str

    @property
    def favored(self) -> str | None:
        if self.r > 0:
            return self.first
        if self.r < 0:
            return self.second
        return None


def likelihood_ratio_test(
    s: EmpiricalSample, first: FitResult, second: FitResult
) -> LrtResult:
    """Vuong-style test of which fitted family describes the sample better.

    Both fits must cover the same truncation of the sample.  Two
    numerically identical fits give r = 0 and p = 1; a nonzero but
    pointwise-constant log-likelihood difference leaves the statistic
    undefined and raises UndefinedTestError.
    """
    vals = np.array(s.values)
    cut = max(first.support_min, second.support_min)
    tail = vals[vals >= cut]
    if not (first.sample_size == second.sample_size == tail.size):
        raise ValueError("fits must share the same sample truncation")
    diff = first.logpdf(tail) - second.logpdf(tail)
    if np.abs(diff).max() < 1e-15:
        return LrtResult(r=0.0, p_value=1.0, first=first.family, second=second.family)
    sd = float(diff.std(ddof=0))
    if sd == 0.0:
        raise UndefinedTestError(
            "log-likelihood difference is constant; the ratio test is undefined"
        )
    m = diff.size
    r = float(fsum(diff) / (sqrt(m) * sd))
    p = float(erfc(abs(r) / sqrt(2)))
    return LrtResult(r=r, p_value=p, first=first.family, second=second.family)


@lru_cache(maxsize=None)
def _cr_win_prob_sample(n: int, upset_prob: float) -> EmpiricalSample:
    vec = exact_uniform_win_probs(generate_cr(CrParams(n, upset_prob)))
    return EmpiricalSample.from_values(vec.entries, label=f"cr-{upset_prob:g}")


@dataclass(frozen=True)
class ScanStep:
    upset_prob: float
    ks: KsResult
    accepted: bool


@dataclass(frozen=True)
class ScanResult:
    """Which upset probabilities are statistically compatible with the data."""

    steps: tuple[ScanStep, ...]
    threshold: float
    min_accepted: float | None
    max_accepted: float | None
    reference_avg_upset: float | None = None


def scan_cr(
    reference: EmpiricalSample,
    n: int,
    step: float = 0.01,
    threshold: float = 0.05,
    reference_avg_upset: float | None = None,
) -> ScanResult:
    """Compare a reference win-probability sample against the upset model.

    For every upset probability on the grid {step, 2*step, ..., 0.5}
    the exact model win probabilities for n players are computed and a
    KS test (module defaults) is run against the reference; a grid point
    is accepted when its p-value reaches ``threshold``.  The reference
    holds one win probability per player, so its size must equal n.

    ``reference_avg_upset`` is carried through to the report; pass the
    value from :func:`drawfix.crmodel.average_upset_probability` when
    the reference came from a full probability matrix.
    """
    if reference.size != n:
        raise ValueError(
            f"reference must hold one win probability per player ({n}), got {reference.size}"
        )
    if not 0.0 < step <= 0.5:
        raise ValueError("step must lie in (0, 0.5]")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    steps = []
    accepted = []
    k = 1
    while True:
        u = round(k * step, 10)
        if u > 0.5:
            break
        ks = ks_two_sample(reference, _cr_win_prob_sample(n, u))
        ok = ks.p_value >= threshold
        steps.append(ScanStep(upset_prob=u, ks=ks, accepted=ok))
        if ok:
            accepted.append(u)
        k += 1
    return ScanResult(
        steps=tuple(steps),
        threshold=threshold,
        min_accepted=min(accepted) if accepted else None,
        max_accepted=max(accepted) if accepted else None,
        reference_avg_upset=reference_avg_upset,
    )
