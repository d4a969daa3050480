"""Security and privacy audits for configured schemes.

Two inspection depths are offered.  Rank certificates are the fast
path: a colluding subset learns nothing about set m exactly when it
holds at most x_m shares of it and the noise coefficients seen by those
servers have full row rank (and analogously for query coefficients with
t_m).  The exhaustive audit is the slow ground truth: it enumerates
every realization of messages and noise over a tiny field and verifies
that the joint count table of (observed symbols, secrets) factorizes
exactly, i.e. each observation is seen equally often with every secret.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from .augment import AugmentedSystem
from .errors import DimensionMismatch, ScaleExceeded
from .ff import FieldMatrix, mat_rank
from .scheme import AsymmConfig, SchemeParams

_EXHAUSTIVE_CELL_CAP = 10**7
_EXHAUSTIVE_SUBSET_CAP = 5000
_SAMPLE_SIZE = 500


@dataclass(frozen=True)
class Violation:
    subset: tuple[int, ...]
    message_set: int | None
    detail: str


@dataclass(frozen=True)
class AuditReport:
    mode: str
    checked_subsets: int
    violations: tuple[Violation, ...]
    passed: bool
    sampled: bool = False
    notes: tuple[str, ...] = ()


def _report(mode: str, checked: int, violations: list[Violation],
            sampled: bool = False, notes: tuple[str, ...] = ()) -> AuditReport:
    return AuditReport(
        mode=mode,
        checked_subsets=checked,
        violations=tuple(violations),
        passed=not violations,
        sampled=sampled,
        notes=notes,
    )


def _security_violation(config: AsymmConfig, params: SchemeParams,
                        subset: tuple[int, ...], m: int) -> str | None:
    """None if the subset learns nothing about set m's stored messages."""
    hit = sorted(set(subset) & set(params.group_of(m)))
    s = len(hit)
    if s == 0:
        return None
    x_m = config.x_vec[m - 1]
    if s > x_m:
        return f"{s} colluders in the group exceed the threshold {x_m}"
    rows = [
        [params.alpha[n - 1] ** (x - 1) for x in range(1, x_m + 1)]
        for n in hit
    ]
    rank = mat_rank(FieldMatrix.from_rows(params.field, rows))
    if rank != s:
        return f"storage noise covers rank {rank} of {s} observed shares"
    return None


def _privacy_violation(config: AsymmConfig, params: SchemeParams,
                       subset: tuple[int, ...], m: int) -> str | None:
    """None if the subset learns nothing about set m's query coefficients."""
    hit = sorted(set(subset) & set(params.group_of(m)))
    s = len(hit)
    if s == 0:
        return None
    t_m = config.t_vec[m - 1]
    if s > t_m:
        return f"{s} colluders in the group exceed the threshold {t_m}"
    for l in range(1, params.l_value + 1):
        f_l = params.f[l - 1]
        rows = [
            [
                (params.alpha[n - 1] - f_l) * params.alpha[n - 1] ** (t - 1)
                for t in range(1, t_m + 1)
            ]
            for n in hit
        ]
        rank = mat_rank(FieldMatrix.from_rows(params.field, rows))
        if rank != s:
            return f"query noise covers rank {rank} of {s} at slot {l}"
    return None


def security_rank_certificate(config: AsymmConfig, params: SchemeParams,
                              subset: tuple[int, ...]) -> bool:
    """True iff the subset is harmless for the storage of every set."""
    return all(
        _security_violation(config, params, tuple(subset), m) is None
        for m in range(1, config.m_count + 1)
    )


def privacy_rank_certificate(config: AsymmConfig, params: SchemeParams,
                             subset: tuple[int, ...]) -> bool:
    """True iff the subset is harmless for the coefficients of every set."""
    return all(
        _privacy_violation(config, params, tuple(subset), m) is None
        for m in range(1, config.m_count + 1)
    )


def _hosted_sets(config: AsymmConfig, n: int) -> list[int]:
    return [
        m for m in range(1, config.m_count + 1)
        if n in config.pattern.servers_of(m)
    ]


def _independence_side(config: AsymmConfig, params: SchemeParams,
                       subset: tuple[int, ...], side: str,
                       max_cells: int) -> tuple[int, str | None]:
    """Enumerate one side exhaustively; returns (cells, failure detail).

    Observed symbols are linear forms in (secrets, noise); the audit
    counts every joint realization and demands that each observation
    tuple appear the same number of times for every secret assignment,
    with nothing assumed about how the forms were built.
    """
    q = params.field.q
    l_value = params.l_value
    depths = config.x_vec if side == "storage" else config.t_vec

    secret_index: dict[tuple[int, int, int], int] = {}
    for m in range(1, config.m_count + 1):
        for k in range(1, config.pattern.count_of(m) + 1):
            for l in range(1, l_value + 1):
                secret_index[(m, k, l)] = len(secret_index)
    noise_index: dict[tuple[int, int, int, int], int] = {}
    for m in range(1, config.m_count + 1):
        for d in range(1, depths[m - 1] + 1):
            for l in range(1, l_value + 1):
                for k in range(1, config.pattern.count_of(m) + 1):
                    noise_index[(m, d, l, k)] = len(noise_index)

    n_secret = len(secret_index)
    n_noise = len(noise_index)
    cells = q ** (n_secret + n_noise)
    if cells > max_cells:
        raise ScaleExceeded(
            f"{side} side needs {cells} joint realizations (cap {max_cells})"
        )

    # observed symbol = sum of coeff * variable, variables indexed into
    # the flat assignment (secrets first, then noise)
    forms: list[list[tuple[int, int]]] = []
    for n in sorted(subset):
        a_n = params.alpha[n - 1]
        for m in _hosted_sets(config, n):
            for l in range(1, l_value + 1):
                f_l = params.f[l - 1]
                if side == "storage":
                    secret_coeff = (a_n - f_l).inverse().value
                    noise_coeffs = [
                        (a_n ** (x - 1)).value
                        for x in range(1, depths[m - 1] + 1)
                    ]
                else:
                    secret_coeff = params.u[m - 1][l - 1].value
                    noise_coeffs = [
                        ((a_n - f_l) * a_n ** (t - 1)).value
                        for t in range(1, depths[m - 1] + 1)
                    ]
                for k in range(1, config.pattern.count_of(m) + 1):
                    term = [(secret_index[(m, k, l)], secret_coeff)]
                    for d, c in enumerate(noise_coeffs, start=1):
                        term.append((n_secret + noise_index[(m, d, l, k)], c))
                    forms.append(term)

    counts: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for assignment in itertools.product(range(q), repeat=n_secret + n_noise):
        observed = tuple(
            sum(c * assignment[idx] for idx, c in term) % q for term in forms
        )
        secrets = assignment[:n_secret]
        counts.setdefault(observed, {})
        counts[observed][secrets] = counts[observed].get(secrets, 0) + 1

    n_secret_states = q ** n_secret
    for observed, per_secret in counts.items():
        if len(per_secret) != n_secret_states:
            return cells, f"{side}: observation {observed} misses some secrets"
        reference = next(iter(per_secret.values()))
        if any(c != reference for c in per_secret.values()):
            return cells, f"{side}: observation {observed} has uneven counts"
    return cells, None


def exhaustive_independence_audit(config: AsymmConfig, params: SchemeParams,
                                  subset: tuple[int, ...], side: str = "both",
                                  max_cells: int = _EXHAUSTIVE_CELL_CAP) -> AuditReport:
    """Ground-truth independence check by full enumeration.

    Only viable for tiny configurations (small field, single-symbol
    messages); anything larger raises ScaleExceeded before enumerating.
    """
    if side not in ("storage", "query", "both"):
        raise ValueError(f"unknown side {side!r}")
    subset = tuple(sorted(set(subset)))
    violations: list[Violation] = []
    notes: list[str] = []
    sides = ("storage", "query") if side == "both" else (side,)
    for s in sides:
        cells, detail = _independence_side(config, params, subset, s, max_cells)
        notes.append(f"{s}: enumerated {cells} joint realizations")
        if detail is not None:
            violations.append(Violation(subset=subset, message_set=None, detail=detail))
    return _report("exhaustive", 1, violations, notes=tuple(notes))


def asymm_scheme_audit(config: AsymmConfig, params: SchemeParams) -> AuditReport:
    """Worst-case certificate sweep for an uneven-threshold scheme.

    For every set m, every size-x_m subset of its own replication group
    is checked against the storage certificate (and size-t_m against the
    privacy certificate); smaller subsets see submatrices of these.
    """
    violations: list[Violation] = []
    notes: list[str] = []
    checked = 0
    for m in range(1, config.m_count + 1):
        group = params.group_of(m)
        x_m = config.x_vec[m - 1]
        if x_m == 0:
            notes.append(f"set {m}: storage secrecy not promised (x=0)")
        for size in range(1, x_m + 1):
            for subset in itertools.combinations(group, size):
                checked += 1
                detail = _security_violation(config, params, subset, m)
                if detail is not None:
                    violations.append(Violation(subset, m, "storage: " + detail))
        t_m = config.t_vec[m - 1]
        if t_m == 0:
            notes.append(f"set {m}: query privacy not promised (t=0)")
        for size in range(1, t_m + 1):
            for subset in itertools.combinations(group, size):
                checked += 1
                detail = _privacy_violation(config, params, subset, m)
                if detail is not None:
                    violations.append(Violation(subset, m, "query: " + detail))
    return _report("rank_certificate", checked, violations, notes=tuple(notes))


def merged_scheme_audit(a: AugmentedSystem, params: SchemeParams,
                        x: int, t: int) -> AuditReport:
    """Audit a merged system against collusion among original servers.

    A colluding original server exposes all of its virtual copies, so
    each subset of originals maps to a virtual subset whose per-set
    exposure must stay within the inflated thresholds x*gamma_m and
    t*gamma_m; the rank certificates then run on the virtual scheme.
    Small systems are swept exhaustively; larger ones fall back to a
    deterministic sample and say so.
    """
    config = AsymmConfig(
        a.virtual_pattern(), x_vec=a.x_bar, t_vec=a.t_bar, l_value=a.l_value
    )
    if params.groups != tuple(config.pattern.servers_of(m + 1)
                              for m in range(config.m_count)):
        raise DimensionMismatch("params were built for a different system")

    n = a.n_original
    total = sum(comb(n, size) for size in range(1, x + 1))
    total += sum(comb(n, size) for size in range(1, t + 1))
    sampled = total > _EXHAUSTIVE_SUBSET_CAP

    def original_subsets(limit: int):
        if not sampled:
            for size in range(1, limit + 1):
                yield from itertools.combinations(range(1, n + 1), size)
            return
        rng = random.Random(0xA0D17)
        for _ in range(_SAMPLE_SIZE):
            size = rng.randint(1, limit)
            yield tuple(sorted(rng.sample(range(1, n + 1), size)))

    def exposed(originals: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            a.flat_id((srv, i))
            for srv in originals
            for i in range(1, a.tau[srv - 1] + 1)
        )

    violations: list[Violation] = []
    notes: list[str] = []
    checked = 0
    if x == 0:
        notes.append("security: no colluding sets to check (x=0)")
    else:
        for originals in original_subsets(x):
            checked += 1
            virtual_subset = exposed(originals)
            for m in range(1, config.m_count + 1):
                detail = _security_violation(config, params, virtual_subset, m)
                if detail is not None:
                    violations.append(Violation(originals, m, "storage: " + detail))
    if t == 0:
        notes.append("privacy: not applicable (t=0)")
    else:
        for originals in original_subsets(t):
            checked += 1
            virtual_subset = exposed(originals)
            for m in range(1, config.m_count + 1):
                detail = _privacy_violation(config, params, virtual_subset, m)
                if detail is not None:
                    violations.append(Violation(originals, m, "query: " + detail))
    return _report(
        "rank_certificate", checked, violations, sampled=sampled, notes=tuple(notes)
    )
