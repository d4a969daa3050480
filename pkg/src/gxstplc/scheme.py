"""The coded storage / private query protocol with per-set thresholds.

One round of the protocol moves a single symbol from each server to the
user and decodes L symbols of the desired linear combination, where
L = min_m (|R_m| - X_m - T_m).  All indices below follow the same
1-based convention as :mod:`gxstplc.pattern`.

Shares, queries and answers follow a Cauchy-Vandermonde layout over a
prime field holding N + L distinct points: server n evaluates at
alpha_n, decoded symbol slot l is pinned to the extra point f_l.

    share block   W + noise:   W_{m,(l)} / (alpha_n - f_l)
                               + sum_x alpha_n^{x-1} Z_{m,x,(l)}
    query block   lam + noise: u_{m,l} lam_{m,(l)}
                               + (alpha_n - f_l) sum_t alpha_n^{t-1} Z'_{m,t,(l)}

with u_{m,l} the product of (f_l - alpha_n) over the replication group.
Multiplying a share by a query makes the desired term a scaled Cauchy
entry while every noise product lands in a low-degree polynomial of
alpha_n; the answer weights v_{n,m} (dual generalized Reed-Solomon
coefficients) annihilate those polynomials in the decoding sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .augment import AugmentedSystem, generate_augmented_system
from .capacity import CapacityResult, asymptotic_capacity
from .errors import (
    DegenerateConfig,
    DimensionMismatch,
    DuplicateNodes,
    FieldTooSmall,
)
from .ff import FieldElement, FieldMatrix, PrimeField, mat_solve, smallest_prime_at_least, vandermonde
from .pattern import StoragePattern


@dataclass(frozen=True)
class AsymmConfig:
    """A storage pattern plus per-set security/privacy thresholds.

    x_vec[m-1] bounds the colluding servers that may learn nothing about
    the stored messages of set m; t_vec[m-1] does the same for the query
    coefficients.  l_value optionally pins the number of decoded symbols
    per round below its maximum min_m(|R_m| - x - t).
    """

    pattern: StoragePattern
    x_vec: tuple[int, ...]
    t_vec: tuple[int, ...]
    l_value: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "x_vec", tuple(self.x_vec))
        object.__setattr__(self, "t_vec", tuple(self.t_vec))
        m = self.pattern.m_count
        if len(self.x_vec) != m or len(self.t_vec) != m:
            raise DimensionMismatch("threshold vectors must have one entry per set")
        if any(v < 0 for v in self.x_vec + self.t_vec):
            raise ValueError("thresholds must be nonnegative")
        slack = min(
            len(ms.servers) - x - t
            for ms, x, t in zip(self.pattern.message_sets, self.x_vec, self.t_vec)
        )
        if slack <= 0:
            raise DegenerateConfig(
                "thresholds leave no decodable symbols: "
                f"min group slack is {slack}"
            )
        if self.l_value is not None:
            if not (1 <= self.l_value <= slack):
                raise DegenerateConfig(
                    f"l_value {self.l_value} outside [1, {slack}]"
                )

    @classmethod
    def uniform(cls, pattern: StoragePattern, x: int, t: int,
                l_value: int | None = None) -> "AsymmConfig":
        m = pattern.m_count
        return cls(pattern, (x,) * m, (t,) * m, l_value)

    @property
    def n_servers(self) -> int:
        return self.pattern.n_servers

    @property
    def m_count(self) -> int:
        return self.pattern.m_count

    @property
    def counts(self) -> tuple[int, ...]:
        return self.pattern.counts

    @property
    def l_effective(self) -> int:
        if self.l_value is not None:
            return self.l_value
        return min(
            len(ms.servers) - x - t
            for ms, x, t in zip(self.pattern.message_sets, self.x_vec, self.t_vec)
        )


@dataclass(frozen=True)
class SchemeParams:
    """Field constants fixed before any message or query exists."""

    field: PrimeField
    l_value: int
    alpha: tuple[FieldElement, ...]            # one point per server
    f: tuple[FieldElement, ...]                # one point per decoded slot
    u: tuple[tuple[FieldElement, ...], ...]    # u[m-1][l-1]
    v: dict[tuple[int, int], FieldElement]     # v[(m, n)] for n in R_m
    groups: tuple[tuple[int, ...], ...]        # replication groups, for checks

    def group_of(self, m: int) -> tuple[int, ...]:
        return self.groups[m - 1]


def setup(config: AsymmConfig, field_override: int | None = None) -> SchemeParams:
    """Choose the field and precompute every protocol constant.

    The default field is the smallest prime holding N + L distinct
    points; an explicit override must be a prime at least that large.
    """
    n = config.n_servers
    l_value = config.l_effective
    needed = n + l_value
    if field_override is None:
        q = smallest_prime_at_least(needed)
    else:
        if field_override < needed:
            raise FieldTooSmall(
                f"need {needed} distinct points, field has {field_override}"
            )
        q = field_override
    field = PrimeField(q)
    alpha = tuple(field(i) for i in range(1, n + 1))
    f = tuple(field(n + i) for i in range(1, l_value + 1))

    u_rows = []
    v: dict[tuple[int, int], FieldElement] = {}
    groups = []
    for m in range(1, config.m_count + 1):
        group = config.pattern.servers_of(m)
        groups.append(group)
        row = []
        for fl in f:
            prod = field.one
            for n_id in group:
                prod = prod * (fl - alpha[n_id - 1])
            assert prod.value != 0
            row.append(prod)
        u_rows.append(tuple(row))
        for n_id in group:
            prod = field.one
            for other in group:
                if other != n_id:
                    prod = prod * (alpha[n_id - 1] - alpha[other - 1])
            v[(m, n_id)] = prod.inverse()
    return SchemeParams(
        field=field,
        l_value=l_value,
        alpha=alpha,
        f=f,
        u=tuple(u_rows),
        v=v,
        groups=tuple(groups),
    )


class FieldSampler:
    """Uniform field elements by rejection from a counter-based generator."""

    def __init__(self, field: PrimeField, seed):
        if not isinstance(seed, np.random.SeedSequence):
            seed = np.random.SeedSequence(seed)
        self.field = field
        self._gen = np.random.Generator(np.random.Philox(seed))
        self._limit = (2**64 // field.q) * field.q

    def draw(self) -> FieldElement:
        while True:
            raw = int(self._gen.integers(0, 2**64 - 1, dtype=np.uint64, endpoint=True))
            if raw < self._limit:
                return self.field(raw % self.field.q)

    def vector(self, count: int) -> tuple[FieldElement, ...]:
        return tuple(self.draw() for _ in range(count))


BankValues = tuple[tuple[tuple[FieldElement, ...], ...], ...]  # [m][k][l]


def _build_bank(config: AsymmConfig, l_value: int, entry) -> BankValues:
    out = []
    for m in range(1, config.m_count + 1):
        k_m = config.pattern.count_of(m)
        out.append(
            tuple(
                tuple(entry(m, k, l) for l in range(1, l_value + 1))
                for k in range(1, k_m + 1)
            )
        )
    return tuple(out)


def _check_bank_shape(config: AsymmConfig, l_value: int, values: BankValues) -> None:
    if len(values) != config.m_count:
        raise DimensionMismatch("bank has wrong number of message sets")
    for m in range(1, config.m_count + 1):
        block = values[m - 1]
        if len(block) != config.pattern.count_of(m):
            raise DimensionMismatch(f"set {m}: wrong message count")
        for per_message in block:
            if len(per_message) != l_value:
                raise DimensionMismatch(f"set {m}: wrong symbol length")


@dataclass(frozen=True)
class MessageBank:
    """Stored data: values[m-1][k-1][l-1] is symbol l of message k of set m."""

    values: BankValues

    def column(self, m: int, l: int) -> tuple[FieldElement, ...]:
        return tuple(per_message[l - 1] for per_message in self.values[m - 1])

    @classmethod
    def random(cls, config: AsymmConfig, params: SchemeParams,
               seed) -> "MessageBank":
        sampler = seed if isinstance(seed, FieldSampler) else FieldSampler(params.field, seed)
        return cls(_build_bank(config, params.l_value, lambda m, k, l: sampler.draw()))

    @classmethod
    def zeros(cls, config: AsymmConfig, params: SchemeParams) -> "MessageBank":
        zero = params.field.zero
        return cls(_build_bank(config, params.l_value, lambda m, k, l: zero))

    @classmethod
    def from_ints(cls, config: AsymmConfig, params: SchemeParams,
                  nested: Sequence[Sequence[Sequence[int]]]) -> "MessageBank":
        field = params.field
        values = tuple(
            tuple(tuple(field(e) for e in per_message) for per_message in block)
            for block in nested
        )
        _check_bank_shape(config, params.l_value, values)
        return cls(values)


class CoefficientBank(MessageBank):
    """The user's private combining coefficients; same shape as MessageBank."""


NoiseBank = dict[tuple[int, int, int], tuple[FieldElement, ...]]


def _noise_bank(config: AsymmConfig, l_value: int, depths: tuple[int, ...],
                entry) -> NoiseBank:
    noise: NoiseBank = {}
    for m in range(1, config.m_count + 1):
        k_m = config.pattern.count_of(m)
        for depth in range(1, depths[m - 1] + 1):
            for l in range(1, l_value + 1):
                noise[(m, depth, l)] = tuple(
                    entry(m, depth, l, k) for k in range(1, k_m + 1)
                )
    return noise


def zero_storage_noise(config: AsymmConfig, params: SchemeParams) -> NoiseBank:
    zero = params.field.zero
    return _noise_bank(config, params.l_value, config.x_vec, lambda m, d, l, k: zero)


def zero_query_noise(config: AsymmConfig, params: SchemeParams) -> NoiseBank:
    zero = params.field.zero
    return _noise_bank(config, params.l_value, config.t_vec, lambda m, d, l, k: zero)


def _check_noise_shape(config: AsymmConfig, l_value: int,
                       depths: tuple[int, ...], noise: NoiseBank) -> None:
    expected_keys = {
        (m, d, l)
        for m in range(1, config.m_count + 1)
        for d in range(1, depths[m - 1] + 1)
        for l in range(1, l_value + 1)
    }
    if set(noise.keys()) != expected_keys:
        raise DimensionMismatch("noise bank keys do not match the configuration")
    for (m, _, _), vec in noise.items():
        if len(vec) != config.pattern.count_of(m):
            raise DimensionMismatch(f"noise vector for set {m} has wrong length")


@dataclass(frozen=True)
class ShareBank:
    """Per-server coded storage; noise is retained only by the encoder."""

    blocks: dict[tuple[int, int], tuple[tuple[FieldElement, ...], ...]]
    noise: NoiseBank

    def at_server(self, n: int) -> dict[int, tuple[tuple[FieldElement, ...], ...]]:
        return {m: b for (srv, m), b in self.blocks.items() if srv == n}

    def flat(self, n: int, m: int) -> tuple[FieldElement, ...]:
        """The stored vector for (n, m), blocks stacked slot by slot."""
        return tuple(e for block in self.blocks[(n, m)] for e in block)


@dataclass(frozen=True)
class QueryBank:
    """Per-server query vectors; noise is retained only by the user."""

    blocks: dict[tuple[int, int], tuple[tuple[FieldElement, ...], ...]]
    noise: NoiseBank

    def at_server(self, n: int) -> dict[int, tuple[tuple[FieldElement, ...], ...]]:
        return {m: b for (srv, m), b in self.blocks.items() if srv == n}


def encode_storage(config: AsymmConfig, params: SchemeParams,
                   messages: MessageBank, rng_seed=None, *,
                   noise: NoiseBank | None = None) -> ShareBank:
    """Produce every server's coded share of every set it replicates."""
    _check_bank_shape(config, params.l_value, messages.values)
    if noise is None:
        sampler = FieldSampler(params.field, rng_seed)
        noise = _noise_bank(
            config, params.l_value, config.x_vec, lambda m, d, l, k: sampler.draw()
        )
    else:
        _check_noise_shape(config, params.l_value, config.x_vec, noise)

    blocks: dict[tuple[int, int], tuple[tuple[FieldElement, ...], ...]] = {}
    for m in range(1, config.m_count + 1):
        x_m = config.x_vec[m - 1]
        for n in config.pattern.servers_of(m):
            a_n = params.alpha[n - 1]
            per_l = []
            for l in range(1, params.l_value + 1):
                scale = (a_n - params.f[l - 1]).inverse()
                column = messages.column(m, l)
                block = [scale * w for w in column]
                for x in range(1, x_m + 1):
                    coeff = a_n ** (x - 1)
                    z = noise[(m, x, l)]
                    block = [b + coeff * zk for b, zk in zip(block, z)]
                per_l.append(tuple(block))
            blocks[(n, m)] = tuple(per_l)
    return ShareBank(blocks=blocks, noise=noise)


def generate_queries(config: AsymmConfig, params: SchemeParams,
                     coeffs: CoefficientBank, rng_seed=None, *,
                     noise: NoiseBank | None = None) -> QueryBank:
    """Produce every server's query, masking the coefficients t-deep."""
    _check_bank_shape(config, params.l_value, coeffs.values)
    if noise is None:
        sampler = FieldSampler(params.field, rng_seed)
        noise = _noise_bank(
            config, params.l_value, config.t_vec, lambda m, d, l, k: sampler.draw()
        )
    else:
        _check_noise_shape(config, params.l_value, config.t_vec, noise)

    blocks: dict[tuple[int, int], tuple[tuple[FieldElement, ...], ...]] = {}
    for m in range(1, config.m_count + 1):
        t_m = config.t_vec[m - 1]
        for n in config.pattern.servers_of(m):
            a_n = params.alpha[n - 1]
            per_l = []
            for l in range(1, params.l_value + 1):
                u_ml = params.u[m - 1][l - 1]
                column = coeffs.column(m, l)
                block = [u_ml * lam for lam in column]
                gap = a_n - params.f[l - 1]
                for t in range(1, t_m + 1):
                    coeff = gap * a_n ** (t - 1)
                    z = noise[(m, t, l)]
                    block = [b + coeff * zk for b, zk in zip(block, z)]
                per_l.append(tuple(block))
            blocks[(n, m)] = tuple(per_l)
    return QueryBank(blocks=blocks, noise=noise)


def server_answer(n: int,
                  shares_at_n: Mapping[int, tuple[tuple[FieldElement, ...], ...]],
                  queries_at_n: Mapping[int, tuple[tuple[FieldElement, ...], ...]],
                  params: SchemeParams) -> FieldElement:
    """One answer symbol, computed only from server n's own data."""
    if set(shares_at_n) != set(queries_at_n):
        raise DimensionMismatch("share and query sets disagree at this server")
    total = params.field.zero
    for m in sorted(shares_at_n):
        dot = params.field.zero
        for share_block, query_block in zip(shares_at_n[m], queries_at_n[m]):
            for w, qq in zip(share_block, query_block):
                dot = dot + w * qq
        total = total + params.v[(m, n)] * dot
    return total


def collect_answers(config: AsymmConfig, params: SchemeParams,
                    shares: ShareBank, queries: QueryBank) -> tuple[FieldElement, ...]:
    return tuple(
        server_answer(n, shares.at_server(n), queries.at_server(n), params)
        for n in range(1, config.n_servers + 1)
    )


def reconstruct(answers: Sequence[FieldElement],
                params: SchemeParams) -> tuple[FieldElement, ...]:
    """Decode the L combination symbols from one answer per server.

    The weighted power sums V_i = sum_n alpha_n^{i-1} A_n collapse to
    -sum_l f_l^{i-1} d_l once the interference vanishes, so the decoded
    vector d solves a small transposed-Vandermonde system at the f
    points.
    """
    if len(answers) != len(params.alpha):
        raise DimensionMismatch("need exactly one answer per server")
    l_value = params.l_value
    sums = []
    for i in range(1, l_value + 1):
        acc = params.field.zero
        for a_n, answer in zip(params.alpha, answers):
            acc = acc + a_n ** (i - 1) * answer
        sums.append(acc)
    vf = vandermonde(params.f, l_value)
    return tuple(mat_solve(vf, [-s for s in sums]))


def expected_combination(config: AsymmConfig, messages: MessageBank,
                         coeffs: CoefficientBank) -> tuple[FieldElement, ...]:
    """The target linear combination, computed directly from plaintext."""
    field = messages.values[0][0][0].field
    l_value = len(messages.values[0][0])
    out = []
    for l in range(1, l_value + 1):
        acc = field.zero
        for m in range(1, config.m_count + 1):
            for w, lam in zip(messages.column(m, l), coeffs.column(m, l)):
                acc = acc + lam * w
        out.append(acc)
    return tuple(out)


def dual_grs_weights(nodes: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    """Weights v_i = prod_{j != i} (a_i - a_j)^{-1}.

    These annihilate every power sum of degree at most len(nodes) - 2:
    sum_i v_i a_i^j = 0.  At least two distinct nodes are required.
    """
    vals = [e.value for e in nodes]
    if len(set(vals)) != len(vals):
        raise DuplicateNodes(f"nodes collide: {vals}")
    assert len(nodes) >= 2, "need at least two nodes"
    out = []
    for i, a in enumerate(nodes):
        prod = a.field.one
        for j, b in enumerate(nodes):
            if j != i:
                prod = prod * (a - b)
        out.append(prod.inverse())
    return tuple(out)


def cauchy_vandermonde_check(alpha_nodes: Sequence[FieldElement],
                             f_nodes: Sequence[FieldElement]) -> bool:
    """Verify the factorization of a Cauchy block through Vandermonde parts.

    For n alpha-points and l <= n f-points, all distinct, the n x l
    Cauchy matrix [1/(a_i - f_j)] equals

        -D_v . V_alpha^{-1} . V_f . D_u^{-1}

    with D_v the diagonal of prod_{k != i} (a_i - a_k) (products, not
    their inverses), V_f the f-point Vandermonde of height n, and D_u
    the diagonal of u_j = prod_i (f_j - a_i).
    """
    n, l = len(alpha_nodes), len(f_nodes)
    assert n >= l >= 1, "need at least as many alpha points as f points"
    vals = [e.value for e in alpha_nodes] + [e.value for e in f_nodes]
    if len(set(vals)) != len(vals):
        raise DuplicateNodes(f"evaluation points collide: {vals}")
    field = alpha_nodes[0].field

    cauchy = FieldMatrix.from_rows(
        field,
        [[(a - f).inverse() for f in f_nodes] for a in alpha_nodes],
    )
    d_v = []
    for i, a in enumerate(alpha_nodes):
        prod = field.one
        for k, b in enumerate(alpha_nodes):
            if k != i:
                prod = prod * (a - b)
        d_v.append(prod)
    d_u = []
    for f in f_nodes:
        prod = field.one
        for a in alpha_nodes:
            prod = prod * (f - a)
        d_u.append(prod)

    v_alpha = vandermonde(alpha_nodes, n)
    v_f = vandermonde(f_nodes, n)
    solved_cols = [mat_solve(v_alpha, v_f.column(j)) for j in range(l)]
    for i in range(n):
        for j in range(l):
            rhs = -(d_v[i] * solved_cols[j][i] / d_u[j])
            if cauchy.entry(i, j) != rhs:
                return False
    return True


def alignment_identity_check(params: SchemeParams, m: int, i: int, l: int) -> bool:
    """Check sum over R_m of v u alpha^{i-1}/(alpha - f_l) == -f_l^{i-1}."""
    f_l = params.f[l - 1]
    u_ml = params.u[m - 1][l - 1]
    acc = params.field.zero
    for n in params.group_of(m):
        a_n = params.alpha[n - 1]
        acc = acc + params.v[(m, n)] * u_ml * a_n ** (i - 1) / (a_n - f_l)
    return acc == -(f_l ** (i - 1))


@dataclass(frozen=True)
class Transcript:
    answers: tuple[FieldElement, ...]
    decoded: tuple[FieldElement, ...]
    downloads: tuple[int, ...]


@dataclass(frozen=True)
class SimulationResult:
    config: AsymmConfig
    params: SchemeParams
    messages: MessageBank
    coeffs: CoefficientBank
    transcript: Transcript
    expected: tuple[FieldElement, ...]
    match: bool
    rate: Fraction


def stored_symbols(config: AsymmConfig) -> tuple[int, ...]:
    """Per-server storage load in field symbols (K_m * L per hosted set)."""
    l_value = config.l_effective
    loads = [0] * config.n_servers
    for m in range(1, config.m_count + 1):
        k_m = config.pattern.count_of(m)
        for n in config.pattern.servers_of(m):
            loads[n - 1] += k_m * l_value
    return tuple(loads)


def run_protocol(config: AsymmConfig, params: SchemeParams,
                 messages: MessageBank, coeffs: CoefficientBank,
                 storage_seed, query_seed) -> Transcript:
    """Encode, query, answer, decode; one symbol downloaded per server."""
    shares = encode_storage(config, params, messages, storage_seed)
    queries = generate_queries(config, params, coeffs, query_seed)
    answers = collect_answers(config, params, shares, queries)
    decoded = reconstruct(answers, params)
    return Transcript(
        answers=answers,
        decoded=decoded,
        downloads=(1,) * config.n_servers,
    )


def simulate(config: AsymmConfig, seed: int,
             field_override: int | None = None) -> SimulationResult:
    """Full protocol round with fresh random messages and coefficients.

    A single seed drives four independent streams (messages,
    coefficients, storage noise, query noise), so identical inputs give
    identical transcripts.
    """
    params = setup(config, field_override)
    msg_ss, coeff_ss, storage_ss, query_ss = np.random.SeedSequence(seed).spawn(4)
    messages = MessageBank.random(config, params, msg_ss)
    coeffs = CoefficientBank.random(config, params, coeff_ss)
    transcript = run_protocol(config, params, messages, coeffs, storage_ss, query_ss)
    expected = expected_combination(config, messages, coeffs)
    return SimulationResult(
        config=config,
        params=params,
        messages=messages,
        coeffs=coeffs,
        transcript=transcript,
        expected=expected,
        match=transcript.decoded == expected,
        rate=Fraction(params.l_value, config.n_servers),
    )


@dataclass(frozen=True)
class MergedSimulation:
    """A capacity-achieving round over an augmented-and-merged system."""

    capacity: CapacityResult
    augmented: AugmentedSystem
    run: SimulationResult
    downloads: tuple[int, ...]  # per original server, tau_n symbols
    rate: Fraction


def simulate_merged(p: StoragePattern, x: int, t: int, seed: int,
                    field_override: int | None = None) -> MergedSimulation:
    """Capacity pipeline: solve the program, augment, run, merge.

    Each original server answers for all of its virtual copies, so its
    download is tau_n symbols and the overall rate L / sum(tau) equals
    the asymptotic capacity exactly.
    """
    cap = asymptotic_capacity(p, x, t)
    if cap.degenerate:
        raise DegenerateConfig(
            f"capacity is zero for x={x}, t={t}: no scheme exists"
        )
    aug = generate_augmented_system(p, x, t, cap)
    virtual_config = AsymmConfig(
        aug.virtual_pattern(p.counts),
        x_vec=aug.x_bar,
        t_vec=aug.t_bar,
        l_value=aug.l_value,
    )
    run = simulate(virtual_config, seed, field_override)
    rate = Fraction(aug.l_value, aug.n_virtual)
    assert rate == cap.capacity
    return MergedSimulation(
        capacity=cap,
        augmented=aug,
        run=run,
        downloads=aug.tau,
        rate=rate,
    )
