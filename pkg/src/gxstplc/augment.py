"""Virtual-server augmentation: turning a capacity vertex into a scheme.

The optimal download profile tau assigns server n a budget of tau_n
answer symbols.  Splitting server n into virtual servers (n, 1) ...
(n, tau_n) and re-deriving per-set thresholds produces an uneven-
threshold configuration whose one-symbol-per-virtual-server scheme,
merged back onto the original servers, downloads exactly sum(tau)
symbols for L decoded symbols: the capacity is met with equality.

For each message set m the inflation factor gamma_m is the
(x + t + 1)-th largest budget inside R_m; the virtual replication group
takes min(gamma_m, tau_n) copies from each member n, and the thresholds
scale to x * gamma_m and t * gamma_m.  Colluding original servers then
expose at most x * gamma_m virtual members of any group, which is what
the security audit checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capacity import CapacityResult
from .errors import DegenerateInput
from .pattern import MessageSet, StoragePattern

VirtualServer = tuple[int, int]  # (original server, copy index), both 1-based


@dataclass(frozen=True)
class AugmentedSystem:
    n_original: int
    x: int
    t: int
    l_value: int
    tau: tuple[int, ...]
    virtual_servers: tuple[VirtualServer, ...]
    r_bar: tuple[tuple[VirtualServer, ...], ...]
    gamma: tuple[int, ...]
    x_bar: tuple[int, ...]
    t_bar: tuple[int, ...]
    delta: tuple[tuple[tuple[int, int], ...], ...]  # per m: ((n, copies), ...)

    @property
    def n_virtual(self) -> int:
        return len(self.virtual_servers)

    def flat_id(self, vs: VirtualServer) -> int:
        """1-based position of a virtual server in the global order."""
        n, i = vs
        if not (1 <= n <= self.n_original and 1 <= i <= self.tau[n - 1]):
            raise ValueError(f"no such virtual server: {vs}")
        return sum(self.tau[: n - 1]) + i

    def delta_of(self, m: int, n: int) -> int:
        for server, copies in self.delta[m - 1]:
            if server == n:
                return copies
        return 0

    def virtual_pattern(self, counts: tuple[int, ...] | None = None) -> StoragePattern:
        """The augmented system as a flat pattern over virtual servers."""
        if counts is None:
            counts = tuple(1 for _ in self.r_bar)
        sets = tuple(
            MessageSet(tuple(self.flat_id(vs) for vs in group), k)
            for group, k in zip(self.r_bar, counts)
        )
        return StoragePattern(self.n_virtual, sets)


@dataclass(frozen=True)
class ServerPlan:
    """What one original server does after merging its virtual copies."""

    server: int
    downloads: int
    virtual_ids: tuple[int, ...]
    sets_per_copy: tuple[tuple[int, ...], ...]


def generate_augmented_system(
    p: StoragePattern, x: int, t: int, cap: CapacityResult
) -> AugmentedSystem:
    if cap.degenerate or cap.tau is None or cap.l_value is None:
        raise DegenerateInput("cannot augment a zero-capacity configuration")
    tau = cap.tau
    if len(tau) != p.n_servers:
        raise DegenerateInput("download profile does not match the pattern")

    virtual = tuple(
        (n, i) for n in range(1, p.n_servers + 1) for i in range(1, tau[n - 1] + 1)
    )
    gamma: list[int] = []
    x_bar: list[int] = []
    t_bar: list[int] = []
    r_bar: list[tuple[VirtualServer, ...]] = []
    delta: list[tuple[tuple[int, int], ...]] = []
    for m in range(1, p.m_count + 1):
        group = p.servers_of(m)
        # budgets sorted high to low, ties broken by ascending server id
        ordered = sorted(group, key=lambda n: (-tau[n - 1], n))
        g = tau[ordered[x + t] - 1]
        slots = tuple((n, min(g, tau[n - 1])) for n in group)
        members = tuple((n, i) for n, d in slots for i in range(1, d + 1))
        nu = sum(d for _, d in slots) - (x + t) * g
        assert nu >= cap.l_value, "feasible vertex must leave L decodable slots"
        gamma.append(g)
        x_bar.append(x * g)
        t_bar.append(t * g)
        r_bar.append(members)
        delta.append(slots)

    return AugmentedSystem(
        n_original=p.n_servers,
        x=x,
        t=t,
        l_value=cap.l_value,
        tau=tau,
        virtual_servers=virtual,
        r_bar=tuple(r_bar),
        gamma=tuple(gamma),
        x_bar=tuple(x_bar),
        t_bar=tuple(t_bar),
        delta=tuple(delta),
    )


def merged_query_plan(a: AugmentedSystem) -> tuple[ServerPlan, ...]:
    """Per original server: its virtual copies and the sets each copy holds."""
    holder: dict[VirtualServer, list[int]] = {vs: [] for vs in a.virtual_servers}
    for m, group in enumerate(a.r_bar, start=1):
        for vs in group:
            holder[vs].append(m)
    plans = []
    for n in range(1, a.n_original + 1):
        copies = [(n, i) for i in range(1, a.tau[n - 1] + 1)]
        plans.append(
            ServerPlan(
                server=n,
                downloads=a.tau[n - 1],
                virtual_ids=tuple(a.flat_id(vs) for vs in copies),
                sets_per_copy=tuple(tuple(holder[vs]) for vs in copies),
            )
        )
    return tuple(plans)


def collusion_exposure(a: AugmentedSystem, colluders: tuple[int, ...]) -> tuple[int, ...]:
    """Virtual servers of each group exposed when original servers collude.

    Exposure of group m is sum over colluders of delta_{m,n}; the
    construction keeps it at or below x * gamma_m for any x colluders.
    """
    for n in colluders:
        if not (1 <= n <= a.n_original):
            raise ValueError(f"no such server: {n}")
    if len(set(colluders)) != len(colluders):
        raise ValueError("colluders listed twice")
    return tuple(
        sum(a.delta_of(m, n) for n in colluders) for m in range(1, len(a.r_bar) + 1)
    )
