"""The symmetry group of ordering configurations and class counting.

Two linear configurations are equivalent when one maps to the other by a
permutation of the axes, a relabeling of the points, and reversal of some
axis orderings.  The group has order ``(n-1)! * n! * 2^(n-1)``; reversing
an axis or applying an odd permutation flips the orientation sign, which
:func:`sign_parity` tracks.

Canonicalization first forces the first axis ordering to the identity
chain via the (unique) relabeling, then takes the lexicographic minimum
over axis permutations and reversal masks.  Class counting for large ``n``
goes through the orbit-counting identity over permutation cycle types
instead of materializing the ``(n!)^(n-1)`` configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Sequence

from .orders import Configuration, Ordering
from .signs import FormalSign

#: class counts for n = 2..6; frozen reference for the gated n=6 run
KNOWN_CLASS_COUNTS = {2: 1, 3: 2, 4: 21, 5: 5097, 6: 71965235}


@lru_cache(maxsize=None)
def _tables(n: int):
    """Rank tables for S_n: PERMS, RANK, COMPOSE, INV, REV, PARITY.

    Permutations are tuples over range(n) in lexicographic order;
    COMPOSE[a][b] ranks ``perm_a o perm_b`` (apply b, then a).
    """
    perms = tuple(permutations(range(n)))
    rank = {p: i for i, p in enumerate(perms)}
    compose = [[rank[tuple(a[v] for v in b)] for b in perms] for a in perms]
    inv = [0] * len(perms)
    for i, p in enumerate(perms):
        q = [0] * n
        for pos, v in enumerate(p):
            q[v] = pos
        inv[i] = rank[tuple(q)]
    rev = [rank[tuple(reversed(p))] for p in perms]
    parity = []
    for p in perms:
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j]
        )
        parity.append(-1 if inversions % 2 else 1)
    return perms, rank, compose, inv, rev, parity


@dataclass(frozen=True)
class GroupElement:
    """(axis permutation, label permutation, per-axis reversal mask).

    ``axis_source[i]`` is the input axis position feeding output axis ``i``;
    ``label_perm[k]`` is the new position of the label at position ``k``;
    ``reversals`` is indexed by output axis position.
    """

    axis_source: tuple
    label_perm: tuple
    reversals: tuple

    def __post_init__(self):
        k = len(self.axis_source)
        if sorted(self.axis_source) != list(range(k)):
            raise ValueError("axis_source is not a permutation")
        if sorted(self.label_perm) != list(range(k + 1)):
            raise ValueError("label_perm must permute one more label than axes")
        if len(self.reversals) != k:
            raise ValueError("one reversal bit per axis required")

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(tuple(range(n - 1)), tuple(range(n)), (False,) * (n - 1))

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self after other (``apply(self.compose(other), c) ==
        apply(self, apply(other, c))``)."""
        src = tuple(other.axis_source[i] for i in self.axis_source)
        sigma = tuple(self.label_perm[v] for v in other.label_perm)
        rev = tuple(
            self.reversals[i] ^ other.reversals[self.axis_source[i]]
            for i in range(len(self.axis_source))
        )
        return GroupElement(src, sigma, rev)

    def inverse(self) -> "GroupElement":
        k = len(self.axis_source)
        src_inv = [0] * k
        for i, j in enumerate(self.axis_source):
            src_inv[j] = i
        sigma_inv = [0] * len(self.label_perm)
        for i, j in enumerate(self.label_perm):
            sigma_inv[j] = i
        rev = tuple(self.reversals[src_inv[i]] for i in range(k))
        return GroupElement(tuple(src_inv), tuple(sigma_inv), rev)


def sign_parity(g: GroupElement) -> FormalSign:
    """How ``g`` transports the determinant sign: label-permutation parity
    times axis-permutation parity times one flip per reversed axis."""
    k = len(g.axis_source)
    parity = 1
    for i in range(k):
        for j in range(i + 1, k):
            if g.axis_source[i] > g.axis_source[j]:
                parity = -parity
    m = len(g.label_perm)
    for i in range(m):
        for j in range(i + 1, m):
            if g.label_perm[i] > g.label_perm[j]:
                parity = -parity
    if sum(g.reversals) % 2:
        parity = -parity
    return FormalSign(parity)


def apply(g: GroupElement, cfg: Configuration) -> Configuration:
    """Act on a configuration: permute axes, rename labels, reverse masked
    axes.  Left action: ``apply(g.compose(h), c) == apply(g, apply(h, c))``."""
    if len(g.axis_source) != len(cfg.axes) or len(g.label_perm) != len(cfg.labels):
        raise ValueError("group element dimensioned for a different configuration")
    rename = {cfg.labels[k]: cfg.labels[g.label_perm[k]] for k in range(len(cfg.labels))}
    new_orders = []
    for i in range(len(cfg.axes)):
        src = cfg.orders[g.axis_source[i]]
        if g.reversals[i]:
            src = src.reverse()
        pairs = frozenset((rename[e], rename[f]) for e, f in src.pairs)
        new_orders.append(Ordering(cfg.labels, pairs))
    return Configuration(cfg.labels, cfg.axes, tuple(new_orders))


def _config_ranks(cfg: Configuration) -> tuple:
    """Per-axis permutation ranks of a linear configuration."""
    n = len(cfg.labels)
    _, rank, _, _, _, _ = _tables(n)
    index = {lab: i for i, lab in enumerate(cfg.labels)}
    ranks = []
    for ordering in cfg.orders:
        seq = ordering.sequence()
        ranks.append(rank[tuple(index[lab] for lab in seq)])
    return tuple(ranks)


def _ranks_to_config(ranks: Sequence[int], labels: tuple, axes: tuple) -> Configuration:
    n = len(labels)
    perms, _, _, _, _, _ = _tables(n)
    seqs = [tuple(labels[i] for i in perms[r]) for r in ranks]
    return Configuration.from_sequences(labels, axes, seqs)


@lru_cache(maxsize=1 << 16)
def _canonical_ranks(ranks: tuple, n: int):
    """Orbit-minimal rank tuple plus the (axis_source, sigma_rank, mask)
    achieving it.

    A candidate's first axis is always relabeled to the identity chain, the
    lexicographically least first component, so minimizing over axis
    permutations and reversal masks alone scans the true orbit minimum.
    """
    _, _, compose, inv, rev, _ = _tables(n)
    k = len(ranks)
    best = None
    best_g = None
    for src in permutations(range(k)):
        base = [ranks[src[i]] for i in range(k)]
        for mask in range(1 << k):
            arr = [rev[base[i]] if mask >> i & 1 else base[i] for i in range(k)]
            sigma = inv[arr[0]]
            row = compose[sigma]
            cand = tuple(row[a] for a in arr)
            if best is None or cand < best:
                best = cand
                best_g = (src, sigma, mask)
    src, sigma, mask = best_g
    g = GroupElement(
        src,
        _tables(n)[0][sigma],
        tuple(bool(mask >> i & 1) for i in range(k)),
    )
    return best, g


def canonical_key(cfg: Configuration) -> int:
    """Integer encoding of the canonical form: per-axis permutation ranks
    in mixed radix; equal keys iff equivalent."""
    if not cfg.is_linear():
        raise ValueError("canonical keys are defined for linear configurations")
    n = len(cfg.labels)
    ranks, _ = _canonical_ranks(_config_ranks(cfg), n)
    key = 0
    base = factorial(n)
    for r in ranks:
        key = key * base + r
    return key


def canonical_form(cfg: Configuration) -> tuple:
    """(orbit-minimum configuration, group element mapping cfg to it)."""
    if not cfg.is_linear():
        raise ValueError("canonical_form needs a linear configuration")
    n = len(cfg.labels)
    ranks, g = _canonical_ranks(_config_ranks(cfg), n)
    return _ranks_to_config(ranks, cfg.labels, cfg.axes), g


def are_equivalent(c1: Configuration, c2: Configuration) -> bool:
    if len(c1.labels) != len(c2.labels):
        raise ValueError("configurations have different sizes")
    return canonical_key(c1) == canonical_key(c2)


def orbit_size(cfg: Configuration) -> int:
    """Number of distinct configurations in the equivalence orbit."""
    n = len(cfg.labels)
    k = n - 1
    _, _, compose, _, rev, _ = _tables(n)
    ranks = _config_ranks(cfg)
    seen = set()
    for src in permutations(range(k)):
        base = [ranks[src[i]] for i in range(k)]
        for mask in range(1 << k):
            arr = tuple(rev[base[i]] if mask >> i & 1 else base[i] for i in range(k))
            for sigma in range(factorial(n)):
                row = compose[sigma]
                seen.add(tuple(row[a] for a in arr))
    return len(seen)


def default_labels(n: int) -> tuple:
    if n <= 26:
        return tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ"[:n])
    return tuple(f"e{i + 1}" for i in range(n))


def default_axes(k: int) -> tuple:
    names = ("x", "y", "z")
    return tuple(names[i] if i < 3 else f"axis{i + 1}" for i in range(k))


def enumerate_classes(n: int, allow_long: bool = False) -> list:
    """One canonical representative per equivalence class, sorted by key.

    Exhaustive over configurations whose first axis is the identity chain
    (every class has such a member).  n = 5 is gated behind ``allow_long``;
    beyond that the enumeration is out of reach.
    """
    if n < 2 or n > (5 if allow_long else 4):
        limit = "5 with allow_long" if allow_long else "4"
        raise ValueError(f"enumerate_classes supports 2 <= n <= {limit}, got {n}")
    labels = default_labels(n)
    axes = default_axes(n - 1)
    if n == 5:
        reps = _enumerate_classes_bulk(n)
    else:
        m = factorial(n)
        identity_rank = 0
        reps = {}
        for rest in product(range(m), repeat=n - 2):
            ranks = (identity_rank, *rest)
            canon, _ = _canonical_ranks(ranks, n)
            if canon not in reps:
                reps[canon] = canon
        reps = sorted(reps)
    return [_ranks_to_config(r, labels, axes) for r in reps]


def _enumerate_classes_bulk(n: int) -> list:
    """Vectorized canonical-key scan for the gated n=5 enumeration."""
    import numpy as np

    m = factorial(n)
    k = n - 1
    _, _, compose, inv, rev, _ = _tables(n)
    compose_a = np.array(compose, dtype=np.int32)
    inv_a = np.array(inv, dtype=np.int32)
    rev_a = np.array(rev, dtype=np.int32)

    rest = np.indices((m,) * (n - 2), dtype=np.int32).reshape(n - 2, -1)
    ranks = np.vstack([np.zeros((1, rest.shape[1]), dtype=np.int32), rest])  # (k, N)

    radix = np.array([m ** (k - 1 - i) for i in range(k)], dtype=np.int64)
    best = None
    for src in permutations(range(k)):
        gathered = ranks[list(src), :]
        for mask in range(1 << k):
            arr = gathered.copy()
            for i in range(k):
                if mask >> i & 1:
                    arr[i] = rev_a[arr[i]]
            sigma = inv_a[arr[0]]
            cand = compose_a[sigma, arr]  # (k, N)
            keys = (cand.astype(np.int64) * radix[:, None]).sum(axis=0)
            best = keys if best is None else np.minimum(best, keys)
    uniq = np.unique(best)
    out = []
    for key in uniq.tolist():
        parts = []
        for i in range(k):
            parts.append(int(key // radix[i]) % m)
        out.append(tuple(parts))
    return out


def _partitions(total: int):
    """Integer partitions as non-increasing tuples."""

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, cap), 0, -1):
            for tail in rec(remaining - part, part):
                yield (part,) + tail

    yield from rec(total, total)


def _perm_count(m: int, cycle_type) -> int:
    """Number of permutations of S_m with the given cycle type."""
    count = factorial(m)
    seen = {}
    for c in cycle_type:
        seen[c] = seen.get(c, 0) + 1
    for c, mult in seen.items():
        count //= c**mult * factorial(mult)
    return count


def _power_cycle_lengths(cycle_type, power: int):
    """Cycle lengths of sigma^power given sigma's cycle type."""
    from math import gcd

    out = []
    for c in cycle_type:
        g = gcd(c, power)
        out.extend([c // g] * g)
    return out


def count_classes(n: int) -> int:
    """Exact number of equivalence classes of linear configurations.

    Orbit counting over the symmetry group, aggregated by cycle type: an
    axis-permutation cycle of length L with even accumulated reversal
    parity contributes linear orders fixed by relabeling (sigma^L = id),
    one with odd parity contributes orders mapped to their own reversal
    (sigma^L an involution reversing the sequence).  Exactly half of the
    2^L reversal masks on a cycle land in each parity.
    """
    if n < 2 or n > 6:
        raise ValueError(f"count_classes supports 2 <= n <= 6, got {n}")
    n_fact = factorial(n)
    half = n // 2
    reversing_count = factorial(half) * 2**half

    even_fix = {}
    odd_fix = {}
    label_types = [(mu, _perm_count(n, mu)) for mu in _partitions(n)]

    def fixed_counts(mu, length):
        powers = _power_cycle_lengths(mu, length)
        even = n_fact if all(c == 1 for c in powers) else 0
        is_reversing = all(c <= 2 for c in powers) and powers.count(1) == n % 2
        odd = reversing_count if is_reversing else 0
        return even, odd

    total = 0
    for lam in _partitions(n - 1):
        n_lam = _perm_count(n - 1, lam)
        for mu, n_mu in label_types:
            contribution = 1
            for length in lam:
                even, odd = fixed_counts(mu, length)
                term = (1 << (length - 1)) * (even + odd)
                if term == 0:
                    contribution = 0
                    break
                contribution *= term
            if contribution:
                total += n_lam * n_mu * contribution
    group_order = factorial(n - 1) * n_fact * (1 << (n - 1))
    assert total % group_order == 0, "orbit-count sum must divide evenly"
    return total // group_order
