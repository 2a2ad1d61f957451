"""Rank-order spike encoding and code-capacity utilities.

A dense feature vector becomes a brief burst of spikes in which the most
strongly activated neuron fires first. With n neurons above the sparsity
threshold, the neuron of rank r (0-indexed, descending activation) fires at
offset tau_base * r / n, so the packet spans [0, tau_base). Equal
activations fire in ascending neuron-id order (stable tie-break), which
keeps packets bit-identical across implementations.

The threshold comparison is strict: activation must exceed the threshold to
fire. An input with no super-threshold neuron yields an empty (silent)
packet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .types import SpikePacket, Traversal, as_features


@dataclass(frozen=True)
class EncoderParams:
    """Packet time span and firing threshold."""

    tau_base: float = 0.010
    sparsity_threshold: float = 0.1

    def __post_init__(self):
        if not (math.isfinite(self.tau_base) and self.tau_base > 0.0):
            raise ValueError(f"tau_base must be positive and finite, got {self.tau_base}")
        if not math.isfinite(self.sparsity_threshold):
            raise ValueError(f"sparsity_threshold must be finite, got {self.sparsity_threshold}")


def encode(features, params: EncoderParams = EncoderParams(), *, arrival: float = 0.0) -> SpikePacket:
    """Convert a feature vector into a rank-order spike packet.

    Neurons with activation strictly greater than the sparsity threshold
    fire, ordered by descending activation (ties by ascending neuron id);
    all others stay silent. Raises ValueError on non-finite activations.
    """
    arr = as_features(features)
    active = [i for i in range(arr.size) if arr[i] > params.sparsity_threshold]
    if not active:
        return SpikePacket({}, arrival=arrival)
    ranked = sorted(active, key=lambda i: (-arr[i], i))
    n = len(ranked)
    spikes = {nid: params.tau_base * (rank / n) for rank, nid in enumerate(ranked)}
    return SpikePacket(spikes, arrival=arrival)


def encode_traversal(traversal: Traversal, params: EncoderParams = EncoderParams()) -> list[SpikePacket]:
    """Encode every contact of a traversal, stamping global arrival times.

    Rejects traversals whose inter-contact gaps do not exceed the packet
    span, since overlapping packets would break causal pair ordering.
    """
    prev_time = None
    packets = []
    for features, t in traversal.contacts:
        if prev_time is not None and t - prev_time <= params.tau_base:
            raise ValueError(
                f"contact gap {t - prev_time} s must exceed the packet span tau_base={params.tau_base} s"
            )
        packets.append(encode(features, params, arrival=t))
        prev_time = t
    return packets


def code_capacity_bits(n_active: int, mode: str = "ordered", n_total: int | None = None) -> float:
    """Information capacity of one spike volley, in bits.

    ``ordered`` returns log2(n_active!), the capacity of a code in which
    the firing order of the active neurons carries the message. ``unordered``
    returns log2(C(n_total, n_active)), the capacity of a sparse code that
    only records which n_active of n_total neurons fired. Both are computed
    via log-gamma so large populations stay exact to double precision.
    """
    n_active = int(n_active)
    if n_active < 1:
        raise ValueError(f"n_active must be >= 1, got {n_active}")
    if mode == "ordered":
        return math.lgamma(n_active + 1) / math.log(2.0)
    if mode == "unordered":
        if n_total is None:
            raise ValueError("unordered capacity requires n_total")
        n_total = int(n_total)
        if n_total < n_active:
            raise ValueError(f"n_total={n_total} must be >= n_active={n_active}")
        log_comb = math.lgamma(n_total + 1) - math.lgamma(n_active + 1) - math.lgamma(n_total - n_active + 1)
        return log_comb / math.log(2.0)
    raise ValueError(f"mode must be 'ordered' or 'unordered', got {mode!r}")
