"""Spike-timing dependent plasticity and traversal-level training.

The pairwise rule: with dt = post_time - pre_time,

    dt > 0  ->  w + A_plus  * exp(-dt / tau_plus)   (pre before post: potentiate)
    dt < 0  ->  w - A_minus * exp( dt / tau_minus)  (post before pre: depress)
    dt = 0  ->  w unchanged

Training walks consecutive packet pairs of a traversal and applies the rule
to every (pre in packet_{t-1}, post in packet_t) synapse using global spike
times. Pairs within one packet and non-consecutive packet pairs are never
updated. Because each increment depends only on spike times, not on the
current weight, training is an order-independent sum of increments.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .types import SpikePacket, StdpParams, WeightMatrix


def stdp_update(w: float, pre_time: float, post_time: float, params: StdpParams = StdpParams()) -> float:
    """Apply the pairwise STDP rule to a single weight."""
    w = float(w)
    pre_time = float(pre_time)
    post_time = float(post_time)
    if not (math.isfinite(w) and math.isfinite(pre_time) and math.isfinite(post_time)):
        raise ValueError("stdp_update requires finite weight and spike times")
    dt = post_time - pre_time
    if dt > 0.0:
        w = w + params.a_plus * math.exp(-dt / params.tau_plus)
    elif dt < 0.0:
        w = w - params.a_minus * math.exp(dt / params.tau_minus)
    if params.w_max is not None:
        w = min(max(w, -params.w_max), params.w_max)
    return w


def _check_packet_ids(packet: SpikePacket, n: int) -> None:
    for nid in packet.spikes:
        if nid < 0 or nid >= n:
            raise ValueError(f"packet neuron id {nid} out of range [0, {n})")


def apply_packet_pair(
    weights: np.ndarray,
    prev_packet: SpikePacket,
    cur_packet: SpikePacket,
    params: StdpParams = StdpParams(),
    include_self_pairs: bool = True,
) -> None:
    """STDP-update ``weights`` in place over prev x cur neuron pairs.

    ``include_self_pairs`` controls whether a neuron active in both packets
    updates its own diagonal entry; excluding self pairs keeps the diagonal
    at zero under training.
    """
    n = weights.shape[0]
    _check_packet_ids(prev_packet, n)
    _check_packet_ids(cur_packet, n)
    for i, t_pre in prev_packet.items():
        pre_global = prev_packet.arrival + t_pre
        for j, t_post in cur_packet.items():
            if not include_self_pairs and i == j:
                continue
            weights[i, j] = stdp_update(weights[i, j], pre_global, cur_packet.arrival + t_post, params)


def train_on_traversal(
    w: WeightMatrix,
    packets: Sequence[SpikePacket],
    params: StdpParams = StdpParams(),
    include_self_pairs: bool = True,
) -> WeightMatrix:
    """Train a copy of ``w`` on the consecutive packet pairs of one traversal.

    Packets must be temporally ordered and non-overlapping (the traversal
    invariant); 0 or 1 packets leave the matrix unchanged. Neuron ids outside
    [0, N) are rejected.
    """
    out = w.copy()
    for packet in packets:
        _check_packet_ids(packet, out.n)
    for prev_packet, cur_packet in zip(packets, packets[1:]):
        apply_packet_pair(out.w, prev_packet, cur_packet, params, include_self_pairs)
    return out
