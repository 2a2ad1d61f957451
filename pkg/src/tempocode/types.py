"""Shared domain types and their invariants.

All types here are value types: validated on construction and treated as
immutable afterwards, so they are safe to share between threads. Times are
seconds in double precision throughout (milliseconds appear only in display
formatting). Neuron ids are dense integers 0..N-1; sparse spike maps iterate
in ascending neuron-id order so downstream sums are reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

#: A feature vector is a 1-D float64 array of finite activations, one per
#: neuron. Use :func:`as_features` to validate raw input at API boundaries.
FeatureVector = np.ndarray


def as_features(values) -> np.ndarray:
    """Validate and convert a feature vector; rejects empty or non-finite input."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"feature vector must be 1-D with at least one neuron, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"feature vector contains non-finite activations: {arr!r}")
    return arr


@dataclass(frozen=True)
class SpikePacket:
    """Rank-order spike packet produced by one sensor contact.

    ``spikes`` maps neuron id to spike time offset (seconds) within the
    packet; ``arrival`` is the global time of the packet's first spike.
    A non-empty packet always has minimum offset exactly 0, and all offsets
    are pairwise distinct.
    """

    spikes: dict[int, float]
    arrival: float = 0.0

    def __post_init__(self):
        ordered = {int(nid): float(t) for nid, t in sorted(self.spikes.items())}
        if len(ordered) != len(self.spikes):
            raise ValueError("duplicate neuron ids in spike packet")
        if not math.isfinite(self.arrival):
            raise ValueError(f"packet arrival time must be finite, got {self.arrival}")
        times = list(ordered.values())
        if times:
            if not all(math.isfinite(t) and t >= 0.0 for t in times):
                raise ValueError(f"spike offsets must be finite and non-negative: {times}")
            if min(times) != 0.0:
                raise ValueError(f"first spike of a non-empty packet must be at offset 0, got {min(times)}")
            if len(set(times)) != len(times):
                raise ValueError(f"spike offsets must be pairwise distinct: {times}")
        object.__setattr__(self, "spikes", ordered)

    def __len__(self) -> int:
        return len(self.spikes)

    def __bool__(self) -> bool:
        return bool(self.spikes)

    def items(self) -> Iterator[tuple[int, float]]:
        """(neuron id, offset) pairs in ascending neuron-id order."""
        return iter(self.spikes.items())

    def global_time(self, neuron_id: int) -> float:
        return self.arrival + self.spikes[neuron_id]

    def first_neuron(self) -> int | None:
        """Neuron that fires first (offset 0), or None for an empty packet."""
        if not self.spikes:
            return None
        return min(self.spikes, key=lambda nid: (self.spikes[nid], nid))

    def by_time(self) -> list[tuple[int, float]]:
        """(neuron id, offset) pairs sorted by firing time."""
        return sorted(self.spikes.items(), key=lambda kv: (kv[1], kv[0]))


@dataclass
class WeightMatrix:
    """N x N synaptic weights; w[i, j] is the strength of pre i -> post j."""

    w: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.w, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"weight matrix must be square and non-empty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("weight matrix contains non-finite entries")
        self.w = arr

    @classmethod
    def zeros(cls, n: int) -> "WeightMatrix":
        if n < 1:
            raise ValueError(f"weight matrix dimension must be >= 1, got {n}")
        return cls(np.zeros((n, n), dtype=float))

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def copy(self) -> "WeightMatrix":
        return WeightMatrix(self.w.copy())

    def to_json(self) -> str:
        """Serialize as {"n": N, "w": [[...], ...]}; exact for finite doubles.

        Python's float repr is shortest-round-trip, so load(dump(m)) is
        bit-identical.
        """
        return json.dumps({"n": self.n, "w": [[float(x) for x in row] for row in self.w]})

    @classmethod
    def from_json(cls, text: str) -> "WeightMatrix":
        data = json.loads(text)
        if not isinstance(data, dict) or set(data) != {"n", "w"}:
            raise ValueError("weight matrix JSON must be an object with keys 'n' and 'w'")
        arr = np.asarray(data["w"], dtype=float)
        if arr.shape != (data["n"], data["n"]):
            raise ValueError(f"weight matrix JSON shape {arr.shape} does not match n={data['n']}")
        return cls(arr)


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be positive and finite, got {value}")
    return value


@dataclass(frozen=True)
class StdpParams:
    """Exponential-window STDP parameters.

    ``w_max`` optionally clips weights into [-w_max, w_max] after each
    update; it is off by default because short training runs cannot
    saturate (feedback-stabilisation rules are out of scope here).
    """

    a_plus: float = 0.01
    a_minus: float = 0.01
    tau_plus: float = 0.020
    tau_minus: float = 0.020
    w_max: float | None = None

    def __post_init__(self):
        for name in ("a_plus", "a_minus", "tau_plus", "tau_minus"):
            object.__setattr__(self, name, _require_positive(name, getattr(self, name)))
        if self.w_max is not None:
            object.__setattr__(self, "w_max", _require_positive("w_max", self.w_max))


@dataclass(frozen=True)
class LatencyParams:
    """Displacement decoding assumes this uniform motor velocity (units/s)."""

    assumed_velocity: float = 1.0

    def __post_init__(self):
        object.__setattr__(
            self, "assumed_velocity", _require_positive("assumed_velocity", self.assumed_velocity)
        )


@dataclass(frozen=True)
class Displacement:
    """Spatial displacement in world units; dz stays 0 for planar decoding."""

    dx: float
    dy: float
    dz: float = 0.0

    def __post_init__(self):
        for name in ("dx", "dy", "dz"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"displacement component {name} must be finite, got {v}")
            object.__setattr__(self, name, v)

    def to_array(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz])

    def norm(self) -> float:
        return math.sqrt(self.dx * self.dx + self.dy * self.dy + self.dz * self.dz)


@dataclass(frozen=True)
class Traversal:
    """Ordered sequence of timed contacts over one object surface.

    Contact times must be strictly increasing. Whether consecutive gaps
    exceed the encoder's packet span (so packets never overlap) depends on
    the encoder in use and is enforced at packetization time.
    """

    contacts: tuple[tuple[np.ndarray, float], ...]
    motor_direction: float = 0.0
    label: str = ""

    def __post_init__(self):
        checked = []
        dim = None
        prev_time = None
        for features, t in self.contacts:
            arr = as_features(features)
            if dim is None:
                dim = arr.size
            elif arr.size != dim:
                raise ValueError(f"contact dimensionality changed from {dim} to {arr.size}")
            t = float(t)
            if not math.isfinite(t):
                raise ValueError(f"contact time must be finite, got {t}")
            if prev_time is not None and t <= prev_time:
                raise ValueError(f"contact times must be strictly increasing: {prev_time} -> {t}")
            prev_time = t
            checked.append((arr, t))
        if not math.isfinite(float(self.motor_direction)):
            raise ValueError("motor direction must be finite")
        object.__setattr__(self, "contacts", tuple(checked))
        object.__setattr__(self, "motor_direction", float(self.motor_direction))

    def __len__(self) -> int:
        return len(self.contacts)

    def feature_sum(self) -> np.ndarray:
        """Componentwise sum of all contact vectors (the order-blind view)."""
        if not self.contacts:
            raise ValueError("cannot sum an empty traversal")
        return np.sum(np.stack([f for f, _ in self.contacts]), axis=0)
