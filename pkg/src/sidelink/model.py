"""Network instance generation: annular topology, path-loss channel gains, relay traffic."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np


@dataclass
class ModelConfig:
    """Static parameters for random instance generation.

    Distances are abstract units; the gNodeB sits at the origin, inner (relay)
    UEs in the [r_in_min, r_in_max] annulus and outer UEs in the
    [r_out_min, r_out_max] annulus. With fading enabled each path-loss gain
    is multiplied by an independent unit-mean exponential factor (Rayleigh
    power fading).
    """

    n_o: int = 4
    n_i: int = 4
    r_in_min: float = 1.5
    r_in_max: float = 2.5
    r_out_min: float = 3.5
    r_out_max: float = 4.5
    alpha: float = 2.0
    noise: float = 1.0
    power: float = 0.5
    r_max: float = 0.0
    fading: bool = True
    seed: int = 0

    def validate(self):
        if self.n_o < 0 or self.n_i < 0:
            raise ValueError("UE counts must be nonnegative")
        if self.alpha < 0:
            raise ValueError("path loss exponent must be nonnegative")
        if self.noise <= 0:
            raise ValueError("noise power must be positive")
        if self.power <= 0:
            raise ValueError("transmit power must be positive")
        if self.r_max < 0:
            raise ValueError("relay traffic cap must be nonnegative")
        if not (self.r_in_min <= self.r_in_max < self.r_out_min <= self.r_out_max):
            raise ValueError("annuli must be ordered: inner below outer, no overlap")

    def with_size(self, n: int) -> "ModelConfig":
        """Copy with n_o = n_i = n (the default symmetric setting)."""
        return replace(self, n_o=n, n_i=n)


@dataclass
class Topology:
    gnb: np.ndarray        # (2,)
    inner: np.ndarray      # (n_i, 2)
    outer: np.ndarray      # (n_o, 2)


@dataclass
class GainTable:
    h1: np.ndarray         # (n_o, n_i), outer i -> inner j
    h2: np.ndarray         # (n_i,), inner j -> its gNodeB
    p_outer: np.ndarray    # (n_o,)
    p_inner: np.ndarray    # (n_i,)
    noise: float

    @property
    def n_o(self) -> int:
        return self.h1.shape[0]

    @property
    def n_i(self) -> int:
        return self.h1.shape[1]


@dataclass
class ProblemInstance:
    """Everything the solvers need: gains, relay traffic, weights, gNodeB map."""

    gains: GainTable
    relay_traffic: np.ndarray   # (n_i,)
    weights: np.ndarray         # (n_o,)
    gnb_of: np.ndarray = field(default=None)  # (n_i,) serving gNodeB ids

    def __post_init__(self):
        if self.gnb_of is None:
            self.gnb_of = np.zeros(self.gains.n_i, dtype=np.int64)

    @property
    def n_o(self) -> int:
        return self.gains.n_o

    @property
    def n_i(self) -> int:
        return self.gains.n_i

    def to_json(self) -> str:
        g = self.gains
        doc = {
            "n_o": self.n_o,
            "n_i": self.n_i,
            "h1": g.h1.tolist(),
            "h2": g.h2.tolist(),
            "p_outer": g.p_outer.tolist(),
            "p_inner": g.p_inner.tolist(),
            "noise": g.noise,
            "relay_traffic": self.relay_traffic.tolist(),
            "weights": self.weights.tolist(),
            "gnb_of": self.gnb_of.tolist(),
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "ProblemInstance":
        doc = json.loads(text)
        gains = GainTable(
            h1=np.asarray(doc["h1"], dtype=np.float64).reshape(doc["n_o"], doc["n_i"]),
            h2=np.asarray(doc["h2"], dtype=np.float64),
            p_outer=np.asarray(doc["p_outer"], dtype=np.float64),
            p_inner=np.asarray(doc["p_inner"], dtype=np.float64),
            noise=float(doc["noise"]),
        )
        return cls(
            gains=gains,
            relay_traffic=np.asarray(doc["relay_traffic"], dtype=np.float64),
            weights=np.asarray(doc["weights"], dtype=np.float64),
            gnb_of=np.asarray(doc["gnb_of"], dtype=np.int64),
        )


def _sample_annulus(rng: np.random.Generator, n: int, r_min: float, r_max: float) -> np.ndarray:
    """n points uniform in area over the annulus [r_min, r_max]."""
    # inverse-CDF on the radius: area grows like r^2
    u = rng.random(n)
    r = np.sqrt(u * (r_max**2 - r_min**2) + r_min**2)
    theta = rng.random(n) * 2.0 * np.pi
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def gen_topology(cfg: ModelConfig, rng: np.random.Generator) -> Topology:
    """Draw gNodeB-centered geometry: inner and outer UEs uniform over their annuli."""
    cfg.validate()
    inner = _sample_annulus(rng, cfg.n_i, cfg.r_in_min, cfg.r_in_max)
    outer = _sample_annulus(rng, cfg.n_o, cfg.r_out_min, cfg.r_out_max)
    return Topology(gnb=np.zeros(2), inner=inner, outer=outer)


def gains_from_topology(topo: Topology, cfg: ModelConfig) -> GainTable:
    """Deterministic path-loss gains d^(-alpha) from the geometry."""
    d1 = np.linalg.norm(topo.outer[:, None, :] - topo.inner[None, :, :], axis=2)
    d2 = np.linalg.norm(topo.inner - topo.gnb[None, :], axis=1)
    if (d1 == 0).any() or (d2 == 0).any():
        raise ValueError("degenerate geometry: coincident nodes")
    return GainTable(
        h1=d1 ** (-cfg.alpha),
        h2=d2 ** (-cfg.alpha),
        p_outer=np.full(cfg.n_o, cfg.power),
        p_inner=np.full(cfg.n_i, cfg.power),
        noise=cfg.noise,
    )


def gen_instance(cfg: ModelConfig, rng: np.random.Generator) -> ProblemInstance:
    """Random instance: topology + gains (optionally faded), relay traffic
    ~ U[0, r_max], unit weights."""
    topo = gen_topology(cfg, rng)
    gains = gains_from_topology(topo, cfg)
    if cfg.fading:
        gains.h1 = gains.h1 * rng.exponential(size=gains.h1.shape)
        gains.h2 = gains.h2 * rng.exponential(size=gains.h2.shape)
    relay_traffic = rng.random(cfg.n_i) * cfg.r_max
    return ProblemInstance(
        gains=gains,
        relay_traffic=relay_traffic,
        weights=np.ones(cfg.n_o),
    )
