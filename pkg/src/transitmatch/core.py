"""Domain types shared by all modules: passengers, parts, features, stops, config."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import IntEnum, Enum
from pathlib import Path

import numpy as np

from .errors import InvalidConfig


class BodyPart(IntEnum):
    """Body parts in fixed concatenation order."""

    HEAD = 0
    TORSO = 1
    LEGS = 2


class Door(Enum):
    FRONT = "front"
    REAR = "rear"


@dataclass(frozen=True)
class FeatureVector:
    """Concatenation of per-part embeddings, Head | Torso | Legs.

    Dimension is 3 * d_part; the slice [i*d_part, (i+1)*d_part) belongs
    to BodyPart(i).
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise ValueError("feature vector must be one-dimensional")
        if v.size == 0 or v.size % 3 != 0:
            raise ValueError("feature dimension must be a positive multiple of 3")
        if not np.all(np.isfinite(v)):
            raise ValueError("feature vector contains non-finite entries")
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.size

    @property
    def d_part(self) -> int:
        return self.values.size // 3

    def part(self, p: BodyPart) -> np.ndarray:
        d = self.d_part
        return self.values[p * d : (p + 1) * d]

    @staticmethod
    def concat(parts: dict[BodyPart, np.ndarray] | list[np.ndarray]) -> "FeatureVector":
        if isinstance(parts, dict):
            parts = [parts[p] for p in BodyPart]
        return FeatureVector(np.concatenate([np.asarray(p, dtype=np.float64) for p in parts]))

    def to_list(self) -> list[float]:
        return self.values.tolist()

    @staticmethod
    def from_list(values: list[float]) -> "FeatureVector":
        return FeatureVector(np.asarray(values, dtype=np.float64))


@dataclass
class PartObservation:
    """One body part in one frame: raw pixels or a precomputed embedding, plus a quality score."""

    image: np.ndarray | None = None
    embedding: np.ndarray | None = None
    score: float | None = None

    def __post_init__(self):
        if self.image is None and self.embedding is None:
            raise ValueError("observation needs an image or an embedding")
        if self.score is not None and not (0.0 <= self.score <= 1.0):
            raise ValueError("score must lie in [0, 1]")


# One frame = one observation per body part, in BodyPart order.
Frame = tuple[PartObservation, PartObservation, PartObservation]


@dataclass
class Tracklet:
    """Ordered per-frame, per-part observations of one passenger."""

    passenger_ref: str
    frames: list[Frame]

    def __post_init__(self):
        if len(self.frames) < 1:
            raise ValueError("tracklet must hold at least one frame")
        for f in self.frames:
            if len(f) != len(BodyPart):
                raise ValueError("each frame needs exactly one observation per body part")

    def __len__(self) -> int:
        return len(self.frames)


def check_gray_image(img: np.ndarray) -> np.ndarray:
    """Validate a grayscale image: 2-D, values in [0, 1]."""
    a = np.asarray(img, dtype=np.float64)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("image must be a non-empty 2-D array")
    if not np.all(np.isfinite(a)) or a.min() < 0.0 or a.max() > 1.0:
        raise ValueError("pixel values must be finite and in [0, 1]")
    return a


@dataclass
class PassengerEvent:
    passenger_id: str
    tracklet: Tracklet
    door: Door = Door.FRONT


@dataclass
class StopEvent:
    """Boarding and alighting sets at one stop along the route."""

    stop_id: int
    boarding: list[PassengerEvent] = field(default_factory=list)
    alighting: list[PassengerEvent] = field(default_factory=list)


@dataclass
class EngineConfig:
    """Tunables for grading, aggregation, indexing, and matching."""

    sigma: float = 0.12            # hot/cold confidence threshold
    top_k: int = 5                 # candidate count per query
    log_k: float = 20.0            # logarithmic mapping steepness
    score_weights: tuple[float, float, float] = (0.2, 0.6, 0.2)
    sqfa_threshold: float = 0.3
    tracklet_len: int = 8
    distance: str = "l2"           # "l2" (squared) or "cosine"
    d_part: int = 256
    score_min: float = 0.0         # log-map input bounds
    score_max: float = 1.0

    @property
    def feature_dim(self) -> int:
        return 3 * self.d_part


def validate_config(cfg: EngineConfig) -> EngineConfig:
    """Check every invariant; raise InvalidConfig naming the offending field."""
    if not (0.0 < cfg.sigma < 1.0):
        raise InvalidConfig("sigma", f"must lie in (0, 1), got {cfg.sigma}")
    if cfg.top_k < 2:
        raise InvalidConfig("top_k", f"rank-2 is required for confidence, got {cfg.top_k}")
    if cfg.log_k <= 0:
        raise InvalidConfig("log_k", f"must be positive, got {cfg.log_k}")
    if len(cfg.score_weights) != 3 or any(w < 0 for w in cfg.score_weights):
        raise InvalidConfig("score_weights", f"three nonnegative weights required, got {cfg.score_weights}")
    if not (0.0 <= cfg.sqfa_threshold < 1.0):
        raise InvalidConfig("sqfa_threshold", f"must lie in [0, 1), got {cfg.sqfa_threshold}")
    if cfg.tracklet_len < 1:
        raise InvalidConfig("tracklet_len", f"must be >= 1, got {cfg.tracklet_len}")
    if cfg.distance not in ("l2", "cosine"):
        raise InvalidConfig("distance", f"must be 'l2' or 'cosine', got {cfg.distance!r}")
    if cfg.d_part < 1:
        raise InvalidConfig("d_part", f"must be >= 1, got {cfg.d_part}")
    if not (cfg.score_min < cfg.score_max):
        raise InvalidConfig("score_min", "score_min must be < score_max")
    return cfg


_CONFIG_FIELDS = {
    "sigma": float,
    "top_k": int,
    "log_k": float,
    "sqfa_threshold": float,
    "tracklet_len": int,
    "distance": str,
    "d_part": int,
    "score_min": float,
    "score_max": float,
}


def parse_config_text(text: str, base: EngineConfig | None = None) -> EngineConfig:
    """Parse the flat key-value config format. Unknown keys are errors."""
    cfg = base or EngineConfig()
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig("config", f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "score_weights":
            parts = [float(x) for x in value.split(",")]
            if len(parts) != 3:
                raise InvalidConfig("score_weights", "expects three comma-separated weights")
            updates[key] = tuple(parts)
        elif key in _CONFIG_FIELDS:
            try:
                updates[key] = _CONFIG_FIELDS[key](value)
            except ValueError as exc:
                raise InvalidConfig(key, f"bad value {value!r}: {exc}") from exc
        else:
            raise InvalidConfig(key, "unknown config key")
    return validate_config(replace(cfg, **updates))


def load_config_file(path: str | Path, base: EngineConfig | None = None) -> EngineConfig:
    return parse_config_text(Path(path).read_text(), base)


# --- serialization helpers (round-trip identity, used by checkpoints and the CLI) ---

def config_to_dict(cfg: EngineConfig) -> dict:
    return {
        "sigma": cfg.sigma,
        "top_k": cfg.top_k,
        "log_k": cfg.log_k,
        "score_weights": list(cfg.score_weights),
        "sqfa_threshold": cfg.sqfa_threshold,
        "tracklet_len": cfg.tracklet_len,
        "distance": cfg.distance,
        "d_part": cfg.d_part,
        "score_min": cfg.score_min,
        "score_max": cfg.score_max,
    }


def config_from_dict(d: dict) -> EngineConfig:
    d = dict(d)
    if "score_weights" in d:
        d["score_weights"] = tuple(d["score_weights"])
    return validate_config(EngineConfig(**d))


def tracklet_to_dict(t: Tracklet) -> dict:
    frames = []
    for frame in t.frames:
        frames.append([
            {
                "image": None if o.image is None else np.asarray(o.image).tolist(),
                "embedding": None if o.embedding is None else np.asarray(o.embedding).tolist(),
                "score": o.score,
            }
            for o in frame
        ])
    return {"passenger_ref": t.passenger_ref, "frames": frames}


def tracklet_from_dict(d: dict) -> Tracklet:
    frames = []
    for frame in d["frames"]:
        obs = tuple(
            PartObservation(
                image=None if o["image"] is None else np.asarray(o["image"], dtype=np.float64),
                embedding=None if o["embedding"] is None else np.asarray(o["embedding"], dtype=np.float64),
                score=o["score"],
            )
            for o in frame
        )
        frames.append(obs)
    return Tracklet(passenger_ref=d["passenger_ref"], frames=frames)


def stop_event_to_dict(ev: StopEvent) -> dict:
    def pe(e: PassengerEvent) -> dict:
        return {
            "passenger_id": e.passenger_id,
            "tracklet": tracklet_to_dict(e.tracklet),
            "door": e.door.value,
        }

    return {
        "stop_id": ev.stop_id,
        "boarding": [pe(e) for e in ev.boarding],
        "alighting": [pe(e) for e in ev.alighting],
    }


def stop_event_from_dict(d: dict) -> StopEvent:
    def pe(e: dict) -> PassengerEvent:
        return PassengerEvent(
            passenger_id=e["passenger_id"],
            tracklet=tracklet_from_dict(e["tracklet"]),
            door=Door(e["door"]),
        )

    return StopEvent(
        stop_id=d["stop_id"],
        boarding=[pe(e) for e in d["boarding"]],
        alighting=[pe(e) for e in d["alighting"]],
    )
