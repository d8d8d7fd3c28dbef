"""Runtime configuration with JSON-file loading and env overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .corpus import Granularity
from .errors import ValidationError
from .tracking import ExcursionParams

DATA_DIR_ENV = "CTRKIT_DATA_DIR"


@dataclass(frozen=True)
class Config:
    data_dir: Path = Path("./ctrkit-data")
    salt: str = "ctrkit-default-salt"
    default_granularity: Granularity = Granularity.MONTH
    excursion: ExcursionParams = field(default_factory=ExcursionParams)
    min_freq: int = 5
    cooccur_min_weight: int = 50
    bind: str = "127.0.0.1:8750"

    def validate(self) -> None:
        if not self.salt:
            raise ValidationError("salt must be non-empty")
        if self.min_freq < 1:
            raise ValidationError("min_freq must be >= 1")
        if self.cooccur_min_weight < 0:
            raise ValidationError("cooccur_min_weight must be >= 0")
        if self.excursion.warmup < 1 or self.excursion.floor < 0:
            raise ValidationError("excursion params out of range")
        if self.excursion.multiple <= 1 or self.excursion.sigma <= 0:
            raise ValidationError("excursion thresholds out of range")


def load_config(path: str | Path | None = None, env: dict | None = None) -> Config:
    """Build a Config from an optional JSON file; CTRKIT_DATA_DIR wins over
    the file's data_dir."""
    env = env if env is not None else os.environ
    cfg = Config()
    if path is not None and Path(path).exists():
        raw = json.loads(Path(path).read_text("utf-8"))
        exc = raw.get("excursion", {})
        cfg = Config(
            data_dir=Path(raw.get("data_dir", cfg.data_dir)),
            salt=raw.get("salt", cfg.salt),
            default_granularity=Granularity(raw.get("default_granularity", cfg.default_granularity.value)),
            excursion=ExcursionParams(
                multiple=exc.get("multiple", 3.0),
                sigma=exc.get("sigma", 3.0),
                warmup=exc.get("warmup", 3),
                floor=exc.get("floor", 5),
                window=exc.get("window"),
            ),
            min_freq=raw.get("min_freq", cfg.min_freq),
            cooccur_min_weight=raw.get("cooccur_min_weight", cfg.cooccur_min_weight),
            bind=raw.get("bind", cfg.bind),
        )
    if env.get(DATA_DIR_ENV):
        cfg = replace(cfg, data_dir=Path(env[DATA_DIR_ENV]))
    cfg.validate()
    return cfg
