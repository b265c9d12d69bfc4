"""Effective capacity of HARQ device-to-device links (C++ core)."""

from ._core import (
    Config,
    ConfigError,
    DomainError,
    cost_n1,
    decoding_error,
    detection,
    evaluate,
    gradient_n1,
    keys,
    pathloss_db,
    perron_root,
    q_function,
    quadratic_root,
    run,
    simulate_ec,
)

__all__ = [
    "Config",
    "ConfigError",
    "DomainError",
    "cost_n1",
    "decoding_error",
    "detection",
    "evaluate",
    "gradient_n1",
    "keys",
    "pathloss_db",
    "perron_root",
    "q_function",
    "quadratic_root",
    "run",
    "simulate_ec",
]
