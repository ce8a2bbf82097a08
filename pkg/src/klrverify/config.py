"""JSON configuration for verification runs.

A config names a Cartan datum, optional Q overrides, a dominant weight and a
list of cases (beta, i, checks). Example::

    {"schema": 1, "name": "sl2_l2",
     "cartan": {"matrix": [[2]], "labels": ["i"]},
     "lambda": {"i": 2},
     "cases": [{"beta": {"i": 1}, "i": "i", "checks": ["rho", "zigzag"]}],
     "bounds": {"buffer": 2, "degree_cap": 60, "D": null, "mackey_D": 8}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .cartan import CartanDatum, CartanError, QMatrix, make_q, validate_cartan

SCHEMA_VERSION = 1

ALL_CHECKS = ("mackey", "cyclotomic", "rho", "zigzag", "eq1", "eq2", "eq3", "grin",
              "prop_main", "projectivity", "simples")


class ConfigError(ValueError):
    """The configuration file is unreadable or inconsistent."""


@dataclass(frozen=True)
class Bounds:
    buffer: int = 2
    degree_cap: int = 60
    D: int | None = None          # x_{n+2} truncation of K; None means lambda_i + 2p + 4
    mackey_D: int = 8

    def as_dict(self) -> dict:
        return {"buffer": self.buffer, "degree_cap": self.degree_cap, "D": self.D,
                "mackey_D": self.mackey_D}


@dataclass(frozen=True)
class CaseSpec:
    id: str
    beta: tuple[int, ...]
    i: int
    checks: tuple[str, ...]


@dataclass
class VerifyConfig:
    name: str
    datum: CartanDatum
    qmat: QMatrix
    lam: tuple[int, ...]
    cases: list[CaseSpec]
    bounds: Bounds
    raw: dict = field(default_factory=dict)


def beta_label(datum: CartanDatum, beta) -> str:
    """'0', 'i', '2i+j' style name of a root vector; numeric labels get an 'a' prefix."""
    def name(lab):
        return "a" + lab if lab[:1].isdigit() else lab
    parts = [(f"{c}" if c != 1 else "") + name(datum.labels[k]) for k, c in enumerate(beta) if c]
    return "+".join(parts) or "0"


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{what} must be an integer")
    return value


def parse_config(raw: dict, name: str = "config") -> VerifyConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    schema = raw.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema version {schema!r}")
    cart = raw.get("cartan")
    if not isinstance(cart, dict) or "matrix" not in cart:
        raise ConfigError("missing cartan.matrix")
    try:
        datum = validate_cartan(cart["matrix"], cart.get("symmetrizers"), cart.get("labels"))
        qmat = make_q(datum, raw.get("q") or [])
    except CartanError as exc:
        raise ConfigError(str(exc)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad cartan/q section: {exc}") from exc
    lam_raw = raw.get("lambda", {})
    if not isinstance(lam_raw, dict):
        raise ConfigError("lambda must map labels to multiplicities")
    for lab, v in lam_raw.items():
        if lab not in datum.labels:
            raise ConfigError(f"unknown label {lab!r} in lambda")
        if _int(v, f"lambda[{lab}]") < 0:
            raise ConfigError(f"lambda[{lab}] must be nonnegative")
    lam = datum.weight(lam_raw)
    b = raw.get("bounds", {}) or {}
    cap = b.get("degree_cap", b.get("N", 60))
    D = b.get("D")
    bounds = Bounds(buffer=_int(b.get("buffer", 2), "bounds.buffer"),
                    degree_cap=_int(cap, "bounds.degree_cap"),
                    D=None if D is None else _int(D, "bounds.D"),
                    mackey_D=_int(b.get("mackey_D", 8), "bounds.mackey_D"))
    cases = []
    seen = set()
    for k, c in enumerate(raw.get("cases", [])):
        if not isinstance(c, dict):
            raise ConfigError(f"case {k} must be an object")
        beta_raw = c.get("beta", {})
        if not isinstance(beta_raw, dict):
            raise ConfigError(f"case {k}: beta must map labels to counts")
        for lab, v in beta_raw.items():
            if lab not in datum.labels:
                raise ConfigError(f"case {k}: unknown label {lab!r} in beta")
            if _int(v, f"case {k} beta[{lab}]") < 0:
                raise ConfigError(f"case {k}: beta is not in Q+")
        beta = datum.root(beta_raw)
        lab = c.get("i")
        if lab not in datum.labels:
            raise ConfigError(f"case {k}: unknown label i={lab!r}")
        checks = tuple(c.get("checks", ALL_CHECKS))
        bad = [x for x in checks if x not in ALL_CHECKS]
        if bad:
            raise ConfigError(f"case {k}: unknown checks {bad}")
        cid = str(c.get("id") or f"{raw.get('name', name)}:beta={beta_label(datum, beta)}:i={lab}")
        if cid in seen:
            raise ConfigError(f"duplicate case id {cid!r}")
        seen.add(cid)
        cases.append(CaseSpec(cid, beta, datum.index(lab), checks))
    return VerifyConfig(str(raw.get("name", name)), datum, qmat, lam, cases, bounds, raw)


def load_config(path: str | Path) -> VerifyConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    return parse_config(raw, path.stem)
