"""Document formats: game files, certificate documents, table exports.

Game files are JSON, one game per document:

    {
      "players": 4,
      "summarization": {"type": "mean"},
      "payoffs": [
        {"action0": {"type": "affine", "a": 0.0, "b": 1.0},
         "action1": {"type": "affine", "a": 1.0, "b": -1.0}},
        ...
      ]
    }

Summarization specs: {"type": "mean"}, {"type": "majority_fraction"}, or
{"type": "linear_weighted", "weights": [...], "normalize": false}. Custom
summarizations are code-only and cannot be expressed in files.

Payoff specs: {"type": "constant", "c": ...}, {"type": "affine", "a": ...,
"b": ...}, {"type": "quadratic", "a": ..., "b": ..., "c": ...}, or
{"type": "piecewise_linear", "points": [[z, value], ...]}.

Parse errors name the offending field path and the reason.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .core import (
    Affine,
    Constant,
    LinearWeighted,
    MajorityFraction,
    Mean,
    MixedProfile,
    Payoff,
    PiecewiseLinear,
    PureProfile,
    Quadratic,
    SummGame,
    Summarization,
)
from .errors import InputError
from .learning import Trajectory
from .solver import (
    EquilibriumCertificate,
    Horizontal,
    Learned,
    VTable,
    Vertical,
)

__all__ = [
    "parse_game",
    "load_game",
    "certificate_to_doc",
    "certificate_from_doc",
    "load_certificate",
    "write_trajectory_csv",
    "write_vtable",
]


def _expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{path}: expected an array, got {type(value).__name__}")
    return value


def _expect_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{path}: expected a number, got {type(value).__name__}")
    return float(value)


def _expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{path}: expected an integer, got {type(value).__name__}")
    return value


def _get(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise InputError(f"{path}.{key}: missing required field")
    return obj[key]


def _parse_payoff(spec: Any, path: str) -> Payoff:
    obj = _expect_object(spec, path)
    kind = _get(obj, "type", path)
    try:
        if kind == "constant":
            return Constant(_expect_number(_get(obj, "c", path), f"{path}.c"))
        if kind == "affine":
            return Affine(
                _expect_number(_get(obj, "a", path), f"{path}.a"),
                _expect_number(_get(obj, "b", path), f"{path}.b"),
            )
        if kind == "quadratic":
            return Quadratic(
                _expect_number(_get(obj, "a", path), f"{path}.a"),
                _expect_number(_get(obj, "b", path), f"{path}.b"),
                _expect_number(_get(obj, "c", path), f"{path}.c"),
            )
        if kind == "piecewise_linear":
            raw = _expect_list(_get(obj, "points", path), f"{path}.points")
            points = []
            for j, pair in enumerate(raw):
                lst = _expect_list(pair, f"{path}.points[{j}]")
                if len(lst) != 2:
                    raise InputError(
                        f"{path}.points[{j}]: expected a [z, value] pair"
                    )
                points.append(
                    (
                        _expect_number(lst[0], f"{path}.points[{j}][0]"),
                        _expect_number(lst[1], f"{path}.points[{j}][1]"),
                    )
                )
            return PiecewiseLinear(tuple(points))
    except InputError as err:
        # Constructor rejections get the field path prepended once.
        message = str(err)
        if not message.startswith(path):
            raise InputError(f"{path}: {message}") from err
        raise
    raise InputError(
        f"{path}.type: unknown payoff type {kind!r}; expected constant, "
        "affine, quadratic, or piecewise_linear"
    )


def _parse_summarization(spec: Any, n: int, path: str) -> Summarization:
    obj = _expect_object(spec, path)
    kind = _get(obj, "type", path)
    if kind == "mean":
        return Mean(n)
    if kind == "majority_fraction":
        return MajorityFraction(n)
    if kind == "linear_weighted":
        raw = _expect_list(_get(obj, "weights", path), f"{path}.weights")
        weights = tuple(
            _expect_number(w, f"{path}.weights[{j}]") for j, w in enumerate(raw)
        )
        if len(weights) != n:
            raise InputError(
                f"{path}.weights: {len(weights)} weights for {n} players"
            )
        normalize = obj.get("normalize", False)
        if not isinstance(normalize, bool):
            raise InputError(f"{path}.normalize: expected true or false")
        try:
            return LinearWeighted(weights, normalize=normalize)
        except InputError as err:
            raise InputError(f"{path}.weights: {err}") from err
    raise InputError(
        f"{path}.type: unknown summarization type {kind!r}; expected mean, "
        "majority_fraction, or linear_weighted"
    )


def parse_game(doc: Any) -> SummGame:
    """Build a game from a parsed game-file document."""
    root = _expect_object(doc, "$")
    n = _expect_int(_get(root, "players", "$"), "$.players")
    if n < 1:
        raise InputError("$.players: must be >= 1")
    summarization = _parse_summarization(
        _get(root, "summarization", "$"), n, "$.summarization"
    )
    raw_payoffs = _expect_list(_get(root, "payoffs", "$"), "$.payoffs")
    if len(raw_payoffs) != n:
        raise InputError(
            f"$.payoffs: expected {n} entries (one per player), got "
            f"{len(raw_payoffs)}"
        )
    pairs = []
    for i, entry in enumerate(raw_payoffs):
        obj = _expect_object(entry, f"$.payoffs[{i}]")
        f0 = _parse_payoff(
            _get(obj, "action0", f"$.payoffs[{i}]"), f"$.payoffs[{i}].action0"
        )
        f1 = _parse_payoff(
            _get(obj, "action1", f"$.payoffs[{i}]"), f"$.payoffs[{i}].action1"
        )
        pairs.append((f0, f1))
    return SummGame(summarization, tuple(pairs))


def load_game(path: str) -> tuple[SummGame, str]:
    """Read a game file; returns the game and the file's SHA-256 digest."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as err:
        raise InputError(f"cannot read game file {path}: {err}") from err
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as err:
        raise InputError(f"{path} is not valid JSON: {err}") from err
    return parse_game(doc), digest


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def _crossing_to_doc(crossing) -> dict:
    if isinstance(crossing, Horizontal):
        return {"type": "horizontal", "k": crossing.k}
    if isinstance(crossing, Vertical):
        return {
            "type": "vertical",
            "k": crossing.k,
            "walk_position": crossing.walk_position,
        }
    return {"type": "learned"}


def certificate_to_doc(certificate: EquilibriumCertificate) -> dict:
    profile = certificate.profile
    if isinstance(profile, PureProfile):
        profile_doc: dict[str, Any] = {
            "kind": "pure",
            "actions": list(profile.actions),
        }
    else:
        profile_doc = {"kind": "mixed", "probs": list(profile.probs)}
    doc = {
        "profile": profile_doc,
        "epsilon_claimed": certificate.epsilon_claimed,
        "regrets": list(certificate.regrets),
        "crossing": _crossing_to_doc(certificate.crossing),
    }
    if certificate.stderrs is not None:
        doc["stderrs"] = list(certificate.stderrs)
    return doc


def certificate_from_doc(doc: Any) -> EquilibriumCertificate:
    root = _expect_object(doc, "$")
    # Accept a whole result document (as emitted by the CLI) or a bare
    # certificate object.
    if "certificate" in root:
        root = _expect_object(root["certificate"], "$.certificate")
    prof = _expect_object(_get(root, "profile", "$"), "$.profile")
    kind = _get(prof, "kind", "$.profile")
    if kind == "pure":
        raw = _expect_list(_get(prof, "actions", "$.profile"), "$.profile.actions")
        actions = tuple(
            _expect_int(a, f"$.profile.actions[{j}]") for j, a in enumerate(raw)
        )
        profile: PureProfile | MixedProfile = PureProfile(actions)
    elif kind == "mixed":
        raw = _expect_list(_get(prof, "probs", "$.profile"), "$.profile.probs")
        probs = tuple(
            _expect_number(p, f"$.profile.probs[{j}]") for j, p in enumerate(raw)
        )
        profile = MixedProfile(probs)
    else:
        raise InputError(f"$.profile.kind: expected 'pure' or 'mixed', got {kind!r}")
    epsilon = _expect_number(
        _get(root, "epsilon_claimed", "$"), "$.epsilon_claimed"
    )
    raw_regrets = _expect_list(_get(root, "regrets", "$"), "$.regrets")
    regrets = tuple(
        _expect_number(r, f"$.regrets[{j}]") for j, r in enumerate(raw_regrets)
    )
    crossing_doc = _expect_object(_get(root, "crossing", "$"), "$.crossing")
    ckind = _get(crossing_doc, "type", "$.crossing")
    if ckind == "horizontal":
        crossing = Horizontal(_expect_int(_get(crossing_doc, "k", "$.crossing"), "$.crossing.k"))
    elif ckind == "vertical":
        crossing = Vertical(
            _expect_int(_get(crossing_doc, "k", "$.crossing"), "$.crossing.k"),
            _expect_int(
                _get(crossing_doc, "walk_position", "$.crossing"),
                "$.crossing.walk_position",
            ),
        )
    elif ckind == "learned":
        crossing = Learned()
    else:
        raise InputError(f"$.crossing.type: unknown crossing type {ckind!r}")
    stderrs = None
    if "stderrs" in root and root["stderrs"] is not None:
        raw_se = _expect_list(root["stderrs"], "$.stderrs")
        stderrs = tuple(
            _expect_number(s, f"$.stderrs[{j}]") for j, s in enumerate(raw_se)
        )
    if len(regrets) != profile.n:
        raise InputError(
            f"$.regrets: {len(regrets)} entries for a {profile.n}-player profile"
        )
    return EquilibriumCertificate(profile, epsilon, regrets, crossing, stderrs)


def load_certificate(path: str) -> EquilibriumCertificate:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as err:
        raise InputError(f"cannot read certificate file {path}: {err}") from err
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as err:
        raise InputError(f"{path} is not valid JSON: {err}") from err
    return certificate_from_doc(doc)


# ---------------------------------------------------------------------------
# Table exports
# ---------------------------------------------------------------------------


def write_trajectory_csv(
    path: str,
    trajectory: Trajectory,
    alpha: float,
    beta: float,
    delta: float,
    seed: int,
) -> None:
    """Delimited trajectory dump: t, mu, max_delta, and probability columns
    when snapshots were recorded."""
    with_probs = any(step.probs is not None for step in trajectory.steps)
    n = trajectory.final.n
    lines = [f"# alpha={alpha!r} beta={beta!r} delta={delta!r} seed={seed!r}"]
    header = "t,mu,max_delta"
    if with_probs:
        header += "," + ",".join(f"p_{i}" for i in range(n))
    lines.append(header)
    for step in trajectory.steps:
        row = f"{step.t},{step.mu!r},{step.max_delta!r}"
        if with_probs:
            probs = step.probs if step.probs is not None else ()
            row += "," + ",".join(repr(p) for p in probs)
        lines.append(row)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_vtable(path: str, table: VTable) -> None:
    """Two-column dump of the best-response value table: k*alpha, V(I_k)."""
    lines = [f"# alpha={table.grid.alpha!r} K={table.grid.K}"]
    lines.extend(f"{x!r}\t{v!r}" for x, v in table.rows())
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
