"""Experiment documents: flat ``key = value`` lines with dotted keys.

    # distances in the unit square
    map.name = distance
    map.d = 2
    mu1.kind = uniform
    mu1.n = 20000
    mu2.kind = uniform
    seed = 1
    analyses = density, intervals

Values are Python literals (numbers, strings, lists, tuples, None) and fall
back to bare strings.  ``map = distance`` is shorthand for ``map.name``.
Every default is filled in at parse time, so ``ExperimentConfig.to_text``
echoes the complete experiment.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field

from ..errors import DimensionMismatch, ParseError, UnknownMap
from ..geometry.maps import CATALOG, get_map
from ..geometry.sampling import chart_dim, space_of

ANALYSES = ("density", "intervals", "scaling", "energy", "dimension", "decay")
GENERATORS = ("uniform", "ifs", "lattice", "product", "circle", "file")
SECTIONS = ("scaling", "energy", "dimension", "decay")

_KEY = re.compile(r"^[A-Za-z_]\w*(\.[A-Za-z_]\w*)*$")

GENERATOR_DEFAULTS = {
    "uniform": {"n": 10_000, "layout": "random", "box": (0.0, 1.0)},
    "ifs": {"m": 2, "s": 0.6309297535714574, "depth": 12, "n": 10_000},
    "lattice": {"s": 0.5, "q": 10, "n": 10_000},
    "circle": {"n": 1000, "radius": 1.0},
    "product": {"max_points": 1_000_000},
    "file": {},
}

SECTION_DEFAULTS = {
    "scaling": {"t": "auto", "eps_min": "auto", "octaves": 5.0, "per_octave": 2},
    "energy": {"s": 0.5, "depths": (6, 12, 24, 48), "doublings": 4},
    "dimension": {"centers": 1000},
    "decay": {"xi_max": "auto", "directions": 16},
}


def _value(raw: str, lineno: int, key: str):
    raw = raw.strip()
    if not raw:
        raise ParseError("missing value", line=lineno, field=key)
    try:
        return ast.literal_eval(raw)
    except (ValueError, SyntaxError):
        return raw


def parse_document(text: str) -> tuple[dict, dict]:
    """Nested dict of values and a map from dotted key to line number."""
    tree: dict = {}
    lines: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, raw = stripped.partition("=")
        key = key.strip()
        if not sep:
            raise ParseError("expected 'key = value'", line=lineno)
        if not _KEY.match(key):
            raise ParseError(f"malformed key {key!r}", line=lineno, field=key)
        if key in lines:
            raise ParseError(f"duplicate key (first set on line {lines[key]})", line=lineno, field=key)
        lines[key] = lineno
        _assign(tree, key, _value(raw, lineno, key), lineno)
    return tree, lines


def _assign(tree: dict, key: str, value, lineno: int) -> None:
    *parents, leaf = key.split(".")
    node = tree
    for i, part in enumerate(parents):
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            # ``map = name`` followed by ``map.d = ...``
            if part == "map" and i == 0:
                child = node[part] = {"name": child}
            else:
                raise ParseError(f"{'.'.join(parents[: i + 1])} is a value, not a section", line=lineno, field=key)
        node = child
    if isinstance(node.get(leaf), dict):
        if key == "map":
            node[leaf]["name"] = value
            return
        raise ParseError(f"{key} is a section, not a value", line=lineno, field=key)
    node[leaf] = value


def _flatten(tree: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in tree.items():
        path = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, path + "."))
        else:
            out[path] = value
    return out


@dataclass(frozen=True)
class ExperimentConfig:
    map: dict
    mu1: dict
    mu2: dict
    seed: int
    eps: float = 0.01
    grid: object = "auto"
    pair_budget: int = 1_000_000
    analyses: tuple = ("density", "intervals")
    delta: object = "auto"
    output: str = "configlab-out"
    sections: dict = field(default_factory=dict)

    def section(self, name: str) -> dict:
        return self.sections[name]

    def to_dict(self) -> dict:
        out = {
            "map": dict(self.map),
            "mu1": self.mu1,
            "mu2": self.mu2,
            "seed": self.seed,
            "eps": self.eps,
            "grid": self.grid,
            "pair_budget": self.pair_budget,
            "analyses": list(self.analyses),
            "delta": self.delta,
            "output": self.output,
        }
        out.update(self.sections)
        return out

    def to_text(self) -> str:
        """The complete document, one sorted key per line; parses back to an equal config."""
        return "".join(f"{key} = {value!r}\n" for key, value in sorted(_flatten(self.to_dict()).items()))


def _need(cond: bool, message: str, key: str, lines: dict) -> None:
    if not cond:
        raise ParseError(message, line=_line_of(key, lines), field=key)


def _line_of(key: str, lines: dict):
    if key in lines:
        return lines[key]
    hits = [n for k, n in lines.items() if k.startswith(key + ".")]
    return min(hits) if hits else None


def _number(value, key, lines, kind=float, positive=True):
    ok = isinstance(value, (int, float)) and not isinstance(value, bool)
    if kind is int:
        ok = ok and float(value).is_integer()
    _need(ok, f"expected {'an integer' if kind is int else 'a number'}, got {value!r}", key, lines)
    value = kind(value)
    if positive:
        _need(value > 0, f"must be positive, got {value}", key, lines)
    return value


def _generator(spec, key: str, side_dim: int, seed: int, lines: dict) -> dict:
    _need(isinstance(spec, dict), "generator must be a section (e.g. mu1.kind = uniform)", key, lines)
    kind = spec.get("kind")
    _need(kind in GENERATORS, f"kind must be one of {', '.join(GENERATORS)}, got {kind!r}", f"{key}.kind", lines)
    out = {**GENERATOR_DEFAULTS[kind], **spec}
    out.setdefault("seed", seed)
    _number(out["seed"], f"{key}.seed", lines, int, positive=False)
    if kind in ("uniform", "ifs", "lattice"):
        out.setdefault("d", side_dim)
        _number(out["d"], f"{key}.d", lines, int)
    if "n" in out:
        _number(out["n"], f"{key}.n", lines, int)
    if kind == "product":
        for part in ("a", "b"):
            _need(part in spec, "a product needs sections a and b", f"{key}.{part}", lines)
        out["a"] = _generator(spec["a"], f"{key}.a", 1, out["seed"], lines)
        out["b"] = _generator(spec["b"], f"{key}.b", 1, out["seed"] + 1, lines)
    if kind == "file":
        _need(isinstance(out.get("path"), str), "a file generator needs a path", f"{key}.path", lines)
        _number(out.setdefault("d", side_dim), f"{key}.d", lines, int)
    return out


def generator_dim(spec: dict) -> int:
    kind = spec["kind"]
    if kind == "circle":
        return 2
    if kind == "product":
        return generator_dim(spec["a"]) + generator_dim(spec["b"])
    return int(spec["d"])


def parse_config(text: str, overrides: dict | None = None) -> ExperimentConfig:
    """Validated config with every default filled in.

    ``overrides`` maps dotted keys to values and is applied before defaults,
    as if the lines had been part of the document.
    """
    tree, lines = parse_document(text)
    for key, value in (overrides or {}).items():
        _assign_override(tree, key, value)

    known = {"map", "mu1", "mu2", "seed", "eps", "grid", "pair_budget", "analyses", "delta", "output", *SECTIONS}
    for key in tree:
        _need(key in known, f"unknown key {key!r}", key, lines)

    raw_map = tree.get("map")
    _need(raw_map is not None, "map.name is required", "map", lines)
    if not isinstance(raw_map, dict):
        raw_map = {"name": raw_map}
    name = raw_map.get("name")
    _need(isinstance(name, str), "map.name is required", "map.name", lines)
    if name not in CATALOG:
        raise UnknownMap(f"unknown configuration map {name!r}; known: {', '.join(sorted(CATALOG))}")
    params = {k: v for k, v in raw_map.items() if k != "name"}
    cmap = get_map(name, **params)

    _need("seed" in tree, "seed is required (no implicit randomness)", "seed", lines)
    seed = _number(tree["seed"], "seed", lines, int, positive=False)
    _need(0 <= seed < 2**64, "seed must be an unsigned 64-bit integer", "seed", lines)

    sides = {}
    for key, which in (("mu1", "X"), ("mu2", "Y")):
        _need(key in tree, f"{key} generator is required", key, lines)
        space, d = space_of(cmap, which)
        want = chart_dim(space, d)
        spec = _generator(tree[key], key, want, seed + (key == "mu2"), lines)
        got = generator_dim(spec)
        if got != want:
            raise DimensionMismatch(
                f"{key}: {name} needs a {want}-dimensional generator for its {which} space ({space}), got {got}"
            )
        sides[key] = spec

    eps = _number(tree.get("eps", 0.01), "eps", lines)
    budget = _number(tree.get("pair_budget", 1_000_000), "pair_budget", lines, int)
    grid = tree.get("grid", "auto")
    if grid != "auto":
        _need(isinstance(grid, dict) and {"lo", "hi", "step"} <= set(grid), "grid must be auto or lo/hi/step", "grid", lines)
        grid = {k: list(v) if isinstance(v, (list, tuple)) else [v] for k, v in grid.items()}
        for k in ("lo", "hi", "step"):
            _need(len(grid[k]) == cmap.k, f"grid.{k} needs {cmap.k} entries", f"grid.{k}", lines)
    analyses = tree.get("analyses", ("density", "intervals"))
    if isinstance(analyses, str):
        analyses = [a.strip() for a in analyses.split(",") if a.strip()]
    _need(isinstance(analyses, (list, tuple)), "analyses must be a list", "analyses", lines)
    for a in analyses:
        _need(a in ANALYSES, f"unknown analysis {a!r}; known: {', '.join(ANALYSES)}", "analyses", lines)
    delta = tree.get("delta", "auto")
    if delta != "auto":
        delta = _number(delta, "delta", lines)
    output = tree.get("output", "configlab-out")
    _need(isinstance(output, str), "output must be a path", "output", lines)

    sections = {}
    for sec in SECTIONS:
        given = tree.get(sec, {})
        _need(isinstance(given, dict), f"{sec} must be a section", sec, lines)
        for key in given:
            _need(key in SECTION_DEFAULTS[sec], f"unknown key {sec}.{key}", f"{sec}.{key}", lines)
        sections[sec] = {**SECTION_DEFAULTS[sec], **given}

    return ExperimentConfig(
        map={"name": name, **params},
        mu1=sides["mu1"],
        mu2=sides["mu2"],
        seed=seed,
        eps=eps,
        grid=grid,
        pair_budget=budget,
        analyses=tuple(dict.fromkeys(analyses)),
        delta=delta,
        output=output,
        sections=sections,
    )


def _assign_override(tree: dict, key: str, value) -> None:
    if not _KEY.match(key):
        raise ParseError(f"malformed key {key!r}", field=key)
    _assign(tree, key, value, None)


def parse_override(item: str) -> tuple[str, object]:
    """'key=value' from the command line."""
    key, sep, raw = item.partition("=")
    if not sep:
        raise ParseError(f"expected key=value, got {item!r}")
    key = key.strip()
    return key, _value(raw, None, key)

