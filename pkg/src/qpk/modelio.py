"""JSON model files.

A model file is a JSON object::

    {
      "schema": "qpk-model/1",
      "name": "leaky",
      "n": 4,
      "partition": [[0, 1], [2, 3]],
      "kernel": [["1/2", "1/2", "0/1", "0/1"], ...],
      "measures": {"mu": ["1/2", "1/2", "0/1", "0/1"]},
      "chain": {
        "partitions": [[[0], [1], [2], [3]], [[0, 1], [2, 3]], [[0, 1, 2, 3]]],
        "kernels": [...],
        "reference": ["1/4", "1/4", "1/4", "1/4"]
      }
    }

Only ``schema`` and ``n`` are mandatory; ``kernel`` needs ``partition``.
Rationals are ``"p/q"`` strings on output; ``"p"`` strings and JSON
integers are accepted on input.  Errors carry a JSON path (``$.kernel[2][1]``)
or a ``line:col`` position for syntax errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ParseError, QPKError, ValidationError
from .kernel import Kernel
from .space import Partition, build_partition, fmt_vec, rational
from .towers import ChainSpec, build_chain

SCHEMA = "qpk-model/1"
_TOP_KEYS = {"schema", "name", "n", "partition", "kernel", "measures", "chain"}
_CHAIN_KEYS = {"partitions", "kernels", "reference"}


@dataclass(frozen=True)
class Model:
    n: int
    name: str = ""
    partition: Partition | None = None
    kernel: Kernel | None = None
    measures: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)
    chain: ChainSpec | None = None


def _located(exc: QPKError, where: str) -> ValidationError:
    # re-raise with the JSON path attached, keeping the error class
    if isinstance(exc, ParseError):
        return ParseError(str(exc), where)
    new = type(exc).__new__(type(exc))
    Exception.__init__(new, f"{where}: {exc}")
    new.__dict__.update(exc.__dict__)
    return new


def _expect(value: Any, kind: type | tuple, where: str, what: str):
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"expected {what}", where)
    return value


def _vector(raw: Any, n: int, where: str) -> tuple[Fraction, ...]:
    _expect(raw, list, where, f"a list of {n} rationals")
    if len(raw) != n:
        raise ParseError(f"expected {n} entries, got {len(raw)}", where)
    out = []
    for i, v in enumerate(raw):
        try:
            out.append(rational(v))
        except ParseError as exc:
            raise ParseError(str(exc), f"{where}[{i}]") from None
    return tuple(out)


def _partition(raw: Any, n: int, where: str) -> Partition:
    _expect(raw, list, where, "a list of blocks")
    for i, b in enumerate(raw):
        _expect(b, list, f"{where}[{i}]", "a list of point indices")
        for j, x in enumerate(b):
            _expect(x, int, f"{where}[{i}][{j}]", "an integer point index")
    try:
        return build_partition(raw, n)
    except ValidationError as exc:
        raise _located(exc, where) from None


def _kernel(raw: Any, n: int, partition: Partition, where: str) -> Kernel:
    _expect(raw, list, where, f"a list of {n} rows")
    if len(raw) != n:
        raise ParseError(f"expected {n} rows, got {len(raw)}", where)
    rows = tuple(_vector(r, n, f"{where}[{i}]") for i, r in enumerate(raw))
    try:
        return Kernel(rows, partition)
    except ValidationError as exc:
        raise _located(exc, where) from None


def _unknown(obj: dict, allowed: set, where: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ParseError(f"unknown field {extra[0]!r}", where)


def model_from_obj(obj: Any) -> Model:
    _expect(obj, dict, "$", "a JSON object")
    _unknown(obj, _TOP_KEYS, "$")
    if obj.get("schema") != SCHEMA:
        raise ParseError(f"schema must be {SCHEMA!r}", "$.schema")
    if "n" not in obj:
        raise ParseError("missing field 'n'", "$")
    n = _expect(obj["n"], int, "$.n", "a positive integer")
    if n < 1:
        raise ParseError("expected a positive integer", "$.n")
    name = _expect(obj.get("name", ""), str, "$.name", "a string")
    partition = _partition(obj["partition"], n, "$.partition") if "partition" in obj else None
    kernel = None
    if "kernel" in obj:
        if partition is None:
            raise ParseError("a kernel needs a partition", "$.kernel")
        kernel = _kernel(obj["kernel"], n, partition, "$.kernel")
    measures = {}
    raw_m = _expect(obj.get("measures", {}), dict, "$.measures", "an object of named measures")
    for key in sorted(raw_m):
        measures[key] = _vector(raw_m[key], n, f"$.measures.{key}")
    chain = None
    if "chain" in obj:
        raw_c = _expect(obj["chain"], dict, "$.chain", "an object")
        _unknown(raw_c, _CHAIN_KEYS, "$.chain")
        if "partitions" not in raw_c:
            raise ParseError("missing field 'partitions'", "$.chain")
        parts_raw = _expect(raw_c["partitions"], list, "$.chain.partitions", "a list of partitions")
        parts = [_partition(p, n, f"$.chain.partitions[{i}]") for i, p in enumerate(parts_raw)]
        kernels = None
        if "kernels" in raw_c:
            ks = _expect(raw_c["kernels"], list, "$.chain.kernels", "a list of kernels")
            if len(ks) != len(parts):
                raise ParseError("one kernel per partition is required", "$.chain.kernels")
            kernels = [_kernel(k, n, p, f"$.chain.kernels[{i}]") for i, (k, p) in enumerate(zip(ks, parts))]
        reference = _vector(raw_c["reference"], n, "$.chain.reference") if "reference" in raw_c else None
        try:
            chain = build_chain(parts, kernels, reference)
        except ValidationError as exc:
            raise _located(exc, "$.chain") from None
    return Model(n, name, partition, kernel, measures, chain)


def loads(text: str) -> Model:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{exc.lineno}:{exc.colno}") from None
    return model_from_obj(obj)


def parse_model(path: str | Path) -> Model:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read model file: {exc.strerror}", str(path)) from None
    return loads(text)


def kernel_obj(k: Kernel) -> list[list[str]]:
    return [fmt_vec(r) for r in k.rows]


def model_to_obj(model: Model) -> dict:
    out: dict = {"schema": SCHEMA}
    if model.name:
        out["name"] = model.name
    out["n"] = model.n
    if model.partition is not None:
        out["partition"] = model.partition.to_lists()
    if model.kernel is not None:
        out["kernel"] = kernel_obj(model.kernel)
    if model.measures:
        out["measures"] = {k: fmt_vec(v) for k, v in sorted(model.measures.items())}
    if model.chain is not None:
        c: dict = {"partitions": [p.to_lists() for p in model.chain.partitions]}
        if model.chain.kernels is not None:
            c["kernels"] = [kernel_obj(k) for k in model.chain.kernels]
        if model.chain.reference is not None:
            c["reference"] = fmt_vec(model.chain.reference)
        out["chain"] = c
    return out


def _is_flat(value: Any) -> bool:
    # scalars, or blocks of point indices (a partition fits on one line)
    if not isinstance(value, list):
        return False
    if all(not isinstance(v, (list, dict)) for v in value):
        return True
    return all(isinstance(v, list) and all(isinstance(x, int) for x in v) for v in value)


def to_json(obj: Any, indent: int = 0) -> str:
    """Indented JSON that keeps lists of scalars on one line."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{inner}{json.dumps(k)}: {to_json(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, list) and obj and not _is_flat(obj):
        return "[\n" + ",\n".join(inner + to_json(v, indent + 1) for v in obj) + f"\n{pad}]"
    return json.dumps(obj, separators=(", ", ": "))


def dumps(model: Model) -> str:
    return to_json(model_to_obj(model)) + "\n"


def fixture_path(name: str) -> Path:
    return Path(__file__).parent / "fixtures" / f"{name}.json"


def load_fixture(name: str) -> Model:
    """Load a shipped fixture by id (``"F1"`` .. ``"F8"``)."""
    return parse_model(fixture_path(name))


FIXTURES = ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8")
