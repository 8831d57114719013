"""Readers for form files, parametrization files, chart files and surface files.

Form file layout::

    # comment
    vars: x2, x3
    diffs: dx2, dx3
    sqrt: -1                      (optional)
    gen y1: y1^2 = x2^2 + x3^2    (zero or more)
    name = <expression>           (named form, usable in later lines)
    <expression>                  (anonymous form)
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..exact.parser import Context, ParseError, parse_expression
from .cover import MultiQuadraticRing
from .forms import Parametrization, SymmetricForm

__all__ = ["FormFile", "FormFileError", "read_form_file", "parse_form_text",
           "read_parametrization", "parametrization_from_dict", "data_path", "read_json"]


class FormFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_GEN = re.compile(rf"^gen\s+({_NAME})\s*:\s*({_NAME})\s*\^\s*2\s*=\s*(.+)$")
_DEF = re.compile(rf"^({_NAME})\s*=\s*(.+)$")


@dataclass
class FormFile:
    ring: MultiQuadraticRing
    context: Context
    forms: list = field(default_factory=list)
    names: list = field(default_factory=list)

    def __getitem__(self, key):
        if isinstance(key, int):
            return self.forms[key]
        for n, f in zip(self.names, self.forms):
            if n == key:
                return f
        raise KeyError(key)

    def __len__(self):
        return len(self.forms)

    def labels(self) -> list:
        return [n if n else f"form{i + 1}" for i, n in enumerate(self.names)]


def _split_names(text: str) -> tuple:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def parse_form_text(text: str, source: str | None = None) -> FormFile:
    vars: tuple = ()
    diffs: tuple = ()
    sqrt = None
    gens = []
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(":", 1)[0].strip()
        if head == "vars" and ":" in line:
            vars = _split_names(line.split(":", 1)[1])
        elif head == "diffs" and ":" in line:
            diffs = _split_names(line.split(":", 1)[1])
        elif head == "sqrt" and ":" in line:
            try:
                sqrt = int(line.split(":", 1)[1])
            except ValueError:
                raise FormFileError("sqrt needs an integer", lineno, source) from None
        elif line.startswith("gen ") or line.startswith("gen\t"):
            m = _GEN.match(line)
            if not m or m.group(1) != m.group(2):
                raise FormFileError("expected 'gen g: g^2 = <expr>'", lineno, source)
            gens.append((m.group(1), m.group(3), lineno))
        else:
            body.append((lineno, line))
    if not diffs:
        raise FormFileError("no 'diffs:' declaration", None, source)
    gen_names = tuple(g for g, _, _ in gens)
    base_vars = tuple(v for v in vars if v not in gen_names)
    try:
        base_ctx = Context(vars=base_vars, sqrt=sqrt)
        ctx = Context(vars=base_vars + gen_names, diffs=diffs, sqrt=sqrt)
    except ValueError as e:
        raise FormFileError(str(e), None, source) from None
    squares = []
    for g, expr, lineno in gens:
        try:
            squares.append((g, parse_expression(expr, base_ctx)))
        except (ParseError, ZeroDivisionError) as e:
            raise FormFileError(f"relation for {g}: {e}", lineno, source) from None
    try:
        ring = MultiQuadraticRing(base_vars, squares)
    except ValueError as e:
        raise FormFileError(str(e), None, source) from None
    out = FormFile(ring, ctx)
    for lineno, line in body:
        m = _DEF.match(line)
        name, expr_text = (m.group(1), m.group(2)) if m and "=" not in m.group(2) else (None, line)
        try:
            expr = parse_expression(expr_text, ctx)
            form = SymmetricForm.from_expression(ring, expr, diffs)
        except (ParseError, ValueError, ZeroDivisionError) as e:
            raise FormFileError(str(e), lineno, source) from None
        if name:
            ctx.definitions[name] = expr
        out.forms.append(form)
        out.names.append(name or expr_text.replace(" ", ""))
    return out


def read_form_file(path) -> FormFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise FormFileError(f"cannot read form file: {e.strerror}", None, str(p)) from None
    return parse_form_text(text, str(p))


def data_path(name: str) -> Path:
    return Path(str(resources.files("nodalsym") / "data" / name))


def read_json(path):
    p = Path(path)
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except OSError as e:
        raise FormFileError(f"cannot read file: {e.strerror}", None, str(p)) from None
    except json.JSONDecodeError as e:
        raise FormFileError(f"invalid JSON: {e.msg}", e.lineno, str(p)) from None


def parametrization_from_dict(data: dict, source: str | None = None) -> Parametrization:
    if not isinstance(data, dict):
        raise FormFileError("parametrization must be a JSON object", None, source)
    try:
        parameter = data.get("parameter", "t")
        coords = data["coords"]
    except KeyError:
        raise FormFileError("missing 'coords'", None, source) from None
    try:
        return Parametrization.from_strings(
            parameter, coords, data.get("generators") or {},
            tuple(data.get("constants") or ()), data.get("sqrt"),
        )
    except (ParseError, ValueError, ZeroDivisionError) as e:
        raise FormFileError(str(e), None, source) from None


def read_parametrization(path) -> Parametrization:
    return parametrization_from_dict(read_json(path), str(path))
