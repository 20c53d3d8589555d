"""Line-oriented scenario file format (.scn): parsing and serialization.

A scenario file declares a labeled basis, one initial state, named
final states and observables, and at least one query to run:

    name = pair-demo              # optional document name
    dimension = 5
    basis = 1-,1+ 1-,2+ 2-,1+ 2-,2+ gamma
    state i = 1/2 1/2 1/2 0 1/2   # first state is the initial
    state f = 1/2 -1/2 -1/2 1/2 0
    observable N(1-|1+) = 1 0 0 0 0
    query network final=f obs=N(1-|1+)

'#' starts a comment anywhere.  Number literals: decimals (0.25, 1e-3),
rationals (1/4), surds (1/sqrt(2)), complex (1+2i, -0.5i) and explicit
pairs ((0.70710678, 0)).  Meter widths in queries are given in units of
the observable's eigenvalue spread.  Errors carry 1-based line and
column positions and parsing never raises anything else.

The names three-box, hardy, and hardy-epsilon are reserved for the
built-in scenario library and rejected as document names.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import ScenarioParseError
from .statespace import DiagonalObservable, KetState, StateSpace, inner
from .scenarios import RESERVED_NAMES, Scenario

QUERY_KINDS = ("amplitudes", "probabilities", "network", "weak", "mean-reading",
               "scan", "sum-rule", "product-rule")

_QUERY_ARGS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    # kind: (required keys, optional keys)
    "amplitudes": ((), ()),
    "probabilities": ((), ()),
    "network": (("final", "obs"), ()),
    "weak": (("final", "obs"), ()),
    "mean-reading": (("final", "obs", "width"), ()),
    "scan": (("final", "obs", "widths"), ()),
    "sum-rule": (("final", "obs", "obs2"), ()),
    "product-rule": (("final", "obs", "obs2"), ()),
}

_DECIMAL = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_RATIONAL = r"\d+/\d+"
_SURD = r"\d+/sqrt\(\d+\)"
_UREAL = rf"(?:{_SURD}|{_RATIONAL}|{_DECIMAL})"
_REAL_RE = re.compile(rf"[+-]?{_UREAL}")
_NAME_RE = re.compile(r"[A-Za-z0-9._-]+")


@dataclass(frozen=True)
class QueryDirective:
    """One query line: its kind and raw key=value arguments, in order."""

    kind: str
    arguments: tuple[tuple[str, str], ...]
    line: int = field(default=0, compare=False)
    columns: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def argument(self, key: str) -> str | None:
        for k, v in self.arguments:
            if k == key:
                return v
        return None


@dataclass(frozen=True)
class ScenarioDocument:
    """Parsed scenario file, untouched by semantic validation.

    States and observables keep declaration order; the first declared
    state is the initial one.  Source positions ride along for
    diagnostics but do not take part in equality, so a serialized and
    reparsed document compares equal to the original.
    """

    name: str | None
    dimension: int
    basis_names: tuple[str, ...]
    initial_name: str
    initial: tuple[complex, ...]
    finals: tuple[tuple[str, tuple[complex, ...]], ...]
    observables: tuple[tuple[str, tuple[float, ...]], ...]
    queries: tuple[QueryDirective, ...]
    positions: dict = field(default_factory=dict, compare=False, repr=False)


def _tokenize(raw: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with 1-based start columns.

    Text after '#' is a comment.  Whitespace inside parentheses does not
    split, so '(0.5, -0.5)' stays one token.
    """
    cut = raw.find("#")
    text = raw if cut < 0 else raw[:cut]
    tokens: list[tuple[str, int]] = []
    k, n = 0, len(text)
    while k < n:
        if text[k].isspace():
            k += 1
            continue
        start = k
        depth = 0
        while k < n and (depth > 0 or not text[k].isspace()):
            if text[k] == "(":
                depth += 1
            elif text[k] == ")" and depth > 0:
                depth -= 1
            k += 1
        tokens.append((text[start:k], start + 1))
    return tokens


def _parse_real(token: str, line: int, col: int) -> float:
    if not _REAL_RE.fullmatch(token):
        raise ScenarioParseError(
            f"bad real literal {token!r} (decimals, p/q, and p/sqrt(k) are accepted)",
            line, col)
    sign = 1.0
    body = token
    if body[0] in "+-":
        sign = -1.0 if body[0] == "-" else 1.0
        body = body[1:]
    if "sqrt" in body:
        p, k = body.split("/sqrt(")
        radicand = float(k[:-1])
        if radicand <= 0.0:
            raise ScenarioParseError(f"surd radicand must be positive in {token!r}", line, col)
        value = float(p) / math.sqrt(radicand)
    elif "/" in body:
        p, q = body.split("/")
        if float(q) == 0.0:
            raise ScenarioParseError(f"division by zero in {token!r}", line, col)
        value = float(p) / float(q)
    else:
        value = float(body)
    if not math.isfinite(value):
        raise ScenarioParseError(f"literal {token!r} is not a finite number", line, col)
    return sign * value


_PAIR_RE = re.compile(rf"\(\s*([+-]?{_UREAL})\s*,\s*([+-]?{_UREAL})\s*\)")


def _parse_complex(token: str, line: int, col: int) -> complex:
    if token.startswith("("):
        m = _PAIR_RE.fullmatch(token)
        if not m:
            raise ScenarioParseError(
                f"bad complex pair {token!r} (expected (re, im))", line, col)
        return complex(_parse_real(m.group(1), line, col),
                       _parse_real(m.group(2), line, col))
    if token.endswith("i"):
        body = token[:-1]
        split = -1
        for k in range(1, len(body)):
            if body[k] in "+-" and body[k - 1] not in "eE":
                split = k
        if split >= 0:
            real = _parse_real(body[:split], line, col)
            imag_text = body[split:]
            imag = (1.0 if imag_text == "+" else -1.0 if imag_text == "-"
                    else _parse_real(imag_text, line, col))
            return complex(real, imag)
        if body in ("", "+"):
            return 1j
        if body == "-":
            return -1j
        return complex(0.0, _parse_real(body, line, col))
    return complex(_parse_real(token, line, col), 0.0)


def _check_name(token: str, what: str, line: int, col: int) -> str:
    if "=" in token:
        raise ScenarioParseError(f"{what} {token!r} may not contain '='", line, col)
    return token


def _expect_equals(tokens: list[tuple[str, int]], index: int, line: int) -> None:
    if len(tokens) <= index or tokens[index][0] != "=":
        col = tokens[index][1] if len(tokens) > index else tokens[-1][1] + len(tokens[-1][0])
        raise ScenarioParseError("expected '=' (surrounded by spaces)", line, col)


def parse(text: str) -> ScenarioDocument:
    """Parse scenario text; raises ScenarioParseError at the first problem."""
    name: str | None = None
    dimension: int | None = None
    basis: tuple[str, ...] | None = None
    states: list[tuple[str, tuple[complex, ...]]] = []
    observables: list[tuple[str, tuple[float, ...]]] = []
    queries: list[QueryDirective] = []
    positions: dict = {}
    seen_names: dict[str, int] = {}

    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        keyword, kcol = tokens[0]

        if keyword == "name":
            if name is not None:
                raise ScenarioParseError("duplicate 'name' line", lineno, kcol)
            _expect_equals(tokens, 1, lineno)
            if len(tokens) != 3:
                raise ScenarioParseError("expected exactly one name after '='", lineno, kcol)
            candidate, ncol = tokens[2]
            if not _NAME_RE.fullmatch(candidate):
                raise ScenarioParseError(
                    f"bad scenario name {candidate!r} (letters, digits, '.', '_', '-')",
                    lineno, ncol)
            if candidate in RESERVED_NAMES:
                raise ScenarioParseError(
                    f"scenario name {candidate!r} is reserved for the built-in library",
                    lineno, ncol)
            name = candidate

        elif keyword == "dimension":
            if dimension is not None:
                raise ScenarioParseError("duplicate 'dimension' line", lineno, kcol)
            _expect_equals(tokens, 1, lineno)
            if len(tokens) != 3 or not re.fullmatch(r"\d+", tokens[2][0]):
                col = tokens[2][1] if len(tokens) > 2 else kcol
                raise ScenarioParseError("dimension must be a positive integer", lineno, col)
            dimension = int(tokens[2][0])
            if dimension < 1:
                raise ScenarioParseError("dimension must be a positive integer",
                                         lineno, tokens[2][1])

        elif keyword == "basis":
            if basis is not None:
                raise ScenarioParseError("duplicate 'basis' line", lineno, kcol)
            if dimension is None:
                raise ScenarioParseError("'basis' requires a 'dimension' line first",
                                         lineno, kcol)
            _expect_equals(tokens, 1, lineno)
            labels = tokens[2:]
            if len(labels) != dimension:
                raise ScenarioParseError(
                    f"expected {dimension} basis labels, got {len(labels)}", lineno, kcol)
            seen: dict[str, int] = {}
            for label, col in labels:
                _check_name(label, "basis label", lineno, col)
                if label in seen:
                    raise ScenarioParseError(f"duplicate basis label {label!r}", lineno, col)
                seen[label] = col
            basis = tuple(label for label, _ in labels)

        elif keyword in ("state", "observable"):
            if basis is None:
                raise ScenarioParseError(
                    f"'{keyword}' requires 'dimension' and 'basis' lines first", lineno, kcol)
            if len(tokens) < 2:
                raise ScenarioParseError(f"'{keyword}' needs a name", lineno, kcol)
            item_name, ncol = tokens[1]
            _check_name(item_name, f"{keyword} name", lineno, ncol)
            if item_name in seen_names:
                raise ScenarioParseError(
                    f"duplicate name {item_name!r} (first declared on line "
                    f"{seen_names[item_name]})", lineno, ncol)
            _expect_equals(tokens, 2, lineno)
            values = tokens[3:]
            if len(values) != dimension:
                raise ScenarioParseError(
                    f"expected {dimension} values for {item_name!r}, got {len(values)}",
                    lineno, kcol)
            seen_names[item_name] = lineno
            positions[(keyword, item_name)] = (lineno, ncol)
            if keyword == "state":
                vec = tuple(_parse_complex(tok, lineno, col) for tok, col in values)
                states.append((item_name, vec))
            else:
                row = tuple(_parse_real(tok, lineno, col) for tok, col in values)
                observables.append((item_name, row))

        elif keyword == "query":
            if len(tokens) < 2:
                raise ScenarioParseError(
                    f"'query' needs a kind: one of {', '.join(QUERY_KINDS)}", lineno, kcol)
            kind, qcol = tokens[1]
            if kind not in QUERY_KINDS:
                raise ScenarioParseError(
                    f"unknown query kind {kind!r}: expected one of {', '.join(QUERY_KINDS)}",
                    lineno, qcol)
            pairs: list[tuple[str, str]] = []
            cols: list[int] = []
            for tok, col in tokens[2:]:
                if "=" not in tok:
                    raise ScenarioParseError(
                        f"query argument {tok!r} must look like key=value", lineno, col)
                key, _, value = tok.partition("=")
                if not key or not value:
                    raise ScenarioParseError(
                        f"query argument {tok!r} must look like key=value", lineno, col)
                if any(k == key for k, _ in pairs):
                    raise ScenarioParseError(f"duplicate query argument {key!r}", lineno, col)
                pairs.append((key, value))
                cols.append(col)
            queries.append(QueryDirective(kind, tuple(pairs), lineno, tuple(cols)))

        else:
            raise ScenarioParseError(
                f"unknown section {keyword!r} (expected name, dimension, basis, "
                "state, observable, or query)", lineno, kcol)

    end = max(len(lines), 1)
    if dimension is None:
        raise ScenarioParseError("missing 'dimension' line", end)
    if basis is None:
        raise ScenarioParseError("missing 'basis' line", end)
    if not states:
        raise ScenarioParseError(
            "missing 'state' lines (need an initial state and at least one final)", end)
    if len(states) < 2:
        raise ScenarioParseError(
            "need at least one final state declared after the initial state", end)
    if not queries:
        raise ScenarioParseError("a scenario file must contain at least one query", end)

    return ScenarioDocument(
        name=name,
        dimension=dimension,
        basis_names=basis,
        initial_name=states[0][0],
        initial=states[0][1],
        finals=tuple(states[1:]),
        observables=tuple(observables),
        queries=tuple(queries),
        positions=positions,
    )


def _query_error(q: QueryDirective, key: str, message: str) -> ScenarioParseError:
    col = 1
    for (k, _), c in zip(q.arguments, q.columns):
        if k == key:
            col = c
            break
    return ScenarioParseError(message, q.line, col)


def _positive_float(q: QueryDirective, key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise _query_error(q, key, f"{key} must be a number, got {text!r}") from None
    if not (value > 0.0 and math.isfinite(value)):
        raise _query_error(q, key, f"{key} must be positive and finite, got {text!r}")
    return value


def _check_query(q: QueryDirective, finals: dict[str, KetState],
                 observables: dict[str, DiagonalObservable]) -> None:
    required, optional = _QUERY_ARGS[q.kind]
    keys = [k for k, _ in q.arguments]
    for key in keys:
        if key not in required and key not in optional:
            raise _query_error(q, key, f"query {q.kind!r} does not take argument {key!r}")
    for key in required:
        if key not in keys:
            raise ScenarioParseError(
                f"query {q.kind!r} requires argument {key!r}", q.line, 1)
    if "final" in keys:
        fname = q.argument("final")
        if fname not in finals:
            raise _query_error(q, "final",
                               f"unknown final state {fname!r}; "
                               f"known: {', '.join(finals) or '(none)'}")
    for key in ("obs", "obs2"):
        if key in keys:
            oname = q.argument(key)
            if oname not in observables:
                raise _query_error(q, key,
                                   f"unknown observable {oname!r}; "
                                   f"known: {', '.join(observables) or '(none)'}")
    if q.kind in ("mean-reading", "scan"):
        obs = observables[q.argument("obs")]
        if obs.spread <= 0.0:
            raise _query_error(q, "obs",
                               "observable has zero eigenvalue spread; "
                               "meter widths have no scale")
    if q.kind == "mean-reading":
        _positive_float(q, "width", q.argument("width"))
    if q.kind == "scan":
        text = q.argument("widths")
        parts = [p for p in text.split(",") if p]
        if not parts:
            raise _query_error(q, "widths", "widths must be a comma-separated list")
        for part in parts:
            _positive_float(q, "widths", part)
    if q.kind in ("sum-rule", "product-rule"):
        first = observables[q.argument("obs")]
        second = observables[q.argument("obs2")]
        for key, obs in (("obs", first), ("obs2", second)):
            if not obs.is_projector:
                raise _query_error(q, key,
                                   f"query {q.kind!r} needs projector observables "
                                   "(eigenvalues 0 or 1)")
        if q.kind == "sum-rule" and bool(np.any(first.eigenvalues * second.eigenvalues != 0.0)):
            raise _query_error(q, "obs2",
                               "sum-rule projectors must have disjoint support")


def validate(doc: ScenarioDocument) -> Scenario:
    """Semantic checks; returns a Scenario with warnings recorded in notes."""
    space = StateSpace(doc.basis_names)
    notes: list[str] = []

    def build_state(name: str, vec: tuple[complex, ...]) -> KetState:
        arr = np.asarray(vec, dtype=complex)
        nrm = float(np.linalg.norm(arr))
        line, col = doc.positions.get(("state", name), (1, 1))
        if nrm <= 1e-12:
            raise ScenarioParseError(f"state {name!r} has zero norm", line, col)
        if abs(nrm - 1.0) > 1e-9:
            notes.append(f"state {name!r} renormalized (declared norm {nrm:.12g})")
        return KetState(space, arr)

    initial = build_state(doc.initial_name, doc.initial)
    finals = {name: build_state(name, vec) for name, vec in doc.finals}
    observables = {name: DiagonalObservable(space, row)
                   for name, row in doc.observables}

    names = list(finals)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            overlap = abs(inner(finals[names[a]], finals[names[b]]))
            if overlap > 1e-9:
                notes.append(f"final states {names[a]!r} and {names[b]!r} are not "
                             f"orthogonal (|overlap| = {overlap:.6g})")

    for q in doc.queries:
        _check_query(q, finals, observables)

    return Scenario(
        name=doc.name or "scenario",
        space=space,
        initial=initial,
        finals=finals,
        observables=observables,
        notes=tuple(notes),
    )


def _format_real(x: float) -> str:
    return repr(float(x))


def _format_complex(z: complex) -> str:
    if z.imag == 0.0:
        return _format_real(z.real)
    return f"({_format_real(z.real)}, {_format_real(z.imag)})"


def serialize(doc: ScenarioDocument) -> str:
    """Canonical text for a document; reparsing yields an equal document."""
    out: list[str] = []
    if doc.name is not None:
        out.append(f"name = {doc.name}")
    out.append(f"dimension = {doc.dimension}")
    out.append("basis = " + " ".join(doc.basis_names))
    out.append(f"state {doc.initial_name} = "
               + " ".join(_format_complex(z) for z in doc.initial))
    for name, vec in doc.finals:
        out.append(f"state {name} = " + " ".join(_format_complex(z) for z in vec))
    for name, row in doc.observables:
        out.append(f"observable {name} = " + " ".join(_format_real(x) for x in row))
    for q in doc.queries:
        parts = [f"query {q.kind}"] + [f"{k}={v}" for k, v in q.arguments]
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def load_path(path) -> ScenarioDocument:
    """Parse a scenario file from disk."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())
