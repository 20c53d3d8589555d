"""Command-line frontend.

Subcommands run the built-in scenarios or a scenario file and emit
tables as aligned text (default), CSV, or JSON.  Every number in the
output is produced by exactly one library call; this layer only
formats.  Exit codes: 0 success, 2 bad input or unknown names,
3 impossible post-selection, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .errors import (MeterStatisticsUndefined, PostSelectionImpossible,
                     QPathsError, ScenarioParseError, UnknownNameError,
                     WeakValueUndefined)
from .measurement import (build_network, conditional_reading_distribution,
                          perturbed_transition_probability,
                          product_rule_report, sum_rule_report)
from .meter import (MeterModel, mean_reading, scaled_widths, weak_limit_convergence,
                    weak_value)
from .oracle import verification_checks
from .pathsum import amplitude_table, decompose, transition_probability
from .scenario_io import QueryDirective, load_path, validate
from .scenarios import Scenario, built_in, epsilon_grid, hardy_epsilon


@dataclass(frozen=True)
class Table:
    """One titled grid of cells: float, complex, bool, int, str, or None."""

    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


def _real_text(x: float) -> str:
    value = float(x)
    if value == 0.0:
        value = 0.0  # canonicalize negative zero
    return f"{value:.12g}"


def _cell_text(cell) -> str:
    if cell is None:
        return "undefined"
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, complex):
        return f"({_real_text(cell.real)}, {_real_text(cell.imag)})"
    if isinstance(cell, float):
        return _real_text(cell)
    return str(cell)


def _cell_json(cell):
    if cell is None or isinstance(cell, (bool, int, str)):
        return cell
    if isinstance(cell, complex):
        return {"re": float(_real_text(cell.real)), "im": float(_real_text(cell.imag))}
    if isinstance(cell, float):
        return float(_real_text(cell))
    return str(cell)


def emit(fmt: str, tables: list[Table]) -> str:
    """Render tables deterministically in the requested format."""
    if fmt == "json":
        payload = [{"title": t.title,
                    "columns": list(t.columns),
                    "rows": [{c: _cell_json(v) for c, v in zip(t.columns, row)}
                             for row in t.rows]}
                   for t in tables]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for k, t in enumerate(tables):
            if len(tables) > 1:
                if k:
                    buffer.write("\n")
                buffer.write(f"# {t.title}\n")
            writer.writerow(t.columns)
            for row in t.rows:
                writer.writerow([_cell_text(v) for v in row])
        return buffer.getvalue()
    # aligned human-readable text
    out: list[str] = []
    for k, t in enumerate(tables):
        if k:
            out.append("")
        out.append(t.title)
        grid = [list(t.columns)] + [[_cell_text(v) for v in row] for row in t.rows]
        widths = [max(len(r[c]) for r in grid) for c in range(len(t.columns))]
        for r, cells in enumerate(grid):
            out.append("  ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip())
            if r == 0:
                out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def amplitudes_table(scenario: Scenario) -> Table:
    table = amplitude_table(scenario.initial, dict(scenario.finals),
                            require_orthogonal=False)
    rows = []
    for k, label in enumerate(table.path_labels):
        rows.append((label, *[complex(v) for v in table.values[k]]))
    return Table(title=f"path amplitudes ({scenario.name})",
                 columns=("path", *table.final_names),
                 rows=tuple(rows))


def probabilities_table(scenario: Scenario) -> Table:
    rows = []
    for name, fin in scenario.finals.items():
        amp = decompose(scenario.initial, fin).total_amplitude
        prob = transition_probability(scenario.initial, fin)
        rows.append((name, complex(amp), float(prob)))
    return Table(title=f"transition probabilities ({scenario.name})",
                 columns=("final", "amplitude", "probability"),
                 rows=tuple(rows))


def network_table(scenario: Scenario, final_name: str, obs_name: str) -> Table:
    net = build_network(scenario.initial, scenario.final(final_name),
                        scenario.observable(obs_name))
    try:
        conditional = conditional_reading_distribution(net)
    except PostSelectionImpossible:
        conditional = None
    rows = []
    for cls in net.classes:
        paths = " + ".join(scenario.space.labels[k] for k in cls.members)
        rows.append((float(cls.eigenvalue), paths, cls.multiplicity,
                     complex(cls.amplitude), float(cls.probability),
                     None if conditional is None else float(conditional[cls.eigenvalue])))
    return Table(title=f"pathway network ({scenario.name}, final {final_name}, "
                       f"observable {obs_name})",
                 columns=("eigenvalue", "paths", "multiplicity", "amplitude",
                          "probability", "conditional"),
                 rows=tuple(rows))


def weak_table(scenario: Scenario, final_name: str, obs_name: str) -> Table:
    dec = decompose(scenario.initial, scenario.final(final_name))
    result = weak_value(dec, scenario.observable(obs_name))
    row = (scenario.name, final_name, obs_name,
           complex(result.complex_value), float(result.reported))
    return Table(title=f"weak value ({scenario.name}, final {final_name}, "
                       f"observable {obs_name})",
                 columns=("scenario", "final", "observable", "complex_value", "reported"),
                 rows=(row,))


def mean_reading_table(scenario: Scenario, final_name: str, obs_name: str,
                       width_ratio: float) -> Table:
    obs = scenario.observable(obs_name)
    dec = decompose(scenario.initial, scenario.final(final_name))
    width = scaled_widths(obs, (width_ratio,))[0]
    mean = mean_reading(dec, obs, MeterModel(width))
    return Table(title=f"mean reading ({scenario.name}, final {final_name}, "
                       f"observable {obs_name})",
                 columns=("final", "observable", "width_ratio", "width", "mean_reading"),
                 rows=((final_name, obs_name, float(width_ratio), float(width),
                        float(mean)),))


def width_sweep_table(scenario: Scenario, final_name: str, obs_name: str,
                      ratios: tuple[float, ...]) -> Table:
    obs = scenario.observable(obs_name)
    dec = decompose(scenario.initial, scenario.final(final_name))
    widths = scaled_widths(obs, ratios)
    rows = []
    for ratio, width in zip(ratios, widths):
        mean = mean_reading(dec, obs, MeterModel(width))
        error = weak_limit_convergence(dec, obs, (width,))[0]
        rows.append((float(ratio), float(width), float(mean), float(error)))
    return Table(title=f"width sweep ({scenario.name}, final {final_name}, "
                       f"observable {obs_name})",
                 columns=("width_ratio", "width", "mean_reading", "weak_value_error"),
                 rows=tuple(rows))


def sum_rule_table(scenario: Scenario, final_name: str,
                   first_name: str, second_name: str) -> Table:
    report = sum_rule_report(scenario.initial, scenario.final(final_name),
                             scenario.observable(first_name),
                             scenario.observable(second_name))
    rows = (
        ("post-selected", float(report.joint_first), float(report.joint_second),
         float(report.joint_combined), bool(report.holds_postselected)),
        ("all-outcomes", float(report.all_outcomes_first),
         float(report.all_outcomes_second), float(report.all_outcomes_combined),
         bool(report.holds_all_outcomes)),
    )
    return Table(title=f"sum rule ({scenario.name}, final {final_name}, "
                       f"{first_name} + {second_name})",
                 columns=("setting", first_name, second_name, "combined", "holds"),
                 rows=rows)


def product_rule_table(scenario: Scenario, final_name: str,
                       first_name: str, second_name: str) -> Table:
    report = product_rule_report(scenario.initial, scenario.final(final_name),
                                 scenario.observable(first_name),
                                 scenario.observable(second_name))
    row = (report.certain_first, report.certain_second, report.certain_product,
           bool(report.holds))
    return Table(title=f"product rule ({scenario.name}, final {final_name}, "
                       f"{first_name} * {second_name})",
                 columns=(f"certain {first_name}", f"certain {second_name}",
                          "certain product", "holds"),
                 rows=(row,))


def table2_table(scenario: Scenario) -> Table:
    rows = []
    for obs_name, obs in scenario.observables.items():
        for final_name, fin in scenario.finals.items():
            net = build_network(scenario.initial, fin, obs)
            prob = perturbed_transition_probability(net)
            classes = " ".join(f"{_real_text(c.eigenvalue)}:{_real_text(c.probability)}"
                               for c in net.classes)
            rows.append((obs_name, final_name, float(prob), classes))
    return Table(title=f"measured transition probabilities ({scenario.name})",
                 columns=("observable", "final", "probability", "classes"),
                 rows=tuple(rows))


def verify_table() -> tuple[Table, int]:
    checks = verification_checks()
    rows = tuple((c.name, "pass" if c.passed else "fail",
                  float(c.deviation), float(c.tolerance)) for c in checks)
    table = Table(title="oracle verification",
                  columns=("check", "status", "max_deviation", "tolerance"),
                  rows=rows)
    return table, (0 if all(c.passed for c in checks) else 4)


def scan_epsilon_table(obs_name: str, final_name: str, start: float,
                       stop: float, steps: int) -> Table:
    rows = []
    for eps in epsilon_grid(start, stop, steps):
        scenario = hardy_epsilon(eps)
        dec = decompose(scenario.initial, scenario.final(final_name))
        result = weak_value(dec, scenario.observable(obs_name))
        rows.append((float(eps), complex(result.complex_value), float(result.reported)))
    return Table(title=f"weak value of {obs_name} versus epsilon (final {final_name})",
                 columns=("epsilon", "complex_value", "reported"),
                 rows=tuple(rows))


def execute_query(scenario: Scenario, q: QueryDirective) -> Table:
    if q.kind == "amplitudes":
        return amplitudes_table(scenario)
    if q.kind == "probabilities":
        return probabilities_table(scenario)
    if q.kind == "network":
        return network_table(scenario, q.argument("final"), q.argument("obs"))
    if q.kind == "weak":
        return weak_table(scenario, q.argument("final"), q.argument("obs"))
    if q.kind == "mean-reading":
        return mean_reading_table(scenario, q.argument("final"), q.argument("obs"),
                                  float(q.argument("width")))
    if q.kind == "scan":
        ratios = tuple(float(p) for p in q.argument("widths").split(",") if p)
        return width_sweep_table(scenario, q.argument("final"), q.argument("obs"), ratios)
    if q.kind == "sum-rule":
        return sum_rule_table(scenario, q.argument("final"),
                              q.argument("obs"), q.argument("obs2"))
    if q.kind == "product-rule":
        return product_rule_table(scenario, q.argument("final"),
                                  q.argument("obs"), q.argument("obs2"))
    raise ValueError(f"unhandled query kind {q.kind!r}")


def _ratio_list(text: str) -> tuple[float, ...]:
    try:
        ratios = tuple(float(p) for p in text.split(",") if p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad width list {text!r}") from None
    if not ratios or any(not r > 0.0 for r in ratios):
        raise argparse.ArgumentTypeError("widths must be positive numbers")
    return ratios


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpaths",
        description="Path amplitudes, pathway networks, meters, and weak values "
                    "for pre- and post-selected systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("table", "csv", "json"), default="table",
                       help="output format (default: aligned table)")

    def add_scenario(p, default=None):
        p.add_argument("--scenario", default=default, required=default is None,
                       help="built-in scenario name: three-box, hardy, hardy-epsilon")
        p.add_argument("--beta", type=float, default=0.5,
                       help="three-box path amplitude magnitude (default 0.5)")
        p.add_argument("--epsilon", type=float, default=0.5,
                       help="hardy-epsilon final-state parameter (default 0.5)")

    p = sub.add_parser("table1", help="path amplitudes of the built-in hardy scenario")
    add_format(p)
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser("table2", help="measured transition probabilities of hardy")
    add_format(p)
    p.set_defaults(handler=_cmd_table2)

    p = sub.add_parser("network", help="pathway classes for one final and observable")
    add_scenario(p)
    p.add_argument("--final", required=True)
    p.add_argument("--obs", required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_network)

    p = sub.add_parser("weak", help="weak value for one final and observable")
    add_scenario(p)
    p.add_argument("--final", required=True)
    p.add_argument("--obs", required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_weak)

    p = sub.add_parser("scan-epsilon",
                       help="weak value versus epsilon in the hardy-epsilon family")
    p.add_argument("--from", dest="eps_from", type=float, required=True)
    p.add_argument("--to", dest="eps_to", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--obs", required=True)
    p.add_argument("--final", default="f")
    add_format(p)
    p.set_defaults(handler=_cmd_scan_epsilon)

    p = sub.add_parser("sweep-width",
                       help="mean reading versus meter width (in eigenvalue-spread units)")
    add_scenario(p, default="hardy")
    p.add_argument("--final", required=True)
    p.add_argument("--obs", required=True)
    p.add_argument("--widths", type=_ratio_list, default=(1.0, 10.0, 100.0),
                   help="comma-separated width ratios (default 1,10,100)")
    add_format(p)
    p.set_defaults(handler=_cmd_sweep_width)

    p = sub.add_parser("verify", help="cross-check both computation routes")
    add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("run", help="execute the queries of a scenario file")
    p.add_argument("file", help="path to a .scn scenario file")
    add_format(p)
    p.set_defaults(handler=_cmd_run)

    return parser


def _scenario_from_args(args) -> Scenario:
    return built_in(args.scenario, beta=args.beta, epsilon=args.epsilon)


def _cmd_table1(args):
    return [amplitudes_table(built_in("hardy"))], 0


def _cmd_table2(args):
    return [table2_table(built_in("hardy"))], 0


def _cmd_network(args):
    return [network_table(_scenario_from_args(args), args.final, args.obs)], 0


def _cmd_weak(args):
    return [weak_table(_scenario_from_args(args), args.final, args.obs)], 0


def _cmd_scan_epsilon(args):
    return [scan_epsilon_table(args.obs, args.final, args.eps_from,
                               args.eps_to, args.steps)], 0


def _cmd_sweep_width(args):
    return [width_sweep_table(_scenario_from_args(args), args.final, args.obs,
                              tuple(args.widths))], 0


def _cmd_verify(args):
    table, code = verify_table()
    return [table], code


def _cmd_run(args):
    doc = load_path(args.file)
    scenario = validate(doc)
    for note in scenario.notes:
        print(f"note: {args.file}: {note}", file=sys.stderr)
    tables = [execute_query(scenario, q) for q in doc.queries]
    return tables, 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    file_prefix = f"{getattr(args, 'file', '')}: " if hasattr(args, "file") else ""
    try:
        tables, code = args.handler(args)
    except ScenarioParseError as exc:
        print(f"error: {file_prefix}{exc}", file=sys.stderr)
        return 2
    except UnknownNameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PostSelectionImpossible, WeakValueUndefined) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MeterStatisticsUndefined as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except QPathsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(args.format, tables))
    return code


if __name__ == "__main__":
    sys.exit(main())
