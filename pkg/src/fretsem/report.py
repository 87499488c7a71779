"""Report rendering: text summary, JSON, CSV table, and figures.

The JSON form is byte-stable for a given configuration; the figures are
diagnostic companions written next to it.
"""

import csv
import json
import os

from .fretish import SCOPE_KINDS, TIMING_KINDS


def render_json(report):
    payload = {
        "config": report.config,
        "totals": report.totals,
        "per_template": report.per_template,
        "counterexamples": report.counterexamples,
        "self_check": report.self_check,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_text(report):
    lines = ["differential fuzz report", "========================"]
    for key in ("seed", "traces_per_template", "max_trace_len", "policy"):
        lines.append("%s: %s" % (key, report.config[key]))
    weights = report.config["strategy_weights"]
    lines.append("strategies: " + " ".join(
        "%s=%d" % (name, weights[name]) for name in sorted(weights)))
    # conventions the campaign arbitrates between: an empty scope under the
    # vacuous policy always agrees with the generated formula, and a
    # never-entered mode leaves 'before' covering the whole trace
    lines.append("conventions: empty-scope policy=%s; before(mode never "
                 "entered) covers the whole trace; scopes without a right "
                 "endpoint: null, after, only-before"
                 % report.config["policy"])
    lines.append("oracle self-check: ok (%d cases)" % report.self_check["cases"])
    lines.append("templates: %d" % report.totals["templates"])
    lines.append("total cases: %d" % report.totals["cases"])
    lines.append("total disagreements: %d" % report.totals["disagreements"])
    lines.append("result: %s" % ("PASS" if report.totals["disagreements"] == 0 else "FAIL"))
    lines.append("")
    lines.append("per-template results:")
    for row in report.per_template:
        lines.append("  %-28s cases=%-4d disagreements=%d"
                     % (row["id"], row["cases"], row["disagreements"]))
    if report.counterexamples:
        lines.append("")
        lines.append("counterexamples (shrunk):")
        for i, ce in enumerate(report.counterexamples, start=1):
            lines.append("  #%d template=%s sem=%s mtl=%s"
                         % (i, ce["template"], ce["sem"], ce["mtl"]))
            lines.append("     %s" % ce["requirement_text"])
            lines.append("     trace: %s" % json.dumps(ce["trace"]["steps"]))
    lines.append("")
    return "\n".join(lines)


def write_csv(report, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scope", "cond", "timing", "cases", "disagreements"])
        for row in report.per_template:
            scope, cond, timing = row["id"].split("/")
            writer.writerow([scope, cond, timing, row["cases"], row["disagreements"]])


def _disagreement_grid(report):
    grid = [[0 for _ in TIMING_KINDS] for _ in SCOPE_KINDS]
    covered = [[False for _ in TIMING_KINDS] for _ in SCOPE_KINDS]
    for row in report.per_template:
        scope, _, timing = row["id"].split("/")
        i = SCOPE_KINDS.index(scope)
        j = TIMING_KINDS.index(timing)
        grid[i][j] += row["disagreements"]
        covered[i][j] = True
    return grid, covered


def plot_template_grid(report, path):
    """Heatmap of disagreements per scope/timing pair (condition kinds
    aggregated); unsupported pairs are hatched out."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    grid, covered = _disagreement_grid(report)
    fig, ax = plt.subplots(figsize=(9, 5))
    peak = max(max(row) for row in grid)
    ax.imshow(grid, cmap="Reds", vmin=0, vmax=max(1, peak), aspect="auto")
    ax.set_xticks(range(len(TIMING_KINDS)), TIMING_KINDS, rotation=45, ha="right")
    ax.set_yticks(range(len(SCOPE_KINDS)), SCOPE_KINDS)
    for i in range(len(SCOPE_KINDS)):
        for j in range(len(TIMING_KINDS)):
            label = str(grid[i][j]) if covered[i][j] else "n/a"
            ax.text(j, i, label, ha="center", va="center", fontsize=8)
    ax.set_title("disagreements per template (%d cases, %d disagreements)"
                 % (report.totals["cases"], report.totals["disagreements"]))
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_counterexample(ce, path):
    """Step plot of one shrunk counterexample trace."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    trace = ce["trace"]
    names = trace["vars"]
    steps = trace["steps"]
    times = list(range(len(steps)))
    fig, ax = plt.subplots(figsize=(8, 0.9 * len(names) + 1.5))
    for row, name in enumerate(names):
        values = [steps[t][name] for t in times]
        if all(isinstance(v, bool) for v in values):
            level = [2 * row + (1 if v else 0) for v in values]
            ax.step(times, level, where="post")
        else:
            numeric = [float(v) if not isinstance(v, str) else 0.0 for v in values]
            peak = max(1.0, max(abs(v) for v in numeric))
            ax.step(times, [2 * row + v / peak for v in numeric], where="post")
        ax.axhline(2 * row, color="0.85", linewidth=0.5)
    ax.set_yticks([2 * r + 0.5 for r in range(len(names))], names)
    ax.set_xticks(times)
    ax.set_xlabel("time index")
    ax.set_title("sem=%s mtl=%s\n%s" % (ce["sem"], ce["mtl"],
                                        ce["requirement_text"]), fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


MAX_COUNTEREXAMPLE_FIGURES = 5


def write_reports(report, out_dir):
    """Write report.json, report.txt, per_template.csv, and figures.

    Returns the list of paths written.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    json_path = os.path.join(out_dir, "report.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(render_json(report))
    paths.append(json_path)

    text_path = os.path.join(out_dir, "report.txt")
    with open(text_path, "w", encoding="utf-8") as fh:
        fh.write(render_text(report))
    paths.append(text_path)

    csv_path = os.path.join(out_dir, "per_template.csv")
    write_csv(report, csv_path)
    paths.append(csv_path)

    grid_path = os.path.join(out_dir, "per_template.png")
    plot_template_grid(report, grid_path)
    paths.append(grid_path)

    for i, ce in enumerate(report.counterexamples[:MAX_COUNTEREXAMPLE_FIGURES],
                           start=1):
        ce_path = os.path.join(out_dir, "counterexample_%d.png" % i)
        plot_counterexample(ce, ce_path)
        paths.append(ce_path)
    return paths
