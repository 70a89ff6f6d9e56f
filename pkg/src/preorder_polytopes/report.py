"""Report serialization (JSON/CSV) and the figure rendering that goes with it.

Reports are deterministic: fixed ordering, sorted keys, and no wall-clock
content except the explicit timing field.  Figures are PNG side outputs
written next to the delimited report.
"""

from __future__ import annotations

import csv
import io
import json
import os

from .harness import CHECK_DEFS, ConjectureReport


def report_to_jsonable(report):
    return {
        "tau_key": report.tau_key,
        "size": report.size,
        "verdicts": dict(sorted(report.verdicts.items())),
        "witnesses": dict(sorted(report.witnesses.items())),
        "payload": report.payload,
        "timing": report.timing,
    }


def reports_json(reports):
    return json.dumps(
        [report_to_jsonable(r) for r in reports],
        indent=2,
        sort_keys=True,
    )


def reports_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tau_key", "size", "check", "kind", "verdict"])
    for rep in reports:
        for name, verdict in sorted(rep.verdicts.items()):
            writer.writerow([rep.tau_key, rep.size, name, CHECK_DEFS[name][0], verdict])
    return buf.getvalue()


def emit_report(reports, fmt="json", path=None):
    """Write reports as JSON or CSV; returns the rendered text."""
    if isinstance(reports, ConjectureReport):
        reports = [reports]
    if fmt == "json":
        text = reports_json(reports)
    elif fmt == "csv":
        text = reports_csv(reports)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    return text


# ---------------------------------------------------------------------------
# figures


def _mpl():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _safe_name(key):
    return key.replace("|", "_").replace(",", "-")


def render_report_figures(report, outdir):
    """Per-preorder figures: h-vector bars and the coefficient-polynomial roots."""
    import numpy as np

    plt = _mpl()
    os.makedirs(outdir, exist_ok=True)
    written = []
    h = report.payload.get("h_vector")
    if h:
        fig, ax = plt.subplots(figsize=(5, 3.2))
        ax.bar(range(len(h)), h, color="#4878d0")
        ax.set_xlabel("nonzero coordinates")
        ax.set_ylabel("lattice points")
        ax.set_title(f"h-vector, size {report.size}")
        fig.tight_layout()
        path = os.path.join(outdir, f"hvector_{_safe_name(report.tau_key)}.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

        from .polynomials import coefficient_polynomial

        poly = coefficient_polynomial(h)
        coeffs = [float(c) for c in reversed(poly.coeffs)]
        roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([])
        fig, ax = plt.subplots(figsize=(4.2, 4.2))
        ax.axvline(-0.5, color="#d65f5f", lw=1, label="Re(z) = -1/2")
        if roots.size:
            ax.plot(roots.real, roots.imag, "o", color="#4878d0")
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.set_title("series coefficient polynomial roots")
        ax.legend(loc="best", fontsize=8)
        fig.tight_layout()
        path = os.path.join(outdir, f"roots_{_safe_name(report.tau_key)}.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written


def render_sweep_figures(reports, summary, outdir):
    """Sweep-level figures: verdict counts per check, root cloud over instances."""
    import numpy as np

    plt = _mpl()
    os.makedirs(outdir, exist_ok=True)
    written = []

    names = [n for n in summary if not n.startswith("_")]
    if names:
        passes = [summary[n]["pass"] + summary[n]["sampled_pass"] for n in names]
        fails = [summary[n]["fail"] for n in names]
        skips = [summary[n]["not_applicable"] for n in names]
        ypos = np.arange(len(names))
        fig, ax = plt.subplots(figsize=(7, 0.32 * len(names) + 1.4))
        ax.barh(ypos, passes, color="#6acc64", label="pass")
        ax.barh(ypos, fails, left=passes, color="#d65f5f", label="fail")
        ax.barh(
            ypos,
            skips,
            left=[p + f for p, f in zip(passes, fails)],
            color="#c8c8c8",
            label="n/a",
        )
        ax.set_yticks(ypos)
        ax.set_yticklabels(names, fontsize=8)
        ax.invert_yaxis()
        ax.set_xlabel("instances")
        ax.set_title("verdicts per check")
        ax.legend(loc="lower right", fontsize=8)
        fig.tight_layout()
        path = os.path.join(outdir, "verdicts.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    from .polynomials import coefficient_polynomial

    re_parts, im_parts = [], []
    for rep in reports:
        h = rep.payload.get("h_vector")
        if not h:
            continue
        poly = coefficient_polynomial(h)
        coeffs = [float(c) for c in reversed(poly.coeffs)]
        if len(coeffs) > 1:
            roots = np.roots(coeffs)
            re_parts.extend(roots.real)
            im_parts.extend(roots.imag)
    if re_parts:
        fig, ax = plt.subplots(figsize=(4.6, 4.6))
        ax.axvline(-0.5, color="#d65f5f", lw=1, label="Re(z) = -1/2")
        ax.plot(re_parts, im_parts, ".", ms=3, color="#4878d0", alpha=0.6)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.set_title("coefficient-polynomial roots, all instances")
        ax.legend(loc="best", fontsize=8)
        fig.tight_layout()
        path = os.path.join(outdir, "roots_all.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
