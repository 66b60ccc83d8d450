"""Figures for the verify and pade reports."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_residuals(records: list[dict], path):
    """Bar chart of log10 relative residuals per identity, with the pass line."""
    labels = [f"{r['D']}/{r['which']}" for r in records]
    vals = [float(r["rel_residual"]) for r in records]
    logs = [-400.0 if v == 0 else math.log10(v) for v in vals]
    fig, ax = plt.subplots(figsize=(8, 4))
    colors = ["tab:green" if r["verdict"] == "pass" else "tab:red" for r in records]
    ax.bar(range(len(logs)), logs, color=colors)
    tol = -int(records[0]["tolerance"].split("e-")[1]) if records else 0
    ax.axhline(tol, color="k", ls="--", lw=1, label=f"tolerance 1e{tol}")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("log10 relative residual")
    ax.set_title(f"identity residuals at {records[0]['digits'] if records else '?'} digits")
    ax.legend()
    return _finish(fig, path)


def plot_decay(report: dict, path):
    rows = report["rows"]
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [r["log10_remainder"] for r in rows], "o-", label="log10 |R_n(1/Z)|")
    ax.plot(ns, [r["log10_coeff_norm"] for r in rows], "s--", label="log10 max|coeff|")
    ax.set_xlabel("n")
    ax.set_title(f"s = {report['s']}, Z = {report['Z']}")
    ax.legend()
    ax.grid(alpha=0.3)
    return _finish(fig, path)
