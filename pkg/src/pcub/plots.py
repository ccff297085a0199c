"""Figure rendering for the CLI report paths.

Each command's delimited output has a matching figure renderer; figures
are written next to the data file when plotting is requested.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["rule_figure", "kernel_figure", "bound_figure", "verify_figure"]


def rule_figure(rules: list[dict], path: str) -> None:
    """Stem plot of nodes/weights, one panel per component rule."""
    n = len(rules)
    fig, axes = plt.subplots(n, 1, figsize=(7, 2.2 * max(n, 1)), squeeze=False)
    for ax, entry in zip(axes[:, 0], rules):
        ax.stem(entry["nodes"], entry["weights"], basefmt=" ")
        ax.set_ylabel("weight")
        ax.set_title(f"k={entry['k']}, l={entry['ℓ']}, N={entry['N']}", fontsize=9)
    axes[-1, 0].set_xlabel("node")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def kernel_figure(rows: list[dict], path: str) -> None:
    """|K_k| against the boundary angle, one curve per (k, side)."""
    import math

    fig, ax = plt.subplots(figsize=(7, 4))
    groups: dict = {}
    for row in rows:
        key = (row["k"], row["side"])
        angle = math.atan2(row["im_tau"], row["re_tau"])
        mag = math.hypot(row["re_K"], row["im_K"])
        groups.setdefault(key, []).append((angle, mag))
    for (k, side), pts in sorted(groups.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"k={k} {side}")
    ax.set_xlabel("arg(tau)")
    ax.set_ylabel("|K_k(z, tau)|")
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def bound_figure(rows: list[dict], path: str) -> None:
    """Error against bound per sweep row, log scale."""
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = range(len(rows))
    ax.semilogy(xs, [max(r["abs_error"], 1e-18) for r in rows], "o-", label="|E[f]|")
    ax.semilogy(xs, [r["bound"] for r in rows], "s--", label="bound (squared norm)")
    ax.semilogy(xs, [r["bound_unsquared"] for r in rows], "d:", label="bound (plain norm)")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"N={r['N']}\nk0={r['k0']}\nL={r['L']}" for r in rows], fontsize=7)
    ax.set_ylabel("error / bound")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def verify_figure(results, path: str) -> None:
    """Bar chart of worst residual-to-tolerance ratio per suite."""
    fig, ax = plt.subplots(figsize=(7, 3.5))
    names = [r.name for r in results]
    ratios = [max(r.worst, 1e-18) for r in results]
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    ax.bar(names, ratios, color=colors)
    ax.axhline(1.0, color="k", lw=0.8, ls="--")
    ax.set_yscale("log")
    ax.set_ylabel("worst residual / tolerance")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
