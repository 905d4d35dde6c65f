"""Matplotlib report figures rendered to files alongside the data output.

These are human-facing pictures (PNG by default); the byte-stable SVG
pictures for regression comparison live in render.py.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path):
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def figure_slice(ds, path) -> None:
    fig, ax = plt.subplots(figsize=(7, 5))
    for entry in ds.entries:
        xs = [s.tau.real for s in entry.ray.samples]
        ys = [s.tau.imag for s in entry.ray.samples]
        ax.plot(xs, ys, lw=0.8, color="tab:blue")
    cx = [e.ray.cusp.tau.real for e in ds.entries]
    cy = [e.ray.cusp.tau.imag for e in ds.entries]
    ax.plot(cx, cy, ".", ms=5, color="tab:red", label="cusps")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel(r"Re $\tau$")
    ax.set_ylabel(r"Im $\tau$")
    ax.set_title(f"BM slice  mu={ds.mu}  c={ds.c:.6g}  depth={ds.depth}")
    ax.legend(loc="lower right")
    _save(fig, path)


def figure_ray(ray, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 5))
    xs = [s.tau.real for s in ray.samples]
    ys = [s.tau.imag for s in ray.samples]
    ax.plot(xs, ys, "-", lw=1.2, color="tab:blue")
    ax.plot([ray.cusp.tau.real], [ray.cusp.tau.imag], "o", color="tab:red")
    ax.plot([ray.t_star], [0.0], "s", color="0.4")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel(r"Re $\tau$")
    ax.set_ylabel(r"Im $\tau$")
    ax.set_title(f"Pleating ray  mu={ray.mu}  nu={ray.nu}  c={ray.c:.6g}")
    _save(fig, path)


def figure_plane(ppi, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 5))
    cs = [c for c, _ in ppi.graph]
    fs = [f for _, f in ppi.graph]
    ax.plot(cs, fs, "-", color="tab:blue", label=r"$f(c)$")
    ax.fill_between(cs, 0.0, fs, color="tab:blue", alpha=0.12)
    inside = [(lp.c, lp.d) for lp in ppi.located if lp.in_region]
    outside = [(lp.c, lp.d) for lp in ppi.located if not lp.in_region]
    if inside:
        ax.plot(*zip(*inside), ".", color="tab:green", label="located")
    if outside:
        ax.plot(*zip(*outside), "x", color="tab:red", label="out of region")
    ax.set_xlabel(r"$c = \lambda_\mu$")
    ax.set_ylabel(r"$d = \lambda_\nu$")
    ax.set_ylim(bottom=0.0)
    ax.set_title(f"Pleating plane image  mu={ppi.mu}  nu={ppi.nu}")
    ax.legend(loc="upper right")
    _save(fig, path)


def figure_critline(points, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 5))
    cs = [cp.c for cp in points]
    fs = [cp.f_value for cp in points]
    ax.plot(cs, fs, "o-", ms=3, color="tab:blue")
    ax.set_xlabel(r"$l_\mu$")
    ax.set_ylabel(r"$l_\nu$ at the minimum")
    if points:
        ax.set_title(f"Critical line  mu={points[0].mu}  nu={points[0].nu}")
    _save(fig, path)


def figure_boundary(catalog, path) -> None:
    fig, ax = plt.subplots(figsize=(7, 5))
    xs = [cp.tau.real for cp in catalog.cusps]
    ys = [cp.tau.imag for cp in catalog.cusps]
    ax.plot(xs, ys, ".", ms=6, color="tab:red")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel(r"Re $\tau$")
    ax.set_ylabel(r"Im $\tau$")
    ax.set_title(
        f"Boundary cusps  mu={catalog.mu}  c={catalog.c:.6g}  depth={catalog.depth}"
    )
    _save(fig, path)


def figure_limitset(points, path, title="limit set") -> None:
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot([z.real for z in points], [z.imag for z in points], ".", ms=1.0,
            color="black")
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title)
    _save(fig, path)
