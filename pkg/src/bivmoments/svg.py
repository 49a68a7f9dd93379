"""Minimal SVG line-plot writer; enough for trajectory and moment panels."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#000000", "#1f4e9c", "#b2182b", "#4d9221", "#7f7f7f")
DASHES = ("", "6,3", "2,2", "8,3,2,3")


def _fmt(v):
    return f"{v:.2f}"


class Panel:
    """A rectangular plot area mapping data coordinates to pixels."""

    def __init__(self, x0, y0, width, height, title="", equal_aspect=False):
        self.x0, self.y0, self.width, self.height = x0, y0, width, height
        self.title = title
        self.equal_aspect = equal_aspect
        self.series = []
        self.markers = []

    def line(self, x, y, color=None, width=1.0, dash="", label=None):
        x, y = np.asarray(x, float), np.asarray(y, float)
        self.series.append((x, y, color or PALETTE[len(self.series) % len(PALETTE)],
                            width, dash, label))
        return self

    def marker(self, x, y, shape="circle", color="#000000"):
        self.markers.append((float(x), float(y), shape, color))
        return self

    def _limits(self):
        xs = [s[0][np.isfinite(s[0]) & np.isfinite(s[1])] for s in self.series]
        ys = [s[1][np.isfinite(s[0]) & np.isfinite(s[1])] for s in self.series]
        xs = np.concatenate(xs) if xs else np.zeros(1)
        ys = np.concatenate(ys) if ys else np.zeros(1)
        if xs.size == 0:
            xs = ys = np.zeros(1)
        xlo, xhi, ylo, yhi = xs.min(), xs.max(), ys.min(), ys.max()
        if xhi == xlo:
            xlo, xhi = xlo - 1, xhi + 1
        if yhi == ylo:
            ylo, yhi = ylo - 1, yhi + 1
        pad = 0.04
        dx, dy = (xhi - xlo) * pad, (yhi - ylo) * pad
        xlo, xhi, ylo, yhi = xlo - dx, xhi + dx, ylo - dy, yhi + dy
        if self.equal_aspect:
            sx = (xhi - xlo) / self.width
            sy = (yhi - ylo) / self.height
            s = max(sx, sy)
            xc, yc = (xlo + xhi) / 2, (ylo + yhi) / 2
            xlo, xhi = xc - s * self.width / 2, xc + s * self.width / 2
            ylo, yhi = yc - s * self.height / 2, yc + s * self.height / 2
        return xlo, xhi, ylo, yhi

    def render(self) -> str:
        xlo, xhi, ylo, yhi = self._limits()

        def px(x):
            return self.x0 + (x - xlo) / (xhi - xlo) * self.width

        def py(y):
            return self.y0 + self.height - (y - ylo) / (yhi - ylo) * self.height

        out = [f'<rect x="{_fmt(self.x0)}" y="{_fmt(self.y0)}" width="{_fmt(self.width)}" '
               f'height="{_fmt(self.height)}" fill="none" stroke="#444" stroke-width="0.8"/>']
        if self.title:
            out.append(f'<text x="{_fmt(self.x0 + 4)}" y="{_fmt(self.y0 - 5)}" '
                       f'font-size="12" font-family="sans-serif">{escape(self.title)}</text>')
        for lo, hi, anchor, pos in ((ylo, yhi, "end", "y"), (xlo, xhi, "middle", "x")):
            for v in (lo, hi):
                if pos == "y":
                    out.append(f'<text x="{_fmt(self.x0 - 3)}" y="{_fmt(py(v) + 4)}" font-size="9" '
                               f'text-anchor="{anchor}" font-family="sans-serif">{v:.3g}</text>')
                else:
                    out.append(f'<text x="{_fmt(px(v))}" y="{_fmt(self.y0 + self.height + 12)}" '
                               f'font-size="9" text-anchor="{anchor}" '
                               f'font-family="sans-serif">{v:.3g}</text>')
        legend_y = self.y0 + 12
        for x, y, color, width, dash, label in self.series:
            ok = np.isfinite(x) & np.isfinite(y)
            # break the polyline at gaps so masked samples are not bridged
            runs = np.split(np.arange(x.size), np.flatnonzero(np.diff(ok.astype(int)) != 0) + 1)
            for run in runs:
                if run.size < 2 or not ok[run[0]]:
                    continue
                pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(x[run], y[run]))
                dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
                out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                           f'stroke-width="{width}"{dash_attr}/>')
            if label:
                out.append(f'<text x="{_fmt(self.x0 + self.width - 4)}" y="{_fmt(legend_y)}" '
                           f'font-size="10" text-anchor="end" fill="{color}" '
                           f'font-family="sans-serif">{escape(label)}</text>')
                legend_y += 12
        for x, y, shape, color in self.markers:
            cx, cy = px(x), py(y)
            if shape == "circle":
                out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="4" fill="none" '
                           f'stroke="{color}"/>')
            elif shape == "x":
                out.append(f'<path d="M{_fmt(cx - 4)},{_fmt(cy - 4)} L{_fmt(cx + 4)},{_fmt(cy + 4)} '
                           f'M{_fmt(cx - 4)},{_fmt(cy + 4)} L{_fmt(cx + 4)},{_fmt(cy - 4)}" '
                           f'stroke="{color}"/>')
            else:
                out.append(f'<path d="M{_fmt(cx)},{_fmt(cy - 5)} L{_fmt(cx + 5)},{_fmt(cy + 4)} '
                           f'L{_fmt(cx - 5)},{_fmt(cy + 4)} Z" fill="{color}"/>')
        return "\n".join(out)


def figure(panels, width, height) -> str:
    body = "\n".join(p.render() for p in panels)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n'
            f'<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n')


def column(titles, width=640, panel_height=130, gap=38, margin=50):
    """Panels stacked vertically; returns (panels, total_width, total_height)."""
    panels = []
    y = margin / 2 + 10
    for title in titles:
        panels.append(Panel(margin, y, width - 1.5 * margin, panel_height, title))
        y += panel_height + gap
    return panels, width, int(y)


def row(titles, panel_size=260, gap=40, margin=50, equal_aspect=True):
    panels = []
    x = margin
    for title in titles:
        panels.append(Panel(x, margin / 2 + 10, panel_size, panel_size, title, equal_aspect))
        x += panel_size + gap
    return panels, int(x - gap + margin / 2), int(panel_size + margin + 20)
