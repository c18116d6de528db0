/**
 * Minimal deterministic SVG plotting primitives.
 *
 * Everything renders to a plain SVG string with fixed number formatting and
 * no timestamps or generated ids, so a given (data, recipe) pair always
 * produces byte-identical output.
 */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const MARGIN: Margin = { top: 28, right: 24, bottom: 46, left: 62 };

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export class LinearScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number
  ) {}

  map(x: number): number {
    if (this.d1 === this.d0) return (this.r0 + this.r1) / 2;
    return this.r0 + ((x - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }

  ticks(n = 6): number[] {
    const span = this.d1 - this.d0;
    if (span <= 0) return [this.d0];
    const step = niceStep(span / n);
    const start = Math.ceil(this.d0 / step) * step;
    const out: number[] = [];
    for (let v = start; v <= this.d1 + 1e-12; v += step) {
      out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
    }
    return out;
  }
}

function niceStep(raw: number): number {
  const pow = Math.pow(10, Math.floor(Math.log10(raw)));
  const frac = raw / pow;
  if (frac <= 1) return pow;
  if (frac <= 2) return 2 * pow;
  if (frac <= 5) return 5 * pow;
  return 10 * pow;
}

export function extent(values: number[], padFrac = 0.05): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * padFrac;
  return [lo - pad, hi + pad];
}

/** Diverging blue-white-red colormap centered at zero. */
export function diverging(value: number, absMax: number): string {
  const t = absMax > 0 ? Math.max(-1, Math.min(1, value / absMax)) : 0;
  const ramp = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  let r: number, g: number, b: number;
  if (t < 0) {
    const u = 1 + t; // -1 -> 0 (deep blue), 0 -> 1 (white)
    r = ramp(33, 247, u);
    g = ramp(102, 247, u);
    b = ramp(172, 247, u);
  } else {
    const u = t; // 0 -> white, 1 -> deep red
    r = ramp(247, 178, u);
    g = ramp(247, 24, u);
    b = ramp(247, 43, u);
  }
  return `rgb(${r},${g},${b})`;
}

export const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export interface Frame {
  width: number;
  height: number;
  x: LinearScale;
  y: LinearScale;
  parts: string[];
}

export function makeFrame(
  width: number,
  height: number,
  xDomain: [number, number],
  yDomain: [number, number]
): Frame {
  const x = new LinearScale(xDomain[0], xDomain[1], MARGIN.left, width - MARGIN.right);
  const y = new LinearScale(yDomain[0], yDomain[1], height - MARGIN.bottom, MARGIN.top);
  return { width, height, x, y, parts: [] };
}

export function axes(frame: Frame, xLabel: string, yLabel: string, title: string): void {
  const { x, y, width, height, parts } = frame;
  const bottom = height - MARGIN.bottom;
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${width - MARGIN.left - MARGIN.right}" ` +
      `height="${bottom - MARGIN.top}" fill="none" stroke="#333" stroke-width="1"/>`
  );
  for (const t of x.ticks()) {
    const px = fmt(x.map(t));
    parts.push(`<line x1="${px}" y1="${bottom}" x2="${px}" y2="${bottom + 5}" stroke="#333"/>`);
    parts.push(
      `<text x="${px}" y="${bottom + 18}" font-size="11" text-anchor="middle">${trimTick(t)}</text>`
    );
  }
  for (const t of y.ticks()) {
    const py = fmt(y.map(t));
    parts.push(`<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}" stroke="#333"/>`);
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${py}" font-size="11" text-anchor="end" dominant-baseline="middle">${trimTick(t)}</text>`
    );
  }
  parts.push(
    `<text x="${fmt((MARGIN.left + width - MARGIN.right) / 2)}" y="${height - 10}" ` +
      `font-size="13" text-anchor="middle">${escapeXml(xLabel)}</text>`
  );
  parts.push(
    `<text x="16" y="${fmt((MARGIN.top + bottom) / 2)}" font-size="13" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${fmt((MARGIN.top + bottom) / 2)})">${escapeXml(yLabel)}</text>`
  );
  parts.push(
    `<text x="${fmt((MARGIN.left + width - MARGIN.right) / 2)}" y="18" font-size="14" ` +
      `font-weight="bold" text-anchor="middle">${escapeXml(title)}</text>`
  );
}

function trimTick(t: number): string {
  const s = t.toPrecision(6);
  return String(Number(s));
}

export function polyline(
  frame: Frame,
  xs: number[],
  ys: number[],
  color: string,
  dashed = false,
  width = 1.6
): void {
  const pts = xs.map((xv, i) => `${fmt(frame.x.map(xv))},${fmt(frame.y.map(ys[i]))}`).join(" ");
  const dash = dashed ? ' stroke-dasharray="6,4"' : "";
  frame.parts.push(
    `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="${width}"${dash}/>`
  );
}

export function legend(frame: Frame, entries: [string, string, boolean][]): void {
  let yPos = MARGIN.top + 8;
  const xPos = frame.width - MARGIN.right - 150;
  for (const [label, color, dashed] of entries) {
    const dash = dashed ? ' stroke-dasharray="6,4"' : "";
    frame.parts.push(
      `<line x1="${xPos}" y1="${yPos}" x2="${xPos + 24}" y2="${yPos}" stroke="${color}" stroke-width="2"${dash}/>`
    );
    frame.parts.push(
      `<text x="${xPos + 30}" y="${yPos + 4}" font-size="11">${escapeXml(label)}</text>`
    );
    yPos += 16;
  }
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function finish(frame: Frame): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" ` +
    `viewBox="0 0 ${frame.width} ${frame.height}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${frame.width}" height="${frame.height}" fill="white"/>\n` +
    frame.parts.join("\n") +
    "\n</svg>\n"
  );
}
