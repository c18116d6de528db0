/**
 * Renderers: one per plot kind, all pure functions (CSV, recipe) -> SVG.
 */

import { loadCsv, num, numOrNull, SchemaError, Table } from "./csv";
import { FigureRecipe, RECIPES } from "./recipes";
import {
  axes,
  diverging,
  extent,
  finish,
  fmt,
  Frame,
  legend,
  LinearScale,
  makeFrame,
  MARGIN,
  polyline,
  SERIES_COLORS,
} from "./svg";
import * as path from "path";

export { RECIPES, SchemaError };

export function render(recipeName: string, dataDir: string): string {
  const recipe = RECIPES[recipeName];
  if (!recipe) {
    throw new SchemaError(
      `unknown recipe '${recipeName}'; available: ${Object.keys(RECIPES).sort().join(", ")}`
    );
  }
  const table = loadCsv(path.join(dataDir, recipe.csv), recipe.expects);
  switch (recipe.kind) {
    case "line":
      return renderLine(recipe, table);
    case "histogram":
      return renderHistogram(recipe, table);
    case "heatmap":
      return renderHeatmap(recipe, table);
    case "wigner":
      return renderWigner(recipe, table);
    case "bars":
      return renderBars(recipe, table);
  }
}

interface Series {
  label: string;
  xs: number[];
  ys: number[];
  color: string;
  dashed: boolean;
}

function lineSeries(recipe: FigureRecipe, table: Table): Series[] {
  const out: Series[] = [];
  if (recipe.name === "fig1a" || recipe.name === "fig1b") {
    const xKey = recipe.expects[0];
    out.push({
      label: "exact (tree)",
      xs: table.rows.map((r) => num(r, xKey)),
      ys: table.rows.map((r) => num(r, "s_tree")),
      color: SERIES_COLORS[0],
      dashed: false,
    });
    out.push({
      label: "closed form",
      xs: table.rows.map((r) => num(r, xKey)),
      ys: table.rows.map((r) => num(r, "s_closed")),
      color: SERIES_COLORS[1],
      dashed: true,
    });
  } else if (recipe.name === "si_classical") {
    const groups = groupBy(table, "a0");
    groups.forEach((rows, i) => {
      out.push({
        label: `A0 = ${rows[0].a0}`,
        xs: rows.map((r) => num(r, "wait")),
        ys: rows.map((r) => num(r, "q_analytic")),
        color: SERIES_COLORS[i % SERIES_COLORS.length],
        dashed: false,
      });
    });
  } else if (recipe.name === "si_penalization") {
    for (const [i, key] of (["l", "ts", "l_pen"] as const).entries()) {
      out.push({
        label: key,
        xs: table.rows.map((r) => num(r, "amp")),
        ys: table.rows.map((r) => num(r, key)),
        color: SERIES_COLORS[i],
        dashed: key === "l_pen",
      });
    }
  } else if (recipe.name === "fig3b_lgi") {
    const groups = groupBy(table, "nbar");
    groups.forEach((rows, i) => {
      const color = SERIES_COLORS[i % SERIES_COLORS.length];
      out.push({
        label: `ideal, nbar = ${rows[0].nbar}`,
        xs: rows.map((r) => num(r, "amp")),
        ys: rows.map((r) => num(r, "l_ideal")),
        color,
        dashed: true,
      });
      const noisy = rows.filter((r) => numOrNull(r, "l_noisy") !== null);
      if (noisy.length > 0) {
        out.push({
          label: `noisy, nbar = ${rows[0].nbar}`,
          xs: noisy.map((r) => num(r, "amp")),
          ys: noisy.map((r) => num(r, "l_noisy")),
          color,
          dashed: false,
        });
      }
    });
  } else {
    throw new SchemaError(`no line mapping for recipe ${recipe.name}`);
  }
  return out;
}

function groupBy(table: Table, key: string): Record<string, string>[][] {
  const seen = new Map<string, Record<string, string>[]>();
  for (const row of table.rows) {
    const k = row[key];
    if (!seen.has(k)) seen.set(k, []);
    seen.get(k)!.push(row);
  }
  return [...seen.values()];
}

function renderLine(recipe: FigureRecipe, table: Table): string {
  const series = lineSeries(recipe, table);
  const xs = series.flatMap((s) => s.xs);
  const ys = series.flatMap((s) => s.ys);
  const frame = makeFrame(640, 420, extent(xs, 0.02), extent(ys, 0.08));
  axes(frame, recipe.xLabel, recipe.yLabel, recipe.title);
  if (recipe.name === "fig3b_lgi" || recipe.name === "si_penalization") {
    // macro-realist bound
    const y1 = fmt(frame.y.map(1.0));
    frame.parts.push(
      `<line x1="${MARGIN.left}" y1="${y1}" x2="${frame.width - MARGIN.right}" y2="${y1}" ` +
        `stroke="#999" stroke-width="1" stroke-dasharray="2,3"/>`
    );
  }
  for (const s of series) {
    polyline(frame, s.xs, s.ys, s.color, s.dashed);
  }
  legend(frame, series.map((s) => [s.label, s.color, s.dashed]));
  return finish(frame);
}

function renderHistogram(recipe: FigureRecipe, table: Table): string {
  const lefts = table.rows.map((r) => num(r, "bin_left"));
  const rights = table.rows.map((r) => num(r, "bin_right"));
  const nsit = table.rows.map((r) => num(r, "count_nsit"));
  const sit = table.rows.map((r) => num(r, "count_sit"));
  const frame = makeFrame(
    640,
    420,
    [Math.min(...lefts), Math.max(...rights)],
    [0, Math.max(...nsit, ...sit) * 1.1 + 1]
  );
  axes(frame, recipe.xLabel, recipe.yLabel, recipe.title);
  const y0 = frame.y.map(0);
  table.rows.forEach((_, i) => {
    const x0 = frame.x.map(lefts[i]);
    const x1 = frame.x.map(rights[i]);
    const w = x1 - x0;
    if (sit[i] > 0) {
      const yTop = frame.y.map(sit[i]);
      frame.parts.push(
        `<rect x="${fmt(x0)}" y="${fmt(yTop)}" width="${fmt(w)}" height="${fmt(y0 - yTop)}" ` +
          `fill="#c6dbef" stroke="#6baed6" stroke-width="0.5"/>`
      );
    }
    if (nsit[i] > 0) {
      const yTop = frame.y.map(nsit[i]);
      frame.parts.push(
        `<rect x="${fmt(x0 + w * 0.2)}" y="${fmt(yTop)}" width="${fmt(w * 0.6)}" ` +
          `height="${fmt(y0 - yTop)}" fill="#d62728" fill-opacity="0.85"/>`
      );
    }
  });
  legend(frame, [
    ["measured settings", "#d62728", false],
    ["SIT theory", "#6baed6", false],
  ]);
  return finish(frame);
}

interface GridData {
  xs: number[];
  ys: number[];
  values: Map<string, number>;
}

function gridFromRows(
  rows: Record<string, string>[],
  xKey: string,
  yKey: string,
  vKey: string
): GridData {
  const xSet = new Set<number>();
  const ySet = new Set<number>();
  const values = new Map<string, number>();
  for (const row of rows) {
    const x = num(row, xKey);
    const y = num(row, yKey);
    xSet.add(x);
    ySet.add(y);
    values.set(`${x}|${y}`, num(row, vKey));
  }
  return {
    xs: [...xSet].sort((a, b) => a - b),
    ys: [...ySet].sort((a, b) => a - b),
    values,
  };
}

function drawGrid(frame: Frame, grid: GridData, absMax: number): void {
  const dx = grid.xs.length > 1 ? grid.xs[1] - grid.xs[0] : 1;
  const dy = grid.ys.length > 1 ? grid.ys[1] - grid.ys[0] : 1;
  for (const y of grid.ys) {
    for (const x of grid.xs) {
      const v = grid.values.get(`${x}|${y}`);
      if (v === undefined) continue;
      const px = frame.x.map(x - dx / 2);
      const px1 = frame.x.map(x + dx / 2);
      const py = frame.y.map(y + dy / 2);
      const py1 = frame.y.map(y - dy / 2);
      frame.parts.push(
        `<rect x="${fmt(px)}" y="${fmt(py)}" width="${fmt(px1 - px)}" height="${fmt(py1 - py)}" ` +
          `fill="${diverging(v, absMax)}"/>`
      );
    }
  }
}

function colorbar(frame: Frame, absMax: number, label: string): void {
  const x0 = frame.width - MARGIN.right + 6;
  const yTop = MARGIN.top;
  const h = frame.height - MARGIN.top - MARGIN.bottom;
  const steps = 32;
  for (let i = 0; i < steps; i++) {
    const v = absMax * (1 - (2 * i) / (steps - 1));
    frame.parts.push(
      `<rect x="${x0}" y="${fmt(yTop + (h * i) / steps)}" width="10" height="${fmt(h / steps + 0.5)}" ` +
        `fill="${diverging(v, absMax)}"/>`
    );
  }
  frame.parts.push(
    `<text x="${x0 + 5}" y="${yTop - 6}" font-size="10" text-anchor="middle">+${absMax.toFixed(2)}</text>`
  );
  frame.parts.push(
    `<text x="${x0 + 5}" y="${yTop + h + 12}" font-size="10" text-anchor="middle">-${absMax.toFixed(2)}</text>`
  );
}

function renderHeatmap(recipe: FigureRecipe, table: Table): string {
  const grid = gridFromRows(table.rows, "re_b", "im_b", "c_closed");
  const absMax = Math.max(...[...grid.values.values()].map(Math.abs));
  const frame = makeFrame(
    660,
    460,
    [grid.xs[0], grid.xs[grid.xs.length - 1]],
    [grid.ys[0], grid.ys[grid.ys.length - 1]]
  );
  drawGrid(frame, grid, absMax);
  axes(frame, recipe.xLabel, recipe.yLabel, recipe.title);
  colorbar(frame, absMax, "C");
  return finish(frame);
}

function renderWigner(recipe: FigureRecipe, table: Table): string {
  const states = groupBy(table, "state");
  const panelW = 340;
  const width = panelW * states.length + MARGIN.left + MARGIN.right;
  const height = 420;
  const outer = makeFrame(width, height, [0, 1], [0, 1]);
  outer.parts.push(
    `<text x="${fmt(width / 2)}" y="18" font-size="14" font-weight="bold" ` +
      `text-anchor="middle">${recipe.title}</text>`
  );
  states.forEach((rows, i) => {
    const grid = gridFromRows(rows, "x", "p", "w");
    const absMax = Math.max(...[...grid.values.values()].map(Math.abs));
    const x0 = MARGIN.left + i * panelW;
    const sub: Frame = {
      width,
      height,
      x: new LinearScale(grid.xs[0], grid.xs[grid.xs.length - 1], x0, x0 + panelW - 30),
      y: new LinearScale(grid.ys[0], grid.ys[grid.ys.length - 1], height - MARGIN.bottom, MARGIN.top + 14),
      parts: outer.parts,
    };
    drawGrid(sub, grid, absMax);
    outer.parts.push(
      `<rect x="${x0}" y="${MARGIN.top + 14}" width="${panelW - 30}" ` +
        `height="${height - MARGIN.bottom - MARGIN.top - 14}" fill="none" stroke="#333"/>`
    );
    outer.parts.push(
      `<text x="${fmt(x0 + (panelW - 30) / 2)}" y="${MARGIN.top + 8}" font-size="12" ` +
        `text-anchor="middle">${rows[0].state}</text>`
    );
    outer.parts.push(
      `<text x="${fmt(x0 + (panelW - 30) / 2)}" y="${height - 12}" font-size="12" ` +
        `text-anchor="middle">${recipe.xLabel}</text>`
    );
  });
  return finish(outer);
}

function renderBars(recipe: FigureRecipe, table: Table): string {
  const amps = table.rows.map((r) => num(r, "amp"));
  const ground = table.rows.map((r) => num(r, "l_ground"));
  const squeezed = table.rows.map((r) => num(r, "l_squeezed"));
  const step = amps.length > 1 ? amps[1] - amps[0] : 1;
  const frame = makeFrame(
    680,
    420,
    [amps[0] - step, amps[amps.length - 1] + step],
    [0, Math.max(...ground, ...squeezed) * 1.15]
  );
  axes(frame, recipe.xLabel, recipe.yLabel, recipe.title);
  const y0 = frame.y.map(0);
  const y1 = fmt(frame.y.map(1.0));
  table.rows.forEach((_, i) => {
    const cx = frame.x.map(amps[i]);
    const w = Math.abs(frame.x.map(amps[i] + step * 0.36) - cx);
    const gTop = frame.y.map(ground[i]);
    const sTop = frame.y.map(squeezed[i]);
    frame.parts.push(
      `<rect x="${fmt(cx - w)}" y="${fmt(gTop)}" width="${fmt(w)}" height="${fmt(y0 - gTop)}" fill="${SERIES_COLORS[0]}"/>`
    );
    frame.parts.push(
      `<rect x="${fmt(cx)}" y="${fmt(sTop)}" width="${fmt(w)}" height="${fmt(y0 - sTop)}" fill="${SERIES_COLORS[1]}"/>`
    );
  });
  frame.parts.push(
    `<line x1="${MARGIN.left}" y1="${y1}" x2="${frame.width - MARGIN.right}" y2="${y1}" ` +
      `stroke="#555" stroke-width="1" stroke-dasharray="2,3"/>`
  );
  legend(frame, [
    ["ground state", SERIES_COLORS[0], false],
    ["squeezed r = 0.9", SERIES_COLORS[1], false],
  ]);
  return finish(frame);
}
