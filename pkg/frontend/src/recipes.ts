/**
 * Figure recipes: which CSVs feed each figure, with their exact schemas.
 *
 * The renderer refuses any CSV whose header does not match the recipe; the
 * plotting layer never recomputes physics, it only draws what the simulator
 * wrote.
 */

export type PlotKind = "line" | "histogram" | "heatmap" | "wigner" | "bars";

export interface FigureRecipe {
  name: string;
  kind: PlotKind;
  csv: string;
  expects: string[];
  title: string;
  xLabel: string;
  yLabel: string;
}

export const RECIPES: Record<string, FigureRecipe> = {
  fig1a: {
    name: "fig1a",
    kind: "line",
    csv: "fig1a.csv",
    expects: ["squeeze_r", "p_b", "p_b_after_a", "s_tree", "s_closed"],
    title: "Signaling vs squeezing (alpha_B = 3.1i, alpha_A = 3.02)",
    xLabel: "squeezing parameter r",
    yLabel: "S",
  },
  fig1b: {
    name: "fig1b",
    kind: "line",
    csv: "fig1b.csv",
    expects: ["alpha_a_real", "p_b", "p_b_after_a", "s_tree", "s_closed"],
    title: "Signaling vs geometric phase (cat input, alpha_B = i pi)",
    xLabel: "alpha_A",
    yLabel: "S",
  },
  fig2_hist: {
    name: "fig2_hist",
    kind: "histogram",
    csv: "fig2_hist.csv",
    expects: ["bin_left", "bin_right", "count_nsit", "count_sit"],
    title: "150-state suite: measured S (NSIT settings) vs SIT theory",
    xLabel: "S",
    yLabel: "count",
  },
  fig2d_wigner: {
    name: "fig2d_wigner",
    kind: "wigner",
    csv: "fig2d_wigner.csv",
    expects: ["state", "x", "p", "w"],
    title: "Wigner functions through the measurement sequence",
    xLabel: "X",
    yLabel: "P",
  },
  fig3a_map: {
    name: "fig3a_map",
    kind: "heatmap",
    csv: "fig3a.csv",
    expects: ["re_b", "im_b", "c_closed", "phi_geo", "c_tree"],
    title: "Two-time correlator vs alpha_B (alpha_A = 2.1)",
    xLabel: "Re alpha_B",
    yLabel: "Im alpha_B",
  },
  fig3b_lgi: {
    name: "fig3b_lgi",
    kind: "line",
    csv: "fig3b.csv",
    expects: ["nbar", "amp", "l_ideal", "ts", "l_pen", "l_noisy"],
    title: "Leggett-Garg violation vs displacement",
    xLabel: "|alpha|",
    yLabel: "L",
  },
  si_classical: {
    name: "si_classical",
    kind: "line",
    csv: "si_classical.csv",
    expects: ["a0", "wait", "q_analytic", "q_mc"],
    title: "Classical Ramsey revivals (50 Hz field)",
    xLabel: "wait time T (s)",
    yLabel: "<Q>",
  },
  si_penalization: {
    name: "si_penalization",
    kind: "line",
    csv: "si_penalization.csv",
    expects: [
      "amp", "theta_a", "theta_b", "theta_c", "phi_a", "phi_b", "phi_c", "l", "ts", "l_pen",
    ],
    title: "Built-in signaling penalty of the LGI protocol",
    xLabel: "|alpha|",
    yLabel: "value",
  },
  si_sqlg: {
    name: "si_sqlg",
    kind: "bars",
    csv: "si_sqlg.csv",
    expects: ["amp", "l_ground", "l_squeezed", "ts_ground", "ts_squeezed", "packet_ratio_gain"],
    title: "Squeezed input (r = 0.9) vs ground state",
    xLabel: "|alpha|",
    yLabel: "L",
  },
};
