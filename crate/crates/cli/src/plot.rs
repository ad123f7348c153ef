/// (column, panel title, swap x and y) for each panel.
fn panels(figure: u32) -> &'static [(&'static str, &'static str, bool)] {
    match figure {
        2 => &[("T_a", "(a) T^a", false), ("R_a", "(b) R^a", false), ("T_ba", "(c) T_b^a", true)],
        _ => &[("R_b", "(a) R^b", false), ("T_ab", "(b) T_a^b", false)],
    }
}

/// A matplotlib script drawing one colour-mapped 3D scatter per coefficient.
pub fn script(figure: u32, data: &str) -> String {
    let panels = panels(figure)
        .iter()
        .map(|(col, title, swap)| format!("    ({col:?}, {title:?}, {}),", if *swap { "True" } else { "False" }))
        .collect::<Vec<_>>()
        .join("\n");
    let script = format!("figure{figure}_plot.py");
    format!(
        r#"#!/usr/bin/env python3
# Renders {data}. Usage: python3 {script} [output.png]
import csv
import os
import sys

import matplotlib

if len(sys.argv) > 1:
    matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
PANELS = [
{panels}
]

with open(os.path.join(HERE, "{data}"), newline="") as f:
    rows = [r for r in csv.DictReader(f) if r["status"] == "ok"]

g_a = [float(r["g_a"]) for r in rows]
g_b = [float(r["g_b"]) for r in rows]
g_c = [float(r["g_c"]) for r in rows]

fig = plt.figure(figsize=(5 * len(PANELS), 4.5))
for i, (column, title, swap) in enumerate(PANELS, start=1):
    ax = fig.add_subplot(1, len(PANELS), i, projection="3d")
    values = [float(r[column]) for r in rows]
    x, y = (g_b, g_a) if swap else (g_a, g_b)
    points = ax.scatter(x, y, g_c, c=values, cmap="jet", vmin=0.0, vmax=max(values), s=4)
    ax.set_xlabel("g_b" if swap else "g_a")
    ax.set_ylabel("g_a" if swap else "g_b")
    ax.set_zlabel("g_c")
    ax.set_title(title)
    fig.colorbar(points, ax=ax, shrink=0.6, pad=0.12)

fig.tight_layout()
if len(sys.argv) > 1:
    fig.savefig(sys.argv[1], dpi=150)
else:
    plt.show()
"#
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panels_follow_the_dataset_columns() {
        let s = script(2, "figure2.csv");
        assert!(s.contains("(\"T_ba\", \"(c) T_b^a\", True)"));
        assert!(s.contains("figure2.csv"));
        let s = script(3, "figure3.csv");
        assert!(s.contains("\"T_ab\"") && !s.contains("\"T_a\","));
    }
}
