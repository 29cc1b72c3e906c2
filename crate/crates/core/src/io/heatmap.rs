//! Self-contained SVG heatmap of one CSV column over the scan grid.

use std::fmt::Write as _;
use std::path::Path;

use super::csv::{column_value, format_number};
use crate::scan::{LegMode, ScanRecord};
use crate::{Error, Result};

const PLOT: f64 = 480.0;
const LEFT: f64 = 80.0;
const TOP: f64 = 40.0;
const BAR_X: f64 = LEFT + PLOT + 30.0;
const BAR_W: f64 = 20.0;
const WIDTH: f64 = BAR_X + BAR_W + 110.0;
const HEIGHT: f64 = TOP + PLOT + 60.0;

/// Viridis sampled at nine evenly spaced points.
const VIRIDIS: [(u8, u8, u8); 9] = [
    (0x44, 0x01, 0x54),
    (0x47, 0x2d, 0x7b),
    (0x3b, 0x52, 0x8b),
    (0x2c, 0x72, 0x8e),
    (0x21, 0x91, 0x8c),
    (0x28, 0xae, 0x80),
    (0x5e, 0xc9, 0x62),
    (0xad, 0xdc, 0x30),
    (0xfd, 0xe7, 0x25),
];

/// Hex colour at position `t` in `[0, 1]`.
pub fn color_at(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (VIRIDIS.len() - 1) as f64;
    let k = (t.floor() as usize).min(VIRIDIS.len() - 2);
    let f = t - k as f64;
    let (a, b) = (VIRIDIS[k], VIRIDIS[k + 1]);
    let mix = |x: u8, y: u8| (x as f64 + (y as f64 - x as f64) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn unique_sorted(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders `column` of a complete rectangular grid. Cells are coloured
/// linearly from the column minimum (dark) to maximum (bright); cells of
/// failed points or with an empty value are hatched grey.
pub fn render_heatmap(records: &[ScanRecord], column: &str, mode: LegMode) -> Result<String> {
    if records.is_empty() {
        return Err(Error::Heatmap("no records".into()));
    }
    if records.iter().any(|r| !r.alpha.is_finite() || !r.delta.is_finite()) {
        return Err(Error::Heatmap("non-finite grid coordinate".into()));
    }
    let alphas = unique_sorted(records.iter().map(|r| r.alpha));
    let deltas = unique_sorted(records.iter().map(|r| r.delta));
    let (na, nd) = (alphas.len(), deltas.len());
    let mut grid: Vec<Option<&ScanRecord>> = vec![None; na * nd];
    for r in records {
        let i = alphas.binary_search_by(|a| a.total_cmp(&r.alpha)).unwrap();
        let j = deltas.binary_search_by(|d| d.total_cmp(&r.delta)).unwrap();
        if grid[j * na + i].replace(r).is_some() {
            return Err(Error::Heatmap(format!(
                "duplicate grid point alpha={} delta={}",
                r.alpha, r.delta
            )));
        }
    }
    let missing: Vec<(usize, usize)> = (0..nd)
        .flat_map(|j| (0..na).map(move |i| (j, i)))
        .filter(|&(j, i)| grid[j * na + i].is_none())
        .collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteGrid { missing });
    }
    let values: Vec<Option<f64>> = grid
        .iter()
        .map(|r| column_value(r.expect("grid complete"), column))
        .collect::<Result<_>>()?;
    let finite: Vec<f64> = values.iter().flatten().copied().filter(|v| v.is_finite()).collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let alpha_label = match mode {
        LegMode::AntiferroLegs => "α",
        LegMode::FerroLegs => "α′",
    };
    let cw = PLOT / na as f64;
    let ch = PLOT / nd as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    s.push_str("<defs>\n");
    s.push_str(r##"<pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><rect width="6" height="6" fill="#bbbbbb"/><line x1="0" y1="0" x2="0" y2="6" stroke="#777777" stroke-width="2"/></pattern>"##);
    s.push('\n');
    s.push_str(r#"<linearGradient id="colorbar" x1="0" y1="1" x2="0" y2="0">"#);
    for k in 0..VIRIDIS.len() {
        let t = k as f64 / (VIRIDIS.len() - 1) as f64;
        let _ = write!(s, r#"<stop offset="{t:.4}" stop-color="{}"/>"#, color_at(t));
    }
    s.push_str("</linearGradient>\n</defs>\n");
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + PLOT / 2.0,
        escape(column)
    );
    for j in 0..nd {
        for i in 0..na {
            let x = LEFT + i as f64 * cw;
            // delta grows upwards
            let y = TOP + (nd - 1 - j) as f64 * ch;
            let record = grid[j * na + i].expect("grid complete");
            let (class, fill) = match values[j * na + i] {
                Some(v) if v.is_finite() && !record.failed => {
                    let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };
                    ("cell", color_at(t))
                }
                _ if record.failed => ("cell failed", "url(#hatch)".to_string()),
                _ => ("cell missing", "url(#hatch)".to_string()),
            };
            let _ = writeln!(
                s,
                r#"<rect class="{class}" x="{x:.3}" y="{y:.3}" width="{cw:.3}" height="{ch:.3}" fill="{fill}"><title>{}={} Δ={} {}</title></rect>"#,
                alpha_label,
                format_number(record.alpha),
                format_number(record.delta),
                values[j * na + i].map(format_number).unwrap_or_else(|| "n/a".into())
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>"#
    );
    // axis ticks at the grid extremes
    let bottom = TOP + PLOT;
    let _ = writeln!(s, r#"<text x="{LEFT}" y="{:.1}" text-anchor="start">{}</text>"#, bottom + 18.0, format_number(alphas[0]));
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, LEFT + PLOT, bottom + 18.0, format_number(alphas[na - 1]));
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, LEFT - 6.0, bottom, format_number(deltas[0]));
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, LEFT - 6.0, TOP + 10.0, format_number(deltas[nd - 1]));
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="{:.1}" y="{:.1}" text-anchor="middle" font-size="16">{alpha_label}</text>"#,
        LEFT + PLOT / 2.0,
        bottom + 40.0
    );
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="{:.1}" y="{:.1}" text-anchor="middle" font-size="16" transform="rotate(-90 {:.1} {:.1})">Δ</text>"#,
        LEFT - 45.0,
        TOP + PLOT / 2.0,
        LEFT - 45.0,
        TOP + PLOT / 2.0
    );
    // legend
    let _ = writeln!(
        s,
        r#"<rect class="legend" x="{BAR_X}" y="{TOP}" width="{BAR_W}" height="{PLOT}" fill="url(#colorbar)" stroke="black"/>"#
    );
    let label_x = BAR_X + BAR_W + 6.0;
    if finite.is_empty() {
        let _ = writeln!(s, r#"<text class="legend-label" x="{label_x}" y="{:.1}">no data</text>"#, TOP + PLOT / 2.0);
    } else if hi > lo {
        let _ = writeln!(s, r#"<text class="legend-label" x="{label_x}" y="{:.1}">{}</text>"#, TOP + 10.0, format_number(hi));
        let _ = writeln!(s, r#"<text class="legend-label" x="{label_x}" y="{:.1}">{}</text>"#, bottom, format_number(lo));
    } else {
        let _ = writeln!(
            s,
            r#"<text class="legend-label" x="{label_x}" y="{:.1}">{} (constant)</text>"#,
            TOP + PLOT / 2.0,
            format_number(lo)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_heatmap(records: &[ScanRecord], column: &str, mode: LegMode, path: &Path) -> Result<()> {
    let svg = render_heatmap(records, column, mode)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(values: &[f64], na: usize) -> Vec<ScanRecord> {
        values
            .iter()
            .enumerate()
            .map(|(k, &v)| ScanRecord {
                alpha: (k % na) as f64,
                delta: (k / na) as f64,
                ggm: Some(v),
                ..Default::default()
            })
            .collect()
    }

    fn cells(svg: &str) -> Vec<&str> {
        svg.lines().filter(|l| l.contains(r#"class="cell"#)).collect()
    }

    #[test]
    fn endpoints_get_end_colours() {
        let svg = render_heatmap(&grid(&[0.0, 1.0, 0.5, 0.25], 2), "ggm", LegMode::AntiferroLegs).unwrap();
        let c = cells(&svg);
        assert_eq!(c.len(), 4);
        assert!(c[0].contains(r##"fill="#440154""##));
        assert!(c[1].contains(r##"fill="#fde725""##));
        assert!(svg.contains(">α<") && svg.contains(">Δ<"));
        assert!(svg.contains("linearGradient"));
        assert!(!svg.contains("href"));
    }

    #[test]
    fn constant_grid() {
        let svg = render_heatmap(&grid(&[0.3; 6], 3), "ggm", LegMode::FerroLegs).unwrap();
        let c = cells(&svg);
        let fill = |l: &str| l.split("fill=").nth(1).unwrap().split('>').next().unwrap().to_string();
        assert!(c.iter().all(|l| fill(l) == fill(c[0])));
        assert!(svg.contains("(constant)"));
        assert!(svg.contains(">α′<"));
    }

    #[test]
    fn failed_cell_is_hatched() {
        let mut g = grid(&[0.1, 0.2, 0.3, 0.4], 2);
        g[2].failed = true;
        let svg = render_heatmap(&g, "ggm", LegMode::AntiferroLegs).unwrap();
        assert_eq!(svg.matches(r#"class="cell failed""#).count(), 1);
        assert_eq!(svg.matches(r#"fill="url(#hatch)""#).count(), 1);
    }

    #[test]
    fn incomplete_grid_lists_missing() {
        let mut g = grid(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6], 3);
        g.remove(4);
        match render_heatmap(&g, "ggm", LegMode::AntiferroLegs) {
            Err(Error::IncompleteGrid { missing }) => assert_eq!(missing, vec![(1, 1)]),
            other => panic!("{other:?}"),
        }
        assert!(render_heatmap(&[], "ggm", LegMode::AntiferroLegs).is_err());
        assert!(render_heatmap(&grid(&[0.1], 1), "ggm_argmax_hex", LegMode::AntiferroLegs).is_err());
    }

    #[test]
    fn deterministic() {
        let g = grid(&[0.1, 0.7, 0.3, 0.4], 2);
        assert_eq!(
            render_heatmap(&g, "ggm", LegMode::AntiferroLegs).unwrap(),
            render_heatmap(&g, "ggm", LegMode::AntiferroLegs).unwrap()
        );
    }
}
