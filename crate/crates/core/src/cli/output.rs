//! CSV and SVG writers. Reals are printed with 17 significant digits, so
//! every `f64` round-trips.

use std::fmt::Write as _;

use crate::multifractal::{PressureCurve, SpectrumCurve};
use crate::returnwords::FrequencyTable;

/// `d.dddddddddddddddde±x`: 17 significant digits.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn pressure_csv(curve: &PressureCurve) -> String {
    let mut s = String::from("beta,psi,dpsi\n");
    for p in &curve.samples {
        let _ = writeln!(s, "{},{},{}", real(p.beta), real(p.psi), real(p.dpsi));
    }
    s
}

pub fn spectrum_csv(curve: &SpectrumCurve) -> String {
    let mut s = String::from("alpha,dim\n");
    for p in &curve.samples {
        let _ = writeln!(s, "{},{}", real(p.alpha), real(p.dim));
    }
    s
}

/// `word,F` rows, with `ρ₀` first under the key `rho0`.
pub fn frequency_csv(table: &FrequencyTable) -> String {
    let mut s = String::from("word,F\n");
    let _ = writeln!(s, "rho0,{}", real(table.rho0));
    for (w, f) in &table.exact {
        let _ = writeln!(s, "{w},{}", real(*f));
    }
    s
}

const PANEL_W: f64 = 400.0;
const PANEL_H: f64 = 300.0;
const MARGIN: f64 = 50.0;

/// 1, 2 or 5 times a power of ten, giving about five ticks.
fn tick_step(span: f64) -> f64 {
    if span <= 0.0 || !span.is_finite() {
        return 1.0;
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let r = raw / mag;
    let m = if r < 1.5 {
        1.0
    } else if r < 3.5 {
        2.0
    } else if r < 7.5 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn label(x: f64, step: f64) -> String {
    let digits = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{x:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn bounds(points: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
        b = (b.0.min(x), b.1.max(x), b.2.min(y), b.3.max(y));
    }
    if b.0 > b.1 {
        return (0.0, 1.0, 0.0, 1.0);
    }
    if b.1 - b.0 < 1e-12 {
        b.0 -= 0.5;
        b.1 += 0.5;
    }
    if b.3 - b.2 < 1e-12 {
        b.2 -= 0.5;
        b.3 += 0.5;
    }
    b
}

fn panel(svg: &mut String, dx: f64, points: &[(f64, f64)]) {
    let (x0, x1, y0, y1) = bounds(points);
    let px = |x: f64| dx + MARGIN + (x - x0) / (x1 - x0) * (PANEL_W - 2.0 * MARGIN);
    let py = |y: f64| PANEL_H - MARGIN - (y - y0) / (y1 - y0) * (PANEL_H - 2.0 * MARGIN);
    let (l, r, t, b) = (px(x0), px(x1), py(y1), py(y0));
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="black" points="{l:.3},{t:.3} {l:.3},{b:.3} {r:.3},{b:.3}"/>"#
    );
    let sx = tick_step(x1 - x0);
    let mut k = (x0 / sx).ceil() as i64;
    while k as f64 * sx <= x1 + 1e-9 * sx {
        let x = k as f64 * sx;
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="black" points="{0:.3},{1:.3} {0:.3},{2:.3}"/>"#,
            px(x),
            b,
            b + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" font-size="10" text-anchor="middle">{}</text>"#,
            px(x),
            b + 17.0,
            label(x, sx)
        );
        k += 1;
    }
    let sy = tick_step(y1 - y0);
    let mut k = (y0 / sy).ceil() as i64;
    while k as f64 * sy <= y1 + 1e-9 * sy {
        let y = k as f64 * sy;
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="black" points="{0:.3},{1:.3} {2:.3},{1:.3}"/>"#,
            l - 5.0,
            py(y),
            l
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" font-size="10" text-anchor="end">{}</text>"#,
            l - 7.0,
            py(y) + 3.0,
            label(y, sy)
        );
        k += 1;
    }
    let mut line = String::new();
    for &(x, y) in points.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
        let _ = write!(line, "{:.3},{:.3} ", px(x), py(y));
    }
    let _ = writeln!(svg, r#"<polyline fill="none" stroke="steelblue" points="{}"/>"#, line.trim_end());
}

/// Two panels side by side: `ψ` against `β`, and `dim` against `α`.
pub fn curves_svg(pressure: &PressureCurve, spectrum: &SpectrumCurve) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        2.0 * PANEL_W,
        PANEL_H,
        2.0 * PANEL_W,
        PANEL_H
    );
    let psi: Vec<(f64, f64)> = pressure.samples.iter().map(|p| (p.beta, p.psi)).collect();
    let dim: Vec<(f64, f64)> = spectrum.samples.iter().map(|p| (p.alpha, p.dim)).collect();
    panel(&mut svg, 0.0, &psi);
    panel(&mut svg, PANEL_W, &dim);
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multifractal::{PressureSample, SpectrumSample};
    use crate::returnwords::FrequencyMethod;

    #[test]
    fn reals_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            let s = real(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
        assert_eq!(real(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn csv_headers() {
        let curve = PressureCurve {
            samples: vec![PressureSample { beta: 0.0, psi: 2f64.ln(), dpsi: 0.25 }],
            table: FrequencyTable { rho0: 1.0, exact: Default::default(), method: FrequencyMethod::Empirical },
            limits: (0.0, 1.0),
        };
        let p = pressure_csv(&curve);
        assert!(p.starts_with("beta,psi,dpsi\n0.0000000000000000e0,6.9314718055994529e-1,2.5000000000000000e-1\n"));
        let sp = SpectrumCurve { samples: vec![SpectrumSample { alpha: 0.25, dim: 1.0 }], support: (0.0, 1.0) };
        assert!(spectrum_csv(&sp).starts_with("alpha,dim\n"));
        assert_eq!(frequency_csv(&curve.table), "word,F\nrho0,1.0000000000000000e0\n");
    }

    #[test]
    fn svg_is_polylines_and_numeric_labels() {
        let curve = PressureCurve {
            samples: (0..50)
                .map(|k| {
                    let b = k as f64 / 10.0 - 2.5;
                    PressureSample { beta: b, psi: (1.0 + b.exp()).ln(), dpsi: 1.0 / (1.0 + (-b).exp()) }
                })
                .collect(),
            table: FrequencyTable { rho0: 1.0, exact: Default::default(), method: FrequencyMethod::Empirical },
            limits: (0.0, 1.0),
        };
        let sp = SpectrumCurve {
            samples: curve.samples.iter().map(|p| SpectrumSample { alpha: p.dpsi, dim: p.psi - p.beta * p.dpsi }).collect(),
            support: (0.0, 1.0),
        };
        let svg = curves_svg(&curve, &sp);
        assert_eq!(svg, curves_svg(&curve, &sp));
        for line in svg.lines().skip(1) {
            if line == "</svg>" {
                continue;
            }
            if let Some(rest) = line.strip_prefix("<text") {
                let inner = rest.split('>').nth(1).unwrap().split('<').next().unwrap();
                assert!(inner.parse::<f64>().is_ok(), "{inner}");
            } else {
                assert!(line.starts_with("<polyline"), "{line}");
            }
        }
    }
}
