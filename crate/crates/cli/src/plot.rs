use knotconc::seifert::Arc;
use num_traits::ToPrimitive;

/// Arc table with angles as rational multiples of `pi` (a full turn is `2`).
pub fn csv_table(arcs: &[Arc]) -> String {
    let mut out = String::from("theta_start_rational_multiple_of_pi,theta_end,sigma\n");
    for a in arcs {
        out.push_str(&format!("{},{},{}\n", a.start * 2, a.end * 2, a.value));
    }
    out
}

const W: f64 = 640.0;
const H: f64 = 320.0;
const PAD: f64 = 40.0;

/// Step plot of the signature on `[0, pi]`.
pub fn svg(arcs: &[Arc], title: &str) -> String {
    let top = arcs.iter().map(|a| a.value.abs()).max().unwrap_or(0).max(1) as f64;
    let x = |t: f64| PAD + (W - 2.0 * PAD) * t / 0.5;
    let y = |v: i64| H / 2.0 - (H / 2.0 - PAD) * v as f64 / top;
    let mut path = String::new();
    for (i, a) in arcs.iter().enumerate() {
        let (x0, x1, yv) = (
            x(a.start.to_f64().unwrap()),
            x(a.end.to_f64().unwrap()),
            y(a.value),
        );
        path.push_str(&format!(
            "{}{x0:.2},{yv:.2} L{x1:.2},{yv:.2} ",
            if i == 0 { "M" } else { "L" }
        ));
    }
    let title = title
        .replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;");
    format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">
<title>{title}</title>
<line x1="{PAD}" y1="{mid}" x2="{xe}" y2="{mid}" stroke="#999"/>
<text x="{PAD}" y="{lab}" font-size="12">0</text>
<text x="{xe}" y="{lab}" font-size="12" text-anchor="end">pi</text>
<text x="4" y="{yt}" font-size="12">{top}</text>
<text x="4" y="{yb}" font-size="12">-{top}</text>
<path d="{path}" fill="none" stroke="#1f5fa8" stroke-width="2"/>
</svg>
"##,
        mid = H / 2.0,
        xe = W - PAD,
        lab = H - 10.0,
        yt = PAD + 4.0,
        yb = H - PAD + 4.0,
        path = path.trim_end(),
    )
}
