use std::fmt::Write;

use super::Analysis;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

/// Entropy (black), `|C|²` (gray) and its envelope (red dashed) against time.
pub fn render_svg(a: &Analysis) -> String {
    let t = a.trajectory.times();
    let entropy: Vec<f64> = a.trajectory.samples().iter().map(|s| s.entropy_bits).collect();
    let c_sq: Vec<f64> = a.trajectory.samples().iter().map(|s| s.concurrence_sq).collect();
    let y_max = entropy.iter().copied().fold(1.0, f64::max);
    let (t0, t1) = (t[0], t[t.len() - 1]);

    let x = |v: f64| MARGIN + (v - t0) / (t1 - t0) * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - v / y_max * (HEIGHT - 2.0 * MARGIN);
    let line = |ys: &[f64], style: &str| {
        let mut pts = String::new();
        for (ti, yi) in t.iter().zip(ys) {
            let _ = write!(pts, "{:.2},{:.2} ", x(*ti), y(*yi));
        }
        format!("<polyline fill=\"none\" {style} points=\"{}\"/>\n", pts.trim_end())
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<path d=\"M{m} {m} V{b} H{r}\" stroke=\"black\" fill=\"none\"/>",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    out += &line(&c_sq, "stroke=\"#999999\" stroke-width=\"0.5\"");
    out += &line(&a.envelope.values, "stroke=\"#cc0000\" stroke-dasharray=\"4 2\"");
    out += &line(&entropy, "stroke=\"black\" stroke-width=\"1.5\"");
    let _ = writeln!(
        out,
        "<text x=\"{MARGIN}\" y=\"{}\" font-size=\"12\">t = {t0:.3e} .. {t1:.3e} s, y max = {y_max:.3}</text>",
        MARGIN - 10.0
    );
    out += "</svg>\n";
    out
}
