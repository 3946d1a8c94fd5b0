//! Minimal SVG line-plot writer: endpoint polylines per trajectory, axes
//! with extreme tick labels, and a legend. Diagnostic output, not a
//! plotting library.

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 600.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

pub struct Series {
    pub label: String,
    pub t: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

pub fn render(series: &[Series]) -> String {
    let mut t_min = f64::INFINITY;
    let mut t_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &t in &s.t {
            t_min = t_min.min(t);
            t_max = t_max.max(t);
        }
        for v in s.lo.iter().chain(&s.hi) {
            y_min = y_min.min(*v);
            y_max = y_max.max(*v);
        }
    }
    if t_min >= t_max {
        t_max = t_min + 1.0;
    }
    if y_min >= y_max {
        y_max = y_min + 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    let px = |t: f64| MARGIN_L + (t - t_min) / (t_max - t_min) * (WIDTH - MARGIN_L - MARGIN_R);
    let py = |y: f64| HEIGHT - MARGIN_B - (y - y_min) / (y_max - y_min) * (HEIGHT - MARGIN_T - MARGIN_B);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes
    out.push_str(&format!(
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        MARGIN_L,
        HEIGHT - MARGIN_B,
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B
    ));
    out.push_str(&format!(
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        MARGIN_L, MARGIN_T, MARGIN_L,
        HEIGHT - MARGIN_B
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\">{:.4}</text>\n",
        MARGIN_L - 4.0,
        HEIGHT - MARGIN_B + 16.0,
        t_min
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>\n",
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B + 16.0,
        t_max
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>\n",
        MARGIN_L - 6.0,
        HEIGHT - MARGIN_B,
        y_min + pad
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>\n",
        MARGIN_L - 6.0,
        MARGIN_T + 10.0,
        y_max - pad
    ));

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for (vals, dash) in [(&s.lo, ""), (&s.hi, " stroke-dasharray=\"6 3\"")] {
            let pts: Vec<String> = s
                .t
                .iter()
                .zip(vals.iter())
                .map(|(&t, &y)| format!("{:.2},{:.2}", px(t), py(y)))
                .collect();
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.4\"{dash} points=\"{}\"/>\n",
                pts.join(" ")
            ));
        }
        // legend entry
        let ly = MARGIN_T + 16.0 * (i as f64 + 1.0);
        out.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            WIDTH - 200.0,
            ly - 4.0,
            WIDTH - 170.0,
            ly - 4.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\">{}</text>\n",
            WIDTH - 164.0,
            ly,
            xml_escape(&s.label)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
