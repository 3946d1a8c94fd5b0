//! The flat key-value problem config format.
//!
//! ```text
//! # linear gH comparison
//! rhs = -x + [1,2]*t
//! t0 = 0
//! t_end = 3
//! step = 0.001
//! x0 = [0,1]
//! method = gh_branch
//!
//! [gh]
//! branch = i
//! branch = ii,i @ 1
//! ```
//!
//! One optional table per method: `[picard]` (`tol`, `max_iter`),
//! `[gh]` (repeated `branch = seg(,seg)* [@ switch(,switch)*]`), and
//! `[sweep]` (`density`). Unknown keys and sections are rejected.

use intervalkit::expr::{parse as parse_expr, ExprNode};
use intervalkit::ide::{GhBranchSpec, GhSegment, IdeProblem, Method};
use intervalkit::interval::Interval;

#[derive(Debug)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config line {}: {}", self.line, self.message)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        line,
        message: message.into(),
    })
}

#[derive(Default)]
struct RawConfig {
    rhs: Option<(usize, String)>,
    t0: Option<f64>,
    t_end: Option<f64>,
    step: Option<f64>,
    x0: Option<(usize, String)>,
    method: Option<(usize, String)>,
    picard_tol: Option<f64>,
    picard_max_iter: Option<usize>,
    sweep_density: Option<usize>,
    branches: Vec<(usize, String)>,
}

/// Parses config text into a ready-to-solve problem.
pub fn parse_config(text: &str) -> Result<IdeProblem, ConfigError> {
    let mut raw = RawConfig::default();
    let mut section: Option<String> = None;

    for (idx, line_raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match line_raw.find('#') {
            Some(p) => &line_raw[..p],
            None => line_raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return err(lineno, "unterminated section header");
            };
            let name = name.trim();
            if !matches!(name, "picard" | "gh" | "sweep") {
                return err(lineno, format!("unknown section `{name}`"));
            }
            section = Some(name.to_string());
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(lineno, "expected `key = value`");
        };
        let key = key.trim();
        let value = value.trim().to_string();
        match (section.as_deref(), key) {
            (None, "rhs") => raw.rhs = Some((lineno, value)),
            (None, "t0") => raw.t0 = Some(parse_real(lineno, &value)?),
            (None, "t_end") => raw.t_end = Some(parse_real(lineno, &value)?),
            (None, "step") => raw.step = Some(parse_real(lineno, &value)?),
            (None, "x0") => raw.x0 = Some((lineno, value)),
            (None, "method") => raw.method = Some((lineno, value)),
            (Some("picard"), "tol") => raw.picard_tol = Some(parse_real(lineno, &value)?),
            (Some("picard"), "max_iter") => {
                raw.picard_max_iter = Some(parse_count(lineno, &value)?)
            }
            (Some("sweep"), "density") => raw.sweep_density = Some(parse_count(lineno, &value)?),
            (Some("gh"), "branch") => raw.branches.push((lineno, value)),
            (sec, key) => {
                let place = sec.map_or("top level".to_string(), |s| format!("[{s}]"));
                return err(lineno, format!("unknown key `{key}` in {place}"));
            }
        }
    }

    let Some((rhs_line, rhs_text)) = raw.rhs else {
        return err(0, "missing required key `rhs`");
    };
    let rhs = match parse_expr(&rhs_text) {
        Ok(e) => e,
        Err(e) => return err(rhs_line, format!("rhs: {e}")),
    };
    let Some(t0) = raw.t0 else {
        return err(0, "missing required key `t0`");
    };
    let Some(t_end) = raw.t_end else {
        return err(0, "missing required key `t_end`");
    };
    let Some((x0_line, x0_text)) = raw.x0 else {
        return err(0, "missing required key `x0`");
    };
    let x0 = parse_interval_literal(&x0_text).map_err(|m| ConfigError {
        line: x0_line,
        message: format!("x0: {m}"),
    })?;

    let method = match raw.method {
        None => Method::Rk4,
        Some((line, name)) => match name.as_str() {
            "rk4" => Method::Rk4,
            "picard" => Method::Picard,
            "gh_branch" => Method::GhBranch,
            "param_sweep" => Method::ParamSweep,
            other => return err(line, format!("unknown method `{other}`")),
        },
    };

    let mut gh_branches = Vec::new();
    for (line, spec) in &raw.branches {
        gh_branches.push(parse_branch(*line, spec)?);
    }

    let problem = IdeProblem {
        rhs,
        t0,
        t_end,
        x0,
        method,
        step: raw.step.unwrap_or(1e-3),
        picard_tol: raw.picard_tol.unwrap_or(1e-6),
        picard_max_iter: raw.picard_max_iter.unwrap_or(50),
        sweep_density: raw.sweep_density.unwrap_or(9),
        gh_branches,
    };
    if let Err(e) = problem.validate() {
        return err(0, e.to_string());
    }
    Ok(problem)
}

/// Parses `[l,r]` or `<c;w>` text into a constant interval.
pub fn parse_interval_literal(text: &str) -> Result<Interval, String> {
    match parse_expr(text) {
        Ok(ExprNode::IntervalLit { value, .. }) => Ok(value),
        Ok(_) => Err(format!("`{text}` is not a constant interval literal")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_real(line: usize, s: &str) -> Result<f64, ConfigError> {
    s.parse::<f64>()
        .map_err(|_| ConfigError {
            line,
            message: format!("expected a real number, got `{s}`"),
        })
        .and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                err(line, format!("value `{s}` is not finite"))
            }
        })
}

fn parse_count(line: usize, s: &str) -> Result<usize, ConfigError> {
    s.parse::<usize>().map_err(|_| ConfigError {
        line,
        message: format!("expected a nonnegative integer, got `{s}`"),
    })
}

/// `seg(,seg)* [@ switch(,switch)*]` with segments `i` / `ii`.
fn parse_branch(line: usize, spec: &str) -> Result<GhBranchSpec, ConfigError> {
    let (seg_part, switch_part) = match spec.split_once('@') {
        Some((s, w)) => (s.trim(), Some(w.trim())),
        None => (spec.trim(), None),
    };
    let mut segments = Vec::new();
    for tok in seg_part.split(',') {
        segments.push(match tok.trim() {
            "i" => GhSegment::TypeI,
            "ii" => GhSegment::TypeII,
            other => return err(line, format!("unknown segment type `{other}` (use i or ii)")),
        });
    }
    let mut switches = Vec::new();
    if let Some(sw) = switch_part {
        for tok in sw.split(',') {
            switches.push(parse_real(line, tok.trim())?);
        }
    }
    Ok(GhBranchSpec::new(switches, segments))
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
# demo problem
rhs = [1,2]*t/(1+x^2)
t0 = 0
t_end = 4
step = 0.002
x0 = [-1,1]
method = picard

[picard]
tol = 1e-7
max_iter = 60
";

    #[test]
    fn parses_a_full_config() {
        let p = parse_config(GOOD).unwrap();
        assert_eq!(p.method, Method::Picard);
        assert_eq!(p.step, 0.002);
        assert_eq!(p.picard_tol, 1e-7);
        assert_eq!(p.picard_max_iter, 60);
        let (lo, hi) = p.x0.to_endpoints();
        assert!((lo + 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_unknown_keys() {
        let bad = format!("{GOOD}\nbogus = 1\n");
        let e = parse_config(&bad).unwrap_err();
        assert!(e.message.contains("unknown key"));
    }

    #[test]
    fn parses_gh_branches() {
        let text = "\
rhs = -x + [1,2]*t
t0 = 0
t_end = 3
x0 = [0,1]
method = gh_branch

[gh]
branch = i
branch = ii,i @ 1
";
        let p = parse_config(text).unwrap();
        assert_eq!(p.gh_branches.len(), 2);
        assert_eq!(p.gh_branches[1].switches, vec![1.0]);
        assert_eq!(
            p.gh_branches[1].segments,
            vec![GhSegment::TypeII, GhSegment::TypeI]
        );
    }

    #[test]
    fn rejects_degenerate_x0() {
        let text = "rhs = x\nt0 = 0\nt_end = 1\nx0 = [2,2]\n";
        assert!(parse_config(text).is_err());
    }
}
