//! Plain-text table rendering with width-capped representative strings.

use std::fmt::Write as _;

use crate::report::{BasisJson, HomologyJson, VerifyJson};

/// Cap a string at `width` characters, marking the cut explicitly.
pub fn truncate(s: &str, width: usize) -> String {
    if s.len() <= width {
        return s.to_string();
    }
    let mut out: String = s.chars().take(width.saturating_sub(3)).collect();
    out.push_str("...");
    out
}

pub fn homology_table(j: &HomologyJson, rep_width: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "space: {}  operator: {}  method: {}  max_degree: {}  valid_through: {}",
        j.space, j.operator, j.method, j.max_degree, j.valid_through
    );
    let compare = j.all_match.is_some();
    if compare {
        let _ = writeln!(out, "{:>4} {:>6} {:>6} {:>6} {:>6} {:>7} {:>6}  reps", "d", "basis", "ker", "im", "h", "basis#", "match");
    } else {
        let _ = writeln!(out, "{:>4} {:>6} {:>6} {:>6} {:>6}  reps", "d", "basis", "ker", "im", "h");
    }
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".to_string());
    for s in &j.degrees {
        let reps = truncate(&s.reps.join("; "), rep_width);
        if compare {
            let _ = writeln!(
                out,
                "{:>4} {:>6} {:>6} {:>6} {:>6} {:>7} {:>6}  {}",
                s.d,
                opt(s.basis),
                opt(s.ker),
                opt(s.im),
                s.h,
                opt(s.count_from_basis),
                s.matches.map(|b| if b { "yes" } else { "NO" }).unwrap_or("-"),
                reps
            );
        } else {
            let _ = writeln!(
                out,
                "{:>4} {:>6} {:>6} {:>6} {:>6}  {}",
                s.d,
                opt(s.basis),
                opt(s.ker),
                opt(s.im),
                s.h,
                reps
            );
        }
    }
    if let Some(all) = j.all_match {
        let _ = writeln!(out, "verdict: {}", if all { "MATCH" } else { "MISMATCH" });
    }
    out
}

pub fn basis_table(j: &BasisJson, rep_width: usize) -> String {
    let mut out = String::new();
    if let Some(js) = &j.j {
        let _ = writeln!(out, "J: {:?}  ({} elements)", js, j.elements.len());
    }
    if let Some(space) = &j.space {
        let _ = writeln!(
            out,
            "space: {}  max_degree: {}  ({} elements)",
            space,
            j.max_degree.unwrap_or(0),
            j.elements.len()
        );
    }
    let _ = writeln!(out, "{:>4} {:>3}  {:<32}  zeta", "deg", "l", "tx");
    for e in &j.elements {
        let _ = writeln!(
            out,
            "{:>4} {:>3}  {:<32}  {}",
            e.degree,
            e.reduced_length,
            truncate(&e.tx, 32),
            truncate(&e.zeta, rep_width)
        );
    }
    if let Some(counts) = &j.counts_per_degree {
        let nonzero: Vec<String> = counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(d, c)| format!("{}:{}", d, c))
            .collect();
        let _ = writeln!(out, "counts (degree:count): {}", nonzero.join(" "));
    }
    out
}

pub fn verify_table(j: &VerifyJson) -> String {
    let mut out = String::new();
    for c in &j.checks {
        let _ = writeln!(
            out,
            "{} {} - {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let passed = j.checks.iter().filter(|c| c.pass).count();
    let _ = writeln!(
        out,
        "suite {}: {} ({}/{} checks, seed {})",
        j.suite,
        if j.pass { "PASS" } else { "FAIL" },
        passed,
        j.checks.len(),
        j.seed
    );
    out
}
