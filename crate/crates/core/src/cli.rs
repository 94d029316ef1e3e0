//! Command implementations behind the `idoneal` binary.
//!
//! Each command returns its output text together with an exit code:
//! 0 for a complete answer, 2 when a search budget ran out, 3 for bad input.

use crate::classifier::{classify_idoneal, classify_slender, ClassifyOptions};
use crate::enriques::{covers_enriques, enumerate_exceptional, Route, Verdict};
use crate::error::{Error, Result};
use crate::genus::{genus_of, parse_genus, GenusSymbol};
use crate::lattice::{format_shorthand, parse_lattice};
use crate::mass::{mass, p_mass};
use crate::representatives::{representatives_cached, RepOptions};
use crate::arith;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "records" => Ok(Format::Records),
            _ => Err(Error::InvalidArgument(format!("unknown format `{s}` (text or records)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision: u32,
    pub budget: u64,
    pub bound2: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let o = ClassifyOptions::default();
        RunConfig { precision: o.precision, budget: o.budget, bound2: o.bound2, cache_dir: None, format: Format::Text, jobs: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision == 0 || self.budget == 0 || self.bound2 == 0 {
            return Err(Error::InvalidArgument("precision, budget and bound2 must be positive".into()));
        }
        if let Some(d) = &self.cache_dir {
            std::fs::create_dir_all(d).map_err(|e| Error::Io(format!("{}: {e}", d.display())))?;
        }
        Ok(())
    }

    pub fn cache_file(&self) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join("representatives.txt"))
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            precision: self.precision,
            max_precision: self.precision.max(ClassifyOptions::default().max_precision),
            budget: self.budget,
            bound2: self.bound2,
            cache: self.cache_file(),
        }
    }
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

/// A genus symbol (anything containing `_(`) or a lattice expression.
pub fn parse_genus_or_lattice(input: &str) -> Result<GenusSymbol> {
    if input.contains("_(") {
        parse_genus(input)
    } else {
        Ok(genus_of(&parse_lattice(input)?))
    }
}

pub fn cmd_mass(input: &str, cfg: &RunConfig) -> Result<Output> {
    let g = parse_genus_or_lattice(input)?;
    if !g.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let m = mass(&g);
    let mut out = String::new();
    match cfg.format {
        Format::Records => {
            let _ = writeln!(out, "{}\t{}\t{}", g.canonical(), m.numer(), m.denom());
        }
        Format::Text => {
            let _ = writeln!(out, "genus\t{}", g.canonical());
            let _ = writeln!(out, "mass\t{m}");
            let _ = writeln!(out, "p\tdiagonal\tcross^2\ttype");
            for p in arith::prime_divisors((2 * g.det).unsigned_abs()) {
                let pm = p_mass(&g, p);
                let _ = writeln!(out, "{p}\t{}\t{}\t2^{}", pm.diagonal, pm.cross_squared(), pm.type_exp);
            }
        }
    }
    Ok(Output::ok(out))
}

pub fn cmd_idoneal(rank: usize, cfg: &RunConfig) -> Result<Output> {
    if rank == 0 {
        return Err(Error::InvalidArgument("rank must be at least 1".into()));
    }
    let report = classify_idoneal(rank, &cfg.classify_options())?;
    let mut out = String::new();
    let _ = writeln!(out, "# rank {rank}: {} idoneal genera", report.genera.len());
    out.push_str(&report.to_ancillary());
    let code = if report.is_complete() { EXIT_OK } else { EXIT_BUDGET };
    Ok(Output { text: out, code })
}

pub fn cmd_slender(n: usize, cfg: &RunConfig) -> Result<Output> {
    if n < 2 {
        return Err(Error::InvalidArgument("rank must be at least 2".into()));
    }
    let report = classify_slender(n, &cfg.classify_options());
    let dmax = report.max_det().map_or("-".to_string(), |d| d.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "S={} dmax={dmax}", report.count());
    if cfg.format == Format::Records {
        for g in &report.genera {
            let _ = writeln!(out, "{n}\t{}\t{}", g.canonical(), g.det);
        }
    }
    Ok(Output::ok(out))
}

pub fn cmd_exceptional(lambda: usize, cfg: &RunConfig) -> Result<Output> {
    if !(2..=12).contains(&lambda) {
        return Ok(Output::ok(String::new()));
    }
    let report = classify_idoneal(12 - lambda, &cfg.classify_options())?;
    let gs: Vec<GenusSymbol> = report.genera.iter().map(|g| g.genus.clone()).collect();
    let recs = enumerate_exceptional(lambda, &gs)?;
    let mut out = String::new();
    if let Some(c) = &report.conditional {
        let _ = writeln!(out, "# {c}");
    }
    for r in &recs {
        match cfg.format {
            Format::Text => {
                let _ = writeln!(out, "{}", format_shorthand(&r.half));
            }
            Format::Records => {
                let _ = writeln!(out, "{}\t{}\t{}\t{}", lambda, r.row.name(), r.idoneal.canonical(), format_shorthand(&r.half));
            }
        }
    }
    let code = if report.is_complete() { EXIT_OK } else { EXIT_BUDGET };
    Ok(Output { text: out, code })
}

pub fn cmd_check(input: &str, cfg: &RunConfig) -> Result<Output> {
    let t = parse_lattice(input)?;
    let report = covers_enriques(&t, &cfg.classify_options())?;
    let code = if report.verdict == Verdict::Undecided { EXIT_BUDGET } else { EXIT_OK };
    let text = match cfg.format {
        Format::Text => report.to_string(),
        Format::Records => {
            let verdict = match report.verdict {
                Verdict::Covers => "covers",
                Verdict::DoesNotCover => "does-not-cover",
                Verdict::Undecided => "undecided",
            };
            let route = match &report.route {
                Route::Embedding(r) => format!("row {r}"),
                Route::Exceptional(_) => "exceptional".into(),
                Route::NoRow => "no-row".into(),
                Route::BudgetExhausted(_) => "budget".into(),
            };
            format!(
                "{}\t{verdict}\t{}\t{route}\t{}\n",
                format_shorthand(&t),
                report.condition.unwrap_or("-"),
                report.embedding.form
            )
        }
    };
    Ok(Output { text, code })
}

pub fn cmd_reps(input: &str, cfg: &RunConfig) -> Result<Output> {
    let g = parse_genus_or_lattice(input)?;
    let opts = RepOptions { budget: cfg.budget, ..RepOptions::default() };
    let set = representatives_cached(&g, &opts, cfg.cache_file().as_deref())?;
    let mut out = String::new();
    let _ = writeln!(out, "# {} classes, mass {}, accumulated {}", set.class_number(), set.mass, set.accumulated);
    for (l, a) in set.representatives.iter().zip(&set.aut_orders) {
        let _ = writeln!(out, "{}\t{a}", format_shorthand(l));
    }
    let code = if set.is_closed() { EXIT_OK } else { EXIT_BUDGET };
    Ok(Output { text: out, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_commands() {
        let cfg = RunConfig::default();
        assert!(cmd_mass("[1]", &cfg).unwrap().text.contains("mass\t1/2"));
        assert!(cmd_mass("E8(-1)", &cfg).unwrap().text.contains("1/696729600"));
        assert_eq!(cmd_slender(16, &cfg).unwrap().text.trim(), "S=1 dmax=1");
        let out = cmd_exceptional(11, &cfg).unwrap();
        assert_eq!(out.text.lines().count(), 1);
        let out = cmd_check("Lminus", &cfg).unwrap();
        assert!(out.text.starts_with("covers (xii)"));
        assert!(parse_genus_or_lattice("[1,0,2](").is_err());
    }
}
