//! Verification sweeps over families of moduli, emitted as JSON lines in
//! ascending `n` regardless of which worker finishes first.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{analyze, AnalysisReport, Settings};
use crate::zmod::{is_prime, primes_up_to};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormFilter {
    P3,
    P2q,
    General,
}

impl FromStr for FormFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p3" => Ok(FormFilter::P3),
            "p2q" => Ok(FormFilter::P2q),
            "general" => Ok(FormFilter::General),
            other => Err(format!(
                "unknown form `{other}` (expected p3, p2q or general)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub form: FormFilter,
    pub p_max: u64,
    /// Defaults to `p_max`.
    pub q_max: Option<u64>,
    /// Required for `general`.
    pub n_cap: Option<u64>,
    pub settings: Settings,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.p_max == 0 || self.q_max == Some(0) {
            return bad("prime bounds must be positive".into());
        }
        let smallest = match self.form {
            FormFilter::P3 => 8,
            FormFilter::P2q => 12,
            FormFilter::General => 4,
        };
        match self.n_cap {
            Some(cap) if cap < smallest => bad(format!(
                "n cap {cap} is below the smallest admissible modulus {smallest}"
            )),
            None if self.form == FormFilter::General => {
                bad("the general form needs an n cap".into())
            }
            _ => Ok(()),
        }
    }

    /// Moduli covered by the sweep, ascending.
    pub fn moduli(&self) -> Result<Vec<u64>> {
        self.validate()?;
        let cap = self.n_cap.unwrap_or(u64::MAX);
        let mut out: Vec<u64> = match self.form {
            FormFilter::P3 => primes_up_to(self.p_max)
                .into_iter()
                .filter_map(|p| p.checked_mul(p)?.checked_mul(p))
                .collect(),
            FormFilter::P2q => {
                let ps = primes_up_to(self.p_max);
                let qs = primes_up_to(self.q_max.unwrap_or(self.p_max));
                let mut v = Vec::new();
                for &p in &ps {
                    for &q in &qs {
                        if p != q {
                            if let Some(n) = p.checked_mul(p).and_then(|s| s.checked_mul(q)) {
                                v.push(n);
                            }
                        }
                    }
                }
                v
            }
            FormFilter::General => (4..=cap).filter(|&n| !is_prime(n)).collect(),
        };
        out.retain(|&n| n <= cap);
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    #[serde(rename = "match")]
    pub matches: usize,
    #[serde(rename = "mismatch")]
    pub mismatches: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub records: usize,
    pub formulas: BTreeMap<&'static str, Tally>,
    pub unsound_moduli: Vec<u64>,
    pub ok: bool,
}

impl SweepSummary {
    fn absorb(&mut self, r: &AnalysisReport) {
        self.records += 1;
        for (id, v) in r.verdicts() {
            let t = self.formulas.entry(id).or_default();
            if v.is_match() {
                t.matches += 1;
            } else {
                t.mismatches += 1;
            }
        }
        if !r.is_sound() {
            self.unsound_moduli.push(r.n);
        }
    }
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a SweepSummary,
}

/// Analyze every modulus of `config` on `jobs` worker threads, writing one
/// JSON object per modulus and a final `{"summary": ...}` line to `out`.
///
/// An analysis error stops the sweep after all earlier records are written.
pub fn run_sweep<W: Write>(config: &SweepConfig, jobs: usize, out: &mut W) -> Result<SweepSummary> {
    let moduli = config.moduli()?;
    let jobs = jobs.clamp(1, moduli.len().max(1));
    let mut summary = SweepSummary::default();

    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, Result<(String, AnalysisReport)>)>();

    let outcome = std::thread::scope(|scope| -> Result<()> {
        for _ in 0..jobs {
            let tx = tx.clone();
            let (next, stop, moduli) = (&next, &stop, &moduli);
            let settings = config.settings;
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&n) = moduli.get(i) else { break };
                let result = analyze(n, &settings).and_then(|r| {
                    serde_json::to_string(&r)
                        .map(|line| (line, r))
                        .map_err(|e| Error::Io(e.to_string()))
                });
                if tx.send((i, result)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending: HashMap<usize, Result<(String, AnalysisReport)>> = HashMap::new();
        let mut written = 0;
        for (i, result) in rx.iter() {
            pending.insert(i, result);
            while let Some(result) = pending.remove(&written) {
                match result {
                    Ok((line, report)) => {
                        writeln!(out, "{line}")?;
                        summary.absorb(&report);
                        written += 1;
                    }
                    Err(e) => {
                        stop.store(true, Ordering::Relaxed);
                        return Err(e);
                    }
                }
            }
        }
        Ok(())
    });
    outcome?;

    summary.ok = summary.unsound_moduli.is_empty();
    let line = serde_json::to_string(&SummaryLine { summary: &summary })
        .map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{line}")?;
    out.flush()?;
    Ok(summary)
}
