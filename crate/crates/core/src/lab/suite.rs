//! Runs every verifier over the registry and compares with what each entry
//! claims.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::registry::{registry, Entry};
use super::verify::*;
use super::{Expect, TheoremReport, Verdict};
use crate::alphabet::Word;
use crate::code::BifixCode;
use crate::enumerate::enumerate_s_maximal_bifix;
use crate::error::{Error, Result};
use crate::extension::{check_enumeration_identities, classify_set};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub horizon: usize,
    /// Longest word considered when enumerating S-maximal bifix codes.
    pub max_len: usize,
    pub max_degree: usize,
    /// `n` up to which `S ∩ A^n` is folded.
    pub uniform_up_to: usize,
    pub classify_up_to: usize,
    /// Length up to which return words are computed for every word.
    pub return_len: usize,
    /// Restrict to these registry names; all when empty.
    pub sets: Vec<String>,
    pub parallel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            horizon: 64,
            max_len: 6,
            max_degree: 4,
            uniform_up_to: 5,
            classify_up_to: 12,
            return_len: 2,
            sets: Vec::new(),
            parallel: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observed {
    Holds,
    Fails,
    /// Every check in the column was skipped.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Column {
    pub name: &'static str,
    pub observed: Observed,
    pub expected: Expect,
    pub checks: usize,
}

impl Column {
    fn new(name: &'static str, reports: &[&TheoremReport], expected: Expect) -> Self {
        let evaluated: Vec<bool> = reports.iter().filter_map(|r| r.holds).collect();
        let observed = if evaluated.is_empty() {
            Observed::Skipped
        } else if evaluated.iter().all(|&h| h) {
            Observed::Holds
        } else {
            Observed::Fails
        };
        Column { name, observed, expected, checks: evaluated.len() }
    }

    pub fn unexpected(&self) -> bool {
        matches!(
            (self.observed, self.expected),
            (Observed::Holds, Expect::Fails) | (Observed::Fails, Expect::Holds)
        )
    }

    fn cell(&self) -> String {
        let base = match self.observed {
            Observed::Holds => "pass",
            Observed::Fails => "fail",
            Observed::Skipped => "skip",
        };
        let mark = if self.unexpected() {
            "!"
        } else if self.expected == Expect::Unclaimed && self.observed != Observed::Skipped {
            "?"
        } else {
            ""
        };
        format!("{base}{mark}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SetRow {
    pub name: &'static str,
    pub description: &'static str,
    pub citation: &'static str,
    pub class: String,
    pub expected_class: &'static str,
    pub classified_up_to: usize,
    /// `k` when `p_n = kn + 1` over the stored lengths.
    pub affine: Option<i64>,
    pub expected_affine: Option<i64>,
    /// Least `n` such that every word of length at most 3 occurs in every
    /// word of length `n`; absent when no such `n` fits in the horizon.
    pub recurrence_window: Option<usize>,
    pub expected_uniformly_recurrent: bool,
    pub codes_checked: usize,
    pub columns: Vec<Column>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub rows: Vec<SetRow>,
    pub reports: Vec<TheoremReport>,
    pub unexpected: Vec<String>,
}

impl SuiteReport {
    pub fn skipped(&self) -> impl Iterator<Item = &TheoremReport> {
        self.reports.iter().filter(|r| matches!(r.verdict, Verdict::Skipped { .. }))
    }

    pub fn is_clean(&self) -> bool {
        self.unexpected.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<18} {:<9} {:<9} {:<6} {:<5} {:<6} {:<6} {:<6} {:<6}",
            "set", "class", "expected", "p_n", "codes", "CT", "RT", "BT", "BD"
        );
        for row in &self.rows {
            let affine = row.affine.map_or("-".to_string(), |k| if k == 1 { "n+1".to_string() } else { format!("{k}n+1") });
            let cells: Vec<String> = row.columns.iter().map(Column::cell).collect();
            let _ = writeln!(
                out,
                "{:<18} {:<9} {:<9} {:<6} {:<5} {:<6} {:<6} {:<6} {:<6}",
                row.name,
                row.class,
                row.expected_class,
                affine,
                row.codes_checked,
                cells.first().map_or("", String::as_str),
                cells.get(1).map_or("", String::as_str),
                cells.get(2).map_or("", String::as_str),
                cells.get(3).map_or("", String::as_str),
            );
        }
        let _ = writeln!(
            out,
            "\nCT cardinality, RT return words, BT finite index basis, BD bifix decoding; \
             `?` unclaimed, `!` unexpected"
        );
        let skipped: Vec<&TheoremReport> = self.skipped().collect();
        let _ = writeln!(
            out,
            "{} reports, {} skipped, {} unexpected",
            self.reports.len(),
            skipped.len(),
            self.unexpected.len()
        );
        for r in skipped {
            if let Verdict::Skipped { needed_horizon, reason } = &r.verdict {
                let _ = writeln!(out, "  skipped {} on {} [{}]: {reason}, needs horizon at least {needed_horizon}", r.theorem, r.set, r.inputs);
            }
        }
        for u in &self.unexpected {
            let _ = writeln!(out, "  UNEXPECTED {u}");
        }
        out
    }
}

fn codes_of(entry: &Entry, ctx: &SetContext, config: &SuiteConfig) -> Result<Vec<(String, BifixCode)>> {
    let mut seen: BTreeSet<Vec<Word>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |name: String, x: BifixCode, out: &mut Vec<(String, BifixCode)>| {
        if seen.insert(x.words().to_vec()) {
            out.push((name, x));
        }
    };
    for c in &entry.codes {
        push(c.name.to_string(), entry.code(ctx.s, c)?, &mut out);
    }
    for d in 1..=config.max_degree {
        match enumerate_s_maximal_bifix(ctx.s, d, config.max_len) {
            Ok(codes) => {
                for (i, x) in codes.into_iter().enumerate() {
                    push(format!("d{d}#{i}"), x, &mut out);
                }
            }
            Err(Error::HorizonInsufficient { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn run_entry(entry: &Entry, config: &SuiteConfig) -> Result<(SetRow, Vec<TheoremReport>)> {
    let s = entry.build(config.horizon)?;
    let up_to = config.classify_up_to.min(config.horizon.saturating_sub(2));
    let class = classify_set(&s, up_to)?;
    let ctx = SetContext { name: entry.name, s: &s, class: &class, uniformly_recurrent: entry.expected.uniformly_recurrent };
    let k = s.k();
    let profile = s.complexity_profile();
    let windows = s.uniform_recurrence_report(3.min(config.horizon.saturating_sub(1)))?;

    let mut reports = Vec::new();
    for n in 0..=up_to {
        let e = check_enumeration_identities(&s, n)?;
        let mut r = TheoremReport::new(
            "enumeration-identities",
            "b_n = Σ m(w) and s_n = Σ (r(w) − 1) over words of length n",
            entry.name,
            format!("n = {n}"),
        )
        .judge(true, e.holds());
        r.horizon_used = n + 2;
        reports.push(r);
    }

    let codes = codes_of(entry, &ctx, config)?;
    let (mut ct, mut bt, mut bd, mut rt) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (name, x) in &codes {
        let tag = |mut r: TheoremReport| {
            r.inputs = format!("{name}: {}", r.inputs);
            r
        };
        ct.push(tag(verify_cardinality(&ctx, x)?));
        reports.push(tag(verify_arity(&ctx, x)?));
        bt.push(tag(verify_finite_index_basis(&ctx, x)?));
        reports.push(tag(verify_saturation(&ctx, x, up_to)?));
    }
    let mut bases_hold = true;
    for n in 1..=config.uniform_up_to {
        let r = verify_uniform_basis(&ctx, n)?;
        bases_hold &= r.holds == Some(true);
        bt.push(r);
    }
    if config.uniform_up_to >= 2 {
        reports.push(verify_tree_from_bases(&ctx, config.uniform_up_to, bases_hold)?);
    }
    let uniform2 = BifixCode::new(s.words_of_length(2).to_vec())?;
    for (name, x) in std::iter::once(("S∩A²".to_string(), uniform2)).chain(
        entry.codes.iter().map(|c| entry.code(&s, c).map(|x| (c.name.to_string(), x))).collect::<Result<Vec<_>>>()?,
    ) {
        let mut r = verify_decoding(&ctx, &x, config.classify_up_to)?;
        r.inputs = format!("{name}: {}", r.inputs);
        bd.push(r);
    }
    for w in s.words_up_to(config.return_len).filter(|w| !w.is_empty()) {
        rt.push(verify_return_words(&ctx, w)?);
    }

    let ex = &entry.expected;
    let columns = vec![
        Column::new("CT", &ct.iter().collect::<Vec<_>>(), ex.cardinality),
        Column::new("RT", &rt.iter().collect::<Vec<_>>(), ex.return_words),
        Column::new("BT", &bt.iter().collect::<Vec<_>>(), ex.finite_index_basis),
        Column::new("BD", &bd.iter().collect::<Vec<_>>(), ex.bifix_decoding),
    ];
    reports.extend(ct);
    reports.extend(rt);
    reports.extend(bt);
    reports.extend(bd);
    let row = SetRow {
        name: entry.name,
        description: entry.description,
        citation: entry.citation,
        class: class.class_name().to_string(),
        expected_class: ex.class,
        classified_up_to: up_to,
        affine: profile.is_affine(k).then_some(k),
        expected_affine: ex.affine,
        recurrence_window: windows.iter().map(|w| w.witness).collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().max()),
        expected_uniformly_recurrent: ex.uniformly_recurrent,
        codes_checked: codes.len(),
        columns,
        error: None,
    };
    Ok((row, reports))
}

fn unexpected_in(row: &SetRow, reports: &[TheoremReport]) -> Vec<String> {
    let mut out = Vec::new();
    let name = row.name;
    if let Some(e) = &row.error {
        out.push(format!("{name}: {e}"));
        return out;
    }
    if row.class != row.expected_class {
        out.push(format!("{name}: classified {} up to {}, expected {}", row.class, row.classified_up_to, row.expected_class));
    }
    if row.expected_affine.is_some() && row.affine != row.expected_affine {
        out.push(format!("{name}: complexity is not {}n+1", row.expected_affine.unwrap_or_default()));
    }
    // Missing windows may only mean the horizon is short, so only the
    // opposite disagreement is reported.
    if let (Some(n), false) = (row.recurrence_window, row.expected_uniformly_recurrent) {
        out.push(format!("{name}: every short word recurs within {n} letters, yet the set is listed as not recurrent"));
    }
    for c in &row.columns {
        if c.unexpected() {
            out.push(format!("{name}: {} observed {:?}, expected {:?}", c.name, c.observed, c.expected));
        }
    }
    for r in reports.iter().filter(|r| r.verdict == Verdict::Fail) {
        out.push(format!("{name}: {} fails under its hypotheses on {} ({})", r.theorem, r.inputs, r.witnesses.join("; ")));
    }
    out
}

fn failed_row(entry: &Entry, e: Error) -> SetRow {
    SetRow {
        name: entry.name,
        description: entry.description,
        citation: entry.citation,
        class: "-".into(),
        expected_class: entry.expected.class,
        classified_up_to: 0,
        affine: None,
        expected_affine: entry.expected.affine,
        recurrence_window: None,
        expected_uniformly_recurrent: entry.expected.uniformly_recurrent,
        codes_checked: 0,
        columns: Vec::new(),
        error: Some(e.to_string()),
    }
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let entries: Vec<Entry> = registry()
        .into_iter()
        .filter(|e| config.sets.is_empty() || config.sets.iter().any(|s| s == e.name))
        .collect();
    if let Some(unknown) = config.sets.iter().find(|s| !entries.iter().any(|e| e.name == s.as_str())) {
        return Err(Error::Precondition(format!("no registry set named {unknown}")));
    }
    let run = |e: &Entry| run_entry(e, config).unwrap_or_else(|err| (failed_row(e, err), Vec::new()));
    let results: Vec<(SetRow, Vec<TheoremReport>)> = if config.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = entries.iter().map(|e| scope.spawn(move || run(e))).collect();
            handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
        })
    } else {
        entries.iter().map(run).collect()
    };
    let mut report = SuiteReport { config: config.clone(), rows: Vec::new(), reports: Vec::new(), unexpected: Vec::new() };
    for (row, reports) in results {
        report.unexpected.extend(unexpected_in(&row, &reports));
        report.rows.push(row);
        report.reports.extend(reports);
    }
    Ok(report)
}
