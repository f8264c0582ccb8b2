//! Machine- and human-readable renderings of a verification report.
//!
//! The JSON layout mirrors the library's `VerificationReport` with stable
//! key order (struct-derived), so identical reports serialize identically
//! and snapshots stay byte-stable. The plain-text rendering is built from
//! the same document, so the two views cannot drift apart. Violation lists
//! are truncated to [`VIOLATION_LIMIT`] unless verbose output is requested.

use bimagic::{ImageReport, PropertyReport, Verdict, VerificationReport};
use serde::Serialize;

/// Violations shown per property before truncation.
pub const VIOLATION_LIMIT: usize = 16;

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub order: usize,
    pub width: usize,
    pub alphabet: String,
    pub blocks: Option<String>,
    pub pass: bool,
    pub completeness: CompletenessDoc,
    pub magic: PropertyDoc,
    pub bimagic: PropertyDoc,
    pub block_magic: PropertyDoc,
    pub block_bimagic: PropertyDoc,
    pub digit_balance: PropertyDoc,
    pub pair_uniformity: PropertyDoc,
    pub rotation: ImageDoc,
    pub mirror: ImageDoc,
    pub errata: Vec<ErratumDoc>,
}

#[derive(Debug, Serialize)]
pub struct CompletenessDoc {
    pub complete: bool,
    /// Entries of the complete set absent from the grid (truncated).
    pub missing: Vec<String>,
    pub missing_total: usize,
    /// Entries appearing more than once (truncated).
    pub duplicates: Vec<String>,
    pub duplicates_total: usize,
}

#[derive(Debug, Serialize)]
pub struct PropertyDoc {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<u128>,
    pub violations: Vec<ViolationDoc>,
    pub violations_total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ViolationDoc {
    pub line: String,
    pub subject: String,
    pub expected: u128,
    pub observed: u128,
}

#[derive(Debug, Serialize)]
pub struct ImageDoc {
    pub transform: &'static str,
    pub universal: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s1: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s2: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ErratumDoc {
    pub constant: String,
    pub printed: String,
    pub computed: String,
    pub matches: bool,
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::NotApplicable => "not_applicable",
    }
}

fn property_doc(report: &PropertyReport, limit: Option<usize>) -> PropertyDoc {
    let total = report.violations.len();
    let shown = limit.map_or(total, |l| l.min(total));
    PropertyDoc {
        verdict: verdict_str(report.verdict),
        constant: report.constant,
        violations: report.violations[..shown]
            .iter()
            .map(|v| ViolationDoc {
                line: v.line.to_string(),
                subject: v.subject.to_string(),
                expected: v.expected,
                observed: v.observed,
            })
            .collect(),
        violations_total: total,
        note: report.note.clone(),
    }
}

fn image_doc(report: &ImageReport, transform: &'static str) -> ImageDoc {
    ImageDoc {
        transform,
        universal: verdict_str(report.universal),
        alphabet: report
            .detail
            .as_ref()
            .map(|d| d.alphabet.to_string()),
        s1: report.s1(),
        s2: report.s2(),
        note: report.note.clone(),
    }
}

/// Builds the serializable document from a report. `verbose` lifts the
/// violation truncation.
pub fn report_document(report: &VerificationReport, verbose: bool) -> ReportDocument {
    let limit = if verbose { None } else { Some(VIOLATION_LIMIT) };
    let truncate = |items: &[bimagic::Entry]| -> (Vec<String>, usize) {
        let total = items.len();
        let shown = limit.map_or(total, |l| l.min(total));
        (
            items[..shown].iter().map(|e| e.to_string()).collect(),
            total,
        )
    };
    let (missing, missing_total) = truncate(&report.completeness.missing);
    let (duplicates, duplicates_total) = truncate(&report.completeness.duplicates);
    ReportDocument {
        order: report.order,
        width: report.width,
        alphabet: report.alphabet.to_string(),
        blocks: report.block.map(|b| b.to_string()),
        pass: report.passes(),
        completeness: CompletenessDoc {
            complete: report.completeness.complete,
            missing,
            missing_total,
            duplicates,
            duplicates_total,
        },
        magic: property_doc(&report.magic, limit),
        bimagic: property_doc(&report.bimagic, limit),
        block_magic: property_doc(&report.block_magic, limit),
        block_bimagic: property_doc(&report.block_bimagic, limit),
        digit_balance: property_doc(&report.digit_balanced, limit),
        pair_uniformity: property_doc(&report.pair_uniform, limit),
        rotation: image_doc(&report.rotation, "rotate180"),
        mirror: image_doc(&report.mirror, "mirror"),
        errata: report
            .errata
            .iter()
            .map(|r| ErratumDoc {
                constant: r.constant.to_string(),
                printed: r.printed.to_string(),
                computed: r.computed.clone(),
                matches: r.agrees,
            })
            .collect(),
    }
}

fn render_property(out: &mut String, name: &str, doc: &PropertyDoc, gated: bool) {
    let label = match (doc.verdict, gated) {
        ("true", true) => "pass",
        ("false", true) => "FAIL",
        ("true", false) => "yes",
        ("false", false) => "no",
        _ => "n/a",
    };
    out.push_str(&format!("{name}: {label}"));
    if let Some(c) = doc.constant {
        out.push_str(&format!(" ({c})"));
    }
    if doc.violations_total > 0 {
        out.push_str(&format!(" [{} violations]", doc.violations_total));
    }
    if let Some(note) = &doc.note {
        out.push_str(&format!(" — {note}"));
    }
    out.push('\n');
    for v in &doc.violations {
        out.push_str(&format!(
            "  {}: {} expected {}, observed {}\n",
            v.line, v.subject, v.expected, v.observed
        ));
    }
    if doc.violations.len() < doc.violations_total {
        out.push_str(&format!(
            "  … {} more (run with --verbose for all)\n",
            doc.violations_total - doc.violations.len()
        ));
    }
}

fn render_image(out: &mut String, doc: &ImageDoc) {
    let status = match doc.universal {
        "true" => "universal",
        "false" => "NOT universal",
        _ => "not applicable",
    };
    out.push_str(&format!("{} image: {status}", doc.transform));
    match (doc.s1, doc.s2) {
        (Some(s1), Some(s2)) => out.push_str(&format!(" (S1={s1} S2={s2})")),
        (Some(s1), None) => out.push_str(&format!(" (S1={s1})")),
        _ => {}
    }
    if let Some(alphabet) = &doc.alphabet {
        out.push_str(&format!(" over alphabet {alphabet}"));
    }
    if let Some(note) = &doc.note {
        out.push_str(&format!(" — {note}"));
    }
    out.push('\n');
}

/// Plain-text rendering of the document. Gated properties print
/// pass/FAIL; diagnostics (digit balance, pair uniformity) print yes/no
/// since they do not decide the exit code.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "order {} width {} alphabet {}",
        doc.order, doc.width, doc.alphabet
    ));
    if let Some(blocks) = &doc.blocks {
        out.push_str(&format!(" blocks {blocks}"));
    }
    out.push('\n');
    let completeness = &doc.completeness;
    if completeness.complete {
        out.push_str("completeness: pass\n");
    } else {
        out.push_str(&format!(
            "completeness: FAIL [{} missing, {} duplicated]\n",
            completeness.missing_total, completeness.duplicates_total
        ));
        for e in &completeness.missing {
            out.push_str(&format!("  missing {e}\n"));
        }
        for e in &completeness.duplicates {
            out.push_str(&format!("  duplicated {e}\n"));
        }
    }
    render_property(&mut out, "magic", &doc.magic, true);
    render_property(&mut out, "bimagic", &doc.bimagic, true);
    render_property(&mut out, "block magic", &doc.block_magic, true);
    render_property(&mut out, "block bimagic", &doc.block_bimagic, true);
    render_property(&mut out, "digit balance", &doc.digit_balance, false);
    render_property(&mut out, "pair uniformity", &doc.pair_uniformity, false);
    render_image(&mut out, &doc.rotation);
    render_image(&mut out, &doc.mirror);
    for e in &doc.errata {
        if e.matches {
            out.push_str(&format!(
                "published {} {}: match\n",
                e.constant, e.printed
            ));
        } else {
            out.push_str(&format!(
                "published {} {}: erratum (computed {})\n",
                e.constant, e.printed, e.computed
            ));
        }
    }
    out.push_str(if doc.pass { "result: PASS\n" } else { "result: FAIL\n" });
    out
}
