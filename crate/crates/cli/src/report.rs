use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    pub result: Payload,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Payload {
    Check { algebras: Vec<CheckEntry> },
    Subs { algebras: Vec<SubsEntry> },
    Covers(CoversEntry),
    Var(VarEntry),
    CoverCheck(CoverCheckEntry),
    Render { path: Option<String>, dot: String },
    Sweep(SweepEntry),
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub tree: String,
    pub key: String,
    pub nodes: usize,
    pub axioms: String,
    pub height: u32,
    pub width: usize,
    /// Least `n` for which the height identity holds.
    pub height_identity: usize,
    /// Least `n` for which the width identity holds.
    pub width_identity: usize,
    pub branching: Vec<usize>,
    pub maximal: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct SubsEntry {
    pub tree: String,
    pub key: String,
    pub method: &'static str,
    pub count: usize,
    pub classes: usize,
    pub subalgebras: Vec<SubEntry>,
}

#[derive(Debug, Serialize)]
pub struct SubEntry {
    pub carrier: Vec<usize>,
    pub key: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CoversEntry {
    pub tree: String,
    pub key: String,
    pub mode: String,
    pub rule: String,
    pub candidates: Vec<CandidateEntry>,
    pub covers: Vec<CoverEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dot_files: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CandidateEntry {
    pub key: String,
    pub nodes: usize,
    pub base: String,
    pub anchor_height: u32,
}

#[derive(Debug, Serialize)]
pub struct CoverEntry {
    pub generators: Vec<String>,
    pub n_generated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct VarEntry {
    pub generators: Vec<String>,
    pub n_generated: usize,
    pub si_closure: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<CoverEntry>>,
}

#[derive(Debug, Serialize)]
pub struct CoverCheckEntry {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub is_cover: bool,
}

#[derive(Debug, Serialize)]
pub struct SweepEntry {
    pub max_nodes: usize,
    pub rule: String,
    pub algebras: usize,
    pub axiom_failures: usize,
    pub classification_mismatches: usize,
    pub cover_errors: usize,
    pub covers: usize,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub tree: String,
    pub key: String,
    pub axioms: bool,
    pub classification: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn set(xs: &[usize]) -> String {
    format!("{{{}}}", join(xs))
}

fn cover_line(out: &mut String, i: usize, c: &CoverEntry) {
    let oracle = match c.oracle {
        Some(true) => "  oracle: cover",
        Some(false) => "  oracle: NOT a cover",
        None => "",
    };
    let _ = writeln!(out, "  {:>3}  {}{oracle}", i + 1, c.generators.join(" + "));
}

impl Payload {
    /// Plain-text rendering used when `--json` is off.
    pub fn human(&self) -> String {
        let mut out = String::new();
        match self {
            Payload::Check { algebras } => {
                for a in algebras {
                    let _ = writeln!(out, "tree     {}", a.tree);
                    let _ = writeln!(out, "key      {}", a.key);
                    let _ = writeln!(out, "nodes    {}", a.nodes);
                    let _ = writeln!(out, "axioms   {}", a.axioms);
                    let _ = writeln!(out, "height   {}", a.height);
                    let _ = writeln!(out, "width    {}", a.width);
                    let _ = writeln!(out, "b(A)     {}", set(&a.branching));
                    let _ = writeln!(out, "m(A)     {}", set(&a.maximal));
                    let _ = writeln!(
                        out,
                        "identities: height holds from n={}, width from n={}",
                        a.height_identity, a.width_identity
                    );
                }
            }
            Payload::Subs { algebras } => {
                for a in algebras {
                    let _ = writeln!(
                        out,
                        "{} ({}): {} subalgebras, {} up to isomorphism [{}]",
                        a.tree, a.key, a.count, a.classes, a.method
                    );
                    for s in &a.subalgebras {
                        let kind = s
                            .kind
                            .as_deref()
                            .map(|k| format!("  {k}"))
                            .unwrap_or_default();
                        let _ = writeln!(out, "  {:<24} {}{kind}", set(&s.carrier), s.key);
                    }
                }
            }
            Payload::Covers(c) => {
                let _ = writeln!(
                    out,
                    "{} ({}), mode {}, rule {}",
                    c.tree, c.key, c.mode, c.rule
                );
                let _ = writeln!(out, "Cov(A): {} candidates", c.candidates.len());
                for cand in &c.candidates {
                    let _ = writeln!(
                        out,
                        "  {:<24} from {} at height {}",
                        cand.key, cand.base, cand.anchor_height
                    );
                }
                let _ = writeln!(out, "covers: {}", c.covers.len());
                for (i, cover) in c.covers.iter().enumerate() {
                    cover_line(&mut out, i, cover);
                }
                for f in &c.dot_files {
                    let _ = writeln!(out, "wrote {f}");
                }
            }
            Payload::Var(v) => {
                let _ = writeln!(out, "generators   {}", v.generators.join(" + "));
                let _ = writeln!(out, "n-generated  {}", v.n_generated);
                let _ = writeln!(out, "Si closure   {} classes", v.si_closure.len());
                for k in &v.si_closure {
                    let _ = writeln!(out, "  {k}");
                }
                if let Some(covers) = &v.covers {
                    let _ = writeln!(out, "covers: {}", covers.len());
                    for (i, cover) in covers.iter().enumerate() {
                        cover_line(&mut out, i, cover);
                    }
                }
            }
            Payload::CoverCheck(c) => {
                let verdict = if c.is_cover { "is" } else { "is NOT" };
                let _ = writeln!(
                    out,
                    "{} {verdict} a cover of {}",
                    c.upper.join(" + "),
                    c.lower.join(" + ")
                );
            }
            Payload::Render { path, dot } => match path {
                Some(p) => {
                    let _ = writeln!(out, "wrote {p}");
                }
                None => out.push_str(dot),
            },
            Payload::Sweep(s) => {
                for r in &s.rows {
                    let covers = match (&r.covers, &r.error) {
                        (Some(n), _) => n.to_string(),
                        (None, Some(e)) => format!("error: {e}"),
                        (None, None) => "-".to_string(),
                    };
                    let _ = writeln!(
                        out,
                        "{:<20} axioms {:<4} classification {:<4} covers {covers}",
                        r.tree,
                        if r.axioms { "ok" } else { "FAIL" },
                        if r.classification { "ok" } else { "FAIL" },
                    );
                }
                let _ = writeln!(
                    out,
                    "{} algebras up to {} nodes (rule {}): {} axiom failures, {} classification mismatches, {} cover errors, {} covers",
                    s.algebras,
                    s.max_nodes,
                    s.rule,
                    s.axiom_failures,
                    s.classification_mismatches,
                    s.cover_errors,
                    s.covers
                );
            }
        }
        out
    }
}
