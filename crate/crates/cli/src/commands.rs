use std::collections::BTreeSet;
use std::path::Path;

use cbck::covers::cov_set_with;
use cbck::dot::to_dot;
use cbck::enumerate::si_algebras;
use cbck::subalgebras::{
    all_subuniverses, downset_subalgebras, s_delta_of_downsets, subalgebra_keys, Classifier,
    BRUTE_FORCE_CAP,
};
use cbck::variety::{cover_oracle_capped, ORACLE_CAP};
use cbck::*;
use rayon::prelude::*;

use crate::input::{size_cap, CliError, Input};
use crate::report::*;

fn keys(v: &Variety) -> Vec<String> {
    v.generator_keys()
        .iter()
        .map(|k| k.as_str().to_string())
        .collect()
}

fn least_n(limit: usize, holds: impl Fn(usize) -> bool) -> usize {
    (0..=limit).find(|&n| holds(n)).unwrap_or(limit + 1)
}

pub fn cmd_check(inputs: &[Input]) -> Result<Payload, CliError> {
    let mut algebras = Vec::new();
    for input in inputs {
        let a = &input.algebra;
        let report = a.verify_axioms();
        let axioms = match &report {
            AxiomReport::Pass => "pass".to_string(),
            AxiomReport::Fail { identity, witness } => {
                format!("fail: identity ({}) at {witness:?}", identity.number())
            }
        };
        let entry = CheckEntry {
            tree: a.tree().to_string(),
            key: a.canonical_form().as_str().to_string(),
            nodes: a.len(),
            axioms,
            height: a.height(),
            width: a.width(),
            height_identity: least_n(a.len(), |n| a.check_height_identity(n)),
            width_identity: least_n(a.len(), |n| a.check_width_identity(n)),
            branching: a.branching_elements().iter().collect(),
            maximal: a.maximal_elements().iter().collect(),
        };
        if !report.passed()
            || entry.height_identity != entry.height as usize
            || entry.width_identity != entry.width
        {
            return Err(CbckError::PropertyViolation(format!(
                "{}: axioms {}, height identity from n={}, width identity from n={}",
                entry.tree, entry.axioms, entry.height_identity, entry.width_identity
            ))
            .into());
        }
        algebras.push(entry);
    }
    Ok(Payload::Check { algebras })
}

pub fn cmd_subs(inputs: &[Input], brute: bool, classified: bool) -> Result<Payload, CliError> {
    let cap = size_cap(BRUTE_FORCE_CAP)?;
    let mut algebras = Vec::new();
    for input in inputs {
        let a = &input.algebra;
        let carriers: Vec<NodeSet> = if brute {
            enumerate_subalgebras_bruteforce(a, cap)?
                .into_iter()
                .map(|s| s.carrier)
                .collect()
        } else {
            all_subuniverses(a)
        };
        let classifier = classified.then(|| Classifier::new(a));
        let mut subalgebras: Vec<SubEntry> = carriers
            .iter()
            .map(|&c| SubEntry {
                carrier: c.iter().collect(),
                key: cbck::subalgebras::carrier_key(a, c).as_str().to_string(),
                kind: classifier.as_ref().map(|cl| cl.classify(c).to_string()),
            })
            .collect();
        subalgebras.sort_by(|x, y| {
            (x.carrier.len(), &x.key, &x.carrier).cmp(&(y.carrier.len(), &y.key, &y.carrier))
        });
        if subalgebras
            .iter()
            .any(|s| s.kind.as_deref() == Some("other"))
        {
            return Err(CbckError::PropertyViolation(format!(
                "{}: a subalgebra is neither an ideal nor a divisor subalgebra of one",
                a.tree()
            ))
            .into());
        }
        let classes: BTreeSet<&str> = subalgebras.iter().map(|s| s.key.as_str()).collect();
        algebras.push(SubsEntry {
            tree: a.tree().to_string(),
            key: a.canonical_form().as_str().to_string(),
            method: if brute { "brute-force" } else { "closure" },
            count: subalgebras.len(),
            classes: classes.len(),
            subalgebras,
        });
    }
    Ok(Payload::Subs { algebras })
}

fn oracle_verdicts(v: &Variety, covers: &[Variety], cap: usize) -> Result<Vec<bool>, CliError> {
    covers
        .iter()
        .map(|w| cover_oracle_capped(v, w, cap).map_err(CliError::from))
        .collect()
}

fn cover_entries(covers: &[Variety], verdicts: Option<Vec<bool>>) -> Vec<CoverEntry> {
    covers
        .iter()
        .enumerate()
        .map(|(i, w)| CoverEntry {
            generators: keys(w),
            n_generated: w.n_generated(),
            oracle: verdicts.as_ref().map(|v| v[i]),
        })
        .collect()
}

pub struct CoversOptions<'a> {
    pub mode: CovMode,
    pub rule: CandidateRule,
    pub oracle: bool,
    pub dot_dir: Option<&'a Path>,
}

pub fn cmd_covers(input: &Input, opts: &CoversOptions) -> Result<Payload, CliError> {
    let a = &input.algebra;
    let candidates = cov_set_with(a, opts.mode, opts.rule)?;
    let covers = covers_of_si_with(a, opts.mode, opts.rule)?;
    let verdicts = if opts.oracle {
        let v = Variety::of([a.clone()]);
        Some(oracle_verdicts(&v, &covers, size_cap(ORACLE_CAP)?)?)
    } else {
        None
    };
    let mut dot_files = Vec::new();
    if let Some(dir) = opts.dot_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for (i, c) in candidates.iter().enumerate() {
            let path = dir.join(format!("cov-{:02}.dot", i + 1));
            let dot = to_dot(&c.algebra, c.key.as_str());
            std::fs::write(&path, dot).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            dot_files.push(path.display().to_string());
        }
    }
    let entry = CoversEntry {
        tree: a.tree().to_string(),
        key: a.canonical_form().as_str().to_string(),
        mode: opts.mode.to_string(),
        rule: opts.rule.to_string(),
        candidates: candidates
            .iter()
            .map(|c| CandidateEntry {
                key: c.key.as_str().to_string(),
                nodes: c.algebra.len(),
                base: c.origin.base.canonical_form().as_str().to_string(),
                anchor_height: c.origin.base.height_of_node(c.origin.anchor),
            })
            .collect(),
        covers: cover_entries(&covers, verdicts),
        dot_files,
    };
    if entry.covers.iter().any(|c| c.oracle == Some(false)) {
        return Err(CbckError::PropertyViolation(format!(
            "{}: a computed variety failed the cover check",
            entry.tree
        ))
        .into());
    }
    Ok(Payload::Covers(entry))
}

pub fn cmd_var(
    inputs: &[Input],
    with_covers: bool,
    rule: CandidateRule,
    oracle: bool,
) -> Result<Payload, CliError> {
    let v = Variety::of(inputs.iter().map(|i| i.algebra.clone()));
    let covers = if with_covers {
        let covers = covers_of_variety_with(&v, rule)?;
        let verdicts = if oracle {
            Some(oracle_verdicts(&v, &covers, size_cap(ORACLE_CAP)?)?)
        } else {
            None
        };
        Some(cover_entries(&covers, verdicts))
    } else {
        None
    };
    Ok(Payload::Var(VarEntry {
        generators: keys(&v),
        n_generated: v.n_generated(),
        si_closure: v
            .si_closure()
            .iter()
            .map(|k| k.as_str().to_string())
            .collect(),
        covers,
    }))
}

pub fn cmd_cover_check(lower: &[Input], upper: &[Input]) -> Result<Payload, CliError> {
    let v = Variety::of(lower.iter().map(|i| i.algebra.clone()));
    let w = Variety::of(upper.iter().map(|i| i.algebra.clone()));
    let is_cover = cover_oracle_capped(&v, &w, size_cap(ORACLE_CAP)?)?;
    Ok(Payload::CoverCheck(CoverCheckEntry {
        lower: keys(&v),
        upper: keys(&w),
        is_cover,
    }))
}

pub fn cmd_render(input: &Input, out: Option<&Path>) -> Result<Payload, CliError> {
    let dot = to_dot(&input.algebra, &input.label);
    if let Some(path) = out {
        std::fs::write(path, &dot).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(Payload::Render {
        path: out.map(|p| p.display().to_string()),
        dot,
    })
}

fn sweep_row(a: &CbckAlgebra, rule: CandidateRule) -> SweepRow {
    let brute: BTreeSet<CanonicalForm> = subalgebra_keys(a);
    let theory: BTreeSet<CanonicalForm> = downset_subalgebras(a)
        .iter()
        .chain(s_delta_of_downsets(a).iter())
        .map(|s| s.key(a))
        .collect();
    let (covers, error) = if a.is_trivial() {
        (None, None)
    } else {
        match covers_of_si_with(a, CovMode::Reduced, rule) {
            Ok(c) => (Some(c.len()), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    SweepRow {
        tree: a.tree().to_string(),
        key: a.canonical_form().as_str().to_string(),
        axioms: a.verify_axioms().passed(),
        classification: brute == theory,
        covers,
        error,
    }
}

pub fn cmd_sweep(max_nodes: usize, jobs: usize, rule: CandidateRule) -> Result<Payload, CliError> {
    let cap = size_cap(BRUTE_FORCE_CAP)?;
    if max_nodes > cap {
        return Err(CbckError::Size {
            len: max_nodes,
            cap,
        }
        .into());
    }
    let algebras = si_algebras(max_nodes);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Input(format!("--jobs: {e}")))?;
    // Indexed collection keeps rows in enumeration order.
    let rows: Vec<SweepRow> =
        pool.install(|| algebras.par_iter().map(|a| sweep_row(a, rule)).collect());
    let entry = SweepEntry {
        max_nodes,
        rule: rule.to_string(),
        algebras: rows.len(),
        axiom_failures: rows.iter().filter(|r| !r.axioms).count(),
        classification_mismatches: rows.iter().filter(|r| !r.classification).count(),
        cover_errors: rows.iter().filter(|r| r.error.is_some()).count(),
        covers: rows.iter().filter_map(|r| r.covers).sum(),
        rows,
    };
    Ok(Payload::Sweep(entry))
}
