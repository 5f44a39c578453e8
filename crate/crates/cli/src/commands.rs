use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use nub_core::bases::{self, BasisSet, ORTHO_TOL};
use nub_core::io::{self, BasisSetDocument};
use nub_core::qrac::{self, LogBase, ReportMetadata};
use nub_core::search;
use nub_core::table;
use nub_core::unbiasedness;
use nub_core::{Error, Result};

use crate::output::{sig, Output};

/// Residual at or below which a descent result counts as an nUB.
pub const NUB_FOUND_RESIDUAL: f64 = 1e-8;

pub fn verify(input: &Path, k: Option<usize>, tol: f64) -> Result<Output> {
    let s = io::read_basis_set(input)?;
    let k = k.unwrap_or(s.n());
    let report = unbiasedness::kub_check(&s, k, tol)?;
    let mut human = format!(
        "{}: n = {}, d = {}, k = {k}\n{}UB condition: {} (target {}, tol {})\n",
        input.display(),
        s.n(),
        s.dim(),
        k,
        if report.passed {
            "satisfied"
        } else {
            "violated"
        },
        sig(report.target),
        sig(tol),
    );
    let w = &report.worst;
    let _ = writeln!(
        human,
        "worst: bases {:?}, x {:?}, value {} {} {}i, deviation {}",
        w.subset,
        w.x,
        sig(w.re),
        if w.im < 0.0 { '-' } else { '+' },
        sig(w.im.abs()),
        sig(w.deviation)
    );
    for st in &report.subsets {
        let _ = writeln!(
            human,
            "  subset {:?}: max deviation {}, mean deviation {}",
            st.subset,
            sig(st.max_deviation),
            sig(st.mean_deviation)
        );
    }
    Ok(Output::new("verify", &report, human, report.passed))
}

pub fn asp(input: &Path) -> Result<Output> {
    let s = io::read_basis_set(input)?;
    let report = qrac::asp_report(
        s.n(),
        s.dim(),
        Some(&s),
        ReportMetadata {
            tolerance: ORTHO_TOL,
            seed: None,
            provenance: Some(input.display().to_string()),
        },
    )?;
    let mut human = format!(
        "n = {}, d = {}\nclassical: {} ({})\nquantum:   {}\nnUB bound: {}\n",
        report.n,
        report.d,
        report.classical,
        sig(report.classical.value),
        sig(report.quantum.unwrap_or(f64::NAN)),
        sig(report.nub_bound)
    );
    if report.d_below_n {
        human.push_str("warning: d < n, the nUB bound is not established as optimal here\n");
    }
    Ok(Output::new("asp", &report, human, true))
}

#[derive(Serialize)]
struct ClosedFormCheck {
    formula: &'static str,
    value: f64,
    agreement: f64,
}

#[derive(Serialize)]
struct BoundsReport {
    n: usize,
    d: usize,
    classical: qrac::ExactValue,
    nub_bound: f64,
    greatest_root: f64,
    root_residual: f64,
    derivative: f64,
    bracketed: bool,
    d_below_n: bool,
    coefficients: Vec<f64>,
    closed_form: Option<ClosedFormCheck>,
}

pub fn bounds(n: usize, d: usize) -> Result<Output> {
    let bound = qrac::nub_bound(n, d)?;
    let closed_form = match n {
        2 => {
            let v = qrac::two_question_closed_form(d);
            Some(ClosedFormCheck {
                formula: "(1 + 1/sqrt(d))/2",
                value: v,
                agreement: (v - bound.value).abs(),
            })
        }
        3 => {
            let v = qrac::three_question_closed_form(d);
            Some(ClosedFormCheck {
                formula: "(1 + d/A + A/d^2)/3, A = (d^4 + sqrt(d^8 - d^9))^(1/3)",
                value: v.re,
                agreement: (v - bound.value).norm(),
            })
        }
        4 => {
            let roots = qrac::real_roots_companion(&qrac::four_question_polynomial(d));
            let v = roots.first().copied().unwrap_or(f64::NAN) / 4.0;
            Some(ClosedFormCheck {
                formula: "greatest zero of the explicit quartic / 4",
                value: v,
                agreement: (v - bound.value).abs(),
            })
        }
        _ => None,
    };
    let p = &bound.polynomial;
    let report = BoundsReport {
        n,
        d,
        classical: qrac::asp_classical(n, d)?,
        nub_bound: bound.value,
        greatest_root: p.greatest_root,
        root_residual: p.root_residual,
        derivative: p.derivative,
        bracketed: p.bracketed,
        d_below_n: bound.d_below_n,
        coefficients: p.coeffs.clone(),
        closed_form,
    };
    let mut human = format!(
        "n = {n}, d = {d}\nclassical: {} ({})\nnUB bound: {}\ngreatest root {} with |P| = {}, P' = {}\n",
        report.classical,
        sig(report.classical.value),
        sig(report.nub_bound),
        sig(report.greatest_root),
        sig(report.root_residual),
        sig(report.derivative),
    );
    if let Some(c) = &report.closed_form {
        let _ = writeln!(
            human,
            "closed form {}: {} (agreement {})",
            c.formula,
            sig(c.value),
            sig(c.agreement)
        );
    }
    if report.d_below_n {
        human.push_str("warning: d < n, the nUB bound is not established as optimal here\n");
    }
    Ok(Output::new("bounds", &report, human, true))
}

#[derive(Serialize)]
struct TableReport {
    rows: Vec<table::TableRow>,
}

pub fn table() -> Result<Output> {
    let rows = table::reproduce_table()?;
    let mut human = String::from("         | classical |   MUB    |   nUB\n");
    human.push_str("---------+-----------+----------+--------\n");
    for r in &rows {
        let mub = match &r.mub {
            Some(m) => format!("{:.4}", m.value),
            None => "  n/a ".into(),
        };
        let mark = if r.mub_flagged && r.mub.is_some() {
            "*"
        } else {
            " "
        };
        let _ = writeln!(
            human,
            "d={} n={} |  {:.4}   |  {mub}{mark} | {:.4}",
            r.d, r.n, r.classical.value, r.nub
        );
    }
    human.push_str(
        "\n* built-in MUB construction; other inequivalent MUB families may give different values\n",
    );
    Ok(Output::new("table", &TableReport { rows }, human, true))
}

#[derive(Serialize)]
struct SeesawReport<'a> {
    n: usize,
    d: usize,
    asp: f64,
    nub_bound: f64,
    pairwise_mub_deviation: f64,
    #[serde(flatten)]
    state: &'a search::SeesawState,
    bases: BasisSetDocument,
}

fn save(output: Option<&Path>, s: &BasisSet) -> Result<()> {
    if let Some(path) = output {
        io::write_basis_set(path, s)?;
    }
    Ok(())
}

pub fn seesaw(
    n: usize,
    d: usize,
    seed: u64,
    iters: usize,
    tol: f64,
    output: Option<&Path>,
) -> Result<Output> {
    let state = search::seesaw_optimize(n, d, seed, iters, tol)?;
    save(output, &state.bases)?;
    let mub = unbiasedness::pairwise_mub_check(&state.bases, 1e-2)?;
    let report = SeesawReport {
        n,
        d,
        asp: state.asp(),
        nub_bound: qrac::nub_bound(n, d).map(|b| b.value).unwrap_or(f64::NAN),
        pairwise_mub_deviation: mub.max_deviation,
        state: &state,
        bases: BasisSetDocument::from_set(&state.bases),
    };
    let human = format!(
        "see-saw n = {n}, d = {d}, seed {seed}\nASP {} after {} iterations ({})\nnUB bound {}\nmax pairwise MUB deviation {}\n",
        sig(report.asp),
        state.iterations,
        if state.converged { "converged" } else { "iteration limit" },
        sig(report.nub_bound),
        sig(mub.max_deviation),
    );
    Ok(Output::new("seesaw", &report, human, true))
}

#[derive(Serialize)]
struct SearchReport<'a> {
    n: usize,
    d: usize,
    seed: u64,
    found: bool,
    #[serde(flatten)]
    result: &'a search::DescentResult,
    bases: BasisSetDocument,
}

pub fn search(
    n: usize,
    d: usize,
    seed: u64,
    restarts: usize,
    iters: usize,
    output: Option<&Path>,
) -> Result<Output> {
    let result = search::nub_descent_search(n, d, seed, restarts, iters)?;
    save(output, &result.bases)?;
    let found = result.residual <= NUB_FOUND_RESIDUAL;
    let report = SearchReport {
        n,
        d,
        seed,
        found,
        result: &result,
        bases: BasisSetDocument::from_set(&result.bases),
    };
    let human = format!(
        "nUB descent n = {n}, d = {d}, seed {seed}, {restarts} restarts\nbest residual {} (restart {})\n{}\n",
        sig(result.residual),
        result.best_restart,
        if found {
            "an nUB candidate was found".to_string()
        } else {
            format!("no residual at or below {NUB_FOUND_RESIDUAL:e}; this does not rule out existence")
        }
    );
    Ok(Output::new("search", &report, human, found))
}

pub fn haar_test(n: usize, d: usize, samples: usize, seed: u64) -> Result<Output> {
    let est = search::haar_expectation_test(n, d, samples, seed)?;
    let ok = est.within(3.0);
    let human = format!(
        "Haar n-cycle expectation, n = {n}, d = {d}, {samples} samples, seed {seed}\nmean {} ± {} (target {}, {} standard errors)\nimaginary part {} ± {}\n",
        sig(est.mean),
        sig(est.stderr),
        sig(est.target),
        sig(est.z_score()),
        sig(est.imag_mean),
        sig(est.imag_stderr),
    );
    Ok(Output::new("haar-test", &est, human, ok))
}

#[derive(Serialize)]
struct UncertaintyReport {
    d: usize,
    max_overlap_sq: f64,
    bound_bits: f64,
    bound_nats: f64,
    mub: bool,
}

pub fn uncertainty(input: &Path) -> Result<Output> {
    let s = io::read_basis_set(input)?;
    if s.n() != 2 {
        return Err(Error::InvalidArgument(format!(
            "uncertainty expects exactly 2 bases, file has {}",
            s.n()
        )));
    }
    let (a, b) = (s.basis(0), s.basis(1));
    let report = UncertaintyReport {
        d: s.dim(),
        max_overlap_sq: a
            .overlaps(b)
            .iter()
            .map(|z| z.norm_sqr())
            .fold(0.0, f64::max),
        bound_bits: qrac::maassen_uffink_bound(a, b, LogBase::Bits)?,
        bound_nats: qrac::maassen_uffink_bound(a, b, LogBase::Nats)?,
        mub: unbiasedness::mub_check(a, b, ORTHO_TOL)?.passed,
    };
    let human = format!(
        "H(A) + H(B) >= {} bits ({} nats), c = {}{}\n",
        sig(report.bound_bits),
        sig(report.bound_nats),
        sig(report.max_overlap_sq),
        if report.mub {
            ", bases are mutually unbiased"
        } else {
            ""
        }
    );
    Ok(Output::new("uncertainty", &report, human, true))
}

pub fn scan(input: &Path, k: usize, tol: f64) -> Result<Output> {
    let sets = io::read_scan_inputs(input, ORTHO_TOL)?;
    let report = search::scan_candidates(&sets, k, tol)?;
    let passed = report.entries.iter().filter(|e| e.kub_passed).count();
    let mut human = format!(
        "scanned {} sets (n = {}, d = {}), {passed} pass the {k}UB check\nmin residual {} at set {}\n",
        report.entries.len(),
        report.n,
        report.d,
        sig(report.min_residual),
        report.argmin
    );
    for e in &report.entries {
        let _ = writeln!(
            human,
            "  {:>4}: residual {}, {k}UB {} (deviation {})",
            e.index,
            sig(e.residual),
            if e.kub_passed { "pass" } else { "fail" },
            sig(e.kub_deviation)
        );
    }
    Ok(Output::new("scan", &report, human, passed > 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Construction {
    /// Computational and Fourier bases.
    FourierPair,
    /// The standard qubit MUB triplet.
    QubitTriplet,
    /// All p + 1 Weyl–Heisenberg MUBs for prime d.
    WeylHeisenberg,
    /// Independent Haar-random bases.
    Random,
}

/// Writes a built-in basis set as a document.
pub fn construct(
    kind: Construction,
    n: Option<usize>,
    d: Option<usize>,
    seed: u64,
) -> Result<Output> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| {
            Error::InvalidArgument(format!("--{name} is required for this construction"))
        })
    };
    let mut s = match kind {
        Construction::FourierPair => {
            let d = need(d, "d")?;
            BasisSet::new(vec![bases::make_computational(d)?, bases::make_fourier(d)?])?
        }
        Construction::QubitTriplet => bases::qubit_mub_triplet(),
        Construction::WeylHeisenberg => bases::make_wh_mub_set(need(d, "d")?)?,
        Construction::Random => bases::random_basis_set(need(n, "n")?, need(d, "d")?, seed)?,
    };
    if let (Some(n), Construction::WeylHeisenberg) = (n, kind) {
        let which: Vec<usize> = (0..n).collect();
        s = s.select(&which)?;
    }
    let doc = BasisSetDocument::from_set(&s);
    let human = io::to_json(&s);
    let mut out = Output::new("construct", &doc, human, true);
    out.machine = serde_json::to_value(&doc).expect("plain data");
    Ok(out)
}
