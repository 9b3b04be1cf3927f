//! Report rows and the three output renderings (JSON, CSV, aligned table).
//!
//! Output is fully deterministic: fixed field order, no timestamps, exact
//! rationals as `p/q` strings. Floats appear only in the numeric-oracle
//! reports.

use rext_core::algebra::{IntegralSet, StructureDiff, StructurePolynomial};
use rext_core::daska::{AffineP, PrintedPhiReport, UnionDegeneracy, Validity};
use rext_core::model::SystemSpec;
use rext_core::numerics::EigenReport;
use rext_core::ser::rational_string;
use rext_core::spectrum::LevelReport;
use rext_core::unirreps::LevelClassification;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub spec: &'a SystemSpec,
    pub n_min: i64,
    pub n_max: i64,
    pub results: T,
}

pub fn to_json<T: Serialize>(envelope: &Envelope<'_, T>) -> String {
    let mut s = serde_json::to_string_pretty(envelope).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
pub struct UnirrepRow {
    pub n: i64,
    pub classification: Option<LevelClassification>,
    pub chains: Vec<Vec<i64>>,
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct Table3Row {
    pub n: i64,
    pub pass: bool,
    pub classification: Option<LevelClassification>,
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct FamilyRow {
    pub index: usize,
    pub energy: AffineP,
    pub energy_display: String,
    pub u: AffineP,
    pub u_display: String,
    pub validity: Validity,
    pub source_a_constant: String,
    pub source_b_constant: String,
}

#[derive(Serialize)]
pub struct DaskaResults {
    pub families: Vec<FamilyRow>,
    pub degenerate_pairs: usize,
    pub orientation_excluded: usize,
    pub deduplicated: usize,
    pub unions: Vec<UnionDegeneracy>,
}

#[derive(Serialize)]
pub struct StructureResults {
    pub derived: StructurePolynomial,
    pub printed: StructurePolynomial,
    pub k_degree: usize,
    pub table_f_degree: u32,
    pub integrals: IntegralSet,
}

#[derive(Serialize)]
pub struct NumericResults {
    pub x: EigenReport,
    pub y: EigenReport,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct DiffResults {
    pub structure: Vec<StructureDiff>,
    pub printed_phi: Option<PrintedPhiReport>,
}

fn p_multiset_display(multiset: &[(i64, i64)]) -> String {
    multiset
        .iter()
        .map(|(p, mult)| format!("{p}^{mult}"))
        .collect::<Vec<_>>()
        .join(" ")
}

// --- spectrum ---------------------------------------------------------

pub fn spectrum_csv(rows: &[LevelReport]) -> String {
    let mut out = String::from("n,energy,deg_enumerated,deg_closed_form,states\n");
    for r in rows {
        let states = r
            .states
            .iter()
            .map(|s| format!("{}:{}", s.nu_x, s.nu_y))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            rational_string(&r.energy),
            r.deg_enumerated,
            r.deg_closed_form,
            states
        ));
    }
    out
}

pub fn spectrum_table(rows: &[LevelReport]) -> String {
    let mut out = format!(
        "{:>5} {:>8} {:>6} {:>6}  states\n",
        "N", "energy", "enum", "law"
    );
    for r in rows {
        let states = r
            .states
            .iter()
            .map(|s| format!("({},{})", s.nu_x, s.nu_y))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{:>5} {:>8} {:>6} {:>6}  {}\n",
            r.n,
            rational_string(&r.energy),
            r.deg_enumerated,
            r.deg_closed_form,
            states
        ));
    }
    out
}

// --- unirreps / table3 ------------------------------------------------

pub fn unirrep_csv(rows: &[UnirrepRow]) -> String {
    let mut out = String::from("n,lambda,mu,case,p_multiset,n_unirreps,deg,chains\n");
    for r in rows {
        let chains = r
            .chains
            .iter()
            .map(|c| {
                c.iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("|");
        match &r.classification {
            Some(c) => out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.n,
                c.lambda,
                c.mu,
                c.case_id,
                p_multiset_display(&c.p_multiset),
                c.n_unirreps,
                c.deg,
                chains
            )),
            None => out.push_str(&format!(
                "{},,,,,,,{}\n",
                r.n,
                r.error.as_deref().unwrap_or("")
            )),
        }
    }
    out
}

pub fn unirrep_table(rows: &[UnirrepRow]) -> String {
    let mut out = format!(
        "{:>5} {:>3} {:>3} {:>4} {:>12} {:>4} {:>4}  chains\n",
        "N", "lam", "mu", "case", "p-multiset", "#", "deg"
    );
    for r in rows {
        let chains = r
            .chains
            .iter()
            .map(|c| {
                format!(
                    "[{}]",
                    c.iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" ");
        match &r.classification {
            Some(c) => out.push_str(&format!(
                "{:>5} {:>3} {:>3} {:>4} {:>12} {:>4} {:>4}  {}\n",
                r.n,
                c.lambda,
                c.mu,
                c.case_id,
                p_multiset_display(&c.p_multiset),
                c.n_unirreps,
                c.deg,
                chains
            )),
            None => out.push_str(&format!(
                "{:>5}  classification failed: {}\n",
                r.n,
                r.error.as_deref().unwrap_or("")
            )),
        }
    }
    out
}

pub fn table3_csv(rows: &[Table3Row]) -> String {
    let mut out = String::from("n,case,p_multiset,n_unirreps,deg,pass,detail\n");
    for r in rows {
        match &r.classification {
            Some(c) => out.push_str(&format!(
                "{},{},{},{},{},{},\n",
                r.n,
                c.case_id,
                p_multiset_display(&c.p_multiset),
                c.n_unirreps,
                c.deg,
                r.pass
            )),
            None => out.push_str(&format!(
                "{},,,,,{},{}\n",
                r.n,
                r.pass,
                r.error.as_deref().unwrap_or("")
            )),
        }
    }
    out
}

pub fn table3_table(rows: &[Table3Row]) -> String {
    let mut out = format!(
        "{:>5} {:>4} {:>14} {:>4} {:>4}  result\n",
        "N", "case", "p-multiset", "#", "deg"
    );
    for r in rows {
        match &r.classification {
            Some(c) => out.push_str(&format!(
                "{:>5} {:>4} {:>14} {:>4} {:>4}  {}\n",
                r.n,
                c.case_id,
                p_multiset_display(&c.p_multiset),
                c.n_unirreps,
                c.deg,
                if r.pass { "pass" } else { "FAIL" }
            )),
            None => out.push_str(&format!(
                "{:>5} {:>4} {:>14} {:>4} {:>4}  FAIL {}\n",
                r.n,
                "-",
                "-",
                "-",
                "-",
                r.error.as_deref().unwrap_or("")
            )),
        }
    }
    out
}

// --- daska -------------------------------------------------------------

fn validity_display(v: Validity) -> String {
    match v {
        Validity::AllP => "all p".into(),
        Validity::UpTo(p) => format!("p <= {p}"),
    }
}

pub fn daska_csv(results: &DaskaResults) -> String {
    let mut out = String::from("index,energy,u,validity,source_a,source_b\n");
    for f in &results.families {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            f.index,
            f.energy_display,
            f.u_display,
            validity_display(f.validity),
            f.source_a_constant,
            f.source_b_constant
        ));
    }
    out.push('\n');
    out.push_str("n,energy,total,witnesses\n");
    for u in &results.unions {
        let witnesses = u
            .witnesses
            .iter()
            .map(|w| format!("family {} p={}", w.family_index, w.p))
            .collect::<Vec<_>>()
            .join("; ");
        out.push_str(&format!(
            "{},{},{},{}\n",
            u.n,
            rational_string(&u.energy),
            u.total,
            witnesses
        ));
    }
    out
}

pub fn daska_table(results: &DaskaResults) -> String {
    let mut out = format!(
        "solution families ({} total; {} degenerate pairs, {} reversed, {} duplicates)\n",
        results.families.len(),
        results.degenerate_pairs,
        results.orientation_excluded,
        results.deduplicated
    );
    out.push_str(&format!(
        "{:>5} {:>14} {:>20} {:>10} {:>9} {:>9}\n",
        "#", "E(p)", "u(p)", "validity", "a-const", "b-const"
    ));
    for f in &results.families {
        out.push_str(&format!(
            "{:>5} {:>14} {:>20} {:>10} {:>9} {:>9}\n",
            f.index,
            f.energy_display,
            f.u_display,
            validity_display(f.validity),
            f.source_a_constant,
            f.source_b_constant
        ));
    }
    out.push_str(&format!(
        "\nunion degeneracies\n{:>5} {:>8} {:>6}  witnesses\n",
        "N", "energy", "total"
    ));
    for u in &results.unions {
        let witnesses = u
            .witnesses
            .iter()
            .map(|w| format!("(#{} p={})", w.family_index, w.p))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{:>5} {:>8} {:>6}  {}\n",
            u.n,
            rational_string(&u.energy),
            u.total,
            witnesses
        ));
    }
    out
}

// --- structure-fn ------------------------------------------------------

pub fn structure_csv(results: &StructureResults) -> String {
    let mut out = String::from("source,coef_h,coef_k,constant,prefactor\n");
    for (source, sp) in [("derived", &results.derived), ("printed", &results.printed)] {
        for f in &sp.factors {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                source,
                rational_string(&f.coef_h),
                rational_string(&f.coef_k),
                rational_string(&f.constant),
                rational_string(&f.prefactor)
            ));
        }
    }
    out
}

pub fn structure_table(results: &StructureResults) -> String {
    let mut out = format!(
        "K-degree {} (published table: {}); integrals n1={} n2={} lambda={} |I|={}\n",
        results.k_degree,
        results.table_f_degree,
        results.integrals.n1,
        results.integrals.n2,
        rational_string(&results.integrals.lambda),
        results.integrals.order_i
    );
    for (source, sp) in [("derived", &results.derived), ("printed", &results.printed)] {
        out.push_str(&format!("\n{source} factors:\n"));
        for f in &sp.factors {
            out.push_str(&format!("  {f}\n"));
        }
    }
    out
}

// --- verify-numeric ----------------------------------------------------

pub fn numeric_csv(results: &NumericResults) -> String {
    let mut out = String::from("axis,check,a,b,predicted,measured,error\n");
    for report in [&results.x, &results.y] {
        for g in &report.gap_checks {
            out.push_str(&format!(
                "{},gap,{},{},{:.9},{:.9},{:.3e}\n",
                report.axis, g.nu_lo, g.nu_hi, g.predicted, g.measured, g.error
            ));
        }
        for c in &report.closure_checks {
            out.push_str(&format!(
                "{},closure,{},{},{:.9},{:.9},{:.3e}\n",
                report.axis, c.nu_x, c.nu_y, c.predicted, c.measured, c.error
            ));
        }
    }
    out
}

pub fn numeric_table(results: &NumericResults) -> String {
    let mut out = String::new();
    for report in [&results.x, &results.y] {
        out.push_str(&format!(
            "axis {}: grids n={} and n={}, max |error| {:.3e} (tolerance {:.1e}) -> {}\n",
            report.axis,
            report.grid_coarse.n,
            report.grid_fine.n,
            report.max_abs_error,
            report.tolerance,
            if report.passed() { "pass" } else { "FAIL" }
        ));
        out.push_str(&format!(
            "  {:>4} {:>4} {:>12} {:>12} {:>10}\n",
            "nu", "nu'", "predicted", "measured", "error"
        ));
        for g in &report.gap_checks {
            out.push_str(&format!(
                "  {:>4} {:>4} {:>12.6} {:>12.6} {:>10.2e}  gap\n",
                g.nu_lo, g.nu_hi, g.predicted, g.measured, g.error
            ));
        }
        for c in &report.closure_checks {
            out.push_str(&format!(
                "  {:>4} {:>4} {:>12.6} {:>12.6} {:>10.2e}  closure\n",
                c.nu_x, c.nu_y, c.predicted, c.measured, c.error
            ));
        }
    }
    out
}

// --- diff-report -------------------------------------------------------

pub fn diff_csv(results: &DiffResults) -> String {
    let mut out = String::from("kind,where,printed,derived,offset\n");
    for diff in &results.structure {
        for m in &diff.mismatches {
            out.push_str(&format!(
                "factor,{} {}-side,{},{},{}\n",
                diff.family,
                m.side,
                rational_string(&m.printed_constant),
                rational_string(&m.derived_constant),
                rational_string(&m.offset)
            ));
        }
        if !diff.degree_matches_table {
            out.push_str(&format!(
                "degree,{},{},{},\n",
                diff.family, diff.table_f_degree, diff.k_degree
            ));
        }
    }
    if let Some(phi) = &results.printed_phi {
        for e in &phi.entries {
            if !e.roots_agree() {
                let printed = e
                    .printed_only
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(" | ");
                let solver = e
                    .solver_only
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(" | ");
                out.push_str(&format!(
                    "phi-roots,family {} kappa {},{},{},\n",
                    e.family_id, e.kappa, printed, solver
                ));
            }
        }
    }
    out
}

pub fn diff_table(results: &DiffResults) -> String {
    let mut out = String::new();
    for diff in &results.structure {
        out.push_str(&format!(
            "family {}: {} factors matched, {} mismatched; K-degree {} vs published {}{}\n",
            diff.family,
            diff.matched,
            diff.mismatches.len(),
            diff.k_degree,
            diff.table_f_degree,
            if diff.degree_matches_table {
                ""
            } else {
                "  <- count discrepancy"
            }
        ));
        for m in &diff.mismatches {
            out.push_str(&format!(
                "  {}-side constant: printed {} vs derived {} (offset {})\n",
                m.side,
                rational_string(&m.printed_constant),
                rational_string(&m.derived_constant),
                rational_string(&m.offset)
            ));
        }
    }
    if let Some(phi) = &results.printed_phi {
        out.push_str(&format!(
            "\nprinted structure functions, one-step m={}\n",
            phi.m
        ));
        for e in &phi.entries {
            if e.roots_agree() {
                out.push_str(&format!(
                    "  family {} l={:?} kappa={}: roots agree\n",
                    e.family_id, e.l, e.kappa
                ));
            } else {
                out.push_str(&format!(
                    "  family {} l={:?} kappa={}: {} roots agree; printed-only [{}], solver-only [{}]{}\n",
                    e.family_id,
                    e.l,
                    e.kappa,
                    e.matched_roots,
                    e.printed_only
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    e.solver_only
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    if e.printed_vanishes_at_p_plus_one {
                        ""
                    } else {
                        "; printed form misses the p+1 boundary root"
                    }
                ));
            }
        }
    }
    out
}
