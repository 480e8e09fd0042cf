//! End-to-end checks on an algebra and the reports shared by the CLI and the web demo.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraElement, AssociativityReport};
use crate::catalog::{CatalogEntry, CatalogName, ExpectedProperties};
use crate::conjugation::{
    find_c, in_space, involution_check, verify_self_conjugated, CMatrix, InvolutionReport, PickPolicy,
    SelfConjugacyReport,
};
use crate::derivations::{
    derivation_space, inner_derivation, inner_derivation_rank, is_derivation, multiplication_algebra_closed,
    theorem_roundtrip, ExponentPath, TheoremReport,
};
use crate::error::Result;
use crate::integration::{verify_completeness, CompletenessReport, IntegralFunctional};
use crate::matrix::SquareMatrix;
use crate::paragrassmann;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub c_rank: usize,
    pub integral: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl Report {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, then the C rank, the integral and any result.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.pass { "✓" } else { "✗" };
            if c.detail.is_empty() {
                out.push_str(&format!("{} {mark}\n", c.name));
            } else {
                out.push_str(&format!("{} {mark}  {}\n", c.name, c.detail));
            }
        }
        out.push_str(&format!("c_rank: {}\n", self.c_rank));
        if !self.integral.is_empty() {
            out.push_str(&format!("integral: {}\n", self.integral.join(" ")));
        }
        if let Some(result) = &self.result {
            out.push_str(&format!("result: {}\n", text_value(result)));
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Where the C matrix in use came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CSource {
    Supplied,
    Pinned,
    Solver,
}

impl std::fmt::Display for CSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CSource::Supplied => "supplied",
            CSource::Pinned => "pinned",
            CSource::Solver => "solver",
        })
    }
}

/// `2·e11 − e12 + (1/2)·e21`; the zero element prints as `0`.
pub fn format_element(algebra: &Algebra, a: &AlgebraElement) -> String {
    let mut out = String::new();
    for (c, label) in a.coeffs.iter().zip(algebra.labels()) {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) if matches!(c, Scalar::Rational(_)) => (true, rest.to_string()),
            _ => (false, text),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !(c.is_one() || negative && body == "1") {
            if matches!(c, Scalar::Rational(_)) && !body.contains('/') {
                out.push_str(&body);
            } else {
                out.push_str(&format!("({body})"));
            }
            out.push('·');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn matrix_rows(m: &SquareMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.dim())
        .map(|i| m.row(i).iter().map(Scalar::to_string).collect())
        .collect();
    json!(rows)
}

fn join_indices<T: std::fmt::Debug>(items: &[T]) -> String {
    const SHOWN: usize = 4;
    let head: Vec<String> = items.iter().take(SHOWN).map(|x| format!("{x:?}")).collect();
    let more = if items.len() > SHOWN { ", …" } else { "" };
    format!("{} at {}{more}", items.len(), head.join(", "))
}

/// Everything the `check` pipeline computes about one algebra.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub associativity: AssociativityReport,
    pub identity: Option<AlgebraElement>,
    pub space: Vec<SquareMatrix>,
    pub c: Option<(CMatrix, CSource)>,
    pub conjugacy: Option<SelfConjugacyReport>,
    pub functional: Option<IntegralFunctional>,
    pub completeness: Option<CompletenessReport>,
    pub involution: Option<InvolutionReport>,
    /// Whether a supplied or pinned C lies in the solver's space.
    pub c_in_space: Option<bool>,
}

impl Analysis {
    pub fn run(algebra: &Algebra, supplied: Option<(CMatrix, CSource)>, policy: &PickPolicy) -> Analysis {
        let associativity = algebra.associativity_report();
        let identity = algebra.find_identity();
        let (space, solver_c) = find_c(algebra, policy);
        let c_in_space = supplied.as_ref().map(|(c, _)| in_space(&space, c.matrix()));
        let c = supplied.or(solver_c.map(|c| (c, CSource::Solver)));
        let conjugacy = c.as_ref().map(|(c, _)| verify_self_conjugated(algebra, c.matrix()));
        let functional = c.as_ref().and_then(|(c, _)| IntegralFunctional::new(algebra, c).ok());
        let completeness = match (&c, &identity) {
            (Some((cm, _)), Some(id)) => {
                let values = cm.inverse().left_apply(&id.coeffs);
                let raw = IntegralFunctional::from_raw_parts(values, cm.clone(), id.clone());
                Some(verify_completeness(algebra, &raw))
            }
            _ => None,
        };
        let involution = c.as_ref().map(|(c, _)| involution_check(algebra, c.matrix()));
        Analysis {
            associativity,
            identity,
            space,
            c,
            conjugacy,
            functional,
            completeness,
            involution,
            c_in_space,
        }
    }

    pub fn self_conjugated(&self) -> bool {
        self.conjugacy.as_ref().is_some_and(SelfConjugacyReport::passes)
    }

    pub fn involutive(&self) -> bool {
        self.involution.as_ref().is_some_and(|r| r.is_involution)
    }

    pub fn checks(&self, algebra: &Algebra) -> Vec<Check> {
        let mut checks = Vec::new();
        let a = &self.associativity;
        checks.push(if a.is_associative() {
            Check::new("associative", true, "")
        } else {
            Check::new(
                "associative",
                false,
                format!("{} violation(s); triples {}", a.violation_count(), join_indices(&a.triples)),
            )
        });
        checks.push(match &self.identity {
            Some(e) => Check::new("unital", true, format!("I = {}", format_element(algebra, e))),
            None => Check::new("unital", false, "no identity element"),
        });
        let rank = self.space.len();
        checks.push(match (&self.c, &self.conjugacy) {
            (Some((_, source)), Some(r)) if r.passes() => {
                Check::new("self-conjugated", true, format!("C from {source}; solution space rank {rank}"))
            }
            (Some((_, source)), Some(r)) => {
                let mut why = Vec::new();
                if !r.symmetric {
                    why.push("not symmetric".to_string());
                }
                if !r.invertible {
                    why.push("singular".to_string());
                }
                if !r.intertwining_violations.is_empty() {
                    why.push(format!("L_i C != C R_i for i in {:?}", r.intertwining_violations));
                }
                if !r.opposite_violations.is_empty() {
                    why.push(format!("opposite relation fails for i in {:?}", r.opposite_violations));
                }
                Check::new("self-conjugated", false, format!("C from {source}: {}", why.join("; ")))
            }
            _ => Check::new(
                "self-conjugated",
                false,
                format!("no invertible C found in a solution space of rank {rank}"),
            ),
        });
        if let (Some((_, source)), Some(inside)) = (&self.c, self.c_in_space) {
            checks.push(Check::new(
                "C in solution space",
                inside,
                format!("{source} C {} the solver's span", if inside { "lies in" } else { "is outside" }),
            ));
        }
        checks.push(match &self.completeness {
            Some(r) if r.holds() => Check::new("completeness", true, "both orderings equal the identity"),
            Some(r) => Check::new(
                "completeness",
                false,
                format!("ket-bra {}; bra-ket {}", join_indices(&r.ket_bra), join_indices(&r.bra_ket)),
            ),
            None => Check::new("completeness", false, "needs an identity and an invertible C"),
        });
        if let Some(r) = &self.involution {
            let pass = r.unitary_symmetric.unwrap_or(true);
            let detail = match r.unitary_symmetric {
                None => "star-representation condition does not hold".to_string(),
                Some(true) => "star-representation holds; C is unitary and symmetric".to_string(),
                Some(false) => "star-representation holds but C is not unitary symmetric".to_string(),
            };
            checks.push(Check::new("star-representation", pass, detail));
        }
        checks
    }

    pub fn integral(&self) -> Vec<String> {
        self.functional
            .as_ref()
            .map(|f| f.values().iter().map(Scalar::to_string).collect())
            .unwrap_or_default()
    }

    pub fn report(&self, algebra: &Algebra) -> Report {
        Report {
            checks: self.checks(algebra),
            c_rank: self.space.len(),
            integral: self.integral(),
            result: None,
        }
    }

    pub fn properties(&self) -> ExpectedProperties {
        ExpectedProperties {
            associative: self.associativity.is_associative(),
            unital: self.identity.is_some(),
            self_conjugated: self.self_conjugated(),
            involutive: self.involutive(),
        }
    }
}

/// The `check` pipeline.
pub fn check(algebra: &Algebra, supplied: Option<(CMatrix, CSource)>, policy: &PickPolicy) -> Report {
    let analysis = Analysis::run(algebra, supplied, policy);
    let mut report = analysis.report(algebra);
    report.result = analysis.involution.as_ref().map(|r| {
        json!({
            "involutive": r.is_involution,
            "star_rep": r.star_rep_check,
        })
    });
    report
}

/// Runs the pipeline on a catalog entry with its pinned C and compares the
/// outcome to the entry's expected properties.
pub fn check_entry(entry: &CatalogEntry, policy: &PickPolicy) -> Report {
    let supplied = entry.pinned_c.clone().map(|c| (c, CSource::Pinned));
    let analysis = Analysis::run(&entry.algebra, supplied, policy);
    let mut report = analysis.report(&entry.algebra);
    let got = analysis.properties();
    let describe = |p: &ExpectedProperties| {
        format!(
            "associative={} unital={} self-conjugated={} involutive={}",
            p.associative, p.unital, p.self_conjugated, p.involutive
        )
    };
    let detail = if got == entry.expected {
        describe(&got)
    } else {
        format!("expected {}; got {}", describe(&entry.expected), describe(&got))
    };
    report
        .checks
        .push(Check::new("expected properties", got == entry.expected, detail));
    report.result = Some(json!({ "entry": entry.name.to_string(), "involutive": got.involutive }));
    report
}

/// Runs [`check_entry`] on each name; `c_rank` and `integral` are left empty.
pub fn check_catalog(names: &[CatalogName], policy: &PickPolicy) -> Result<Report> {
    let mut checks = Vec::new();
    for name in names {
        let entry = name.build()?;
        let report = check_entry(&entry, policy);
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let detail = if failed.is_empty() {
            format!("dim {}, c_rank {}", entry.algebra.dim(), report.c_rank)
        } else {
            format!("failed: {}", failed.join(", "))
        };
        checks.push(Check::new(name.to_string(), failed.is_empty(), detail));
    }
    Ok(Report {
        checks,
        c_rank: 0,
        integral: Vec::new(),
        result: None,
    })
}

/// The `cmatrix` pipeline: the solution space and the chosen C.
pub fn cmatrix(algebra: &Algebra, supplied: Option<(CMatrix, CSource)>, policy: &PickPolicy) -> Report {
    let analysis = Analysis::run(algebra, supplied, policy);
    let mut report = analysis.report(algebra);
    report.checks.retain(|c| c.name == "self-conjugated" || c.name == "C in solution space");
    report.result = analysis.c.as_ref().map(|(c, source)| {
        json!({
            "source": source.to_string(),
            "c": matrix_rows(c.matrix()),
            "space": analysis.space.iter().map(matrix_rows).collect::<Vec<_>>(),
        })
    });
    report
}

fn functional_or_report(
    algebra: &Algebra,
    supplied: Option<(CMatrix, CSource)>,
    policy: &PickPolicy,
) -> std::result::Result<(Analysis, IntegralFunctional), Report> {
    let analysis = Analysis::run(algebra, supplied, policy);
    match analysis.functional.clone() {
        Some(f) => Ok((analysis, f)),
        None => {
            let mut report = analysis.report(algebra);
            report.checks.push(Check::new("integral", false, "no integral functional is defined"));
            Err(report)
        }
    }
}

/// `∫f` for the given coefficient vector.
pub fn integrate(
    algebra: &Algebra,
    supplied: Option<(CMatrix, CSource)>,
    policy: &PickPolicy,
    f: &AlgebraElement,
) -> Result<Report> {
    algebra.check_element(f)?;
    let (analysis, functional) = match functional_or_report(algebra, supplied, policy) {
        Ok(x) => x,
        Err(report) => return Ok(report),
    };
    let value = functional.integrate(f)?;
    let mut report = analysis.report(algebra);
    report.checks.retain(|c| c.name == "self-conjugated" || c.name == "completeness");
    report.result = Some(Value::String(value.to_string()));
    Ok(report)
}

/// The derivation space, the inner derivations and the multiplication-algebra closure.
pub fn derivations(algebra: &Algebra) -> Report {
    let space = derivation_space(algebra);
    let inner = inner_derivation_rank(algebra);
    let audits: Vec<usize> = space
        .iter()
        .enumerate()
        .filter(|(_, d)| {
            !is_derivation(algebra, &d.d).is_ok_and(|r| r.is_derivation() && r.forms_agree())
        })
        .map(|(k, _)| k)
        .collect();
    let closed = multiplication_algebra_closed(algebra);
    let checks = vec![
        Check::new(
            "leibniz",
            audits.is_empty(),
            if audits.is_empty() {
                format!("{} basis derivation(s) satisfy both forms", space.len())
            } else {
                format!("basis derivations {audits:?} fail the audit")
            },
        ),
        Check::new(
            "multiplication algebra",
            closed,
            if closed { "commutators of R_i close on span{R_i}" } else { "not closed" },
        ),
    ];
    Report {
        checks,
        c_rank: find_c(algebra, &PickPolicy::default()).0.len(),
        integral: Vec::new(),
        result: Some(json!({
            "rank": space.len(),
            "inner_rank": inner,
            "basis": space.iter().map(|d| matrix_rows(&d.d)).collect::<Vec<_>>(),
        })),
    }
}

/// `∫Dx_i` for every `i`, with a check that all vanish.
pub fn ibp(
    algebra: &Algebra,
    supplied: Option<(CMatrix, CSource)>,
    policy: &PickPolicy,
    d: &SquareMatrix,
) -> Result<Report> {
    let derivation = is_derivation(algebra, d)?;
    let (analysis, functional) = match functional_or_report(algebra, supplied, policy) {
        Ok(x) => x,
        Err(report) => return Ok(report),
    };
    let values = d.apply(functional.values());
    let holds = values.iter().all(Scalar::is_zero);
    let mut report = analysis.report(algebra);
    report.checks.retain(|c| c.name == "self-conjugated");
    report.checks.push(Check::new(
        "derivation",
        derivation.is_derivation(),
        if derivation.is_derivation() {
            String::new()
        } else {
            format!("Leibniz fails at {}", join_indices(&derivation.leibniz_violations))
        },
    ));
    report.checks.push(Check::new(
        "integration by parts",
        holds,
        if holds { "∫D(x_i) = 0 for all i".to_string() } else { "some ∫D(x_i) is nonzero".to_string() },
    ));
    report.result = Some(json!(values.iter().map(Scalar::to_string).collect::<Vec<_>>()));
    Ok(report)
}

fn theorem_json(t: &TheoremReport) -> Value {
    let exp = t.exponentiated.as_ref().map(|(path, samples)| {
        let path = match path {
            ExponentPath::Nilpotent { index, degree_bound } => {
                json!({ "kind": "nilpotent", "index": index, "degree_bound": degree_bound })
            }
            ExponentPath::DiagonalInteger => json!({ "kind": "diagonal" }),
        };
        json!({
            "path": path,
            "samples": samples
                .iter()
                .map(|s| json!({ "parameter": s.parameter.to_string(), "invariant": s.invariant }))
                .collect::<Vec<_>>(),
        })
    });
    json!({
        "ibp": t.ibp,
        "infinitesimal": t.infinitesimal,
        "exponentiated": t.exponentiated_leg(),
        "exponent": exp,
    })
}

/// The three equivalent conditions on a derivation; the check is that they agree.
pub fn theorem(
    algebra: &Algebra,
    supplied: Option<(CMatrix, CSource)>,
    policy: &PickPolicy,
    d: &SquareMatrix,
) -> Result<Report> {
    let (analysis, functional) = match functional_or_report(algebra, supplied, policy) {
        Ok(x) => x,
        Err(report) => return Ok(report),
    };
    let t = theorem_roundtrip(algebra, &functional, d)?;
    let mut report = analysis.report(algebra);
    report.checks.retain(|c| c.name == "self-conjugated");
    let leg = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    report.checks.push(Check::new(
        "legs agree",
        t.legs_agree(),
        format!(
            "ibp={} infinitesimal={} exponentiated={}",
            t.ibp,
            t.infinitesimal,
            leg(t.exponentiated_leg())
        ),
    ));
    report.result = Some(theorem_json(&t));
    Ok(report)
}

/// Inner derivation generated by a basis element or an arbitrary element.
pub fn inner_matrix(algebra: &Algebra, a: &AlgebraElement) -> Result<SquareMatrix> {
    Ok(inner_derivation(algebra, a)?.d)
}

/// Trace path against the C-matrix path on `G_p`, for `∫θ^{k−1} f(θ)`.
pub fn paragrassmann_integral(p: usize, coeffs: &[Scalar], shift: usize) -> Result<Report> {
    let trace = paragrassmann::trace_integral_shifted(p, coeffs, shift)?;
    let g = paragrassmann::ParagrassmannAlgebra::new(p)?;
    let c = paragrassmann::antidiagonal_c(p);
    let functional = IntegralFunctional::new(g.algebra(), &c)?;
    let field = Field::Rational;
    let theta_power = AlgebraElement::basis(p + 1, &field, shift - 1);
    let product = g.algebra().multiply(&theta_power, &AlgebraElement::new(coeffs.to_vec()))?;
    let direct = functional.integrate(&product)?;
    let equal = trace == direct;
    Ok(Report {
        checks: vec![Check::new(
            "trace path = direct path",
            equal,
            format!("trace {trace}, direct {direct}"),
        )],
        c_rank: find_c(g.algebra(), &PickPolicy::default()).0.len(),
        integral: functional.values().iter().map(Scalar::to_string).collect(),
        result: Some(json!({ "trace": trace.to_string(), "direct": direct.to_string() })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn element_formatting() {
        let a = catalog::matrix_algebra(2).unwrap();
        let q = |n, d| Scalar::from_ratio(n, d, &Field::Rational);
        let e = AlgebraElement::new(vec![q(2, 1), q(-1, 1), q(1, 2), q(0, 1)]);
        assert_eq!(format_element(&a, &e), "2·e11 - e12 + (1/2)·e21");
        assert_eq!(format_element(&a, &AlgebraElement::zero(4, &Field::Rational)), "0");
        let e = AlgebraElement::new(vec![q(-3, 1), q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(format_element(&a, &e), "-3·e11 + e22");
    }

    #[test]
    fn matrix_two_checks_pass() {
        let a = catalog::matrix_algebra(2).unwrap();
        let report = check(&a, None, &PickPolicy::default());
        assert!(report.passes(), "{}", report.to_text());
        assert_eq!(report.c_rank, 1);
        assert_eq!(report.integral, ["1", "0", "0", "1"]);
        assert_eq!(report.check("unital").unwrap().detail, "I = e11 + e22");
    }

    #[test]
    fn non_unital_algebra_fails() {
        let null = Algebra::from_triples("null", Field::Rational, 2, [], None).unwrap();
        let report = check(&null, None, &PickPolicy::default());
        assert!(!report.passes());
        assert!(!report.check("unital").unwrap().pass);
        assert!(report.integral.is_empty());
    }

    #[test]
    fn paragrassmann_paths() {
        let q = |n| Scalar::from_int(n, &Field::Rational);
        let r = paragrassmann_integral(2, &[q(1), q(2), q(3)], 1).unwrap();
        assert!(r.passes());
        assert_eq!(r.result.unwrap()["trace"], "3");
        let r = paragrassmann_integral(2, &[q(1), q(2), q(3)], 2).unwrap();
        assert_eq!(r.result.unwrap()["direct"], "2");
    }
}
