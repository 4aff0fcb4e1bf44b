//! Report documents and their JSON / plain-text renderings.
//!
//! Every exact value is rendered as an integer or a reduced fraction string
//! `"p/q"`; nothing is ever converted to floating point. The JSON and text
//! forms of a report carry identical numeric content.

use crate::input::InputDocument;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use obinv_core::exact_linalg::IntMatrix;
use obinv_core::page_model::{homology_class, KnotOnPage, Level, OpenBookSpec};
use obinv_core::rotation_count::TangencyCount;
use obinv_core::surgery_invariants::{EulerClass, InvariantReport, SurgeryPresentation, Verdict};
use serde::Serialize;

pub fn fraction(x: &BigRational) -> String {
    x.to_string()
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Nullhomologous => "nullhomologous",
        Verdict::RationallyNullhomologous => "rationally_nullhomologous",
        Verdict::NotRationallyNullhomologous => "not_rationally_nullhomologous",
    }
}

fn level_name(l: Level) -> &'static str {
    match l {
        Level::High => "high",
        Level::Low => "low",
    }
}

#[derive(Debug, Serialize)]
pub struct H1Doc {
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
    pub group: String,
}

impl H1Doc {
    pub fn from_euler(e: &EulerClass) -> Self {
        let torsion_factors: Vec<BigInt> = e
            .invariant_factors()
            .into_iter()
            .filter(|d| !num_traits::Zero::is_zero(d))
            .collect();
        let mut parts: Vec<String> = torsion_factors.iter().map(|d| format!("Z/{d}")).collect();
        match e.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let group = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        H1Doc {
            invariant_factors: torsion_factors.iter().map(|d| d.to_string()).collect(),
            free_rank: e.free_rank(),
            group,
        }
    }
}

fn euler_pd_strings(e: &EulerClass) -> Vec<String> {
    e.pd_coords.iter().map(|c| c.to_string()).collect()
}

/// Warnings about inputs the word calculus cannot vouch for.
pub fn collect_warnings(
    ob: &OpenBookSpec,
    knot: &KnotOnPage,
    report: Option<&InvariantReport>,
) -> Vec<String> {
    let mut warnings = Vec::new();
    if homology_class(ob.page, &knot.word).is_zero() {
        warnings.push(
            "knot word has zero homology class on the page; such a curve may be isolating and \
             carry no Legendrian representative"
                .to_string(),
        );
    }
    for (i, t) in ob.monodromy.iter().enumerate() {
        if homology_class(ob.page, &t.curve).is_zero() {
            warnings.push(format!(
                "twist {} curve has zero homology class on the page; such a curve may be isolating",
                i + 1
            ));
        }
    }
    if let Some(r) = report {
        if !r.solution_unique && r.rot.is_some() {
            warnings.push(
                "Seifert class is not unique; tb is independent of the choice but rot is reported \
                 for the canonical solution"
                    .to_string(),
            );
        }
    }
    warnings
}

#[derive(Debug, Serialize)]
pub struct InvariantsDoc {
    pub input: InputDocument,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tb: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rot: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sl_plus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sl_minus: Option<String>,
    pub solution_unique: bool,
    pub h1: H1Doc,
    pub euler_pd: Vec<String>,
    pub euler_is_zero: bool,
    pub euler_torsion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rot_high: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rot_low: Option<String>,
    pub warnings: Vec<String>,
}

impl InvariantsDoc {
    pub fn new(
        input: &InputDocument,
        ob: &OpenBookSpec,
        knot: &KnotOnPage,
        report: &InvariantReport,
        rational: bool,
        both_levels: Option<(Option<BigRational>, Option<BigRational>)>,
    ) -> Self {
        // rational invariants of a not-integrally-nullhomologous knot are
        // reported only on request
        let show_knot_invariants = report.verdict == Verdict::Nullhomologous
            || (report.verdict == Verdict::RationallyNullhomologous && rational);
        let pick = |v: &Option<BigRational>| {
            if show_knot_invariants {
                v.as_ref().map(fraction)
            } else {
                None
            }
        };
        let (rot_high, rot_low) = match both_levels {
            Some((h, l)) if show_knot_invariants => {
                (h.as_ref().map(fraction), l.as_ref().map(fraction))
            }
            _ => (None, None),
        };
        InvariantsDoc {
            input: input.clone(),
            verdict: verdict_name(report.verdict).to_string(),
            tb: pick(&report.tb),
            rot: pick(&report.rot),
            sl_plus: pick(&report.sl_plus),
            sl_minus: pick(&report.sl_minus),
            solution_unique: report.solution_unique,
            h1: H1Doc::from_euler(&report.euler),
            euler_pd: euler_pd_strings(&report.euler),
            euler_is_zero: report.euler.is_zero,
            euler_torsion: report.euler_torsion,
            d3: report.d3.as_ref().map(fraction),
            rot_high,
            rot_low,
            warnings: collect_warnings(ob, knot, Some(report)),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let page = &self.input.page;
        line(
            &mut out,
            "page",
            &format!(
                "genus {}, {} boundary components",
                page.genus,
                page.holes + 1
            ),
        );
        line(
            &mut out,
            "monodromy",
            &format!("{} twists", self.input.monodromy.len()),
        );
        let level = match self.input.knot.level {
            crate::input::LevelDoc::High => "high",
            crate::input::LevelDoc::Low => "low",
        };
        line(
            &mut out,
            "knot",
            &format!("{} (level {level})", self.input.knot.word.join(" ")),
        );
        line(&mut out, "verdict", &self.verdict);
        maybe_line(&mut out, "tb", &self.tb);
        maybe_line(&mut out, "rot", &self.rot);
        maybe_line(&mut out, "sl+", &self.sl_plus);
        maybe_line(&mut out, "sl-", &self.sl_minus);
        maybe_line(&mut out, "rot (high)", &self.rot_high);
        maybe_line(&mut out, "rot (low)", &self.rot_low);
        line(
            &mut out,
            "seifert unique",
            if self.solution_unique { "yes" } else { "no" },
        );
        line(&mut out, "H1(M)", &self.h1.group);
        line(
            &mut out,
            "euler PD",
            &format!("({})", self.euler_pd.join(", ")),
        );
        line(
            &mut out,
            "euler is zero",
            if self.euler_is_zero { "yes" } else { "no" },
        );
        line(
            &mut out,
            "euler torsion",
            if self.euler_torsion { "yes" } else { "no" },
        );
        maybe_line(&mut out, "d3", &self.d3);
        push_warnings(&mut out, &self.warnings);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ContactDoc {
    pub input: InputDocument,
    pub h1: H1Doc,
    pub euler_pd: Vec<String>,
    pub euler_is_zero: bool,
    pub euler_torsion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3: Option<String>,
    pub warnings: Vec<String>,
}

impl ContactDoc {
    pub fn new(
        input: &InputDocument,
        ob: &OpenBookSpec,
        knot: &KnotOnPage,
        report: &InvariantReport,
    ) -> Self {
        ContactDoc {
            input: input.clone(),
            h1: H1Doc::from_euler(&report.euler),
            euler_pd: euler_pd_strings(&report.euler),
            euler_is_zero: report.euler.is_zero,
            euler_torsion: report.euler_torsion,
            d3: report.d3.as_ref().map(fraction),
            warnings: collect_warnings(ob, knot, None),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        line(&mut out, "H1(M)", &self.h1.group);
        line(
            &mut out,
            "euler PD",
            &format!("({})", self.euler_pd.join(", ")),
        );
        line(
            &mut out,
            "euler is zero",
            if self.euler_is_zero { "yes" } else { "no" },
        );
        line(
            &mut out,
            "euler torsion",
            if self.euler_torsion { "yes" } else { "no" },
        );
        maybe_line(&mut out, "d3", &self.d3);
        push_warnings(&mut out, &self.warnings);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CoefficientDoc {
    pub knot: String,
    pub contact: String,
    pub topological: String,
}

#[derive(Debug, Serialize)]
pub struct PresentationDoc {
    pub input: InputDocument,
    pub size: usize,
    pub knot_level: String,
    pub l: Vec<i64>,
    pub q: Vec<Vec<i64>>,
    pub r: Vec<i64>,
    pub coefficients: Vec<CoefficientDoc>,
    pub warnings: Vec<String>,
}

fn to_i64(x: &BigInt) -> Result<i64, String> {
    x.to_i64()
        .ok_or_else(|| format!("presentation entry {x} exceeds the integer render range"))
}

impl PresentationDoc {
    pub fn new(
        input: &InputDocument,
        ob: &OpenBookSpec,
        knot: &KnotOnPage,
        p: &SurgeryPresentation,
    ) -> Result<Self, String> {
        let l = p.l_vector.iter().map(to_i64).collect::<Result<_, _>>()?;
        let r = p.r_vector.iter().map(to_i64).collect::<Result<_, _>>()?;
        let q = matrix_rows(&p.q_matrix)?;
        let coefficients = p
            .coefficients
            .iter()
            .map(|c| CoefficientDoc {
                knot: c.label.clone(),
                contact: fraction(&c.contact),
                topological: fraction(&c.topological),
            })
            .collect();
        Ok(PresentationDoc {
            input: input.clone(),
            size: p.size(),
            knot_level: level_name(p.knot_level).to_string(),
            l,
            q,
            r,
            coefficients,
            warnings: collect_warnings(ob, knot, None),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        line(&mut out, "size", &self.size.to_string());
        line(&mut out, "knot level", &self.knot_level);
        line(&mut out, "l", &format!("({})", join_i64(&self.l)));
        line(&mut out, "r", &format!("({})", join_i64(&self.r)));
        out.push_str("Q:\n");
        let width = self
            .q
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.q {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            out.push_str(&format!("  [ {} ]\n", cells.join(" ")));
        }
        out.push_str("surgery coefficients:\n");
        for c in &self.coefficients {
            out.push_str(&format!(
                "  {:<8} contact {:<6} topological {}\n",
                c.knot, c.contact, c.topological
            ));
        }
        push_warnings(&mut out, &self.warnings);
        out
    }
}

pub fn matrix_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>, String> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| to_i64(&m[(i, j)])).collect())
        .collect()
}

#[derive(Debug, Serialize)]
pub struct HomologyDoc {
    pub input: InputDocument,
    pub q_size: usize,
    pub snf_diagonal: Vec<String>,
    pub h1: H1Doc,
}

impl HomologyDoc {
    pub fn new(
        input: &InputDocument,
        p: &SurgeryPresentation,
        snf_diagonal: &[BigInt],
        euler: &EulerClass,
    ) -> Self {
        HomologyDoc {
            input: input.clone(),
            q_size: p.size(),
            snf_diagonal: snf_diagonal.iter().map(|d| d.to_string()).collect(),
            h1: H1Doc::from_euler(euler),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        line(&mut out, "Q size", &format!("{0} x {0}", self.q_size));
        line(
            &mut out,
            "SNF diagonal",
            &format!("({})", self.snf_diagonal.join(", ")),
        );
        line(&mut out, "H1(M)", &self.h1.group);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct WordRotDoc {
    pub word: Vec<String>,
    pub lambda_plus: usize,
    pub rho_plus: usize,
    pub r: i64,
}

impl WordRotDoc {
    pub fn new(tokens: &[String], count: TangencyCount, r: i64) -> Self {
        WordRotDoc {
            word: tokens.to_vec(),
            lambda_plus: count.lambda_plus,
            rho_plus: count.rho_plus,
            r,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        line(&mut out, "word", &self.word.join(" "));
        line(&mut out, "lambda+", &self.lambda_plus.to_string());
        line(&mut out, "rho+", &self.rho_plus.to_string());
        line(&mut out, "r", &self.r.to_string());
        out
    }
}

fn line(out: &mut String, key: &str, value: &str) {
    out.push_str(&format!("{:<16} {}\n", format!("{key}:"), value));
}

fn maybe_line(out: &mut String, key: &str, value: &Option<String>) {
    if let Some(v) = value {
        line(out, key, v);
    }
}

fn push_warnings(out: &mut String, warnings: &[String]) {
    for w in warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
}

fn join_i64(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
