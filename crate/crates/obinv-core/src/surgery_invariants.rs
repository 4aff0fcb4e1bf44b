//! From an open book and a knot on its page to the full invariant report.
//!
//! The open book is traded for a contact surgery presentation on a link in
//! the tight 3-sphere: one (+1)-surgery curve per α/β basis curve and one
//! contact (∓1/n)-surgery curve per Dehn twist. All invariants are then read
//! off the presentation data: the linking vector `l` of the knot, the
//! generalized linking matrix `Q`, and the rotation vector `r` of the surgery
//! curves.
//!
//! * The knot is nullhomologous iff `l = Q a` has an integral solution, and
//!   rationally nullhomologous iff it has a rational one.
//! * `tb` and `rot` are the page-framed values corrected by the solution `a`.
//! * `H₁` of the surgered manifold is presented by the rows of `Q` acting on
//!   the surgery meridians; the Poincaré dual of the Euler class is the
//!   meridian vector with coefficients `n_i r(T_i)` over the twist curves.
//! * The Euler class is torsion iff `Q b = r` is rationally solvable, in
//!   which case the d3 invariant of the contact structure is defined.

use crate::exact_linalg::{
    determinant, signature, smith_normal_form, solve_integral, solve_rational, IntMatrix,
};
use crate::leveled_linking::{cross_linking, page_framed_tb};
use crate::page_model::{
    homology_class, validate_word, DehnTwist, HomologyClassVector, KnotOnPage, Level, OpenBookSpec,
    PageError, PageSignature, Sign,
};
use crate::rotation_count::rotation_word_count;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Per-twist data entering the presentation: the curve's class, the twist
/// sign and power, and the rotation count of the twist curve's word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistData {
    pub klass: HomologyClassVector,
    pub sign: Sign,
    pub power: u32,
    pub rot_count: i64,
}

impl TwistData {
    fn from_twist(page: PageSignature, twist: &DehnTwist) -> TwistData {
        let (_, rot_count) = rotation_word_count(&twist.curve);
        TwistData {
            klass: homology_class(page, &twist.curve),
            sign: twist.sign,
            power: twist.power,
            rot_count,
        }
    }
}

/// Surgery coefficients of one component, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryCoefficient {
    pub label: String,
    pub contact: BigRational,
    pub topological: BigRational,
}

/// The surgery presentation of (open book, knot): vector `l`, generalized
/// linking matrix `Q`, rotation vector `r`, plus the data they came from.
#[derive(Debug, Clone)]
pub struct SurgeryPresentation {
    pub page: PageSignature,
    pub twists: Vec<TwistData>,
    pub knot_class: HomologyClassVector,
    pub knot_rot_count: i64,
    pub knot_level: Level,
    pub l_vector: Vec<BigInt>,
    pub q_matrix: IntMatrix,
    pub r_vector: Vec<BigInt>,
    pub coefficients: Vec<SurgeryCoefficient>,
}

fn quadratic_form(klass: &HomologyClassVector) -> BigInt {
    -page_framed_tb(klass)
}

fn assemble(
    page: PageSignature,
    twists: Vec<TwistData>,
    knot_class: HomologyClassVector,
    knot_rot_count: i64,
    knot_level: Level,
) -> SurgeryPresentation {
    let g = page.genus();
    let gh = page.arc_count();
    let m = g + gh; // 2g + h background surgery curves
    let lc = twists.len();
    let n = m + lc;

    let mut q = IntMatrix::zeros(n, n);
    for (i, ti) in twists.iter().enumerate() {
        let ni = BigInt::from(ti.power);
        // twist rows against the background columns
        for j in 0..gh {
            q[(m + i, j)] = BigInt::from(-ti.klass.b(j));
        }
        for j in 0..g {
            q[(m + i, gh + j)] = BigInt::from(-(ti.klass.a(j) + ti.klass.b(j)));
        }
        // background rows against the twist columns carry the weight n_i
        for j in 0..gh {
            q[(j, m + i)] = BigInt::from(-ti.klass.b(j)) * &ni;
        }
        for j in 0..g {
            q[(gh + j, m + i)] = BigInt::from(-(ti.klass.a(j) + ti.klass.b(j))) * &ni;
        }
        // diagonal: topological coefficient p_i = n_i tb(T_i) ∓ 1
        let sign = BigInt::from(ti.sign.value());
        q[(m + i, m + i)] = -sign - &ni * quadratic_form(&ti.klass);
        // twist-twist entries: column weight times the linking number, whose
        // bilinear expansion pairs the lower twist's α with the higher's β
        for (j, tj) in twists.iter().enumerate().skip(i + 1) {
            let link = cross_linking(&ti.klass, &tj.klass);
            q[(m + i, m + j)] = BigInt::from(tj.power) * &link;
            q[(m + j, m + i)] = &ni * &link;
        }
    }

    // The knot's page sits either above the whole twist stack or below it.
    // Both placements stay above the background basis curves: pushing the
    // page past them would compose the standard-sphere monodromy into the
    // knot, i.e. describe a different knot of the surgered manifold. Only the
    // twist entries of l feel the choice, through which side of the linking
    // table the knot occupies.
    let mut l_vector = vec![BigInt::zero(); n];
    for j in 0..gh {
        l_vector[j] = BigInt::from(-knot_class.b(j));
    }
    for j in 0..g {
        l_vector[gh + j] = BigInt::from(-(knot_class.a(j) + knot_class.b(j)));
    }
    for (i, ti) in twists.iter().enumerate() {
        l_vector[m + i] = match knot_level {
            Level::High => cross_linking(&ti.klass, &knot_class),
            Level::Low => cross_linking(&knot_class, &ti.klass),
        };
    }

    let mut r_vector = vec![BigInt::zero(); n];
    for (i, ti) in twists.iter().enumerate() {
        r_vector[m + i] = BigInt::from(ti.rot_count);
    }

    let mut coefficients = Vec::with_capacity(n);
    for j in 0..gh {
        coefficients.push(SurgeryCoefficient {
            label: format!("b{}(-1)", j + 1),
            contact: BigRational::one(),
            topological: BigRational::zero(),
        });
    }
    for j in 0..g {
        coefficients.push(SurgeryCoefficient {
            label: format!("a{}(0)", j + 1),
            contact: BigRational::one(),
            topological: BigRational::zero(),
        });
    }
    for (i, ti) in twists.iter().enumerate() {
        let ni = BigInt::from(ti.power);
        let sign = BigInt::from(ti.sign.value());
        let tb = -quadratic_form(&ti.klass);
        coefficients.push(SurgeryCoefficient {
            label: format!("T{}", i + 1),
            contact: BigRational::new(-sign.clone(), ni.clone()),
            topological: BigRational::new(&ni * tb - sign, ni),
        });
    }

    SurgeryPresentation {
        page,
        twists,
        knot_class,
        knot_rot_count,
        knot_level,
        l_vector,
        q_matrix: q,
        r_vector,
        coefficients,
    }
}

/// Builds the surgery presentation of a knot on the page of an open book.
pub fn build_presentation(
    ob: &OpenBookSpec,
    knot: &KnotOnPage,
) -> Result<SurgeryPresentation, PageError> {
    for twist in &ob.monodromy {
        validate_word(ob.page, &twist.curve)?;
    }
    validate_word(ob.page, &knot.word)?;
    let twists = ob
        .monodromy
        .iter()
        .map(|t| TwistData::from_twist(ob.page, t))
        .collect();
    let knot_class = homology_class(ob.page, &knot.word);
    let (_, knot_rot) = rotation_word_count(&knot.word);
    Ok(assemble(ob.page, twists, knot_class, knot_rot, knot.level))
}

/// Replaces every power-n twist by n consecutive single twists along the same
/// curve. The resulting book has the same monodromy and a symmetric
/// generalized linking matrix.
pub fn expand_multiplicities(ob: &OpenBookSpec) -> OpenBookSpec {
    let monodromy = ob
        .monodromy
        .iter()
        .flat_map(|t| {
            let single = DehnTwist {
                curve: t.curve.clone(),
                sign: t.sign,
                power: 1,
            };
            std::iter::repeat_n(single, t.power as usize)
        })
        .collect();
    OpenBookSpec {
        page: ob.page,
        monodromy,
    }
}

impl SurgeryPresentation {
    pub fn background_count(&self) -> usize {
        2 * self.page.genus() + self.page.holes()
    }

    pub fn size(&self) -> usize {
        self.background_count() + self.twists.len()
    }

    pub fn all_powers_one(&self) -> bool {
        self.twists.iter().all(|t| t.power == 1)
    }

    /// The same presentation with every power-n twist expanded into n single
    /// twists.
    pub fn expanded(&self) -> SurgeryPresentation {
        let twists = self
            .twists
            .iter()
            .flat_map(|t| {
                let single = TwistData {
                    power: 1,
                    ..t.clone()
                };
                std::iter::repeat_n(single, t.power as usize)
            })
            .collect();
        assemble(
            self.page,
            twists,
            self.knot_class.clone(),
            self.knot_rot_count,
            self.knot_level,
        )
    }

    /// Meridian coefficients of the Poincaré dual of the Euler class:
    /// `n_i r(T_i)` over the twist meridians, zero over the background.
    pub fn euler_pd_vector(&self) -> Vec<BigInt> {
        let m = self.background_count();
        let mut v = vec![BigInt::zero(); self.size()];
        for (i, t) in self.twists.iter().enumerate() {
            v[m + i] = BigInt::from(t.power) * BigInt::from(t.rot_count);
        }
        v
    }
}

/// Homology verdict for the knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Nullhomologous,
    RationallyNullhomologous,
    NotRationallyNullhomologous,
}

/// Outcome of solving `l = Q a`.
#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    /// Canonical solution (free coordinates zero), when one exists. Integral
    /// for the nullhomologous verdict.
    pub solution: Option<Vec<BigRational>>,
    pub kernel_rank: usize,
    pub solution_unique: bool,
}

/// Decides (rational) nullhomologousness of the knot and returns the
/// canonical solution of `l = Q a` together with the kernel rank.
pub fn classify_and_solve(p: &SurgeryPresentation) -> Classification {
    let integral =
        solve_integral(&p.q_matrix, &p.l_vector).expect("presentation dimensions are consistent");
    if let Some(sol) = integral {
        let kernel_rank = sol.kernel.len();
        return Classification {
            verdict: Verdict::Nullhomologous,
            solution: Some(sol.solution.into_iter().map(BigRational::from).collect()),
            kernel_rank,
            solution_unique: kernel_rank == 0,
        };
    }
    let rational =
        solve_rational(&p.q_matrix, &p.l_vector).expect("presentation dimensions are consistent");
    match rational {
        Some(sol) => {
            let kernel_rank = sol.kernel.len();
            Classification {
                verdict: Verdict::RationallyNullhomologous,
                solution: Some(sol.solution),
                kernel_rank,
                solution_unique: kernel_rank == 0,
            }
        }
        None => {
            let snf = smith_normal_form(&p.q_matrix);
            let kernel_rank = p.q_matrix.cols() - snf.rank();
            Classification {
                verdict: Verdict::NotRationallyNullhomologous,
                solution: None,
                kernel_rank,
                solution_unique: kernel_rank == 0,
            }
        }
    }
}

/// Thurston–Bennequin invariant: the page framing corrected by the Seifert
/// solution, `tb = −q(K) − Σ_{j≤2g+h} a_j l_j − Σ_i a_{2g+h+i} n_i l_{2g+h+i}`.
pub fn tb_invariant(p: &SurgeryPresentation, solution: &[BigRational]) -> BigRational {
    let m = p.background_count();
    let mut tb = BigRational::from(page_framed_tb(&p.knot_class));
    for j in 0..m {
        tb -= &solution[j] * BigRational::from(p.l_vector[j].clone());
    }
    for (i, t) in p.twists.iter().enumerate() {
        let weight = BigRational::from(BigInt::from(t.power) * &p.l_vector[m + i]);
        tb -= &solution[m + i] * weight;
    }
    tb
}

/// Rotation number with respect to the Seifert class of the solution:
/// `rot = r(K) − Σ_i a_{2g+h+i} n_i r(T_i)`.
pub fn rot_invariant(p: &SurgeryPresentation, solution: &[BigRational]) -> BigRational {
    let mut rot = BigRational::from(BigInt::from(p.knot_rot_count));
    for (coeff, a) in p.euler_pd_vector().iter().zip(solution) {
        rot -= a * BigRational::from(coeff.clone());
    }
    rot
}

/// Self-linking numbers of the positive and negative transverse push-offs,
/// `sl± = tb ∓ rot`.
pub fn self_linking(tb: &BigRational, rot: &BigRational) -> (BigRational, BigRational) {
    (tb - rot, tb + rot)
}

/// The Poincaré dual of the Euler class inside `H₁` of the surgered manifold,
/// in Smith normal form coordinates of the presentation by the rows of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerClass {
    /// Diagonal of the Smith form of the relation matrix: `H₁ ≅ ⊕ Z/d_i`
    /// (with `Z/0 = Z` and `Z/1` trivial).
    pub h1_diagonal: Vec<BigInt>,
    /// Coordinates of the class, reduced mod `d_i` on torsion summands.
    pub pd_coords: Vec<BigInt>,
    pub is_zero: bool,
}

impl EulerClass {
    /// Invariant factors of `H₁` other than 1; zeros stand for free summands.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.h1_diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.h1_diagonal.iter().filter(|d| d.is_zero()).count()
    }

    /// Order of the class in `H₁`; `None` means infinite order.
    pub fn order(&self) -> Option<BigInt> {
        let mut order = BigInt::one();
        for (d, c) in self.h1_diagonal.iter().zip(&self.pd_coords) {
            if d.is_zero() {
                if !c.is_zero() {
                    return None;
                }
            } else if !c.is_zero() {
                let part = d / d.gcd(c);
                order = order.lcm(&part);
            }
        }
        Some(order)
    }
}

/// Computes the Euler class data of the supported contact structure.
///
/// `H₁(M)` is the quotient of the free group on all surgery meridians by the
/// rows of `Q`; the class vector is mapped into Smith coordinates and
/// `is_zero` reports membership in the relation span.
pub fn euler_class(p: &SurgeryPresentation) -> EulerClass {
    let relations = p.q_matrix.transpose();
    let snf = smith_normal_form(&relations);
    let v = p.euler_pd_vector();
    let w = snf.u.mul_vec(&v);
    let n = p.size();
    let mut h1_diagonal = snf.diagonal();
    h1_diagonal.resize(n, BigInt::zero());
    let pd_coords: Vec<BigInt> = w
        .iter()
        .zip(&h1_diagonal)
        .map(|(wi, di)| {
            if di.is_zero() {
                wi.clone()
            } else {
                wi.mod_floor(di)
            }
        })
        .collect();
    let is_zero = pd_coords.iter().all(Zero::is_zero);
    EulerClass {
        h1_diagonal,
        pd_coords,
        is_zero,
    }
}

/// Whether the Euler class is torsion: rational solvability of `Q b = r`.
pub fn euler_is_torsion(p: &SurgeryPresentation) -> bool {
    solve_rational(&p.q_matrix, &p.r_vector)
        .expect("presentation dimensions are consistent")
        .is_some()
}

/// The d3 invariant of the supported contact structure, when the Euler class
/// is torsion; `None` otherwise.
///
/// Evaluated on the multiplicity-expanded presentation, where the linking
/// matrix is symmetric and its signature is defined:
/// `d3 = g + h/2 + (Σ_i [n_i b_i r(T_i) − (3 − n_i) sign_i])/4 − 3σ(Q)/4 − 1/2`.
pub fn d3_invariant(p: &SurgeryPresentation) -> Option<BigRational> {
    let expanded;
    let pe = if p.all_powers_one() {
        p
    } else {
        expanded = p.expanded();
        &expanded
    };
    let b = solve_rational(&pe.q_matrix, &pe.r_vector)
        .expect("presentation dimensions are consistent")?
        .solution;
    let m = pe.background_count();
    let mut sum = BigRational::zero();
    for (i, t) in pe.twists.iter().enumerate() {
        sum += &b[m + i] * BigRational::from(BigInt::from(t.rot_count));
        sum -= BigRational::from(BigInt::from(2 * t.sign.value()));
    }
    let sigma = signature(&pe.q_matrix).expect("expanded linking matrix is symmetric");
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let g = BigRational::from(BigInt::from(pe.page.genus() as i64));
    let half_h = BigRational::new(BigInt::from(pe.page.holes() as i64), BigInt::from(2));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Some(g + half_h + &quarter * sum - BigRational::from(BigInt::from(3 * sigma)) * quarter - half)
}

/// Everything the pipeline computes about one (open book, knot) pair.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub verdict: Verdict,
    pub tb: Option<BigRational>,
    pub rot: Option<BigRational>,
    pub sl_plus: Option<BigRational>,
    pub sl_minus: Option<BigRational>,
    pub solution_unique: bool,
    pub euler: EulerClass,
    pub euler_torsion: bool,
    pub d3: Option<BigRational>,
}

/// Runs the whole pipeline: presentation, classification, knot invariants,
/// Euler class and d3.
pub fn full_report(ob: &OpenBookSpec, knot: &KnotOnPage) -> Result<InvariantReport, PageError> {
    let p = build_presentation(ob, knot)?;
    Ok(report_from_presentation(&p))
}

/// The invariant report of an already-built presentation.
pub fn report_from_presentation(p: &SurgeryPresentation) -> InvariantReport {
    let class = classify_and_solve(p);
    let (tb, rot) = match &class.solution {
        Some(a) => (Some(tb_invariant(p, a)), Some(rot_invariant(p, a))),
        None => (None, None),
    };
    let (sl_plus, sl_minus) = match (&tb, &rot) {
        (Some(tb), Some(rot)) => {
            let (p, m) = self_linking(tb, rot);
            (Some(p), Some(m))
        }
        _ => (None, None),
    };
    let euler = euler_class(p);
    let euler_torsion = euler_is_torsion(p);
    let d3 = d3_invariant(p);
    debug_assert_eq!(
        d3.is_some(),
        euler_torsion,
        "torsion test and d3 solve disagree"
    );
    InvariantReport {
        verdict: class.verdict,
        tb,
        rot,
        sl_plus,
        sl_minus,
        solution_unique: class.solution_unique,
        euler,
        euler_torsion,
        d3,
    }
}

/// Determinant of the generalized linking matrix; the manifold is an integer
/// homology sphere exactly when this is ±1.
pub fn presentation_determinant(p: &SurgeryPresentation) -> BigInt {
    determinant(&p.q_matrix).expect("Q is square")
}
