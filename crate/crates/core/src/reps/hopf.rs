use super::algebra::plus_commutator_rhs;
use super::{GeneratorTriple, PtOperator};
use crate::check::CheckReport;
use crate::error::Result;
use crate::linalg::{kronecker, matrix_exponential, ComplexMatrix};

/// Images of the generators under the coproduct, acting on `V ⊗ V`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub j0: ComplexMatrix,
    pub jplus: ComplexMatrix,
    pub jminus: ComplexMatrix,
}

/// `Δ(J₊) = 1⊗J₊ + J₊⊗1`, `Δ(J₀) = 1⊗J₀ + J₀⊗e^{2zJ₊}`,
/// `Δ(J₋) = 1⊗J₋ + J₋⊗e^{2zJ₊}`.
pub fn coproduct_images(triple: &GeneratorTriple) -> Result<Coproduct> {
    let d = triple.dim();
    let id = ComplexMatrix::identity(d);
    let e = matrix_exponential(&triple.jplus.scale_real(2.0 * triple.z()))?;
    Ok(Coproduct {
        jplus: &kronecker(&id, &triple.jplus) + &kronecker(&triple.jplus, &id),
        j0: &kronecker(&id, &triple.j0) + &kronecker(&triple.j0, &e),
        jminus: &kronecker(&id, &triple.jminus) + &kronecker(&triple.jminus, &e),
    })
}

/// Elements of the algebra needed to write the coproduct and antipode.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Elem {
    J0,
    Plus,
    Minus,
    /// `e^{c J₊}`.
    Exp(f64),
}

/// `coefficient · w₁ w₂ …`; the empty word is the unit.
#[derive(Debug, Clone)]
struct Term {
    coeff: f64,
    word: Vec<Elem>,
}

impl Term {
    fn unit() -> Self {
        Self {
            coeff: 1.0,
            word: Vec::new(),
        }
    }

    fn of(e: Elem) -> Self {
        Self {
            coeff: 1.0,
            word: vec![e],
        }
    }
}

fn counit(e: Elem) -> f64 {
    match e {
        Elem::Exp(_) => 1.0,
        _ => 0.0,
    }
}

fn counit_term(t: &Term) -> f64 {
    t.coeff * t.word.iter().map(|&e| counit(e)).product::<f64>()
}

fn antipode_elem(e: Elem, z: f64) -> Term {
    match e {
        Elem::Plus => Term {
            coeff: -1.0,
            word: vec![Elem::Plus],
        },
        Elem::J0 => Term {
            coeff: -1.0,
            word: vec![Elem::J0, Elem::Exp(-2.0 * z)],
        },
        Elem::Minus => Term {
            coeff: -1.0,
            word: vec![Elem::Minus, Elem::Exp(-2.0 * z)],
        },
        Elem::Exp(c) => Term {
            coeff: 1.0,
            word: vec![Elem::Exp(-c)],
        },
    }
}

/// The antipode reverses products.
fn antipode_term(t: &Term, z: f64) -> Term {
    let mut out = Term {
        coeff: t.coeff,
        word: Vec::new(),
    };
    for &e in t.word.iter().rev() {
        let g = antipode_elem(e, z);
        out.coeff *= g.coeff;
        out.word.extend(g.word);
    }
    out
}

/// `Δ(e)` as a sum of `(left, right)` tensor terms.
fn coproduct_elem(e: Elem, z: f64) -> Vec<(Term, Term)> {
    match e {
        Elem::Plus => vec![(Term::unit(), Term::of(Elem::Plus)), (Term::of(Elem::Plus), Term::unit())],
        Elem::J0 => vec![
            (Term::unit(), Term::of(Elem::J0)),
            (Term::of(Elem::J0), Term::of(Elem::Exp(2.0 * z))),
        ],
        Elem::Minus => vec![
            (Term::unit(), Term::of(Elem::Minus)),
            (Term::of(Elem::Minus), Term::of(Elem::Exp(2.0 * z))),
        ],
        Elem::Exp(c) => vec![(Term::of(Elem::Exp(c)), Term::of(Elem::Exp(c)))],
    }
}

struct Evaluator<'a> {
    triple: &'a GeneratorTriple,
}

impl Evaluator<'_> {
    fn elem(&self, e: Elem) -> Result<ComplexMatrix> {
        Ok(match e {
            Elem::J0 => self.triple.j0.clone(),
            Elem::Plus => self.triple.jplus.clone(),
            Elem::Minus => self.triple.jminus.clone(),
            Elem::Exp(c) => matrix_exponential(&self.triple.jplus.scale_real(c))?,
        })
    }

    fn term(&self, t: &Term) -> Result<ComplexMatrix> {
        let mut m = ComplexMatrix::identity(self.triple.dim());
        for &e in &t.word {
            m = &m * &self.elem(e)?;
        }
        Ok(m.scale_real(t.coeff))
    }
}

/// Checks the coproduct homomorphism, the antipode axiom in both orders, the
/// counit axioms and PT invariance of the generators' commutators and of the
/// coproduct images. Each residual is measured against the magnitude of the
/// products it is built from (for a commutator `[A,B]`, `2‖A‖‖B‖`), floored
/// at 1.
pub fn verify_hopf_axioms(triple: &GeneratorTriple, tol: f64) -> Result<CheckReport> {
    let z = triple.z();
    let d = triple.dim();
    let mut report = CheckReport::new(tol);

    let delta = coproduct_images(triple)?;
    let (j0, jp, jm) = (&delta.j0, &delta.jplus, &delta.jminus);
    let lhs = j0.commutator(jp);
    let rhs = plus_commutator_rhs(jp, z)?;
    let product = |a: &ComplexMatrix, b: &ComplexMatrix| 2.0 * a.frobenius_norm() * b.frobenius_norm();
    report.record("coproduct: [D(J0),D(J+)] = (exp(2zD(J+))-1)/z", lhs.distance(&rhs), product(j0, jp));
    let lhs = j0.commutator(jm);
    let rhs = &(j0 * j0).scale_real(z) - &jm.scale_real(2.0);
    report.record("coproduct: [D(J0),D(J-)] = -2D(J-) + zD(J0)^2", lhs.distance(&rhs), product(j0, jm));
    let lhs = jp.commutator(jm);
    report.record("coproduct: [D(J+),D(J-)] = D(J0)", lhs.distance(j0), product(jp, jm));

    let eval = Evaluator { triple };
    let generators = [
        ("J+", Elem::Plus),
        ("J0", Elem::J0),
        ("J-", Elem::Minus),
        ("exp(2zJ+)", Elem::Exp(2.0 * z)),
    ];
    let id = ComplexMatrix::identity(d);
    for (label, g) in generators {
        let split = coproduct_elem(g, z);
        let target = id.scale_real(counit(g));
        let value = eval.term(&Term::of(g))?;

        let mut left = ComplexMatrix::zeros(d, d);
        let mut right = ComplexMatrix::zeros(d, d);
        let mut scale: f64 = 1.0;
        for (a, b) in &split {
            let sa = eval.term(&antipode_term(a, z))?;
            let ea = eval.term(a)?;
            let eb = eval.term(b)?;
            let sb = eval.term(&antipode_term(b, z))?;
            scale = scale.max(sa.frobenius_norm() * eb.frobenius_norm());
            scale = scale.max(ea.frobenius_norm() * sb.frobenius_norm());
            left += &(&sa * &eb);
            right += &(&ea * &sb);
        }
        report.record(format!("antipode: m(S x id)D({label}) = e({label})"), left.distance(&target), scale);
        report.record(format!("antipode: m(id x S)D({label}) = e({label})"), right.distance(&target), scale);

        let mut counit_left = ComplexMatrix::zeros(d, d);
        let mut counit_right = ComplexMatrix::zeros(d, d);
        for (a, b) in &split {
            counit_left += &eval.term(b)?.scale_real(counit_term(a));
            counit_right += &eval.term(a)?.scale_real(counit_term(b));
        }
        let vscale = value.frobenius_norm();
        report.record(format!("counit: (e x id)D({label}) = {label}"), counit_left.distance(&value), vscale);
        report.record(format!("counit: (id x e)D({label}) = {label}"), counit_right.distance(&value), vscale);
    }

    let pt_single = PtOperator::new(d);
    let t = triple;
    for (label, m) in [
        ("[J0,J+]", t.j0.commutator(&t.jplus)),
        ("[J0,J-]", t.j0.commutator(&t.jminus)),
        ("[J+,J-]", t.jplus.commutator(&t.jminus)),
    ] {
        report.record(format!("PT invariance of {label}"), pt_single.defect(&m), m.frobenius_norm());
    }

    let pt = PtOperator::tensor(d, d);
    for (label, m) in [("D(J0)", j0), ("D(J+)", jp), ("D(J-)", jm)] {
        report.record(format!("PT invariance of {label}"), pt.defect(m), m.frobenius_norm());
    }
    Ok(report)
}
