//! Corepresentation matrices: functionals and cocycles as matrix families,
//! the Q-twisted identity, spectral pinching, properness and conjugate
//! symmetrization.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::gfcocycle::{Cocycle, Functional};
use crate::hopf::{tensors_close, Presentation};
use crate::linalg::{is_psd, min_eigenvalue, vconj, Mat, Vector};
use crate::ncalg::{tensor_of, NCPoly, Tensor2, Word};
use crate::report::{Check, Report, Residual};
use crate::scalar::Scalar;

/// A unitary corepresentation matrix with diagonal Q.
#[derive(Clone, Debug, PartialEq)]
pub struct Corep {
    pub label: String,
    pub u: Vec<Vec<NCPoly>>,
    pub q: Vec<Scalar>,
}

impl Corep {
    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// One-dimensional corepresentation spanned by a group-like word.
    pub fn group_like(label: impl Into<String>, w: &Word, one: Scalar) -> Corep {
        Corep { label: label.into(), u: vec![vec![NCPoly::word(w.clone())]], q: vec![one] }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct CorepFamily {
    pub coreps: Vec<Corep>,
}

/// A square scalar matrix per corepresentation.
pub type MatrixFamily = Vec<Vec<Vector>>;

/// eta^beta: for each column j the vectors eta(u_ij), plus (eta^beta)* eta^beta.
#[derive(Clone, Debug)]
pub struct CocycleBlock {
    pub columns: Vec<Vec<Vector>>,
    pub gram: Vec<Vector>,
}

impl CocycleBlock {
    /// The (n * dim) x n matrix whose column j stacks eta(u_1j), ..., eta(u_nj).
    pub fn stacked(&self) -> Mat {
        let cols: Vec<Vector> = self.columns.iter().map(|col| col.iter().flatten().cloned().collect()).collect();
        let rows = cols.first().map_or(0, Vec::len);
        Mat::from_columns(rows, &cols)
    }
}

impl CorepFamily {
    /// Coproduct shape, unitarity under the rewrite system, positive Q.
    pub fn check(&self, pres: &Presentation) -> Report {
        let mut rep = Report::new("coreps");
        let mut delta_fail = None;
        let mut unitary_fail = None;
        let mut q_fail = None;
        for c in &self.coreps {
            let n = c.dim();
            for i in 0..n {
                for j in 0..n {
                    let mut rhs = Tensor2::zero();
                    for k in 0..n {
                        rhs.add_scaled(&Scalar::one(), &tensor_of([&c.u[i][k], &c.u[k][j]]));
                    }
                    if delta_fail.is_none() && !tensors_close(&pres.delta(&c.u[i][j]), &rhs, &pres.tol) {
                        delta_fail = Some(format!("corep `{}` entry ({i},{j})", c.label));
                    }
                    let (mut uu, mut uu2) = (NCPoly::zero(), NCPoly::zero());
                    for k in 0..n {
                        uu.add_assign(&pres.mul(&c.u[i][k], &pres.star(&c.u[j][k])));
                        uu2.add_assign(&pres.mul(&pres.star(&c.u[k][i]), &c.u[k][j]));
                    }
                    let id = if i == j { NCPoly::one() } else { NCPoly::zero() };
                    if unitary_fail.is_none() && (!pres.polys_close(&uu, &id) || !pres.polys_close(&uu2, &id)) {
                        unitary_fail = Some(format!("corep `{}` entry ({i},{j})", c.label));
                    }
                }
                let qi = &c.q[i];
                if q_fail.is_none() && !(qi.is_real() && qi.re_sign() == std::cmp::Ordering::Greater) {
                    q_fail = Some(format!("corep `{}` Q[{i}] = {qi}", c.label));
                }
            }
        }
        rep.push(Check::boolean("coproduct", delta_fail.is_none(), delta_fail));
        rep.push(Check::boolean("unitary", unitary_fail.is_none(), unitary_fail));
        rep.push(Check::boolean("positive-Q", q_fail.is_none(), q_fail));
        rep.set_value("coreps", self.coreps.len());
        rep
    }
}

/// L^beta = (id (x) L)(U^beta).
pub fn functional_matrix(l: &Functional, f: &CorepFamily) -> Result<MatrixFamily> {
    f.coreps.iter().map(|c| c.u.iter().map(|row| row.iter().map(|p| l.eval(p)).collect()).collect()).collect()
}

pub fn cocycle_matrix(pres: &Presentation, c: &Cocycle, f: &CorepFamily) -> Result<Vec<CocycleBlock>> {
    let mut out = Vec::new();
    for corep in &f.coreps {
        let n = corep.dim();
        let columns: Vec<Vec<Vector>> = (0..n)
            .map(|j| (0..n).map(|i| c.eta_eval(pres, &corep.u[i][j])).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Scalar::zero();
                        for k in 0..n {
                            acc += &c.metric.inner(&columns[i][k], &columns[j][k]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        out.push(CocycleBlock { columns, gram });
    }
    Ok(out)
}

/// (q_j / q_i)^(1/2), the entry factor of Q^(-1/2) X Q^(1/2).
fn q_ratio_sqrt(corep: &Corep, i: usize, j: usize) -> Result<Scalar> {
    (&corep.q[j] / &corep.q[i]).pow_rational(&Rational64::new(1, 2))
}

/// L^beta + Q^(-1/2) L^beta Q^(1/2) = -Q^(-1/2) (eta^beta)* eta^beta Q^(1/2).
pub fn qbeta_identity_check(pres: &Presentation, c: &Cocycle, l: &Functional, f: &CorepFamily) -> Result<Report> {
    let mut rep = Report::new("qbeta");
    let lm = functional_matrix(l, f)?;
    let blocks = cocycle_matrix(pres, c, f)?;
    let mut res = Residual::new("qbeta", pres.tol);
    for ((corep, lb), blk) in f.coreps.iter().zip(&lm).zip(&blocks) {
        let n = corep.dim();
        for i in 0..n {
            for j in 0..n {
                let s = q_ratio_sqrt(corep, i, j)?;
                let lhs = &lb[i][j] + &(&s * &lb[i][j]);
                let rhs = -(&s * &blk.gram[i][j]);
                res.observe(&lhs, &rhs, || format!("corep `{}` entry ({i},{j})", corep.label));
            }
        }
    }
    rep.push(res.into_check());
    Ok(rep)
}

/// Groups of indices with equal Q entries.
fn spectral_groups(q: &[Scalar]) -> Vec<usize> {
    let mut reps: Vec<&Scalar> = Vec::new();
    q.iter()
        .map(|x| match reps.iter().position(|r| *r == x) {
            Some(k) => k,
            None => {
                reps.push(x);
                reps.len() - 1
            }
        })
        .collect()
}

/// Sum over spectral projections P_m of Q of P_m X P_m.
pub fn pinch(m: &[Vector], q: &[Scalar]) -> Vec<Vector> {
    let g = spectral_groups(q);
    m.iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if g[i] == g[j] { x.clone() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn pinch_average(m: &MatrixFamily, f: &CorepFamily) -> MatrixFamily {
    m.iter().zip(&f.coreps).map(|(x, c)| pinch(x, &c.q)).collect()
}

/// 2 pinch(L^beta) = -pinch((eta^beta)* eta^beta), plus idempotence of pinching.
pub fn pinch_check(pres: &Presentation, c: &Cocycle, l: &Functional, f: &CorepFamily) -> Result<Report> {
    let mut rep = Report::new("pinch");
    let lm = functional_matrix(l, f)?;
    let blocks = cocycle_matrix(pres, c, f)?;
    let pl = pinch_average(&lm, f);
    let mut res = Residual::new("pinched-identity", pres.tol);
    let mut idem = Residual::new("idempotent", pres.tol);
    for ((corep, x), blk) in f.coreps.iter().zip(&pl).zip(&blocks) {
        let pg = pinch(&blk.gram, &corep.q);
        let again = pinch(x, &corep.q);
        for i in 0..corep.dim() {
            for j in 0..corep.dim() {
                let lhs = &Scalar::from_i64(2) * &x[i][j];
                res.observe(&lhs, &-pg[i][j].clone(), || format!("corep `{}` entry ({i},{j})", corep.label));
                idem.observe(&again[i][j], &x[i][j], || format!("corep `{}` entry ({i},{j})", corep.label));
            }
        }
    }
    rep.push(res.into_check());
    rep.push(idem.into_check());
    rep.set_value(
        "pinched",
        pl.iter()
            .zip(&f.coreps)
            .map(|(m, c)| (c.label.clone(), m.iter().map(|r| r.iter().map(Scalar::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()))
            .collect::<std::collections::BTreeMap<_, _>>(),
    );
    Ok(rep)
}

/// Which form of the properness condition to test.
pub enum ProperInput<'a> {
    Cocycle(&'a Cocycle),
    Functional(&'a Functional),
}

/// Exceptional set at level M: coreps where (eta^beta)* eta^beta >= M I,
/// resp. L^beta <= -M I, fails. Certified only up to the enumerated horizon.
pub fn properness_check(pres: &Presentation, input: ProperInput, f: &CorepFamily, m: &Scalar) -> Result<Report> {
    let mut rep = Report::new("proper");
    let mats: Vec<Vec<Vector>> = match input {
        ProperInput::Cocycle(c) => cocycle_matrix(pres, c, f)?.into_iter().map(|b| b.gram).collect(),
        ProperInput::Functional(l) => functional_matrix(l, f)?
            .into_iter()
            .map(|x| x.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect())
            .collect(),
    };
    let mut exceptional = Vec::new();
    let mut extremes = Vec::new();
    for (corep, x) in f.coreps.iter().zip(&mats) {
        let shifted: Vec<Vector> = x
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, v)| if i == j { v - m } else { v.clone() }).collect())
            .collect();
        let (ok, _) = is_psd(&shifted, &pres.tol);
        extremes.push(min_eigenvalue(x));
        if !ok {
            exceptional.push(corep.label.clone());
        }
    }
    let all = !f.coreps.is_empty() && exceptional.len() == f.coreps.len();
    let verdict = if all { "not proper at horizon" } else { "proper up to horizon" };
    rep.push(
        Check::boolean("certified-outside-exceptional-set", !all, Some(format!("all {} coreps exceptional", f.coreps.len())))
            .with_note(format!("{} of {} coreps exceptional at M = {m}", exceptional.len(), f.coreps.len())),
    );
    rep.set_value("M", m.to_string());
    rep.set_value("exceptional", &exceptional);
    rep.set_value("exceptional_count", exceptional.len());
    rep.set_value("horizon", f.coreps.len());
    rep.set_value("verdict", verdict);
    Ok(rep)
}

/// c (+) conj-cocycle, where the conjugate is eta_bar(g) = conj(eta(R(g*))),
/// pi_op(g) = conj(pi(R(g*))) and R = S o alpha. `pres` must carry
/// alpha = tau_{i/2}.
pub fn conjugate_symmetrize(pres: &Presentation, c: &Cocycle) -> Result<Cocycle> {
    let alg = pres.algebra();
    let mut pi = Vec::new();
    let mut eta = Vec::new();
    for g in 0..pres.ngens() as u16 {
        let r = pres.twisted_antipode(&alg.star_word(&Word::letter(g)));
        if r.degree() > c.cutoff {
            return Err(Error::DegreeExceeded { degree: r.degree(), cutoff: c.cutoff });
        }
        let mut m = Mat::zeros(c.dim, c.dim);
        for (w, coef) in r.terms() {
            m = m.add(&c.pi_word(w).scale(coef));
        }
        pi.push(m.conj());
        eta.push(vconj(&c.eta_eval(pres, &r)?));
    }
    let bar = Cocycle::new(pi, eta, crate::linalg::Metric(c.metric.0.iter().map(Scalar::conj).collect()), c.cutoff, c.truncated);
    Ok(c.direct_sum(&bar))
}

/// Report for a symmetrized cocycle: alpha-reality and monotonicity of
/// (eta^beta)* eta^beta per corep.
pub fn symmetrize_report(
    pres: &Presentation,
    original: &Cocycle,
    sym: &Cocycle,
    max_deg: usize,
    f: Option<&CorepFamily>,
) -> Result<Report> {
    let mut rep = Report::new("symmetrize");
    rep.absorb("symmetrized", sym.is_alpha_real(pres, max_deg)?);
    if let Some(f) = f {
        let a = cocycle_matrix(pres, original, f)?;
        let b = cocycle_matrix(pres, sym, f)?;
        let mut fail = None;
        for ((corep, x), y) in f.coreps.iter().zip(&a).zip(&b) {
            let diff: Vec<Vector> =
                y.gram.iter().zip(&x.gram).map(|(r, s)| r.iter().zip(s).map(|(u, v)| u - v).collect()).collect();
            if !is_psd(&diff, &pres.tol).0 && fail.is_none() {
                fail = Some(format!("corep `{}`", corep.label));
            }
        }
        rep.push(Check::boolean("dominates-original", fail.is_none(), fail));
    }
    rep.set_value("dim", sym.dim);
    Ok(rep)
}
