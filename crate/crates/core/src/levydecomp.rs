//! Splitting a cocycle into its Gaussian part G and non-Gaussian part R,
//! and the conjugate-linear operators T and T-dagger.

use crate::error::{Error, Result};
use crate::gfcocycle::{functional_from_cocycle, Cocycle, Functional};
use crate::hopf::Presentation;
use crate::linalg::{axpy, nullspace, solve, vconj, zeros, Mat, Metric, OrthoBasis, Vector};
use crate::ncalg::{NCPoly, Word};
use crate::report::{Check, Report, Residual};
use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub p_g: Mat,
    pub p_r: Mat,
    pub dim_g: usize,
    pub dim_r: usize,
    pub eta_g: Cocycle,
    pub eta_r: Cocycle,
    pub l: Functional,
    pub l_g: Functional,
    pub l_r: Functional,
    pub report: Report,
}

/// Joint kernel of pi(g) - eps(g) I over generators.
pub fn gaussian_subspace(pres: &Presentation, c: &Cocycle) -> OrthoBasis {
    let mut rows = Vec::new();
    for g in 0..pres.ngens() as u16 {
        let m = c.pi[g as usize].sub(&Mat::identity(c.dim).scale(pres.epsilon_image(g)));
        rows.extend(m.to_dense());
    }
    let ker = nullspace(&rows, c.dim, &pres.tol);
    OrthoBasis::spanned_by(c.metric.clone(), pres.tol, ker)
}

/// Smallest pi-invariant subspace containing (pi(g) - eps(g)) eta(w) for
/// generators g and normal words |w| <= max_deg. These vectors are
/// eta((g - eps(g))(w - eps(w))), so the span lies in eta(K2).
pub fn nongaussian_subspace(pres: &Presentation, c: &Cocycle, max_deg: usize) -> Result<OrthoBasis> {
    let mut basis = OrthoBasis::new(c.metric.clone(), pres.tol);
    let mut queue: Vec<Vector> = Vec::new();
    for w in pres.algebra().normal_words(max_deg) {
        let v = c.eta_word(pres, &w)?;
        for g in 0..pres.ngens() as u16 {
            let mut x = c.pi[g as usize].mul_vec(&v);
            axpy(&mut x, &-pres.epsilon_image(g).clone(), &v);
            if let Some(i) = basis.add(&x) {
                queue.push(basis.vecs[i].clone());
            }
        }
    }
    while let Some(v) = queue.pop() {
        for g in 0..pres.ngens() as u16 {
            let x = c.pi[g as usize].mul_vec(&v);
            if let Some(i) = basis.add(&x) {
                queue.push(basis.vecs[i].clone());
            }
        }
    }
    Ok(basis)
}

pub fn decompose(pres: &Presentation, c: &Cocycle) -> Result<Decomposition> {
    let mut rep = Report::new("decompose");
    let tol = pres.tol;
    let g = gaussian_subspace(pres, c);
    let r = nongaussian_subspace(pres, c, c.cutoff.saturating_sub(1))?;
    let (dim_g, dim_r) = (g.dim(), r.dim());
    let orth = g.vecs.iter().all(|x| r.vecs.iter().all(|y| c.metric.inner(x, y).is_negligible(&tol)));
    if !orth || dim_g + dim_r != c.dim {
        return Err(Error::NotComplementary(format!(
            "dim G = {dim_g}, dim R = {dim_r}, carrier = {}, orthogonal = {orth}",
            c.dim
        )));
    }
    rep.push(Check::pass("complementary").with_note(format!("dim G = {dim_g}, dim R = {dim_r}")));
    rep.set_value("dim_G", dim_g);
    rep.set_value("dim_R", dim_r);
    if c.cutoff >= 2 {
        let smaller = nongaussian_subspace(pres, c, c.cutoff - 2)?;
        let stable = smaller.dim() == dim_r;
        rep.push(
            Check::pass("window-stability")
                .with_note(if stable { "R unchanged when the window shrinks by one degree".to_string() } else {
                    format!("R has dimension {} on the smaller window; maximality not certified", smaller.dim())
                }),
        );
        rep.set_value("R_window_stable", stable);
    }

    let p_g = g.projection();
    let p_r = r.projection();
    let id = Mat::identity(c.dim);
    let mut proj = Residual::new("projections", tol);
    let sum = p_g.add(&p_r);
    let prod = p_g.mul(&p_r);
    for i in 0..c.dim {
        proj.observe_vec(&sum.row_dense(i), &id.row_dense(i), || format!("P_G + P_R row {i}"));
        proj.observe_vec(&prod.row_dense(i), &zeros(c.dim), || format!("P_G P_R row {i}"));
        for p in [&p_g, &p_r] {
            proj.observe_vec(&p.mul(p).row_dense(i), &p.row_dense(i), || format!("idempotence row {i}"));
            proj.observe_vec(&p.metric_adjoint(&c.metric).row_dense(i), &p.row_dense(i), || {
                format!("self-adjointness row {i}")
            });
        }
    }
    rep.push(proj.into_check());
    let mut inv = Residual::new("invariance", tol);
    for (k, m) in c.pi.iter().enumerate() {
        for p in [&p_g, &p_r] {
            let (a, b) = (p.mul(m), m.mul(p));
            for i in 0..c.dim {
                inv.observe_vec(&a.row_dense(i), &b.row_dense(i), || {
                    format!("generator {} row {i}", pres.algebra().name(k as u16))
                });
            }
        }
    }
    rep.push(inv.into_check());

    let eta_g = c.map_eta(&p_g);
    let eta_r = c.map_eta(&p_r);
    let l = functional_from_cocycle(pres, c)?;
    let l_g = functional_from_cocycle(pres, &eta_g)?;
    let l_r = functional_from_cocycle(pres, &eta_r)?;
    rep.push(l.compare(&l_g.add(&l_r), pres, "L = L_G + L_R"));
    Ok(Decomposition { p_g, p_r, dim_g, dim_r, eta_g, eta_r, l, l_g, l_r, report: rep })
}

impl Decomposition {
    /// alpha-reality of both parts, Gaussianity of L_G, orthogonality of the
    /// parts and triviality of the G-part of eta_R.
    pub fn check_parts(&self, pres: &Presentation, max_deg: usize) -> Result<Report> {
        let mut rep = Report::new("decomposition-parts");
        rep.absorb("eta_G", self.eta_g.is_alpha_real(pres, max_deg)?);
        rep.absorb("eta_R", self.eta_r.is_alpha_real(pres, max_deg)?);
        rep.absorb("L_G", is_gaussian_functional(pres, &self.l_g, self.l_g.cutoff)?);
        let mut orth = Residual::new("orthogonal-parts", pres.tol);
        let mut sum = Residual::new("eta = eta_G + eta_R", pres.tol);
        let words = pres.algebra().normal_words(max_deg);
        let cg: Vec<Vector> = words.iter().map(|w| self.eta_g.eta_word(pres, w)).collect::<Result<_>>()?;
        let cr: Vec<Vector> = words.iter().map(|w| self.eta_r.eta_word(pres, w)).collect::<Result<_>>()?;
        let metric = &self.eta_g.metric;
        for (i, v) in words.iter().enumerate() {
            for (j, w) in words.iter().enumerate() {
                orth.observe(&metric.inner(&cg[i], &cr[j]), &Scalar::zero(), || {
                    format!("({}, {})", pres.word_string(v), pres.word_string(w))
                });
            }
        }
        let base = Cocycle::new(
            self.eta_g.pi.clone(),
            self.eta_g.eta.iter().zip(&self.eta_r.eta).map(|(a, b)| crate::linalg::vadd(a, b)).collect(),
            metric.clone(),
            self.eta_g.cutoff,
            self.eta_g.truncated,
        );
        for (i, w) in words.iter().enumerate() {
            let full = base.eta_word(pres, w)?;
            let parts = crate::linalg::vadd(&cg[i], &cr[i]);
            sum.observe_vec(&full, &parts, || format!("word `{}`", pres.word_string(w)));
        }
        rep.push(orth.into_check());
        rep.push(sum.into_check());
        let g_in_r = gaussian_subspace(pres, &self.eta_r.restrict(pres)?).dim();
        rep.push(Check::boolean("eta_R purely non-Gaussian", g_in_r == 0, Some(format!("G-part of dimension {g_in_r}"))));
        Ok(rep)
    }
}

/// Products (v - eps(v))(w - eps(w)) of nonempty normal words with total
/// degree at most `max_deg`; these span K2 up to that degree.
fn k2_spanning(pres: &Presentation, max_deg: usize) -> Vec<(Word, Word, NCPoly)> {
    let words: Vec<Word> = pres.algebra().normal_words(max_deg).into_iter().filter(|w| !w.is_empty()).collect();
    let shifted = |w: &Word| {
        let mut p = NCPoly::word(w.clone());
        p.add_term(Word::unit(), &-pres.epsilon_word(w));
        p
    };
    let mut out = Vec::new();
    for v in &words {
        for w in &words {
            if v.len() + w.len() <= max_deg {
                out.push((v.clone(), w.clone(), pres.mul(&shifted(v), &shifted(w))));
            }
        }
    }
    out
}

/// L(x* x) = 0 on a spanning set of K2 up to `max_deg`.
pub fn is_gaussian_functional(pres: &Presentation, l: &Functional, max_deg: usize) -> Result<Report> {
    let mut rep = Report::new("gaussian-functional");
    let mut res = Residual::new("gaussian-functional", pres.tol);
    for (v, w, x) in k2_spanning(pres, max_deg) {
        let val = l.eval(&pres.mul(&pres.star(&x), &x))?;
        res.observe(&val, &Scalar::zero(), || format!("x = ({} - eps)({} - eps)", pres.word_string(&v), pres.word_string(&w)));
    }
    rep.push(res.into_check());
    Ok(rep)
}

/// eta(ab) = eps(a) eta(b) + eta(a) eps(b) on word pairs of total degree at most `max_deg`.
pub fn is_gaussian_cocycle(pres: &Presentation, c: &Cocycle, max_deg: usize) -> Result<Report> {
    let mut rep = Report::new("gaussian-cocycle");
    let mut res = Residual::new("gaussian-cocycle", pres.tol);
    let words = pres.algebra().normal_words(max_deg);
    for a in &words {
        for b in &words {
            if a.len() + b.len() > max_deg {
                continue;
            }
            let lhs = c.eta_eval(pres, &pres.algebra().mul_words(a, b))?;
            let mut rhs = zeros(c.dim);
            axpy(&mut rhs, &pres.epsilon_word(a), &c.eta_word(pres, b)?);
            axpy(&mut rhs, &pres.epsilon_word(b), &c.eta_word(pres, a)?);
            res.observe_vec(&lhs, &rhs, || format!("pair ({}, {})", pres.word_string(a), pres.word_string(b)));
        }
    }
    rep.push(res.into_check());
    Ok(rep)
}

/// Conjugate-linear map x -> A conj(x) fixed by its values on a spanning
/// family; returns A and the pivot indices, or the first inconsistent index.
fn fit_conjugate_linear(
    xs: &[Vector],
    ys: &[Vector],
    metric: &Metric,
    tol: &Tolerance,
) -> std::result::Result<Mat, usize> {
    let dim = metric.dim();
    let zs: Vec<Vector> = xs.iter().map(|x| vconj(x)).collect();
    let mut basis = OrthoBasis::new(metric.clone(), *tol);
    let mut piv = Vec::new();
    for (i, z) in zs.iter().enumerate() {
        if basis.add(z).is_some() {
            piv.push(i);
        }
    }
    let gm: Vec<Vector> = piv.iter().map(|&a| piv.iter().map(|&b| metric.inner(&zs[a], &zs[b])).collect()).collect();
    let sharp: Vec<Vector> = (0..dim).map(|k| piv.iter().map(|&p| &zs[p][k].conj() * &metric.0[k]).collect()).collect();
    let cols = if piv.is_empty() { vec![vec![]; dim] } else { solve(&gm, &sharp, tol).ok_or(0usize)? };
    let mut triples = Vec::new();
    for (b, cb) in cols.iter().enumerate() {
        let mut col = zeros(dim);
        for (k, ck) in cb.iter().enumerate() {
            axpy(&mut col, ck, &ys[piv[k]]);
        }
        triples.extend(col.into_iter().enumerate().map(|(a, x)| (a, b, x)));
    }
    let a = Mat::from_triples(dim, dim, triples);
    for (i, z) in zs.iter().enumerate() {
        let got = a.mul_vec(z);
        if got.iter().zip(&ys[i]).any(|(p, q)| !p.close(q, tol)) {
            return Err(i);
        }
    }
    Ok(a)
}

/// T: eta(w) -> eta(S_alpha(w)*) and T-dagger: eta(w) -> eta(S_alpha(w*)) on
/// the span of eta(words up to `max_deg`).
pub fn check_t_operators(pres: &Presentation, c: &Cocycle, max_deg: usize) -> Result<Report> {
    let mut rep = Report::new("t-operators");
    let words: Vec<Word> = pres.algebra().normal_words(max_deg);
    let xs: Vec<Vector> = words.iter().map(|w| c.eta_word(pres, w)).collect::<Result<_>>()?;
    let mut ty = Vec::new();
    let mut tdy = Vec::new();
    for w in &words {
        let p = NCPoly::word(w.clone());
        ty.push(c.eta_eval(pres, &pres.star(&pres.twisted_antipode(&p)))?);
        tdy.push(c.eta_eval(pres, &pres.twisted_antipode(&pres.star(&p)))?);
    }
    let fit = |ys: &[Vector], name: &str| -> Result<Mat> {
        fit_conjugate_linear(&xs, ys, &c.metric, &pres.tol).map_err(|i| {
            Error::IllDefined(format!("{name} is inconsistent across dependencies at `{}`", pres.word_string(&words[i])))
        })
    };
    let t = fit(&ty, "T")?;
    let td = fit(&tdy, "T-dagger")?;
    rep.push(Check::pass("well-defined").with_note(format!("{} words", words.len())));

    let mut adj = Residual::new("adjointness", pres.tol);
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            let lhs = c.metric.inner(&ty[i], &tdy[j]);
            let rhs = c.metric.inner(&xs[j], &xs[i]);
            adj.observe(&lhs, &rhs, || format!("(T eta({}), T' eta({}))", pres.word_string(a), pres.word_string(b)));
        }
    }
    rep.push(adj.into_check());

    let mut inv = Residual::new("involutive", pres.tol);
    for (i, w) in words.iter().enumerate() {
        for (name, m) in [("T", &t), ("T-dagger", &td)] {
            let once = m.mul_vec(&vconj(&xs[i]));
            let twice = m.mul_vec(&vconj(&once));
            inv.observe_vec(&twice, &xs[i], || format!("{name} twice on eta({})", pres.word_string(w)));
        }
    }
    rep.push(inv.into_check());

    let k2 = k2_spanning(pres, max_deg);
    let k2_vecs: Vec<Vector> = k2.iter().map(|(_, _, x)| c.eta_eval(pres, x)).collect::<Result<_>>()?;
    let span = OrthoBasis::spanned_by(c.metric.clone(), pres.tol, k2_vecs.iter().cloned());
    let mut k2_fail = None;
    for ((v, w, _), x) in k2.iter().zip(&k2_vecs) {
        for (name, m) in [("T", &t), ("T-dagger", &td)] {
            let img = m.mul_vec(&vconj(x));
            if !span.contains(&img) && k2_fail.is_none() {
                k2_fail = Some(format!(
                    "{name} moves eta(({} - eps)({} - eps)) out of eta(K2)",
                    pres.word_string(v),
                    pres.word_string(w)
                ));
            }
        }
    }
    rep.push(Check::boolean("K2-invariance", k2_fail.is_none(), k2_fail));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coquant::conjugate_symmetrize;
    use crate::presets::{cz_eta_n, cz_gaussian, f2_exponent_sum, f2_length, f2_tree, preset_presentation, suq2_generator};

    #[test]
    fn z_is_purely_gaussian() {
        let p = preset_presentation("c-z").unwrap();
        let c = cz_eta_n(&p, 6);
        let d = decompose(&p, &c).unwrap();
        assert_eq!((d.dim_g, d.dim_r), (1, 0));
        assert!(d.report.passed(), "{}", d.report.to_json());
        assert_eq!(d.p_g, Mat::identity(1));
        assert!(d.check_parts(&p, 3).unwrap().passed());
        assert!(is_gaussian_cocycle(&p, &c, 3).unwrap().passed());
        assert!(is_gaussian_functional(&p, &cz_gaussian(&p, 4), 4).unwrap().passed());
    }

    #[test]
    fn tree_has_no_gaussian_part() {
        let p = preset_presentation("c-f2").unwrap();
        let c = f2_tree(&p, 2);
        assert_eq!(gaussian_subspace(&p, &c).dim(), 0);
        let d = decompose(&p, &c).unwrap();
        assert_eq!((d.dim_g, d.dim_r), (0, 16));
        assert!(!is_gaussian_cocycle(&p, &c, 2).unwrap().passed());
        assert!(!is_gaussian_functional(&p, &f2_length(&p, 3), 3).unwrap().passed());
    }

    #[test]
    fn block_sum_splits_exactly() {
        let p = preset_presentation("c-f2").unwrap();
        let c = f2_exponent_sum(&p, 3).direct_sum(&f2_tree(&p, 3));
        let d = decompose(&p, &c).unwrap();
        assert!(d.report.passed(), "{}", d.report.to_json());
        assert_eq!((d.dim_g, d.dim_r), (1, c.dim - 1));
        assert_eq!(d.p_g, Mat::from_triples(c.dim, c.dim, [(0, 0, Scalar::one())]));
        let parts = d.check_parts(&p, 2).unwrap();
        assert!(parts.passed(), "{}", parts.to_json());
    }

    #[test]
    fn t_operators() {
        let p = preset_presentation("c-z").unwrap();
        let rep = check_t_operators(&p, &cz_eta_n(&p, 6), 3).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert!(check_t_operators(&p, &crate::gfcocycle::Cocycle::zero(&p, 1, 4), 3).unwrap().passed());
        let q = preset_presentation("suq2").unwrap();
        let sym = conjugate_symmetrize(&q, &suq2_generator(&q, 6)).unwrap();
        let rep = check_t_operators(&q, &sym, 3).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        let f2 = preset_presentation("c-f2").unwrap();
        let bad = check_t_operators(&f2, &crate::presets::f2_complex(&f2, 6), 3);
        assert!(bad.map_or(true, |r| !r.passed()));
    }
}
