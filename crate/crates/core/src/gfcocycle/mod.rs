//! Cocycles, generating functionals and the correspondence between them.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::hopf::Presentation;
use crate::linalg::{axpy, is_psd, min_eigenvalue, sparse, sparse_rank, zeros, Mat, Metric, OrthoBasis, Vector};
use crate::ncalg::{NCPoly, Word};
use crate::report::{Check, Report, Residual};
use crate::scalar::Scalar;

mod formula;
mod gns;

pub use formula::{
    attempt_functional, formula_forms, functional_from_cocycle, lemma_cocycle_alpha, roundtrip_check,
    tau_reality_transfer, two_cocycle_check, two_form_check,
};
pub use gns::cocycle_from_functional;

/// A cocycle eta for a representation pi on C^dim with a diagonal metric.
///
/// When `truncated` is set, pi is only known on eta(words of degree < cutoff);
/// representation checks are then restricted to that window.
pub struct Cocycle {
    pub dim: usize,
    pub pi: Vec<Mat>,
    pub eta: Vec<Vector>,
    pub metric: Metric,
    pub cutoff: usize,
    pub truncated: bool,
    memo: Mutex<HashMap<Word, Vector>>,
}

impl Clone for Cocycle {
    fn clone(&self) -> Self {
        Cocycle::new(self.pi.clone(), self.eta.clone(), self.metric.clone(), self.cutoff, self.truncated)
    }
}

impl std::fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cocycle")
            .field("dim", &self.dim)
            .field("cutoff", &self.cutoff)
            .field("truncated", &self.truncated)
            .finish()
    }
}

impl Cocycle {
    pub fn new(pi: Vec<Mat>, eta: Vec<Vector>, metric: Metric, cutoff: usize, truncated: bool) -> Cocycle {
        Cocycle { dim: metric.dim(), pi, eta, metric, cutoff, truncated, memo: Mutex::new(HashMap::new()) }
    }

    /// Checks shapes against a presentation.
    pub fn validate_shape(&self, pres: &Presentation) -> Result<()> {
        let n = pres.ngens();
        if self.pi.len() != n || self.eta.len() != n {
            return Err(Error::DimensionMismatch(format!("cocycle must give pi and eta for all {n} generators")));
        }
        for (g, (m, v)) in self.pi.iter().zip(&self.eta).enumerate() {
            if m.nrows() != self.dim || m.ncols() != self.dim || v.len() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator `{}` images do not match dimension {}",
                    pres.algebra().name(g as u16),
                    self.dim
                )));
            }
        }
        if self.cutoff == 0 {
            return Err(Error::DimensionMismatch("cutoff must be at least 1".into()));
        }
        Ok(())
    }

    pub fn zero(pres: &Presentation, dim: usize, cutoff: usize) -> Cocycle {
        let n = pres.ngens();
        let pi = (0..n).map(|g| Mat::identity(dim).scale(pres.epsilon_image(g as u16))).collect();
        Cocycle::new(pi, vec![zeros(dim); n], Metric::identity(dim), cutoff, false)
    }

    /// pi(w) v for a word, applied right to left.
    pub fn pi_word_apply(&self, w: &Word, v: &[Scalar]) -> Vector {
        let mut x = v.to_vec();
        for &g in w.0.iter().rev() {
            x = self.pi[g as usize].mul_vec(&x);
        }
        x
    }

    pub fn pi_apply(&self, a: &NCPoly, v: &[Scalar]) -> Vector {
        let mut acc = zeros(self.dim);
        for (w, c) in a.terms() {
            axpy(&mut acc, c, &self.pi_word_apply(w, v));
        }
        acc
    }

    pub fn pi_word(&self, w: &Word) -> Mat {
        let mut m = Mat::identity(self.dim);
        for &g in w.0.iter().rev() {
            m = self.pi[g as usize].mul(&m);
        }
        m
    }

    /// eta on a word, via eta(g w) = pi(g) eta(w) + eta(g) epsilon(w).
    pub fn eta_word(&self, pres: &Presentation, w: &Word) -> Result<Vector> {
        if w.len() > self.cutoff {
            return Err(Error::DegreeExceeded { degree: w.len(), cutoff: self.cutoff });
        }
        if let Some(v) = self.memo.lock().expect("memo lock").get(w) {
            return Ok(v.clone());
        }
        let v = match w.len() {
            0 => zeros(self.dim),
            1 => self.eta[w.0[0] as usize].clone(),
            _ => {
                let g = w.0[0];
                let rest = Word(w.0[1..].to_vec());
                let mut v = self.pi[g as usize].mul_vec(&self.eta_word(pres, &rest)?);
                axpy(&mut v, &pres.epsilon_word(&rest), &self.eta[g as usize]);
                v
            }
        };
        self.memo.lock().expect("memo lock").insert(w.clone(), v.clone());
        Ok(v)
    }

    pub fn eta_eval(&self, pres: &Presentation, a: &NCPoly) -> Result<Vector> {
        let mut acc = zeros(self.dim);
        for (w, c) in a.terms() {
            axpy(&mut acc, c, &self.eta_word(pres, w)?);
        }
        Ok(acc)
    }

    /// <eta(a), eta(b)>.
    pub fn pairing(&self, pres: &Presentation, a: &NCPoly, b: &NCPoly) -> Result<Scalar> {
        Ok(self.metric.inner(&self.eta_eval(pres, a)?, &self.eta_eval(pres, b)?))
    }

    /// Words whose eta values are used to window checks on truncated cocycles.
    fn window_vectors(&self, pres: &Presentation, max_deg: usize) -> Result<Vec<(Word, Vector)>> {
        pres.algebra()
            .normal_words(max_deg)
            .into_iter()
            .filter(|w| !w.is_empty())
            .map(|w| {
                let v = self.eta_word(pres, &w)?;
                Ok((w, v))
            })
            .collect()
    }

    /// Relation respect of pi and eta, and pi(g*) = pi(g)^dagger.
    pub fn check_welldefined(&self, pres: &Presentation) -> Report {
        let mut rep = Report::new("check-cocycle");
        if let Err(e) = self.validate_shape(pres) {
            rep.push(Check::fail("shape", e.to_string()));
            return rep;
        }
        let alg = pres.algebra();
        let tol = pres.tol;
        let mut eta_res = Residual::new("eta-relations", tol);
        let mut pi_res = Residual::new("pi-relations", tol);
        let window = if self.truncated { self.window_vectors(pres, self.cutoff - 1).unwrap_or_default() } else { vec![] };
        for (k, r) in alg.rewrite_system().rules().iter().enumerate() {
            let lhs_str = alg.word_string(&r.lhs);
            if r.lhs.len() <= self.cutoff {
                let lhs = self.eta_word(pres, &r.lhs);
                let rhs = self.eta_eval(pres, &alg.normal_form(&r.rhs));
                if let (Ok(l), Ok(rv)) = (lhs, rhs) {
                    eta_res.observe_vec(&l, &rv, || format!("rule {k} `{lhs_str}`"));
                }
            }
            if self.truncated {
                for (w, v) in &window {
                    if w.len() + r.lhs.len() > self.cutoff {
                        continue;
                    }
                    let l = self.pi_word_apply(&r.lhs, v);
                    let rv = self.pi_apply(&r.rhs, v);
                    pi_res.observe_vec(&l, &rv, || format!("rule {k} `{lhs_str}` on eta({})", alg.word_string(w)));
                }
            } else {
                let l = self.pi_word(&r.lhs);
                let mut rv = Mat::zeros(self.dim, self.dim);
                for (w, c) in r.rhs.terms() {
                    rv = rv.add(&self.pi_word(w).scale(c));
                }
                for i in 0..self.dim {
                    let (a, b) = (l.row_dense(i), rv.row_dense(i));
                    pi_res.observe_vec(&a, &b, || format!("rule {k} `{lhs_str}` row {i}"));
                }
            }
        }
        rep.push(eta_res.into_check());
        rep.push(pi_res.into_check());

        let mut star_res = Residual::new("pi-star", tol);
        for g in 0..pres.ngens() as u16 {
            let gs = alg.star_gen(g);
            if self.truncated {
                let inner_window: Vec<&(Word, Vector)> =
                    window.iter().filter(|(w, _)| w.len() < self.cutoff).collect();
                let plain: Vec<_> = inner_window.iter().map(|(_, x)| sparse(x)).collect();
                let moved: Vec<_> = inner_window.iter().map(|(_, x)| sparse(&self.pi[g as usize].mul_vec(x))).collect();
                let moved_star: Vec<_> =
                    inner_window.iter().map(|(_, y)| sparse(&self.pi[gs as usize].mul_vec(y))).collect();
                for (a, (w1, _)) in inner_window.iter().enumerate() {
                    for (b, (w2, _)) in inner_window.iter().enumerate() {
                        let lhs = self.metric.inner_sparse(&moved[a], &plain[b]);
                        let rhs = self.metric.inner_sparse(&plain[a], &moved_star[b]);
                        star_res.observe(&lhs, &rhs, || {
                            format!("generator {} on ({}, {})", alg.name(g), alg.word_string(w1), alg.word_string(w2))
                        });
                    }
                }
            } else {
                let adj = self.pi[g as usize].metric_adjoint(&self.metric);
                let other = &self.pi[gs as usize];
                for i in 0..self.dim {
                    star_res.observe_vec(&adj.row_dense(i), &other.row_dense(i), || {
                        format!("pi({})^dagger vs pi({}) row {i}", alg.name(g), alg.name(gs))
                    });
                }
            }
        }
        rep.push(star_res.into_check());

        match self.span_dimension(pres) {
            Ok(k) if k == self.dim => rep.push(Check::pass("nondegenerate")),
            Ok(k) => rep.push(
                Check::pass("nondegenerate")
                    .with_note(format!("warning: eta spans {k} of {} dimensions; restrict to the span", self.dim)),
            ),
            Err(e) => rep.push(Check::indeterminate("nondegenerate", e.to_string())),
        }
        rep
    }

    fn span_basis(&self, pres: &Presentation) -> Result<OrthoBasis> {
        let vs = self.window_vectors(pres, self.cutoff)?;
        Ok(OrthoBasis::spanned_by(self.metric.clone(), pres.tol, vs.into_iter().map(|(_, v)| v)))
    }

    pub fn span_dimension(&self, pres: &Presentation) -> Result<usize> {
        let vs = self.window_vectors(pres, self.cutoff)?;
        Ok(sparse_rank(vs.iter().map(|(_, v)| v), &pres.tol))
    }

    /// Restriction to the span of eta(words up to the cutoff). Returns the
    /// cocycle unchanged if it is already nondegenerate.
    pub fn restrict(&self, pres: &Presentation) -> Result<Cocycle> {
        let b = self.span_basis(pres)?;
        if b.dim() == self.dim {
            return Ok(self.clone());
        }
        let k = b.dim();
        let pi = self
            .pi
            .iter()
            .map(|m| {
                let cols: Vec<Vector> = b.vecs.iter().map(|u| b.coords(&m.mul_vec(u))).collect();
                Mat::from_columns(k, &cols)
            })
            .collect();
        let eta = self.eta.iter().map(|v| b.coords(v)).collect();
        Ok(Cocycle::new(pi, eta, Metric(b.norms.clone()), self.cutoff, self.truncated))
    }

    /// Block direct sum with another cocycle on the same presentation.
    pub fn direct_sum(&self, other: &Cocycle) -> Cocycle {
        let pi = self.pi.iter().zip(&other.pi).map(|(a, b)| a.block_diag(b)).collect();
        let eta = self.eta.iter().zip(&other.eta).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Cocycle::new(
            pi,
            eta,
            self.metric.direct_sum(&other.metric),
            self.cutoff.min(other.cutoff),
            self.truncated || other.truncated,
        )
    }

    /// Applies a linear map to eta, keeping pi; used for projected parts.
    pub fn map_eta(&self, p: &Mat) -> Cocycle {
        let eta = self.eta.iter().map(|v| p.mul_vec(v)).collect();
        Cocycle::new(self.pi.clone(), eta, self.metric.clone(), self.cutoff, self.truncated)
    }

    /// Gram matrix <eta(w_i), eta(w_j)> on the given words.
    pub fn gram(&self, pres: &Presentation, words: &[Word]) -> Result<Vec<Vector>> {
        let vs: Vec<Vector> = words.iter().map(|w| self.eta_word(pres, w)).collect::<Result<_>>()?;
        Ok(vs.iter().map(|x| vs.iter().map(|y| self.metric.inner(x, y)).collect()).collect())
    }

    /// alpha-reality on pairs of normal words up to `max_deg`.
    pub fn is_alpha_real(&self, pres: &Presentation, max_deg: usize) -> Result<Report> {
        let mut rep = Report::new("alpha-real");
        let words = pres.algebra().normal_words(max_deg);
        let alg = pres.algebra();
        let mut lhs_vecs = Vec::new();
        let mut sb = Vec::new();
        let mut sa = Vec::new();
        for w in &words {
            let p = NCPoly::word(w.clone());
            lhs_vecs.push(self.eta_word(pres, w)?);
            sb.push(self.eta_eval(pres, &pres.star(&pres.twisted_antipode(&p)))?);
            sa.push(self.eta_eval(pres, &pres.twisted_antipode(&pres.star(&p)))?);
        }
        let mut res = Residual::new("alpha-real", pres.tol);
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                let lhs = self.metric.inner(&lhs_vecs[i], &lhs_vecs[j]);
                let rhs = self.metric.inner(&sb[j], &sa[i]);
                res.observe(&lhs, &rhs, || format!("pair ({}, {})", alg.word_string(a), alg.word_string(b)));
            }
        }
        rep.push(res.into_check().with_note(format!("{} words up to degree {max_deg}", words.len())));
        Ok(rep)
    }
}

impl Mat {
    /// Dense copy of row i.
    pub fn row_dense(&self, i: usize) -> Vector {
        let mut v = zeros(self.ncols());
        for (j, x) in self.row(i) {
            v[*j] = x.clone();
        }
        v
    }
}

/// A functional stored on all normal words of degree at most 2 * cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub cutoff: usize,
    pub values: BTreeMap<Word, Scalar>,
}

impl Functional {
    pub fn from_fn(pres: &Presentation, cutoff: usize, f: impl Fn(&Word) -> Scalar) -> Functional {
        let values = pres.algebra().normal_words(2 * cutoff).into_iter().map(|w| {
            let v = f(&w);
            (w, v)
        });
        Functional { cutoff, values: values.collect() }
    }

    pub fn zero(pres: &Presentation, cutoff: usize) -> Functional {
        Functional::from_fn(pres, cutoff, |_| Scalar::zero())
    }

    pub fn range(&self) -> usize {
        2 * self.cutoff
    }

    pub fn eval_word(&self, w: &Word) -> Result<Scalar> {
        if w.len() > self.range() {
            return Err(Error::DegreeExceeded { degree: w.len(), cutoff: self.range() });
        }
        self.values.get(w).cloned().ok_or_else(|| Error::MissingValue(format!("{:?}", w.0)))
    }

    /// Value on a polynomial in normal form.
    pub fn eval(&self, a: &NCPoly) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (w, c) in a.terms() {
            acc += &(c * &self.eval_word(w)?);
        }
        Ok(acc)
    }

    /// Checks that every normal word in range carries a value.
    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        for w in pres.algebra().normal_words(self.range()) {
            if !self.values.contains_key(&w) {
                return Err(Error::MissingValue(format!("no value for `{}`", pres.word_string(&w))));
            }
        }
        Ok(())
    }

    /// Restriction to a smaller cutoff.
    pub fn truncate(&self, cutoff: usize) -> Functional {
        let values = self.values.iter().filter(|(w, _)| w.len() <= 2 * cutoff).map(|(w, v)| (w.clone(), v.clone()));
        Functional { cutoff, values: values.collect() }
    }

    pub fn add(&self, other: &Functional) -> Functional {
        let cutoff = self.cutoff.min(other.cutoff);
        let values = self
            .truncate(cutoff)
            .values
            .into_iter()
            .map(|(w, v)| {
                let o = other.values.get(&w).cloned().unwrap_or_else(Scalar::zero);
                (w, &v + &o)
            })
            .collect();
        Functional { cutoff, values }
    }

    /// L((w_i - eps(w_i))^* (w_j - eps(w_j))).
    pub fn k1_pairing(&self, pres: &Presentation, wi: &Word, wj: &Word) -> Result<Scalar> {
        let ei = pres.epsilon_word(wi).conj();
        let ej = pres.epsilon_word(wj);
        let wi_star = pres.algebra().star_word(wi);
        let prod = pres.mul(&wi_star, &NCPoly::word(wj.clone()));
        let mut v = self.eval(&prod)?;
        if !ei.is_zero() {
            v -= &(&ei * &self.eval_word(wj)?);
        }
        if !ej.is_zero() {
            v -= &(&ej * &self.eval(&wi_star)?);
        }
        if !ei.is_zero() && !ej.is_zero() {
            v += &(&(&ei * &ej) * &self.eval_word(&Word::unit())?);
        }
        Ok(v)
    }

    /// Gram matrix on the shifted basis w - eps(w) for 1 <= |w| <= cutoff.
    pub fn k1_gram(&self, pres: &Presentation) -> Result<(Vec<Word>, Vec<Vector>)> {
        let words: Vec<Word> = pres.algebra().normal_words(self.cutoff).into_iter().filter(|w| !w.is_empty()).collect();
        let mut g = vec![zeros(words.len()); words.len()];
        for i in 0..words.len() {
            for j in i..words.len() {
                let v = self.k1_pairing(pres, &words[i], &words[j])?;
                g[j][i] = v.conj();
                g[i][j] = v;
            }
        }
        Ok((words, g))
    }

    /// L(1) = 0, hermitian on the stored range, and PSD on the K1 basis.
    pub fn check_generating(&self, pres: &Presentation) -> Report {
        let mut rep = Report::new("check-generating");
        match self.eval_word(&Word::unit()) {
            Ok(v) if v.is_negligible(&pres.tol) => rep.push(Check::pass("vanishes-at-1")),
            Ok(v) => rep.push(Check::fail("vanishes-at-1", format!("L(1) = {v}"))),
            Err(e) => rep.push(Check::fail("vanishes-at-1", e.to_string())),
        }
        let mut herm = Residual::new("hermitian", pres.tol);
        let mut err = None;
        for (w, v) in &self.values {
            match self.eval(&pres.algebra().star_word(w)) {
                Ok(s) => herm.observe(&s, &v.conj(), || format!("word `{}`", pres.word_string(w))),
                Err(e) => err = Some(e),
            }
        }
        match err {
            Some(e) => rep.push(Check::fail("hermitian", e.to_string())),
            None => rep.push(herm.into_check()),
        }
        match self.k1_gram(pres) {
            Ok((words, g)) => {
                let (ok, min) = is_psd(&g, &pres.tol);
                let min = if g.is_empty() { 0.0 } else { min };
                let c = Check::boolean("conditionally-positive", ok, Some(format!("min eigenvalue {min:e}")))
                    .with_residual(min.min(0.0).abs())
                    .with_note(format!("{} basis words, min eigenvalue {min:e}", words.len()));
                rep.set_value("min_eigenvalue", min);
                rep.push(c);
            }
            Err(e) => rep.push(Check::fail("conditionally-positive", e.to_string())),
        }
        rep
    }

    /// L(S_alpha(w)) = L(w) on stored words.
    pub fn is_salpha_invariant(&self, pres: &Presentation) -> Result<Report> {
        let mut rep = Report::new("salpha-invariant");
        let mut res = Residual::new("salpha-invariant", pres.tol);
        for (w, v) in &self.values {
            let s = self.eval(&pres.twisted_antipode(&NCPoly::word(w.clone())))?;
            res.observe(&s, v, || format!("word `{}`", pres.word_string(w)));
        }
        rep.push(res.into_check());
        Ok(rep)
    }

    /// L(ab) = eps(a)L(b) + L(a)eps(b) + <eta(a*), eta(b)> on pairs of
    /// normal words of degree at most `max_deg`.
    pub fn yields_coboundary(&self, pres: &Presentation, c: &Cocycle, max_deg: usize) -> Result<Report> {
        let mut rep = Report::new("yields-coboundary");
        let words = pres.algebra().normal_words(max_deg);
        let alg = pres.algebra();
        let star_eta: Vec<Vector> =
            words.iter().map(|w| c.eta_eval(pres, &alg.star_word(w))).collect::<Result<_>>()?;
        let etas: Vec<Vector> = words.iter().map(|w| c.eta_word(pres, w)).collect::<Result<_>>()?;
        let mut res = Residual::new("yields-coboundary", pres.tol);
        for (i, a) in words.iter().enumerate() {
            let (ea, la) = (pres.epsilon_word(a), self.eval_word(a)?);
            for (j, b) in words.iter().enumerate() {
                let lhs = self.eval(&alg.mul_words(a, b))?;
                let rhs = &(&(&ea * &self.eval_word(b)?) + &(&la * &pres.epsilon_word(b)))
                    + &c.metric.inner(&star_eta[i], &etas[j]);
                res.observe(&lhs, &rhs, || format!("pair ({}, {})", alg.word_string(a), alg.word_string(b)));
            }
        }
        rep.push(res.into_check().with_note(format!("{} words up to degree {max_deg}", words.len())));
        Ok(rep)
    }

    /// Largest deviation from `other` on the words both store.
    pub fn compare(&self, other: &Functional, pres: &Presentation, name: &str) -> Check {
        let mut res = Residual::new(name, pres.tol);
        for (w, v) in &self.values {
            if let Some(o) = other.values.get(w) {
                res.observe(v, o, || format!("word `{}`", pres.word_string(w)));
            }
        }
        res.into_check()
    }
}

/// Minimal eigenvalue of the K1 Gram matrix, for diagnostics.
pub fn k1_min_eigenvalue(pres: &Presentation, l: &Functional) -> Result<f64> {
    let (_, g) = l.k1_gram(pres)?;
    Ok(if g.is_empty() { 0.0 } else { min_eigenvalue(&g) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{cz_eta_n, cz_gaussian, f2_complex, f2_length, preset_presentation, suq2_generator, u2_drift};
    use num_rational::Rational64;

    /// Signed exponent of a normal word of C[Z].
    fn power(p: &Presentation, w: &Word) -> i64 {
        match w.0.first() {
            Some(&g) if p.algebra().name(g) == "u*" => -(w.len() as i64),
            _ => w.len() as i64,
        }
    }

    fn cz() -> Presentation {
        preset_presentation("c-z").unwrap()
    }

    fn symmetrized_suq2() -> (Presentation, Cocycle) {
        let p = preset_presentation("suq2").unwrap();
        let c = crate::coquant::conjugate_symmetrize(&p, &suq2_generator(&p, 6)).unwrap();
        (p, c)
    }

    #[test]
    fn eta_on_powers() {
        let p = cz();
        let c = cz_eta_n(&p, 8);
        assert_eq!(c.eta_word(&p, &Word::unit()).unwrap(), vec![Scalar::zero()]);
        for w in p.algebra().normal_words(8) {
            assert_eq!(c.eta_word(&p, &w).unwrap(), vec![Scalar::from_i64(power(&p, &w))]);
        }
        let g = p.algebra().parse_word("u").unwrap();
        assert_eq!(c.eta_eval(&p, &p.mul(&NCPoly::word(g.clone()), &NCPoly::one())).unwrap(), c.eta[0]);
        assert!(matches!(c.eta_word(&p, &Word(vec![0; 9])), Err(Error::DegreeExceeded { .. })));
    }

    #[test]
    fn welldefinedness() {
        let p = cz();
        assert!(cz_eta_n(&p, 8).check_welldefined(&p).passed());
        assert!(Cocycle::zero(&p, 2, 4).check_welldefined(&p).passed());
        let mut bad = cz_eta_n(&p, 8);
        bad.eta[1] = vec![Scalar::zero()];
        let bad = Cocycle::new(bad.pi.clone(), bad.eta.clone(), bad.metric.clone(), 8, false);
        let rep = bad.check_welldefined(&p);
        assert!(!rep.passed());
        assert!(rep.failures().any(|f| f.witness.as_deref().unwrap_or("").contains("u u*")), "{}", rep.to_json());
    }

    #[test]
    fn alpha_reality() {
        let p = cz();
        assert!(cz_eta_n(&p, 8).is_alpha_real(&p, 4).unwrap().passed());
        assert!(Cocycle::zero(&p, 1, 4).is_alpha_real(&p, 4).unwrap().passed());
        let twisted = p.with_alpha(vec![Scalar::from_i64(2), Scalar::ratio(1, 2)]).unwrap();
        assert!(!cz_eta_n(&twisted, 8).is_alpha_real(&twisted, 2).unwrap().passed());
    }

    #[test]
    fn gaussian_functional_on_z() {
        let p = cz();
        let c = cz_eta_n(&p, 8);
        let l = functional_from_cocycle(&p, &c).unwrap();
        assert_eq!(l.cutoff, 4);
        for (w, v) in &l.values {
            let n = power(&p, w);
            assert_eq!(*v, Scalar::ratio(-n * n, 2), "word {}", p.word_string(w));
        }
        assert_eq!(l, cz_gaussian(&p, 4));
        let rep = l.yields_coboundary(&p, &c, 4).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.max_residual(), 0.0);
        assert!(l.is_salpha_invariant(&p).unwrap().passed());
        assert!(l.check_generating(&p).passed());
        assert!(cz_gaussian(&p, 3).check_generating(&p).passed());
    }

    #[test]
    fn zero_data() {
        let p = cz();
        let z = Cocycle::zero(&p, 1, 4);
        let l = functional_from_cocycle(&p, &z).unwrap();
        assert!(l.values.values().all(Scalar::is_zero));
        let zl = Functional::zero(&p, 2);
        assert!(zl.check_generating(&p).passed());
        assert!(zl.is_salpha_invariant(&p).unwrap().passed());
        assert!(zl.yields_coboundary(&p, &z, 2).unwrap().passed());
        assert_eq!(cocycle_from_functional(&p, &zl).unwrap().dim, 0);
        assert!(roundtrip_check(&p, &zl).unwrap().0.passed());
        assert!(attempt_functional(&p, &z).passed());
        assert!(two_cocycle_check(&p, &z, 3).unwrap().passed());
    }

    #[test]
    fn negative_functionals() {
        let p = cz();
        let drift = Functional::from_fn(&p, 3, |w| {
            let n = power(&p, w);
            &Scalar::ratio(-n * n, 2) - &Scalar::from_i64(n)
        });
        assert!(!drift.is_salpha_invariant(&p).unwrap().passed());
        let convex = Functional::from_fn(&p, 2, |w| Scalar::from_i64(power(&p, w).pow(2)));
        assert!(!convex.check_generating(&p).passed());
        assert!(matches!(cocycle_from_functional(&p, &convex), Err(Error::NotConditionallyPositive { .. })));
        let steep = Functional::from_fn(&p, 2, |w| Scalar::from_i64(-power(&p, w).pow(2)));
        let rep = steep.yields_coboundary(&p, &cz_eta_n(&p, 4), 2).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn gns_on_z_recovers_gram() {
        let p = cz();
        let l = cz_gaussian(&p, 4);
        let c = cocycle_from_functional(&p, &l).unwrap();
        assert_eq!(c.dim, 1);
        let words = p.algebra().normal_words(4);
        let g = c.gram(&p, &words).unwrap();
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                assert_eq!(g[i][j], Scalar::from_i64(power(&p, a) * power(&p, b)));
            }
        }
        // Same Gram as the closed-form cocycle: unitary equivalence.
        assert_eq!(g, cz_eta_n(&p, 8).gram(&p, &words).unwrap());
        let (rep, _, _) = roundtrip_check(&p, &l).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }

    #[test]
    fn gns_on_free_group_length() {
        let p = preset_presentation("c-f2").unwrap();
        let l = f2_length(&p, 3);
        let rep = l.check_generating(&p);
        assert!(rep.passed(), "{}", rep.to_json());
        let c = cocycle_from_functional(&p, &l).unwrap();
        assert!(l.yields_coboundary(&p, &c, 3).unwrap().passed());
        assert!(c.is_alpha_real(&p, 3).unwrap().passed());
    }

    #[test]
    fn roundtrip_on_u2_drift() {
        let p = preset_presentation("u2").unwrap();
        let c = u2_drift(&p, 4);
        assert!(c.check_welldefined(&p).passed());
        assert!(c.is_alpha_real(&p, 2).unwrap().passed());
        let l = functional_from_cocycle(&p, &c).unwrap();
        let (rep, _, _) = roundtrip_check(&p, &l).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }

    #[test]
    fn theorem_parts_on_symmetrized_suq2() {
        let (p, c) = symmetrized_suq2();
        let l = functional_from_cocycle(&p, &c).unwrap();
        assert!(l.is_salpha_invariant(&p).unwrap().passed());
        assert!(l.check_generating(&p).passed());
        assert!(l.yields_coboundary(&p, &c, 3).unwrap().passed());
        assert!(attempt_functional(&p, &c).passed());
        assert!(two_cocycle_check(&p, &c, 3).unwrap().passed());
        assert!(lemma_cocycle_alpha(&p, &c, 3).unwrap().passed());
    }

    #[test]
    fn non_real_cocycle_is_diagnosed() {
        let p = preset_presentation("c-f2").unwrap();
        let c = f2_complex(&p, 6);
        assert!(c.check_welldefined(&p).passed());
        let rep = attempt_functional(&p, &c);
        assert!(!rep.passed());
        assert!(rep.max_residual() > 1e-6);
        // The two forms agree on every well-defined cocycle.
        assert!(two_form_check(&p, &c, 3).unwrap().passed());
        assert!(lemma_cocycle_alpha(&p, &c, 3).unwrap().passed());
    }

    #[test]
    fn two_cocycle_on_z() {
        let p = cz();
        let rep = two_cocycle_check(&p, &cz_eta_n(&p, 8), 3).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.max_residual(), 0.0);
    }

    #[test]
    fn tau_transfer() {
        let r = |n, d| Rational64::new(n, d);
        let p = cz();
        let c = cz_eta_n(&p, 8);
        for (t, s) in [(r(0, 1), r(1, 1)), (r(1, 3), r(-2, 5)), (r(2, 1), r(0, 1))] {
            assert!(tau_reality_transfer(&p, &c, t, s).unwrap().passed());
        }
        assert!(matches!(tau_reality_transfer(&p, &c, r(1, 2), r(0, 1)), Err(Error::HypothesisViolated(_))));
        let (q, sym) = symmetrized_suq2();
        assert!(tau_reality_transfer(&q, &sym, r(0, 1), r(1, 1)).unwrap().passed());
    }

    #[test]
    fn hermitian_output() {
        let (p, c) = symmetrized_suq2();
        let l = functional_from_cocycle(&p, &c).unwrap();
        for (w, v) in &l.values {
            assert_eq!(l.eval(&p.algebra().star_word(w)).unwrap(), v.conj());
        }
    }
}
