//! The functional attached to a cocycle and the identities around it.

use std::collections::HashMap;

use num_rational::Rational64;

use super::{Cocycle, Functional};
use crate::error::{Error, Result};
use crate::hopf::Presentation;
use crate::linalg::{axpy, zeros, Vector};
use crate::ncalg::{NCPoly, Word};
use crate::report::{Check, Report, Residual};
use crate::scalar::Scalar;

/// Per-leg caches for the two forms of the defining formula.
struct Legs<'a> {
    pres: &'a Presentation,
    c: &'a Cocycle,
    sa_star: HashMap<Word, Vector>,
    alpha: HashMap<Word, Vector>,
    alpha_star: HashMap<Word, Vector>,
    sa: HashMap<Word, Vector>,
}

impl<'a> Legs<'a> {
    fn new(pres: &'a Presentation, c: &'a Cocycle) -> Self {
        Legs { pres, c, sa_star: HashMap::new(), alpha: HashMap::new(), alpha_star: HashMap::new(), sa: HashMap::new() }
    }

    fn get(
        map: &mut HashMap<Word, Vector>,
        c: &Cocycle,
        pres: &Presentation,
        w: &Word,
        f: impl Fn(&NCPoly) -> NCPoly,
    ) -> Result<Vector> {
        if let Some(v) = map.get(w) {
            return Ok(v.clone());
        }
        let v = c.eta_eval(pres, &f(&NCPoly::word(w.clone())))?;
        map.insert(w.clone(), v.clone());
        Ok(v)
    }

    /// Both sums over the coproduct of w, before the factor -1/(1+lambda_w).
    fn forms(&mut self, w: &Word) -> Result<(Scalar, Scalar)> {
        let (pres, c) = (self.pres, self.c);
        let d = pres.delta_word(w);
        let (mut f1, mut f2) = (Scalar::zero(), Scalar::zero());
        for ([x, y], coef) in d.terms() {
            let a = Self::get(&mut self.sa_star, c, pres, x, |p| pres.star(&pres.twisted_antipode(p)))?;
            let b = Self::get(&mut self.alpha, c, pres, y, |p| pres.alpha(p))?;
            f1 += &(coef * &c.metric.inner(&a, &b));
            let a = Self::get(&mut self.alpha_star, c, pres, x, |p| pres.star(&pres.alpha(p)))?;
            let b = Self::get(&mut self.sa, c, pres, y, |p| pres.twisted_antipode(p))?;
            f2 += &(coef * &c.metric.inner(&a, &b));
        }
        Ok((f1, f2))
    }
}

fn scale_factor(pres: &Presentation, w: &Word) -> Result<Scalar> {
    let d = &Scalar::one() + &pres.alpha_word(w);
    d.try_inv().map(|x| -x).ok_or_else(|| Error::SingularGamma(pres.word_string(w)))
}

/// The two candidate values of L(w): -(1/(1+lambda_w)) times each form.
pub fn formula_forms(pres: &Presentation, c: &Cocycle, w: &Word) -> Result<(Scalar, Scalar)> {
    let (f1, f2) = Legs::new(pres, c).forms(w)?;
    let k = scale_factor(pres, w)?;
    Ok((&k * &f1, &k * &f2))
}

fn both_forms(pres: &Presentation, c: &Cocycle, cutoff: usize) -> Result<Vec<(Word, Scalar, Scalar)>> {
    let mut legs = Legs::new(pres, c);
    pres.algebra()
        .normal_words(2 * cutoff)
        .into_iter()
        .map(|w| {
            let (f1, f2) = legs.forms(&w)?;
            let k = scale_factor(pres, &w)?;
            Ok((w, &k * &f1, &k * &f2))
        })
        .collect()
}

/// L on all normal words of degree at most the cocycle cutoff (rounded down
/// to even), from the first form; the second form must agree.
pub fn functional_from_cocycle(pres: &Presentation, c: &Cocycle) -> Result<Functional> {
    let cutoff = c.cutoff / 2;
    let mut values = std::collections::BTreeMap::new();
    for (w, v1, v2) in both_forms(pres, c, cutoff)? {
        if !v1.close(&v2, &pres.tol) {
            return Err(Error::FormulaMismatch { word: pres.word_string(&w), residual: v1.distance(&v2) });
        }
        values.insert(w, v1);
    }
    Ok(Functional { cutoff, values })
}

/// Runs the defining formula unconditionally and reports how far the
/// candidate is from being a generating functional for c.
pub fn attempt_functional(pres: &Presentation, c: &Cocycle) -> Report {
    let mut rep = Report::new("attempt");
    let cutoff = c.cutoff / 2;
    let rows = match both_forms(pres, c, cutoff) {
        Ok(r) => r,
        Err(e) => {
            rep.push(Check::fail("formula", e.to_string()));
            return rep;
        }
    };
    let mut agree = Residual::new("two-forms", pres.tol);
    for (w, v1, v2) in &rows {
        agree.observe(v1, v2, || format!("word `{}`", pres.word_string(w)));
    }
    rep.push(agree.into_check());
    let l = Functional { cutoff, values: rows.into_iter().map(|(w, v, _)| (w, v)).collect() };
    let mut herm = Residual::new("hermitian", pres.tol);
    for (w, v) in &l.values {
        match l.eval(&pres.algebra().star_word(w)) {
            Ok(s) => herm.observe(&s, &v.conj(), || format!("word `{}`", pres.word_string(w))),
            Err(e) => {
                rep.push(Check::fail("hermitian", e.to_string()));
                break;
            }
        }
    }
    rep.push(herm.into_check());
    let residual_of = |r: Result<Report>, name: &str| match r {
        Ok(r) => r.checks.into_iter().next().unwrap_or_else(|| Check::pass(name)),
        Err(e) => Check::fail(name, e.to_string()),
    };
    rep.push(residual_of(l.yields_coboundary(pres, c, cutoff), "yields-coboundary"));
    rep.push(residual_of(l.is_salpha_invariant(pres), "salpha-invariant"));
    rep.set_value("max_residual", rep.max_residual());
    rep
}

/// GNS followed by the defining formula; compares on the words both cover.
pub fn roundtrip_check(pres: &Presentation, l: &Functional) -> Result<(Report, Cocycle, Functional)> {
    let mut rep = Report::new("roundtrip");
    let c = super::cocycle_from_functional(pres, l)?;
    rep.set_value("dim", c.dim);
    rep.set_value("cocycle_cutoff", c.cutoff);
    rep.set_value("truncated", c.truncated);
    rep.absorb("gns", c.is_alpha_real(pres, l.cutoff.min(c.cutoff))?);
    let back = functional_from_cocycle(pres, &c)?;
    rep.set_value("compared_words", back.values.keys().filter(|w| l.values.contains_key(*w)).count());
    rep.push(back.compare(l, pres, "roundtrip"));
    Ok((rep, c, back))
}

/// Identities obtained by applying eta to the twisted antipode relation,
/// on normal words up to `max_deg`.
pub fn lemma_cocycle_alpha(pres: &Presentation, c: &Cocycle, max_deg: usize) -> Result<Report> {
    let mut rep = Report::new("cocycle-alpha-identities");
    let alg = pres.algebra();
    let names = ["(i)", "(ii)", "(iii)", "(iv)"];
    let mut res: Vec<Residual> = names.iter().map(|n| Residual::new(format!("lemma {n}"), pres.tol)).collect();
    for w in alg.normal_words(max_deg) {
        let a = NCPoly::word(w.clone());
        let d = pres.delta_word(&w);
        let mut rhs = [zeros(c.dim), zeros(c.dim), zeros(c.dim), zeros(c.dim)];
        for ([x, y], coef) in d.terms() {
            let (px, py) = (NCPoly::word(x.clone()), NCPoly::word(y.clone()));
            let (sx, sy, ax, ay) =
                (pres.twisted_antipode(&px), pres.twisted_antipode(&py), pres.alpha(&px), pres.alpha(&py));
            let m = -coef.clone();
            axpy(&mut rhs[0], &m, &c.pi_apply(&sx, &c.eta_eval(pres, &ay)?));
            axpy(&mut rhs[1], &m, &c.pi_apply(&ax, &c.eta_eval(pres, &sy)?));
            axpy(&mut rhs[2], &m, &c.pi_apply(&pres.star(&sy), &c.eta_eval(pres, &pres.star(&ax))?));
            axpy(&mut rhs[3], &m, &c.pi_apply(&pres.star(&ay), &c.eta_eval(pres, &pres.star(&sx))?));
        }
        let sa = pres.twisted_antipode(&a);
        let al = pres.alpha(&a);
        let lhs = [
            c.eta_eval(pres, &sa)?,
            c.eta_eval(pres, &al)?,
            c.eta_eval(pres, &pres.star(&sa))?,
            c.eta_eval(pres, &pres.star(&al))?,
        ];
        for k in 0..4 {
            res[k].observe_vec(&lhs[k], &rhs[k], || format!("word `{}`", alg.word_string(&w)));
        }
    }
    for r in res {
        rep.push(r.into_check());
    }
    Ok(rep)
}

/// Agreement of the two forms of the defining formula on words up to `max_deg`.
pub fn two_form_check(pres: &Presentation, c: &Cocycle, max_deg: usize) -> Result<Report> {
    let mut rep = Report::new("two-forms");
    let mut legs = Legs::new(pres, c);
    let mut res = Residual::new("two-forms", pres.tol);
    for w in pres.algebra().normal_words(max_deg) {
        let (f1, f2) = legs.forms(&w)?;
        res.observe(&f1, &f2, || format!("word `{}`", pres.word_string(&w)));
    }
    rep.push(res.into_check());
    Ok(rep)
}

/// The coboundary of phi(a (x) b) = <eta(a*), eta(b)> vanishes on triples of
/// shifted basis words w - eps(w) with total degree at most `max_deg`.
pub fn two_cocycle_check(pres: &Presentation, c: &Cocycle, max_deg: usize) -> Result<Report> {
    let mut rep = Report::new("two-cocycle");
    let alg = pres.algebra();
    let words: Vec<Word> = alg.normal_words(max_deg).into_iter().filter(|w| !w.is_empty()).collect();
    let shifted = |w: &Word| {
        let mut p = NCPoly::word(w.clone());
        p.add_term(Word::unit(), &-pres.epsilon_word(w));
        p
    };
    let k1: Vec<NCPoly> = words.iter().map(shifted).collect();
    let phi = |a: &NCPoly, b: &NCPoly| -> Result<Scalar> { c.pairing(pres, &pres.star(a), b) };
    let mut res = Residual::new("two-cocycle", pres.tol);
    let mut count = 0usize;
    for (i, a) in k1.iter().enumerate() {
        for (j, b) in k1.iter().enumerate() {
            if words[i].len() + words[j].len() + 1 > max_deg {
                continue;
            }
            let ab = pres.mul(a, b);
            for (k, cc) in k1.iter().enumerate() {
                if words[i].len() + words[j].len() + words[k].len() > max_deg {
                    continue;
                }
                count += 1;
                let bc = pres.mul(b, cc);
                let val = &(&(&(&pres.epsilon(a) * &phi(b, cc)?) - &phi(&ab, cc)?) + &phi(a, &bc)?)
                    - &(&phi(a, b)? * &pres.epsilon(cc));
                res.observe(&val, &Scalar::zero(), || {
                    format!(
                        "triple ({}, {}, {})",
                        alg.word_string(&words[i]),
                        alg.word_string(&words[j]),
                        alg.word_string(&words[k])
                    )
                });
            }
        }
    }
    rep.push(res.into_check().with_note(format!("{count} triples, total degree at most {max_deg}")));
    Ok(rep)
}

/// Transfer of tau_{it}-reality to tau_{is}-reality. `pres` carries
/// alpha = tau_{i/2}; tau_{iz} is its power 2z.
pub fn tau_reality_transfer(pres: &Presentation, c: &Cocycle, t: Rational64, s: Rational64) -> Result<Report> {
    if t == Rational64::new(1, 2) {
        return Err(Error::HypothesisViolated("t = 1/2 is excluded".into()));
    }
    let mut rep = Report::new("tau-transfer");
    let two = Rational64::from_integer(2);
    let pt = pres.with_alpha_power(&(t * two))?;
    let max_deg = (c.cutoff / 2).max(1);
    rep.absorb("t-real", c.is_alpha_real(&pt, max_deg)?);
    let l = functional_from_cocycle(&pt, c)?;
    let shift = pres.with_alpha_power(&((two * t - Rational64::from_integer(1)) * two))?;
    let mut res = Residual::new("L = L o tau_{2it-i}", pres.tol);
    for (w, v) in &l.values {
        let shifted = l.eval(&shift.alpha(&NCPoly::word(w.clone())))?;
        res.observe(&shifted, v, || format!("word `{}`", pres.word_string(w)));
    }
    rep.push(res.into_check());
    let ps = pres.with_alpha_power(&(s * two))?;
    rep.absorb("s-real", c.is_alpha_real(&ps, max_deg)?);
    rep.set_value("t", t.to_string());
    rep.set_value("s", s.to_string());
    Ok(rep)
}
