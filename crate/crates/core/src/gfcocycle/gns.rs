//! Cocycle of a generating functional through its K1 Gram matrix.

use std::collections::HashMap;

use super::{Cocycle, Functional};
use crate::error::{Error, Result};
use crate::hopf::Presentation;
use crate::linalg::{axpy, ldl_psd, min_eigenvalue, solve, zeros, Mat, Metric, OrthoBasis, Vector};
use crate::ncalg::{NCPoly, Word};

/// Factorizes the K1 Gram matrix as G = sum_k d_k l_k l_k^dagger and sets
/// eta(w_i)_k = conj(l_k[i]) with metric d. pi(g) is fixed on eta(words of
/// degree < cutoff) by pi(g)eta(w) = eta(gw) - eps(w)eta(g) and set to zero
/// on the orthogonal complement of that span.
pub fn cocycle_from_functional(pres: &Presentation, l: &Functional) -> Result<Cocycle> {
    l.validate(pres)?;
    let (words, g) = l.k1_gram(pres)?;
    let ldl = ldl_psd(&g, &pres.tol)
        .map_err(|_| Error::NotConditionallyPositive { min_eigenvalue: min_eigenvalue(&g) })?;
    let r = ldl.pivots.len();
    let metric = Metric(ldl.d.clone());
    let mut eta_of: HashMap<Word, Vector> = HashMap::new();
    eta_of.insert(Word::unit(), zeros(r));
    for (i, w) in words.iter().enumerate() {
        eta_of.insert(w.clone(), ldl.l.iter().map(|col| col[i].conj()).collect());
    }
    let eta_poly = |p: &NCPoly| -> Result<Vector> {
        let mut acc = zeros(r);
        for (w, c) in p.terms() {
            let v = eta_of.get(w).ok_or(Error::DegreeExceeded { degree: w.len(), cutoff: l.cutoff })?;
            axpy(&mut acc, c, v);
        }
        Ok(acc)
    };

    let alg = pres.algebra();
    let domain: Vec<Word> = if l.cutoff == 0 { vec![] } else { alg.normal_words(l.cutoff - 1) };
    let mut basis = OrthoBasis::new(metric.clone(), pres.tol);
    let mut pivots = Vec::new();
    for w in &domain {
        if basis.add(&eta_of[w]).is_some() {
            pivots.push(w.clone());
        }
    }
    let stabilized = basis.dim() == r;
    let r0 = pivots.len();

    // C = (X^# X)^{-1} X^# with X^# = X^dagger W.
    let xs: Vec<&Vector> = pivots.iter().map(|w| &eta_of[w]).collect();
    let gm: Vec<Vector> = xs.iter().map(|a| xs.iter().map(|b| metric.inner(a, b)).collect()).collect();
    let xsharp_cols: Vec<Vector> =
        (0..r).map(|k| xs.iter().map(|x| &x[k].conj() * &metric.0[k]).collect()).collect();
    let c_cols = if r0 == 0 {
        vec![vec![]; r]
    } else {
        solve(&gm, &xsharp_cols, &pres.tol)
            .ok_or_else(|| Error::TruncationInconsistent("pivot Gram matrix is singular".into()))?
    };

    let mut eta = Vec::new();
    let mut pi = Vec::new();
    for gen in 0..pres.ngens() as u16 {
        let gw = Word::letter(gen);
        let eg = if l.cutoff >= 1 { eta_of[&gw].clone() } else { zeros(r) };
        let target = |w: &Word| -> Result<Vector> {
            let mut v = eta_poly(&alg.mul_words(&gw, w))?;
            axpy(&mut v, &-pres.epsilon_word(w), &eg);
            Ok(v)
        };
        let ys: Vec<Vector> = pivots.iter().map(&target).collect::<Result<_>>()?;
        let mut triples = Vec::new();
        for (b, cb) in c_cols.iter().enumerate() {
            let mut col = zeros(r);
            for (k, ck) in cb.iter().enumerate() {
                if !ck.is_zero() {
                    axpy(&mut col, ck, &ys[k]);
                }
            }
            triples.extend(col.into_iter().enumerate().map(|(a, x)| (a, b, x)));
        }
        let m = Mat::from_triples(r, r, triples);
        for w in &domain {
            let (got, want) = (m.mul_vec(&eta_of[w]), target(w)?);
            if got.iter().zip(&want).any(|(x, y)| !x.close(y, &pres.tol)) {
                return Err(Error::TruncationInconsistent(format!(
                    "pi({}) on eta({}) is not determined consistently",
                    alg.name(gen),
                    alg.word_string(w)
                )));
            }
        }
        pi.push(m);
        eta.push(eg);
    }

    for gen in 0..pres.ngens() as u16 {
        let gs = alg.star_gen(gen);
        let (pg, ps) = (&pi[gen as usize], &pi[gs as usize]);
        for w1 in &pivots {
            for w2 in &pivots {
                let x = &eta_of[w1];
                let y = &eta_of[w2];
                let lhs = metric.inner(&pg.mul_vec(x), y);
                let rhs = metric.inner(x, &ps.mul_vec(y));
                if !lhs.close(&rhs, &pres.tol) {
                    return Err(Error::TruncationInconsistent(format!(
                        "pi({}) and pi({}) are not adjoint on ({}, {})",
                        alg.name(gen),
                        alg.name(gs),
                        alg.word_string(w1),
                        alg.word_string(w2)
                    )));
                }
            }
        }
    }

    let cutoff = if stabilized { 2 * l.cutoff.max(1) } else { l.cutoff };
    let c = Cocycle::new(pi, eta, metric, cutoff, !stabilized);
    if l.cutoff >= 1 {
        let rep = l.yields_coboundary(pres, &c, l.cutoff)?;
        if !rep.passed() {
            let w = rep.failures().next().and_then(|f| f.witness.clone()).unwrap_or_default();
            return Err(Error::TruncationInconsistent(format!("GNS cocycle does not yield the coboundary: {w}")));
        }
    }
    Ok(c)
}
