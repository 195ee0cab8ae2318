//! Hopf *-algebra structure on a presented algebra: coproduct, counit,
//! antipode, a diagonal admissible bijection and the derived maps.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ncalg::{tensor_of, Algebra, Gen, NCPoly, RewriteSystem, Rule, Tensor2, Tensor3, Word};
use crate::report::{Check, Report};
use crate::scalar::{Backend, Scalar, Tolerance};

pub struct Presentation {
    pub name: String,
    pub backend: Backend,
    pub parameters: BTreeMap<String, String>,
    pub tol: Tolerance,
    algebra: Algebra,
    delta: Vec<Tensor2>,
    epsilon: Vec<Scalar>,
    antipode: Vec<NCPoly>,
    alpha: Vec<Scalar>,
    delta_cache: Mutex<HashMap<Word, Tensor2>>,
    antipode_cache: Mutex<HashMap<Word, NCPoly>>,
    power_cache: Mutex<HashMap<Rational64, Vec<Scalar>>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            name: self.name.clone(),
            backend: self.backend,
            parameters: self.parameters.clone(),
            tol: self.tol,
            algebra: self.algebra.clone(),
            delta: self.delta.clone(),
            epsilon: self.epsilon.clone(),
            antipode: self.antipode.clone(),
            alpha: self.alpha.clone(),
            delta_cache: Mutex::new(HashMap::new()),
            antipode_cache: Mutex::new(HashMap::new()),
            power_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Presentation").field("name", &self.name).field("backend", &self.backend).finish()
    }
}

fn poly_to_backend(p: &NCPoly, b: Backend) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(w.clone(), &c.to_backend(b)?);
    }
    Ok(out)
}

fn tensor_to_backend<const N: usize>(t: &crate::ncalg::Tensor<N>, b: Backend) -> Result<crate::ncalg::Tensor<N>> {
    let mut out = crate::ncalg::Tensor::<N>::zero();
    for (k, c) in t.terms() {
        out.add_term(k.clone(), &c.to_backend(b)?);
    }
    Ok(out)
}

impl Presentation {
    /// Builds a presentation; generator images are brought to normal form.
    pub fn new(
        name: impl Into<String>,
        backend: Backend,
        algebra: Algebra,
        delta: Vec<Tensor2>,
        epsilon: Vec<Scalar>,
        antipode: Vec<NCPoly>,
        alpha: Vec<Scalar>,
    ) -> Result<Presentation> {
        let n = algebra.ngens();
        if [delta.len(), epsilon.len(), antipode.len(), alpha.len()].iter().any(|&k| k != n) {
            return Err(Error::DimensionMismatch(format!("Hopf data must cover all {n} generators")));
        }
        let rs = algebra.rewrite_system();
        let rules = rs
            .rules()
            .iter()
            .map(|r| Ok(Rule { lhs: r.lhs.clone(), rhs: poly_to_backend(&r.rhs, backend)? }))
            .collect::<Result<Vec<_>>>()?;
        let algebra = Algebra::new(
            algebra.names().to_vec(),
            (0..n as Gen).map(|g| algebra.star_gen(g)).collect(),
            RewriteSystem::new(n, rules, rs.is_commutative())?,
        )?;
        let mut p = Presentation {
            name: name.into(),
            backend,
            parameters: BTreeMap::new(),
            tol: Tolerance::default(),
            delta: vec![],
            epsilon: epsilon.iter().map(|c| c.to_backend(backend)).collect::<Result<_>>()?,
            antipode: vec![],
            alpha: alpha.iter().map(|c| c.to_backend(backend)).collect::<Result<_>>()?,
            algebra,
            delta_cache: Mutex::new(HashMap::new()),
            antipode_cache: Mutex::new(HashMap::new()),
            power_cache: Mutex::new(HashMap::new()),
        };
        p.delta = delta
            .iter()
            .map(|t| Ok(p.normalize_tensor(&tensor_to_backend(t, backend)?)))
            .collect::<Result<_>>()?;
        p.antipode = antipode
            .iter()
            .map(|s| Ok(p.algebra.normal_form(&poly_to_backend(s, backend)?)))
            .collect::<Result<_>>()?;
        Ok(p)
    }

    /// Same data on another backend (exact to float only).
    pub fn to_backend(&self, backend: Backend) -> Result<Presentation> {
        let mut p = Presentation::new(
            self.name.clone(),
            backend,
            self.algebra.clone(),
            self.delta.clone(),
            self.epsilon.clone(),
            self.antipode.clone(),
            self.alpha.clone(),
        )?;
        p.parameters = self.parameters.clone();
        p.tol = self.tol;
        Ok(p)
    }

    /// Copy with a different admissible-bijection table.
    pub fn with_alpha(&self, alpha: Vec<Scalar>) -> Result<Presentation> {
        let mut p = Presentation::new(
            self.name.clone(),
            self.backend,
            self.algebra.clone(),
            self.delta.clone(),
            self.epsilon.clone(),
            self.antipode.clone(),
            alpha,
        )?;
        p.parameters = self.parameters.clone();
        p.tol = self.tol;
        Ok(p)
    }

    /// Copy whose bijection is the given power of this one.
    pub fn with_alpha_power(&self, power: &Rational64) -> Result<Presentation> {
        let s = self.scalings_pow(power)?;
        self.with_alpha(s)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ngens(&self) -> usize {
        self.algebra.ngens()
    }

    pub fn alpha_scalings(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn delta_image(&self, g: Gen) -> &Tensor2 {
        &self.delta[g as usize]
    }

    pub fn epsilon_image(&self, g: Gen) -> &Scalar {
        &self.epsilon[g as usize]
    }

    pub fn antipode_image(&self, g: Gen) -> &NCPoly {
        &self.antipode[g as usize]
    }

    pub fn normalize_tensor<const N: usize>(&self, t: &crate::ncalg::Tensor<N>) -> crate::ncalg::Tensor<N> {
        let mut acc = crate::ncalg::Tensor::<N>::zero();
        for (legs, c) in t.terms() {
            let polys: Vec<NCPoly> = legs.iter().map(|w| self.algebra.normal_form_word(w)).collect();
            let refs: [&NCPoly; N] = std::array::from_fn(|k| &polys[k]);
            acc.add_scaled(c, &tensor_of(refs));
        }
        acc
    }

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.algebra.mul(a, b)
    }

    pub fn star(&self, a: &NCPoly) -> NCPoly {
        self.algebra.star(a)
    }

    pub fn word_string(&self, w: &Word) -> String {
        self.algebra.word_string(w)
    }

    // ---- coproduct -------------------------------------------------------

    /// Coproduct of a (possibly non-normal) word as the product of generator images.
    pub fn delta_word(&self, w: &Word) -> Tensor2 {
        if let Some(t) = self.delta_cache.lock().expect("cache lock").get(w) {
            return t.clone();
        }
        let t = match w.len() {
            0 => Tensor2::one(),
            1 => self.delta[w.0[0] as usize].clone(),
            n => {
                let (head, tail) = (Word(w.0[..n - 1].to_vec()), Word::letter(w.0[n - 1]));
                self.algebra.tensor_mul(&self.delta_word(&head), &self.delta_word(&tail))
            }
        };
        self.delta_cache.lock().expect("cache lock").insert(w.clone(), t.clone());
        t
    }

    pub fn delta(&self, a: &NCPoly) -> Tensor2 {
        let mut acc = Tensor2::zero();
        for (w, c) in a.terms() {
            acc.add_scaled(c, &self.delta_word(w));
        }
        acc
    }

    /// (Delta (x) id) applied to a rank-2 tensor.
    pub fn delta_left(&self, t: &Tensor2) -> Tensor3 {
        let mut acc = Tensor3::zero();
        for ([x, y], c) in t.terms() {
            for ([x1, x2], d) in self.delta_word(x).terms() {
                acc.add_term([x1.clone(), x2.clone(), y.clone()], &(c * d));
            }
        }
        acc
    }

    /// (id (x) Delta) applied to a rank-2 tensor.
    pub fn delta_right(&self, t: &Tensor2) -> Tensor3 {
        let mut acc = Tensor3::zero();
        for ([x, y], c) in t.terms() {
            for ([y1, y2], d) in self.delta_word(y).terms() {
                acc.add_term([x.clone(), y1.clone(), y2.clone()], &(c * d));
            }
        }
        acc
    }

    /// Triple coproduct; both bracketings are computed and compared.
    pub fn delta2(&self, a: &NCPoly) -> Result<Tensor3> {
        let d = self.delta(a);
        let l = self.delta_left(&d);
        let r = self.delta_right(&d);
        if l.max_diff(&r) > 0.0 && !tensors_close(&l, &r, &self.tol) {
            return Err(Error::CoassociativityViolation(self.algebra.poly_string(a)));
        }
        Ok(r)
    }

    // ---- counit and antipode ---------------------------------------------

    pub fn epsilon_word(&self, w: &Word) -> Scalar {
        let mut acc = Scalar::one();
        for &g in &w.0 {
            acc = &acc * &self.epsilon[g as usize];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn epsilon(&self, a: &NCPoly) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in a.terms() {
            acc += &(c * &self.epsilon_word(w));
        }
        acc
    }

    /// Antipode of a word: S(g_k) ... S(g_1).
    pub fn antipode_word(&self, w: &Word) -> NCPoly {
        if let Some(p) = self.antipode_cache.lock().expect("cache lock").get(w) {
            return p.clone();
        }
        let p = match w.len() {
            0 => NCPoly::one(),
            1 => self.antipode[w.0[0] as usize].clone(),
            n => {
                let (head, last) = (Word(w.0[..n - 1].to_vec()), w.0[n - 1]);
                self.algebra.mul(&self.antipode[last as usize], &self.antipode_word(&head))
            }
        };
        self.antipode_cache.lock().expect("cache lock").insert(w.clone(), p.clone());
        p
    }

    pub fn antipode(&self, a: &NCPoly) -> NCPoly {
        let mut acc = NCPoly::zero();
        for (w, c) in a.terms() {
            acc.add_scaled(c, &self.antipode_word(w));
        }
        acc
    }

    // ---- admissible bijection --------------------------------------------

    /// Generator scalings raised to a rational power.
    pub fn scalings_pow(&self, power: &Rational64) -> Result<Vec<Scalar>> {
        if let Some(v) = self.power_cache.lock().expect("cache lock").get(power) {
            return Ok(v.clone());
        }
        let v = self.alpha.iter().map(|s| s.pow_rational(power)).collect::<Result<Vec<_>>>()?;
        self.power_cache.lock().expect("cache lock").insert(*power, v.clone());
        Ok(v)
    }

    /// lambda_w^power for a word w.
    pub fn eigenvalue(&self, w: &Word, power: &Rational64) -> Result<Scalar> {
        let s = self.scalings_pow(power)?;
        let mut acc = Scalar::one();
        for &g in &w.0 {
            acc = &acc * &s[g as usize];
        }
        Ok(acc)
    }

    pub fn alpha_apply(&self, a: &NCPoly, power: &Rational64) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            out.add_term(w.clone(), &(c * &self.eigenvalue(w, power)?));
        }
        Ok(out)
    }

    pub fn alpha(&self, a: &NCPoly) -> NCPoly {
        self.alpha_apply(a, &Rational64::from_integer(1)).expect("integer powers are always available")
    }

    pub fn alpha_inv(&self, a: &NCPoly) -> NCPoly {
        self.alpha_apply(a, &Rational64::from_integer(-1)).expect("integer powers are always available")
    }

    pub fn alpha_word(&self, w: &Word) -> Scalar {
        self.eigenvalue(w, &Rational64::from_integer(1)).expect("integer powers are always available")
    }

    pub fn twisted_antipode(&self, a: &NCPoly) -> NCPoly {
        self.antipode(&self.alpha(a))
    }

    pub fn gamma(&self, a: &NCPoly) -> NCPoly {
        a.add(&self.alpha(a))
    }

    pub fn gamma_inverse(&self, a: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            let d = &Scalar::one() + &self.alpha_word(w);
            let inv = d.try_inv().ok_or_else(|| Error::SingularGamma(self.word_string(w)))?;
            out.add_term(w.clone(), &(c * &inv));
        }
        Ok(out)
    }

    /// Multiplication map A (x) A -> A.
    pub fn multiply(&self, t: &Tensor2) -> NCPoly {
        let mut acc = NCPoly::zero();
        for ([x, y], c) in t.terms() {
            acc.add_scaled(c, &self.algebra.mul_words(x, y));
        }
        acc
    }

    /// Applies word-level linear maps to each leg of a rank-2 tensor.
    pub fn map2(&self, t: &Tensor2, f: impl Fn(&Word) -> NCPoly, g: impl Fn(&Word) -> NCPoly) -> Tensor2 {
        let mut acc = Tensor2::zero();
        for ([x, y], c) in t.terms() {
            acc.add_scaled(c, &tensor_of([&f(x), &g(y)]));
        }
        acc
    }

    pub fn flip(&self, t: &Tensor2) -> Tensor2 {
        let mut acc = Tensor2::zero();
        for ([x, y], c) in t.terms() {
            acc.add_term([y.clone(), x.clone()], c);
        }
        acc
    }

    pub fn polys_close(&self, a: &NCPoly, b: &NCPoly) -> bool {
        let d = a.sub(b);
        let ok = d.terms().all(|(w, _)| a.coefficient(w).close(&b.coefficient(w), &self.tol));
        ok
    }

    fn pstr(&self, a: &NCPoly) -> String {
        self.algebra.poly_string(a)
    }

    // ---- verification ----------------------------------------------------

    /// Hopf axioms: relation respect of all structure maps, star
    /// compatibility, then coassociativity, counit, antipode, involution and
    /// alpha-compatibility on every normal word up to `max_deg`.
    pub fn verify_hopf_axioms(&self, max_deg: usize) -> Report {
        let mut rep = Report::new("verify-hopf");
        let alg = &self.algebra;
        let relation_fail = |name: &str, rep: &mut Report, rule: usize, what: String| {
            rep.push(Check::fail(format!("relations.{name}"), format!("rule {rule}: {what}")));
        };
        let (mut ok_d, mut ok_e, mut ok_s, mut ok_a) = (true, true, true, true);
        for (k, r) in alg.rewrite_system().rules().iter().enumerate() {
            let lhs = NCPoly::word(r.lhs.clone());
            let dl = self.delta_word(&r.lhs);
            let mut dr = Tensor2::zero();
            for (w, c) in r.rhs.terms() {
                dr.add_scaled(c, &self.delta_word(w));
            }
            if !tensors_close(&dl, &dr, &self.tol) {
                ok_d = false;
                relation_fail("delta", &mut rep, k, format!("Delta({}) differs", self.pstr(&lhs)));
            }
            let el = self.epsilon_word(&r.lhs);
            let er: Scalar = r.rhs.terms().fold(Scalar::zero(), |acc, (w, c)| &acc + &(c * &self.epsilon_word(w)));
            if !el.close(&er, &self.tol) {
                ok_e = false;
                relation_fail("epsilon", &mut rep, k, format!("{el} != {er}"));
            }
            let sl = self.antipode_word(&r.lhs);
            let mut sr = NCPoly::zero();
            for (w, c) in r.rhs.terms() {
                sr.add_scaled(c, &self.antipode_word(w));
            }
            if !self.polys_close(&sl, &sr) {
                ok_s = false;
                relation_fail("antipode", &mut rep, k, format!("{} vs {}", self.pstr(&sl), self.pstr(&sr)));
            }
            let ll = self.alpha_word(&r.lhs);
            for (w, _) in r.rhs.terms() {
                if !self.alpha_word(w).close(&ll, &self.tol) {
                    ok_a = false;
                    relation_fail("alpha", &mut rep, k, format!("eigenvalue of `{}` differs from lhs", self.word_string(w)));
                }
            }
        }
        for (name, ok) in [("delta", ok_d), ("epsilon", ok_e), ("antipode", ok_s), ("alpha", ok_a)] {
            if ok {
                rep.push(Check::pass(format!("relations.{name}")));
            }
        }

        let mut star_ok = None;
        for g in 0..self.ngens() as Gen {
            let gs = alg.star_gen(g);
            let lhs = self.delta_image(gs).clone();
            let rhs = self.map2(self.delta_image(g), |w| alg.star_word(w), |w| alg.star_word(w));
            let mut rhs_conj = Tensor2::zero();
            for (legs, c) in rhs.terms() {
                rhs_conj.add_term(legs.clone(), &c.conj());
            }
            if !tensors_close(&lhs, &rhs_conj, &self.tol) && star_ok.is_none() {
                star_ok = Some(format!("Delta({}) != (* x *) Delta({})", alg.name(gs), alg.name(g)));
            }
            if !self.epsilon_image(gs).close(&self.epsilon_image(g).conj(), &self.tol) && star_ok.is_none() {
                star_ok = Some(format!("epsilon({}) != conj epsilon({})", alg.name(gs), alg.name(g)));
            }
        }
        rep.push(Check::boolean("star-compatibility", star_ok.is_none(), star_ok));

        let words = alg.normal_words(max_deg);
        let mut fails: BTreeMap<&str, String> = BTreeMap::new();
        let note = |k: &'static str, w: &Word, fails: &mut BTreeMap<&str, String>| {
            fails.entry(k).or_insert_with(|| self.word_string(w));
        };
        for w in &words {
            let p = NCPoly::word(w.clone());
            let d = self.delta_word(w);
            if !tensors_close(&self.delta_left(&d), &self.delta_right(&d), &self.tol) {
                note("coassociativity", w, &mut fails);
            }
            let mut left = NCPoly::zero();
            let mut right = NCPoly::zero();
            for ([x, y], c) in d.terms() {
                left.add_scaled(&(c * &self.epsilon_word(x)), &NCPoly::word(y.clone()));
                right.add_scaled(&(c * &self.epsilon_word(y)), &NCPoly::word(x.clone()));
            }
            if !self.polys_close(&left, &p) || !self.polys_close(&right, &p) {
                note("counit", w, &mut fails);
            }
            let eps = NCPoly::constant(self.epsilon_word(w));
            let s_left = self.multiply(&self.map2(&d, |x| self.antipode_word(x), |y| NCPoly::word(y.clone())));
            let s_right = self.multiply(&self.map2(&d, |x| NCPoly::word(x.clone()), |y| self.antipode_word(y)));
            if !self.polys_close(&s_left, &eps) || !self.polys_close(&s_right, &eps) {
                note("antipode-relation", w, &mut fails);
            }
            let sss = self.star(&self.antipode(&self.star(&self.antipode_word(w))));
            if !self.polys_close(&sss, &p) {
                note("S*S*", w, &mut fails);
            }
            let aa = self.map2(&d, |x| NCPoly::monomial(self.alpha_word(x), x.clone()), |y| {
                NCPoly::monomial(self.alpha_word(y), y.clone())
            });
            if !tensors_close(&aa, &self.delta(&self.alpha(&p)), &self.tol) {
                note("alpha-delta", w, &mut fails);
            }
            if !self.epsilon(&self.alpha(&p)).close(&self.epsilon_word(w), &self.tol) {
                note("epsilon-alpha", w, &mut fails);
            }
        }
        for k in ["coassociativity", "counit", "antipode-relation", "S*S*", "alpha-delta", "epsilon-alpha"] {
            let c = match fails.get(k) {
                Some(w) => Check::fail(k, format!("word `{w}`")),
                None => Check::pass(k),
            };
            rep.push(c.with_note(format!("{} words up to degree {max_deg}", words.len())));
        }
        rep.set_value("words", words.len());
        rep
    }

    /// Admissibility of the diagonal bijection, plus the derived identities
    /// on generators. Eigenvalue conditions are scanned on normal words up
    /// to `max_deg`.
    pub fn verify_admissible(&self, max_deg: usize) -> Report {
        let mut rep = Report::new("check-admissible");
        let alg = &self.algebra;
        let gens: Vec<NCPoly> = (0..self.ngens() as Gen).map(|g| alg.gen_poly(g)).collect();
        let gname = |g: usize| alg.name(g as Gen).to_string();

        let positive = self.alpha.iter().position(|s| !(s.is_real() && s.re_sign() == std::cmp::Ordering::Greater));
        rep.push(Check::boolean(
            "positive-scalings",
            positive.is_none(),
            positive.map(|g| format!("scaling of `{}` is {}", gname(g), self.alpha[g])),
        ));
        let star_pair = (0..self.ngens()).find(|&g| {
            let s = &self.alpha[alg.star_gen(g as Gen) as usize];
            !(s * &self.alpha[g]).close(&Scalar::one(), &self.tol)
        });
        rep.push(Check::boolean(
            "star-pairing",
            star_pair.is_none(),
            star_pair.map(|g| format!("scaling({})*scaling({}*) != 1", gname(g), gname(g))),
        ));

        let bad_rule = alg.rewrite_system().rules().iter().enumerate().find_map(|(k, r)| {
            let l = self.alpha_word(&r.lhs);
            r.rhs.terms().find(|(w, _)| !self.alpha_word(w).close(&l, &self.tol)).map(|(w, _)| (k, w.clone()))
        });
        rep.push(Check::boolean(
            "(i) homomorphism",
            bad_rule.is_none(),
            bad_rule.map(|(k, w)| format!("rule {k}: monomial `{}` not homogeneous", self.word_string(&w))),
        ));

        let first = |f: &dyn Fn(usize) -> bool| (0..self.ngens()).find(|&g| !f(g));
        let ii = first(&|g| {
            let x = self.alpha(&self.star(&self.alpha(&self.star(&gens[g]))));
            self.polys_close(&x, &gens[g])
        });
        rep.push(Check::boolean("(ii) alpha*alpha* = id", ii.is_none(), ii.map(gname)));
        let iii = first(&|g| {
            let d = self.delta_image(g as Gen);
            let lhs = self.map2(d, |x| self.alpha(&NCPoly::word(x.clone())), |y| self.alpha(&NCPoly::word(y.clone())));
            tensors_close(&lhs, &self.delta(&self.alpha(&gens[g])), &self.tol)
        });
        rep.push(Check::boolean("(iii) (alpha x alpha)Delta = Delta alpha", iii.is_none(), iii.map(gname)));

        let words = alg.normal_words(max_deg);
        let eig: Vec<(Scalar, &Word)> = words.iter().map(|w| (self.alpha_word(w), w)).collect();
        let iv = eig.iter().find(|(l, _)| (&Scalar::one() + l).is_negligible(&self.tol));
        rep.push(Check::boolean(
            "(iv) 1 + lambda_w != 0",
            iv.is_none(),
            iv.map(|(l, w)| format!("word `{}`: 1+({l}) = 0", self.word_string(w))),
        ));
        let mut distinct: Vec<(Scalar, &Word)> = Vec::new();
        for (l, w) in &eig {
            if !distinct.iter().any(|(m, _)| m == l) {
                distinct.push((l.clone(), w));
            }
        }
        let mut v = None;
        'outer: for (a, wa) in &distinct {
            for (b, wb) in &distinct {
                if (&Scalar::one() + &(a * b)).is_negligible(&self.tol) {
                    v = Some(format!("words `{}`, `{}`: 1+({a})({b}) = 0", self.word_string(wa), self.word_string(wb)));
                    break 'outer;
                }
            }
        }
        rep.push(Check::boolean("(v) 1 + lambda_w lambda_w' != 0", v.is_none(), v));

        // Derived identities on generators.
        let p1 = first(&|g| {
            let inv = self.alpha_inv(&gens[g]);
            self.polys_close(&inv, &self.star(&self.alpha(&self.star(&gens[g]))))
                && self.polys_close(&self.alpha_inv(&self.alpha(&gens[g])), &gens[g])
        });
        rep.push(Check::boolean("P(i) alpha^-1 = *alpha*", p1.is_none(), p1.map(gname)));
        let one = NCPoly::one();
        rep.push(Check::boolean(
            "P(ii) alpha(1) = 1 = S_alpha(1)",
            self.alpha(&one) == one && self.twisted_antipode(&one) == one,
            Some("unit".into()),
        ));
        let p3 = first(&|g| {
            let e = self.epsilon(&gens[g]);
            self.epsilon(&self.alpha(&gens[g])).close(&e, &self.tol)
                && self.epsilon(&self.twisted_antipode(&gens[g])).close(&e, &self.tol)
        });
        rep.push(Check::boolean("P(iii) epsilon alpha = epsilon = epsilon S_alpha", p3.is_none(), p3.map(gname)));
        let p4 = first(&|g| self.polys_close(&self.alpha(&self.antipode(&gens[g])), &self.antipode(&self.alpha(&gens[g]))));
        rep.push(Check::boolean("P(iv) alpha S = S alpha", p4.is_none(), p4.map(gname)));
        let p5 = first(&|g| {
            let x = self.star(&self.twisted_antipode(&self.star(&self.twisted_antipode(&gens[g]))));
            self.polys_close(&x, &gens[g])
        });
        rep.push(Check::boolean("P(v) S_alpha * S_alpha * = id", p5.is_none(), p5.map(gname)));
        let p6 = first(&|g| {
            let d = self.flip(self.delta_image(g as Gen));
            let sa = |w: &Word| self.twisted_antipode(&NCPoly::word(w.clone()));
            let lhs = self.map2(&d, sa, sa);
            tensors_close(&lhs, &self.delta(&self.twisted_antipode(&gens[g])), &self.tol)
        });
        rep.push(Check::boolean("P(vi) (S_alpha x S_alpha) flip Delta = Delta S_alpha", p6.is_none(), p6.map(gname)));
        let p7 = first(&|g| self.twisted_antipode_relation(&gens[g]));
        rep.push(Check::boolean("P(vii) twisted antipode relation", p7.is_none(), p7.map(gname)));
        rep
    }

    /// S_alpha(a1) alpha(a2) = epsilon(a) 1 = alpha(a1) S_alpha(a2).
    pub fn twisted_antipode_relation(&self, a: &NCPoly) -> bool {
        let d = self.delta(a);
        let sa = |w: &Word| self.twisted_antipode(&NCPoly::word(w.clone()));
        let al = |w: &Word| self.alpha(&NCPoly::word(w.clone()));
        let eps = NCPoly::constant(self.epsilon(a));
        self.polys_close(&self.multiply(&self.map2(&d, sa, al)), &eps)
            && self.polys_close(&self.multiply(&self.map2(&d, al, sa)), &eps)
    }

    /// Full load-time validation: confluence, Hopf axioms and admissibility.
    pub fn validate(&self, max_deg: usize) -> Report {
        let mut rep = Report::new("validate-presentation");
        let overlap = (2 * self.algebra.rewrite_system().max_lhs_len()).max(max_deg);
        rep.absorb("confluence", self.algebra.check_local_confluence(overlap));
        rep.absorb("hopf", self.verify_hopf_axioms(max_deg));
        rep.absorb("admissible", self.verify_admissible(max_deg));
        rep
    }
}

pub fn tensors_close<const N: usize>(a: &crate::ncalg::Tensor<N>, b: &crate::ncalg::Tensor<N>, tol: &Tolerance) -> bool {
    let mut d = a.clone();
    d.add_scaled(&Scalar::from_i64(-1), b);
    if d.is_zero() {
        return true;
    }
    let ok = d.terms().all(|(k, _)| a.coefficient(k).close(&b.coefficient(k), tol));
    ok
}
