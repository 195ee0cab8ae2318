//! Free *-algebras with a rewriting system: words, normal forms, products,
//! the involution and tensor powers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

pub type Gen = u16;

/// A word in the generators. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: Gen) -> Word {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn sorted(mut self) -> Word {
        self.0.sort_unstable();
        self
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn one() -> NCPoly {
        NCPoly::word(Word::unit())
    }

    pub fn word(w: Word) -> NCPoly {
        NCPoly::monomial(Scalar::one(), w)
    }

    pub fn monomial(c: Scalar, w: Word) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(w, &c);
        p
    }

    pub fn constant(c: Scalar) -> NCPoly {
        NCPoly::monomial(c, Word::unit())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_prunable() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn add_assign(&mut self, other: &NCPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &NCPoly) {
        if s.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), &(s * c));
        }
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        p.add_scaled(&Scalar::from_i64(-1), other);
        p
    }

    pub fn scale(&self, s: &Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_scaled(s, self);
        p
    }

    pub fn map_coefficients(&self, f: impl Fn(&Word, &Scalar) -> Scalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(w, c))))
    }

    pub fn max_diff(&self, other: &NCPoly) -> f64 {
        self.sub(other).terms.values().map(Scalar::abs).fold(0.0, f64::max)
    }
}

/// Element of the N-fold tensor power, stored on tuples of normal words.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<const N: usize> {
    terms: BTreeMap<[Word; N], Scalar>,
}

pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const N: usize> Default for Tensor<N> {
    fn default() -> Self {
        Tensor { terms: BTreeMap::new() }
    }
}

impl<const N: usize> Tensor<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::simple(Scalar::one(), std::array::from_fn(|_| Word::unit()))
    }

    pub fn simple(c: Scalar, legs: [Word; N]) -> Self {
        let mut t = Self::zero();
        t.add_term(legs, &c);
        t
    }

    pub fn add_term(&mut self, legs: [Word; N], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_prunable() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Word; N], &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, legs: &[Word; N]) -> Scalar {
        self.terms.get(legs).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), &(s * c));
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut t = Self::zero();
        t.add_scaled(s, self);
        t
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut d = self.clone();
        d.add_scaled(&Scalar::from_i64(-1), other);
        d.terms.values().map(Scalar::abs).fold(0.0, f64::max)
    }
}

/// A rewrite rule `lhs -> rhs`; rhs words need not be normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    ngens: usize,
    rules: Vec<Rule>,
    commutative: bool,
}

impl RewriteSystem {
    /// Validates that every rhs monomial is strictly below its lhs. In
    /// commutative mode words are multisets and compared in sorted form,
    /// which makes the order graded reverse lexicographic.
    pub fn new(ngens: usize, rules: Vec<Rule>, commutative: bool) -> Result<RewriteSystem> {
        let mut out = Vec::with_capacity(rules.len());
        for (k, r) in rules.into_iter().enumerate() {
            let check = |w: &Word| -> Result<()> {
                match w.0.iter().find(|&&g| g as usize >= ngens) {
                    Some(g) => Err(Error::UnknownGenerator(format!("index {g} in rule {k}"))),
                    None => Ok(()),
                }
            };
            check(&r.lhs)?;
            if r.lhs.is_empty() {
                return Err(Error::RuleOrderViolation { rule: k, detail: "empty left-hand side".into() });
            }
            let lhs = if commutative { r.lhs.sorted() } else { r.lhs };
            let mut rhs = NCPoly::zero();
            for (w, c) in r.rhs.terms() {
                check(w)?;
                let w = if commutative { w.clone().sorted() } else { w.clone() };
                if w >= lhs {
                    return Err(Error::RuleOrderViolation {
                        rule: k,
                        detail: format!("rhs monomial {:?} is not below lhs {:?}", w.0, lhs.0),
                    });
                }
                rhs.add_term(w, c);
            }
            out.push(Rule { lhs, rhs });
        }
        Ok(RewriteSystem { ngens, rules: out, commutative })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn max_lhs_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    /// First redex: (rule index, position). In commutative mode position is unused.
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        if self.commutative {
            return self.rules.iter().position(|r| multiset_divides(&r.lhs.0, &w.0)).map(|k| (k, 0));
        }
        for pos in 0..w.len() {
            for (k, r) in self.rules.iter().enumerate() {
                if w.0[pos..].starts_with(&r.lhs.0) {
                    return Some((k, pos));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        if self.commutative && !w.0.windows(2).all(|p| p[0] <= p[1]) {
            return false;
        }
        self.find_redex(w).is_none()
    }

    /// Rewrites one redex, returning the raw result.
    fn rewrite_at(&self, w: &Word, rule: usize, pos: usize) -> NCPoly {
        let r = &self.rules[rule];
        let mut out = NCPoly::zero();
        if self.commutative {
            let rest = multiset_minus(&w.0, &r.lhs.0);
            for (m, c) in r.rhs.terms() {
                out.add_term(Word(rest.iter().chain(&m.0).copied().collect()).sorted(), c);
            }
        } else {
            let (pre, post) = (&w.0[..pos], &w.0[pos + r.lhs.len()..]);
            for (m, c) in r.rhs.terms() {
                out.add_term(Word(pre.iter().chain(&m.0).chain(post).copied().collect()), c);
            }
        }
        out
    }
}

fn multiset_divides(small: &[Gen], big: &[Gen]) -> bool {
    let mut it = big.iter().peekable();
    'outer: for g in small {
        while let Some(&&h) = it.peek() {
            it.next();
            match h.cmp(g) {
                Ordering::Less => continue,
                Ordering::Equal => continue 'outer,
                Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn multiset_minus(big: &[Gen], small: &[Gen]) -> Vec<Gen> {
    let mut out = Vec::with_capacity(big.len());
    let mut j = 0;
    for &g in big {
        if j < small.len() && small[j] == g {
            j += 1;
        } else {
            out.push(g);
        }
    }
    out
}

fn multiset_lcm(a: &[Gen], b: &[Gen]) -> Vec<Gen> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

/// Generators with names and star pairing, together with a rewriting system.
pub struct Algebra {
    names: Vec<String>,
    star: Vec<Gen>,
    rs: RewriteSystem,
    nf_cache: Mutex<HashMap<Word, NCPoly>>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra { names: self.names.clone(), star: self.star.clone(), rs: self.rs.clone(), nf_cache: Mutex::new(HashMap::new()) }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("names", &self.names).field("rules", &self.rs.rules.len()).finish()
    }
}

impl Algebra {
    pub fn new(names: Vec<String>, star: Vec<Gen>, rs: RewriteSystem) -> Result<Algebra> {
        if star.len() != names.len() || rs.ngens() != names.len() {
            return Err(Error::DimensionMismatch("generator, star and rule tables disagree".into()));
        }
        for (g, &s) in star.iter().enumerate() {
            if s as usize >= names.len() || star[s as usize] as usize != g {
                return Err(Error::Parse(format!("star pairing is not an involution at `{}`", names[g])));
            }
        }
        Ok(Algebra { names, star, rs, nf_cache: Mutex::new(HashMap::new()) })
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn star_gen(&self, g: Gen) -> Gen {
        self.star[g as usize]
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rs
    }

    pub fn generator(&self, name: &str) -> Result<Gen> {
        self.names.iter().position(|n| n == name).map(|k| k as Gen).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn gen_poly(&self, g: Gen) -> NCPoly {
        NCPoly::word(Word::letter(g))
    }

    /// Parses a space-separated word; the empty string is the unit.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace().map(|t| self.generator(t)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.0.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(" ")
    }

    /// Human readable polynomial, for witnesses.
    pub fn poly_string(&self, p: &NCPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .map(|(w, c)| if w.is_empty() { format!("({c})") } else { format!("({c})*{}", self.word_string(w).replace(' ', "*")) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.rs.is_normal(w)
    }

    pub fn normal_form_word(&self, w: &Word) -> NCPoly {
        let w = if self.rs.commutative { w.clone().sorted() } else { w.clone() };
        if let Some(p) = self.nf_cache.lock().expect("cache lock").get(&w) {
            return p.clone();
        }
        let out = match self.rs.find_redex(&w) {
            None => NCPoly::word(w.clone()),
            Some((k, pos)) => {
                let mut acc = NCPoly::zero();
                for (v, c) in self.rs.rewrite_at(&w, k, pos).terms() {
                    acc.add_scaled(c, &self.normal_form_word(v));
                }
                acc
            }
        };
        self.nf_cache.lock().expect("cache lock").insert(w, out.clone());
        out
    }

    pub fn normal_form(&self, p: &NCPoly) -> NCPoly {
        let mut acc = NCPoly::zero();
        for (w, c) in p.terms() {
            acc.add_scaled(c, &self.normal_form_word(w));
        }
        acc
    }

    pub fn mul_words(&self, u: &Word, v: &Word) -> NCPoly {
        self.normal_form_word(&u.concat(v))
    }

    pub fn mul(&self, p: &NCPoly, q: &NCPoly) -> NCPoly {
        let mut acc = NCPoly::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                acc.add_scaled(&(a * b), &self.mul_words(u, v));
            }
        }
        acc
    }

    pub fn star_word_raw(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&g| self.star_gen(g)).collect())
    }

    pub fn star(&self, p: &NCPoly) -> NCPoly {
        let mut acc = NCPoly::zero();
        for (w, c) in p.terms() {
            acc.add_scaled(&c.conj(), &self.normal_form_word(&self.star_word_raw(w)));
        }
        acc
    }

    pub fn star_word(&self, w: &Word) -> NCPoly {
        self.normal_form_word(&self.star_word_raw(w))
    }

    pub fn tensor_mul<const N: usize>(&self, s: &Tensor<N>, t: &Tensor<N>) -> Tensor<N> {
        let mut acc = Tensor::<N>::zero();
        for (a, x) in s.terms() {
            for (b, y) in t.terms() {
                let legs: Vec<NCPoly> = (0..N).map(|k| self.mul_words(&a[k], &b[k])).collect();
                expand_legs(&legs, &(x * y), &mut acc);
            }
        }
        acc
    }

    /// Normal-form words of degree at most `max_deg`, in deglex order.
    pub fn normal_words(&self, max_deg: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut frontier = vec![Word::unit()];
        for _ in 0..max_deg {
            let mut next = Vec::new();
            for w in &frontier {
                let start = if self.rs.commutative { w.0.last().copied().unwrap_or(0) } else { 0 };
                for g in start..self.ngens() as Gen {
                    let mut v = w.0.clone();
                    v.push(g);
                    let v = Word(v);
                    if self.rs.find_redex(&v).is_none() {
                        next.push(v);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Checks every overlap and inclusion ambiguity of the rules up to the
    /// given critical-word length (S-pairs in commutative mode).
    pub fn check_local_confluence(&self, max_overlap: usize) -> Report {
        let mut report = Report::new("check-local-confluence");
        if max_overlap < self.rs.max_lhs_len() {
            report.push(Check::indeterminate(
                "precondition",
                format!("max_overlap {max_overlap} is below the longest lhs ({})", self.rs.max_lhs_len()),
            ));
        }
        let rules = &self.rs.rules;
        let mut examined = 0usize;
        let mut failures = Vec::new();
        let mut compare = |word: &Word, a: NCPoly, b: NCPoly, label: String| {
            examined += 1;
            let na = self.normal_form(&a);
            let nb = self.normal_form(&b);
            if na != nb {
                failures.push(format!(
                    "{} [{}]: {} vs {}",
                    self.word_string(word),
                    label,
                    self.poly_string(&na),
                    self.poly_string(&nb)
                ));
            }
        };
        if self.rs.commutative {
            for i in 0..rules.len() {
                for j in i + 1..rules.len() {
                    let (li, lj) = (&rules[i].lhs.0, &rules[j].lhs.0);
                    let lcm = multiset_lcm(li, lj);
                    if lcm.len() == li.len() + lj.len() || lcm.len() > max_overlap {
                        continue;
                    }
                    let w = Word(lcm.clone());
                    let ri = self.rs.rewrite_at(&w, i, 0);
                    let rj = self.rs.rewrite_at(&w, j, 0);
                    compare(&w, ri, rj, format!("rules {i},{j}"));
                }
            }
        } else {
            for i in 0..rules.len() {
                for j in 0..rules.len() {
                    let (li, lj) = (&rules[i].lhs.0, &rules[j].lhs.0);
                    for k in 1..li.len().min(lj.len()) {
                        if li[li.len() - k..] != lj[..k] {
                            continue;
                        }
                        let w = Word(li.iter().chain(&lj[k..]).copied().collect());
                        if w.len() > max_overlap {
                            continue;
                        }
                        let a = self.rs.rewrite_at(&w, i, 0);
                        let b = self.rs.rewrite_at(&w, j, li.len() - k);
                        compare(&w, a, b, format!("overlap of rules {i},{j}"));
                    }
                    if i != j && lj.len() <= li.len() {
                        for pos in 0..=li.len() - lj.len() {
                            if li[pos..pos + lj.len()] == lj[..] {
                                let w = Word(li.clone());
                                let a = self.rs.rewrite_at(&w, i, 0);
                                let b = self.rs.rewrite_at(&w, j, pos);
                                compare(&w, a, b, format!("inclusion of rule {j} in rule {i}"));
                            }
                        }
                    }
                }
            }
        }
        report.set_value("critical_pairs", examined);
        if failures.is_empty() {
            report.push(Check::pass("critical-pairs-resolve").with_note(format!("{examined} critical pairs")));
        } else {
            for f in failures {
                report.push(Check::fail("critical-pairs-resolve", f));
            }
        }
        report
    }
}

fn expand_legs<const N: usize>(legs: &[NCPoly], coef: &Scalar, acc: &mut Tensor<N>) {
    fn rec<const N: usize>(legs: &[NCPoly], k: usize, cur: &mut Vec<Word>, c: Scalar, acc: &mut Tensor<N>) {
        if k == legs.len() {
            let arr: [Word; N] = std::array::from_fn(|i| cur[i].clone());
            acc.add_term(arr, &c);
            return;
        }
        for (w, x) in legs[k].terms() {
            cur.push(w.clone());
            rec(legs, k + 1, cur, &c * x, acc);
            cur.pop();
        }
    }
    rec(legs, 0, &mut Vec::with_capacity(N), coef.clone(), acc);
}

/// Tensor product of polynomials, one per leg.
pub fn tensor_of<const N: usize>(legs: [&NCPoly; N]) -> Tensor<N> {
    let mut acc = Tensor::<N>::zero();
    let owned: Vec<NCPoly> = legs.iter().map(|p| (*p).clone()).collect();
    expand_legs(&owned, &Scalar::one(), &mut acc);
    acc
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn cz() -> Algebra {
        let rules = vec![
            Rule { lhs: Word(vec![0, 1]), rhs: NCPoly::one() },
            Rule { lhs: Word(vec![1, 0]), rhs: NCPoly::one() },
        ];
        Algebra::new(vec!["u".into(), "u*".into()], vec![1, 0], RewriteSystem::new(2, rules, false).unwrap()).unwrap()
    }

    /// Anticommuting self-adjoint letters: y x -> -x y.
    fn qplane() -> Algebra {
        let rules = vec![Rule { lhs: Word(vec![1, 0]), rhs: NCPoly::monomial(Scalar::from_i64(-1), Word(vec![0, 1])) }];
        Algebra::new(vec!["x".into(), "y".into()], vec![0, 1], RewriteSystem::new(2, rules, false).unwrap()).unwrap()
    }

    #[test]
    fn group_inverse_normal_form() {
        let a = cz();
        assert_eq!(a.normal_form_word(&Word(vec![0, 1, 0])), NCPoly::word(Word(vec![0])));
        assert_eq!(a.normal_form_word(&Word::unit()), NCPoly::one());
        let u2 = NCPoly::word(Word(vec![0, 0]));
        let uinv = NCPoly::word(Word(vec![1]));
        assert_eq!(a.mul(&u2, &uinv), NCPoly::word(Word(vec![0])));
        assert_eq!(a.star(&NCPoly::word(Word(vec![0]))), uinv);
    }

    #[test]
    fn star_is_antilinear_and_reversing() {
        let a = qplane();
        let p = NCPoly::monomial(Scalar::i(), Word(vec![0, 1]));
        // (i x y)* = -i y x = i x y
        assert_eq!(a.star(&p), p);
    }

    #[test]
    fn tensor_products() {
        let a = cz();
        let u = Word(vec![0]);
        let t = Tensor2::simple(Scalar::one(), [u.clone(), u.clone()]);
        assert_eq!(a.tensor_mul(&Tensor2::one(), &t), t);
        assert_eq!(a.tensor_mul(&t, &t), Tensor2::simple(Scalar::one(), [Word(vec![0, 0]), Word(vec![0, 0])]));
        let t3 = Tensor3::simple(Scalar::one(), [u.clone(), u.clone(), u.clone()]);
        let uu = Word(vec![0, 0]);
        assert_eq!(a.tensor_mul(&t3, &t3), Tensor3::simple(Scalar::one(), [uu.clone(), uu.clone(), uu]));
    }

    #[test]
    fn rejects_order_violations() {
        let bad = vec![Rule { lhs: Word(vec![0]), rhs: NCPoly::word(Word(vec![0, 0])) }];
        assert!(matches!(RewriteSystem::new(1, bad, false), Err(Error::RuleOrderViolation { .. })));
        let bad = vec![Rule { lhs: Word(vec![0, 1]), rhs: NCPoly::word(Word(vec![1, 0])) }];
        assert!(matches!(RewriteSystem::new(2, bad, false), Err(Error::RuleOrderViolation { .. })));
    }

    #[test]
    fn confluence_checks() {
        let r = cz().check_local_confluence(3);
        assert!(r.passed(), "{}", r.to_json());
        let rules = vec![
            Rule { lhs: Word(vec![0, 1]), rhs: NCPoly::one() },
            Rule { lhs: Word(vec![0, 1]), rhs: NCPoly::zero() },
        ];
        let alg = Algebra::new(vec!["a".into(), "b".into()], vec![0, 1], RewriteSystem::new(2, rules, false).unwrap()).unwrap();
        let r = alg.check_local_confluence(2);
        assert!(!r.passed());
        assert!(r.failures().next().unwrap().witness.as_ref().unwrap().starts_with("a b"));
    }

    #[test]
    fn commutative_mode() {
        // x y -> 1 on commuting letters
        let rules = vec![Rule { lhs: Word(vec![1, 0]), rhs: NCPoly::one() }];
        let alg = Algebra::new(vec!["x".into(), "y".into()], vec![1, 0], RewriteSystem::new(2, rules, true).unwrap()).unwrap();
        assert_eq!(alg.normal_form_word(&Word(vec![1, 1, 0, 0])), NCPoly::one());
        assert_eq!(alg.normal_form_word(&Word(vec![1, 0, 0])), NCPoly::word(Word(vec![0])));
        let ws = alg.normal_words(2);
        assert_eq!(ws.len(), 5);
        assert!(alg.check_local_confluence(2).passed());
    }

    #[test]
    fn normal_word_counts() {
        assert_eq!(cz().normal_words(3).len(), 7);
        assert_eq!(qplane().normal_words(2).len(), 6);
    }

    pub fn poly_strategy(ngens: u16, max_deg: usize) -> impl Strategy<Value = NCPoly> {
        let word = prop::collection::vec(0..ngens, 0..=max_deg).prop_map(Word);
        let term = (word, -3i64..4, -2i64..3).prop_map(|(w, a, b)| (w, Scalar::from_i64(a) + Scalar::from_i64(b) * Scalar::i()));
        prop::collection::vec(term, 0..4).prop_map(NCPoly::from_terms)
    }

    proptest! {
        #[test]
        fn normal_form_idempotent(p in poly_strategy(2, 6)) {
            for a in [cz(), qplane()] {
                let n = a.normal_form(&p);
                prop_assert_eq!(a.normal_form(&n), n.clone());
                prop_assert!(n.terms().all(|(w, _)| a.is_normal(w)));
            }
        }

        #[test]
        fn mul_associative(p in poly_strategy(2, 3), q in poly_strategy(2, 3), r in poly_strategy(2, 3)) {
            for a in [cz(), qplane()] {
                let (p, q, r) = (a.normal_form(&p), a.normal_form(&q), a.normal_form(&r));
                prop_assert_eq!(a.mul(&a.mul(&p, &q), &r), a.mul(&p, &a.mul(&q, &r)));
                prop_assert_eq!(a.mul(&NCPoly::one(), &p), p.clone());
            }
        }

        #[test]
        fn star_involution(p in poly_strategy(2, 4), q in poly_strategy(2, 3)) {
            for a in [cz(), qplane()] {
                let (p, q) = (a.normal_form(&p), a.normal_form(&q));
                prop_assert_eq!(a.star(&a.star(&p)), p.clone());
                prop_assert_eq!(a.star(&a.mul(&p, &q)), a.mul(&a.star(&q), &a.star(&p)));
            }
        }
    }
}
