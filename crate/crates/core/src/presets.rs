//! The shipped presets: four presentations plus cocycles, functionals and
//! corepresentation families stored under `data/<preset>/`.
//!
//! Files are compiled into the binary; setting `HOPFCORR_DATA_DIR` makes the
//! loader read `<dir>/<preset>/<file>` instead.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use crate::coquant::{Corep, CorepFamily};
use crate::error::{Error, Result};
use crate::gfcocycle::{Cocycle, Functional};
use crate::hopf::Presentation;
use crate::io;
use crate::linalg::{unit, zeros, Mat, Metric};
use crate::ncalg::{Gen, Word};
use crate::scalar::Scalar;

pub const PRESETS: [&str; 4] = ["c-z", "c-f2", "u2", "suq2"];

pub const DATA_ENV: &str = "HOPFCORR_DATA_DIR";

/// Degree up to which a loaded presentation is validated.
pub const LOAD_DEGREE: usize = 3;

macro_rules! embed {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../data/", $path)))),*]
    };
}

static EMBEDDED: &[(&str, &str)] = embed![
    "c-z/presentation.json",
    "c-z/eta-n.json",
    "c-z/gaussian.json",
    "c-z/coreps.json",
    "c-f2/presentation.json",
    "c-f2/tree.json",
    "c-f2/length.json",
    "c-f2/complex.json",
    "c-f2/coreps.json",
    "u2/presentation.json",
    "u2/drift.json",
    "u2/coreps.json",
    "suq2/presentation.json",
    "suq2/generator.json",
    "suq2/coreps.json",
];

/// Names of the shipped files of a preset, without the presentation.
pub fn shipped_files(preset: &str) -> Vec<&'static str> {
    EMBEDDED
        .iter()
        .filter_map(|(p, _)| p.strip_prefix(preset).and_then(|r| r.strip_prefix('/')))
        .filter(|f| *f != "presentation.json")
        .collect()
}

/// Contents of `<preset>/<file>`, from `HOPFCORR_DATA_DIR` when set.
pub fn data_text(preset: &str, file: &str) -> Result<String> {
    let file = if file.ends_with(".json") { file.to_string() } else { format!("{file}.json") };
    if let Some(dir) = std::env::var_os(DATA_ENV) {
        let path = PathBuf::from(dir).join(preset).join(&file);
        return Ok(std::fs::read_to_string(path)?);
    }
    let key = format!("{preset}/{file}");
    EMBEDDED
        .iter()
        .find(|(p, _)| *p == key)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| Error::Parse(format!("no shipped file `{key}`")))
}

/// Parses a preset reference such as `suq2?q=1/3` without validating it.
pub fn preset_presentation(reference: &str) -> Result<Presentation> {
    let (name, overrides) = io::split_ref(reference);
    if !PRESETS.contains(&name.as_str()) {
        return Err(Error::Parse(format!("unknown preset `{name}` (known: {})", PRESETS.join(", "))));
    }
    io::parse_presentation(&data_text(&name, "presentation.json")?, &overrides)
}

/// Rejects a presentation unless confluence, the Hopf axioms and
/// admissibility all hold up to `max_deg`.
pub fn validated(pres: Presentation, max_deg: usize) -> Result<Presentation> {
    let rep = pres.validate(max_deg);
    if rep.passed() {
        Ok(pres)
    } else {
        Err(Error::ValidationFailed(Box::new(rep)))
    }
}

// ---- generated artifacts ------------------------------------------------

fn exact(n: i64) -> Scalar {
    Scalar::from_i64(n)
}

/// Group-like presets: every generator is invertible with inverse g*.
fn letters(pres: &Presentation) -> Vec<Gen> {
    (0..pres.ngens() as Gen).collect()
}

/// On C[Z]: pi trivial, eta(u) = 1, so eta(u^n) = n.
pub fn cz_eta_n(pres: &Presentation, cutoff: usize) -> Cocycle {
    let u = pres.algebra().generator("u").expect("c-z has u");
    let us = pres.algebra().star_gen(u);
    let mut eta = vec![vec![]; 2];
    eta[u as usize] = vec![exact(1)];
    eta[us as usize] = vec![exact(-1)];
    Cocycle::new(vec![Mat::identity(1); 2], eta, Metric::identity(1), cutoff, false)
}

/// On C[Z]: L(u^n) = -n^2/2.
pub fn cz_gaussian(pres: &Presentation, cutoff: usize) -> Functional {
    Functional::from_fn(pres, cutoff, |w| Scalar::ratio(-((w.len() * w.len()) as i64), 2))
}

/// On C[F2]: the tree cocycle on the edges of the Cayley tree inside the
/// ball of radius `radius`. The edge e_h joins h minus its last letter to h;
/// eta(g) is the sum of the edges on the geodesic from 1 to g, and pi(s)
/// moves edges by left translation, reversing the one edge s^-1 -> 1.
/// Translates leaving the ball are dropped, so the cocycle is truncated.
pub fn f2_tree(pres: &Presentation, radius: usize) -> Cocycle {
    let alg = pres.algebra();
    let edges: Vec<Word> = alg.normal_words(radius).into_iter().filter(|w| !w.is_empty()).collect();
    let index: HashMap<&Word, usize> = edges.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = edges.len();
    let mut pi = Vec::new();
    let mut eta = Vec::new();
    for s in letters(pres) {
        let inv = alg.star_gen(s);
        let mut triples = Vec::new();
        for (j, h) in edges.iter().enumerate() {
            if h.0[0] == inv {
                let rest = Word(h.0[1..].to_vec());
                if rest.is_empty() {
                    triples.push((index[&Word::letter(s)], j, exact(-1)));
                } else {
                    triples.push((index[&rest], j, exact(1)));
                }
            } else if h.len() < radius {
                let sh = Word::letter(s).concat(h);
                triples.push((index[&sh], j, exact(1)));
            }
        }
        pi.push(Mat::from_triples(dim, dim, triples));
        eta.push(unit(dim, index[&Word::letter(s)]));
    }
    Cocycle::new(pi, eta, Metric::identity(dim), radius, true)
}

/// On C[F2]: the C[Z] Gaussian cocycle pulled back along the exponent sum
/// a, b -> u, so pi is trivial and eta(g) is the exponent sum of g.
pub fn f2_exponent_sum(pres: &Presentation, cutoff: usize) -> Cocycle {
    let alg = pres.algebra();
    let eta = letters(pres)
        .into_iter()
        .map(|g| vec![exact(if alg.name(g).ends_with('*') { -1 } else { 1 })])
        .collect();
    Cocycle::new(vec![Mat::identity(1); pres.ngens()], eta, Metric::identity(1), cutoff, false)
}

/// On C[F2]: L(g) = -|g|/2, the functional of the tree cocycle.
pub fn f2_length(pres: &Presentation, cutoff: usize) -> Functional {
    Functional::from_fn(pres, cutoff, |w| Scalar::ratio(-(w.len() as i64), 2))
}

/// On C[F2]: pi(a) = i, pi(b) = 1 on C^2 with eta(a) = e1, eta(b) = e2.
/// Its inner products are not all real, so it is not real for alpha = id.
pub fn f2_complex(pres: &Presentation, cutoff: usize) -> Cocycle {
    let alg = pres.algebra();
    let g = |n: &str| alg.generator(n).expect("c-f2 generator");
    let (a, a_s, b, b_s) = (g("a"), g("a*"), g("b"), g("b*"));
    let i = Scalar::i();
    let mut pi = vec![Mat::identity(2); 4];
    let mut eta = vec![zeros(2); 4];
    pi[a as usize] = Mat::identity(2).scale(&i);
    pi[a_s as usize] = Mat::identity(2).scale(&-&i);
    eta[a as usize] = unit(2, 0);
    eta[a_s as usize] = vec![i.clone(), Scalar::zero()];
    eta[b as usize] = unit(2, 1);
    eta[b_s as usize] = vec![Scalar::zero(), exact(-1)];
    Cocycle::new(pi, eta, Metric::identity(2), cutoff, false)
}

/// On U(2): pi = chi_V + eps with V = diag(-1, 1). The first coordinate is
/// the coboundary of e1, the second the drift U_jj -> j*i.
pub fn u2_drift(pres: &Presentation, cutoff: usize) -> Cocycle {
    let alg = pres.algebra();
    let mut pi = Vec::new();
    let mut eta = Vec::new();
    let v = [exact(-1), exact(1)];
    for g in 0..pres.ngens() as Gen {
        let name = alg.name(g);
        let (ij, starred) = match name.strip_suffix('*') {
            Some(base) => (base, true),
            None => (name, false),
        };
        let i = ij.as_bytes()[1] - b'0';
        let j = ij.as_bytes()[2] - b'0';
        let diag = i == j;
        let chi = if diag { v[(i - 1) as usize].clone() } else { Scalar::zero() };
        let e = if diag { exact(1) } else { Scalar::zero() };
        pi.push(Mat::diagonal(&[chi.clone(), e.clone()]));
        let drift = if diag { &Scalar::i() * &exact(i as i64) } else { Scalar::zero() };
        let drift = if starred { -drift } else { drift };
        eta.push(vec![&chi - &e, drift]);
    }
    Cocycle::new(pi, eta, Metric::identity(2), cutoff, false)
}

/// On SU_q(2): pi(a) = diag(1, i), pi(c) = 0, eta(a) = (1, 2), eta(c) = 0.
pub fn suq2_generator(pres: &Presentation, cutoff: usize) -> Cocycle {
    let alg = pres.algebra();
    let g = |n: &str| alg.generator(n).expect("suq2 generator") as usize;
    let i = Scalar::i();
    let mut pi = vec![Mat::zeros(2, 2); 4];
    let mut eta = vec![zeros(2); 4];
    pi[g("a")] = Mat::diagonal(&[exact(1), i.clone()]);
    pi[g("a*")] = Mat::diagonal(&[exact(1), -&i]);
    eta[g("a")] = vec![exact(1), exact(2)];
    eta[g("a*")] = vec![exact(-1), &i * &exact(2)];
    Cocycle::new(pi, eta, Metric::identity(2), cutoff, false)
}

/// Group-like corepresentations w for the normal words up to `radius`;
/// the empty word is labelled `e`.
pub fn group_like_family(pres: &Presentation, radius: usize) -> CorepFamily {
    let one = Scalar::one().to_backend(pres.backend).expect("one");
    CorepFamily {
        coreps: pres
            .algebra()
            .normal_words(radius)
            .iter()
            .map(|w| {
                let label = if w.is_empty() { "e".to_string() } else { pres.word_string(w) };
                Corep::group_like(label, w, one.clone())
            })
            .collect(),
    }
}

/// Contents of every generated shipped file, keyed by `<preset>/<file>`.
pub fn generated_files() -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let cz = preset_presentation("c-z")?;
    out.insert("c-z/eta-n.json".into(), io::save_cocycle(&cz, "c-z", &cz_eta_n(&cz, 8)));
    out.insert("c-z/gaussian.json".into(), io::save_functional(&cz, "c-z", &cz_gaussian(&cz, 4)));
    out.insert("c-z/coreps.json".into(), io::save_coreps(&cz, "c-z", &group_like_family(&cz, 8)));
    let f2 = preset_presentation("c-f2")?;
    out.insert("c-f2/tree.json".into(), io::save_cocycle(&f2, "c-f2", &f2_tree(&f2, 6)));
    out.insert("c-f2/length.json".into(), io::save_functional(&f2, "c-f2", &f2_length(&f2, 3)));
    out.insert("c-f2/complex.json".into(), io::save_cocycle(&f2, "c-f2", &f2_complex(&f2, 6)));
    out.insert("c-f2/coreps.json".into(), io::save_coreps(&f2, "c-f2", &group_like_family(&f2, 6)));
    let u2 = preset_presentation("u2")?;
    out.insert("u2/drift.json".into(), io::save_cocycle(&u2, "u2", &u2_drift(&u2, 6)));
    let suq2 = preset_presentation("suq2")?;
    out.insert("suq2/generator.json".into(), io::save_cocycle(&suq2, "suq2", &suq2_generator(&suq2, 6)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data_dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
    }

    #[test]
    fn shipped_files_match_generators() {
        for (key, text) in generated_files().unwrap() {
            let shipped = std::fs::read_to_string(data_dir().join(&key)).unwrap();
            assert!(shipped == text, "{key} is stale; run the ignored `regenerate_data` test");
        }
    }

    #[test]
    #[ignore]
    fn regenerate_data() {
        for (key, text) in generated_files().unwrap() {
            std::fs::write(data_dir().join(key), text).unwrap();
        }
    }

    #[test]
    fn tree_has_expected_size() {
        let f2 = preset_presentation("c-f2").unwrap();
        assert_eq!(f2_tree(&f2, 6).dim, 1456);
        assert_eq!(f2_tree(&f2, 2).dim, 16);
    }

    #[test]
    fn unknown_preset_is_rejected() {
        assert!(matches!(preset_presentation("sl3"), Err(Error::Parse(_))));
    }
}
