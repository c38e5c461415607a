//! Composition series and isomorphism classes of irreducible factors.

use serde::Serialize;

use super::hom::hom_space;
use super::split::{is_irreducible, Irreducibility};
use super::MeataxeError;
use crate::ffla::{Mat, Scalar, Subspace};
use crate::grouprep::Rep;

/// An irreducible representation with a canonical label.
#[derive(Clone, Debug)]
pub struct IsoClass {
    pub label: String,
    pub rep: Rep,
    fingerprint: Vec<u64>,
}

impl IsoClass {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

/// Fixed words for fingerprints: every generator, then every product of two.
fn fingerprint_words(ngens: usize) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = (0..ngens).map(|i| vec![i]).collect();
    for i in 0..ngens {
        for j in 0..ngens {
            words.push(vec![i, j]);
        }
    }
    words
}

fn fnv(data: impl IntoIterator<Item = u64>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in data {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Characteristic-polynomial coefficients along the fixed word list.
fn fingerprint(rep: &Rep) -> Result<Vec<u64>, MeataxeError> {
    let mut out = vec![rep.dim() as u64];
    for w in fingerprint_words(rep.generators().len()) {
        let m = w
            .iter()
            .fold(Mat::identity(rep.field(), rep.dim()), |acc, &g| {
                acc.mul(rep.generator(g))
            });
        out.extend(m.char_poly()?.coeffs().iter().map(|c| c.0 as u64));
    }
    Ok(out)
}

fn base_label(rep: &Rep, fp: &[u64]) -> String {
    match rep.character_values() {
        Some(vals) => {
            let v: Vec<String> = vals.iter().map(|s| s.0.to_string()).collect();
            format!("1:[{}]", v.join(","))
        }
        None => format!("{}:{:08x}", rep.dim(), fnv(fp.iter().copied()) as u32),
    }
}

/// Registry of irreducibles seen so far; isomorphic inputs get the same label.
#[derive(Clone, Debug, Default)]
pub struct IsoRegistry {
    classes: Vec<IsoClass>,
}

impl IsoRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.classes
    }

    /// Label of an irreducible `rep`, registering a new class if needed.
    pub fn classify(&mut self, rep: &Rep) -> Result<String, MeataxeError> {
        let fp = fingerprint(rep)?;
        for c in &self.classes {
            if c.fingerprint == fp && (rep.dim() == 1 || !hom_space(&c.rep, rep)?.is_empty()) {
                return Ok(c.label.clone());
            }
        }
        let base = base_label(rep, &fp);
        let taken = self
            .classes
            .iter()
            .filter(|c| c.label.starts_with(&base))
            .count();
        let label = if taken == 0 {
            base
        } else {
            format!("{base}#{}", taken + 1)
        };
        self.classes.push(IsoClass {
            label: label.clone(),
            rep: rep.clone(),
            fingerprint: fp,
        });
        Ok(label)
    }

    pub fn get(&self, label: &str) -> Option<&IsoClass> {
        self.classes.iter().find(|c| c.label == label)
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub label: String,
    pub rep: Rep,
}

/// `0 = V_0 < V_1 < ... < V_m = V` with irreducible `V_{i+1}/V_i = factors[i]`.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub flag: Vec<Subspace>,
    pub factors: Vec<Factor>,
    pub registry: IsoRegistry,
}

/// `(dim, label, multiplicity)` sorted by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCount {
    pub dim: usize,
    pub label: String,
    pub multiplicity: usize,
}

impl CompositionSeries {
    pub fn labels(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.label.clone()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.rep.dim()).collect()
    }

    pub fn factor_counts(&self) -> Vec<FactorCount> {
        let mut out: Vec<FactorCount> = Vec::new();
        for f in &self.factors {
            match out.iter_mut().find(|c| c.label == f.label) {
                Some(c) => c.multiplicity += 1,
                None => out.push(FactorCount {
                    dim: f.rep.dim(),
                    label: f.label.clone(),
                    multiplicity: 1,
                }),
            }
        }
        out.sort_by(|a, b| a.label.cmp(&b.label));
        out
    }
}

/// Irreducible pieces bottom to top, each with vectors lifting its basis.
fn split_recursive(
    rep: &Rep,
    seed: u64,
    out: &mut Vec<(Rep, Vec<Vec<Scalar>>)>,
) -> Result<(), MeataxeError> {
    let n = rep.dim();
    let f = rep.field();
    match is_irreducible(rep, seed)? {
        Irreducibility::Irreducible(_) => {
            let basis = (0..n)
                .map(|i| {
                    let mut e = vec![Scalar::ZERO; n];
                    e[i] = Scalar::ONE;
                    e
                })
                .collect();
            out.push((rep.clone(), basis));
        }
        Irreducibility::Reducible(w) => {
            let sub = rep.subrep(&w).expect("split returns an invariant subspace");
            let quo = rep.quotient(&w);
            let mut lower = Vec::new();
            split_recursive(&sub, seed, &mut lower)?;
            for (r, vs) in lower {
                let lifted = vs
                    .iter()
                    .map(|c| {
                        let mut v = vec![Scalar::ZERO; n];
                        for (coef, b) in c.iter().zip(w.basis()) {
                            f.axpy(&mut v, *coef, b);
                        }
                        v
                    })
                    .collect();
                out.push((r, lifted));
            }
            let comp = w.complement_indices();
            let mut upper = Vec::new();
            split_recursive(&quo, seed, &mut upper)?;
            for (r, vs) in upper {
                let lifted = vs
                    .iter()
                    .map(|c| {
                        let mut v = vec![Scalar::ZERO; n];
                        for (&coef, &idx) in c.iter().zip(&comp) {
                            v[idx] = coef;
                        }
                        v
                    })
                    .collect();
                out.push((r, lifted));
            }
        }
    }
    Ok(())
}

pub fn composition_series(rep: &Rep, seed: u64) -> Result<CompositionSeries, MeataxeError> {
    composition_series_with(rep, seed, IsoRegistry::new())
}

/// As [`composition_series`], labelling against an existing registry.
pub fn composition_series_with(
    rep: &Rep,
    seed: u64,
    mut registry: IsoRegistry,
) -> Result<CompositionSeries, MeataxeError> {
    let mut pieces = Vec::new();
    split_recursive(rep, seed, &mut pieces)?;
    let mut flag = vec![Subspace::zero(rep.field(), rep.dim())];
    let mut factors = Vec::new();
    for (r, vs) in pieces {
        let mut next = flag.last().unwrap().clone();
        for v in vs {
            next.insert(v);
        }
        flag.push(next);
        let label = registry.classify(&r)?;
        factors.push(Factor { label, rep: r });
    }
    Ok(CompositionSeries {
        flag,
        factors,
        registry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::Field;
    use crate::grouprep::{borel_group, exterior_power};

    #[test]
    fn lambda2_of_borel_factors_in_order() {
        let f = Field::new(5, 1).unwrap();
        let g = borel_group(&f, 3, &[]).unwrap();
        let r = Rep::standard(&g).unwrap();
        let l2 = exterior_power(&r, 2).unwrap();
        let cs = composition_series(&l2, 0).unwrap();
        assert_eq!(cs.dims(), vec![1, 1, 1]);
        // torus generator t_i scales coordinate i by the primitive element
        let gen = f.primitive_element();
        let expect = |a: usize, b: usize| -> Vec<Scalar> {
            (0..g.num_generators())
                .map(|k| if k == a || k == b { gen } else { Scalar::ONE })
                .collect()
        };
        let vals: Vec<Vec<Scalar>> = cs
            .factors
            .iter()
            .map(|x| x.rep.character_values().unwrap())
            .collect();
        assert_eq!(vals, vec![expect(0, 1), expect(0, 2), expect(1, 2)]);
        for (i, w) in cs.flag.iter().enumerate() {
            assert_eq!(w.dim(), i);
            assert!(l2.generators().iter().all(|m| w.is_invariant_under(m)));
        }
    }

    #[test]
    fn labels_are_seed_independent() {
        let f = Field::new(5, 1).unwrap();
        let g = borel_group(&f, 3, &[(2, 3)]).unwrap();
        let r = Rep::standard(&g).unwrap();
        let a = composition_series(&r, 0).unwrap().factor_counts();
        let b = composition_series(&r, 99).unwrap().factor_counts();
        assert_eq!(a, b);
    }
}
