//! Degree-one cohomology of finite groups by cocycle linear algebra.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::ffla::{FflaError, Field, Mat, Scalar, Subspace};
use crate::grouprep::{cyclic_group, dual, tensor, Element, GroupError, Rep};
use crate::meataxe::{hom_space, MeataxeError};
use crate::tame::{irreducible_reps, NamedRep, TameError, TameInstance};

/// Largest group order accepted by default.
pub const DEFAULT_ORDER_CAP: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomError {
    #[error("expected a one-dimensional representation, got dimension {0}")]
    NotOneDimensional(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Meataxe(#[from] MeataxeError),
    #[error(transparent)]
    Tame(#[from] TameError),
    #[error(transparent)]
    Field(#[from] FflaError),
}

/// `Z¹`, `B¹` and `H¹` of a module. A cocycle is stored by its values on
/// the generators, concatenated.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleSpace {
    pub group: String,
    pub order: usize,
    pub module_dim: usize,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    pub z1_basis: Vec<Vec<Scalar>>,
    /// Every basis cocycle satisfies `f(gh) = f(g) + g f(h)` on all pairs.
    pub pairs_verified: bool,
    #[serde(skip)]
    elements: Vec<Element>,
    /// `f(g) = L_g u` for the generator values `u`.
    #[serde(skip)]
    lifts: Vec<Mat>,
    #[serde(skip)]
    b1: Subspace,
}

impl CocycleSpace {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// All values `f(g)`, in the order of [`CocycleSpace::elements`].
    pub fn values(&self, u: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.lifts.iter().map(|l| l.mul_vec(u)).collect()
    }

    pub fn is_coboundary(&self, u: &[Scalar]) -> bool {
        self.b1.contains(u)
    }
}

/// Breadth-first from the identity, every `f(g)` is written in terms of
/// the generator values through `f(gs) = f(g) + g f(s)`; the non-tree
/// edges give the equations. The set of `h` with `f(gh) = f(g) + g f(h)`
/// for all `g` is closed under products, so these equations force the
/// cocycle identity on all pairs.
pub fn h1(module: &Rep, cap: usize) -> Result<CocycleSpace, CohomError> {
    let group = module.group();
    let field = module.field();
    let d = module.dim();
    let n = group.num_generators() * d;
    let id = group.identity();
    let mut index: HashMap<Element, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elements = vec![id];
    let mut images = vec![Mat::identity(field, d)];
    let mut lifts = vec![Mat::zeros(field, d, n)];
    let mut equations = Subspace::zero(field, n);
    let mut next = 0;
    while next < elements.len() {
        for (s, gen) in group.generators().iter().enumerate() {
            let x = group.multiply(&elements[next], gen);
            // L_g + ρ(g) E_s
            let mut cand = lifts[next].clone();
            for r in 0..d {
                for c in 0..d {
                    let v = field.add(cand.get(r, s * d + c), images[next].get(r, c));
                    cand.set(r, s * d + c, v);
                }
            }
            match index.get(&x) {
                Some(&j) => {
                    for row in lifts[j].sub(&cand).row_vectors() {
                        equations.insert(row);
                    }
                }
                None => {
                    if elements.len() >= cap {
                        return Err(GroupError::TooLarge {
                            order: group.known_order().unwrap_or(elements.len() as u64 + 1),
                            cap,
                        }
                        .into());
                    }
                    index.insert(x.clone(), elements.len());
                    images.push(images[next].mul(module.generator(s)));
                    elements.push(x);
                    lifts.push(cand);
                }
            }
        }
        next += 1;
    }
    let z1 = equations.annihilator();
    // v ↦ (s ↦ (s − 1)v)
    let mut b1 = Subspace::zero(field, n);
    for k in 0..d {
        let mut v = vec![Scalar::ZERO; d];
        v[k] = Scalar::ONE;
        let mut u = Vec::with_capacity(n);
        for g in module.generators() {
            let mut w = g.mul_vec(&v);
            w[k] = field.sub(w[k], Scalar::ONE);
            u.extend(w);
        }
        b1.insert(u);
    }
    let mut space = CocycleSpace {
        group: group.name().to_string(),
        order: elements.len(),
        module_dim: d,
        z1_dim: z1.dim(),
        b1_dim: b1.dim(),
        h1_dim: z1.dim() - b1.dim(),
        z1_basis: z1.basis().to_vec(),
        pairs_verified: false,
        elements,
        lifts,
        b1,
    };
    space.pairs_verified = verify_pairs(&space, module, &images, &index);
    Ok(space)
}

fn verify_pairs(
    space: &CocycleSpace,
    module: &Rep,
    images: &[Mat],
    index: &HashMap<Element, usize>,
) -> bool {
    let group = module.group();
    let field = module.field();
    let elems = &space.elements;
    let table: Vec<Vec<usize>> = (0..elems.len())
        .map(|a| {
            (0..elems.len())
                .map(|b| index[&group.multiply(&elems[a], &elems[b])])
                .collect()
        })
        .collect();
    space.z1_basis.iter().all(|u| {
        let f = space.values(u);
        (0..elems.len()).all(|a| {
            (0..elems.len()).all(|b| {
                let mut rhs = images[a].mul_vec(&f[b]);
                for (x, y) in rhs.iter_mut().zip(&f[a]) {
                    *x = field.add(*x, *y);
                }
                rhs == f[table[a][b]]
            })
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub h1_dim: usize,
    /// `H¹(G, χ1 ⊗ χ2^∨) = 0`.
    pub splits: bool,
    pub cocycles_tested: usize,
    /// Basis extensions conjugated to diagonal form by an explicit matrix.
    pub diagonalized: usize,
    /// For every basis cocycle, the assembled extension is diagonalizable
    /// exactly when the cocycle is a coboundary.
    pub direct_search_agrees: bool,
}

impl ExtensionReport {
    pub fn consistent(&self) -> bool {
        self.direct_search_agrees && self.splits == (self.diagonalized == self.cocycles_tested)
    }
}

/// The extension `[[χ1, b], [0, χ2]]` with `b(s) = f(s) χ2(s)`.
fn assemble(chi1: &Rep, chi2: &Rep, u: &[Scalar]) -> Result<Rep, CohomError> {
    let f = chi1.field();
    let gens = (0..chi1.generators().len())
        .map(|s| {
            let (a, c) = (chi1.generator(s).get(0, 0), chi2.generator(s).get(0, 0));
            Mat::from_rows(f, &[vec![a, f.mul(u[s], c)], vec![Scalar::ZERO, c]])
        })
        .collect();
    Ok(Rep::new(chi1.group().clone(), f.clone(), gens)?)
}

/// A matrix `P` with `P⁻¹ E(g) P` diagonal for all generators, from a map
/// `χ2 → E` that leaves the line `χ1`.
fn diagonalizer(chi2: &Rep, e: &Rep) -> Result<Option<Mat>, CohomError> {
    let f = e.field();
    for x in hom_space(chi2, e)? {
        if !x.get(1, 0).is_zero() {
            let p = Mat::from_rows(
                f,
                &[
                    vec![Scalar::ONE, x.get(0, 0)],
                    vec![Scalar::ZERO, x.get(1, 0)],
                ],
            );
            let pi = p.inverse().expect("upper triangular with nonzero diagonal");
            let diagonal = e.generators().iter().all(|g| {
                let c = pi.mul(g).mul(&p);
                c.get(0, 1).is_zero() && c.get(1, 0).is_zero()
            });
            return Ok(diagonal.then_some(p));
        }
    }
    Ok(None)
}

/// Whether every extension of `chi2` by `chi1` splits, with a direct check
/// on each basis cocycle.
pub fn extension_splits(chi1: &Rep, chi2: &Rep, cap: usize) -> Result<ExtensionReport, CohomError> {
    for c in [chi1, chi2] {
        if c.dim() != 1 {
            return Err(CohomError::NotOneDimensional(c.dim()));
        }
    }
    let m = tensor(chi1, &dual(chi2))?;
    let space = h1(&m, cap)?;
    let mut diagonalized = 0;
    let mut agrees = true;
    for u in &space.z1_basis {
        let e = assemble(chi1, chi2, u)?;
        let ok = diagonalizer(chi2, &e)?.is_some();
        diagonalized += ok as usize;
        agrees &= ok == space.is_coboundary(u);
    }
    Ok(ExtensionReport {
        h1_dim: space.h1_dim,
        splits: space.h1_dim == 0,
        cocycles_tested: space.z1_basis.len(),
        diagonalized,
        direct_search_agrees: agrees,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct H1Row {
    pub chi1: String,
    pub chi2: String,
    pub h1_dim: usize,
    pub pairs_verified: bool,
    pub extension: ExtensionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterH1Table {
    pub group: String,
    pub field: String,
    pub rows: Vec<H1Row>,
}

impl CharacterH1Table {
    pub fn all_vanish(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.h1_dim == 0 && r.pairs_verified && r.extension.consistent())
    }
}

/// `H¹(G_l, χ1 ⊗ χ2^∨)` for every ordered pair of one-dimensional
/// irreducibles over the full splitting field. Every one-dimensional module
/// occurs, as the pair `(χ, 1)`.
pub fn character_h1_table(inst: &TameInstance, cap: usize) -> Result<CharacterH1Table, CohomError> {
    let chars: Vec<NamedRep> = irreducible_reps(inst)?
        .into_iter()
        .filter(|n| n.rep.dim() == 1)
        .collect();
    let mut rows = Vec::new();
    for a in &chars {
        for b in &chars {
            let m = tensor(&a.rep, &dual(&b.rep))?;
            let space = h1(&m, cap)?;
            rows.push(H1Row {
                chi1: a.label.clone(),
                chi2: b.label.clone(),
                h1_dim: space.h1_dim,
                pairs_verified: space.pairs_verified,
                extension: extension_splits(&a.rep, &b.rep, cap)?,
            });
        }
    }
    Ok(CharacterH1Table {
        group: inst.group.name().to_string(),
        field: format!("GF({}^{})", inst.p, inst.full_splitting_degree()),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeControl {
    pub p: u64,
    pub h1_dim: usize,
    pub pairs_verified: bool,
    pub extension: ExtensionReport,
}

/// `H¹(Z/p, F_p)`, which is one-dimensional, and the non-split extension
/// of the trivial character by itself.
pub fn negative_control(p: u64, cap: usize) -> Result<NegativeControl, CohomError> {
    let f = Field::new(p, 1)?;
    let g = cyclic_group(p)?;
    let triv = Rep::trivial(&g, &f);
    let space = h1(&triv, cap)?;
    Ok(NegativeControl {
        p,
        h1_dim: space.h1_dim,
        pairs_verified: space.pairs_verified,
        extension: extension_splits(&triv, &triv, cap)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityEntry {
    pub v: String,
    pub w: String,
    pub chi: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub group: String,
    pub entries: Vec<MultiplicityEntry>,
    pub max_multiplicity: usize,
}

impl MultiplicityReport {
    pub fn passes(&self) -> bool {
        self.max_multiplicity <= 1
    }
}

/// `dim Hom(χ, V ⊗ W)` for every unordered pair of irreducibles and every
/// one-dimensional `χ`.
pub fn hom_multiplicity_audit(irreducibles: &[NamedRep]) -> Result<MultiplicityReport, CohomError> {
    let group = irreducibles
        .first()
        .map(|n| n.rep.group().name().to_string())
        .unwrap_or_default();
    let chars: Vec<&NamedRep> = irreducibles.iter().filter(|n| n.rep.dim() == 1).collect();
    let mut entries = Vec::new();
    for (i, v) in irreducibles.iter().enumerate() {
        for w in &irreducibles[i..] {
            let vw = tensor(&v.rep, &w.rep)?;
            for chi in &chars {
                entries.push(MultiplicityEntry {
                    v: v.label.clone(),
                    w: w.label.clone(),
                    chi: chi.label.clone(),
                    multiplicity: hom_space(&chi.rep, &vw)?.len(),
                });
            }
        }
    }
    let max_multiplicity = entries.iter().map(|e| e.multiplicity).max().unwrap_or(0);
    Ok(MultiplicityReport {
        group,
        entries,
        max_multiplicity,
    })
}
