//! The verification claims, one function per claim id.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use modlab_core::cohom::{character_h1_table, hom_multiplicity_audit, negative_control};
use modlab_core::ffla::Field;
use modlab_core::gl3toy::{
    lbar_box_factor_lattice, verify_basechange_corollary, verify_box_loewy, verify_lambda2_matrix,
    verify_socle_criterion, ToyParams,
};
use modlab_core::grouprep::{borel_group, exterior_power, Partition, Rep};
use modlab_core::jhcount::{
    collision_witness, cut_to_signature, eigencharacter_count, literal_k3_witness, verify_all,
    verify_counting_lemma, DEFAULT_N_CAP,
};
use modlab_core::meataxe::{analyse, is_irreducible, Irreducibility};
use modlab_core::tame::{
    class_count, explicit_class_count, find_admissible_primes, frobenius_bound, growth_table,
    irreducible_reps, verify_irreducibles, verify_lambda2_reducible, RowVerdict, TameInstance,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Settings;
use crate::repfile::RepFile;
use crate::report::{ClaimRecord, Verdict};

/// Claim ids and the statements they check.
pub const REGISTRY: &[(&str, &str)] = &[
    (
        "cohom.character-h1",
        "H¹(G_5, χ1 ⊗ χ2^∨) = 0 for all ordered pairs of characters, so extensions of characters split",
    ),
    (
        "cohom.maschke",
        "H¹ vanishes on every character of the p = 2 analogue G_7, whose order is odd",
    ),
    (
        "cohom.multiplicity-one",
        "Multiplicity one: χ^{⊕2} is never a subrepresentation of V ⊗ W for irreducible V, W",
    ),
    (
        "cohom.negative-control",
        "H¹(Z/p, F_p) is one-dimensional and the self-extension of the trivial character does not split",
    ),
    (
        "jh.collision-witnesses",
        "The cut map is not injective whenever k ≥ 2 and n > 2",
    ),
    (
        "jh.counting-lemma",
        "Counting lemma: #J ≤ ∏ #Cut_i, strictly if ρ is not irreducible and n > 2",
    ),
    (
        "jh.cut-examples",
        "Examples (1,1,1) and (1,2) and the collision ((1,0,0),(0,1,1)) ~ ((0,1,0),(1,0,1))",
    ),
    (
        "jh.eigencharacter-oracle",
        "Isotypic signatures equal the eigencharacters of the Levi centre on L̄^⊗",
    ),
    (
        "meataxe.analysis",
        "Composition factors, socle series and radical series of a module",
    ),
    (
        "tame.admissible-primes",
        "Primes ℓ with ℓ ∤ p(p²−1)(p³−1) and p ∤ ℓ−1 have #K_ℓ ≥ 4",
    ),
    (
        "tame.class-count",
        "G_ℓ has #K_ℓ + (ℓ−1)/#K_ℓ conjugacy classes",
    ),
    (
        "tame.frobenius-bound",
        "#K_ℓ + (ℓ−1)m²/#K_ℓ ≥ ℓ·#K_ℓ forces m ≥ #K_ℓ",
    ),
    (
        "tame.growth-table",
        "#K_ℓ along the first admissible primes, with its running maximum",
    ),
    (
        "tame.irreducibles",
        "Characters and induced representations exhaust the irreducibles of G_ℓ",
    ),
    (
        "tame.lambda2-reducible",
        "σ_ℓ is irreducible of dimension #K_ℓ and Λ²σ_ℓ is reducible",
    ),
    (
        "toy.basechange",
        "Base change by P = ((1,1,0),(0,−1,0),(0,1,1)) kills the middle coupling row when p ≠ 2",
    ),
    (
        "toy.basechange-char2",
        "The same base change over GF(4), recorded without assertion",
    ),
    (
        "toy.box-loewy",
        "Loewy layers of ρ ⊠ Λ²ρ are (1,2,3,2,1), (2,5,2) or (9)",
    ),
    (
        "toy.lambda2-matrix",
        "Closed form of Λ² of an upper-triangular 3×3 matrix",
    ),
    (
        "toy.lbar-lattice",
        "Socle layers of the factors χ_a ⊠ χ_bχ_c of ρ ⊠ Λ²ρ",
    ),
    (
        "toy.socle-criterion",
        "Λ²ρ has factors χ1χ2, χ1χ3, χ2χ3, and span(e1∧e2, e1∧e3) is semisimple iff δ_b = 0",
    ),
];

pub fn location(id: &str) -> &'static str {
    REGISTRY
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, v)| *v)
        .unwrap_or_else(|| panic!("claim id {id} is not registered"))
}

const FINITE_LEVEL: &str = "checked on a finite quotient; the inflation-restriction argument for the full profinite group is not encoded";
const TOY_MODEL: &str =
    "checked on the finite model B_3(F_q); Ext groups of the Galois group are not modelled";

/// A claim ready to run.
pub struct Job {
    pub id: &'static str,
    pub run: Box<dyn Fn() -> ClaimRecord + Send + Sync>,
}

type Outcome = Result<(Verdict, Value), String>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn job<F>(id: &'static str, params: Vec<(&'static str, Value)>, seed: u64, f: F) -> Job
where
    F: Fn() -> Outcome + Send + Sync + 'static,
{
    let parameters: BTreeMap<String, Value> = params
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    Job {
        id,
        run: Box::new(move || {
            let start = Instant::now();
            let (verdict, witness) = match f() {
                Ok(x) => x,
                Err(e) => (Verdict::Fail, json!({ "error": e })),
            };
            ClaimRecord {
                claim_id: id.to_string(),
                location: location(id).to_string(),
                parameters: parameters.clone(),
                verdict,
                witness,
                runtime_ms: start.elapsed().as_millis() as u64,
                seed,
            }
        }),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn count_jh(s: &Settings) -> Vec<Job> {
    let n_max = s.n_max;
    let counting = job(
        "jh.counting-lemma",
        vec![("n_max", json!(n_max))],
        s.seed,
        move || {
            let reports = verify_all(n_max, DEFAULT_N_CAP).map_err(err)?;
            let failures: Vec<&Vec<usize>> = reports
                .iter()
                .filter(|r| !r.passes())
                .map(|r| &r.partition)
                .collect();
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "partition": r.partition,
                        "prod_cut": r.prod_cut.to_string(),
                        "card_j": r.card_j,
                        "strict": r.strict,
                        "surjective": r.surjective,
                        "method": r.method,
                    })
                })
                .collect();
            Ok((
                Verdict::from_bool(failures.is_empty()),
                json!({ "partitions": reports.len(), "failures": failures, "rows": rows }),
            ))
        },
    );
    let oracle_n = n_max.min(5);
    let oracle = job(
        "jh.eigencharacter-oracle",
        vec![("n_max", json!(oracle_n)), ("field", json!("GF(23)"))],
        s.seed,
        move || {
            let f = Field::new(23, 1).map_err(err)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 2..=oracle_n {
                for p in Partition::all_of(n) {
                    let card = verify_counting_lemma(&p, DEFAULT_N_CAP)
                        .map_err(err)?
                        .card_j;
                    let eig = eigencharacter_count(&p, &f).map_err(err)?;
                    ok &= card == eig;
                    rows.push(
                        json!({ "partition": p.blocks(), "card_j": card, "eigencharacters": eig }),
                    );
                }
            }
            Ok((Verdict::from_bool(ok), json!({ "rows": rows })))
        },
    );
    vec![counting, oracle]
}

pub fn cut_verify(s: &Settings) -> Vec<Job> {
    let n_max = s.n_max;
    let examples = job("jh.cut-examples", vec![], s.seed, || {
        let p111 = Partition::new(vec![1, 1, 1]).map_err(err)?;
        let p12 = Partition::new(vec![1, 2]).map_err(err)?;
        let r111 = verify_counting_lemma(&p111, DEFAULT_N_CAP).map_err(err)?;
        let r12 = verify_counting_lemma(&p12, DEFAULT_N_CAP).map_err(err)?;
        let (a, _) = cut_to_signature(&p111, &[vec![1, 0, 0], vec![0, 1, 1]]).map_err(err)?;
        let (b, _) = cut_to_signature(&p111, &[vec![0, 1, 0], vec![1, 0, 1]]).map_err(err)?;
        let ok = (r111.prod_cut, r111.card_j) == (9, 7)
            && (r12.prod_cut, r12.card_j) == (4, 3)
            && a == b;
        Ok((
            Verdict::from_bool(ok),
            json!({
                "(1,1,1)": { "prod_cut": r111.prod_cut.to_string(), "card_j": r111.card_j },
                "(1,2)": { "prod_cut": r12.prod_cut.to_string(), "card_j": r12.card_j },
                "collision_signatures": [a, b],
            }),
        ))
    });
    let witnesses = job(
        "jh.collision-witnesses",
        vec![("n_max", json!(n_max))],
        s.seed,
        move || {
            let mut checked = 0;
            let mut invalid = Vec::new();
            let mut literal_invalid = Vec::new();
            for n in 3..=n_max {
                for p in Partition::all_of(n) {
                    if p.k() < 2 {
                        continue;
                    }
                    checked += 1;
                    match collision_witness(&p) {
                        Some(w) if w.is_valid(&p) => {}
                        _ => invalid.push(p.blocks().to_vec()),
                    }
                    if p.k() >= 3 && !literal_k3_witness(&p).is_some_and(|w| w.is_valid(&p)) {
                        literal_invalid.push(p.blocks().to_vec());
                    }
                }
            }
            Ok((
                Verdict::from_bool(invalid.is_empty()),
                json!({
                    "checked": checked,
                    "invalid": invalid,
                    "literal_first_three_indices_invalid_for": literal_invalid,
                }),
            ))
        },
    );
    vec![examples, witnesses]
}

fn toy_basechange(id: &'static str, q: u64, seed: u64, assert: bool) -> Job {
    job(
        id,
        vec![("q", json!(q)), ("samples", json!(20))],
        seed,
        move || {
            let r = verify_basechange_corollary(ToyParams::full(q), 20, seed).map_err(err)?;
            let v = if assert {
                Verdict::from_bool(r.pass)
            } else {
                Verdict::Reported
            };
            Ok((v, json!({ "scope": TOY_MODEL, "report": r })))
        },
    )
}

pub fn toycase(s: &Settings) -> Vec<Job> {
    let (q, seed) = (s.q, s.seed);
    let qp = || vec![("q", json!(q))];
    let odd = q % 2 == 1;
    vec![
        job(
            "toy.lambda2-matrix",
            vec![("q", json!(q)), ("trials", json!(1000))],
            seed,
            move || {
                let r = verify_lambda2_matrix(q, 1000, seed).map_err(err)?;
                Ok((Verdict::from_bool(r.pass), to_value(&r)))
            },
        ),
        job("toy.socle-criterion", qp(), seed, move || {
            let r = verify_socle_criterion(q, seed).map_err(err)?;
            Ok((Verdict::from_bool(r.pass), to_value(&r)))
        }),
        job("toy.box-loewy", qp(), seed, move || {
            let r = verify_box_loewy(q, seed).map_err(err)?;
            Ok((Verdict::from_bool(r.pass), to_value(&r)))
        }),
        job("toy.lbar-lattice", qp(), seed, move || {
            let r = lbar_box_factor_lattice(q, seed).map_err(err)?;
            Ok((Verdict::from_bool(r.pass), to_value(&r)))
        }),
        toy_basechange("toy.basechange", q, seed, odd),
    ]
}

pub fn tame_search(s: &Settings) -> Result<Vec<Job>, String> {
    let (p, count, seed, cap, k_cap) = (s.p, s.count, s.seed, s.cap_group_order, s.k_cap);
    let instances = find_admissible_primes(p, count).map_err(err)?;
    let base = vec![("p", json!(p)), ("count", json!(count))];
    let insts = instances.clone();
    let primes = job("tame.admissible-primes", base.clone(), seed, move || {
        let ok = insts.iter().all(|i| {
            i.k_order >= 4
                && i.is_admissible()
                && i.order() == i.ell * i.k_order
                && i.order() % i.p != 0
        });
        Ok((Verdict::from_bool(ok), to_value(&insts)))
    });
    let insts = instances.clone();
    let mut params = base.clone();
    params.push(("cap_group_order", json!(cap)));
    let classes = job("tame.class-count", params, seed, move || {
        let mut rows = Vec::new();
        let mut ok = true;
        for i in &insts {
            let formula = class_count(i);
            let explicit = if i.order() as usize <= cap {
                Some(explicit_class_count(i, cap).map_err(err)?)
            } else {
                None
            };
            ok &= explicit.is_none_or(|e| e == formula);
            rows.push(json!({ "ell": i.ell, "formula": formula, "explicit": explicit }));
        }
        Ok((Verdict::from_bool(ok), json!({ "rows": rows })))
    });
    let insts = instances.clone();
    let frob = job("tame.frobenius-bound", base.clone(), seed, move || {
        let mut rows = Vec::new();
        let mut ok = true;
        for i in &insts {
            let r = frobenius_bound(i);
            ok &= r.m_lower == i.k_order && r.sum_of_squares_check;
            rows.push(json!({ "ell": i.ell, "k_order": i.k_order, "report": r }));
        }
        Ok((Verdict::from_bool(ok), json!({ "rows": rows })))
    });
    let insts = instances.clone();
    let mut params = base.clone();
    params.push(("k_cap", json!(k_cap)));
    let lambda2 = job("tame.lambda2-reducible", params, seed, move || {
        let mut rows = Vec::new();
        let mut ran = 0;
        let mut ok = true;
        for i in &insts {
            if i.k_order > k_cap {
                rows.push(
                    json!({ "ell": i.ell, "k_order": i.k_order, "skipped": "k_order above cap" }),
                );
                continue;
            }
            let r = verify_lambda2_reducible(i, seed).map_err(err)?;
            ran += 1;
            ok &= r.passes();
            rows.push(to_value(&r));
        }
        let v = if ran == 0 {
            Verdict::Reported
        } else {
            Verdict::from_bool(ok)
        };
        Ok((v, json!({ "rows": rows })))
    });
    let insts = instances.clone();
    let irr = job("tame.irreducibles", base.clone(), seed, move || {
        let mut rows = Vec::new();
        let mut ok = true;
        for i in &insts {
            let q = (i.p as u128).pow(i.full_splitting_degree() as u32);
            if q > 1 << 16 {
                rows.push(
                    json!({ "ell": i.ell, "skipped": format!("splitting field of order {q}") }),
                );
                continue;
            }
            let (_, r) = verify_irreducibles(i, seed).map_err(err)?;
            ok &= r.passes();
            rows.push(json!({ "ell": i.ell, "report": r }));
        }
        Ok((Verdict::from_bool(ok), json!({ "rows": rows })))
    });
    let rows_wanted = count.max(25);
    let mut params = vec![
        ("p", json!(p)),
        ("count", json!(rows_wanted)),
        ("k_cap", json!(k_cap)),
    ];
    params.sort_by_key(|(k, _)| *k);
    let growth = job("tame.growth-table", params, seed, move || {
        let rows = growth_table(p, rows_wanted, k_cap, seed).map_err(err)?;
        let failed = rows.iter().any(|r| r.verdict == RowVerdict::Failed);
        let v = if failed {
            Verdict::Fail
        } else {
            Verdict::Reported
        };
        Ok((v, json!({ "rows": rows })))
    });
    Ok(vec![primes, classes, frob, lambda2, irr, growth])
}

/// The module analysed when no file is given: `Λ²` of the standard
/// representation of `B_3(F_q)`.
pub fn builtin_module(q: u64) -> Result<Rep, String> {
    let f = Field::with_order(q).map_err(err)?;
    let g = borel_group(&f, 3, &[]).map_err(err)?;
    exterior_power(&Rep::standard(&g).map_err(err)?, 2).map_err(err)
}

pub fn meataxe(s: &Settings, rep: Option<PathBuf>) -> Vec<Job> {
    let (q, seed) = (s.q, s.seed);
    let source = match &rep {
        Some(p) => p.display().to_string(),
        None => format!("builtin: exterior square of the standard representation of B_3(F_{q})"),
    };
    let params = vec![("source", json!(source))];
    vec![job("meataxe.analysis", params, seed, move || {
        let module = match &rep {
            Some(p) => RepFile::load(p).and_then(|f| f.to_rep()).map_err(err)?,
            None => builtin_module(q)?,
        };
        let irr = is_irreducible(&module, seed).map_err(err)?;
        let certificate = match &irr {
            Irreducibility::Irreducible(c) => Some(to_value(c)),
            Irreducibility::Reducible(_) => None,
        };
        let a = analyse(&module, seed).map_err(err)?;
        let d = module.dim();
        let ok = a.report.socle_series.iter().sum::<usize>() == d
            && a.report.radical_series.iter().sum::<usize>() == d
            && a.composition.dims().iter().sum::<usize>() == d
            && irr.is_irreducible() == (a.composition.factors.len() == 1);
        Ok((
            Verdict::from_bool(ok),
            json!({
                "dim": d,
                "field_order": module.field().order(),
                "group": module.group().name(),
                "irreducible": irr.is_irreducible(),
                "certificate": certificate,
                "factors_bottom_up": a.composition.labels(),
                "series": a.report,
            }),
        ))
    })]
}

pub fn h1(s: &Settings) -> Vec<Job> {
    let (seed, cap, p) = (s.seed, s.cap_group_order, s.p);
    let g5 = vec![
        ("group", json!("G_5 (p = 3)")),
        ("cap_group_order", json!(cap)),
    ];
    vec![
        job("cohom.character-h1", g5.clone(), seed, move || {
            let t = character_h1_table(&TameInstance::new(3, 5).map_err(err)?, cap).map_err(err)?;
            Ok((
                Verdict::from_bool(t.rows.len() == 16 && t.all_vanish()),
                json!({ "scope": FINITE_LEVEL, "table": t }),
            ))
        }),
        job(
            "cohom.maschke",
            vec![
                ("group", json!("G_7 (p = 2)")),
                ("cap_group_order", json!(cap)),
            ],
            seed,
            move || {
                let inst = TameInstance::new(2, 7).map_err(err)?;
                let t = character_h1_table(&inst, cap).map_err(err)?;
                Ok((
                    Verdict::from_bool(t.all_vanish()),
                    json!({ "admissible": inst.is_admissible(), "table": t }),
                ))
            },
        ),
        job(
            "cohom.multiplicity-one",
            vec![("groups", json!(["G_5 (p = 3)", "G_7 (p = 2)"]))],
            seed,
            || {
                let mut reports = Vec::new();
                let mut ok = true;
                for (p, ell) in [(3, 5), (2, 7)] {
                    let irr =
                        irreducible_reps(&TameInstance::new(p, ell).map_err(err)?).map_err(err)?;
                    let r = hom_multiplicity_audit(&irr).map_err(err)?;
                    ok &= r.passes();
                    reports.push(r);
                }
                Ok((Verdict::from_bool(ok), to_value(&reports)))
            },
        ),
        job(
            "cohom.negative-control",
            vec![("p", json!(p))],
            seed,
            move || {
                let c = negative_control(p, cap).map_err(err)?;
                let ok = c.h1_dim == 1
                    && c.pairs_verified
                    && !c.extension.splits
                    && c.extension.consistent();
                Ok((Verdict::from_bool(ok), to_value(&c)))
            },
        ),
    ]
}

pub fn audit_all(s: &Settings) -> Result<Vec<Job>, String> {
    let mut jobs = count_jh(s);
    jobs.extend(cut_verify(s));
    jobs.extend(toycase(s));
    jobs.push(toy_basechange("toy.basechange-char2", 4, s.seed, false));
    jobs.extend(tame_search(s)?);
    jobs.extend(meataxe(s, None));
    jobs.extend(h1(s));
    Ok(jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_claim_is_registered_once() {
        let s = Settings::default();
        let jobs = audit_all(&s).unwrap();
        let mut ids: Vec<&str> = jobs.iter().map(|j| j.id).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
        for id in ids {
            location(id);
        }
        let mut reg: Vec<&str> = REGISTRY.iter().map(|(k, _)| *k).collect();
        reg.sort_unstable();
        assert!(REGISTRY.windows(2).all(|w| w[0].0 < w[1].0));
    }
}
