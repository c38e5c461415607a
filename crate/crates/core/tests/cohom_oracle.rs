use modlab_core::cohom::h1;
use modlab_core::ffla::{Field, Scalar};
use modlab_core::grouprep::{cyclic_group, semidirect_group, Rep};

/// `|Z¹|` for a 1-dim module by trying every assignment on the generators
/// and checking the cocycle identity on all pairs of elements.
fn z1_size_brute_force(rep: &Rep) -> usize {
    let g = rep.group();
    let f = rep.field();
    let imgs = rep.element_images(10_000).unwrap();
    let elems: Vec<_> = imgs.iter().map(|(e, _)| e.clone()).collect();
    let chi: Vec<Scalar> = imgs.iter().map(|(_, m)| m.get(0, 0)).collect();
    let idx = |x: &modlab_core::grouprep::Element| elems.iter().position(|y| y == x).unwrap();
    let gens: Vec<usize> = g.generators().iter().map(&idx).collect();
    let q = f.order() as usize;
    let values: Vec<Scalar> = f.elements().collect();
    let mut count = 0;
    for code in 0..q.pow(gens.len() as u32) {
        // extend along right multiplication by generators
        let mut fv: Vec<Option<Scalar>> = vec![None; elems.len()];
        fv[0] = Some(Scalar::ZERO);
        let mut c = code;
        let gv: Vec<Scalar> = gens
            .iter()
            .map(|_| {
                let v = values[c % q];
                c /= q;
                v
            })
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..elems.len() {
                if let Some(fa) = fv[a] {
                    for (s, &gi) in gens.iter().enumerate() {
                        let b = idx(&g.multiply(&elems[a], &elems[gi]));
                        if fv[b].is_none() {
                            fv[b] = Some(f.add(fa, f.mul(chi[a], gv[s])));
                            changed = true;
                        }
                    }
                }
            }
        }
        let fv: Vec<Scalar> = fv.into_iter().map(Option::unwrap).collect();
        let ok = (0..elems.len()).all(|a| {
            (0..elems.len()).all(|b| {
                let ab = idx(&g.multiply(&elems[a], &elems[b]));
                fv[ab] == f.add(fv[a], f.mul(chi[a], fv[b]))
            })
        });
        count += ok as usize;
    }
    count
}

fn check(rep: &Rep) {
    let s = h1(rep, 2000).unwrap();
    let q = rep.field().order() as usize;
    assert_eq!(q.pow(s.z1_dim as u32), z1_size_brute_force(rep));
    let trivial = rep.generators().iter().all(|m| m.is_identity());
    assert_eq!(s.b1_dim, if trivial { 0 } else { 1 });
    assert!(s.pairs_verified);
}

#[test]
fn z1_matches_enumeration() {
    let f3 = Field::new(3, 1).unwrap();
    check(&Rep::trivial(&cyclic_group(3).unwrap(), &f3));
    check(&Rep::trivial(&cyclic_group(6).unwrap(), &f3));
    let s3 = semidirect_group(3, 2).unwrap();
    check(&Rep::trivial(&s3, &f3));
    check(&Rep::character(&s3, &f3, &[Scalar::ONE, f3.from_int(-1)]).unwrap());
    let f4 = Field::new(2, 2).unwrap();
    let w = f4.root_of_unity(3).unwrap();
    check(&Rep::character(&cyclic_group(3).unwrap(), &f4, &[w]).unwrap());
    check(&Rep::trivial(&cyclic_group(4).unwrap(), &f4));
    let f81 = Field::new(3, 4).unwrap();
    let g5 = semidirect_group(5, 3).unwrap();
    let i = f81.root_of_unity(4).unwrap();
    check(&Rep::character(&g5, &f81, &[Scalar::ONE, i]).unwrap());
}
