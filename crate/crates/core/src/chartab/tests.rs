use super::*;
use crate::perm::{Perm, DEFAULT_CAP};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group(degree: usize, gens: &[&str]) -> Group {
    let gens = gens
        .iter()
        .map(|s| Perm::parse_cycles(degree, s).unwrap())
        .collect();
    Group::generate(degree, gens, DEFAULT_CAP).unwrap()
}

fn table(g: &Group) -> CharacterTable {
    let t = character_table(Arc::new(g.clone()), 7).unwrap();
    t.verify().unwrap();
    t
}

fn s3() -> Group {
    group(3, &["(0 1)", "(0 1 2)"])
}

fn a3() -> Group {
    group(3, &["(0 1 2)"])
}

/// Number of fixed points, as a class function.
fn permutation_character(g: &Group) -> ClassFunction {
    g.classes()
        .classes
        .iter()
        .map(|c| {
            let fixed = (0..g.degree() as u32)
                .filter(|&x| c.representative.apply(x) == x)
                .count();
            Cyclotomic::from_int(c.order, fixed as i64)
        })
        .collect()
}

#[test]
fn cyclic_four() {
    let t = table(&group(4, &["(0 1 2 3)"]));
    assert_eq!(t.degrees(), &[1, 1, 1, 1]);
    let allowed = [
        Cyclotomic::from_int(4, 1),
        Cyclotomic::from_int(4, -1),
        Cyclotomic::zeta_pow(4, 1),
        Cyclotomic::zeta_pow(4, 3),
    ];
    for chi in 0..4 {
        for (c, v) in t.character(chi).iter().enumerate() {
            let n = t.group().classes().classes[c].order;
            assert!(allowed.iter().any(|a| a == &v.lift(4)), "{v} on order {n}");
        }
    }
}

#[test]
fn symmetric_three() {
    let g = s3();
    let t = table(&g);
    assert_eq!(t.degrees(), &[1, 1, 2]);
    let sizes: Vec<u64> = t.class_sizes();
    assert_eq!(sizes, vec![1, 3, 2]);
    // sign character, then the degree-2 with values 2, 0, -1
    let ints = |chi: usize| -> Vec<i64> {
        t.character(chi)
            .iter()
            .map(|v| v.as_integer().unwrap().try_into().unwrap())
            .collect()
    };
    assert_eq!(ints(0), vec![1, 1, 1]);
    assert_eq!(ints(1), vec![1, -1, 1]);
    assert_eq!(ints(2), vec![2, 0, -1]);
}

#[test]
fn alternating_five() {
    let g = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
    let t = table(&g);
    assert_eq!(t.degrees(), &[1, 3, 3, 4, 5]);
    let pi = permutation_character(&g);
    assert_eq!(t.inner_product(&pi, &pi).unwrap(), 2);
    let dec = t.decompose(&pi).unwrap();
    assert_eq!(dec, vec![1, 0, 0, 1, 0]);
}

#[test]
fn larger_tables_are_orthogonal() {
    for g in [
        group(6, &["(0 1)", "(0 1 2 3 4 5)"]),
        group(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]),
        group(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]),
        group(9, &["(0 1 2)", "(3 4 5)", "(6 7 8)", "(0 3 6)(1 4 7)(2 5 8)"]),
    ] {
        let t = table(&g);
        let pi = permutation_character(&g);
        let dec = t.decompose(&pi).unwrap();
        assert!(dec.iter().all(|&m| m >= 0));
        assert_eq!(dec[0], 1, "transitive action");
    }
}

#[test]
fn inner_products() {
    let g = group(4, &["(0 1)", "(0 1 2 3)"]);
    let t = table(&g);
    for chi in 0..t.len() {
        assert_eq!(t.inner_product(t.character(chi), t.character(chi)).unwrap(), 1);
        assert_eq!(
            t.inner_product(&t.regular_character(), t.character(chi)).unwrap(),
            t.degree(chi) as i64
        );
    }
    let s = s3();
    let ts = table(&s);
    let h = a3();
    let th = table(&h);
    let res = restrict_character(&s, ts.character(2), &h).unwrap();
    for lam in 1..3 {
        assert_eq!(th.inner_product(&res, th.character(lam)).unwrap(), 1);
    }
    assert_eq!(th.inner_product(&res, th.character(0)).unwrap(), 0);
}

#[test]
fn restriction_and_induction() {
    let s = s3();
    let ts = table(&s);
    let h = a3();
    let th = table(&h);
    let one = Group::trivial(3);
    let r = restrict_character(&s, ts.character(2), &one).unwrap();
    assert_eq!(r, vec![Cyclotomic::from_int(1, 2)]);
    assert_eq!(
        restrict_character(&s, ts.character(0), &h).unwrap(),
        th.trivial_character()
    );
    let ind = induce_character(&h, th.character(0), &s).unwrap();
    assert_eq!(ts.decompose(&ind).unwrap(), vec![1, 1, 0]);
    let ind = induce_character(&h, th.character(1), &s).unwrap();
    assert_eq!(&ind, ts.character(2));
    assert_eq!(
        induce_character(&s, ts.character(0), &s).unwrap(),
        ts.trivial_character()
    );
    let outside = group(4, &["(0 1 2 3)"]);
    assert!(restrict_character(&s, ts.character(0), &outside).is_err());
}

#[test]
fn central_characters() {
    let s = s3();
    let t = table(&s);
    for chi in 0..3 {
        assert_eq!(t.central_character(chi, 0).unwrap().as_integer(), Some(1.into()));
    }
    assert!(t.central_character(2, 1).unwrap().is_zero());
    // linear: ω = |K|·χ(g)
    assert_eq!(t.central_character(1, 1).unwrap().as_integer(), Some((-3).into()));
}

#[test]
fn class_multiplication() {
    let s = s3();
    let a = class_mult_coeffs(&s);
    let k = a.len();
    for j in 0..k {
        for t in 0..k {
            assert_eq!(a[t][0][j], u32::from(j == t));
        }
    }
    // two transpositions multiplying to a fixed 3-cycle
    assert_eq!(a[2][1][1], 3);
    assert_eq!(class_mult_coeff(&s, 1, 1, 2), 3);
    let g = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
    let a = class_mult_coeffs(&g);
    let cd = g.classes();
    // a[t][i][j]·|K_t| does not depend on the representative chosen
    for t in 0..cd.classes.len() {
        let z = g.element(*cd.members[t].last().unwrap() as usize).clone();
        for i in 0..cd.classes.len() {
            for j in 0..cd.classes.len() {
                let direct = cd.members[i]
                    .iter()
                    .filter(|&&x| {
                        let y = g.element(g.inverse_index(x as usize)) * &z;
                        g.class_of_perm(&y) == Some(j)
                    })
                    .count() as u32;
                assert_eq!(direct, a[t][i][j]);
            }
        }
    }
}

#[test]
fn tables_do_not_depend_on_seed() {
    let g = group(6, &["(0 1 2 3 4 5)", "(0 5)(1 4)(2 3)", "(0 2 4)"]);
    let a = character_table(Arc::new(g.clone()), 1).unwrap();
    for seed in [2, 99, 12345] {
        let b = character_table(Arc::new(g.clone()), seed).unwrap();
        assert_eq!(a.values, b.values);
    }
}

#[test]
fn frobenius_reciprocity_on_random_subgroups() {
    let g = group(5, &["(0 1)", "(0 1 2 3 4)"]);
    let tg = table(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..15 {
        let x = g.element(rng.gen_range(0..g.order())).clone();
        let y = g.element(rng.gen_range(0..g.order())).clone();
        let h = Group::generate(5, vec![x, y], DEFAULT_CAP).unwrap();
        let th = table(&h);
        let psi = rng.gen_range(0..th.len());
        let chi = rng.gen_range(0..tg.len());
        let ind = induce_character(&h, th.character(psi), &g).unwrap();
        let res = restrict_character(&g, tg.character(chi), &h).unwrap();
        assert_eq!(
            tg.inner_product(&ind, tg.character(chi)).unwrap(),
            th.inner_product(th.character(psi), &res).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn cyclic_and_dihedral_tables(n in 2usize..14, dihedral in any::<bool>()) {
        let rot = Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
        let mut gens = vec![rot];
        if dihedral {
            gens.push(Perm::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap());
        }
        let g = Group::generate(n, gens, DEFAULT_CAP).unwrap();
        let t = character_table(Arc::new(g.clone()), n as u64).unwrap();
        prop_assert!(t.verify().is_ok());
        if !dihedral {
            prop_assert_eq!(t.linear_count(), n);
        }
    }
}
