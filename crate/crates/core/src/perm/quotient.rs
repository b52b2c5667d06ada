use super::{Group, Perm};
use crate::error::{input, Result};

/// `G/N` realised as a permutation group on the right cosets `Nx`.
///
/// When `N` is trivial the quotient is `G` itself rather than its regular
/// representation.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    coset_of: Vec<u32>,
    q_of_coset: Vec<u32>,
    lift: Vec<u32>,
}

impl Quotient {
    /// Image in the quotient of the `g`-th element of the parent group.
    pub fn project(&self, g: usize) -> usize {
        self.q_of_coset[self.coset_of[g] as usize] as usize
    }

    /// Some parent-group element mapping onto quotient element `q`.
    pub fn lift(&self, q: usize) -> usize {
        self.lift[q] as usize
    }

    /// Full preimage of a subgroup `m` of the quotient.
    pub fn preimage(&self, parent: &Group, kernel: &Group, m: &Group) -> Result<Group> {
        if !m.is_subgroup_of(&self.group) {
            return input("subgroup does not lie in the quotient");
        }
        let mut gens: Vec<Perm> = kernel.generators().to_vec();
        for g in m.generators() {
            let q = self.group.index_of(g).expect("checked above");
            gens.push(parent.element(self.lift(q)).clone());
        }
        Group::generate(parent.degree(), gens, usize::MAX)
    }
}

pub fn coset_quotient(g: &Group, n: &Group) -> Result<Quotient> {
    if !n.is_subgroup_of(g) {
        return input("N is not a subgroup of G");
    }
    if !n.is_normal_in(g) {
        return input("N is not normal in G");
    }
    if n.is_trivial() {
        let ids: Vec<u32> = (0..g.order() as u32).collect();
        return Ok(Quotient {
            group: g.clone(),
            coset_of: ids.clone(),
            q_of_coset: ids.clone(),
            lift: ids,
        });
    }
    const NONE: u32 = u32::MAX;
    let mut coset_of = vec![NONE; g.order()];
    let mut reps = Vec::new();
    for i in 0..g.order() {
        if coset_of[i] != NONE {
            continue;
        }
        let c = reps.len() as u32;
        for h in n.elements() {
            let j = g.index_of(&(h * g.element(i))).expect("closed");
            coset_of[j] = c;
        }
        reps.push(i);
    }
    let index = reps.len();
    let gens: Vec<Perm> = g
        .generators()
        .iter()
        .map(|s| {
            let images = reps
                .iter()
                .map(|&r| coset_of[g.index_of(&(g.element(r) * s)).expect("closed")])
                .collect();
            Perm::from_images(images).expect("coset action is a permutation")
        })
        .collect();
    let q = Group::generate(index, gens, usize::MAX)?;
    let mut lift = vec![0u32; q.order()];
    for i in 1..q.order() {
        let (p, s) = q.tree_edge(i).expect("non-identity");
        let x = g.element(lift[p] as usize) * &g.generators()[s];
        lift[i] = g.index_of(&x).expect("closed") as u32;
    }
    let mut q_of_coset = vec![NONE; index];
    for (qi, &l) in lift.iter().enumerate() {
        q_of_coset[coset_of[l as usize] as usize] = qi as u32;
    }
    Ok(Quotient {
        group: q,
        coset_of,
        q_of_coset,
        lift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_CAP;

    fn grp(degree: usize, gens: &[&str]) -> Group {
        let gens = gens
            .iter()
            .map(|s| Perm::parse_cycles(degree, s).unwrap())
            .collect();
        Group::generate(degree, gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let q = coset_quotient(&s3, &s3).unwrap();
        assert_eq!(q.group.order(), 1);
    }

    #[test]
    fn s3_mod_a3() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let a3 = grp(3, &["(0 1 2)"]);
        let q = coset_quotient(&s3, &a3).unwrap();
        assert_eq!(q.group.order(), 2);
    }

    #[test]
    fn s4_mod_v4_is_s3() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let v4 = grp(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        let q = coset_quotient(&s4, &v4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert_eq!(q.group.class_count(), 3);
        for i in 0..s4.order() {
            let p = q.project(i);
            assert_eq!(q.project(q.lift(p)), p);
        }
        let whole = q.preimage(&s4, &v4, &q.group).unwrap();
        assert_eq!(whole.order(), 24);
        let triv = Group::trivial(q.group.degree());
        assert_eq!(q.preimage(&s4, &v4, &triv).unwrap().order(), 4);
    }

    #[test]
    fn trivial_kernel_keeps_the_group() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let q = coset_quotient(&s4, &Group::trivial(4)).unwrap();
        assert_eq!(q.group.order(), 24);
        assert_eq!(q.group.class_count(), s4.class_count());
    }

    #[test]
    fn rejects_non_normal_and_non_subgroups() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let c2 = grp(3, &["(0 1)"]);
        assert!(coset_quotient(&s3, &c2).is_err());
        let other = grp(3, &["(0 1)"]);
        let a3 = grp(3, &["(0 1 2)"]);
        assert!(coset_quotient(&a3, &other).is_err());
    }
}
