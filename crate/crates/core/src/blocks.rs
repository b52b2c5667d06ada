//! p-blocks, π-blocks and the inductively defined defect groups of π-blocks
//! of π-separable groups.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::primes::is_prime;
use crate::algebra::{residue_field_embedding, ExtElem};
use crate::chartab::{
    cached_table, induce_character, restrict_character, CharacterTable, ClassFunction,
};
use crate::error::{input, Error, Result};
use crate::perm::{Group, Perm};
use crate::structure::{hall_subgroup, is_pi_separable, o_pi_prime, pi_part, PrimeSet};

/// A partition of `Irr(G)` into blocks, each a sorted list of row indices;
/// blocks are ordered by their smallest member.
pub type Partition = Vec<Vec<usize>>;

/// p-blocks: `χ ~ ψ` iff their central characters agree modulo one fixed
/// prime ideal above `p`. Every character is alone when `p ∤ |G|`.
pub fn p_blocks(table: &CharacterTable, p: u64, seed: u64) -> Result<Partition> {
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    let g = table.group();
    let k = table.len();
    if !(g.order() as u64).is_multiple_of(p) {
        return Ok((0..k).map(|i| vec![i]).collect());
    }
    let emb = residue_field_embedding(g.exponent(), p, seed)?;
    let mut groups: HashMap<Vec<ExtElem>, Vec<usize>> = HashMap::new();
    for chi in 0..k {
        let key = (0..k)
            .map(|c| Ok(emb.reduce(&table.central_character(chi, c)?)))
            .collect::<Result<Vec<_>>>()?;
        groups.entry(key).or_default().push(chi);
    }
    Ok(normalise(groups.into_values().collect()))
}

/// π-blocks: connected components of "shares a p-block for some `p ∈ π`".
pub fn pi_blocks(table: &CharacterTable, pi: &PrimeSet, seed: u64) -> Result<Partition> {
    let k = table.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for &p in pi.primes() {
        for block in p_blocks(table, p, seed)? {
            for w in block.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..k {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    Ok(normalise(groups.into_values().collect()))
}

fn normalise(mut blocks: Partition) -> Partition {
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// The block of `partition` containing `chi`.
pub fn block_of(partition: &Partition, chi: usize) -> &[usize] {
    partition
        .iter()
        .find(|b| b.contains(&chi))
        .expect("partition covers every character")
}

/// Irreducible constituents of `chi` restricted to `n`, as row indices of
/// `n`'s table.
pub fn constituents(
    g: &Group,
    chi: &ClassFunction,
    n: &Group,
    n_table: &CharacterTable,
) -> Result<Vec<usize>> {
    let res = restrict_character(g, chi, n)?;
    Ok(n_table
        .decompose(&res)?
        .into_iter()
        .enumerate()
        .filter(|&(_, m)| m != 0)
        .map(|(i, _)| i)
        .collect())
}

/// Blocks of `G` lying over `λ ∈ Irr(N)`.
#[derive(Clone, Debug)]
pub struct BlockCover {
    pub lambda: usize,
    pub blocks: Vec<usize>,
}

pub fn block_cover(
    table: &CharacterTable,
    partition: &Partition,
    n: &Group,
    n_table: &CharacterTable,
    lambda: usize,
) -> Result<BlockCover> {
    let g = table.group();
    let mut blocks = Vec::new();
    for (bi, b) in partition.iter().enumerate() {
        for &chi in b {
            if constituents(g, table.character(chi), n, n_table)?.contains(&lambda) {
                blocks.push(bi);
                break;
            }
        }
    }
    Ok(BlockCover { lambda, blocks })
}

/// Stabiliser of `λ ∈ Irr(N)` under `(λ·g)(x) = λ(g x g⁻¹)`, by
/// orbit-stabiliser with Schreier generators.
pub fn inertia_group(g: &Group, n: &Group, n_table: &CharacterTable, lambda: usize) -> Result<Group> {
    if !n.is_subgroup_of(g) || !n.is_normal_in(g) {
        return input("N is not a normal subgroup");
    }
    let nc = n.classes();
    // class permutation of N induced by each generator
    let class_maps: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|s| {
            let s_inv = s.inverse();
            nc.classes
                .iter()
                .map(|c| {
                    let x = &(s * &c.representative) * &s_inv;
                    n.class_of_perm(&x).expect("N is normal")
                })
                .collect()
        })
        .collect();
    let index: HashMap<&ClassFunction, usize> = (0..n_table.len())
        .map(|i| (n_table.character(i), i))
        .collect();
    let act = |chi: usize, s: usize| -> Result<usize> {
        let moved: ClassFunction = class_maps[s]
            .iter()
            .map(|&c| n_table.value(chi, c).clone())
            .collect();
        index
            .get(&moved)
            .copied()
            .ok_or_else(|| Error::Internal("conjugate character is not irreducible".into()))
    };
    let mut transversal: HashMap<usize, Perm> = HashMap::new();
    transversal.insert(lambda, Perm::identity(g.degree()));
    let mut orbit = vec![lambda];
    let mut head = 0;
    let mut schreier = Vec::new();
    while head < orbit.len() {
        let i = orbit[head];
        head += 1;
        for (si, s) in g.generators().iter().enumerate() {
            let j = act(i, si)?;
            let t = &transversal[&i] * s;
            match transversal.get(&j) {
                Some(tj) => {
                    let h = &t * &tj.inverse();
                    if !h.is_identity() {
                        schreier.push(h);
                    }
                }
                None => {
                    transversal.insert(j, t);
                    orbit.push(j);
                }
            }
        }
    }
    if orbit.len() == 1 {
        return Ok(g.clone());
    }
    let mut stab = n.clone();
    for h in schreier {
        if !stab.contains(&h) {
            stab = stab.extend(&h, usize::MAX)?.expect("unbounded");
        }
    }
    if stab.order() * orbit.len() != g.order() {
        return Err(Error::Internal("orbit-stabiliser count mismatch".into()));
    }
    Ok(stab)
}

/// The irreducible `ψ` of `G_λ` lying over `λ` with `ψ^G = χ`, as a row of
/// `G_λ`'s table.
pub fn clifford_correspondent(
    g: &Group,
    chi: &ClassFunction,
    inertia: &Group,
    inertia_table: &CharacterTable,
    n: &Group,
    n_table: &CharacterTable,
    lambda: usize,
) -> Result<usize> {
    let res = restrict_character(g, chi, inertia)?;
    for (psi, m) in inertia_table.decompose(&res)?.into_iter().enumerate() {
        if m == 0 {
            continue;
        }
        let psi_values = inertia_table.character(psi);
        if !constituents(inertia, psi_values, n, n_table)?.contains(&lambda) {
            continue;
        }
        if &induce_character(inertia, psi_values, g)? == chi {
            return Ok(psi);
        }
    }
    Err(Error::Internal(
        "no Clifford correspondent over the chosen constituent".into(),
    ))
}

/// Defect group of the π-block `block` (rows of `G`'s table): take the
/// lowest χ in the block and the lowest constituent λ of its restriction to
/// `O_π'(G)`; a Hall π-subgroup if λ is `G`-invariant, otherwise recurse
/// into the π-block of the inertia group holding the Clifford correspondent.
pub fn defect_group(g: &Group, pi: &PrimeSet, block: &[usize], seed: u64) -> Result<Group> {
    if block.is_empty() {
        return input("empty block");
    }
    if !is_pi_separable(g, pi)? {
        return Err(Error::Precondition(format!("group is not {pi}-separable")));
    }
    let mut current = g.clone();
    let mut chi = *block.iter().min().unwrap();
    loop {
        match descend(&current, pi, chi, None, seed)? {
            Step::Base => return hall_subgroup(&current, pi, seed),
            Step::Into { inertia, block } => {
                chi = block[0];
                current = inertia;
            }
        }
    }
}

enum Step {
    Base,
    Into { inertia: Group, block: Vec<usize> },
}

/// One recursion step from `χ`; `lambda` overrides the default choice of
/// the lowest constituent.
fn descend(g: &Group, pi: &PrimeSet, chi: usize, lambda: Option<usize>, seed: u64) -> Result<Step> {
    let table = cached_table(g, seed)?;
    let n = o_pi_prime(g, pi)?;
    if n.is_trivial() {
        return Ok(Step::Base);
    }
    let n_table = cached_table(&n, seed)?;
    let lambda = match lambda {
        Some(l) => l,
        None => constituents(g, table.character(chi), &n, &n_table)?[0],
    };
    let inertia = inertia_group(g, &n, &n_table, lambda)?;
    if inertia.order() == g.order() {
        return Ok(Step::Base);
    }
    let it = cached_table(&inertia, seed)?;
    let psi = clifford_correspondent(g, table.character(chi), &inertia, &it, &n, &n_table, lambda)?;
    let partition = pi_blocks(&it, pi, seed)?;
    let block = block_of(&partition, psi).to_vec();
    Ok(Step::Into { inertia, block })
}

/// Orders of the defect groups reached over every choice of `χ ∈ B` and of
/// constituent `λ` at every level of the recursion.
pub fn defect_orders_all_choices(
    g: &Group,
    pi: &PrimeSet,
    block: &[usize],
    seed: u64,
) -> Result<BTreeSet<usize>> {
    if !is_pi_separable(g, pi)? {
        return Err(Error::Precondition(format!("group is not {pi}-separable")));
    }
    let mut out = BTreeSet::new();
    all_choices(g, pi, block, seed, &mut out)?;
    Ok(out)
}

fn all_choices(
    g: &Group,
    pi: &PrimeSet,
    block: &[usize],
    seed: u64,
    out: &mut BTreeSet<usize>,
) -> Result<()> {
    let table = cached_table(g, seed)?;
    let n = o_pi_prime(g, pi)?;
    let hall_order = pi_part(g.order() as u64, pi) as usize;
    if n.is_trivial() {
        out.insert(hall_order);
        return Ok(());
    }
    let n_table = cached_table(&n, seed)?;
    for &chi in block {
        for lambda in constituents(g, table.character(chi), &n, &n_table)? {
            match descend(g, pi, chi, Some(lambda), seed)? {
                Step::Base => {
                    out.insert(hall_order);
                }
                Step::Into { inertia, block } => all_choices(&inertia, pi, &block, seed, out)?,
            }
        }
    }
    Ok(())
}

/// `#{χ ∈ B : χ(1)_π·|D| = |G|_π}`.
pub fn k0_count(table: &CharacterTable, pi: &PrimeSet, block: &[usize], defect_order: usize) -> usize {
    let target = pi_part(table.group().order() as u64, pi);
    block
        .iter()
        .filter(|&&chi| pi_part(table.degree(chi), pi) * defect_order as u64 == target)
        .count()
}

/// `max_{χ ∈ B} |G|_p / χ(1)_p`, the classical defect-group order.
pub fn classical_defect_order(table: &CharacterTable, p: u64, block: &[usize]) -> u64 {
    let ps = PrimeSet::singleton(p).expect("prime");
    let gp = pi_part(table.group().order() as u64, &ps);
    block
        .iter()
        .map(|&chi| gp / pi_part(table.degree(chi), &ps))
        .max()
        .unwrap_or(1)
}

/// One π-block with its derived invariants.
#[derive(Clone, Debug, Serialize)]
pub struct BlockInfo {
    pub characters: Vec<usize>,
    pub degrees: Vec<u64>,
    pub k: usize,
    pub defect: Option<DefectInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectInfo {
    pub order: usize,
    pub generators: Vec<String>,
    pub abelian: bool,
    /// `|D : D'|`.
    pub abelianization: usize,
    pub k0: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockAnalysis {
    pub pi: String,
    pub group_order: usize,
    pub separable: bool,
    /// Set when defect groups were skipped because the group is not
    /// π-separable.
    pub note: Option<String>,
    pub blocks: Vec<BlockInfo>,
}

/// π-blocks with defect groups, `k(B)` and `k₀(B)`. For groups that are
/// not π-separable only the partition is reported.
pub fn analyze_blocks(g: &Group, pi: &PrimeSet, seed: u64) -> Result<BlockAnalysis> {
    let table = cached_table(g, seed)?;
    let separable = is_pi_separable(g, pi)?;
    let partition = pi_blocks(&table, pi, seed)?;
    let mut blocks = Vec::with_capacity(partition.len());
    for b in partition {
        let defect = if separable {
            let d = defect_group(g, pi, &b, seed)?;
            let derived = d.derived_subgroup()?;
            Some(DefectInfo {
                order: d.order(),
                generators: d.generators().iter().map(ToString::to_string).collect(),
                abelian: d.is_abelian(),
                abelianization: d.order() / derived.order(),
                k0: k0_count(&table, pi, &b, d.order()),
            })
        } else {
            None
        };
        blocks.push(BlockInfo {
            degrees: b.iter().map(|&c| table.degree(c)).collect(),
            k: b.len(),
            characters: b,
            defect,
        });
    }
    Ok(BlockAnalysis {
        pi: pi.to_string(),
        group_order: g.order(),
        separable,
        note: (!separable).then(|| "group is not π-separable; defect theory not applicable".into()),
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_CAP;

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens = gens
            .iter()
            .map(|s| Perm::parse_cycles(degree, s).unwrap())
            .collect();
        Group::generate(degree, gens, DEFAULT_CAP).unwrap()
    }

    fn pi(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    #[test]
    fn a5_blocks() {
        let g = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let t = cached_table(&g, 0).unwrap();
        assert_eq!(t.degrees(), &[1, 3, 3, 4, 5]);
        assert_eq!(p_blocks(&t, 2, 0).unwrap(), vec![vec![0, 1, 2, 4], vec![3]]);
        assert_eq!(p_blocks(&t, 5, 0).unwrap(), vec![vec![0, 1, 2, 3], vec![4]]);
        assert_eq!(p_blocks(&t, 3, 0).unwrap(), vec![vec![0, 3, 4], vec![1], vec![2]]);
        assert_eq!(p_blocks(&t, 7, 0).unwrap().len(), 5);
        assert!(p_blocks(&t, 4, 0).is_err());
        assert_eq!(pi_blocks(&t, &pi("2"), 0).unwrap(), p_blocks(&t, 2, 0).unwrap());
        assert_eq!(pi_blocks(&t, &pi("7"), 0).unwrap().len(), 5);
    }

    #[test]
    fn partitions_ignore_the_embedding_seed() {
        let g = group(6, &["(0 1)", "(0 1 2 3 4 5)"]);
        let t = cached_table(&g, 0).unwrap();
        for p in [2, 3, 5] {
            let a = p_blocks(&t, p, 1).unwrap();
            for seed in [2, 3, 77] {
                assert_eq!(a, p_blocks(&t, p, seed).unwrap());
            }
        }
    }

    #[test]
    fn s3_inertia_and_clifford() {
        let s3 = group(3, &["(0 1)", "(0 1 2)"]);
        let a3 = group(3, &["(0 1 2)"]);
        let ts = cached_table(&s3, 0).unwrap();
        let ta = cached_table(&a3, 0).unwrap();
        assert_eq!(inertia_group(&s3, &a3, &ta, 0).unwrap().order(), 6);
        for lam in 1..3 {
            let h = inertia_group(&s3, &a3, &ta, lam).unwrap();
            assert!(h.same_elements(&a3));
            let psi = clifford_correspondent(&s3, ts.character(2), &h, &ta, &a3, &ta, lam).unwrap();
            assert_eq!(psi, lam);
        }
        let center = Group::trivial(3);
        let tc = cached_table(&center, 0).unwrap();
        assert_eq!(inertia_group(&s3, &center, &tc, 0).unwrap().order(), 6);
    }

    #[test]
    fn frobenius_21_correspondents() {
        let g = group(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]);
        let n = group(7, &["(0 1 2 3 4 5 6)"]);
        let tg = cached_table(&g, 0).unwrap();
        let tn = cached_table(&n, 0).unwrap();
        assert_eq!(tg.degrees(), &[1, 1, 1, 3, 3]);
        for chi in [3, 4] {
            let lam = constituents(&g, tg.character(chi), &n, &tn).unwrap();
            assert_eq!(lam.len(), 3);
            for &l in &lam {
                let h = inertia_group(&g, &n, &tn, l).unwrap();
                assert!(h.same_elements(&n));
                let psi = clifford_correspondent(&g, tg.character(chi), &h, &tn, &n, &tn, l).unwrap();
                assert_eq!(psi, l);
            }
        }
    }

    #[test]
    fn defect_groups_of_small_groups() {
        // π-group: D = G
        let d8 = group(4, &["(0 1 2 3)", "(0 2)"]);
        let t = cached_table(&d8, 0).unwrap();
        let part = pi_blocks(&t, &pi("2"), 0).unwrap();
        assert_eq!(part.len(), 1);
        assert_eq!(defect_group(&d8, &pi("2"), &part[0], 0).unwrap().order(), 8);
        assert_eq!(k0_count(&t, &pi("2"), &part[0], 8), 4);
        // S4 with p = 3 and p = 2
        let s4 = group(4, &["(0 1)", "(0 1 2 3)"]);
        let t = cached_table(&s4, 0).unwrap();
        for p in [2u64, 3] {
            for b in p_blocks(&t, p, 0).unwrap() {
                let d = defect_group(&s4, &pi(&p.to_string()), &b, 0).unwrap();
                assert_eq!(d.order() as u64, classical_defect_order(&t, p, &b), "p={p} {b:?}");
                let all = defect_orders_all_choices(&s4, &pi(&p.to_string()), &b, 0).unwrap();
                assert_eq!(all.len(), 1);
            }
        }
        let a5 = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let t = cached_table(&a5, 0).unwrap();
        assert!(matches!(
            defect_group(&a5, &pi("2"), &[0], 0),
            Err(Error::Precondition(_))
        ));
        let a = analyze_blocks(&a5, &pi("2"), 0).unwrap();
        assert!(!a.separable && a.blocks.iter().all(|b| b.defect.is_none()));
        assert_eq!(a.blocks.len(), p_blocks(&t, 2, 0).unwrap().len());
    }

    #[test]
    fn abelian_full_pi() {
        let g = group(6, &["(0 1 2 3 4 5)"]);
        let a = analyze_blocks(&g, &pi("2,3"), 0).unwrap();
        assert_eq!(a.blocks.len(), 1);
        let d = a.blocks[0].defect.as_ref().unwrap();
        assert_eq!((d.order, d.k0, d.abelianization), (6, 6, 6));
    }
}
