use std::collections::VecDeque;
use std::sync::OnceLock;

use num_integer::Integer;
use rustc_hash::FxHashMap;
use sha2::{Digest, Sha256};

use super::Perm;
use crate::error::{input, Error, Result};

/// Default limit on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Lexicographically smallest member.
    pub representative: Perm,
    /// Position of the representative in the group's element list.
    pub rep_index: usize,
    pub size: usize,
    pub order: u64,
    pub index: usize,
}

/// Conjugacy classes together with the element-to-class lookup.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    /// `class_of[i]` is the class of the `i`-th enumerated element.
    pub class_of: Vec<u32>,
    pub members: Vec<Vec<u32>>,
}

/// A finite permutation group with its elements fully enumerated.
///
/// Elements are listed in breadth-first order from the identity; element
/// `0` is always the identity. The spanning tree of that search is kept so
/// that homomorphisms can be evaluated on every element.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: FxHashMap<Perm, u32>,
    tree: Vec<(u32, u32)>,
    inverses: OnceLock<Vec<u32>>,
    classes: OnceLock<ClassData>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

const NO_GEN: u32 = u32::MAX;

impl Group {
    /// Enumerates `<generators>` by breadth-first closure.
    pub fn generate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Group> {
        match Self::generate_limited(degree, generators, cap)? {
            Some(g) => Ok(g),
            None => Err(Error::Resource(format!(
                "group order exceeds the enumeration cap of {cap} elements"
            ))),
        }
    }

    /// Like [`Group::generate`] but returns `None` once more than `limit`
    /// elements have been found.
    pub fn generate_limited(
        degree: usize,
        generators: Vec<Perm>,
        limit: usize,
    ) -> Result<Option<Group>> {
        if degree == 0 {
            return input("degree must be positive");
        }
        for g in &generators {
            if g.degree() != degree {
                return input(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                ));
            }
        }
        let id = Perm::identity(degree);
        let mut lookup = FxHashMap::default();
        lookup.insert(id.clone(), 0u32);
        let mut elements = vec![id];
        let mut tree = vec![(0u32, NO_GEN)];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let p = &elements[head] * g;
                if !lookup.contains_key(&p) {
                    if elements.len() >= limit {
                        return Ok(None);
                    }
                    lookup.insert(p.clone(), elements.len() as u32);
                    elements.push(p);
                    tree.push((head as u32, gi as u32));
                }
            }
            head += 1;
        }
        Ok(Some(Group {
            degree,
            generators,
            elements,
            lookup,
            tree,
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    pub fn trivial(degree: usize) -> Group {
        Group::generate(degree, Vec::new(), 1).expect("trivial group")
    }

    /// Subgroup with the given (closed) element set; a small generating set
    /// is chosen greedily in lexicographic order.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<Group> {
        elements.sort();
        let target = elements.len();
        let mut current = Group::trivial(degree);
        for e in &elements {
            if current.order() == target {
                break;
            }
            if !current.contains(e) {
                current = match current.extend(e, target)? {
                    Some(g) => g,
                    None => return input("element list is not closed under multiplication"),
                };
            }
        }
        if current.order() != target {
            return input("element list is not closed under multiplication");
        }
        Ok(current)
    }

    /// `<self, g>`, reusing the enumeration of `self`; `None` if the result
    /// would have more than `limit` elements.
    pub fn extend(&self, g: &Perm, limit: usize) -> Result<Option<Group>> {
        if g.degree() != self.degree {
            return input("generator degree mismatch");
        }
        if self.contains(g) {
            return Ok(Some(self.clone_without_cache()));
        }
        let mut generators = self.generators.clone();
        generators.push(g.clone());
        let new_gen = generators.len() - 1;
        let mut elements = self.elements.clone();
        let mut lookup = self.lookup.clone();
        let mut tree = self.tree.clone();
        let old = elements.len();
        let mut queue = VecDeque::new();
        for i in 0..old {
            let p = &elements[i] * g;
            if !lookup.contains_key(&p) {
                if elements.len() >= limit {
                    return Ok(None);
                }
                lookup.insert(p.clone(), elements.len() as u32);
                queue.push_back(elements.len());
                elements.push(p);
                tree.push((i as u32, new_gen as u32));
            }
        }
        while let Some(i) = queue.pop_front() {
            for (gi, s) in generators.iter().enumerate() {
                let p = &elements[i] * s;
                if !lookup.contains_key(&p) {
                    if elements.len() >= limit {
                        return Ok(None);
                    }
                    lookup.insert(p.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(p);
                    tree.push((i as u32, gi as u32));
                }
            }
        }
        Ok(Some(Group {
            degree: self.degree,
            generators,
            elements,
            lookup,
            tree,
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    fn clone_without_cache(&self) -> Group {
        Group {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            lookup: self.lookup.clone(),
            tree: self.tree.clone(),
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.lookup.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.lookup.contains_key(p)
    }

    /// Breadth-first spanning tree: element `i` equals
    /// `element(parent) * generators[gen]`; the identity has no parent.
    pub fn tree_edge(&self, i: usize) -> Option<(usize, usize)> {
        let (p, g) = self.tree[i];
        (g != NO_GEN).then_some((p as usize, g as usize))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same element set (both groups live on the same domain).
    pub fn same_elements(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Normality test against generators of `other`.
    pub fn is_normal_in(&self, other: &Group) -> bool {
        self.is_subgroup_of(other)
            && other
                .generators
                .iter()
                .all(|g| self.generators.iter().all(|h| self.contains(&g.conjugate(h))))
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        let inv = self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|e| self.lookup[&e.inverse()])
                .collect()
        });
        inv[i] as usize
    }

    pub fn classes(&self) -> &ClassData {
        self.classes.get_or_init(|| self.build_classes())
    }

    pub fn class_count(&self) -> usize {
        self.classes().classes.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.classes().class_of[element] as usize
    }

    /// Class of an arbitrary permutation, `None` if it is not in the group.
    pub fn class_of_perm(&self, p: &Perm) -> Option<usize> {
        self.index_of(p).map(|i| self.class_of(i))
    }

    fn build_classes(&self) -> ClassData {
        let n = self.elements.len();
        let mut sorted: Vec<u32> = (0..n as u32).collect();
        sorted.sort_by(|&a, &b| self.elements[a as usize].cmp(&self.elements[b as usize]));
        const NONE: u32 = u32::MAX;
        let mut class_of = vec![NONE; n];
        let mut raw: Vec<(Vec<u32>, u32)> = Vec::new();
        for &start in &sorted {
            if class_of[start as usize] != NONE {
                continue;
            }
            let cid = raw.len() as u32;
            class_of[start as usize] = cid;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let y = &self.elements[members[head] as usize];
                for s in &self.generators {
                    let c = s.conjugate(y);
                    let ci = self.lookup[&c];
                    if class_of[ci as usize] == NONE {
                        class_of[ci as usize] = cid;
                        members.push(ci);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            raw.push((members, start));
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        let orders: Vec<u64> = raw
            .iter()
            .map(|(_, rep)| self.elements[*rep as usize].order())
            .collect();
        order.sort_by(|&a, &b| {
            (orders[a], raw[a].0.len())
                .cmp(&(orders[b], raw[b].0.len()))
                .then_with(|| self.elements[raw[a].1 as usize].cmp(&self.elements[raw[b].1 as usize]))
        });
        let mut relabel = vec![0u32; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = relabel[*c as usize];
        }
        let mut classes = Vec::with_capacity(raw.len());
        let mut members = Vec::with_capacity(raw.len());
        for (new, &old) in order.iter().enumerate() {
            let (m, rep) = &raw[old];
            classes.push(ConjugacyClass {
                representative: self.elements[*rep as usize].clone(),
                rep_index: *rep as usize,
                size: m.len(),
                order: orders[old],
                index: new,
            });
            members.push(m.clone());
        }
        ClassData {
            classes,
            class_of,
            members,
        }
    }

    /// Class-index map sending the class of `g` to the class of `g^t`.
    pub fn power_map(&self, t: i64) -> Vec<usize> {
        self.classes()
            .classes
            .iter()
            .map(|c| {
                let p = c.representative.pow(t);
                self.class_of(self.lookup[&p] as usize)
            })
            .collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes()
            .classes
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&c.order))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.classes().classes[self.class_of(i)].order
    }

    /// Subgroup of all elements satisfying `keep`; the caller guarantees closure.
    pub fn subgroup_where(&self, keep: impl Fn(usize) -> bool) -> Result<Group> {
        let elems: Vec<Perm> = (0..self.order())
            .filter(|&i| keep(i))
            .map(|i| self.elements[i].clone())
            .collect();
        Group::from_elements(self.degree, elems)
    }

    pub fn centralizer(&self, x: &Perm) -> Result<Group> {
        if !self.contains(x) {
            return input(format!("{x} is not an element of the group"));
        }
        self.subgroup_where(|i| self.elements[i].commutes_with(x))
    }

    pub fn center(&self) -> Result<Group> {
        self.subgroup_where(|i| {
            self.generators
                .iter()
                .all(|g| self.elements[i].commutes_with(g))
        })
    }

    /// Smallest normal subgroup of `self` containing `set`.
    pub fn normal_closure(&self, set: &[Perm]) -> Result<Group> {
        for s in set {
            if !self.contains(s) {
                return input(format!("{s} is not an element of the group"));
            }
        }
        Ok(self
            .normal_closure_limited(set, usize::MAX)?
            .expect("unbounded closure"))
    }

    /// Normal closure that gives up (returning `None`) beyond `limit` elements.
    pub fn normal_closure_limited(&self, set: &[Perm], limit: usize) -> Result<Option<Group>> {
        let mut h = Group::trivial(self.degree);
        for s in set {
            match h.extend(s, limit)? {
                Some(n) => h = n,
                None => return Ok(None),
            }
        }
        self.close_under_conjugation(h, limit)
    }

    fn close_under_conjugation(&self, mut h: Group, limit: usize) -> Result<Option<Group>> {
        'outer: loop {
            for g in &self.generators {
                for k in 0..h.generators.len() {
                    let c = g.conjugate(&h.generators[k]);
                    if !h.contains(&c) {
                        match h.extend(&c, limit)? {
                            Some(n) => h = n,
                            None => return Ok(None),
                        }
                        continue 'outer;
                    }
                }
            }
            return Ok(Some(h));
        }
    }

    /// Product `AB` of two normal subgroups.
    pub fn normal_product(&self, a: &Group, b: &Group) -> Result<Group> {
        let mut h = a.clone_without_cache();
        for g in b.generators() {
            h = h.extend(g, usize::MAX)?.expect("unbounded");
        }
        Ok(h)
    }

    /// Commutator subgroup: normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> Result<Group> {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let c = &(&(&g[i].inverse() * &g[j].inverse()) * &g[i]) * &g[j];
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Collision-resistant digest of the element set.
    pub fn fingerprint(&self) -> [u8; 32] {
        let mut sorted: Vec<&Perm> = self.elements.iter().collect();
        sorted.sort();
        let mut h = Sha256::new();
        h.update((self.degree as u64).to_le_bytes());
        for p in sorted {
            for &x in p.images() {
                h.update(x.to_le_bytes());
            }
        }
        h.finalize().into()
    }
}
