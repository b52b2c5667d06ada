//! Machine-checkable versions of the class-number and block bounds, each
//! producing a [`Report`].

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::blocks::{analyze_blocks, classical_defect_order, defect_group, p_blocks, pi_blocks};
use crate::catalog::{builders, BuiltGroup};
use crate::chartab::cached_table;
use crate::error::{Error, Result};
use crate::perm::{coset_quotient, Group};
use crate::structure::{
    is_pi_separable, o_pi, o_pi_prime, pi_part, pi_series, FactorKind, PrimeSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
    OutOfHypothesis,
}

/// Outcome of checking one statement `lhs ≤ rhs` on one input.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub statement: String,
    pub group: String,
    pub params: BTreeMap<String, String>,
    pub lhs: u64,
    pub rhs: u64,
    pub verdict: Verdict,
    /// The check stopped at its budget before covering every case.
    pub partial: bool,
    pub witnesses: BTreeMap<String, Value>,
}

impl Report {
    fn new(statement: &str, group: &str) -> Report {
        Report {
            statement: statement.to_string(),
            group: group.to_string(),
            params: BTreeMap::new(),
            lhs: 0,
            rhs: 0,
            verdict: Verdict::Holds,
            partial: false,
            witnesses: BTreeMap::new(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Report {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn witness(&mut self, key: &str, value: impl Into<Value>) {
        self.witnesses.insert(key.to_string(), value.into());
    }

    /// Sets `lhs`, `rhs` and the verdict of `lhs ≤ rhs`.
    fn compare(mut self, lhs: u64, rhs: u64) -> Report {
        self.lhs = lhs;
        self.rhs = rhs;
        self.verdict = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => Verdict::Holds,
            std::cmp::Ordering::Equal => Verdict::Equality,
            std::cmp::Ordering::Greater => Verdict::Violated,
        };
        self
    }

    fn out_of_hypothesis(mut self, why: &str) -> Report {
        self.verdict = Verdict::OutOfHypothesis;
        self.witness("reason", why);
        self
    }

    /// Downgrades the verdict when a side condition fails.
    fn require(&mut self, ok: bool, what: &str) {
        if !ok && self.verdict != Verdict::OutOfHypothesis {
            self.verdict = Verdict::Violated;
            self.witness("failed", what);
        }
    }

    pub fn violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

/// `k(G⋊A) ≤ |G|` for coprime actions; equality forces `G` abelian.
pub fn check_kgv(built: &BuiltGroup) -> Result<Report> {
    let Some(info) = &built.semidirect else {
        return Err(Error::Input(format!("{} is not a semidirect record", built.name)));
    };
    let r = Report::new("kgv", &built.name)
        .param("base", &info.base_name)
        .param("acting_order", info.acting_order);
    let mut r = r.compare(built.group.class_count() as u64, info.base_order as u64);
    r.witness("base_abelian", info.base_abelian);
    if !info.coprime() {
        return Ok(r.out_of_hypothesis("|G| and |A| are not coprime"));
    }
    if r.verdict == Verdict::Equality {
        r.require(info.base_abelian, "equality with non-abelian G");
    }
    Ok(r)
}

/// `k(G/O_π'(G)) ≤ |G|_π`; on equality, `Ḡ = G/O_π'(G)` must satisfy
/// `Ḡ = O_ππ'(Ḡ)`.
pub fn check_quotient_bound(name: &str, g: &Group, pi: &PrimeSet) -> Result<Report> {
    let r = Report::new("quotient", name).param("pi", pi);
    if !is_pi_separable(g, pi)? {
        return Ok(r.out_of_hypothesis("not π-separable"));
    }
    let n = o_pi_prime(g, pi)?;
    let q = coset_quotient(g, &n)?;
    let mut r = r.compare(
        q.group.class_count() as u64,
        pi_part(g.order() as u64, pi),
    );
    r.witness("o_pi_prime_order", n.order());
    if r.verdict == Verdict::Equality {
        let top = o_pi_pi_prime(&q.group, pi)?;
        r.witness("o_pi_pi_prime_is_whole_quotient", top.order() == q.group.order());
        r.require(top.order() == q.group.order(), "quotient differs from its O_ππ'");
    }
    Ok(r)
}

/// Preimage of `O_π'(G/O_π(G))`.
pub fn o_pi_pi_prime(g: &Group, pi: &PrimeSet) -> Result<Group> {
    let a = o_pi(g, pi)?;
    let q = coset_quotient(g, &a)?;
    let b = o_pi_prime(&q.group, pi)?;
    q.preimage(g, &a, &b)
}

/// `k(B) ≤ |D|` for every π-block, with `D` abelian on equality.
pub fn check_kb(name: &str, g: &Group, pi: &PrimeSet, seed: u64) -> Result<Vec<Report>> {
    if !is_pi_separable(g, pi)? {
        return Ok(vec![Report::new("kb", name)
            .param("pi", pi)
            .out_of_hypothesis("not π-separable")]);
    }
    let analysis = analyze_blocks(g, pi, seed)?;
    let mut out = Vec::new();
    for (i, b) in analysis.blocks.iter().enumerate() {
        let d = b.defect.as_ref().expect("separable");
        let mut r = Report::new("kb", name)
            .param("pi", pi)
            .param("block", i)
            .compare(b.k as u64, d.order as u64);
        r.witness("degrees", json!(b.degrees));
        r.witness("defect_abelian", d.abelian);
        r.witness("k0", d.k0);
        if r.verdict == Verdict::Equality {
            r.require(d.abelian, "equality with non-abelian defect group");
        }
        out.push(r);
    }
    Ok(out)
}

/// For `O_π'(G) = 1`: `k(H) ≤ |G|_π` over subgroups generated by at most
/// two elements, the first a class representative and the second taken up
/// to conjugation by its centraliser. Equality needs `|H|_π = |G|_π`.
/// `budget` bounds the number of generating pairs tried.
pub fn check_subgroup_bound(
    name: &str,
    g: &Group,
    pi: &PrimeSet,
    budget: usize,
) -> Result<Report> {
    let r = Report::new("subgroup", name).param("pi", pi);
    if !is_pi_separable(g, pi)? {
        return Ok(r.out_of_hypothesis("not π-separable"));
    }
    if !o_pi_prime(g, pi)?.is_trivial() {
        return Ok(r.out_of_hypothesis("O_π'(G) is not trivial"));
    }
    let bound = pi_part(g.order() as u64, pi);
    let mut seen = HashSet::new();
    let mut tried = 0usize;
    let mut partial = false;
    let mut worst = 0u64;
    let mut equality = 0usize;
    let mut failures = Vec::new();
    'outer: for class in &g.classes().classes {
        let x = &class.representative;
        let c = g.centralizer(x)?;
        for y in orbit_representatives(g, &c) {
            if tried == budget {
                partial = true;
                break 'outer;
            }
            tried += 1;
            let h = Group::generate(g.degree(), vec![x.clone(), g.element(y).clone()], usize::MAX)?;
            if !seen.insert(h.fingerprint()) {
                continue;
            }
            let k = h.class_count() as u64;
            worst = worst.max(k);
            if k == bound {
                equality += 1;
                if pi_part(h.order() as u64, pi) != bound {
                    failures.push(h.order());
                }
            }
        }
    }
    let mut r = r.compare(worst, bound);
    r.partial = partial;
    r.witness("subgroups", seen.len());
    r.witness("pairs_tried", tried);
    r.witness("equality_subgroups", equality);
    r.require(failures.is_empty(), "equality subgroup with |H|_π < |G|_π");
    if !failures.is_empty() {
        r.witness("equality_failures", json!(failures));
    }
    Ok(r)
}

/// Smallest element index of each orbit of `c` acting on `g` by conjugation.
fn orbit_representatives(g: &Group, c: &Group) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    let gens = c.generators();
    for start in 0..g.order() {
        if seen[start] {
            continue;
        }
        reps.push(start);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for s in gens {
                let j = g.index_of(&s.conjugate(g.element(i))).expect("closed");
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    reps
}

/// `k(G) ≤ k(N)·k(G/N)` over normal closures of classes and their pairwise
/// products, Gallagher's condition on equality, and `k(G)² ≤ |G|` for
/// groups flagged simple and non-abelian.
pub fn check_class_inequalities(
    name: &str,
    g: &Group,
    simple: bool,
    budget: usize,
) -> Result<Vec<Report>> {
    let cd = g.classes();
    let mut normals: Vec<Group> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |n: Group, normals: &mut Vec<Group>| {
        if seen.insert(n.fingerprint()) {
            normals.push(n);
        }
    };
    push(Group::trivial(g.degree()), &mut normals);
    push(g.clone(), &mut normals);
    for c in &cd.classes {
        push(g.normal_closure(std::slice::from_ref(&c.representative))?, &mut normals);
    }
    let singles = normals.len();
    let mut partial = false;
    'pairs: for i in 2..singles {
        for j in i + 1..singles {
            if normals.len() >= budget {
                partial = true;
                break 'pairs;
            }
            let prod = g.normal_product(&normals[i], &normals[j])?;
            push(prod, &mut normals);
        }
    }
    let k = g.class_count() as u64;
    let mut out = Vec::new();
    for n in &normals {
        let q = coset_quotient(g, n)?;
        let mut r = Report::new("class-product", name)
            .param("n_order", n.order())
            .compare(k, n.class_count() as u64 * q.group.class_count() as u64);
        r.partial = partial;
        if r.verdict == Verdict::Equality {
            let ok = gallagher_condition(g, n)?;
            r.witness("gallagher", ok);
            r.require(ok, "C_G(x)N ≠ G for some x in N");
        }
        out.push(r);
    }
    if simple && !g.is_abelian() {
        let order = g.order() as u64;
        let mut r = Report::new("simple-sqrt", name).compare(k * k, order);
        r.witness("k", k);
        out.push(r);
    }
    Ok(out)
}

/// Cross-checks the `simple` and `solvable` catalog flags.
pub fn check_flags(name: &str, g: &Group, simple: bool, solvable: bool) -> Result<Report> {
    let mut r = Report::new("flags", name);
    r.verdict = Verdict::Holds;
    if simple {
        let ok = !g.is_trivial()
            && g.classes().classes.iter().skip(1).all(|c| {
                g.normal_closure(std::slice::from_ref(&c.representative))
                    .is_ok_and(|n| n.order() == g.order())
            });
        r.require(ok, "flagged simple but has a proper normal subgroup");
    }
    if solvable {
        let mut h = g.clone();
        while !h.is_trivial() {
            let d = h.derived_subgroup()?;
            if d.order() == h.order() {
                break;
            }
            h = d;
        }
        r.require(h.is_trivial(), "flagged solvable but the derived series stalls");
    }
    Ok(r)
}

/// `C_G(x)N = G` for every `x ∈ N` (checked on class representatives of
/// `G` lying in `N`, which suffices).
fn gallagher_condition(g: &Group, n: &Group) -> Result<bool> {
    for class in &g.classes().classes {
        let x = &class.representative;
        if !n.contains(x) {
            continue;
        }
        let c = g.centralizer(x)?;
        let meet = c.elements().iter().filter(|e| n.contains(e)).count();
        if c.order() * n.order() / meet != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `π = {p}` and each p-block: the recursive defect group has the
/// classical order `max_χ |G|_p/χ(1)_p`. Only meaningful for p-separable
/// groups; others are reported as out of hypothesis.
pub fn check_defect_consistency(name: &str, g: &Group, p: u64, seed: u64) -> Result<Vec<Report>> {
    let pi = PrimeSet::singleton(p)?;
    if !is_pi_separable(g, &pi)? {
        return Ok(vec![Report::new("defect-consistency", name)
            .param("p", p)
            .out_of_hypothesis("not p-separable")]);
    }
    let table = cached_table(g, seed)?;
    let mut out = Vec::new();
    for (i, b) in p_blocks(&table, p, seed)?.iter().enumerate() {
        let d = defect_group(g, &pi, b, seed)?;
        let classical = classical_defect_order(&table, p, b);
        let mut r = Report::new("defect-consistency", name)
            .param("p", p)
            .param("block", i)
            .compare(d.order() as u64, classical);
        if r.verdict == Verdict::Holds {
            r.require(false, "defect order below the classical value");
        } else if r.verdict == Verdict::Equality {
            r.verdict = Verdict::Holds;
        }
        out.push(r);
    }
    Ok(out)
}

/// `π = {p}` gives the same partition as the p-blocks.
pub fn check_singleton_blocks(name: &str, g: &Group, p: u64, seed: u64) -> Result<Report> {
    let table = cached_table(g, seed)?;
    let a = pi_blocks(&table, &PrimeSet::singleton(p)?, seed)?;
    let b = p_blocks(&table, p, seed)?;
    let mut r = Report::new("singleton-blocks", name)
        .param("p", p)
        .compare(a.len() as u64, b.len() as u64);
    r.verdict = Verdict::Holds;
    r.require(a == b, "{p}-blocks differ from p-blocks");
    Ok(r)
}

/// Every figure of the counterexample to Olsson's conjecture for π-blocks.
#[derive(Clone, Debug, Serialize)]
pub struct OlssonOutcome {
    pub group_order: usize,
    pub factorization: Vec<(u64, u32)>,
    pub pi: String,
    pub pi_part: u64,
    pub o_pi_order: usize,
    pub pi_separable: bool,
    pub block_count: usize,
    pub block_size: usize,
    pub class_count: usize,
    pub defect_order: usize,
    pub defect_equals_o_pi: bool,
    /// `|D : D'|`.
    pub defect_abelianization: usize,
    pub linear_characters: usize,
    pub k0: usize,
    pub k_b_le_d: bool,
    pub checks: Vec<(String, bool)>,
}

impl OlssonOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Builds `PSL(2,32)⋊C_5` on the projective line over `F_32` and checks,
/// with `π = {2,3,11,31}`: the order and its factorisation, `O_π(G)`, a
/// single π-block holding all of `Irr(G)`, `D = O_π(G)`, `|D:D'| = 1`,
/// `k₀(B) ≥ 5` and `k(B) ≤ |D|`.
pub fn olsson_counterexample(seed: u64, cap: usize) -> Result<OlssonOutcome> {
    let g = builders::psl2_gamma(32, 5, cap)?;
    let pi: PrimeSet = PrimeSet::new([2, 3, 11, 31])?;
    let order = g.order();
    let factorization = crate::algebra::primes::factorize(order as u64);
    let o = o_pi(&g, &pi)?;
    let series = pi_series(&g, &pi)?;
    let table = cached_table(&g, seed)?;
    let partition = pi_blocks(&table, &pi, seed)?;
    let block = partition[0].clone();
    let d = defect_group(&g, &pi, &block, seed)?;
    let derived = d.derived_subgroup()?;
    let k0 = crate::blocks::k0_count(&table, &pi, &block, d.order());
    let outcome_checks = vec![
        ("|G| = 163680".to_string(), order == 163_680),
        (
            "|G| = 2^5·3·5·11·31".to_string(),
            factorization == vec![(2, 5), (3, 1), (5, 1), (11, 1), (31, 1)],
        ),
        ("|G|_π = 32736".to_string(), pi_part(order as u64, &pi) == 32_736),
        ("|O_π(G)| = 32736".to_string(), o.order() == 32_736),
        (
            "G is π-separable".to_string(),
            series.reaches_top && series.labels == vec![FactorKind::Pi, FactorKind::PiPrime],
        ),
        ("exactly one π-block".to_string(), partition.len() == 1),
        ("the block is all of Irr(G)".to_string(), block.len() == table.len()),
        ("|D| = 32736".to_string(), d.order() == 32_736),
        ("D = O_π(G)".to_string(), d.same_elements(&o)),
        ("|D:D'| = 1".to_string(), d.order() == derived.order()),
        ("five linear characters".to_string(), table.linear_count() == 5),
        ("k₀(B) ≥ 5".to_string(), k0 >= 5),
        ("k(B) ≤ |D|".to_string(), block.len() <= d.order()),
    ];
    Ok(OlssonOutcome {
        group_order: order,
        factorization,
        pi: pi.to_string(),
        pi_part: pi_part(order as u64, &pi),
        o_pi_order: o.order(),
        pi_separable: series.reaches_top,
        block_count: partition.len(),
        block_size: block.len(),
        class_count: table.len(),
        defect_order: d.order(),
        defect_equals_o_pi: d.same_elements(&o),
        defect_abelianization: d.order() / derived.order(),
        linear_characters: table.linear_count(),
        k0,
        k_b_le_d: block.len() <= d.order(),
        checks: outcome_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{parse_str, Catalog};
    use crate::perm::{Perm, DEFAULT_CAP};

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

    fn s4() -> Group {
        group(4, &["(0 1)", "(0 1 2 3)"])
    }

    #[test]
    fn kgv_reports() {
        let text = "
group C7
builder cyclic 7
end
group F21
semidirect C7
aut g0^2
end
group C7reg
semidirect C7
end
group C3xC3
degree 6
gen (0 1 2)
gen (3 4 5)
end
group C3^2:Q8
semidirect C3xC3
aut (0 1 2)(3 5 4); (0 2 1)(3 5 4)
aut (0 1 2)(3 4 5); (0 1 2)(3 5 4)
end
";
        let cat = Catalog::new(parse_str("t", text).unwrap(), DEFAULT_CAP).unwrap();
        let r = check_kgv(&cat.build("F21").unwrap()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.verdict), (5, 7, Verdict::Holds));
        let r = check_kgv(&cat.build("C7reg").unwrap()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.verdict), (7, 7, Verdict::Equality));
        let q = cat.build("C3^2:Q8").unwrap();
        assert_eq!(q.group.order(), 72);
        let r = check_kgv(&q).unwrap();
        assert!(r.lhs <= 9 && r.verdict != Verdict::Violated, "{r:?}");
    }

    #[test]
    fn quotient_reports() {
        let g = s4();
        let r = check_quotient_bound("S4", &g, &pi("2")).unwrap();
        assert_eq!((r.lhs, r.rhs, r.verdict), (5, 8, Verdict::Holds));
        let r = check_quotient_bound("S4", &g, &pi("3")).unwrap();
        assert_eq!((r.lhs, r.rhs, r.verdict), (3, 3, Verdict::Equality));
        let r = check_quotient_bound("S4", &g, &pi("2,3")).unwrap();
        assert_eq!((r.lhs, r.rhs), (5, 24));
        let a5 = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let r = check_quotient_bound("A5", &a5, &pi("2")).unwrap();
        assert_eq!(r.verdict, Verdict::OutOfHypothesis);
    }

    #[test]
    fn kb_reports() {
        let reports = check_kb("S4", &s4(), &pi("2,3"), 0).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.lhs <= r.rhs && !r.violated(), "{r:?}");
        }
        let c6 = group(6, &["(0 1 2 3 4 5)"]);
        let reports = check_kb("C6", &c6, &pi("2,3"), 0).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::Equality);
    }

    #[test]
    fn subgroup_reports() {
        let r = check_subgroup_bound("S4", &s4(), &pi("2,3"), 100_000).unwrap();
        assert!(!r.partial && !r.violated());
        assert_eq!(r.rhs, 24);
        assert_eq!(r.lhs, 5);
        let r = check_subgroup_bound("S4", &s4(), &pi("3"), 100_000).unwrap();
        assert_eq!(r.verdict, Verdict::OutOfHypothesis);
        let r = check_subgroup_bound("S4", &s4(), &pi("2,3"), 3).unwrap();
        assert!(r.partial);
    }

    #[test]
    fn class_inequality_reports() {
        let s3 = group(3, &["(0 1)", "(0 1 2)"]);
        let reports = check_class_inequalities("S3", &s3, false, 100).unwrap();
        let a3 = reports.iter().find(|r| r.params["n_order"] == "3").unwrap();
        assert_eq!((a3.lhs, a3.rhs), (3, 6));
        for r in &reports {
            assert!(!r.violated());
            if r.params["n_order"] == "1" || r.params["n_order"] == "6" {
                assert_eq!(r.verdict, Verdict::Equality);
                assert_eq!(r.witnesses["gallagher"], json!(true));
            }
        }
        let a5 = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let reports = check_class_inequalities("A5", &a5, true, 100).unwrap();
        let s = reports.iter().find(|r| r.statement == "simple-sqrt").unwrap();
        assert_eq!((s.lhs, s.rhs, s.verdict), (25, 60, Verdict::Holds));
    }

    #[test]
    fn defect_consistency_reports() {
        for p in [2, 3] {
            for r in check_defect_consistency("S4", &s4(), p, 0).unwrap() {
                assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
            }
        }
        let a5 = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let r = check_defect_consistency("A5", &a5, 2, 0).unwrap();
        assert_eq!(r[0].verdict, Verdict::OutOfHypothesis);
        assert!(!check_singleton_blocks("A5", &a5, 2, 0).unwrap().violated());
    }
}
