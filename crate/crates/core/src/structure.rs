//! Prime sets, π-parts, `O_π`, π-separability series and Hall subgroups.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::primes::{is_prime, prime_divisors};
use crate::error::{input, Error, Result};
use crate::perm::{coset_quotient, Group, Perm};

/// A finite set of primes, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<PrimeSet> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !is_prime(p)) {
            return input(format!("{bad} is not prime"));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet(v))
    }

    pub fn singleton(p: u64) -> Result<PrimeSet> {
        PrimeSet::new([p])
    }

    /// All primes dividing `n`.
    pub fn of(n: u64) -> PrimeSet {
        PrimeSet(prime_divisors(n))
    }

    pub fn primes(&self) -> &[u64] {
        &self.0
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Primes dividing `order` that are not in the set.
    pub fn complement(&self, order: u64) -> PrimeSet {
        PrimeSet(
            prime_divisors(order)
                .into_iter()
                .filter(|&p| !self.contains(p))
                .collect(),
        )
    }

    /// Primes of the set that divide `order`.
    pub fn restrict(&self, order: u64) -> PrimeSet {
        PrimeSet(self.0.iter().copied().filter(|&p| order.is_multiple_of(p)).collect())
    }

    pub fn is_pi_number(&self, n: u64) -> bool {
        pi_part(n, self) == n
    }

    /// Every subset of `self`, in binary-counting order.
    pub fn subsets(&self) -> Vec<PrimeSet> {
        (0u32..1 << self.0.len())
            .map(|mask| {
                PrimeSet(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect(),
                )
            })
            .collect()
    }
}

impl serde::Serialize for PrimeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Comma-separated primes, e.g. `2,3,11,31`.
    fn from_str(s: &str) -> Result<PrimeSet> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut v = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.parse::<u64>() {
                Ok(p) => v.push(p),
                Err(_) => return input(format!("bad prime {tok:?}")),
            }
        }
        PrimeSet::new(v)
    }
}

/// Largest divisor of `n` whose prime factors all lie in `pi`.
pub fn pi_part(mut n: u64, pi: &PrimeSet) -> u64 {
    let mut part = 1;
    for &p in &pi.0 {
        while n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
    }
    part
}

/// The largest normal π-subgroup, as the product of the normal closures of
/// those classes whose closure is a π-group.
pub fn o_pi(g: &Group, pi: &PrimeSet) -> Result<Group> {
    let bound = pi_part(g.order() as u64, pi) as usize;
    let mut acc = Group::trivial(g.degree());
    if bound == 1 {
        return Ok(acc);
    }
    for class in &g.classes().classes {
        if !pi.is_pi_number(class.order) || acc.contains(&class.representative) {
            continue;
        }
        let Some(closure) = g.normal_closure_limited(std::slice::from_ref(&class.representative), bound)?
        else {
            continue;
        };
        if !pi.is_pi_number(closure.order() as u64) {
            continue;
        }
        acc = g.normal_product(&acc, &closure)?;
    }
    Ok(acc)
}

/// `O_π'(G)` with `π'` taken relative to `|G|`.
pub fn o_pi_prime(g: &Group, pi: &PrimeSet) -> Result<Group> {
    o_pi(g, &pi.complement(g.order() as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Pi,
    PiPrime,
}

/// `1 = N_0 < N_1 < ... < N_k`, each `N_i` normal in `G` with `N_i/N_{i-1}`
/// a π- or π'-group.
#[derive(Clone, Debug)]
pub struct PiSeries {
    pub terms: Vec<Group>,
    /// `labels[i]` describes `terms[i+1] / terms[i]`.
    pub labels: Vec<FactorKind>,
    pub reaches_top: bool,
}

/// Builds the lower π'π-series, alternating `O_π'` and `O_π` of successive
/// quotients. It reaches `G` exactly when `G` is π-separable.
pub fn pi_series(g: &Group, pi: &PrimeSet) -> Result<PiSeries> {
    let pi = pi.restrict(g.order() as u64);
    let pi_prime = pi.complement(g.order() as u64);
    let mut terms = vec![Group::trivial(g.degree())];
    let mut labels = Vec::new();
    loop {
        let current = terms.last().unwrap();
        if current.order() == g.order() {
            return Ok(PiSeries {
                terms,
                labels,
                reaches_top: true,
            });
        }
        let q = coset_quotient(g, current)?;
        let mut grown = None;
        for (set, kind) in [(&pi_prime, FactorKind::PiPrime), (&pi, FactorKind::Pi)] {
            let top = o_pi(&q.group, set)?;
            if !top.is_trivial() {
                grown = Some((q.preimage(g, current, &top)?, kind));
                break;
            }
        }
        match grown {
            Some((n, kind)) => {
                terms.push(n);
                labels.push(kind);
            }
            None => {
                return Ok(PiSeries {
                    terms,
                    labels,
                    reaches_top: false,
                })
            }
        }
    }
}

pub fn is_pi_separable(g: &Group, pi: &PrimeSet) -> Result<bool> {
    Ok(pi_series(g, pi)?.reaches_top)
}

const HALL_RESTARTS: usize = 50;
const EXHAUSTIVE_LIMIT: usize = 5000;

/// A Hall π-subgroup of a π-separable group.
///
/// Grows a π-subgroup by adjoining π-elements in seeded random order,
/// keeping only those whose closure stays a π-group. In a π-separable
/// group every π-subgroup lies in a Hall π-subgroup, so a single pass over
/// all π-elements already succeeds; restarts and the exhaustive fallback
/// guard against that reasoning being applied to bad input.
pub fn hall_subgroup(g: &Group, pi: &PrimeSet, seed: u64) -> Result<Group> {
    if !is_pi_separable(g, pi)? {
        return Err(Error::Precondition(format!(
            "group of order {} is not {pi}-separable",
            g.order()
        )));
    }
    let target = pi_part(g.order() as u64, pi) as usize;
    if target == g.order() {
        return Ok(g.clone());
    }
    let candidates: Vec<usize> = (1..g.order())
        .filter(|&i| pi.is_pi_number(g.element_order(i)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = candidates.clone();
    for _ in 0..HALL_RESTARTS {
        order.shuffle(&mut rng);
        if let Some(h) = greedy_pi_closure(g, pi, target, &order, None)? {
            return Ok(h);
        }
    }
    if g.order() <= EXHAUSTIVE_LIMIT {
        for &start in &candidates {
            if let Some(h) = greedy_pi_closure(g, pi, target, &candidates, Some(start))? {
                return Ok(h);
            }
        }
    }
    Err(Error::Internal(format!(
        "no Hall {pi}-subgroup of order {target} found"
    )))
}

fn greedy_pi_closure(
    g: &Group,
    pi: &PrimeSet,
    target: usize,
    order: &[usize],
    first: Option<usize>,
) -> Result<Option<Group>> {
    let mut h = Group::trivial(g.degree());
    if target == 1 {
        return Ok(Some(h));
    }
    for &i in first.iter().chain(order) {
        let x: &Perm = g.element(i);
        if h.contains(x) {
            continue;
        }
        if let Some(n) = h.extend(x, target)? {
            if pi.is_pi_number(n.order() as u64) {
                h = n;
                if h.order() == target {
                    return Ok(Some(h));
                }
            }
        }
    }
    Ok(None)
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

    fn s4() -> Group {
        group(4, &["(0 1)", "(0 1 2 3)"])
    }

    fn a5() -> Group {
        group(5, &["(0 1 2)", "(0 1 2 3 4)"])
    }

    fn pi(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    #[test]
    fn pi_parts() {
        assert_eq!(pi_part(60, &pi("2,3")), 12);
        assert_eq!(pi_part(60, &PrimeSet::of(60)), 60);
        assert_eq!(pi_part(163680, &pi("2,3,11,31")), 32736);
        for n in 1..500u64 {
            let s = pi("2,7");
            assert_eq!(pi_part(n, &s) * pi_part(n, &s.complement(n)), n);
        }
    }

    #[test]
    fn prime_set_parsing() {
        assert_eq!(pi("3, 2,3").primes(), &[2, 3]);
        assert!("2,4".parse::<PrimeSet>().is_err());
        assert!("2,x".parse::<PrimeSet>().is_err());
        assert_eq!(pi("2,3").to_string(), "{2,3}");
    }

    #[test]
    fn o_pi_examples() {
        let g = s4();
        assert_eq!(o_pi(&g, &PrimeSet::of(24)).unwrap().order(), 24);
        assert_eq!(o_pi(&g, &pi("2")).unwrap().order(), 4);
        assert_eq!(o_pi(&g, &pi("3")).unwrap().order(), 1);
        assert_eq!(o_pi_prime(&g, &pi("3")).unwrap().order(), 4);
        assert_eq!(o_pi(&a5(), &pi("2,3")).unwrap().order(), 1);
    }

    /// Every normal closure of at most two elements that is a π-group must
    /// lie inside `O_π`.
    #[test]
    fn o_pi_contains_every_normal_pi_subgroup() {
        let groups = [
            s4(),
            group(4, &["(0 1 2 3)", "(0 2)"]),
            group(6, &["(0 1 2)(3 4 5)", "(0 3)(1 4)(2 5)", "(1 2)(4 5)"]),
            group(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]),
        ];
        for g in &groups {
            for p in PrimeSet::of(g.order() as u64).subsets() {
                let o = o_pi(g, &p).unwrap();
                assert!(o.is_normal_in(g));
                assert!(p.is_pi_number(o.order() as u64));
                for a in g.elements() {
                    for b in g.elements() {
                        let n = g.normal_closure(&[a.clone(), b.clone()]).unwrap();
                        if p.is_pi_number(n.order() as u64) {
                            assert!(n.is_subgroup_of(&o), "{p} {a} {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn separability() {
        for g in [s4(), group(4, &["(0 1 2 3)", "(0 2)"]), group(6, &["(0 1 2 3 4 5)"])] {
            for p in PrimeSet::of(g.order() as u64).subsets() {
                assert!(is_pi_separable(&g, &p).unwrap(), "{p}");
            }
        }
        assert!(!is_pi_separable(&a5(), &pi("2,3")).unwrap());
        let series = pi_series(&a5(), &pi("2,3,5")).unwrap();
        assert!(series.reaches_top);
        assert_eq!(series.labels, vec![FactorKind::Pi]);
        let series = pi_series(&s4(), &pi("2")).unwrap();
        let orders: Vec<usize> = series.terms.iter().map(Group::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        for t in &series.terms {
            assert!(t.is_normal_in(&s4()));
        }
    }

    #[test]
    fn hall_subgroups() {
        let g = s4();
        assert_eq!(hall_subgroup(&g, &PrimeSet::of(24), 1).unwrap().order(), 24);
        let h = hall_subgroup(&g, &pi("2"), 1).unwrap();
        assert_eq!(h.order(), 8);
        assert!(h.is_subgroup_of(&g));
        for x in g.elements() {
            let conj: Vec<Perm> = h.generators().iter().map(|y| x.conjugate(y)).collect();
            let hc = Group::generate(4, conj, DEFAULT_CAP).unwrap();
            assert_eq!(hc.order(), 8);
        }
        let f21 = group(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]);
        assert_eq!(hall_subgroup(&f21, &pi("3"), 4).unwrap().order(), 3);
        assert_eq!(hall_subgroup(&f21, &pi("5"), 4).unwrap().order(), 1);
        assert!(matches!(
            hall_subgroup(&a5(), &pi("2,3"), 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn hall_orders_across_seeds() {
        let g = group(6, &["(0 1 2 3 4 5)", "(0 1)"]);
        for p in PrimeSet::of(720).subsets() {
            if !is_pi_separable(&g, &p).unwrap() {
                continue;
            }
            for seed in 0..3 {
                let h = hall_subgroup(&g, &p, seed).unwrap();
                assert_eq!(h.order() as u64, pi_part(720, &p));
            }
        }
    }
}
