use super::{Group, Perm};
use crate::error::{input, Error, Result};

/// Image of one generator under an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorImage {
    /// Product of generator powers `g_i^e`, read left to right.
    Word(Vec<(usize, i64)>),
    Perm(Perm),
}

/// An automorphism given by the images of the group's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismSpec {
    pub images: Vec<GeneratorImage>,
}

impl AutomorphismSpec {
    pub fn new(images: Vec<GeneratorImage>) -> Self {
        Self { images }
    }

    /// Evaluates the automorphism on every element of `g`, returning the
    /// induced permutation of element indices. Fails unless the map is a
    /// bijective homomorphism.
    pub fn resolve(&self, g: &Group) -> Result<Vec<u32>> {
        let gens = g.generators();
        if self.images.len() != gens.len() {
            return input(format!(
                "automorphism lists {} images for {} generators",
                self.images.len(),
                gens.len()
            ));
        }
        let mut gen_images = Vec::with_capacity(gens.len());
        for img in &self.images {
            let p = match img {
                GeneratorImage::Perm(p) => p.clone(),
                GeneratorImage::Word(w) => {
                    let mut p = Perm::identity(g.degree());
                    for &(i, e) in w {
                        let Some(s) = gens.get(i) else {
                            return input(format!("word refers to missing generator g{i}"));
                        };
                        p = &p * &s.pow(e);
                    }
                    p
                }
            };
            if !g.contains(&p) {
                return input(format!("generator image {p} lies outside the group"));
            }
            gen_images.push(p);
        }
        let n = g.order();
        let mut map = vec![0u32; n];
        let mut images: Vec<Perm> = Vec::with_capacity(n);
        images.push(Perm::identity(g.degree()));
        for i in 1..n {
            let (p, s) = g.tree_edge(i).expect("non-identity");
            let img = &images[p] * &gen_images[s];
            map[i] = g.index_of(&img).expect("checked") as u32;
            images.push(img);
        }
        // Homomorphism on every Cayley-graph edge, then injectivity.
        for i in 0..n {
            for (s, gen) in gens.iter().enumerate() {
                let j = g.index_of(&(g.element(i) * gen)).expect("closed");
                if map[j] as usize != g.index_of(&(&images[i] * &gen_images[s])).expect("closed")
                {
                    return input("generator images do not define a homomorphism");
                }
            }
        }
        let mut seen = vec![false; n];
        for &m in &map {
            if std::mem::replace(&mut seen[m as usize], true) {
                return input("generator images define a non-injective map");
            }
        }
        Ok(map)
    }
}

/// `G ⋊ A` as a permutation group on the elements of `G`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: Group,
    /// Right-regular image of `G`.
    pub base: Group,
    /// `<A>` acting on the elements of `G`.
    pub acting: Group,
}

/// Builds `G ⋊ <A>`: points are the elements of `G`, which acts by right
/// translation while each automorphism acts naturally.
pub fn semidirect_product(
    g: &Group,
    auts: &[AutomorphismSpec],
    cap: usize,
) -> Result<SemidirectProduct> {
    let n = g.order();
    if n > cap {
        return Err(Error::Resource(format!(
            "regular degree {n} exceeds the cap of {cap}"
        )));
    }
    let translations: Vec<Perm> = g
        .generators()
        .iter()
        .map(|s| {
            let images = g
                .elements()
                .iter()
                .map(|x| g.index_of(&(x * s)).expect("closed") as u32)
                .collect();
            Perm::from_images(images).expect("translation is a bijection")
        })
        .collect();
    let mut aut_perms = Vec::with_capacity(auts.len());
    for a in auts {
        aut_perms.push(Perm::from_images(a.resolve(g)?)?);
    }
    let base = Group::generate(n, translations.clone(), cap)?;
    let acting = Group::generate(n, aut_perms.clone(), cap)?;
    let mut all = translations;
    all.extend(aut_perms);
    let group = Group::generate(n, all, cap)?;
    debug_assert_eq!(group.order(), base.order() * acting.order());
    Ok(SemidirectProduct {
        group,
        base,
        acting,
    })
}
