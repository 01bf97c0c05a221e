use crate::error::{Error, Result};

use super::{Elem, Field};

/// Field embedding `F_{p^{k0}} -> F_{p^k}` for `k0 | k`.
///
/// For a prime base the embedding is the inclusion of constants; otherwise
/// the base generator is sent to the smallest-code root of the base modulus
/// inside the extension.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: Field,
    ext: Field,
    forward: Vec<Elem>,
    backward: Vec<Option<Elem>>,
}

impl Embedding {
    pub fn new(base: &Field, ext: &Field) -> Result<Self> {
        let not_sub = || Error::NotASubfield {
            base: base.literal(),
            ext: ext.literal(),
        };
        if base.characteristic() != ext.characteristic()
            || !ext.degree().is_multiple_of(base.degree())
        {
            return Err(not_sub());
        }
        let image_of_generator = match base.modulus() {
            None => None,
            Some(m) => {
                let root = ext.elements().find(|&x| {
                    let mut acc = Elem::ZERO;
                    for &c in m.iter().rev() {
                        acc = ext.add(ext.mul(acc, x), ext.from_int(c as i64));
                    }
                    acc.is_zero()
                });
                Some(root.ok_or_else(not_sub)?)
            }
        };
        let forward: Vec<Elem> = base
            .elements()
            .map(|a| match image_of_generator {
                None => ext.from_int(a.0 as i64),
                Some(beta) => {
                    let mut acc = Elem::ZERO;
                    for &c in base.coords(a).iter().rev() {
                        acc = ext.add(ext.mul(acc, beta), ext.from_int(c as i64));
                    }
                    acc
                }
            })
            .collect();
        let mut backward = vec![None; ext.order() as usize];
        for (a, &img) in base.elements().zip(&forward) {
            backward[img.0 as usize] = Some(a);
        }
        Ok(Self {
            base: base.clone(),
            ext: ext.clone(),
            forward,
            backward,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.forward[a.0 as usize]
    }

    /// Preimage of an extension element lying in the image of the base.
    #[inline]
    pub fn restrict(&self, a: Elem) -> Option<Elem> {
        self.backward[a.0 as usize]
    }

    pub fn relative_degree(&self) -> u32 {
        self.ext.degree() / self.base.degree()
    }
}

/// The norm `N(a) = a^{1 + q0 + ... + q0^{d-1}}` of `F_{q0^d}` down to `F_{q0}`.
#[derive(Clone, Debug)]
pub struct NormMap {
    embedding: Embedding,
}

impl NormMap {
    pub fn new(ext: &Field, base: &Field) -> Result<Self> {
        Ok(Self {
            embedding: Embedding::new(base, ext)?,
        })
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Norm computed as the product of the Galois conjugates, in the extension.
    pub fn norm_in_ext(&self, a: Elem) -> Elem {
        let ext = self.embedding.ext();
        let q0 = self.embedding.base().order() as u64;
        let mut conj = a;
        let mut acc = Elem::ONE;
        for _ in 0..self.embedding.relative_degree() {
            acc = ext.mul(acc, conj);
            conj = ext.pow(conj, q0);
        }
        acc
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.embedding
            .restrict(self.norm_in_ext(a))
            .expect("the norm lands in the base field")
    }
}

/// Returns the norm map of `field_ext` over `base`.
pub fn norm_map(field_ext: &Field, base: &Field) -> Result<NormMap> {
    NormMap::new(field_ext, base)
}
