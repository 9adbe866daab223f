//! Free-module elements and maps between free modules.
//!
//! A [`FreeModuleMap`] is stored column-major: `cols[j]` is the image of the
//! j-th source basis vector, a [`Vector`] of length `target`.

use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    pub comps: Vec<Polynomial>,
}

impl Vector {
    pub fn zero(ring: &PolyRing, rank: usize) -> Self {
        Vector {
            comps: vec![ring.zero(); rank],
        }
    }

    pub fn unit(ring: &PolyRing, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.comps[i] = ring.one();
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, ring: &PolyRing, other: &Vector) -> Vector {
        Vector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &Vector) -> Vector {
        Vector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale_poly(&self, ring: &PolyRing, f: &Polynomial) -> Vector {
        Vector {
            comps: self.comps.iter().map(|a| ring.mul(a, f)).collect(),
        }
    }

    pub fn mul_term(&self, ring: &PolyRing, m: &crate::monomial::Monomial, c: u64) -> Vector {
        Vector {
            comps: self.comps.iter().map(|a| ring.mul_term(a, m, c)).collect(),
        }
    }

    /// Wrap a polynomial as a rank-1 vector.
    pub fn scalar(f: Polynomial) -> Self {
        Vector { comps: vec![f] }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeModuleMap {
    pub source: usize,
    pub target: usize,
    pub cols: Vec<Vector>,
}

impl FreeModuleMap {
    pub fn new(target: usize, cols: Vec<Vector>) -> Self {
        debug_assert!(cols.iter().all(|c| c.rank() == target));
        FreeModuleMap {
            source: cols.len(),
            target,
            cols,
        }
    }

    /// The zero map from a rank-0 source.
    pub fn empty(target: usize) -> Self {
        FreeModuleMap {
            source: 0,
            target,
            cols: Vec::new(),
        }
    }

    pub fn identity(ring: &PolyRing, rank: usize) -> Self {
        FreeModuleMap {
            source: rank,
            target: rank,
            cols: (0..rank).map(|i| Vector::unit(ring, rank, i)).collect(),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.cols[col].comps[row]
    }

    pub fn transpose(&self) -> FreeModuleMap {
        let cols = (0..self.target)
            .map(|r| Vector {
                comps: (0..self.source)
                    .map(|c| self.entry(r, c).clone())
                    .collect(),
            })
            .collect::<Vec<_>>();
        FreeModuleMap {
            source: self.target,
            target: self.source,
            cols,
        }
    }

    pub fn apply(&self, ring: &PolyRing, v: &Vector) -> Vector {
        debug_assert_eq!(v.rank(), self.source);
        let mut out = Vector::zero(ring, self.target);
        for (col, f) in self.cols.iter().zip(&v.comps) {
            if !f.is_zero() {
                out = out.add(ring, &col.scale_poly(ring, f));
            }
        }
        out
    }

    pub fn compose(&self, ring: &PolyRing, inner: &FreeModuleMap) -> FreeModuleMap {
        debug_assert_eq!(inner.target, self.source);
        FreeModuleMap::new(
            self.target,
            inner.cols.iter().map(|c| self.apply(ring, c)).collect(),
        )
    }

    /// Kronecker product with the identity of rank `a`: the block map on
    /// `a` interleaved copies, indexing position (c, k) as `c*a + k`.
    pub fn tensor_identity(&self, ring: &PolyRing, a: usize) -> FreeModuleMap {
        let target = self.target * a;
        let mut cols = Vec::with_capacity(self.source * a);
        for c in 0..self.source {
            for k in 0..a {
                let mut v = Vector::zero(ring, target);
                for r in 0..self.target {
                    v.comps[r * a + k] = self.entry(r, c).clone();
                }
                cols.push(v);
            }
        }
        FreeModuleMap::new(target, cols)
    }

    /// Block-diagonal stack of `n` copies of this map.
    pub fn block_diagonal(&self, ring: &PolyRing, n: usize) -> FreeModuleMap {
        let target = self.target * n;
        let mut cols = Vec::with_capacity(self.source * n);
        for b in 0..n {
            for c in 0..self.source {
                let mut v = Vector::zero(ring, target);
                for r in 0..self.target {
                    v.comps[b * self.target + r] = self.entry(r, c).clone();
                }
                cols.push(v);
            }
        }
        FreeModuleMap::new(target, cols)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self, ring: &PolyRing) -> serde_json::Value {
        // Row-major matrix of polynomial strings.
        let rows: Vec<serde_json::Value> = (0..self.target)
            .map(|r| {
                (0..self.source)
                    .map(|c| serde_json::Value::String(ring.to_string(self.entry(r, c))))
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        serde_json::json!({
            "source": self.source,
            "target": self.target,
            "matrix": rows,
        })
    }
}
