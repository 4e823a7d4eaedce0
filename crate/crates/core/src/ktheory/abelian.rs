use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;

/// `ℤ^free_rank ⊕ ⊕ᵢ ℤ/tᵢ` presented as the cokernel of a relation matrix.
///
/// Reduced coordinates list the free part first, then the torsion part in
/// divisibility order. Torsion coordinates are kept in `[0, tᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Image of each original generator `e_j` in reduced coordinates.
    pub generator_images: Vec<Vec<BigInt>>,
    /// SNF coordinate behind each reduced coordinate.
    coords: Vec<usize>,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

/// `ℤ^cols / rowspace(a)`: rows of `a` are relations among the generators
/// indexed by columns.
pub fn cokernel_presentation(a: &IntegerMatrix) -> AbelianGroupPresentation {
    let snf = smith_normal_form(a);
    let factors = snf.invariant_factors();
    let n = a.cols();
    let r = factors.len();
    let mut coords: Vec<usize> = (r..n).collect();
    let mut torsion = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if !d.is_one() {
            coords.push(i);
            torsion.push(d.clone());
        }
    }
    let mut p = AbelianGroupPresentation {
        free_rank: n - r,
        torsion,
        generator_images: Vec::new(),
        coords,
        v: snf.v,
        v_inv: snf.v_inv,
    };
    p.refresh_images();
    p
}

/// Basis of the integer nullspace `{v : A·v = 0}`. The basis is saturated:
/// it spans every integer solution, not just a finite-index sublattice.
pub fn kernel_basis(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols()).map(|j| snf.v.col(j)).collect()
}

impl AbelianGroupPresentation {
    fn refresh_images(&mut self) {
        let n = self.num_generators();
        self.generator_images = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                self.reduce(&e)
            })
            .collect();
    }

    pub fn num_generators(&self) -> usize {
        self.v.rows()
    }

    /// Number of reduced coordinates.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `None` for free coordinates.
    pub fn modulus(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.free_rank).map(|k| &self.torsion[k])
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.is_empty()
    }

    /// Group order, when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Class of `x ∈ ℤ^generators` in reduced coordinates.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.v.vec_mul(x);
        self.coords
            .iter()
            .enumerate()
            .map(|(i, &c)| match self.modulus(i) {
                Some(d) => y[c].mod_floor(d),
                None => y[c].clone(),
            })
            .collect()
    }

    /// A vector of generators whose class is the `i`-th reduced basis element.
    pub fn lift(&self, i: usize) -> Vec<BigInt> {
        self.v_inv.row(self.coords[i])
    }

    /// Replaces the `i`-th free basis element by its negative.
    pub fn flip_free(&mut self, i: usize) {
        assert!(i < self.free_rank, "only free coordinates can be flipped");
        let c = self.coords[i];
        for r in 0..self.v.rows() {
            let x = self.v.get(r, c);
            self.v.set(r, c, -x);
        }
        for k in 0..self.v_inv.cols() {
            let x = self.v_inv.get(c, k);
            self.v_inv.set(c, k, -x);
        }
        self.refresh_images();
    }

    /// `dᵢ eᵢ` for every torsion coordinate, as rows in reduced coordinates.
    pub fn torsion_relations(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.torsion.len(), self.dim());
        for (k, d) in self.torsion.iter().enumerate() {
            m.set(k, self.free_rank + k, d.clone());
        }
        m
    }

    /// Whether `x` (reduced coordinates) is zero in the group.
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter().enumerate().all(|(i, xi)| match self.modulus(i) {
            Some(d) => xi.is_multiple_of(d),
            None => xi.is_zero(),
        })
    }
}

impl fmt::Display for AbelianGroupPresentation {
    /// `Z`, `Z^3`, `Z/2`, `Z^2 + Z/3 + Z/6`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A homomorphism between reduced presentations, given by the images of
/// the source basis elements (rows) in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub matrix: Vec<Vec<BigInt>>,
    pub injective: bool,
    pub surjective: bool,
}

impl GroupHom {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn group_hom(
    source: &AbelianGroupPresentation,
    target: &AbelianGroupPresentation,
    matrix: Vec<Vec<BigInt>>,
) -> GroupHom {
    let k2 = target.dim();
    let m = IntegerMatrix::from_dense(k2, &matrix);
    let stacked = m.vstack(&target.torsion_relations());

    let surjective = cokernel_presentation(&stacked).is_trivial();

    // x ∈ ker ⇔ x·M ∈ rowspace(R₂) ⇔ (x, −y) is in the left kernel of [M; R₂]
    let k1 = source.dim();
    let injective = kernel_basis(&stacked.transpose())
        .iter()
        .all(|z| source.is_zero_element(&z[..k1]));

    GroupHom {
        matrix,
        injective,
        surjective,
    }
}

/// `|det A|` for square `A` (used to cross-check cokernel orders).
pub fn abs_det(a: &IntegerMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "square matrix expected");
    let snf = smith_normal_form(a);
    if snf.rank() < a.rows() {
        return BigInt::zero();
    }
    snf.invariant_factors().iter().product::<BigInt>().abs()
}
