//! Companion matrices, the structure maps between `GF(q^k)` and `GF(q)`
//! matrices, and cyclic matrix groups acting on subspaces by right
//! multiplication.

use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{primitive_modulus, FieldElement, FiniteField};
use crate::linalg::{same_field, Matrix};
use crate::subspace::{Subspace, SubspaceCode};

/// Companion matrix of a monic polynomial given low-order first:
/// superdiagonal ones and last row `(-p_0, ..., -p_{k-1})`.
pub fn companion_matrix(field: &Arc<FiniteField>, modulus: &[u32]) -> Result<Matrix> {
    if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
        return Err(Error::NotMonic);
    }
    let k = modulus.len() - 1;
    let mut m = Matrix::zeros(field, k, k);
    for i in 0..k - 1 {
        m.set(i, i + 1, 1);
    }
    for (j, &c) in modulus[..k].iter().enumerate() {
        if !field.contains(c) {
            return Err(Error::NotAnElement {
                value: c as u64,
                order: field.order(),
            });
        }
        m.set(k - 1, j, field.neg(c));
    }
    Ok(m)
}

/// The maps `φ`, `ϕ` and `ψ` for an extension `GF(q^k)` over its base
/// `GF(q)`, with `φ(x) = M_k`, the companion matrix of the modulus.
#[derive(Clone, Debug)]
pub struct StructureMaps {
    ext: Arc<FiniteField>,
    base: Arc<FiniteField>,
    powers: Vec<Matrix>,
}

impl StructureMaps {
    pub fn new(ext: &Arc<FiniteField>) -> Result<StructureMaps> {
        let base = ext
            .base()
            .cloned()
            .ok_or_else(|| Error::FieldMismatch(format!("{ext} is a prime field with no base")))?;
        let m = companion_matrix(&base, ext.modulus())?;
        let k = ext.degree();
        let mut powers = Vec::with_capacity(k);
        powers.push(Matrix::identity(&base, k));
        for i in 1..k {
            powers.push(powers[i - 1].mul(&m)?);
        }
        Ok(StructureMaps {
            ext: Arc::clone(ext),
            base,
            powers,
        })
    }

    pub fn ext(&self) -> &Arc<FiniteField> {
        &self.ext
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.powers.len()
    }

    /// `M_k`, the image of the class of `x`.
    pub fn companion(&self) -> Matrix {
        companion_matrix(&self.base, self.ext.modulus()).expect("modulus is monic")
    }

    /// `φ(a) = Σ a_i M_k^i` for an encoded element `a`.
    pub fn phi(&self, a: u32) -> Matrix {
        let k = self.degree();
        let mut out = Matrix::zeros(&self.base, k, k);
        for (c, p) in self.ext.coefficients(a).into_iter().zip(&self.powers) {
            if c != 0 {
                out = out.add(&p.scale(c)).expect("same shape");
            }
        }
        out
    }

    pub fn phi_element(&self, a: &FieldElement) -> Result<Matrix> {
        if !same_field(a.field(), &self.ext) {
            return Err(Error::FieldMismatch(format!(
                "element of {} given to maps for {}",
                a.field(),
                self.ext
            )));
        }
        Ok(self.phi(a.value()))
    }

    /// Blockwise `φ` image of any matrix over the extension.
    pub fn expand(&self, a: &Matrix) -> Result<Matrix> {
        if !same_field(a.field(), &self.ext) {
            return Err(Error::FieldMismatch(format!(
                "matrix over {} given to maps for {}",
                a.field(),
                self.ext
            )));
        }
        let k = self.degree();
        let mut out = Matrix::zeros(&self.base, a.rows() * k, a.cols() * k);
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let v = a.get(r, c);
                if v != 0 {
                    out.set_block(r * k, c * k, &self.phi(v));
                }
            }
        }
        Ok(out)
    }

    /// `ϕ`: a subspace of `GF(q^k)^s` to its image in `GF(q)^{ks}`.
    pub fn field_reduction(&self, u: &Subspace) -> Result<Subspace> {
        let b = self.expand(u.basis())?;
        let k = self.degree();
        if u.dim() == 0 {
            return Ok(Subspace::zero(&self.base, u.ambient() * k));
        }
        Subspace::from_basis(&b)
    }

    /// `ψ`: an invertible matrix over the extension to its blockwise image.
    pub fn psi(&self, a: &Matrix) -> Result<Matrix> {
        if !same_field(a.field(), &self.ext) {
            return Err(Error::FieldMismatch(format!(
                "matrix over {} given to maps for {}",
                a.field(),
                self.ext
            )));
        }
        if !a.is_square() || a.rank() < a.rows() {
            return Err(Error::SingularMatrix);
        }
        self.expand(a)
    }
}

/// A cyclic subgroup of `GL(n, q)` given by a generator of known order.
#[derive(Clone, Debug)]
pub struct CyclicMatrixGroup {
    generator: Matrix,
    order: u64,
}

impl CyclicMatrixGroup {
    /// Checks that `generator` has order exactly `order`.
    pub fn new(generator: Matrix, order: u64) -> Result<CyclicMatrixGroup> {
        if !generator.is_square() {
            return Err(Error::ShapeMismatch("group generator must be square".into()));
        }
        let actual = generator.matrix_order_dividing(order).map_err(|e| match e {
            Error::NotADivisor { .. } => Error::InvariantViolated(format!("generator order does not divide {order}")),
            other => other,
        })?;
        if actual != order {
            return Err(Error::InvariantViolated(format!(
                "generator has order {actual}, expected {order}"
            )));
        }
        Ok(CyclicMatrixGroup { generator, order })
    }

    pub fn trivial(field: &Arc<FiniteField>, n: usize) -> CyclicMatrixGroup {
        CyclicMatrixGroup {
            generator: Matrix::identity(field, n),
            order: 1,
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.generator.field()
    }

    pub fn degree(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Whether the order is `q^n - 1`.
    pub fn is_singer(&self) -> bool {
        (self.field().order() as u128).pow(self.degree() as u32) - 1 == self.order as u128
    }

    /// `generator^i`.
    pub fn element(&self, i: u64) -> Matrix {
        self.generator.pow(i % self.order).expect("generator is square")
    }

    /// The unique subgroup of order `t`, generated by `generator^(N/t)`.
    pub fn subgroup_of_order(&self, t: u64) -> Result<CyclicMatrixGroup> {
        if t == 0 || !self.order.is_multiple_of(t) {
            return Err(Error::NotADivisor { t, order: self.order });
        }
        Ok(CyclicMatrixGroup {
            generator: self.element(self.order / t),
            order: t,
        })
    }

    fn check_ambient(&self, u: &Subspace) -> Result<()> {
        if self.degree() != u.ambient() {
            return Err(Error::DegreeMismatch {
                group: self.degree(),
                ambient: u.ambient(),
            });
        }
        if !same_field(self.field(), u.field()) {
            return Err(Error::FieldMismatch(format!(
                "group over {}, subspace over {}",
                self.field(),
                u.field()
            )));
        }
        Ok(())
    }

    /// Orbit size of `u`: the least `i >= 1` with `u · g^i = u`.
    pub fn orbit_size(&self, u: &Subspace) -> Result<u64> {
        self.check_ambient(u)?;
        let mut x = u.act(&self.generator)?;
        let mut i = 1u64;
        while &x != u {
            x = x.act(&self.generator)?;
            i += 1;
        }
        debug_assert_eq!(self.order % i, 0);
        Ok(i)
    }
}

/// Companion matrix of the canonical primitive modulus of degree `n` over `field`.
pub fn singer_cycle(field: &Arc<FiniteField>, n: usize) -> Result<Matrix> {
    companion_matrix(field, &primitive_modulus(field, n)?)
}

/// The Singer group `⟨M_n⟩ ≤ GL(n, q)` of order `q^n - 1`.
pub fn singer_group(field: &Arc<FiniteField>, n: usize) -> Result<CyclicMatrixGroup> {
    let order = checked_group_order(field.order(), n)?;
    CyclicMatrixGroup::new(singer_cycle(field, n)?, order)
}

/// `⟨ψ(M_s)⟩ ≤ GL(ks, q)`, with `M_s` a Singer cycle of `GL(s, q^k)`.
pub fn embedded_singer_group(maps: &StructureMaps, s: usize) -> Result<CyclicMatrixGroup> {
    let ms = singer_cycle(maps.ext(), s)?;
    let order = checked_group_order(maps.base().order(), maps.degree() * s)?;
    CyclicMatrixGroup::new(maps.psi(&ms)?, order)
}

fn checked_group_order(q: u64, n: usize) -> Result<u64> {
    arith::checked_pow(q, n as u32)
        .filter(|&v| v <= 1 << 40)
        .map(|v| v - 1)
        .ok_or(Error::FieldTooLarge((q as u128).saturating_pow(n as u32)))
}

/// The orbit of `u` under `g` and the stabilizer order `|G| / |orbit|`.
pub fn orbit_subspace(g: &CyclicMatrixGroup, u: &Subspace) -> Result<(SubspaceCode, u64)> {
    g.check_ambient(u)?;
    let mut members = vec![u.clone()];
    let mut x = u.act(g.generator())?;
    while &x != u {
        let next = x.act(g.generator())?;
        members.push(x);
        x = next;
    }
    let size = members.len() as u64;
    if !g.order().is_multiple_of(size) {
        return Err(Error::InvariantViolated(format!(
            "orbit size {size} does not divide {}",
            g.order()
        )));
    }
    Ok((SubspaceCode::new(members)?, g.order() / size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::subspace::{enumerate_grassmannian, is_spread, subspace_distance};
    use proptest::prelude::*;

    fn gf(p: u32, e: usize) -> Arc<FiniteField> {
        make_field(p, e, None).unwrap()
    }

    fn gf4_over_gf2() -> StructureMaps {
        StructureMaps::new(&make_field(2, 2, Some(gf(2, 1))).unwrap()).unwrap()
    }

    /// Order by repeated multiplication, independent of `matrix_order_dividing`.
    fn brute_order(m: &Matrix) -> u64 {
        let mut x = m.clone();
        let mut i = 1;
        while !x.is_identity() {
            x = x.mul(m).unwrap();
            i += 1;
        }
        i
    }

    #[test]
    fn companion_examples() {
        let f = gf(2, 1);
        let c = companion_matrix(&f, &[1, 1, 1]).unwrap();
        assert_eq!(c, Matrix::from_rows(&f, &[vec![0, 1], vec![1, 1]]).unwrap());
        assert_eq!(brute_order(&c), 3);
        let one = companion_matrix(&f, &[1, 1]).unwrap();
        assert!(one.is_identity());
        assert_eq!(companion_matrix(&f, &[1, 0]).unwrap_err(), Error::NotMonic);
        let g3 = gf(3, 1);
        assert_eq!(brute_order(&singer_cycle(&g3, 3).unwrap()), 26);
    }

    #[test]
    fn phi_examples() {
        let maps = gf4_over_gf2();
        let f2 = maps.base().clone();
        assert!(maps.phi(0).is_zero());
        assert!(maps.phi(1).is_identity());
        assert_eq!(maps.phi(2), Matrix::from_rows(&f2, &[vec![0, 1], vec![1, 1]]).unwrap());
        assert!(StructureMaps::new(&gf(2, 1)).is_err());
        let other = gf(3, 2);
        assert!(matches!(
            maps.phi_element(&other.element(1).unwrap()),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn phi_is_a_ring_embedding_gf9_over_gf3() {
        let ext = make_field(3, 2, Some(gf(3, 1))).unwrap();
        let maps = StructureMaps::new(&ext).unwrap();
        for a in 0..9 {
            assert_eq!(maps.phi(a).rank() == 2, a != 0);
            for b in 0..9 {
                assert_eq!(maps.phi(ext.add(a, b)), maps.phi(a).add(&maps.phi(b)).unwrap());
                assert_eq!(maps.phi(ext.mul(a, b)), maps.phi(a).mul(&maps.phi(b)).unwrap());
            }
        }
    }

    #[test]
    fn field_reduction_of_lines_is_a_spread() {
        let maps = gf4_over_gf2();
        let u = Subspace::from_rows(maps.ext(), &[vec![1, 0]]).unwrap();
        let img = maps.field_reduction(&u).unwrap();
        assert_eq!(img, Subspace::standard(maps.base(), 4, &[0, 1]));
        let lines: Vec<Subspace> = enumerate_grassmannian(maps.ext(), 1, 2).unwrap().collect();
        let spread = SubspaceCode::new(lines.iter().map(|l| maps.field_reduction(l).unwrap())).unwrap();
        assert_eq!(spread.len(), 5);
        assert!(is_spread(&spread));
    }

    #[test]
    fn psi_examples() {
        let maps = gf4_over_gf2();
        let e = maps.ext().clone();
        assert!(maps.psi(&Matrix::identity(&e, 2)).unwrap().is_identity());
        let a = Matrix::scalar(&e, 2, 2);
        let expected = Matrix::block_diag(maps.base(), &[&maps.phi(2), &maps.phi(2)]).unwrap();
        assert_eq!(maps.psi(&a).unwrap(), expected);
        assert_eq!(maps.psi(&Matrix::zeros(&e, 2, 2)).unwrap_err(), Error::SingularMatrix);
        let g = embedded_singer_group(&maps, 2).unwrap();
        assert_eq!(g.order(), 15);
        assert_eq!(brute_order(g.generator()), 15);
    }

    /// Every matrix in GL(2, 4), found by scanning all 256 matrices.
    fn gl2_gf4(e: &Arc<FiniteField>) -> Vec<Matrix> {
        (0..256u32)
            .map(|i| Matrix::from_vec(e, 2, 2, vec![i & 3, (i >> 2) & 3, (i >> 4) & 3, i >> 6]).unwrap())
            .filter(|m| m.rank() == 2)
            .collect()
    }

    #[test]
    fn equivariance_exhaustive_gf4_squared() {
        let maps = gf4_over_gf2();
        let e = maps.ext().clone();
        let gl = gl2_gf4(&e);
        assert_eq!(gl.len(), 180);
        let mut subspaces: Vec<Subspace> = enumerate_grassmannian(&e, 1, 2).unwrap().collect();
        subspaces.push(Subspace::whole(&e, 2));
        for a in &gl {
            let pa = maps.psi(a).unwrap();
            for u in &subspaces {
                assert_eq!(
                    maps.field_reduction(&u.act(a).unwrap()).unwrap(),
                    maps.field_reduction(u).unwrap().act(&pa).unwrap()
                );
            }
            for b in &gl {
                assert_eq!(
                    maps.psi(&a.mul(b).unwrap()).unwrap(),
                    pa.mul(&maps.psi(b).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn singer_group_orders() {
        assert_eq!(singer_group(&gf(2, 1), 2).unwrap().order(), 3);
        let g = singer_group(&gf(3, 1), 6).unwrap();
        assert_eq!(g.order(), 728);
        assert!(g.is_singer());
        let t = g.subgroup_of_order(56).unwrap();
        assert_eq!(t.generator().matrix_order().unwrap(), 56);
        assert!(g.subgroup_of_order(1).unwrap().generator().is_identity());
        assert_eq!(g.subgroup_of_order(728).unwrap().generator(), g.generator());
        assert_eq!(
            g.subgroup_of_order(5).unwrap_err(),
            Error::NotADivisor { t: 5, order: 728 }
        );
        assert_eq!(singer_group(&gf(2, 2), 9).unwrap().order(), 262143);
        assert!(CyclicMatrixGroup::new(Matrix::identity(&gf(2, 1), 2), 3).is_err());
    }

    #[test]
    fn orbits_and_stabilizers() {
        let f2 = gf(2, 1);
        let u = Subspace::standard(&f2, 4, &[0, 1]);
        let (orb, stab) = orbit_subspace(&CyclicMatrixGroup::trivial(&f2, 4), &u).unwrap();
        assert_eq!((orb.len(), stab), (1, 1));

        let maps = gf4_over_gf2();
        let g = embedded_singer_group(&maps, 2).unwrap();
        let line = maps
            .field_reduction(&Subspace::from_rows(maps.ext(), &[vec![1, 0]]).unwrap())
            .unwrap();
        let (orb, stab) = orbit_subspace(&g, &line).unwrap();
        assert_eq!((orb.len(), stab), (5, 3));
        assert!(is_spread(&orb));

        let bad = Subspace::standard(&f2, 3, &[0]);
        assert!(matches!(
            orbit_subspace(&g, &bad),
            Err(Error::DegreeMismatch { group: 4, ambient: 3 })
        ));
    }

    #[test]
    fn singer_group_is_transitive_on_lines_and_hyperplanes() {
        for (p, n) in [(2u32, 3usize), (2, 4), (3, 3)] {
            let f = gf(p, 1);
            let q = p as u64;
            let g = singer_group(&f, n).unwrap();
            let points = (q.pow(n as u32) - 1) / (q - 1);
            let scalar = g.element(points);
            assert!(scalar.is_scalar());
            for dim in [1, n - 1] {
                let all: Vec<Subspace> = enumerate_grassmannian(&f, dim, n).unwrap().collect();
                for u in &all {
                    let (orb, stab) = orbit_subspace(&g, u).unwrap();
                    assert_eq!(orb.len() as u64, points);
                    assert_eq!(stab, q - 1);
                    assert_eq!(orb.len() as u64 * stab, g.order());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_scales_distance(a in proptest::collection::vec(0u32..4, 6), b in proptest::collection::vec(0u32..4, 6)) {
            let maps = gf4_over_gf2();
            let u = Subspace::span(&Matrix::from_vec(maps.ext(), 2, 3, a).unwrap());
            let v = Subspace::span(&Matrix::from_vec(maps.ext(), 2, 3, b).unwrap());
            let du = subspace_distance(&u, &v).unwrap();
            let ru = maps.field_reduction(&u).unwrap();
            let rv = maps.field_reduction(&v).unwrap();
            prop_assert_eq!(subspace_distance(&ru, &rv).unwrap(), 2 * du);
            prop_assert_eq!(ru.intersect(&rv).unwrap(), maps.field_reduction(&u.intersect(&v).unwrap()).unwrap());
        }

        #[test]
        fn orbit_stabilizer_identity(rows in proptest::collection::vec(0u32..3, 8), t_idx in 0usize..6) {
            let f = gf(3, 1);
            let g = singer_group(&f, 4).unwrap();
            let t = crate::arith::divisors(80)[t_idx];
            let h = g.subgroup_of_order(t).unwrap();
            let u = Subspace::span(&Matrix::from_vec(&f, 2, 4, rows).unwrap());
            prop_assume!(u.dim() == 2);
            let (orb, stab) = orbit_subspace(&h, &u).unwrap();
            prop_assert_eq!(orb.len() as u64 * stab, t);
            prop_assert_eq!(h.orbit_size(&u).unwrap(), orb.len() as u64);
        }
    }
}
