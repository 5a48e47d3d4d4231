//! Subspaces of `GF(q)^n` in canonical form and constant dimension codes.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use indexmap::IndexSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linalg::{same_field, Matrix};

/// Default cap on the number of points [`enumerate_grassmannian`] will yield.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// Largest `q^n` for which spread predicates use a coverage bitmap.
const BITMAP_LIMIT: u128 = 1 << 24;

/// A subspace stored by its RREF basis, which has full row rank.
#[derive(Clone)]
pub struct Subspace {
    basis: Matrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.cols().hash(state);
        self.basis.data().hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}^{}) {:?}",
            self.dim(),
            self.field(),
            self.ambient(),
            self.basis.data()
        )
    }
}

impl Subspace {
    /// Row space of `m`; the rows need not be independent.
    pub fn span(m: &Matrix) -> Subspace {
        Subspace { basis: m.row_basis() }
    }

    /// Row space of `m`, requiring its rows to be independent.
    pub fn from_basis(m: &Matrix) -> Result<Subspace> {
        let s = Subspace::span(m);
        if s.dim() != m.rows() {
            return Err(Error::RankDeficient(format!(
                "{} rows span a space of dimension {}",
                m.rows(),
                s.dim()
            )));
        }
        Ok(s)
    }

    pub fn from_rows(field: &Arc<FiniteField>, rows: &[Vec<u32>]) -> Result<Subspace> {
        Subspace::from_basis(&Matrix::from_rows(field, rows)?)
    }

    /// `m` must already be in RREF with no zero rows.
    pub(crate) fn from_canonical(m: Matrix) -> Subspace {
        debug_assert_eq!(m.rref().matrix, m);
        debug_assert_eq!(m.rank(), m.rows());
        Subspace { basis: m }
    }

    pub fn zero(field: &Arc<FiniteField>, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
        }
    }

    pub fn whole(field: &Arc<FiniteField>, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, n),
        }
    }

    /// Span of the standard basis vectors `e_i` for the given 0-based indices.
    pub fn standard(field: &Arc<FiniteField>, n: usize, indices: &[usize]) -> Subspace {
        let mut m = Matrix::zeros(field, indices.len(), n);
        for (r, &i) in indices.iter().enumerate() {
            m.set(r, i, 1);
        }
        Subspace::span(&m)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        if !same_field(self.field(), other.field()) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let perp = self.orthogonal_complement().sum(&other.orthogonal_complement())?;
        Ok(perp.orthogonal_complement())
    }

    /// `dim(U + V)` without building the canonical sum.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        self.check(other)?;
        Ok(self.basis.vstack(&other.basis)?.rank())
    }

    /// Complement under the standard dot product `Σ x_i y_i`.
    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace::from_canonical(self.basis.kernel().row_basis())
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let row = Matrix::from_vec(self.field(), 1, v.len(), v.to_vec()).expect("vector entries are field elements");
        v.len() == self.ambient() && self.basis.vstack(&row).map(|m| m.rank()) == Ok(self.dim())
    }

    /// Whether `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim() <= other.dim() && self.sum_dim(other)? == other.dim())
    }

    /// `U · A` for an invertible `n × n` matrix `A`.
    pub fn act(&self, a: &Matrix) -> Result<Subspace> {
        if a.rows() != self.ambient() || !a.is_square() {
            return Err(Error::DegreeMismatch {
                group: a.rows(),
                ambient: self.ambient(),
            });
        }
        Ok(Subspace::span(&self.basis.mul(a)?))
    }

    /// All `q^k` vectors of the subspace, zero first.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let f = self.field();
        let q = f.order() as u32;
        let mut out = vec![vec![0u32; self.ambient()]];
        for row in self.basis.row_vectors() {
            let current = out.len();
            for c in 1..q {
                for i in 0..current {
                    let v = out[i].iter().zip(row).map(|(&x, &b)| f.add(x, f.mul(c, b))).collect();
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        format!("{} {}\n{}", self.dim(), self.ambient(), self.basis.to_text())
    }

    pub fn from_text(field: &Arc<FiniteField>, text: &str) -> Result<Subspace> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "missing `k n` header".into(),
        })?;
        let nums: Vec<usize> = header.split_whitespace().filter_map(|t| t.parse().ok()).collect();
        let [k, n] = nums[..] else {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("expected `k n`, found {header:?}"),
            });
        };
        let body: Vec<&str> = lines.collect();
        let m = Matrix::from_text(field, &body.join("\n"))?;
        if m.rows() != k || (k > 0 && m.cols() != n) {
            return Err(Error::ShapeMismatch(format!("expected {k} rows of length {n}")));
        }
        if k == 0 {
            return Ok(Subspace::zero(field, n));
        }
        Subspace::from_basis(&m)
    }
}

/// Vector `v` as an integer in `0..q^n`.
fn encode(v: &[u32], q: u64) -> usize {
    v.iter().fold(0u64, |acc, &x| acc * q + x as u64) as usize
}

pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    let s = u.sum_dim(v)?;
    Ok(2 * s - u.dim() - v.dim())
}

/// A nonempty set of distinct subspaces of common dimension `k`, `0 < k < n`.
#[derive(Clone, Debug)]
pub struct SubspaceCode {
    field: Arc<FiniteField>,
    n: usize,
    k: usize,
    members: IndexSet<Subspace>,
}

impl PartialEq for SubspaceCode {
    /// Set equality; insertion order is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.members.len() == other.members.len()
            && self.members.iter().all(|m| other.members.contains(m))
    }
}

impl Eq for SubspaceCode {}

impl SubspaceCode {
    pub fn new<I: IntoIterator<Item = Subspace>>(members: I) -> Result<SubspaceCode> {
        let mut it = members.into_iter();
        let first = it.next().ok_or(Error::InvalidCode)?;
        let (n, k) = (first.ambient(), first.dim());
        if k == 0 || k >= n {
            return Err(Error::BadDimensions { k, n });
        }
        let field = Arc::clone(first.field());
        let mut set = IndexSet::new();
        set.insert(first);
        for s in it {
            if s.ambient() != n || s.dim() != k || !same_field(&field, s.field()) {
                return Err(Error::InvalidCode);
            }
            set.insert(s);
        }
        Ok(SubspaceCode {
            field,
            n,
            k,
            members: set,
        })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.members.contains(s)
    }

    pub fn iter(&self) -> indexmap::set::Iter<'_, Subspace> {
        self.members.iter()
    }

    pub fn members(&self) -> &IndexSet<Subspace> {
        &self.members
    }

    /// Inserts `s`; returns false if it was already present.
    pub fn insert(&mut self, s: Subspace) -> Result<bool> {
        if s.ambient() != self.n || s.dim() != self.k {
            return Err(Error::InvalidCode);
        }
        Ok(self.members.insert(s))
    }
}

/// Minimum pairwise distance by exhaustive comparison; 0 for a singleton.
pub fn code_distance(c: &SubspaceCode) -> usize {
    let mut best = usize::MAX;
    let bound = 2 * c.k.min(c.n - c.k);
    for (u, v) in c.members.iter().tuple_combinations() {
        let d = subspace_distance(u, v).expect("members share the ambient space");
        best = best.min(d);
        if best == 0 {
            break;
        }
    }
    if best == usize::MAX {
        0
    } else {
        debug_assert!(best <= bound);
        best
    }
}

pub fn max_distance_bound(n: usize, k: usize) -> Result<usize> {
    if k == 0 || k >= n {
        return Err(Error::BadDimensions { k, n });
    }
    Ok(if 2 * k <= n { 2 * k } else { 2 * (n - k) })
}

/// `(q^n - q^r) / (q^k - 1)` with `r = n mod k`.
pub fn partial_spread_size_bound(n: usize, k: usize, q: u64) -> Result<u128> {
    if k == 0 || k >= n {
        return Err(Error::BadDimensions { k, n });
    }
    let q = q as u128;
    let r = (n % k) as u32;
    Ok((q.pow(n as u32) - q.pow(r)) / (q.pow(k as u32) - 1))
}

/// Number of `k`-subspaces of `GF(q)^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k as u32 {
        num *= q.pow(n as u32 - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

pub fn dual_code(c: &SubspaceCode) -> SubspaceCode {
    SubspaceCode::new(c.iter().map(Subspace::orthogonal_complement))
        .expect("complements of a valid code form a valid code")
}

/// Whether the members pairwise intersect trivially. Singletons qualify.
pub fn is_partial_spread(c: &SubspaceCode) -> bool {
    let q = c.field.order();
    let total = (q as u128).pow(c.n as u32);
    if total <= BITMAP_LIMIT {
        let mut seen = vec![false; total as usize];
        for s in c.iter() {
            for v in s.vectors().iter().skip(1) {
                let idx = encode(v, q);
                if seen[idx] {
                    return false;
                }
                seen[idx] = true;
            }
        }
        true
    } else {
        c.members
            .iter()
            .tuple_combinations()
            .all(|(u, v)| u.sum_dim(v).expect("same ambient") == 2 * c.k)
    }
}

/// A partial spread covering every nonzero vector.
pub fn is_spread(c: &SubspaceCode) -> bool {
    let q = c.field.order() as u128;
    if !c.n.is_multiple_of(c.k) {
        return false;
    }
    let size = (q.pow(c.n as u32) - 1) / (q.pow(c.k as u32) - 1);
    c.len() as u128 == size && is_partial_spread(c)
}

/// Whether `code_distance(c)` equals `max_distance_bound`, decided through
/// the partial spread property of `c` or of its dual.
pub fn has_max_distance(c: &SubspaceCode) -> bool {
    if c.len() < 2 {
        return false;
    }
    if 2 * c.k <= c.n {
        is_partial_spread(c)
    } else {
        is_partial_spread(&dual_code(c))
    }
}

/// Iterator over every `k`-subspace of `GF(q)^n` in RREF pivot order.
pub fn enumerate_grassmannian(field: &Arc<FiniteField>, k: usize, n: usize) -> Result<impl Iterator<Item = Subspace>> {
    enumerate_grassmannian_capped(field, k, n, ENUMERATION_CAP)
}

pub fn enumerate_grassmannian_capped(
    field: &Arc<FiniteField>,
    k: usize,
    n: usize,
    cap: u128,
) -> Result<impl Iterator<Item = Subspace>> {
    if k > n {
        return Err(Error::BadDimensions { k, n });
    }
    let q = field.order();
    let count = gaussian_binomial(n, k, q);
    if count > cap {
        return Err(Error::EnumerationTooLarge { count, cap });
    }
    let field = Arc::clone(field);
    Ok((0..n).combinations(k).flat_map(move |pivots| {
        // free positions: right of each pivot, excluding pivot columns
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| ((p + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let field = Arc::clone(&field);
        let combos = q.pow(free.len() as u32);
        (0..combos).map(move |mut idx| {
            let mut m = Matrix::zeros(&field, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
            }
            for &(r, c) in &free {
                m.set(r, c, (idx % q) as u32);
                idx /= q;
            }
            Subspace::from_canonical(m)
        })
    }))
}
