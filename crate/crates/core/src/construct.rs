//! Orbital constructions of optimum distance flag codes.
//!
//! Two families are built here:
//!
//! * spread type, on `GF(q)^n` with `n = ks`: flags of type
//!   `(1, ..., k, n-k, ..., n-1)` whose `k`-dimensional subspaces form the
//!   Desarguesian spread obtained by field reduction of the lines of
//!   `GF(q^k)^s`. Orbits of subgroups of `⟨ψ(M_s)⟩`, and unions of them,
//!   reach the spread size `(q^n - 1)/(q^k - 1)`.
//! * full type, on `GF(q)^{2k+1}`: orbits of `G = ⟨diag(I_k, M_{k+1})⟩`,
//!   completed by two extra flags to the maximum size `q^{k+1} + 1`.
//!
//! Intermediate subspaces of every generator flag are filled in
//! canonically; see [`complete_flag`].

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{make_field, FiniteField};
use crate::flag::{
    critical_indices, is_odfc_by_characterization, is_odfc_by_definition, orbit_flag, orbital_report, projected_code,
    union_flag_codes, Flag, FlagCode, FlagOrbit, TypeVector,
};
use crate::linalg::Matrix;
use crate::singer::{embedded_singer_group, orbit_subspace, singer_cycle, CyclicMatrixGroup, StructureMaps};
use crate::subspace::{enumerate_grassmannian, has_max_distance, is_spread, Subspace, SubspaceCode};

/// Codes up to this size are also checked pair by pair.
const BRUTE_FORCE_LIMIT: usize = 64;

/// Fills in the dimensions of `ty` around the given anchor subspaces.
///
/// Below the first anchor: spans of leading rows of its RREF basis.
/// Above an anchor: extend by the first vectors not yet contained, drawn
/// from the next anchor's basis, or from the standard basis after the last.
pub fn complete_flag(anchors: &[Subspace], ty: &TypeVector) -> Result<Flag> {
    let first = anchors
        .first()
        .ok_or_else(|| Error::BadType("no anchor subspaces".into()))?;
    let field = Arc::clone(first.field());
    let n = ty.ambient();
    let mut out = Vec::with_capacity(ty.len());
    for &t in ty.dims() {
        if let Some(a) = anchors.iter().find(|a| a.dim() == t) {
            out.push(a.clone());
            continue;
        }
        let below = anchors.iter().rfind(|a| a.dim() < t);
        let above = anchors.iter().find(|a| a.dim() > t);
        let s = match below {
            None => {
                let rows: Vec<usize> = (0..t).collect();
                Subspace::from_basis(&first.basis().select_rows(&rows))?
            }
            Some(start) => {
                let source: Vec<Vec<u32>> = match above {
                    Some(a) => a.basis().row_vectors().map(<[u32]>::to_vec).collect(),
                    None => (0..n)
                        .map(|i| {
                            let mut e = vec![0; n];
                            e[i] = 1;
                            e
                        })
                        .collect(),
                };
                let mut x = start.clone();
                for v in source {
                    if x.dim() == t {
                        break;
                    }
                    if !x.contains_vector(&v) {
                        let row = Matrix::from_vec(&field, 1, n, v)?;
                        x = x.sum(&Subspace::span(&row))?;
                    }
                }
                x
            }
        };
        out.push(s);
    }
    Flag::new(out)
}

/// ODFC status from the characterization, cross-checked pair by pair on small codes.
fn checked_odfc(code: &FlagCode) -> Result<bool> {
    let fast = is_odfc_by_characterization(code);
    if code.len() <= BRUTE_FORCE_LIMIT && fast != is_odfc_by_definition(code) {
        return Err(Error::InvariantViolated(
            "ODFC characterization disagrees with the definition".into(),
        ));
    }
    Ok(fast)
}

/// The spread `S`, the hyperplane code `H` and the group `⟨ψ(M_s)⟩` on `GF(q)^{ks}`.
#[derive(Clone, Debug)]
pub struct SpreadContext {
    pub field: Arc<FiniteField>,
    pub k: usize,
    pub s: usize,
    pub n: usize,
    pub maps: StructureMaps,
    /// `M_s`, a Singer cycle of `GL(s, q^k)`.
    pub m_s: Matrix,
    pub group: CyclicMatrixGroup,
    pub spread: SubspaceCode,
    pub hyperplanes: SubspaceCode,
}

impl SpreadContext {
    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// `(q^n - 1)/(q^k - 1)`.
    pub fn spread_size(&self) -> u64 {
        (self.group.order()) / (self.q().pow(self.k as u32) - 1)
    }

    pub fn type_vector(&self) -> TypeVector {
        TypeVector::full_admissible(self.k, self.n).expect("s >= 2")
    }

    /// 1-based positions of dimensions `k` and `n - k`.
    pub fn critical_positions(&self) -> (usize, usize) {
        let (a, b) = critical_indices(&self.type_vector());
        (a.expect("k <= n/2"), b.expect("n-k >= n/2"))
    }
}

pub fn build_spread_context(field: &Arc<FiniteField>, k: usize, s: usize) -> Result<SpreadContext> {
    if k == 0 || s < 2 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and s >= 2, got k={k}, s={s}"
        )));
    }
    let ext = make_field(field.characteristic(), k, Some(Arc::clone(field)))?;
    let maps = StructureMaps::new(&ext)?;
    let m_s = singer_cycle(&ext, s)?;
    let group = embedded_singer_group(&maps, s)?;
    let n = k * s;
    let reduce = |dim: usize| -> Result<SubspaceCode> {
        let images = enumerate_grassmannian(&ext, dim, s)?
            .map(|u| maps.field_reduction(&u))
            .collect::<Result<Vec<_>>>()?;
        SubspaceCode::new(images)
    };
    let spread = reduce(1)?;
    let hyperplanes = reduce(s - 1)?;
    let ctx = SpreadContext {
        field: Arc::clone(field),
        k,
        s,
        n,
        maps,
        m_s,
        group,
        spread,
        hyperplanes,
    };
    verify_spread_context(&ctx)?;
    Ok(ctx)
}

fn verify_spread_context(ctx: &SpreadContext) -> Result<()> {
    let size = ctx.spread_size() as usize;
    let fail = |what: &str| Err(Error::InvariantViolated(what.to_string()));
    if ctx.spread.len() != size || ctx.hyperplanes.len() != size {
        return fail("spread or hyperplane code has the wrong size");
    }
    if !is_spread(&ctx.spread) {
        return fail("field-reduced lines do not form a spread");
    }
    if !has_max_distance(&ctx.hyperplanes) {
        return fail("field-reduced hyperplanes lack maximum distance");
    }
    let stab = ctx.q().pow(ctx.k as u32) - 1;
    for (code, seed) in [
        (&ctx.spread, spread_seed(ctx)?),
        (&ctx.hyperplanes, hyperplane_seed(ctx)?),
    ] {
        let (orbit, st) = orbit_subspace(&ctx.group, &seed)?;
        if &orbit != code || st != stab {
            return fail("spread or hyperplane code is not a single Singer orbit with stabilizer q^k - 1");
        }
    }
    Ok(())
}

/// `S_1 = ϕ(⟨e_1⟩) = rowsp(I_k | 0)`.
pub fn spread_seed(ctx: &SpreadContext) -> Result<Subspace> {
    ctx.maps
        .field_reduction(&Subspace::standard(ctx.maps.ext(), ctx.s, &[0]))
}

/// `H_1 = ϕ(⟨e_1, ..., e_{s-1}⟩)`.
pub fn hyperplane_seed(ctx: &SpreadContext) -> Result<Subspace> {
    let idx: Vec<usize> = (0..ctx.s - 1).collect();
    ctx.maps
        .field_reduction(&Subspace::standard(ctx.maps.ext(), ctx.s, &idx))
}

/// `S · B` and the conjugate group `B^{-1} ⟨ψ(M_s)⟩ B`, of which it is an orbit.
pub fn conjugate_spread(ctx: &SpreadContext, b: &Matrix) -> Result<(SubspaceCode, CyclicMatrixGroup)> {
    if b.rows() != ctx.n {
        return Err(Error::DegreeMismatch {
            group: b.rows(),
            ambient: ctx.n,
        });
    }
    let b_inv = b.inverse()?;
    let moved = SubspaceCode::new(ctx.spread.iter().map(|s| s.act(b)).collect::<Result<Vec<_>>>()?)?;
    let gen = b_inv.mul(ctx.group.generator())?.mul(b)?;
    let group = CyclicMatrixGroup::new(gen, ctx.group.order())?;
    let (orbit, _) = orbit_subspace(&group, &spread_seed(ctx)?.act(b)?)?;
    if orbit != moved {
        return Err(Error::InvariantViolated(
            "conjugated spread is not an orbit of the conjugate group".into(),
        ));
    }
    Ok((moved, group))
}

/// The flag of type `(1, ..., k, n-k, ..., n-1)` through `S_1 ⊆ H_1`.
pub fn canonical_admissible_flag(ctx: &SpreadContext) -> Result<Flag> {
    complete_flag(&[spread_seed(ctx)?, hyperplane_seed(ctx)?], &ctx.type_vector())
}

fn check_divisor(ctx: &SpreadContext, t: u64) -> Result<()> {
    if t == 0 || !ctx.group.order().is_multiple_of(t) {
        return Err(Error::NotADivisor {
            t,
            order: ctx.group.order(),
        });
    }
    Ok(())
}

/// `(gcd(t, q^k - 1), gcd(t, q - 1))`.
fn gcd_pair(ctx: &SpreadContext, t: u64) -> (u64, u64) {
    let q = ctx.q();
    (gcd(t, q.pow(ctx.k as u32) - 1), gcd(t, q - 1))
}

/// Orbit of the canonical flag under the order-`t` subgroup `T`.
///
/// It has `t / gcd(t, q-1)` members and is an ODFC iff
/// `gcd(t, q^k - 1) = gcd(t, q - 1) != t`. With `require_odfc` a failing
/// condition is an error.
pub fn spread_type_orbit_odfc(ctx: &SpreadContext, t: u64, require_odfc: bool) -> Result<FlagOrbit> {
    check_divisor(ctx, t)?;
    let (gk, g1) = gcd_pair(ctx, t);
    let predicted = gk == g1 && g1 != t;
    if require_odfc && !predicted {
        return Err(Error::GcdConditionFailed(format!(
            "need gcd(t, q^k-1) = gcd(t, q-1) != t, got gcd({t}, {}) = {gk}, gcd({t}, {}) = {g1}",
            ctx.q().pow(ctx.k as u32) - 1,
            ctx.q() - 1
        )));
    }
    let group = ctx.group.subgroup_of_order(t)?;
    let orbit = orbit_flag(&group, &canonical_admissible_flag(ctx)?)?;
    if orbit.code.len() as u64 != t / g1 {
        return Err(Error::InvariantViolated(format!(
            "orbit has {} flags, expected t/gcd(t,q-1) = {}",
            orbit.code.len(),
            t / g1
        )));
    }
    let verdict = orbital_report(&orbit).is_odfc;
    if verdict != predicted || checked_odfc(&orbit.code)? != predicted {
        return Err(Error::InvariantViolated(
            "orbit ODFC status contradicts the gcd condition".into(),
        ));
    }
    Ok(orbit)
}

/// Number of `T`-orbits needed to reach the spread size.
pub fn orbits_needed(ctx: &SpreadContext, t: u64) -> u64 {
    let (_, g1) = gcd_pair(ctx, t);
    (ctx.group.order() as u128 * g1 as u128 / ((ctx.q().pow(ctx.k as u32) - 1) as u128 * t as u128)) as u64
}

fn require_gcd_equality(ctx: &SpreadContext, t: u64) -> Result<()> {
    check_divisor(ctx, t)?;
    let (gk, g1) = gcd_pair(ctx, t);
    if gk != g1 {
        return Err(Error::GcdConditionFailed(format!(
            "need gcd(t, q^k-1) = gcd(t, q-1), got {gk} and {g1} for t = {t}"
        )));
    }
    Ok(())
}

/// A union of `T`-orbits of size `(q^n - 1)/(q^k - 1)` whose dimension-`k`
/// projected code is the whole spread.
///
/// Representatives are `F · ψ(M_s)^c` for `c = 0, 1, ...`, keeping each one
/// whose dimension-`k` and dimension-`(n-k)` subspaces are not yet covered.
pub fn spread_type_max_odfc(ctx: &SpreadContext, t: u64) -> Result<FlagCode> {
    require_gcd_equality(ctx, t)?;
    let group = ctx.group.subgroup_of_order(t)?;
    let (a, b) = ctx.critical_positions();
    let target = ctx.spread_size() as usize;
    let mut covered_a: HashSet<Subspace> = HashSet::new();
    let mut covered_b: HashSet<Subspace> = HashSet::new();
    let mut orbits = Vec::new();
    let mut total = 0;
    let mut f = canonical_admissible_flag(ctx)?;
    let p = ctx.group.generator();
    for _ in 0..ctx.group.order() {
        if total >= target {
            break;
        }
        if !covered_a.contains(f.at(a)) && !covered_b.contains(f.at(b)) {
            let orbit = orbit_flag(&group, &f)?;
            for g in orbit.code.iter() {
                covered_a.insert(g.at(a).clone());
                covered_b.insert(g.at(b).clone());
            }
            total += orbit.code.len();
            orbits.push(orbit.code);
        }
        f = f.act(p)?;
    }
    if orbits.len() as u64 != orbits_needed(ctx, t) {
        return Err(Error::InvariantViolated(format!(
            "used {} orbits, expected {}",
            orbits.len(),
            orbits_needed(ctx, t)
        )));
    }
    let code = union_flag_codes(&orbits, true)?;
    if code.len() != target
        || projected_code(&code, a)? != ctx.spread
        || !projected_code(&code, b)?.iter().all(|h| ctx.hyperplanes.contains(h))
        || !checked_odfc(&code)?
    {
        return Err(Error::InvariantViolated(
            "union of orbits is not a maximum ODFC on the spread".into(),
        ));
    }
    Ok(code)
}

/// One row of an orbit-size table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub t: u64,
    pub orbit_size: u64,
    pub m: u64,
}

/// `(t, t/gcd(t,q-1), m)`, with the orbit materialized to confirm its size.
pub fn table_row(ctx: &SpreadContext, t: u64) -> Result<TableRow> {
    require_gcd_equality(ctx, t)?;
    let orbit = spread_type_orbit_odfc(ctx, t, false)?;
    Ok(TableRow {
        t,
        orbit_size: orbit.code.len() as u64,
        m: orbits_needed(ctx, t),
    })
}

/// The group `G = ⟨diag(I_k, M_{k+1})⟩ ≤ GL(2k+1, q)` of order `q^{k+1} - 1`.
#[derive(Clone, Debug)]
pub struct FullTypeContext {
    pub field: Arc<FiniteField>,
    pub k: usize,
    pub n: usize,
    pub m_k1: Matrix,
    pub group: CyclicMatrixGroup,
}

pub fn build_full_type_context(field: &Arc<FiniteField>, k: usize) -> Result<FullTypeContext> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let m_k1 = singer_cycle(field, k + 1)?;
    let g = Matrix::block_diag(field, &[&Matrix::identity(field, k), &m_k1])?;
    let order = field.order().pow(k as u32 + 1) - 1;
    Ok(FullTypeContext {
        field: Arc::clone(field),
        k,
        n: 2 * k + 1,
        m_k1,
        group: CyclicMatrixGroup::new(g, order)?,
    })
}

/// Generator data `U = (U1 | U2)` and the added row `(v1 | v2)` of `V`.
#[derive(Clone, Debug)]
pub struct FullTypeParams {
    pub u1: Matrix,
    pub u2: Matrix,
    pub v1: Vec<u32>,
    pub v2: Vec<u32>,
}

impl FullTypeParams {
    /// `U1 = I_k`, `U2` the last `k` rows of `I_{k+1}`, `v1 = 0`, `v2 = e_1`.
    pub fn default_for(ctx: &FullTypeContext) -> FullTypeParams {
        let k = ctx.k;
        let rows: Vec<usize> = (1..=k).collect();
        let mut v2 = vec![0; k + 1];
        v2[0] = 1;
        FullTypeParams {
            u1: Matrix::identity(&ctx.field, k),
            u2: Matrix::identity(&ctx.field, k + 1).select_rows(&rows),
            v1: vec![0; k],
            v2,
        }
    }

    fn check(&self, k: usize) -> Result<()> {
        if self.u1.shape() != (k, k) || self.u2.shape() != (k, k + 1) || self.v1.len() != k || self.v2.len() != k + 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected U1 {k}x{k}, U2 {k}x{}, v1 of length {k}, v2 of length {}",
                k + 1,
                k + 1
            )));
        }
        if self.u1.rank() < k || self.u2.rank() < k {
            return Err(Error::RankDeficient(format!(
                "rk(U1) = {}, rk(U2) = {}, both must be {k}",
                self.u1.rank(),
                self.u2.rank()
            )));
        }
        Ok(())
    }

    fn row(&self, left: &[u32], right: &[u32]) -> Result<Matrix> {
        let f = self.u1.field();
        Matrix::from_vec(f, 1, left.len(), left.to_vec())?.hstack(&Matrix::from_vec(f, 1, right.len(), right.to_vec())?)
    }

    /// `V = (U1 U2; v1 v2)`.
    pub fn v_matrix(&self) -> Result<Matrix> {
        self.u1.hstack(&self.u2)?.vstack(&self.row(&self.v1, &self.v2)?)
    }

    /// `V2 = (U2; v2)`.
    pub fn v2_block(&self) -> Result<Matrix> {
        let f = self.u1.field();
        self.u2.vstack(&Matrix::from_vec(f, 1, self.v2.len(), self.v2.clone())?)
    }
}

/// The four extra subspaces `U', U'', V', V''`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub u_prime: Subspace,
    pub u_second: Subspace,
    pub v_prime: Subspace,
    pub v_second: Subspace,
}

/// `U' = rowsp(U1|0)`, `U'' = rowsp(0|U2)`, `V' = rowsp(U1 0; v1 v2)`,
/// `V'' = rowsp(0 U2; v1 v2)`.
pub fn completion_subspaces(ctx: &FullTypeContext, p: &FullTypeParams) -> Result<Completion> {
    p.check(ctx.k)?;
    let k = ctx.k;
    let f = &ctx.field;
    let top_prime = p.u1.hstack(&Matrix::zeros(f, k, k + 1))?;
    let top_second = Matrix::zeros(f, k, k).hstack(&p.u2)?;
    let last = p.row(&p.v1, &p.v2)?;
    let span_full = |m: Matrix| -> Result<Subspace> {
        let rows = m.rows();
        let s = Subspace::span(&m);
        if s.dim() != rows {
            return Err(Error::NotExtending);
        }
        Ok(s)
    };
    Ok(Completion {
        u_prime: Subspace::from_basis(&top_prime)?,
        u_second: Subspace::from_basis(&top_second)?,
        v_prime: span_full(top_prime.vstack(&last)?)?,
        v_second: span_full(top_second.vstack(&last)?)?,
    })
}

/// Full flag with `F_k = rowsp(U1|U2)` and `F_{k+1} = rowsp(V)`.
pub fn full_type_generator_flag(ctx: &FullTypeContext, p: &FullTypeParams) -> Result<Flag> {
    p.check(ctx.k)?;
    let u = Subspace::from_basis(&p.u1.hstack(&p.u2)?)?;
    let v = Subspace::span(&p.v_matrix()?);
    if v.dim() != ctx.k + 1 {
        return Err(Error::NotExtending);
    }
    complete_flag(&[u, v], &TypeVector::full(ctx.n)?)
}

/// `Orb_G(F)`, an ODFC of size `q^{k+1} - 1` iff `U1` and `V2` are invertible.
pub fn full_type_orbit_odfc(ctx: &FullTypeContext, p: &FullTypeParams) -> Result<FlagOrbit> {
    let f = full_type_generator_flag(ctx, p)?;
    let orbit = orbit_flag(&ctx.group, &f)?;
    let predicted = p.v2_block()?.rank() == ctx.k + 1;
    if checked_odfc(&orbit.code)? != predicted || orbital_report(&orbit).is_odfc != predicted {
        return Err(Error::InvariantViolated(
            "orbit ODFC status contradicts the invertibility of U1 and V2".into(),
        ));
    }
    if predicted && orbit.stabilizer_order != 1 {
        return Err(Error::InvariantViolated("expected a trivial flag stabilizer".into()));
    }
    Ok(orbit)
}

/// `Orb_G(F) ∪ {F', F''}` with `v1 = 0`: an ODFC of size `q^{k+1} + 1`.
/// `p.v1` is ignored.
pub fn full_type_max_odfc(ctx: &FullTypeContext, p: &FullTypeParams) -> Result<FlagCode> {
    let p = FullTypeParams {
        v1: vec![0; ctx.k],
        ..p.clone()
    };
    p.check(ctx.k)?;
    if p.v2_block()?.rank() != ctx.k + 1 {
        return Err(Error::NotExtending);
    }
    let code = full_type_union(ctx, &p)?;
    let size = ctx.field.order().pow(ctx.k as u32 + 1) + 1;
    if code.len() as u64 != size || !checked_odfc(&code)? {
        return Err(Error::InvariantViolated(format!(
            "completed code is not an ODFC of size {size}"
        )));
    }
    Ok(code)
}

fn full_type_union(ctx: &FullTypeContext, p: &FullTypeParams) -> Result<FlagCode> {
    let orbit = orbit_flag(&ctx.group, &full_type_generator_flag(ctx, p)?)?;
    let c = completion_subspaces(ctx, p)?;
    let ty = TypeVector::full(ctx.n)?;
    let extra = FlagCode::new([
        complete_flag(&[c.u_prime, c.v_prime], &ty)?,
        complete_flag(&[c.u_second, c.v_second], &ty)?,
    ])?;
    union_flag_codes(&[orbit.code, extra], false)
}

/// The dimension-`k` and dimension-`(k+1)` lists `Orb(U) + [U', U'']` and
/// `Orb(V) + [V', V'']` for arbitrary `v1`, without deduplication.
#[doc(hidden)]
pub fn full_type_completion_lists(ctx: &FullTypeContext, p: &FullTypeParams) -> Result<(Vec<Subspace>, Vec<Subspace>)> {
    let f = full_type_generator_flag(ctx, p)?;
    let c = completion_subspaces(ctx, p)?;
    let (ou, _) = orbit_subspace(&ctx.group, f.at(ctx.k))?;
    let (ov, _) = orbit_subspace(&ctx.group, f.at(ctx.k + 1))?;
    let mut us: Vec<Subspace> = ou.iter().cloned().collect();
    us.extend([c.u_prime, c.u_second]);
    let mut vs: Vec<Subspace> = ov.iter().cloned().collect();
    vs.extend([c.v_prime, c.v_second]);
    Ok((us, vs))
}
