//! Flags, flag codes and the optimum distance criteria.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use itertools::Itertools;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linalg::Matrix;
use crate::singer::CyclicMatrixGroup;
use crate::subspace::{has_max_distance, max_distance_bound, subspace_distance, Subspace, SubspaceCode};

/// Strictly increasing dimensions `0 < t_1 < ... < t_r < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TypeVector {
    dims: Vec<usize>,
    n: usize,
}

impl TypeVector {
    pub fn new(dims: Vec<usize>, n: usize) -> Result<TypeVector> {
        if dims.is_empty() {
            return Err(Error::BadType("empty type vector".into()));
        }
        if dims[0] == 0 || *dims.last().unwrap() >= n {
            return Err(Error::BadType(format!(
                "dimensions {dims:?} must lie strictly between 0 and {n}"
            )));
        }
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadType(format!(
                "dimensions {dims:?} are not strictly increasing"
            )));
        }
        Ok(TypeVector { dims, n })
    }

    /// `(1, ..., n-1)`.
    pub fn full(n: usize) -> Result<TypeVector> {
        TypeVector::new((1..n).collect(), n)
    }

    /// `(1, ..., k, n-k, ..., n-1)`, merged when `2k >= n`.
    pub fn full_admissible(k: usize, n: usize) -> Result<TypeVector> {
        let mut dims: Vec<usize> = (1..=k).chain(n.saturating_sub(k)..n).collect();
        dims.sort_unstable();
        dims.dedup();
        TypeVector::new(dims, n)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dims.len() + 1 == self.n
    }

    /// Dimension at 1-based position `i`.
    pub fn dim_at(&self, i: usize) -> usize {
        self.dims[i - 1]
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.dims.iter().join(","))
    }
}

/// 1-based `a = max{i : 2t_i <= n}` and `b = min{i : 2t_i >= n}`.
pub fn critical_indices(ty: &TypeVector) -> (Option<usize>, Option<usize>) {
    let n = ty.n;
    let a = ty.dims.iter().rposition(|&t| 2 * t <= n).map(|i| i + 1);
    let b = ty.dims.iter().position(|&t| 2 * t >= n).map(|i| i + 1);
    (a, b)
}

/// The existing critical indices, deduplicated.
fn critical_positions(ty: &TypeVector) -> Vec<usize> {
    let (a, b) = critical_indices(ty);
    let mut out: Vec<usize> = a.into_iter().chain(b).collect();
    out.dedup();
    out
}

/// `2 (Σ_{2t_i <= n} t_i + Σ_{2t_i > n} (n - t_i))`.
pub fn flag_distance_bound(ty: &TypeVector) -> usize {
    ty.dims
        .iter()
        .map(|&t| max_distance_bound(ty.n, t).expect("type dims lie in 1..n"))
        .sum()
}

/// A strictly nested chain of subspaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    subspaces: Vec<Subspace>,
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.subspaces).finish()
    }
}

pub fn make_flag(subspaces: Vec<Subspace>) -> Result<Flag> {
    Flag::new(subspaces)
}

impl Flag {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Flag> {
        let first = subspaces
            .first()
            .ok_or_else(|| Error::BadType("a flag needs at least one subspace".into()))?;
        let n = first.ambient();
        for s in &subspaces {
            if s.ambient() != n {
                return Err(Error::AmbientMismatch(n, s.ambient()));
            }
        }
        TypeVector::new(subspaces.iter().map(Subspace::dim).collect(), n)?;
        for (i, (u, v)) in subspaces.iter().tuple_windows().enumerate() {
            if !u.is_subspace_of(v)? {
                return Err(Error::NotNested(i + 1));
            }
        }
        Ok(Flag { subspaces })
    }

    pub fn type_vector(&self) -> TypeVector {
        TypeVector {
            dims: self.subspaces.iter().map(Subspace::dim).collect(),
            n: self.ambient(),
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.subspaces[0].field()
    }

    pub fn ambient(&self) -> usize {
        self.subspaces[0].ambient()
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// Subspace at 1-based position `i`.
    pub fn at(&self, i: usize) -> &Subspace {
        &self.subspaces[i - 1]
    }

    /// Componentwise right action `F · A`.
    pub fn act(&self, a: &Matrix) -> Result<Flag> {
        let subspaces = self.subspaces.iter().map(|s| s.act(a)).collect::<Result<_>>()?;
        Ok(Flag { subspaces })
    }
}

pub fn flag_distance(f: &Flag, g: &Flag) -> Result<usize> {
    if f.type_vector() != g.type_vector() {
        return Err(Error::TypeMismatch);
    }
    f.subspaces
        .iter()
        .zip(&g.subspaces)
        .map(|(u, v)| subspace_distance(u, v))
        .sum()
}

/// A nonempty set of distinct flags of one type.
#[derive(Clone, Debug)]
pub struct FlagCode {
    ty: TypeVector,
    members: IndexSet<Flag>,
}

impl PartialEq for FlagCode {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
            && self.members.len() == other.members.len()
            && self.members.iter().all(|f| other.members.contains(f))
    }
}

impl Eq for FlagCode {}

impl FlagCode {
    pub fn new<I: IntoIterator<Item = Flag>>(flags: I) -> Result<FlagCode> {
        let mut it = flags.into_iter();
        let first = it.next().ok_or(Error::InvalidCode)?;
        let ty = first.type_vector();
        let mut members = IndexSet::new();
        members.insert(first);
        for f in it {
            if f.type_vector() != ty {
                return Err(Error::TypeMismatch);
            }
            members.insert(f);
        }
        Ok(FlagCode { ty, members })
    }

    pub fn type_vector(&self) -> &TypeVector {
        &self.ty
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.members[0].field()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> indexmap::set::Iter<'_, Flag> {
        self.members.iter()
    }

    pub fn contains(&self, f: &Flag) -> bool {
        self.members.contains(f)
    }
}

/// The set of subspaces at 1-based position `i`.
pub fn projected_code(c: &FlagCode, i: usize) -> Result<SubspaceCode> {
    if i == 0 || i > c.ty.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: c.ty.len(),
        });
    }
    SubspaceCode::new(c.iter().map(|f| f.at(i).clone()))
}

/// `|C_i| = |C|` at every position.
pub fn is_disjoint(c: &FlagCode) -> bool {
    (1..=c.ty.len()).all(|i| projected_code(c, i).map(|p| p.len()) == Ok(c.len()))
}

/// Minimum pairwise flag distance by exhaustive comparison; 0 for a singleton.
pub fn flag_code_distance(c: &FlagCode) -> usize {
    c.members
        .iter()
        .tuple_combinations()
        .map(|(f, g)| flag_distance(f, g).expect("members share a type"))
        .min()
        .unwrap_or(0)
}

/// Whether every pair of flags is at distance `flag_distance_bound`.
pub fn is_odfc_by_definition(c: &FlagCode) -> bool {
    let bound = flag_distance_bound(&c.ty);
    c.len() >= 2
        && c.members
            .iter()
            .tuple_combinations()
            .all(|(f, g)| flag_distance(f, g).expect("members share a type") == bound)
}

/// Whether the projected codes at the critical indices have maximum
/// distance and cardinality `|C|`.
pub fn is_odfc_by_characterization(c: &FlagCode) -> bool {
    critical_positions(&c.ty).into_iter().all(|i| {
        let p = projected_code(c, i).expect("critical index in range");
        p.len() == c.len() && has_max_distance(&p)
    })
}

/// An orbit flag code with its stabilizer data.
#[derive(Clone, Debug)]
pub struct FlagOrbit {
    pub code: FlagCode,
    pub stabilizer_order: u64,
    /// `|Stab(F_i)|` for each position.
    pub component_stabilizer_orders: Vec<u64>,
}

/// Orbit of `f` under `g`. The flag stabilizer is checked against the
/// meet of the component stabilizers, which in a cyclic group has order
/// `gcd_i |Stab(F_i)|`.
pub fn orbit_flag(g: &CyclicMatrixGroup, f: &Flag) -> Result<FlagOrbit> {
    if g.degree() != f.ambient() {
        return Err(Error::DegreeMismatch {
            group: g.degree(),
            ambient: f.ambient(),
        });
    }
    let r = f.len();
    let mut periods: Vec<Option<u64>> = vec![None; r];
    let mut members = vec![f.clone()];
    let mut x = f.act(g.generator())?;
    let mut step = 1u64;
    loop {
        for (i, p) in periods.iter_mut().enumerate() {
            if p.is_none() && x.subspaces[i] == f.subspaces[i] {
                *p = Some(step);
            }
        }
        if &x == f {
            break;
        }
        let next = x.act(g.generator())?;
        members.push(x);
        x = next;
        step += 1;
    }
    let size = members.len() as u64;
    let component_stabilizer_orders: Vec<u64> = periods
        .into_iter()
        .map(|p| g.order() / p.expect("each component returns by the orbit length"))
        .collect();
    let stabilizer_order = g.order() / size;
    let meet = component_stabilizer_orders.iter().fold(0, |acc, &s| arith::gcd(acc, s));
    if !g.order().is_multiple_of(size) || meet != stabilizer_order {
        return Err(Error::InvariantViolated(format!(
            "flag stabilizer order {stabilizer_order} differs from the component meet {meet}"
        )));
    }
    Ok(FlagOrbit {
        code: FlagCode::new(members)?,
        stabilizer_order,
        component_stabilizer_orders,
    })
}

/// Conditions of the orbital ODFC characterization for `Orb_G(F)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrbitalReport {
    pub index_a: Option<usize>,
    pub index_b: Option<usize>,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub stabilizer_order_a: Option<u64>,
    pub stabilizer_order_b: Option<u64>,
    pub max_distance_a: Option<bool>,
    pub max_distance_b: Option<bool>,
    /// Max distance at a and b, `Stab(F_a) = Stab(F_b) ⊆ Stab(F_i)` for all i.
    pub condition_ii: bool,
    /// Max distance at a and b, `Stab(F_a) = Stab(F_b) ⊆ Stab(F)`.
    pub condition_iii: bool,
    /// Max distance at a and b, `|Stab(F_a)| = |Stab(F_b)| <= |Stab(F)|`.
    pub condition_iv: bool,
    pub is_odfc: bool,
}

pub fn check_orbital_odfc_conditions(g: &CyclicMatrixGroup, f: &Flag) -> Result<OrbitalReport> {
    let orbit = orbit_flag(g, f)?;
    Ok(orbital_report(&orbit))
}

/// Subgroups of a cyclic group: `H ⊆ K` iff `|H|` divides `|K|`.
pub fn orbital_report(orbit: &FlagOrbit) -> OrbitalReport {
    let ty = orbit.code.type_vector();
    let (a, b) = critical_indices(ty);
    let stab = |i: Option<usize>| i.map(|i| orbit.component_stabilizer_orders[i - 1]);
    let max_at = |i: Option<usize>| i.map(|i| has_max_distance(&projected_code(&orbit.code, i).expect("in range")));
    let (sa, sb) = (stab(a), stab(b));
    let (ma, mb) = (max_at(a), max_at(b));
    let max_ok = ma.unwrap_or(true) && mb.unwrap_or(true);
    // the stabilizer at whichever critical index exists
    let s_crit = sa.or(sb).expect("at least one critical index exists");
    let equal = sa.unwrap_or(s_crit) == sb.unwrap_or(s_crit);
    let condition_ii = max_ok && equal && orbit.component_stabilizer_orders.iter().all(|&s| s % s_crit == 0);
    let condition_iii = max_ok && equal && orbit.stabilizer_order.is_multiple_of(s_crit);
    let condition_iv = max_ok && equal && s_crit <= orbit.stabilizer_order;
    OrbitalReport {
        index_a: a,
        index_b: b,
        orbit_size: orbit.code.len() as u64,
        stabilizer_order: orbit.stabilizer_order,
        stabilizer_order_a: sa,
        stabilizer_order_b: sb,
        max_distance_a: ma,
        max_distance_b: mb,
        condition_ii,
        condition_iii,
        condition_iv,
        is_odfc: condition_iv,
    }
}

/// Deduplicated union. With `assert_orbit_disjoint` the caller claims the
/// inputs are disjoint orbit codes with distinct critical-index orbits, and
/// the result must then have `Σ |codes|` members.
pub fn union_flag_codes(codes: &[FlagCode], assert_orbit_disjoint: bool) -> Result<FlagCode> {
    let first = codes.first().ok_or(Error::InvalidCode)?;
    if codes.iter().any(|c| c.ty != first.ty) {
        return Err(Error::TypeMismatch);
    }
    let union = FlagCode::new(codes.iter().flat_map(|c| c.iter().cloned()))?;
    let expected: usize = codes.iter().map(FlagCode::len).sum();
    if assert_orbit_disjoint && union.len() != expected {
        return Err(Error::AdditivityViolated {
            expected,
            actual: union.len(),
        });
    }
    Ok(union)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::singer::singer_group;
    use crate::subspace::enumerate_grassmannian;
    use proptest::prelude::*;

    fn gf2() -> Arc<FiniteField> {
        make_field(2, 1, None).unwrap()
    }

    fn std_flag(f: &Arc<FiniteField>, n: usize, chain: &[&[usize]]) -> Flag {
        make_flag(chain.iter().map(|idx| Subspace::standard(f, n, idx)).collect()).unwrap()
    }

    /// The three-flag type-(2,3) code on GF(2)^6 with C_2 = {<e1,e2,e3>, <e4,e5,e6>}.
    fn example_code() -> FlagCode {
        let f = gf2();
        FlagCode::new([
            std_flag(&f, 6, &[&[0, 1], &[0, 1, 2]]),
            std_flag(&f, 6, &[&[0, 2], &[0, 1, 2]]),
            std_flag(&f, 6, &[&[3, 4], &[3, 4, 5]]),
        ])
        .unwrap()
    }

    #[test]
    fn make_flag_validation() {
        let f = gf2();
        std_flag(&f, 3, &[&[0], &[0, 1]]);
        let bad = make_flag(vec![
            Subspace::standard(&f, 3, &[0]),
            Subspace::standard(&f, 3, &[1, 2]),
        ]);
        assert_eq!(bad.unwrap_err(), Error::NotNested(1));
        let bad = make_flag(vec![
            Subspace::standard(&f, 3, &[0, 1]),
            Subspace::standard(&f, 3, &[0]),
        ]);
        assert!(matches!(bad, Err(Error::BadType(_))));
        std_flag(&f, 6, &[&[0, 1], &[0, 1, 2]]);
    }

    #[test]
    fn type_vectors_and_bounds() {
        assert_eq!(flag_distance_bound(&TypeVector::full(5).unwrap()), 12);
        assert_eq!(flag_distance_bound(&TypeVector::full(6).unwrap()), 18);
        let adm = TypeVector::full_admissible(3, 9).unwrap();
        assert_eq!(adm.dims(), &[1, 2, 3, 6, 7, 8]);
        assert_eq!(flag_distance_bound(&adm), 24);
        assert_eq!(TypeVector::full_admissible(3, 6).unwrap(), TypeVector::full(6).unwrap());
        assert_eq!(critical_indices(&TypeVector::full(5).unwrap()), (Some(2), Some(3)));
        assert_eq!(critical_indices(&TypeVector::full(6).unwrap()), (Some(3), Some(3)));
        assert_eq!(
            critical_indices(&TypeVector::new(vec![4, 5], 6).unwrap()),
            (None, Some(1))
        );
        assert_eq!(
            critical_indices(&TypeVector::new(vec![1, 2], 6).unwrap()),
            (Some(2), None)
        );
        assert!(TypeVector::new(vec![2, 2], 4).is_err());
        assert!(TypeVector::new(vec![1, 4], 4).is_err());
    }

    #[test]
    fn example_code_properties() {
        let c = example_code();
        let flags: Vec<&Flag> = c.iter().collect();
        assert_eq!(flag_distance(flags[0], flags[0]).unwrap(), 0);
        assert_eq!(flag_distance(flags[0], flags[1]).unwrap(), 2);
        assert_eq!(flag_distance(flags[0], flags[2]).unwrap(), 10);
        assert_eq!(projected_code(&c, 1).unwrap().len(), 3);
        assert_eq!(projected_code(&c, 2).unwrap().len(), 2);
        assert!(matches!(
            projected_code(&c, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        ));
        assert!(!is_disjoint(&c));
        assert!(!is_odfc_by_definition(&c));
        assert!(!is_odfc_by_characterization(&c));
        let other = std_flag(&gf2(), 6, &[&[0]]);
        assert_eq!(flag_distance(flags[0], &other).unwrap_err(), Error::TypeMismatch);
    }

    #[test]
    fn singletons_and_unions() {
        let c = FlagCode::new([std_flag(&gf2(), 3, &[&[0], &[0, 1]])]).unwrap();
        assert!(is_disjoint(&c));
        assert!(!is_odfc_by_definition(&c));
        assert!(!is_odfc_by_characterization(&c));
        assert_eq!(projected_code(&c, 2).unwrap().len(), 1);
        assert_eq!(union_flag_codes(std::slice::from_ref(&c), true).unwrap(), c);
        assert_eq!(union_flag_codes(&[c.clone(), c.clone()], false).unwrap().len(), 1);
        assert!(matches!(
            union_flag_codes(&[c.clone(), c.clone()], true),
            Err(Error::AdditivityViolated { expected: 2, actual: 1 })
        ));
        assert_eq!(
            union_flag_codes(&[c, example_code()], false).unwrap_err(),
            Error::TypeMismatch
        );
    }

    /// All full flags of GF(2)^3, built by extending each point by each line through it.
    fn full_flags_gf2_3() -> Vec<Flag> {
        let f = gf2();
        let points: Vec<Subspace> = enumerate_grassmannian(&f, 1, 3).unwrap().collect();
        let lines: Vec<Subspace> = enumerate_grassmannian(&f, 2, 3).unwrap().collect();
        points
            .iter()
            .flat_map(|p| {
                lines
                    .iter()
                    .filter_map(move |l| make_flag(vec![p.clone(), l.clone()]).ok())
            })
            .collect()
    }

    #[test]
    fn flag_distance_is_a_metric_on_full_flags_gf2_3() {
        let flags = full_flags_gf2_3();
        assert_eq!(flags.len(), 21);
        for x in &flags {
            for y in &flags {
                let d = flag_distance(x, y).unwrap();
                assert_eq!(d, flag_distance(y, x).unwrap());
                assert_eq!(d == 0, x == y);
                for z in &flags {
                    assert!(flag_distance(x, z).unwrap() <= d + flag_distance(y, z).unwrap());
                }
            }
        }
    }

    #[test]
    fn singer_orbit_of_full_flag_gf2_3() {
        // Singer group order 7 is prime and acts transitively on points and lines.
        let f = gf2();
        let g = singer_group(&f, 3).unwrap();
        let flag = std_flag(&f, 3, &[&[0], &[0, 1]]);
        let orbit = orbit_flag(&g, &flag).unwrap();
        assert_eq!(orbit.code.len(), 7);
        assert_eq!(orbit.stabilizer_order, 1);
        assert_eq!(orbit.component_stabilizer_orders, vec![1, 1]);
        let report = orbital_report(&orbit);
        assert_eq!(report.is_odfc, is_odfc_by_definition(&orbit.code));
        assert!(report.is_odfc);
        let triv = orbit_flag(&CyclicMatrixGroup::trivial(&f, 3), &flag).unwrap();
        assert_eq!((triv.code.len(), triv.stabilizer_order), (1, 1));
        assert!(!orbital_report(&triv).is_odfc);
    }

    fn arb_flag_code() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0usize..315, 2..6)
    }

    /// All full flags of GF(2)^4 of type (1,2,3).
    fn full_flags_gf2_4() -> Vec<Flag> {
        let f = gf2();
        let d: Vec<Vec<Subspace>> = (1..4)
            .map(|k| enumerate_grassmannian(&f, k, 4).unwrap().collect())
            .collect();
        let mut out = Vec::new();
        for p in &d[0] {
            for l in &d[1] {
                if !p.is_subspace_of(l).unwrap() {
                    continue;
                }
                for h in &d[2] {
                    if let Ok(fl) = make_flag(vec![p.clone(), l.clone(), h.clone()]) {
                        out.push(fl);
                    }
                }
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn characterization_matches_definition(idx in arb_flag_code()) {
            thread_local! { static FLAGS: Vec<Flag> = full_flags_gf2_4(); }
            let code = FLAGS.with(|fl| {
                assert_eq!(fl.len(), 315);
                FlagCode::new(idx.iter().map(|&i| fl[i].clone())).unwrap()
            });
            prop_assert_eq!(is_odfc_by_definition(&code), is_odfc_by_characterization(&code));
            prop_assert!(flag_code_distance(&code) <= flag_distance_bound(code.type_vector()));
        }

        #[test]
        fn max_distance_propagates(idx in arb_flag_code()) {
            // If C_i has max distance with 2t_i <= n, pairs differing at i are at max distance for j <= i.
            thread_local! { static FLAGS: Vec<Flag> = full_flags_gf2_4(); }
            let code = FLAGS.with(|fl| FlagCode::new(idx.iter().map(|&i| fl[i].clone())).unwrap());
            let ty = code.type_vector().clone();
            for i in 1..=ty.len() {
                let ci = projected_code(&code, i).unwrap();
                if ci.len() < 2 || !has_max_distance(&ci) {
                    continue;
                }
                let t = ty.dim_at(i);
                for (x, y) in code.iter().tuple_combinations() {
                    if x.at(i) == y.at(i) {
                        continue;
                    }
                    let range: Vec<usize> = if 2 * t <= 4 { (1..=i).collect() } else { (i..=ty.len()).collect() };
                    for j in range {
                        prop_assert_eq!(
                            subspace_distance(x.at(j), y.at(j)).unwrap(),
                            max_distance_bound(4, ty.dim_at(j)).unwrap()
                        );
                    }
                }
            }
        }

        #[test]
        fn orbital_report_matches_definition(fi in 0usize..315, t_idx in 0usize..4) {
            let f = gf2();
            let g = singer_group(&f, 4).unwrap();
            let t = [1u64, 3, 5, 15][t_idx];
            let h = g.subgroup_of_order(t).unwrap();
            let flag = full_flags_gf2_4()[fi].clone();
            let orbit = orbit_flag(&h, &flag).unwrap();
            let report = orbital_report(&orbit);
            prop_assert_eq!(report.is_odfc, is_odfc_by_definition(&orbit.code));
            prop_assert_eq!(report.condition_ii, report.condition_iv);
            prop_assert_eq!(report.condition_iii, report.condition_iv);
            prop_assert_eq!(orbit.code.len() as u64 * orbit.stabilizer_order, t);
            // stabilizer inclusion towards the critical indices
            if report.max_distance_a == Some(true) && report.max_distance_b == Some(true) {
                let (a, b) = (report.index_a.unwrap(), report.index_b.unwrap());
                for (i, &s) in orbit.component_stabilizer_orders.iter().enumerate() {
                    let anchor = if i < a { orbit.component_stabilizer_orders[a - 1] } else { orbit.component_stabilizer_orders[b - 1] };
                    prop_assert_eq!(anchor % s, 0);
                }
            }
        }
    }
}
