//! Exact arrangement counts from plane trees, generic over the count type.
//! Overflow is an error rather than a wrap.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::ops::Div;

use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arrangement::{for_each_uncolored, reduced_colored_arrangements, FreeArrangement};
use crate::error::{Error, Result};
use crate::plane_tree::{plane_trees, PlaneTreeClass, RootedPlaneTree};
use crate::ring::Params;

pub trait CountScalar:
    Clone + Ord + Debug + Display + Zero + One + CheckedAdd + CheckedMul + Div<Output = Self> + FromPrimitive + ToPrimitive
{
}

impl<T> CountScalar for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Zero
        + One
        + CheckedAdd
        + CheckedMul
        + Div<Output = T>
        + FromPrimitive
        + ToPrimitive
{
}

fn lift<T: CountScalar>(x: u64) -> Result<T> {
    T::from_u64(x).ok_or(Error::Overflow)
}

fn mul<T: CountScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn add<T: CountScalar>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// `C(a, b)`, exact. Each partial product `C(a-b+t, t)` is an integer.
pub fn binomial<T: CountScalar>(a: u64, b: u64) -> Result<T> {
    if b > a {
        return Ok(T::zero());
    }
    let b = b.min(a - b);
    let mut acc = T::one();
    for t in 1..=b {
        acc = mul(&acc, &lift(a - b + t)?)? / lift(t)?;
    }
    Ok(acc)
}

/// `C(d + |c(r)| - 1, d) · prod over v != r of C(d + |c(v)|, d)`.
pub fn rooted_count<T: CountScalar>(tree: &RootedPlaneTree, d: u32) -> Result<T> {
    let d = d as u64;
    let r = tree.root();
    let root_kids = tree.children(r).len() as u64;
    let mut acc: T = binomial(d + root_kids - 1, d)?;
    for v in (0..tree.vertex_count()).filter(|&v| v != r) {
        acc = mul(&acc, &binomial(d + tree.children(v).len() as u64, d)?)?;
    }
    Ok(acc)
}

/// The rooted count at every vertex; errors if two roots disagree.
pub fn tree_count<T: CountScalar>(tree: &RootedPlaneTree, d: u32) -> Result<T> {
    let first: T = rooted_count(tree, d)?;
    for v in 0..tree.vertex_count() {
        let other: T = rooted_count(&tree.reroot(v), d)?;
        if other != first {
            return Err(Error::Invariant(format!(
                "root {v} gives {other}, root {} gives {first}",
                tree.root()
            )));
        }
    }
    Ok(first)
}

/// Per plane-tree class numbers. `arrangements` is `P·N_T / |Aut T|`, the
/// number of uncoloured reduced arrangements of that class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCount<T> {
    pub class: PlaneTreeClass,
    pub tree: String,
    pub n_t: T,
    pub automorphisms: usize,
    pub arrangements: T,
    pub enumerated_sets: Option<usize>,
    pub enumerated_free: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport<T> {
    pub n: u32,
    pub d: u32,
    pub wire_len: u32,
    pub classes: Vec<ClassCount<T>>,
    /// `sum N_T`.
    pub rfba_formula: T,
    /// `n! · P · sum N_T`.
    pub rcba_formula: T,
    /// `n! · sum P·N_T/|Aut T|`.
    pub rcba_by_symmetry: T,
    pub rfba_enumerated: Option<usize>,
    pub rcba_enumerated: Option<usize>,
}

impl<T: CountScalar> CountReport<T> {
    /// Enumerated totals equal `sum N_T` and `n!·P·sum N_T`.
    pub fn product_formula_holds(&self) -> Option<bool> {
        Some(
            self.rfba_enumerated? as u128 == self.rfba_formula.to_u128()?
                && self.rcba_enumerated? as u128 == self.rcba_formula.to_u128()?,
        )
    }

    /// Enumerated coloured total equals `n!·sum P·N_T/|Aut T|`, and every
    /// class has `P·N_T/|Aut T|` enumerated arrangements.
    pub fn symmetry_formula_holds(&self) -> Option<bool> {
        let total = self.rcba_enumerated? as u128 == self.rcba_by_symmetry.to_u128()?;
        let per_class = self
            .classes
            .iter()
            .all(|c| c.enumerated_sets.map(|e| e as u128) == c.arrangements.to_u128());
        Some(total && per_class)
    }

    /// Per class, enumerated free arrangements equal `N_T`.
    pub fn per_class_formula_holds(&self) -> Option<bool> {
        self.classes
            .iter()
            .map(|c| Some(c.enumerated_free? as u128 == c.n_t.to_u128()?))
            .try_fold(true, |acc, x| x.map(|x| acc && x))
    }

    pub fn to_json(&self) -> Value {
        let num = |x: &T| match x.to_u64() {
            Some(v) => json!(v),
            None => json!(x.to_string()),
        };
        json!({
            "schema": crate::arrangement::SCHEMA,
            "n": self.n,
            "d": self.d,
            "wire_len": self.wire_len,
            "classes": self.classes.iter().map(|c| json!({
                "class": c.class.0,
                "tree": c.tree,
                "n_t": num(&c.n_t),
                "automorphisms": c.automorphisms,
                "arrangements": num(&c.arrangements),
                "enumerated_sets": c.enumerated_sets,
                "enumerated_free": c.enumerated_free,
            })).collect::<Vec<_>>(),
            "rfba_formula": num(&self.rfba_formula),
            "rcba_formula": num(&self.rcba_formula),
            "rcba_by_symmetry": num(&self.rcba_by_symmetry),
            "rfba_enumerated": self.rfba_enumerated,
            "rcba_enumerated": self.rcba_enumerated,
            "product_formula_holds": self.product_formula_holds(),
            "symmetry_formula_holds": self.symmetry_formula_holds(),
        })
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let mut rows = vec![[
            "class".to_string(),
            "tree".into(),
            "N_T".into(),
            "|Aut|".into(),
            "P*N_T/|Aut|".into(),
            "sets".into(),
            "free".into(),
        ]];
        for c in &self.classes {
            rows.push([
                c.class.0.clone(),
                c.tree.clone(),
                c.n_t.to_string(),
                c.automorphisms.to_string(),
                c.arrangements.to_string(),
                opt(c.enumerated_sets),
                opt(c.enumerated_free),
            ]);
        }
        let widths: Vec<usize> = (0..7)
            .map(|k| rows.iter().map(|r| r[k].len()).max().unwrap_or(0))
            .collect();
        let mut out = format!("n={} d={} P={}\n", self.n, self.d, self.wire_len);
        for r in &rows {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!("sum N_T            {}\n", self.rfba_formula));
        out.push_str(&format!("n!*P*sum N_T       {}\n", self.rcba_formula));
        out.push_str(&format!("n!*sum P*N_T/|Aut| {}\n", self.rcba_by_symmetry));
        out.push_str(&format!("free enumerated    {}\n", opt(self.rfba_enumerated)));
        out.push_str(&format!("colored enumerated {}\n", opt(self.rcba_enumerated)));
        out
    }
}

/// Formula totals over all plane trees with `n` edges; with `with_oracle`,
/// also the enumerated reduced arrangement counts, overall and per class.
pub fn totals<T: CountScalar>(p: &Params, with_oracle: bool, cap: usize) -> Result<CountReport<T>> {
    let n = p.n() as u64;
    let wire: T = lift(p.wire_len() as u64)?;
    let mut fact = T::one();
    for k in 1..=n {
        fact = mul(&fact, &lift(k)?)?;
    }
    let mut classes = vec![];
    let mut sum_nt = T::zero();
    let mut sum_sets = T::zero();
    for (class, tree) in plane_trees(p.n() as usize) {
        let n_t: T = tree_count(&tree, p.d())?;
        let aut = tree.automorphism_count();
        let arrangements = mul(&wire, &n_t)? / lift(aut as u64)?;
        sum_nt = add(&sum_nt, &n_t)?;
        sum_sets = add(&sum_sets, &arrangements)?;
        classes.push(ClassCount {
            class,
            tree: tree.to_nested(),
            n_t,
            automorphisms: aut,
            arrangements,
            enumerated_sets: None,
            enumerated_free: None,
        });
    }
    let mut report = CountReport {
        n: p.n(),
        d: p.d(),
        wire_len: p.wire_len(),
        rfba_formula: sum_nt.clone(),
        rcba_formula: mul(&mul(&fact, &wire)?, &sum_nt)?,
        rcba_by_symmetry: mul(&fact, &sum_sets)?,
        classes,
        rfba_enumerated: None,
        rcba_enumerated: None,
    };
    if with_oracle {
        let mut sets: BTreeMap<PlaneTreeClass, usize> = BTreeMap::new();
        let mut frees: BTreeMap<PlaneTreeClass, std::collections::BTreeSet<FreeArrangement>> = BTreeMap::new();
        for_each_uncolored(p, true, cap, |s| {
            let free = FreeArrangement::new(*p, s.to_vec());
            let class = free.class();
            *sets.entry(class.clone()).or_default() += 1;
            frees.entry(class).or_default().insert(free);
        })?;
        for c in &mut report.classes {
            c.enumerated_sets = Some(sets.get(&c.class).copied().unwrap_or(0));
            c.enumerated_free = Some(frees.get(&c.class).map_or(0, |f| f.len()));
        }
        report.rfba_enumerated = Some(frees.values().map(|f| f.len()).sum());
        report.rcba_enumerated = Some(reduced_colored_arrangements(p, cap)?.len());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn pr(n: i64, d: i64) -> Params {
        Params::new(n, d).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<u64>(5, 2).unwrap(), 10);
        assert_eq!(binomial::<u64>(0, 0).unwrap(), 1);
        assert_eq!(binomial::<u64>(2, 5).unwrap(), 0);
        assert_eq!(binomial::<u128>(60, 30).unwrap(), 118264581564861424);
        let big: BigUint = binomial(200, 100).unwrap();
        assert_eq!(
            big.to_string(),
            "90548514656103281165404177077484163874504589675413336841320"
        );
    }

    #[test]
    fn overflow_is_an_error() {
        assert_eq!(binomial::<u64>(200, 100), Err(Error::Overflow));
        assert_eq!(binomial::<u8>(20, 10), Err(Error::Overflow));
    }

    #[test]
    fn small_trees() {
        // path with 3 edges at d=1: root C(1,1)·C(2,1)·C(2,1) = 4, star: C(3,1) = 3
        assert_eq!(tree_count::<u64>(&RootedPlaneTree::path(3), 1).unwrap(), 4);
        assert_eq!(tree_count::<u64>(&RootedPlaneTree::star(3), 1).unwrap(), 3);
        assert_eq!(tree_count::<u64>(&RootedPlaneTree::path(2), 0).unwrap(), 1);
    }

    #[test]
    fn scalar_types_agree() {
        for (_, t) in plane_trees(6) {
            for d in 0..4 {
                let a: u64 = tree_count(&t, d).unwrap();
                let b: u128 = tree_count(&t, d).unwrap();
                let c: BigUint = tree_count(&t, d).unwrap();
                assert_eq!(a as u128, b);
                assert_eq!(BigUint::from(a), c);
            }
        }
    }

    #[test]
    fn symmetry_formula_matches_enumeration() {
        for (n, d) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (4, 0), (4, 1)] {
            let r: CountReport<BigUint> = totals(&pr(n, d), true, 10_000_000).unwrap();
            assert_eq!(r.symmetry_formula_holds(), Some(true), "{n},{d}");
        }
    }

    #[test]
    fn report_values_at_3_1() {
        let r: CountReport<u64> = totals(&pr(3, 1), true, 10_000_000).unwrap();
        assert_eq!(r.rfba_formula, 7);
        assert_eq!(r.rcba_formula, 420);
        assert_eq!(r.rcba_by_symmetry, 180);
        assert_eq!(r.rcba_enumerated, Some(180));
        assert_eq!(r.rfba_enumerated, Some(4));
        assert_eq!(r.product_formula_holds(), Some(false));
        let table = r.to_table();
        assert!(table.contains("n!*sum P*N_T/|Aut| 180"));
        assert_eq!(r.to_json()["rcba_by_symmetry"], 180);
    }
}
