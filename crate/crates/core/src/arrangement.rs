//! Bead arrangements: validation, heights, the associated plane tree,
//! rebalancing, reduction to circlet form, right-justification, free
//! (rotation) classes and exhaustive enumeration.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::action::{classify, CollisionKind, Side};
use crate::error::{Error, Result};
use crate::plane_tree::{PlaneTreeClass, RootedPlaneTree};
use crate::ring::{wrap, Bead, Circlet, Params};

pub const SCHEMA: &str = "bead-lab/1";

/// Default ceiling on enumerated or searched states.
pub const DEFAULT_CAP: usize = 5_000_000;

/// An entry of a reduced arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Item {
    Bead(Bead),
    Circlet(Circlet),
}

impl Item {
    pub fn check(self, p: &Params) -> Result<Item> {
        Ok(match self {
            Item::Bead(b) => Item::Bead(p.check_bead(b)?),
            Item::Circlet(c) => Item::Circlet(p.check_circlet(c)?),
        })
    }

    pub fn type_len(self, p: &Params) -> u32 {
        match self {
            Item::Bead(b) => b.l,
            Item::Circlet(_) => p.max_reduced_type(),
        }
    }

    pub fn shift(self, p: &Params, k: i64) -> Item {
        match self {
            Item::Bead(b) => Item::Bead(p.shift(b, k)),
            Item::Circlet(c) => Item::Circlet(Circlet {
                i: wrap(c.i as i64 + k, p.wire_len() / 2),
            }),
        }
    }

    /// A representative bead: the bead itself, or the first circlet member.
    pub fn lift(self, p: &Params) -> Bead {
        match self {
            Item::Bead(b) => b,
            Item::Circlet(c) => p.circlet_members(c)[0],
        }
    }
}

pub fn items_overlap(p: &Params, a: Item, b: Item) -> bool {
    match (a, b) {
        (Item::Bead(x), Item::Bead(y)) => p.overlaps(x, y),
        (Item::Bead(x), Item::Circlet(c)) | (Item::Circlet(c), Item::Bead(x)) => p.overlaps_circlet(x, c),
        (Item::Circlet(_), Item::Circlet(_)) => true,
    }
}

/// JSON form shared by every arrangement flavour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub n: i64,
    pub d: i64,
    pub beads: Vec<Item>,
}

impl ArrangementDoc {
    pub fn new(p: &Params, items: Vec<Item>) -> Self {
        ArrangementDoc {
            schema: Some(SCHEMA.into()),
            n: p.n() as i64,
            d: p.d() as i64,
            beads: items,
        }
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.n, self.d)
    }

    pub fn has_circlet(&self) -> bool {
        self.beads.iter().any(|x| matches!(x, Item::Circlet(_)))
    }
}

fn check_pairwise(p: &Params, items: &[Item]) -> Result<()> {
    for (a, b) in items.iter().tuple_combinations() {
        if items_overlap(p, *a, *b) {
            if let (Item::Circlet(_), Item::Circlet(_)) = (a, b) {
                return Err(Error::TwoCirclets);
            }
            return Err(Error::Overlap(a.lift(p), b.lift(p)));
        }
    }
    Ok(())
}

fn check_size(p: &Params, found: usize) -> Result<()> {
    if found != p.n() as usize {
        return Err(Error::WrongSize {
            expected: p.n() as usize,
            found,
        });
    }
    Ok(())
}

/// `1 + #{other beads whose well contains b}` for each bead.
pub fn heights(p: &Params, beads: &[Bead]) -> Vec<usize> {
    beads
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            1 + beads
                .iter()
                .enumerate()
                .filter(|&(j, &o)| j != k && p.in_well(b, o))
                .count()
        })
        .collect()
}

/// The associated plane tree: vertex 0 is the wire, bead `k` is vertex `k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeadTree {
    pub tree: RootedPlaneTree,
    pub heights: Vec<usize>,
}

impl BeadTree {
    pub fn vertex_of(&self, bead_index: usize) -> usize {
        bead_index + 1
    }

    pub fn bead_of(&self, vertex: usize) -> Option<usize> {
        vertex.checked_sub(1)
    }
}

pub fn bead_tree(p: &Params, beads: &[Bead]) -> BeadTree {
    let h = heights(p, beads);
    let n = beads.len();
    let mut children: Vec<Vec<usize>> = vec![vec![]; n + 1];
    for k in 0..n {
        let parent = (0..n).find(|&j| j != k && h[j] + 1 == h[k] && p.in_well(beads[k], beads[j]));
        match parent {
            Some(j) => children[j + 1].push(k + 1),
            None => children[0].push(k + 1),
        }
    }
    children[0].sort_by_key(|&v| beads[v - 1].i);
    for j in 0..n {
        let base = p.left_end(beads[j]) as i64;
        children[j + 1].sort_by_key(|&v| p.pos(beads[v - 1].i as i64 - base));
    }
    let tree = RootedPlaneTree::from_children(children, 0).expect("containment forest is a tree");
    BeadTree { tree, heights: h }
}

/// An ordered tuple of `n` mutually non-overlapping beads.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredArrangement {
    params: Params,
    beads: Vec<Bead>,
}

impl ColoredArrangement {
    pub fn new(params: Params, beads: Vec<Bead>) -> Result<Self> {
        check_size(&params, beads.len())?;
        for &b in &beads {
            params.check_bead(b)?;
        }
        let items: Vec<Item> = beads.iter().map(|&b| Item::Bead(b)).collect();
        check_pairwise(&params, &items)?;
        Ok(ColoredArrangement { params, beads })
    }

    pub(crate) fn new_unchecked(params: Params, beads: Vec<Bead>) -> Self {
        ColoredArrangement { params, beads }
    }

    /// `B_1(0), B_1(-(d+2)), ..., B_1(-(n-1)(d+2))`.
    pub fn simples(p: Params) -> Self {
        let beads = (0..p.n() as i64)
            .map(|k| Bead {
                l: 1,
                i: p.pos(-k * p.unit() as i64),
            })
            .collect();
        ColoredArrangement { params: p, beads }
    }

    pub fn from_doc(doc: &ArrangementDoc) -> Result<Self> {
        let p = doc.params()?;
        let beads = doc
            .beads
            .iter()
            .map(|it| match it {
                Item::Bead(b) => Ok(*b),
                Item::Circlet(_) => Err(Error::NotCircletType {
                    l: p.max_reduced_type(),
                    n: p.n(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, beads)
    }

    pub fn to_doc(&self) -> ArrangementDoc {
        ArrangementDoc::new(&self.params, self.beads.iter().map(|&b| Item::Bead(b)).collect())
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn beads(&self) -> &[Bead] {
        &self.beads
    }

    pub fn into_beads(self) -> Vec<Bead> {
        self.beads
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    pub fn heights(&self) -> Vec<usize> {
        heights(&self.params, &self.beads)
    }

    pub fn height(&self, index: usize) -> Result<usize> {
        self.index(index)?;
        Ok(self.heights()[index])
    }

    fn index(&self, index: usize) -> Result<Bead> {
        self.beads.get(index).copied().ok_or(Error::Index {
            index,
            len: self.beads.len(),
        })
    }

    pub fn associated_tree(&self) -> BeadTree {
        bead_tree(&self.params, &self.beads)
    }

    pub fn class(&self) -> PlaneTreeClass {
        self.associated_tree().tree.class()
    }

    pub fn rotate(&self, k: i64) -> Self {
        let beads = self.beads.iter().map(|&b| self.params.shift(b, k)).collect();
        ColoredArrangement {
            params: self.params,
            beads,
        }
    }

    /// Entry `k` of the result is entry `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        let beads = perm.iter().map(|&k| self.beads[k]).collect();
        Ok(ColoredArrangement {
            params: self.params,
            beads,
        })
    }

    /// Replace the height-1 bead at `index` by its partner.
    pub fn rebalance(&self, index: usize) -> Result<Self> {
        let b = self.index(index)?;
        let h = self.heights()[index];
        if h != 1 {
            return Err(Error::NotHeightOne { index, height: h });
        }
        let mut beads = self.beads.clone();
        beads[index] = self.params.partner(b);
        Self::new(self.params, beads).map_err(|e| Error::Invariant(format!("rebalance: {e}")))
    }

    /// Rebalance until every type is at most `floor((n+1)/2)`, then glue the
    /// middle-type beads into circlets. Slots keep their colours.
    pub fn reduce(&self) -> ReducedColoredArrangement {
        let p = self.params;
        let half = p.max_reduced_type();
        let mut a = self.clone();
        loop {
            let h = a.heights();
            let over = (0..a.len()).find(|&k| h[k] == 1 && a.beads[k].l > half);
            match over {
                Some(k) => a = a.rebalance(k).expect("partner of a height-1 bead is valid"),
                None => break,
            }
        }
        debug_assert!(a.beads.iter().all(|b| b.l <= half));
        let items = a
            .beads
            .iter()
            .map(|&b| match p.circlet_of(b) {
                Ok(c) => Item::Circlet(c),
                Err(_) => Item::Bead(b),
            })
            .collect();
        ReducedColoredArrangement { params: p, items }
    }

    /// `B(1)` has a right Type I or II collision with some other bead.
    pub fn is_right_justified_at(&self, index: usize) -> bool {
        let p = &self.params;
        let moved = p.shift(self.beads[index], 1);
        self.beads.iter().enumerate().any(|(j, &o)| {
            j != index
                && matches!(
                    classify(p, moved, o, Side::Right),
                    Some(CollisionKind::I | CollisionKind::II)
                )
        })
    }

    pub fn unjustified(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| !self.is_right_justified_at(k)).collect()
    }

    /// All beads but at most one are right-justified.
    pub fn is_right_justified(&self) -> bool {
        self.unjustified().len() <= 1
    }

    /// The bead that leads a standard-form tuple: the unique unjustified bead
    /// when `d > 0`, otherwise the height-1 bead with the smallest endpoint.
    pub fn standard_lead(&self) -> Result<usize> {
        if self.params.d() > 0 {
            match self.unjustified().as_slice() {
                [k] => Ok(*k),
                _ => Err(Error::NotRightJustified),
            }
        } else {
            let h = self.heights();
            Ok((0..self.len())
                .filter(|&k| h[k] == 1)
                .min_by_key(|&k| self.beads[k].i)
                .expect("a height-1 bead"))
        }
    }

    /// Reorder so the lead comes first and endpoints decrease cyclically.
    /// Returns the reordered tuple and `perm` with `new[k] = old[perm[k]]`.
    pub fn to_standard_form(&self) -> Result<(Self, Vec<usize>)> {
        let lead = self.standard_lead()?;
        let top = self.beads[lead].i as i64;
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.sort_by_key(|&k| self.params.pos(top - self.beads[k].i as i64));
        Ok((self.permute(&perm)?, perm))
    }

    pub fn is_standard_form(&self) -> bool {
        match self.to_standard_form() {
            Ok((_, perm)) => perm.iter().enumerate().all(|(k, &v)| k == v),
            Err(_) => false,
        }
    }

    pub fn to_free(&self) -> FreeArrangement {
        FreeArrangement::new(self.params, self.beads.iter().map(|&b| Item::Bead(b)).collect())
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let seen: BTreeSet<usize> = perm.iter().copied().collect();
    if perm.len() != n || seen.len() != n || seen.iter().any(|&k| k >= n) {
        return Err(Error::InvalidGenerator(format!(
            "{perm:?} is not a permutation of 0..{n}"
        )));
    }
    Ok(())
}

/// A coloured arrangement with every type at most `floor((n+1)/2)` and
/// middle-type beads replaced by a circlet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedColoredArrangement {
    params: Params,
    items: Vec<Item>,
}

impl ReducedColoredArrangement {
    pub fn new(params: Params, items: Vec<Item>) -> Result<Self> {
        check_size(&params, items.len())?;
        let half = params.max_reduced_type();
        for &it in &items {
            it.check(&params)?;
            if let Item::Bead(b) = it {
                if b.l > half || params.middle_type() == Some(b.l) {
                    return Err(Error::NotReduced { l: b.l, max: half });
                }
            }
        }
        check_pairwise(&params, &items)?;
        Ok(ReducedColoredArrangement { params, items })
    }

    pub fn from_doc(doc: &ArrangementDoc) -> Result<Self> {
        Self::new(doc.params()?, doc.beads.clone())
    }

    pub fn to_doc(&self) -> ArrangementDoc {
        ArrangementDoc::new(&self.params, self.items.clone())
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    /// The coloured arrangement with each circlet replaced by its first member.
    pub fn lift(&self) -> ColoredArrangement {
        let beads = self.items.iter().map(|it| it.lift(&self.params)).collect();
        ColoredArrangement::new_unchecked(self.params, beads)
    }

    pub fn class(&self) -> PlaneTreeClass {
        self.lift().class()
    }

    pub fn rotate(&self, k: i64) -> Self {
        let items = self.items.iter().map(|it| it.shift(&self.params, k)).collect();
        ReducedColoredArrangement {
            params: self.params,
            items,
        }
    }

    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.items.len())?;
        let items = perm.iter().map(|&k| self.items[k]).collect();
        Ok(ReducedColoredArrangement {
            params: self.params,
            items,
        })
    }

    pub fn to_free(&self) -> FreeArrangement {
        FreeArrangement::new(self.params, self.items.clone())
    }
}

/// An uncoloured arrangement up to rotation, stored as the lexicographically
/// smallest sorted item list over all rotations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeArrangement {
    params: Params,
    items: Vec<Item>,
}

impl FreeArrangement {
    pub fn new(params: Params, items: Vec<Item>) -> Self {
        let items = (0..params.wire_len() as i64)
            .map(|k| {
                let mut v: Vec<Item> = items.iter().map(|it| it.shift(&params, k)).collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap_or_default();
        FreeArrangement { params, items }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    /// Number of distinct rotations of this arrangement.
    pub fn orbit_len(&self) -> usize {
        let p = &self.params;
        (1..=p.wire_len() as i64)
            .find(|&k| {
                let mut v: Vec<Item> = self.items.iter().map(|it| it.shift(p, k)).collect();
                v.sort_unstable();
                v == self.items
            })
            .unwrap_or(p.wire_len() as i64) as usize
    }

    pub fn class(&self) -> PlaneTreeClass {
        let beads: Vec<Bead> = self.items.iter().map(|it| it.lift(&self.params)).collect();
        bead_tree(&self.params, &beads).tree.class()
    }

    pub fn to_doc(&self) -> ArrangementDoc {
        ArrangementDoc::new(&self.params, self.items.clone())
    }
}

fn candidates(p: &Params, reduced: bool) -> Vec<Item> {
    let mut out: Vec<Item> = vec![];
    let half = p.max_reduced_type();
    if reduced && p.middle_type().is_some() {
        out.extend((0..p.wire_len() / 2).map(|i| Item::Circlet(Circlet { i })));
    }
    for l in (1..=p.n()).rev() {
        if reduced && (l > half || p.middle_type() == Some(l)) {
            continue;
        }
        out.extend((0..p.wire_len()).map(|i| Item::Bead(Bead { l, i })));
    }
    out
}

/// Calls `visit` on every uncoloured arrangement (as a sorted item list).
pub fn for_each_uncolored(p: &Params, reduced: bool, cap: usize, mut visit: impl FnMut(&[Item])) -> Result<usize> {
    let cands = candidates(p, reduced);
    let n = p.n() as usize;
    let mut count = 0usize;
    let mut cur: Vec<Item> = Vec::with_capacity(n);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        p: &Params,
        cands: &[Item],
        start: usize,
        n: usize,
        cap: usize,
        cur: &mut Vec<Item>,
        count: &mut usize,
        visit: &mut dyn FnMut(&[Item]),
    ) -> Result<()> {
        if cur.len() == n {
            *count += 1;
            if *count > cap {
                return Err(Error::CapExceeded { cap });
            }
            let mut sorted = cur.clone();
            sorted.sort_unstable();
            visit(&sorted);
            return Ok(());
        }
        for k in start..cands.len() {
            if cur.iter().all(|&o| !items_overlap(p, o, cands[k])) {
                cur.push(cands[k]);
                rec(p, cands, k + 1, n, cap, cur, count, visit)?;
                cur.pop();
            }
        }
        Ok(())
    }
    rec(p, &cands, 0, n, cap, &mut cur, &mut count, &mut visit)?;
    Ok(count)
}

pub fn uncolored_arrangements(p: &Params, reduced: bool, cap: usize) -> Result<Vec<Vec<Item>>> {
    let mut out = vec![];
    for_each_uncolored(p, reduced, cap, |s| out.push(s.to_vec()))?;
    Ok(out)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Every coloured arrangement (all orderings of every uncoloured one).
pub fn colored_arrangements(p: &Params, cap: usize) -> Result<Vec<ColoredArrangement>> {
    let sets = uncolored_arrangements(p, false, cap)?;
    let total = sets.len().saturating_mul(factorial(p.n() as usize));
    if total > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mut out = Vec::with_capacity(total);
    for s in sets {
        let beads: Vec<Bead> = s.iter().map(|it| it.lift(p)).collect();
        for perm in beads.iter().copied().permutations(beads.len()) {
            out.push(ColoredArrangement::new_unchecked(*p, perm));
        }
    }
    Ok(out)
}

pub fn reduced_colored_arrangements(p: &Params, cap: usize) -> Result<Vec<ReducedColoredArrangement>> {
    let sets = uncolored_arrangements(p, true, cap)?;
    let total = sets.len().saturating_mul(factorial(p.n() as usize));
    if total > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mut out = Vec::with_capacity(total);
    for s in sets {
        for perm in s.iter().copied().permutations(s.len()) {
            out.push(ReducedColoredArrangement {
                params: *p,
                items: perm,
            });
        }
    }
    Ok(out)
}

/// Rotation classes of uncoloured arrangements, sorted.
pub fn free_arrangements(p: &Params, reduced: bool, cap: usize) -> Result<Vec<FreeArrangement>> {
    let mut seen = BTreeSet::new();
    for_each_uncolored(p, reduced, cap, |s| {
        seen.insert(FreeArrangement::new(*p, s.to_vec()));
    })?;
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: i64, d: i64) -> Params {
        Params::new(n, d).unwrap()
    }

    fn b(l: u32, i: u32) -> Bead {
        Bead { l, i }
    }

    fn fig1() -> ColoredArrangement {
        ColoredArrangement::new(pr(3, 1), vec![b(2, 7), b(1, 5), b(1, 0)]).unwrap()
    }

    #[test]
    fn validation() {
        let p = pr(3, 1);
        assert!(ColoredArrangement::new(p, vec![b(2, 7), b(1, 7), b(1, 0)]).is_err());
        assert!(matches!(
            ColoredArrangement::new(p, vec![b(2, 7), b(1, 5)]),
            Err(Error::WrongSize { expected: 3, found: 2 })
        ));
        assert!(ColoredArrangement::new(p, vec![b(2, 7), b(1, 5), b(4, 0)]).is_err());
    }

    #[test]
    fn heights_and_tree() {
        let a = fig1();
        assert_eq!(a.heights(), vec![1, 2, 1]);
        let t = a.associated_tree();
        assert_eq!(t.tree.children(0), &[3, 1]);
        assert_eq!(t.tree.children(1), &[2]);
        let w = t.tree.weights();
        let depth = t.tree.depths();
        for k in 0..3 {
            assert_eq!(w[k + 1] as u32, a.beads()[k].l);
            assert_eq!(depth[k + 1], a.heights()[k]);
        }
    }

    #[test]
    fn reduce_replaces_middle_bead() {
        // a type-2 bead at (3,1) becomes a circlet
        let r = fig1().reduce();
        assert_eq!(
            r.items(),
            &[
                Item::Circlet(Circlet { i: 2 }),
                Item::Bead(b(1, 5)),
                Item::Bead(b(1, 0))
            ]
        );
        let heavy = ColoredArrangement::new(pr(3, 1), vec![b(3, 8), b(1, 5), b(1, 9)]);
        assert!(heavy.is_err());
        let heavy = ColoredArrangement::new(pr(3, 1), vec![b(3, 9), b(1, 5), b(1, 8)]).unwrap();
        let r = heavy.reduce();
        assert_eq!(r.items()[0], Item::Bead(b(1, 1)));
    }

    #[test]
    fn rebalance_needs_height_one() {
        assert!(matches!(
            fig1().rebalance(1),
            Err(Error::NotHeightOne { index: 1, height: 2 })
        ));
        let r = fig1().rebalance(0).unwrap();
        assert_eq!(r.beads()[0], b(2, 2));
    }

    #[test]
    fn simples_standard_form() {
        for (n, d) in [(2, 0), (3, 1), (4, 2), (5, 1)] {
            let s = ColoredArrangement::simples(pr(n, d));
            assert!(ColoredArrangement::new(*s.params(), s.beads().to_vec()).is_ok());
            assert!(s.is_right_justified());
            assert!(s.is_standard_form(), "{n},{d}");
        }
    }

    #[test]
    fn enumeration_totals() {
        // independent Python brute force: (n, d, uncoloured, reduced uncoloured, reduced free)
        let want = [
            (2, 0, 6, 2, 1),
            (2, 1, 21, 7, 1),
            (2, 2, 45, 15, 2),
            (3, 0, 20, 5, 2),
            (3, 1, 120, 30, 4),
            (4, 0, 70, 14, 3),
            (4, 1, 715, 143, 11),
        ];
        for (n, d, all, red, free) in want {
            let p = pr(n, d);
            assert_eq!(uncolored_arrangements(&p, false, DEFAULT_CAP).unwrap().len(), all);
            assert_eq!(
                uncolored_arrangements(&p, true, DEFAULT_CAP).unwrap().len(),
                red,
                "{n},{d}"
            );
            assert_eq!(free_arrangements(&p, true, DEFAULT_CAP).unwrap().len(), free, "{n},{d}");
        }
    }

    #[test]
    fn cap_is_reported() {
        let p = pr(3, 1);
        assert_eq!(
            uncolored_arrangements(&p, false, 10),
            Err(Error::CapExceeded { cap: 10 })
        );
        assert!(colored_arrangements(&p, 500).is_err());
    }

    #[test]
    fn reduction_is_onto_reduced_sets() {
        let p = pr(3, 1);
        let reduced: BTreeSet<Vec<Item>> = uncolored_arrangements(&p, true, DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .collect();
        let mut image = BTreeSet::new();
        for s in uncolored_arrangements(&p, false, DEFAULT_CAP).unwrap() {
            let beads: Vec<Bead> = s.iter().map(|it| it.lift(&p)).collect();
            let mut r = ColoredArrangement::new(p, beads).unwrap().reduce().items().to_vec();
            r.sort_unstable();
            assert!(reduced.contains(&r));
            image.insert(r);
        }
        assert_eq!(image, reduced);
    }

    #[test]
    fn doc_round_trip() {
        let a = fig1();
        let s = serde_json::to_string(&a.to_doc()).unwrap();
        assert_eq!(
            s,
            r#"{"schema":"bead-lab/1","n":3,"d":1,"beads":[{"l":2,"i":7},{"l":1,"i":5},{"l":1,"i":0}]}"#
        );
        let doc: ArrangementDoc = serde_json::from_str(&s).unwrap();
        assert_eq!(ColoredArrangement::from_doc(&doc).unwrap(), a);
        let r = a.reduce();
        let doc: ArrangementDoc = serde_json::from_str(&serde_json::to_string(&r.to_doc()).unwrap()).unwrap();
        assert!(doc.has_circlet());
        assert_eq!(ReducedColoredArrangement::from_doc(&doc).unwrap(), r);
    }

    #[test]
    fn free_orbit_lengths() {
        let p = pr(3, 1);
        let frees = free_arrangements(&p, false, DEFAULT_CAP).unwrap();
        let total: usize = frees.iter().map(|f| f.orbit_len()).sum();
        assert_eq!(total, 120);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arrangement() -> impl Strategy<Value = ColoredArrangement> {
            (0usize..4, 0usize..100_000).prop_map(|(which, pick)| {
                let p = [pr(3, 1), pr(4, 1), pr(3, 0), pr(5, 0)][which];
                let sets = uncolored_arrangements(&p, false, DEFAULT_CAP).unwrap();
                let s = &sets[pick % sets.len()];
                let beads: Vec<Bead> = s.iter().map(|it| it.lift(&p)).collect();
                let n = beads.len();
                let rot = pick % n;
                let mut beads = beads;
                beads.rotate_left(rot);
                ColoredArrangement::new(p, beads).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn rotation_preserves_tree(a in arrangement(), k in -30i64..30) {
                let r = a.rotate(k);
                prop_assert!(ColoredArrangement::new(*r.params(), r.beads().to_vec()).is_ok());
                prop_assert_eq!(r.associated_tree().tree.rooted_code(), a.associated_tree().tree.rooted_code());
                prop_assert_eq!(r.heights(), a.heights());
            }

            #[test]
            fn rebalance_matches_tree_rebalance(a in arrangement()) {
                let t = a.associated_tree();
                for (k, h) in a.heights().into_iter().enumerate() {
                    if h != 1 { continue; }
                    let r = a.rebalance(k).unwrap();
                    let want = t.tree.rebalance_root(t.vertex_of(k)).unwrap();
                    prop_assert_eq!(r.associated_tree().tree.rooted_code(), want.rooted_code());
                    prop_assert_eq!(r.rebalance(k).unwrap(), a.clone());
                }
            }

            #[test]
            fn reduce_is_balanced_and_idempotent(a in arrangement()) {
                let r = a.reduce();
                let half = a.params().max_reduced_type();
                prop_assert!(r.items().iter().all(|it| it.type_len(a.params()) <= half));
                prop_assert!(ReducedColoredArrangement::new(*r.params(), r.items().to_vec()).is_ok());
                prop_assert_eq!(r.lift().reduce(), r.clone());
                prop_assert!(r.lift().associated_tree().tree.is_balanced());
                prop_assert_eq!(r.class(), a.class());
            }
        }
    }
}
