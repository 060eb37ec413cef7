//! The mutation group acting on coloured arrangements.
//!
//! A subset generator `S` shifts every bead outside `S` one unit left; beads
//! that run into a stationary bead are mutated until no collision remains.
//! `S^-1` does the same to the right, and permutations recolour.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arrangement::{check_permutation, ColoredArrangement};
use crate::catmodel::{phi, suspend, IndecObject};
use crate::error::{Error, Result};
use crate::plane_tree::RootedPlaneTree;
use crate::ring::{Bead, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CollisionKind {
    I,
    II,
    III,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn step(self) -> i64 {
        match self {
            Side::Left => -1,
            Side::Right => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// Colours that stay put; every other bead moves left.
    Subset(Vec<usize>),
    /// Colours that stay put; every other bead moves right.
    SubsetInverse(Vec<usize>),
    /// Entry `k` of the result is entry `perm[k]` of the input.
    Permutation(Vec<usize>),
}

impl Generator {
    pub fn inverse(&self) -> Generator {
        match self {
            Generator::Subset(s) => Generator::SubsetInverse(s.clone()),
            Generator::SubsetInverse(s) => Generator::Subset(s.clone()),
            Generator::Permutation(p) => {
                let mut inv = vec![0; p.len()];
                for (k, &v) in p.iter().enumerate() {
                    inv[v] = k;
                }
                Generator::Permutation(inv)
            }
        }
    }
}

pub type GroupWord = Vec<Generator>;

/// One mutation fired while resolving a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub moved_index: usize,
    pub stationary_index: usize,
    pub kind: CollisionKind,
    pub side: Side,
    pub before: Bead,
    pub after: Bead,
    pub stationary: Bead,
    /// Objects of the distinguished triangle attached to the mutation.
    pub triangle: [IndecObject; 3],
}

/// Which collision, if any, the moved bead `b1` has with the stationary `b2`.
pub fn classify(p: &Params, b1: Bead, b2: Bead, side: Side) -> Option<CollisionKind> {
    let u = p.unit() as i64;
    let (l1, i1, l2, i2) = (b1.l as i64, b1.i as i64, b2.l as i64, b2.i as i64);
    let eq = |a: i64, b: i64| p.pos(a) == p.pos(b);
    let n = p.n() as i64;
    match side {
        Side::Left => {
            if eq(i2, i1 - l1 * u + 1) && l1 + l2 <= n {
                Some(CollisionKind::I)
            } else if eq(i1 - l1 * u, i2 - l2 * u) && l1 < l2 {
                Some(CollisionKind::II)
            } else if eq(i1, i2) && l2 < l1 {
                Some(CollisionKind::III)
            } else {
                None
            }
        }
        Side::Right => {
            if eq(i1, i2 - l2 * u + 1) && l1 + l2 <= n {
                Some(CollisionKind::I)
            } else if eq(i1, i2) && l1 < l2 {
                Some(CollisionKind::II)
            } else if eq(i1 - l1 * u, i2 - l2 * u) && l2 < l1 {
                Some(CollisionKind::III)
            } else {
                None
            }
        }
    }
}

/// The bead replacing `b1` after a collision of `kind` with `b2`.
pub fn mutate(p: &Params, b1: Bead, b2: Bead, kind: CollisionKind, side: Side) -> Result<Bead> {
    if classify(p, b1, b2, side) != Some(kind) {
        return Err(Error::NoCollision(b1, b2));
    }
    let u = p.unit() as i64;
    let (l1, i1, l2, i2) = (b1.l as i64, b1.i as i64, b2.l as i64, b2.i as i64);
    let (l, i) = match (side, kind) {
        (Side::Left, CollisionKind::I) => (l1 + l2, i1),
        (Side::Left, CollisionKind::II) => (l2 - l1, i2 - 1),
        (Side::Left, CollisionKind::III) => (l1 - l2, i1 - l2 * u),
        (Side::Right, CollisionKind::I) => (l1 + l2, i1 + l2 * u),
        (Side::Right, CollisionKind::II) => (l2 - l1, i2 - l1 * u + 1),
        (Side::Right, CollisionKind::III) => (l1 - l2, i1),
    };
    p.bead(l, i)
}

/// The collision kind the stationary bead has with the mutated bead after
/// one more unit step: I leads to II, II to III, III to I.
pub fn next_kind(kind: CollisionKind) -> CollisionKind {
    match kind {
        CollisionKind::I => CollisionKind::II,
        CollisionKind::II => CollisionKind::III,
        CollisionKind::III => CollisionKind::I,
    }
}

/// Whether the stationary bead, stepped once toward `side`, collides with
/// the mutated bead in the way [`next_kind`] predicts.
pub fn adjacency_holds(p: &Params, stationary: Bead, mutated: Bead, kind: CollisionKind, side: Side) -> bool {
    classify(p, p.shift(stationary, side.step()), mutated, side) == Some(next_kind(kind))
}

fn triangle(p: &Params, moved: Bead, stationary: Bead, mutated: Bead, side: Side) -> [IndecObject; 3] {
    match side {
        Side::Left => [
            phi(p, stationary),
            suspend(p, phi(p, mutated), 1),
            phi(p, p.shift(moved, 1)),
        ],
        Side::Right => [
            phi(p, p.shift(stationary, -1)),
            phi(p, p.shift(moved, -1)),
            suspend(p, phi(p, mutated), -1),
        ],
    }
}

const PASSES: [CollisionKind; 4] = [
    CollisionKind::I,
    CollisionKind::III,
    CollisionKind::II,
    CollisionKind::III,
];

fn check_subset(s: &[usize], n: usize) -> Result<Vec<bool>> {
    let mut stationary = vec![false; n];
    for &k in s {
        if k >= n || stationary[k] {
            return Err(Error::InvalidGenerator(format!("bad subset {s:?} of 0..{n}")));
        }
        stationary[k] = true;
    }
    if stationary.iter().all(|&x| x) {
        return Err(Error::InvalidGenerator("subset must be proper".into()));
    }
    Ok(stationary)
}

fn resolve(
    a: &ColoredArrangement,
    stationary: &[bool],
    side: Side,
    order: &[usize],
) -> Result<(ColoredArrangement, Vec<CollisionReport>)> {
    let p = *a.params();
    let n = a.len();
    let mut beads = a.beads().to_vec();
    for k in 0..n {
        if !stationary[k] {
            beads[k] = p.shift(beads[k], side.step());
        }
    }
    let mut log = vec![];
    for kind in PASSES {
        for &k in order.iter().filter(|&&k| !stationary[k]) {
            for step in 0.. {
                let hits: Vec<usize> = (0..n)
                    .filter(|&j| stationary[j] && classify(&p, beads[k], beads[j], side) == Some(kind))
                    .collect();
                let j = match hits.as_slice() {
                    [] => break,
                    [j] => *j,
                    _ => return Err(Error::Invariant(format!("bead {k} collides with {hits:?}"))),
                };
                if step >= n {
                    return Err(Error::Invariant(format!("bead {k} keeps colliding")));
                }
                let before = beads[k];
                let after = mutate(&p, before, beads[j], kind, side)?;
                log.push(CollisionReport {
                    moved_index: k,
                    stationary_index: j,
                    kind,
                    side,
                    before,
                    after,
                    stationary: beads[j],
                    triangle: triangle(&p, before, beads[j], after, side),
                });
                beads[k] = after;
            }
        }
    }
    let out = ColoredArrangement::new(p, beads).map_err(|e| Error::Invariant(format!("action result: {e}")))?;
    Ok((out, log))
}

/// Apply one generator, returning the mutation log.
pub fn act_logged(a: &ColoredArrangement, g: &Generator) -> Result<(ColoredArrangement, Vec<CollisionReport>)> {
    let order: Vec<usize> = (0..a.len()).collect();
    act_with_order(a, g, &order)
}

/// As [`act_logged`], processing moved beads within each pass in `order`.
pub fn act_with_order(
    a: &ColoredArrangement,
    g: &Generator,
    order: &[usize],
) -> Result<(ColoredArrangement, Vec<CollisionReport>)> {
    check_permutation(order, a.len())?;
    match g {
        Generator::Subset(s) => resolve(a, &check_subset(s, a.len())?, Side::Left, order),
        Generator::SubsetInverse(s) => resolve(a, &check_subset(s, a.len())?, Side::Right, order),
        Generator::Permutation(perm) => Ok((a.permute(perm)?, vec![])),
    }
}

pub fn act(a: &ColoredArrangement, g: &Generator) -> Result<ColoredArrangement> {
    act_logged(a, g).map(|(x, _)| x)
}

/// Apply a word left to right.
pub fn act_word(a: &ColoredArrangement, word: &[Generator]) -> Result<ColoredArrangement> {
    word.iter().try_fold(a.clone(), |acc, g| act(&acc, g))
}

/// No mutation fires.
pub fn is_rigid(a: &ColoredArrangement, g: &Generator) -> Result<bool> {
    Ok(act_logged(a, g)?.1.is_empty())
}

/// Push every bead except one fixed height-1 bead to the right by rigid
/// inverse moves until it touches a neighbour. Returns the result and the
/// word applied.
pub fn right_justify(a: &ColoredArrangement) -> Result<(ColoredArrangement, GroupWord)> {
    let p = *a.params();
    let n = a.len();
    let mut cur = a.clone();
    let mut word = vec![];
    let heights = cur.heights();
    let fixed = (0..n).find(|&k| heights[k] == 1).expect("a height-1 bead");
    let top = heights.iter().copied().max().unwrap_or(1);
    let budget = n * n * p.wire_len() as usize;
    for level in 1..=top {
        loop {
            let pending = (0..n).find(|&k| k != fixed && heights[k] == level && !cur.is_right_justified_at(k));
            let Some(j) = pending else { break };
            let outer = cur.beads()[j];
            let stay: Vec<usize> = (0..n)
                .filter(|&r| r != j && !p.in_well(cur.beads()[r], outer))
                .collect();
            let g = Generator::SubsetInverse(stay);
            while !cur.is_right_justified_at(j) {
                let (next, log) = act_logged(&cur, &g)?;
                if !log.is_empty() {
                    return Err(Error::Invariant("right-justifying move was not rigid".into()));
                }
                cur = next;
                word.push(g.clone());
                if word.len() > budget {
                    return Err(Error::Invariant("right-justification did not terminate".into()));
                }
            }
        }
    }
    Ok((cur, word))
}

/// Output of [`realize_class`].
#[derive(Clone, Debug)]
pub struct Realization {
    pub word: GroupWord,
    /// The simples arrangement followed by the arrangement after each depth.
    pub stages: Vec<ColoredArrangement>,
    pub arrangement: ColoredArrangement,
}

/// Build, from the simples arrangement, a word whose result has associated
/// tree of the same rooted class as `tree`. Depth by depth, each vertex's
/// type-1 contents are merged into its children by Type I mutations, then the
/// arrangement is right-justified and put in standard form.
pub fn realize_class(p: &Params, tree: &RootedPlaneTree) -> Result<Realization> {
    let n = p.n() as usize;
    if tree.edge_count() != n {
        return Err(Error::InvalidTree(format!(
            "tree has {} edges, need {n}",
            tree.edge_count()
        )));
    }
    let weights = tree.weights();
    let depths = tree.depths();
    let max_depth = depths.iter().copied().max().unwrap_or(0);
    let mut a = ColoredArrangement::simples(*p);
    let mut word: GroupWord = vec![];
    let mut stages = vec![a.clone()];
    // colour of the bead playing each vertex; the root has none
    let mut colour: Vec<Option<usize>> = vec![None; tree.vertex_count()];

    for depth in 0..max_depth {
        for v in (0..tree.vertex_count()).filter(|&v| depths[v] == depth) {
            let kids: Vec<usize> = tree.children(v).iter().rev().copied().collect();
            let well = well_of(&a, colour[v]);
            if well.len() + 1 != weights[v] {
                return Err(Error::Invariant(format!("vertex {v}: well holds {} beads", well.len())));
            }
            let mut leaders = vec![];
            let mut start = 0;
            for &c in &kids {
                leaders.push(well[start]);
                colour[c] = Some(well[start]);
                start += weights[c];
            }
            let mut stay: Vec<usize> = well.iter().copied().filter(|k| !leaders.contains(k)).collect();
            if stay.is_empty() {
                // only leaves below: the move would be a plain rotation
                continue;
            }
            stay.sort_unstable();
            let g = Generator::Subset(stay);
            a = act(&a, &g)?;
            word.push(g);
        }
        let (justified, w) = right_justify(&a)?;
        word.extend(w);
        let (std, perm) = justified.to_standard_form()?;
        let mut inv = vec![0; n];
        for (k, &old) in perm.iter().enumerate() {
            inv[old] = k;
        }
        for c in colour.iter_mut().flatten() {
            *c = inv[*c];
        }
        if perm.iter().enumerate().any(|(k, &v)| k != v) {
            word.push(Generator::Permutation(perm));
        }
        a = std;
        stages.push(a.clone());
    }
    Ok(Realization {
        word,
        stages,
        arrangement: a,
    })
}

/// Colours of the beads directly inside the bead of colour `outer` (or on
/// the wire), ordered by decreasing endpoint from its right ridge.
fn well_of(a: &ColoredArrangement, outer: Option<usize>) -> Vec<usize> {
    let p = a.params();
    let beads = a.beads();
    match outer {
        None => (0..a.len()).collect(),
        Some(j) => {
            let top = beads[j].i as i64;
            let mut inside: Vec<usize> = (0..a.len()).filter(|&r| p.in_well(beads[r], beads[j])).collect();
            inside.sort_by_key(|&r| p.pos(top - beads[r].i as i64));
            inside
        }
    }
}

/// Every proper subset generator, its inverse and every transposition.
pub fn default_generators(n: usize) -> Vec<Generator> {
    let mut out = vec![];
    for mask in 0..(1u64 << n) - 1 {
        let s: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        out.push(Generator::Subset(s.clone()));
        out.push(Generator::SubsetInverse(s));
    }
    for a in 0..n {
        for b in a + 1..n {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(a, b);
            out.push(Generator::Permutation(perm));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub states: Vec<ColoredArrangement>,
    /// False when the search stopped at the cap.
    pub complete: bool,
}

/// Breadth-first orbit of `start` under `gens`, stopping at `cap` states.
pub fn orbit(start: &ColoredArrangement, gens: &[Generator], cap: usize) -> Result<Orbit> {
    let mut seen: HashSet<ColoredArrangement> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut states = vec![];
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(a) = queue.pop_front() {
        states.push(a.clone());
        for g in gens {
            let b = act(&a, g)?;
            if !seen.contains(&b) {
                if seen.len() >= cap {
                    return Ok(Orbit {
                        states,
                        complete: false,
                    });
                }
                seen.insert(b.clone());
                queue.push_back(b);
            }
        }
    }
    Ok(Orbit { states, complete: true })
}
