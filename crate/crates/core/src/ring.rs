//! Modular wire arithmetic: parameters, beads, circlets and cyclic intervals.
//!
//! Positions live in `Z/PZ` with `P = (n+1)(d+2) - 2`. A bead of type `l` with
//! right endpoint `i` occupies the closed arc `[i - l(d+2), i]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Wire parameters `(n, d)` with the derived wire length `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    n: u32,
    d: u32,
    p: u32,
}

/// A bead: type `l` in `1..=n`, right endpoint `i` in `0..P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bead {
    pub l: u32,
    pub i: u32,
}

/// A glued pair of middle-type beads. Only exists for odd `n`.
/// `i` is the canonical index in `0..P/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Circlet {
    #[serde(rename = "circlet")]
    pub i: u32,
}

/// Closed cyclic interval `[right - len, right]` on a wire of length `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub right: u32,
    pub len: u32,
    pub modulus: u32,
}

impl Interval {
    pub fn left(&self) -> u32 {
        wrap(self.right as i64 - self.len as i64, self.modulus)
    }

    pub fn contains(&self, x: u32) -> bool {
        wrap(x as i64 - self.left() as i64, self.modulus) <= self.len
    }

    /// Point-set containment of `self` in `other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        let m = self.modulus;
        if other.len + 1 >= m {
            return true;
        }
        if self.len + 1 >= m {
            return false;
        }
        let off = wrap(self.left() as i64 - other.left() as i64, m);
        off + self.len <= other.len
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.contains(other.left()) || other.contains(self.left())
    }
}

pub(crate) fn wrap(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

impl Params {
    pub fn new(n: i64, d: i64) -> Result<Self> {
        if n < 2 || d < 0 || n > 64 || d > 1 << 16 {
            return Err(Error::InvalidParams { n, d });
        }
        let p = (n + 1) * (d + 2) - 2;
        Ok(Params {
            n: n as u32,
            d: d as u32,
            p: p as u32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Wire length `P`.
    pub fn wire_len(&self) -> u32 {
        self.p
    }

    /// The weight `w = -(d+1)`.
    pub fn w(&self) -> i64 {
        -(self.d as i64 + 1)
    }

    /// Length of a type-1 bead.
    pub fn unit(&self) -> u32 {
        self.d + 2
    }

    /// Largest type allowed in a reduced arrangement.
    pub fn max_reduced_type(&self) -> u32 {
        self.n.div_ceil(2)
    }

    /// The self-partnered type `(n+1)/2`, present only for odd `n`.
    pub fn middle_type(&self) -> Option<u32> {
        (self.n % 2 == 1).then_some(self.n.div_ceil(2))
    }

    pub fn pos(&self, x: i64) -> u32 {
        wrap(x, self.p)
    }

    pub fn bead(&self, l: i64, i: i64) -> Result<Bead> {
        if l < 1 || l > self.n as i64 {
            return Err(Error::InvalidBead { l, i, n: self.n });
        }
        Ok(Bead {
            l: l as u32,
            i: self.pos(i),
        })
    }

    pub fn check_bead(&self, b: Bead) -> Result<Bead> {
        if b.l < 1 || b.l > self.n || b.i >= self.p {
            return Err(Error::InvalidBead {
                l: b.l as i64,
                i: b.i as i64,
                n: self.n,
            });
        }
        Ok(b)
    }

    /// All `n·P` beads, by type then position.
    pub fn beads(&self) -> impl Iterator<Item = Bead> + '_ {
        (1..=self.n).flat_map(move |l| (0..self.p).map(move |i| Bead { l, i }))
    }

    pub fn len_of(&self, b: Bead) -> u32 {
        b.l * self.unit()
    }

    pub fn left_end(&self, b: Bead) -> u32 {
        self.pos(b.i as i64 - self.len_of(b) as i64)
    }

    pub fn interval(&self, b: Bead) -> Interval {
        Interval {
            right: b.i,
            len: self.len_of(b),
            modulus: self.p,
        }
    }

    /// Interior of the bead minus its two ridges.
    pub fn well(&self, b: Bead) -> Interval {
        Interval {
            right: self.pos(b.i as i64 - 1),
            len: self.len_of(b) - 2,
            modulus: self.p,
        }
    }

    /// Left and right ridges.
    pub fn ridges(&self, b: Bead) -> [Interval; 2] {
        let left = self.left_end(b);
        [
            Interval {
                right: self.pos(left as i64 + 1),
                len: 1,
                modulus: self.p,
            },
            Interval {
                right: b.i,
                len: 1,
                modulus: self.p,
            },
        ]
    }

    pub fn shift(&self, b: Bead, k: i64) -> Bead {
        Bead {
            l: b.l,
            i: self.pos(b.i as i64 + k),
        }
    }

    pub fn partner(&self, b: Bead) -> Bead {
        Bead {
            l: self.n + 1 - b.l,
            i: self.pos(b.i as i64 - self.len_of(b) as i64 + 1),
        }
    }

    /// Whether two beads overlap, i.e. cannot coexist in an arrangement.
    ///
    /// With `r <= l`, `B_l(i)` and `B_r(j)` are disjoint-or-nested exactly
    /// when neither inner ridge point `i - l(d+2) + 1`, `i` of the larger bead
    /// lies in `[j - r(d+2) + 1, j]`.
    pub fn overlaps(&self, a: Bead, b: Bead) -> bool {
        let (big, small) = if a.l >= b.l { (a, b) } else { (b, a) };
        let probe = Interval {
            right: small.i,
            len: self.len_of(small) - 1,
            modulus: self.p,
        };
        let inner_left = self.pos(self.left_end(big) as i64 + 1);
        probe.contains(inner_left) || probe.contains(big.i)
    }

    /// Whether `inner` lies in the well of `outer`.
    pub fn in_well(&self, inner: Bead, outer: Bead) -> bool {
        inner != outer && self.interval(inner).is_subset_of(&self.well(outer))
    }

    pub fn check_circlet_type(&self, l: u32) -> Result<u32> {
        match self.middle_type() {
            Some(m) if m == l => Ok(m),
            _ => Err(Error::NotCircletType { l, n: self.n }),
        }
    }

    pub fn circlet(&self, i: i64) -> Result<Circlet> {
        self.check_circlet_type(self.max_reduced_type())?;
        Ok(Circlet { i: wrap(i, self.p / 2) })
    }

    pub fn circlet_of(&self, b: Bead) -> Result<Circlet> {
        self.check_circlet_type(b.l)?;
        Ok(Circlet { i: b.i % (self.p / 2) })
    }

    pub fn check_circlet(&self, c: Circlet) -> Result<Circlet> {
        self.check_circlet_type(self.max_reduced_type())?;
        if c.i >= self.p / 2 {
            return Err(Error::InvalidCirclet {
                i: c.i as i64,
                half: self.p / 2,
            });
        }
        Ok(c)
    }

    /// The two middle-type beads glued into a circlet, smaller position first.
    pub fn circlet_members(&self, c: Circlet) -> [Bead; 2] {
        let m = self.max_reduced_type();
        [
            Bead { l: m, i: c.i },
            Bead {
                l: m,
                i: c.i + self.p / 2,
            },
        ]
    }

    /// A bead avoids a circlet iff it avoids both members.
    pub fn overlaps_circlet(&self, b: Bead, c: Circlet) -> bool {
        let [x, y] = self.circlet_members(c);
        self.overlaps(b, x) || self.overlaps(b, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: i64, d: i64) -> Params {
        Params::new(n, d).unwrap()
    }

    /// Definitional test: the smaller bead sits inside the well of the larger
    /// one, or in the arc outside the larger one.
    fn overlaps_def(p: &Params, a: Bead, b: Bead) -> bool {
        let (big, small) = if a.l >= b.l { (a, b) } else { (b, a) };
        if big == small {
            return true;
        }
        let s = p.interval(small);
        let inside = s.is_subset_of(&p.well(big));
        let outside_len = p.wire_len() as i64 - p.len_of(big) as i64;
        let outside = outside_len >= 0
            && s.is_subset_of(&Interval {
                right: p.left_end(big),
                len: outside_len as u32,
                modulus: p.wire_len(),
            });
        !(inside || outside)
    }

    #[test]
    fn wire_lengths() {
        assert_eq!(pr(3, 1).wire_len(), 10);
        assert_eq!(pr(4, 1).wire_len(), 13);
        assert_eq!(pr(2, 0).wire_len(), 4);
        assert_eq!(pr(3, 1).w(), -2);
        assert!(Params::new(1, 0).is_err());
        assert!(Params::new(3, -1).is_err());
    }

    #[test]
    fn partner_examples() {
        let p = pr(3, 1);
        assert_eq!(p.partner(Bead { l: 2, i: 7 }), Bead { l: 2, i: 2 });
        assert_eq!(p.partner(Bead { l: 1, i: 0 }), Bead { l: 3, i: 8 });
    }

    #[test]
    fn overlap_examples() {
        let p = pr(3, 1);
        let b = |l, i| Bead { l, i };
        // nested and adjacent pairs from the three-bead example
        assert!(!p.overlaps(b(2, 7), b(1, 5)));
        assert!(!p.overlaps(b(2, 7), b(1, 0)));
        assert!(!p.overlaps(b(1, 5), b(1, 0)));
        // sitting on a ridge
        assert!(!p.overlaps(b(2, 7), b(1, 6)));
        assert!(p.overlaps(b(2, 7), b(1, 7)));
        assert!(p.overlaps(b(1, 0), b(1, 2)));
        assert!(p.overlaps(b(1, 3), b(1, 3)));
    }

    #[test]
    fn overlap_matches_definition() {
        for (n, d) in [(2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (4, 1), (5, 1), (5, 2)] {
            let p = pr(n, d);
            let all: Vec<Bead> = p.beads().collect();
            for &a in &all {
                for &b in &all {
                    assert_eq!(p.overlaps(a, b), overlaps_def(&p, a, b), "{n},{d} {a:?} {b:?}");
                    assert_eq!(p.overlaps(a, b), p.overlaps(b, a));
                }
            }
        }
    }

    #[test]
    fn partner_is_involution_meeting_on_ridges() {
        for (n, d) in [(2, 0), (3, 1), (4, 2), (5, 1)] {
            let p = pr(n, d);
            for b in p.beads() {
                let q = p.partner(b);
                assert_eq!(p.partner(q), b);
                assert_eq!(b.l + q.l, n as u32 + 1);
                // the union covers the wire and the overlap is exactly the two ridges
                let (x, y) = (p.interval(b), p.interval(q));
                let [rl, rr] = p.ridges(b);
                for t in 0..p.wire_len() {
                    assert!(x.contains(t) || y.contains(t));
                    assert_eq!(x.contains(t) && y.contains(t), rl.contains(t) || rr.contains(t));
                }
            }
        }
    }

    #[test]
    fn full_circle_bead_at_d0() {
        let p = pr(3, 0);
        let b = Bead { l: 3, i: 2 };
        assert_eq!(p.len_of(b), p.wire_len());
        assert_eq!(p.left_end(b), b.i);
    }

    #[test]
    fn circlets() {
        let p = pr(3, 1);
        let c = p.circlet_of(Bead { l: 2, i: 7 }).unwrap();
        assert_eq!(c, Circlet { i: 2 });
        assert_eq!(p.circlet_members(c), [Bead { l: 2, i: 2 }, Bead { l: 2, i: 7 }]);
        for i in 0..10 {
            let b = Bead { l: 2, i };
            assert_eq!(p.circlet_of(b).unwrap(), p.circlet_of(p.partner(b)).unwrap());
        }
        assert!(pr(4, 1).circlet(0).is_err());
        assert!(p.circlet_of(Bead { l: 1, i: 0 }).is_err());
    }

    #[test]
    fn intervals() {
        let iv = Interval {
            right: 1,
            len: 3,
            modulus: 10,
        };
        assert_eq!(iv.left(), 8);
        assert!(iv.contains(9) && iv.contains(0) && iv.contains(1) && iv.contains(8));
        assert!(!iv.contains(2) && !iv.contains(7));
        let inner = Interval {
            right: 0,
            len: 1,
            modulus: 10,
        };
        assert!(inner.is_subset_of(&iv));
        assert!(!iv.is_subset_of(&inner));
    }

    #[test]
    fn well_and_ridges() {
        let p = pr(3, 1);
        let b = Bead { l: 2, i: 7 };
        assert_eq!(p.well(b).left(), 2);
        assert_eq!(p.well(b).right, 6);
        let [l, r] = p.ridges(b);
        assert_eq!((l.left(), l.right), (1, 2));
        assert_eq!((r.left(), r.right), (6, 7));
        assert!(p.in_well(Bead { l: 1, i: 5 }, b));
        assert!(p.in_well(Bead { l: 1, i: 6 }, b));
        assert!(!p.in_well(Bead { l: 1, i: 7 }, b));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn shift_commutes_with_partner(n in 2i64..7, d in 0i64..4, l in 1u32..7, i in 0u32..200, k in -50i64..50) {
                let p = pr(n, d);
                let b = p.bead((l as i64 - 1) % n + 1, i as i64).unwrap();
                prop_assert_eq!(p.partner(p.shift(b, k)), p.shift(p.partner(b), k));
                prop_assert_eq!(p.shift(p.shift(b, k), -k), b);
            }

            #[test]
            fn overlap_is_shift_invariant(n in 2i64..6, d in 0i64..3, a in 0u32..1000, b in 0u32..1000, k in -40i64..40) {
                let p = pr(n, d);
                let all: Vec<Bead> = p.beads().collect();
                let (x, y) = (all[a as usize % all.len()], all[b as usize % all.len()]);
                prop_assert_eq!(p.overlaps(x, y), p.overlaps(p.shift(x, k), p.shift(y, k)));
            }
        }
    }
}
