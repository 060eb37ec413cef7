//! Indecomposable objects `M_l(s)`, the bead map, Hom dimensions,
//! orthogonality and the polygon-diagonal picture.

use serde::{Deserialize, Serialize};

use crate::arrangement::Item;
use crate::error::{Error, Result};
use crate::ring::{wrap, Bead, Params};

/// `M_len(shift)`, with `len <= floor((n+1)/2)` and `shift` reduced modulo
/// the period of `len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndecObject {
    pub len: u32,
    pub shift: u32,
}

/// Shift period of objects of length `len`: `P/2` for the middle length, else `P`.
pub fn period(p: &Params, len: u32) -> u32 {
    if p.middle_type() == Some(len) {
        p.wire_len() / 2
    } else {
        p.wire_len()
    }
}

pub fn object(p: &Params, len: u32, shift: i64) -> Result<IndecObject> {
    if len < 1 || len > p.max_reduced_type() {
        return Err(Error::InvalidBead {
            l: len as i64,
            i: shift,
            n: p.max_reduced_type(),
        });
    }
    Ok(IndecObject {
        len,
        shift: wrap(shift, period(p, len)),
    })
}

/// Every object, by length then shift.
pub fn objects(p: &Params) -> Vec<IndecObject> {
    (1..=p.max_reduced_type())
        .flat_map(|len| (0..period(p, len)).map(move |shift| IndecObject { len, shift }))
        .collect()
}

/// `X(k)`.
pub fn suspend(p: &Params, x: IndecObject, k: i64) -> IndecObject {
    IndecObject {
        len: x.len,
        shift: wrap(x.shift as i64 + k, period(p, x.len)),
    }
}

/// The object of a bead. A bead and its partner give the same object.
pub fn phi(p: &Params, b: Bead) -> IndecObject {
    let b = if b.l > p.max_reduced_type() { p.partner(b) } else { b };
    IndecObject {
        len: b.l,
        shift: wrap(b.i as i64, period(p, b.l)),
    }
}

pub fn phi_item(p: &Params, it: Item) -> IndecObject {
    match it {
        Item::Bead(b) => phi(p, b),
        Item::Circlet(c) => IndecObject {
            len: p.max_reduced_type(),
            shift: c.i,
        },
    }
}

/// `dim Hom(M_l, M_r(s))` for `r <= l`.
fn hom_down(p: &Params, l: u32, r: u32, s: i64) -> u32 {
    let m = period(p, r) as i64;
    let (u, n) = (p.unit() as i64, p.n() as i64);
    let s = s.rem_euclid(m);
    let (l, r) = (l as i64, r as i64);
    let low = (1..=r).any(|k| (u * (r - k)).rem_euclid(m) == s);
    let high = (1 + l - r..=l).any(|k| (u * (n + 1 - k) - 1).rem_euclid(m) == s);
    u32::from(low || high)
}

/// `dim Hom(X, Y)`, which is 0 or 1. For a longer target the Calabi-Yau
/// duality `Hom(X, Y) = Hom(Y, X[w])` reduces to the shorter-target case.
pub fn hom_dim(p: &Params, x: IndecObject, y: IndecObject) -> u32 {
    if y.len <= x.len {
        hom_down(p, x.len, y.len, y.shift as i64 - x.shift as i64)
    } else {
        hom_down(p, y.len, x.len, x.shift as i64 + p.w() - y.shift as i64)
    }
}

/// `Hom(X, Y[-m]) = Hom(Y, X[-m]) = 0` for `0 <= m <= d`, except
/// `Hom(X, X) = 1` at `m = 0` when `X = Y`.
pub fn independent(p: &Params, x: IndecObject, y: IndecObject) -> bool {
    (0..=p.d() as i64).all(|m| {
        let want = u32::from(m == 0 && x == y);
        hom_dim(p, x, suspend(p, y, -m)) == want && hom_dim(p, y, suspend(p, x, -m)) == want
    })
}

pub fn is_elementary(p: &Params, x: IndecObject) -> bool {
    independent(p, x, x)
}

pub fn is_orthogonal_tuple(p: &Params, xs: &[IndecObject]) -> bool {
    xs.len() == p.n() as usize
        && xs.iter().enumerate().all(|(a, &x)| {
            xs.iter().enumerate().all(|(b, &y)| {
                if a == b {
                    is_elementary(p, x)
                } else {
                    x != y && independent(p, x, y)
                }
            })
        })
}

/// Every ordered orthogonal `n`-tuple, by backtracking over all objects.
pub fn orthogonal_tuples(p: &Params, cap: usize) -> Result<Vec<Vec<IndecObject>>> {
    let elems: Vec<IndecObject> = objects(p).into_iter().filter(|&x| is_elementary(p, x)).collect();
    let k = elems.len();
    let ok: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| a != b && independent(p, elems[a], elems[b])).collect())
        .collect();
    let n = p.n() as usize;
    let mut out = vec![];
    let mut cur: Vec<usize> = vec![];
    fn rec(
        n: usize,
        cap: usize,
        elems: &[IndecObject],
        ok: &[Vec<bool>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<IndecObject>>,
    ) -> Result<()> {
        if cur.len() == n {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(cur.iter().map(|&a| elems[a]).collect());
            return Ok(());
        }
        for a in 0..elems.len() {
            if cur.iter().all(|&b| ok[a][b]) {
                cur.push(a);
                rec(n, cap, elems, ok, cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    rec(n, cap, &elems, &ok, &mut cur, &mut out)?;
    Ok(out)
}

/// A chord of the `P`-gon, endpoints sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal {
    pub a: u32,
    pub b: u32,
}

impl Diagonal {
    pub fn new(x: u32, y: u32) -> Self {
        Diagonal {
            a: x.min(y),
            b: x.max(y),
        }
    }
}

/// Chord joining the two inner ridge points of a bead.
pub fn arc_of(p: &Params, b: Bead) -> Diagonal {
    Diagonal::new(b.i, p.pos(b.i as i64 - p.len_of(b) as i64 + 1))
}

/// Endpoints separated by `k(d+2) - 1` edges for some `k` in `1..=n`.
pub fn is_diagonal(p: &Params, dg: Diagonal) -> bool {
    let gap = dg.b - dg.a;
    let u = p.unit();
    dg.b < p.wire_len()
        && gap > 0
        && [gap, p.wire_len() - gap]
            .iter()
            .any(|&g| (g + 1) % u == 0 && (1..=p.n()).contains(&((g + 1) / u)))
}

fn strictly_between(p: &Params, x: u32, from: u32, to: u32) -> bool {
    let off = p.pos(x as i64 - from as i64);
    off > 0 && off < p.pos(to as i64 - from as i64)
}

/// Interior crossing: endpoints strictly interleave. Shared endpoints do not cross.
pub fn diagonals_cross(p: &Params, x: Diagonal, y: Diagonal) -> bool {
    let shared = x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b;
    !shared && strictly_between(p, y.a, x.a, x.b) != strictly_between(p, y.b, x.a, x.b)
}

/// Crossing or sharing an endpoint.
pub fn diagonals_intersect(p: &Params, x: Diagonal, y: Diagonal) -> bool {
    x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b || diagonals_cross(p, x, y)
}
