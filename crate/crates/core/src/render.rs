//! Deterministic ASCII pictures of arrangements.
//!
//! Column `c` is the wire unit `[c, c+1]`. Row 1 (printed last, just above
//! the axis) holds height-1 beads; row `h` holds height-`h` beads. Glyphs:
//!
//! * type-1 bead: `[`, then `=` for each inner unit, then `]`
//! * larger bead: `#` on each ridge unit, `_` on each well unit
//! * circlet: its own bottom row, `#` on the two ridge units, `_` elsewhere;
//!   beads sit one row higher
//!
//! Below the grid: a `-` axis, a row of unit indices mod 10, then one legend
//! line per tuple entry.

use crate::arrangement::{heights, Item};
use crate::ring::{Bead, Params};

fn paint_bead(p: &Params, row: &mut [char], b: Bead) {
    let len = p.len_of(b) as i64;
    let left = p.left_end(b) as i64;
    for k in 0..len {
        let c = p.pos(left + k) as usize;
        row[c] = match (b.l, k) {
            (1, 0) => '[',
            (1, k) if k == len - 1 => ']',
            (1, _) => '=',
            (_, 0) => '#',
            (_, k) if k == len - 1 => '#',
            _ => '_',
        };
    }
}

pub fn render(p: &Params, items: &[Item]) -> String {
    let width = p.wire_len() as usize;
    let beads: Vec<(usize, Bead)> = items
        .iter()
        .enumerate()
        .filter_map(|(k, it)| match it {
            Item::Bead(b) => Some((k, *b)),
            Item::Circlet(_) => None,
        })
        .collect();
    let circlet = items.iter().find_map(|it| match it {
        Item::Circlet(c) => Some(*c),
        Item::Bead(_) => None,
    });
    let plain: Vec<Bead> = beads.iter().map(|&(_, b)| b).collect();
    let h = heights(p, &plain);
    let base = usize::from(circlet.is_some());
    let rows = h.iter().copied().max().unwrap_or(0) + base;
    let mut grid = vec![vec![' '; width]; rows];
    if let Some(c) = circlet {
        let row = &mut grid[0];
        row.iter_mut().for_each(|x| *x = '_');
        let half = p.wire_len() as i64 / 2;
        for r in [c.i as i64 - 1, c.i as i64 + half - 1] {
            row[p.pos(r) as usize] = '#';
        }
    }
    for (idx, &b) in plain.iter().enumerate() {
        paint_bead(p, &mut grid[h[idx] - 1 + base], b);
    }
    let mut out = String::new();
    for row in grid.iter().rev() {
        let line: String = row.iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&"-".repeat(width));
    out.push('\n');
    out.extend((0..width).map(|c| char::from(b'0' + (c % 10) as u8)));
    out.push('\n');
    let mut bead_height = beads
        .iter()
        .zip(&h)
        .map(|(&(k, _), &hh)| (k, hh))
        .collect::<Vec<_>>()
        .into_iter();
    for (k, it) in items.iter().enumerate() {
        match it {
            Item::Bead(b) => {
                let (_, hh) = bead_height.next().expect("one height per bead");
                out.push_str(&format!("{k}: B_{}({}) height {}\n", b.l, b.i, hh + base));
            }
            Item::Circlet(c) => out.push_str(&format!("{k}: C({}) height 1\n", c.i)),
        }
    }
    out
}
