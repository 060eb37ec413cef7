use beadlab::action::{act_logged, classify, mutate, realize_class, CollisionKind, Generator, Side};
use beadlab::arrangement::{ColoredArrangement, Item};
use beadlab::catmodel::{arc_of, diagonals_cross, phi, IndecObject};
use beadlab::plane_tree::RootedPlaneTree;
use beadlab::render::render;
use beadlab::{Bead, Circlet, Params};

fn b(l: u32, i: u32) -> Bead {
    Bead { l, i }
}

fn p31() -> Params {
    Params::new(3, 1).unwrap()
}

#[test]
fn three_beads() {
    let a = ColoredArrangement::new(p31(), vec![b(2, 7), b(1, 5), b(1, 0)]).unwrap();
    assert_eq!(a.heights(), vec![1, 2, 1]);
    let p = p31();
    assert!(!diagonals_cross(&p, arc_of(&p, b(2, 7)), arc_of(&p, b(1, 5))));
    let text = render(&p, &a.to_doc().beads);
    assert!(text.starts_with("  [=]\n #____#[=]\n"));
}

#[test]
fn partner_pair() {
    let p = p31();
    assert_eq!(p.partner(b(2, 7)), b(2, 2));
    assert_eq!(phi(&p, b(2, 7)), IndecObject { len: 2, shift: 2 });
    assert_eq!(phi(&p, b(2, 2)), phi(&p, b(2, 7)));
}

#[test]
fn circlet_reduction() {
    let a = ColoredArrangement::new(p31(), vec![b(2, 7), b(1, 5), b(1, 0)]).unwrap();
    let r = a.reduce();
    assert_eq!(
        r.items(),
        &[
            Item::Circlet(Circlet { i: 2 }),
            Item::Bead(b(1, 5)),
            Item::Bead(b(1, 0))
        ]
    );
    let p = p31();
    assert!(!p.overlaps_circlet(b(1, 5), p.circlet(7).unwrap()));
}

#[test]
fn mirrored_trees() {
    let p = Params::new(4, 1).unwrap();
    let top = ColoredArrangement::new(p, vec![b(4, 0), b(1, 6), b(2, 12), b(1, 10)]).unwrap();
    let bottom = ColoredArrangement::new(p, vec![b(4, 0), b(1, 12), b(2, 8), b(1, 6)]).unwrap();
    let (tt, bt) = (top.associated_tree().tree, bottom.associated_tree().tree);
    assert_eq!(tt.to_nested(), "[[[],[[]]]]");
    assert_eq!(
        bt.rooted_code(),
        RootedPlaneTree::from_nested("[[[[]],[]]]").unwrap().rooted_code()
    );
    // same abstract tree, different rooted plane trees
    assert_ne!(tt.rooted_code(), bt.rooted_code());
    let mut a = tt.weights();
    let mut c = bt.weights();
    a.sort_unstable();
    c.sort_unstable();
    assert_eq!(a, c);
}

#[test]
fn three_mutations() {
    let p = p31();
    assert_eq!(classify(&p, b(1, 6), b(1, 4), Side::Left), Some(CollisionKind::I));
    assert_eq!(
        mutate(&p, b(1, 6), b(1, 4), CollisionKind::I, Side::Left).unwrap(),
        b(2, 6)
    );
    assert_eq!(classify(&p, b(2, 6), b(3, 9), Side::Left), Some(CollisionKind::II));
    assert_eq!(
        mutate(&p, b(2, 6), b(3, 9), CollisionKind::II, Side::Left).unwrap(),
        b(1, 8)
    );
    assert_eq!(classify(&p, b(3, 9), b(2, 9), Side::Left), Some(CollisionKind::III));
    assert_eq!(
        mutate(&p, b(3, 9), b(2, 9), CollisionKind::III, Side::Left).unwrap(),
        b(1, 3)
    );
}

#[test]
fn composite_move() {
    let p = Params::new(5, 1).unwrap();
    let a = ColoredArrangement::new(p, vec![b(5, 0), b(1, 5), b(2, 11), b(1, 10), b(1, 15)]).unwrap();
    let (out, log) = act_logged(&a, &Generator::Subset(vec![0, 1, 3, 4])).unwrap();
    let kinds: Vec<CollisionKind> = log.iter().map(|r| r.kind).collect();
    assert_eq!(
        kinds,
        vec![
            CollisionKind::I,
            CollisionKind::III,
            CollisionKind::II,
            CollisionKind::III
        ]
    );
    let path: Vec<Bead> = log.iter().map(|r| r.after).collect();
    assert_eq!(path, vec![b(3, 10), b(2, 7), b(3, 15), b(2, 12)]);
    assert_eq!(out.beads(), &[b(5, 0), b(1, 5), b(2, 12), b(1, 10), b(1, 15)]);
    assert!(p.in_well(b(1, 10), b(2, 12)));
}

#[test]
fn realization_stages() {
    let p = Params::new(4, 1).unwrap();
    let tree = RootedPlaneTree::from_nested("[[[],[[]]]]").unwrap();
    let r = realize_class(&p, &tree).unwrap();
    assert_eq!(r.stages.len(), 4);
    assert_eq!(r.stages[0], ColoredArrangement::simples(p));
    let one = &r.stages[1];
    let mut types: Vec<u32> = one.beads().iter().map(|x| x.l).collect();
    types.sort_unstable();
    assert_eq!(types, vec![1, 1, 1, 4]);
    assert_eq!(one.heights().iter().filter(|&&h| h == 2).count(), 3);
    let drawn = ColoredArrangement::new(p, vec![b(4, 12), b(2, 11), b(1, 10), b(1, 5)]).unwrap();
    assert_eq!(r.stages[2].to_free(), drawn.to_free());
    assert_eq!(r.arrangement.associated_tree().tree.rooted_code(), tree.rooted_code());
}
