//! Singular points of a small 2D window and their missing neighbors.

use std::collections::BTreeMap;

use rn_arith::lattice::{classify, neighbors, window_enum, Neighbors, SignSelection, Window};
use rn_arith::GridParams;

fn main() -> Result<(), rn_arith::Error> {
    let p = GridParams::symmetric(2, 1)?;
    let window = Window::new(0, 1, SignSelection::Both).with_singular(true);
    let points = window_enum(p, 2, &window)?;

    let mut census: BTreeMap<usize, usize> = BTreeMap::new();
    for pt in &points {
        *census.entry(classify(pt).degree).or_default() += 1;
    }
    println!("{} points, by number of zero coordinates: {census:?}", points.len());

    for pt in points.iter().filter(|pt| pt.is_singular()).take(3) {
        for dim in 0..2 {
            let shown = match neighbors(pt, dim)? {
                Neighbors::Pair { lower, upper } => format!("{lower} .. {upper}"),
                Neighbors::NoNearestNeighbor => "none".into(),
            };
            println!("{pt} dim {dim}: {shown}");
        }
    }
    Ok(())
}
