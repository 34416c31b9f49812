//! Shared inputs for the criterion benchmarks.

use g2syl::{Coords, G2Syl};

/// `n` group elements spread evenly over the coordinate enumeration.
pub fn spread_coords<'f>(group: &G2Syl<'f>, n: usize) -> Vec<Coords<'f>> {
    let order = group.order() as usize;
    let step = (order / n.max(1)).max(1);
    (0..n).map(|i| group.coords_of_index((i * step + i) % order)).collect()
}
