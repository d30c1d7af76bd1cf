#![allow(dead_code)]

use heavyseg_core::{Element, LengthBounds, PrefixIndex};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct Instance {
    pub elements: Vec<Element>,
    pub idx: PrefixIndex,
    pub bounds: LengthBounds,
}

impl Instance {
    pub fn new(elements: Vec<Element>, bounds: LengthBounds) -> Self {
        let idx = PrefixIndex::from_elements(elements.iter().copied()).unwrap();
        Self { elements, idx, bounds }
    }
}

/// Integer values in `[-10, 10]`, `n` in `[1, max_n]`, bounds drawn inside the
/// total width. Weighted instances use widths that are multiples of 1/4 so
/// every sum and cross-product stays exact.
pub fn random_instance<R: Rng>(rng: &mut R, max_n: usize, weighted: bool) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let elements: Vec<Element> = (0..n)
        .map(|_| {
            let v = rng.gen_range(-10..=10) as f64;
            let w = if weighted { rng.gen_range(1..=8) as f64 / 4.0 } else { 1.0 };
            Element::new(v, w)
        })
        .collect();
    let bounds = if weighted {
        let total_quarters: u32 = elements.iter().map(|e| (e.width * 4.0) as u32).sum();
        let l = rng.gen_range(1..=total_quarters);
        let u = rng.gen_range(l..=total_quarters);
        LengthBounds::new(l as f64 / 4.0, u as f64 / 4.0).unwrap()
    } else {
        let l = rng.gen_range(1..=n);
        let u = rng.gen_range(l..=n);
        LengthBounds::new(l as f64, u as f64).unwrap()
    };
    Instance::new(elements, bounds)
}

/// Uniform widths with `U - L` kept small.
pub fn narrow_instance<R: Rng>(rng: &mut R, max_n: usize, max_spread: usize) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let elements: Vec<Element> = (0..n).map(|_| Element::unit(rng.gen_range(-10..=10) as f64)).collect();
    let l = rng.gen_range(1..=n);
    let u = (l + rng.gen_range(0..=max_spread)).min(n);
    Instance::new(elements, LengthBounds::new(l as f64, u as f64).unwrap())
}

pub fn pairs(v: &[heavyseg_core::ScoredSegment]) -> Vec<(usize, usize)> {
    v.iter().map(|s| (s.start(), s.end())).collect()
}

pub fn sorted_pairs(v: &[heavyseg_core::ScoredSegment]) -> Vec<(usize, usize)> {
    let mut p = pairs(v);
    p.sort();
    p
}
