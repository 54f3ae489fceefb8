//! Subsets of ray indices as `u64` bitmasks.

pub type Mask = u64;

/// Largest number of variables a mask can hold.
pub const MAX_BITS: usize = 64;

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn full(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn indices(mask: Mask) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn size(mask: Mask) -> usize {
    mask.count_ones() as usize
}

pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Drops every mask that is contained in another one, and duplicates.
pub fn maximal_only(masks: &[Mask]) -> Vec<Mask> {
    let mut out: Vec<Mask> = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        let dominated = masks
            .iter()
            .enumerate()
            .any(|(j, &o)| o != m && is_subset(m, o) || (o == m && j < i));
        if !dominated {
            out.push(m);
        }
    }
    out
}

/// Drops every mask that contains another one, and duplicates.
pub fn minimal_only(masks: &[Mask]) -> Vec<Mask> {
    let mut out: Vec<Mask> = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        let dominated = masks
            .iter()
            .enumerate()
            .any(|(j, &o)| o != m && is_subset(o, m) || (o == m && j < i));
        if !dominated {
            out.push(m);
        }
    }
    out
}

/// Sort key giving the lexicographic order on sorted index lists.
pub fn lex_key(mask: Mask) -> Vec<usize> {
    indices(mask)
}
