//! Brute-force oracles that share no code with the enumeration routines.
//! Maps are plain `[u8; N]` image tables composed by hand.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ngroups::{enumerate_ng_groups, EnumerateOptions, NGGroup};

pub type Map<const N: usize> = [u8; N];

pub fn all_maps<const N: usize>() -> Vec<Map<N>> {
    let total = N.pow(N as u32);
    (0..total)
        .map(|mut code| {
            let mut m = [0u8; N];
            for slot in m.iter_mut().rev() {
                *slot = (code % N) as u8;
                code /= N;
            }
            m
        })
        .collect()
}

/// `(f . g)(x) = f(g(x))`.
pub fn comp<const N: usize>(f: &Map<N>, g: &Map<N>) -> Map<N> {
    let mut out = [0u8; N];
    for x in 0..N {
        out[x] = f[g[x] as usize];
    }
    out
}

pub fn is_identity_map<const N: usize>(f: &Map<N>) -> bool {
    f.iter().enumerate().all(|(i, &v)| v as usize == i)
}

pub fn naive_closure<const N: usize>(gens: &[Map<N>]) -> BTreeSet<Map<N>> {
    let mut set: BTreeSet<Map<N>> = gens.iter().copied().collect();
    loop {
        let mut added = Vec::new();
        for a in &set {
            for b in &set {
                let c = comp(a, b);
                if !set.contains(&c) {
                    added.push(c);
                }
            }
        }
        if added.is_empty() {
            return set;
        }
        set.extend(added);
    }
}

/// Group test straight from the axioms on a set already known to be closed.
/// Returns the identity when the set is a group.
pub fn group_identity<const N: usize>(set: &BTreeSet<Map<N>>) -> Option<Map<N>> {
    let e = *set
        .iter()
        .find(|e| set.iter().all(|x| comp(e, x) == *x && comp(x, e) == *x))?;
    set.iter()
        .all(|x| set.iter().any(|y| comp(x, y) == e && comp(y, x) == e))
        .then_some(e)
}

pub fn is_closed<const N: usize>(set: &BTreeSet<Map<N>>) -> bool {
    set.iter().all(|a| set.iter().all(|b| set.contains(&comp(a, b))))
}

pub fn to_maps<const N: usize>(g: &NGGroup) -> BTreeSet<Map<N>> {
    g.elements()
        .iter()
        .map(|f| {
            let mut m = [0u8; N];
            for (x, slot) in m.iter_mut().enumerate() {
                *slot = f.apply(x) as u8;
            }
            m
        })
        .collect()
}

pub fn library<const N: usize>(opts: &EnumerateOptions) -> BTreeSet<BTreeSet<Map<N>>> {
    enumerate_ng_groups(N, opts).unwrap().iter().map(to_maps::<N>).collect()
}

/// Closes every generator pair (and singleton) and keeps the nontrivial
/// groups whose identity is not the identity map.
pub fn pair_closure_oracle<const N: usize>() -> BTreeSet<BTreeSet<Map<N>>> {
    let maps = all_maps::<N>();
    let mut found = BTreeSet::new();
    for (i, a) in maps.iter().enumerate() {
        for b in &maps[i..] {
            let s = naive_closure(&[*a, *b]);
            if s.len() < 2 {
                continue;
            }
            if let Some(e) = group_identity(&s) {
                if !is_identity_map(&e) {
                    found.insert(s);
                }
            }
        }
    }
    found
}

pub fn kernel_key<const N: usize>(f: &Map<N>) -> Vec<Vec<usize>> {
    let mut blocks: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for (x, &y) in f.iter().enumerate() {
        blocks.entry(y).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
    out.sort();
    out
}

pub fn image_key<const N: usize>(f: &Map<N>) -> BTreeSet<u8> {
    f.iter().copied().collect()
}

/// Nontrivial groups inside the H-class of the idempotent `e`, found by
/// testing every subset of the maps sharing its kernel and image.
pub fn h_class_subset_oracle<const N: usize>(e: &Map<N>) -> BTreeSet<BTreeSet<Map<N>>> {
    let h: Vec<Map<N>> = all_maps::<N>()
        .into_iter()
        .filter(|f| kernel_key(f) == kernel_key(e) && image_key(f) == image_key(e))
        .collect();
    assert!(h.len() <= 24, "H-class too large for subset search");
    let mut found = BTreeSet::new();
    for mask in 1u32..(1 << h.len()) {
        let s: BTreeSet<Map<N>> = (0..h.len()).filter(|i| mask >> i & 1 == 1).map(|i| h[i]).collect();
        if s.len() >= 2 && is_closed(&s) && group_identity(&s).is_some() {
            found.insert(s);
        }
    }
    found
}

/// Arc counts `x -> f(x)` tallied directly from the maps.
pub fn arc_matrix<const N: usize>(set: &BTreeSet<Map<N>>) -> Vec<Vec<u32>> {
    let mut m = vec![vec![0u32; N]; N];
    for f in set {
        for x in 0..N {
            m[x][f[x] as usize] += 1;
        }
    }
    m
}

/// Total degree per vertex: row sum plus column sum.
pub fn total_degrees(m: &[Vec<u32>]) -> Vec<u32> {
    (0..m.len())
        .map(|v| m[v].iter().sum::<u32>() + m.iter().map(|row| row[v]).sum::<u32>())
        .collect()
}

pub fn map_of<const N: usize>(f: &ngroups::Transformation) -> Map<N> {
    std::array::from_fn(|x| f.apply(x) as u8)
}
