//! The Boolean hypercube `{0,1}^n`, its 1-flip neighborhood and its
//! automorphism group.
//!
//! Nodes are integers in `[0, 2^n)`. Bit `i` of the index holds variable
//! `x_{i+1}`, and the least significant bit is the rightmost character of the
//! printed bitstring, so node 1 prints as `0…01`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest dimension accepted anywhere in the crate. Node indices are `u32`
/// and rank vectors hold `2^n` entries, so anything above this is unusable.
pub const MAX_DIMENSION: u32 = 24;

/// Default bound on dimensions for which full enumeration is attempted.
pub const DEFAULT_CAP: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return domain(format!("dimension must be in 1..={MAX_DIMENSION}, got {n}"));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of nodes, `2^n`.
    pub fn nodes(self) -> usize {
        1usize << self.0
    }

    /// Number of edges, `n * 2^(n-1)`.
    pub fn edges(self) -> usize {
        self.0 as usize * (1usize << (self.0 - 1))
    }

    /// Order of the automorphism group, `2^n * n!`.
    pub fn group_order(self) -> u64 {
        (1u64 << self.0) * (1..=self.0 as u64).product::<u64>()
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Dimension::new(n)
    }
}

impl From<Dimension> for u32 {
    fn from(n: Dimension) -> u32 {
        n.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Hard cap on the dimension for operations that enumerate rank vectors or
/// automorphisms exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cap(pub u32);

impl Default for Cap {
    fn default() -> Self {
        Cap(DEFAULT_CAP)
    }
}

impl Cap {
    pub fn check(self, n: Dimension) -> Result<()> {
        if n.get() > self.0 {
            Err(Error::Capacity { n: n.get(), cap: self.0 })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node(u32);

impl Node {
    pub fn new(index: u32, n: Dimension) -> Result<Self> {
        if (index as usize) >= n.nodes() {
            return domain(format!("node {index} out of range for n = {n}"));
        }
        Ok(Node(index))
    }

    /// Parses a bitstring such as `"010"`; its length fixes the dimension.
    pub fn parse(bits: &str) -> Result<(Self, Dimension)> {
        let n = Dimension::new(bits.len() as u32)?;
        let index = u32::from_str_radix(bits, 2)
            .map_err(|_| Error::Domain(format!("not a bitstring: {bits:?}")))?;
        Ok((Node(index), n))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bitstring(self, n: Dimension) -> String {
        format!("{:0width$b}", self.0, width = n.get() as usize)
    }
}

/// The `n` nodes at Hamming distance one from `x`, ordered by flipped bit.
pub fn neighbors(x: Node, n: Dimension) -> Result<Vec<Node>> {
    let x = Node::new(x.0, n)?;
    Ok((0..n.get()).map(|bit| Node(x.0 ^ (1 << bit))).collect())
}

/// Index-level neighbor iteration used by the hot loops.
pub(crate) fn neighbor_indices(x: usize, n: Dimension) -> impl Iterator<Item = usize> {
    (0..n.get()).map(move |bit| x ^ (1 << bit))
}

/// Hypercube automorphism `x ↦ r_σ(x) ⊕ z`.
///
/// The rotation is stored as `rotation[j] = σ(j)`: output bit `j` takes input
/// bit `σ(j)`. Coordinates are permuted first, then the translation mask is
/// XOR-ed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    n: Dimension,
    translation: u32,
    rotation: Vec<u8>,
}

impl Automorphism {
    pub fn new(n: Dimension, translation: u32, rotation: Vec<u8>) -> Result<Self> {
        if translation as usize >= n.nodes() {
            return domain(format!("translation mask {translation} out of range for n = {n}"));
        }
        if rotation.len() != n.get() as usize {
            return domain(format!("rotation has {} entries, expected {n}", rotation.len()));
        }
        let mut seen = vec![false; rotation.len()];
        for &p in &rotation {
            match seen.get_mut(p as usize) {
                Some(s) if !*s => *s = true,
                _ => return domain(format!("rotation {rotation:?} is not a permutation")),
            }
        }
        Ok(Automorphism { n, translation, rotation })
    }

    pub fn identity(n: Dimension) -> Self {
        Automorphism { n, translation: 0, rotation: (0..n.get() as u8).collect() }
    }

    pub fn translation(n: Dimension, z: u32) -> Result<Self> {
        Automorphism::new(n, z, (0..n.get() as u8).collect())
    }

    pub fn rotation(n: Dimension, sigma: Vec<u8>) -> Result<Self> {
        Automorphism::new(n, 0, sigma)
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn translation_mask(&self) -> u32 {
        self.translation
    }

    pub fn permutation(&self) -> &[u8] {
        &self.rotation
    }

    fn rotate(&self, x: u32) -> u32 {
        self.rotation
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &src)| acc | (((x >> src) & 1) << j))
    }

    pub fn apply(&self, x: Node) -> Result<Node> {
        let x = Node::new(x.0, self.n)?;
        Ok(Node(self.apply_index(x.index()) as u32))
    }

    pub(crate) fn apply_index(&self, x: usize) -> usize {
        (self.rotate(x as u32) ^ self.translation) as usize
    }

    /// Materialises the action on every node: `table[x] = apply(x)`.
    pub fn action_table(&self) -> Vec<usize> {
        (0..self.n.nodes()).map(|x| self.apply_index(x)).collect()
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.n != other.n {
            return domain(format!("cannot compose automorphisms of n = {} and n = {}", self.n, other.n));
        }
        // r_a(r_b(x) ^ z_b) ^ z_a = r_a(r_b(x)) ^ r_a(z_b) ^ z_a
        let rotation = self.rotation.iter().map(|&j| other.rotation[j as usize]).collect();
        let translation = self.rotate(other.translation) ^ self.translation;
        Ok(Automorphism { n: self.n, translation, rotation })
    }

    pub fn inverse(&self) -> Automorphism {
        let mut rotation = vec![0u8; self.rotation.len()];
        for (j, &src) in self.rotation.iter().enumerate() {
            rotation[src as usize] = j as u8;
        }
        let inv = Automorphism { n: self.n, translation: 0, rotation };
        let translation = inv.rotate(self.translation);
        Automorphism { translation, ..inv }
    }

    pub fn is_identity(&self) -> bool {
        self.translation == 0 && self.rotation.iter().enumerate().all(|(j, &p)| j == p as usize)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma: String = self.rotation.iter().map(|p| char::from(b'0' + p)).collect();
        write!(f, "z={} σ={}", Node(self.translation).bitstring(self.n), sigma)
    }
}

/// Every permutation of `0..len` in lexicographic order.
fn permutations(len: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..len as u8).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// Advances `items` to the next lexicographic permutation, handling repeated
/// values. Returns `false` once the sequence is non-increasing.
pub(crate) fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let Some(pivot) = items.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let successor = items.iter().rposition(|v| *v > items[pivot]).expect("pivot has a larger suffix element");
    items.swap(pivot, successor);
    items[pivot + 1..].reverse();
    true
}

/// All `2^n * n!` automorphisms, translation-major, rotations in lexicographic
/// order. The identity comes first.
pub fn all_automorphisms(n: Dimension, cap: Cap) -> Result<Vec<Automorphism>> {
    cap.check(n)?;
    let rotations = permutations(n.get() as usize);
    let mut out = Vec::with_capacity(n.group_order() as usize);
    for z in 0..n.nodes() as u32 {
        for sigma in &rotations {
            out.push(Automorphism { n, translation: z, rotation: sigma.clone() });
        }
    }
    Ok(out)
}
