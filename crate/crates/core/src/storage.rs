//! Storage-order policy.
//!
//! Real associative containers enumerate their contents in an order chosen
//! by the implementation. [`StorageOrder::Shuffle`] stands in for a
//! different implementation: every newly created object is laid out by a
//! permutation that depends only on the seed and on the object's identity
//! token, so equal creations are laid out identically (as they would be by
//! any one deterministic container) while the layout itself is arbitrary.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::provenance::{ProvenanceHash, HASH_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StorageOrder {
    /// Objects are stored in the order they were built.
    #[default]
    Insertion,
    /// Objects are stored in a seeded pseudo-random order.
    Shuffle(u64),
}

impl StorageOrder {
    /// Layout for an object with identity `key` and `n` slots: slot `i` of
    /// the stored object holds item `perm[i]`. `None` means keep the order.
    pub fn permutation(&self, key: &ProvenanceHash, n: usize) -> Option<Vec<usize>> {
        let StorageOrder::Shuffle(seed) = *self else {
            return None;
        };
        if n < 2 {
            return None;
        }
        let mut rng_seed = [0u8; 32];
        rng_seed[..HASH_LEN].copy_from_slice(key.as_bytes());
        rng_seed[HASH_LEN..HASH_LEN + 8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(rng_seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        Some(perm)
    }

    /// Applies [`permutation`](Self::permutation) to `items`.
    pub fn arrange<T: Clone>(&self, key: &ProvenanceHash, items: Vec<T>) -> Vec<T> {
        match self.permutation(key, items.len()) {
            Some(perm) => perm.iter().map(|&i| items[i].clone()).collect(),
            None => items,
        }
    }
}

impl fmt::Display for StorageOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StorageOrder::Insertion => f.write_str("insertion"),
            StorageOrder::Shuffle(seed) => write!(f, "shuffle:{seed}"),
        }
    }
}

impl FromStr for StorageOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "insertion" {
            return Ok(StorageOrder::Insertion);
        }
        s.strip_prefix("shuffle:")
            .and_then(|seed| seed.parse().ok())
            .map(StorageOrder::Shuffle)
            .ok_or_else(|| format!("unknown storage order {s:?} (expected insertion or shuffle:<seed>)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_is_identity() {
        let key = ProvenanceHash::fresh_from_sequence(b"k");
        assert_eq!(StorageOrder::Insertion.arrange(&key, vec![1, 2, 3]), vec![1, 2, 3]);
    }

    #[test]
    fn shuffle_is_a_deterministic_permutation() {
        let key = ProvenanceHash::fresh_from_sequence(b"k");
        let order = StorageOrder::Shuffle(7);
        let p = order.permutation(&key, 20).unwrap();
        assert_eq!(order.permutation(&key, 20).unwrap(), p);
        let mut sorted = p.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..20).collect::<Vec<_>>());
        assert_ne!(p, (0..20).collect::<Vec<_>>());
        assert_ne!(StorageOrder::Shuffle(8).permutation(&key, 20).unwrap(), p);
    }

    #[test]
    fn parse_round_trip() {
        for order in [StorageOrder::Insertion, StorageOrder::Shuffle(42)] {
            assert_eq!(order.to_string().parse::<StorageOrder>().unwrap(), order);
        }
        assert!("shuffle:x".parse::<StorageOrder>().is_err());
        assert!("random".parse::<StorageOrder>().is_err());
    }
}
