//! Provenance tokens.
//!
//! A [`ProvenanceHash`] names the storage order a disordered sequence was
//! born with. Two sequences whose tokens are equal have elements that line
//! up position by position; two sequences with different tokens do not, and
//! combining them elementwise is refused.
//!
//! Tokens are 160-bit SHA-1 digests of a canonical byte encoding. Derived
//! tokens (subsets, permutations) are digests of the parent token plus a
//! description of the derivation, with domain-separation prefixes so that no
//! two kinds of derivation can collide structurally.

use std::fmt;
use std::str::FromStr;

use sha1::{Digest, Sha1};

/// Number of bytes in a token.
pub const HASH_LEN: usize = 20;

/// Number of hex characters kept in the truncated form used in error messages.
pub const SHORT_HEX_LEN: usize = 12;

/// XOR mask used by [`ProvenanceHash::involute_reverse`]. Any nonzero
/// constant gives an involution without fixed points.
const REVERSE_MASK: [u8; HASH_LEN] = [
    0x72, 0x65, 0x76, 0x65, 0x72, 0x73, 0x65, 0x64, 0x2d, 0x6f, 0x72, 0x64, 0x65, 0x72, 0x2d, 0x6d,
    0x61, 0x73, 0x6b, 0x21,
];

const TAG_SUBSET: &[u8] = b"disord/subset\0";
const TAG_PERMUTATION: &[u8] = b"disord/permutation\0";

/// Opaque 160-bit identity token.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProvenanceHash([u8; HASH_LEN]);

impl ProvenanceHash {
    pub const fn from_bytes(bytes: [u8; HASH_LEN]) -> Self {
        Self(bytes)
    }

    pub const fn as_bytes(&self) -> &[u8; HASH_LEN] {
        &self.0
    }

    /// Digest of an already-canonical byte encoding. Same bytes, same token.
    pub fn fresh_from_sequence(canonical_bytes: &[u8]) -> Self {
        Self(Sha1::digest(canonical_bytes).into())
    }

    /// Token for the subsequence selected by `mask`.
    ///
    /// An all-true mask selects the whole sequence in its own order, so the
    /// parent token comes back unchanged.
    pub fn derive_subset(&self, mask: &[bool]) -> Self {
        if mask.iter().all(|&keep| keep) {
            return *self;
        }
        let mut hasher = Sha1::new();
        hasher.update(TAG_SUBSET);
        hasher.update(self.0);
        hasher.update((mask.len() as u64).to_le_bytes());
        // bit-packed mask
        for chunk in mask.chunks(8) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &bit)| acc | (u8::from(bit) << i));
            hasher.update([byte]);
        }
        Self(hasher.finalize().into())
    }

    /// Token for the rearrangement `perm` (result position `i` holds parent
    /// position `perm[i]`). The identity permutation keeps the parent token.
    ///
    /// Callers are responsible for checking that `perm` is a permutation.
    pub fn derive_permutation(&self, perm: &[usize]) -> Self {
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return *self;
        }
        let mut hasher = Sha1::new();
        hasher.update(TAG_PERMUTATION);
        hasher.update(self.0);
        hasher.update((perm.len() as u64).to_le_bytes());
        for &p in perm {
            hasher.update((p as u64).to_le_bytes());
        }
        Self(hasher.finalize().into())
    }

    /// Token for the reversed sequence. Applying it twice restores the
    /// original token, and it never maps a token to itself.
    pub fn involute_reverse(&self) -> Self {
        let mut out = self.0;
        for (byte, mask) in out.iter_mut().zip(REVERSE_MASK) {
            *byte ^= mask;
        }
        Self(out)
    }

    /// 40 lowercase hex characters.
    pub fn render_hex(&self) -> String {
        hex::encode(self.0)
    }

    /// First 12 hex characters followed by `...`, as shown in mismatch errors.
    pub fn short(&self) -> String {
        let mut s = self.render_hex();
        s.truncate(SHORT_HEX_LEN);
        s.push_str("...");
        s
    }
}

impl fmt::Display for ProvenanceHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_hex())
    }
}

impl fmt::Debug for ProvenanceHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProvenanceHash({})", self.short())
    }
}

/// Error returned when parsing a token from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid provenance hash {0:?}: expected 40 lowercase hex characters")]
pub struct ParseHashError(pub String);

impl FromStr for ProvenanceHash {
    type Err = ParseHashError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let well_formed = s.len() == 2 * HASH_LEN
            && s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b));
        if !well_formed {
            return Err(ParseHashError(s.to_string()));
        }
        let mut bytes = [0u8; HASH_LEN];
        hex::decode_to_slice(s, &mut bytes).map_err(|_| ParseHashError(s.to_string()))?;
        Ok(Self(bytes))
    }
}
