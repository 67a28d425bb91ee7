//! Counter-based derivation of independent substream keys from a master seed.
//!
//! Every random source in the crate is keyed by `(master seed, domain, index)`
//! so results do not depend on evaluation order or thread scheduling.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

/// Domains keep keys for different purposes disjoint under one master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Datum = 1,
    Replicate = 2,
    Rank = 3,
    Sampler = 4,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn substream_key(seed: u64, domain: Domain, index: u64) -> u64 {
    let a = mix(seed.wrapping_add(GOLDEN.wrapping_mul(domain as u64)));
    mix(a ^ mix(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Generator for substream `(seed, domain, index)`.
pub fn stream_rng(seed: u64, domain: Domain, index: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(substream_key(seed, domain, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_distinct_across_indices_and_domains() {
        let mut keys: Vec<u64> = (0..10_000)
            .flat_map(|i| {
                [
                    substream_key(42, Domain::Datum, i),
                    substream_key(42, Domain::Replicate, i),
                ]
            })
            .collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), 20_000);
    }

    #[test]
    fn keys_depend_on_seed() {
        assert_ne!(
            substream_key(1, Domain::Datum, 0),
            substream_key(2, Domain::Datum, 0)
        );
        assert_eq!(
            substream_key(7, Domain::Rank, 3),
            substream_key(7, Domain::Rank, 3)
        );
    }
}
