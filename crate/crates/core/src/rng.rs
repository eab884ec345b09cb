//! Counter-based random streams.
//!
//! A master seed is expanded into a ChaCha key; each independent unit of
//! work (one Monte Carlo trial, one rotation draw, ...) gets its own ChaCha
//! stream number. The stream number is an injective packing of
//! `(purpose, p, index)`, so two different work units can never share a
//! stream and results do not depend on scheduling.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P_BITS: u32 = 24;
const INDEX_BITS: u32 = 32;

/// Largest dimension that can be encoded in a [`StreamId`].
pub const MAX_STREAM_P: usize = (1 << P_BITS) - 1;
/// Largest per-dimension index that can be encoded in a [`StreamId`].
pub const MAX_STREAM_INDEX: u64 = (1 << INDEX_BITS) - 1;

/// What a stream is used for. Distinct purposes never share streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Purpose {
    Trial = 1,
    Rotation = 2,
    MarchenkoPastur = 3,
    Auxiliary = 4,
}

/// Identifier of one ChaCha stream under a master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StreamId(u64);

impl StreamId {
    /// Packs `(purpose, p, index)` into 8 + 24 + 32 bits.
    ///
    /// Panics if `p` or `index` do not fit; callers validate dimensions first.
    pub fn new(purpose: Purpose, p: usize, index: u64) -> Self {
        assert!(p <= MAX_STREAM_P, "p = {p} does not fit in a stream id");
        assert!(
            index <= MAX_STREAM_INDEX,
            "index = {index} does not fit in a stream id"
        );
        StreamId(((purpose as u64) << (P_BITS + INDEX_BITS)) | ((p as u64) << INDEX_BITS) | index)
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key_from_seed(master_seed: u64) -> [u8; 32] {
    let mut state = master_seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// Deterministic source of uniform and standard normal variates.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
    id: StreamId,
}

impl GaussianStream {
    pub fn new(master_seed: u64, id: StreamId) -> Self {
        let mut rng = ChaCha8Rng::from_seed(key_from_seed(master_seed));
        rng.set_stream(id.raw());
        GaussianStream {
            rng,
            spare: None,
            id,
        }
    }

    pub fn id(&self) -> StreamId {
        self.id
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal variate via the Marsaglia polar method.
    ///
    /// Variates come in pairs; the second one is cached, so consumption order
    /// is fixed by call order.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * f);
                return u * f;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn same_seed_same_stream() {
        let id = StreamId::new(Purpose::Trial, 10, 3);
        let mut a = GaussianStream::new(42, id);
        let mut b = GaussianStream::new(42, id);
        for _ in 0..100 {
            assert_eq!(a.standard_normal().to_bits(), b.standard_normal().to_bits());
        }
    }

    #[test]
    fn different_streams_differ() {
        let mut a = GaussianStream::new(42, StreamId::new(Purpose::Trial, 10, 3));
        let mut b = GaussianStream::new(42, StreamId::new(Purpose::Trial, 10, 4));
        let mut c = GaussianStream::new(43, StreamId::new(Purpose::Trial, 10, 3));
        let x = a.uniform();
        assert_ne!(x, b.uniform());
        assert_ne!(x, c.uniform());
    }

    #[test]
    fn stream_ids_never_collide() {
        let mut seen = HashSet::with_capacity(1_000_000);
        let purposes = [
            Purpose::Trial,
            Purpose::Rotation,
            Purpose::MarchenkoPastur,
            Purpose::Auxiliary,
        ];
        for (k, purpose) in purposes.iter().enumerate() {
            for p in [1usize, 2, 3, 50, 400, MAX_STREAM_P] {
                for i in 0..41_667u64 {
                    let index = if k % 2 == 0 { i } else { MAX_STREAM_INDEX - i };
                    assert!(seen.insert(StreamId::new(*purpose, p, index)));
                }
            }
        }
        assert!(seen.len() >= 1_000_000);
    }

    #[test]
    fn normal_moments() {
        let mut s = GaussianStream::new(7, StreamId::new(Purpose::Auxiliary, 0, 0));
        let n = 200_000;
        let (mut m1, mut m2) = (0.0, 0.0);
        for _ in 0..n {
            let z = s.standard_normal();
            m1 += z;
            m2 += z * z;
        }
        let mean = m1 / n as f64;
        let var = m2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.015);
    }

    #[test]
    fn uniform_range() {
        let mut s = GaussianStream::new(1, StreamId::new(Purpose::Auxiliary, 1, 1));
        for _ in 0..10_000 {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
