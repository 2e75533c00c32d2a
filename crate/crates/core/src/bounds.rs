//! Border-rank lower bounds from flattening ranks.
//!
//! A flattening with maximal rank r0 on rank-one points bounds border
//! rank from below by rank/r0. The bound is kept as an exact rational;
//! the ceiling is taken once, and for products of bounds it is applied
//! to the product and never to the factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::GaussianRational;
use crate::tensor::{FlatteningSpec, Tensor, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(
        "koszul r0 cross-check failed: rank-1 tensor with pivot dimension {m} \
         has flattening rank {got}, expected {expect}"
    )]
    R0CrossCheck { m: usize, got: usize, expect: usize },
    #[error("empty bound list")]
    EmptyBounds,
}

/// A single flattening lower bound: `raw = rank_value / r0`,
/// `ceiled = ceil(raw)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatteningBound {
    pub flattening: String,
    pub rank_value: usize,
    pub r0: usize,
    pub raw: BigRational,
    pub ceiled: BigInt,
}

impl FlatteningBound {
    fn new(flattening: String, rank_value: usize, r0: usize) -> Self {
        let raw = BigRational::new(BigInt::from(rank_value), BigInt::from(r0));
        let ceiled = raw.ceil().to_integer();
        Self {
            flattening,
            rank_value,
            r0,
            raw,
            ceiled,
        }
    }
}

/// Lower bound on the border rank of `t` from the flattening `spec`.
///
/// r0 is 1 for standard flattenings and m-1 for the Koszul flattening
/// with pivot dimension m; the Koszul value is cross-checked at runtime
/// on a random rank-one tensor of the same shape.
pub fn flattening_lower_bound(
    t: &Tensor,
    spec: &FlatteningSpec,
) -> Result<FlatteningBound, BoundsError> {
    let mat = t.flatten(spec)?;
    let rank_value = mat.rank();
    let r0 = match spec {
        FlatteningSpec::Standard { .. } => 1,
        FlatteningSpec::Koszul { pivot_mode, .. } => {
            let m = t.dims()[*pivot_mode];
            let expect = m - 1;
            let got = koszul_rank_on_random_rank_one(t.dims(), spec)?;
            if got != expect {
                return Err(BoundsError::R0CrossCheck { m, got, expect });
            }
            expect
        }
    };
    Ok(FlatteningBound::new(spec.describe(), rank_value, r0))
}

fn koszul_rank_on_random_rank_one(
    dims: &[usize],
    spec: &FlatteningSpec,
) -> Result<usize, BoundsError> {
    // seeded so runs are reproducible; entries in 1..=9 keep the factors
    // nonzero, which is all a rank-one tensor needs for full Koszul rank
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6f737a756c);
    let factors: Vec<Vec<GaussianRational>> = dims
        .iter()
        .map(|&d| {
            (0..d)
                .map(|_| GaussianRational::from_int(rng.gen_range(1..=9)))
                .collect()
        })
        .collect();
    let z = Tensor::rank_one(&factors)?;
    Ok(z.flatten(spec)?.rank())
}

/// Product of flattening lower bounds; the ceiling is applied once to the
/// product of the raw values.
pub fn multiplicative_lower_bound(bounds: &[FlatteningBound]) -> Result<(BigRational, BigInt), BoundsError> {
    if bounds.is_empty() {
        return Err(BoundsError::EmptyBounds);
    }
    let mut raw = BigRational::one();
    for b in bounds {
        raw *= &b.raw;
    }
    let ceiled = raw.ceil().to_integer();
    Ok((raw, ceiled))
}
