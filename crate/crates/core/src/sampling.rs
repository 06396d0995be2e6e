//! Seeded instance generators for randomized sweeps.
//!
//! All sweeps draw from `rand_pcg::Pcg64`, whose output stream is fixed by
//! the seed on every platform.

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use crate::channel::{make_channel, ChannelInstance};

pub fn rng(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

fn from_db(snr_db: &[f64], inr_db: &[f64]) -> ChannelInstance {
    let snr: Vec<f64> = snr_db.iter().map(|&v| db_to_linear(v)).collect();
    let inr: Vec<f64> = inr_db.iter().map(|&v| db_to_linear(v)).collect();
    make_channel(snr.len(), &snr, &inr).expect("sampled parameters are valid")
}

/// Weak instance: `SNR_dB ~ U[0, 40]`, `INR_dB ~ U[-10, SNR_dB]` per user.
pub fn weak_instance<R: Rng>(rng: &mut R, k: usize) -> ChannelInstance {
    let snr_db: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..=40.0)).collect();
    let inr_db: Vec<f64> = snr_db
        .iter()
        .map(|&s| rng.random_range(-10.0..=s))
        .collect();
    from_db(&snr_db, &inr_db)
}

/// Weak instance with every `INR >= 1`: `INR_dB ~ U[0, SNR_dB]`.
pub fn weak_instance_unit_inr<R: Rng>(rng: &mut R, k: usize) -> ChannelInstance {
    let snr_db: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..=40.0)).collect();
    let inr_db: Vec<f64> = snr_db.iter().map(|&s| rng.random_range(0.0..=s)).collect();
    from_db(&snr_db, &inr_db)
}

/// Strong instance: `SNR_dB ~ U[0, 40]`, `INR_dB ~ U[SNR_dB, SNR_dB + 30]`.
pub fn strong_instance<R: Rng>(rng: &mut R, k: usize) -> ChannelInstance {
    let snr_db: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..=40.0)).collect();
    let inr_db: Vec<f64> = snr_db
        .iter()
        .map(|&s| rng.random_range(s..=s + 30.0))
        .collect();
    from_db(&snr_db, &inr_db)
}

/// Very strong instance: `INR_i = (1 + SNR_{i-1}) SNR_i * 10^(u/10)` with
/// `u ~ U[0, 10]`.
pub fn very_strong_instance<R: Rng>(rng: &mut R, k: usize) -> ChannelInstance {
    let snr: Vec<f64> = (0..k)
        .map(|_| db_to_linear(rng.random_range(0.0..=30.0)))
        .collect();
    let inr: Vec<f64> = (0..k)
        .map(|i| {
            let prev = snr[(i + k - 1) % k];
            (1.0 + prev) * snr[i] * db_to_linear(rng.random_range(0.0..=10.0))
        })
        .collect();
    make_channel(k, &snr, &inr).expect("sampled parameters are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{classify_regime, RegimeLabel};

    #[test]
    fn samplers_hit_their_regimes() {
        let mut r = rng(7);
        for k in 2..6 {
            for _ in 0..50 {
                assert_eq!(
                    classify_regime(&weak_instance(&mut r, k)),
                    RegimeLabel::Weak
                );
                assert!(classify_regime(&strong_instance(&mut r, k)).is_strong());
                assert_eq!(
                    classify_regime(&very_strong_instance(&mut r, k)),
                    RegimeLabel::VeryStrong
                );
                let c = weak_instance_unit_inr(&mut r, k);
                assert!(c.inr().iter().all(|&x| x >= 1.0));
            }
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a = weak_instance(&mut rng(42), 4);
        let b = weak_instance(&mut rng(42), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn db_round_trip() {
        for db in [-10.0, 0.0, 4.77, 11.76, 80.0] {
            let back = linear_to_db(db_to_linear(db));
            assert!((back - db).abs() <= 1e-12 * db.abs().max(1.0));
        }
    }
}
