//! Benchmark fixtures.

use anomalion::anomaly::{TruncationData1d, TruncationData2d};
use anomalion::circuits::{builtin_action, CircuitAction};
use anomalion::crossed::fixtures::crossed_squares;
use anomalion::crossed::CrossedSquare;
use anomalion::pairing::{random_localized, LocalizedAutomorphism};
use anomalion::Window;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn ccz_action(size: u32, margin: u32) -> CircuitAction {
    builtin_action("ccz_x_2d", Window::square(size, size, margin).expect("window")).expect("builtin")
}

pub fn ccz_data(size: u32, margin: u32) -> TruncationData2d {
    TruncationData2d::build(&ccz_action(size, margin)).expect("ccz data")
}

pub fn levin_gu_action(n: u32) -> CircuitAction {
    builtin_action("levin_gu_1d", Window::chain(n, 3).expect("window")).expect("builtin")
}

pub fn levin_gu_data(n: u32) -> TruncationData1d {
    TruncationData1d::build(&levin_gu_action(n)).expect("levin-gu data")
}

/// The largest named crossed square.
pub fn big_square() -> CrossedSquare {
    crossed_squares().into_iter().max_by_key(|(_, c)| c.m.order() * c.n.order()).expect("fixtures").1
}

/// Seeded left/right localized pairs.
pub fn pairs(window: Window, n: usize, seed: u64) -> Vec<(LocalizedAutomorphism, LocalizedAutomorphism)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (random_localized(&mut rng, window, -1), random_localized(&mut rng, window, 1))).collect()
}
