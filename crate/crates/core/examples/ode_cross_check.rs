//! Cross-check the analytic solution bases against an adaptive Runge–Kutta
//! integration of Bu = 0, one random operator per discriminant case.
//!
//! Run with `cargo run --release --example ode_cross_check`.

use rand::rngs::StdRng;
use rand::SeedableRng;
use twistreg::operators::{solution_basis, DeltaCase};
use twistreg::verify::{ode_cross_check, random_combo, random_symbol};

fn main() {
    let mut rng = StdRng::seed_from_u64(7);
    for case in [
        DeltaCase::D2Nonzero,
        DeltaCase::D1Nonzero,
        DeltaCase::AllZeroQuad,
    ] {
        let b = random_symbol(case, &mut rng);
        let (c1, c2) = random_combo(&mut rng);
        let basis = solution_basis(&b).unwrap();
        let dev = ode_cross_check(&basis, c1, c2, (-6.0, 6.0), 1e-10).unwrap();
        println!("{case:?}: max relative deviation on [−6, 6] = {dev:.3e}");
        assert!(dev <= 1e-6);
    }
}
