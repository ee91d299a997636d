mod common;

use common::{worst_gradient_error, GradCase};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subvec::embed::{Combiner, Mode};

#[test]
fn analytic_gradients_match_finite_differences() {
    for (name, worst) in worst_gradient_error(150, 11, 1e-5) {
        assert!(worst < 1e-4, "{name}: relative error {worst}");
    }
}

#[test]
fn step_gradient_covers_every_parameter() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let case = GradCase::random(&mut rng, Mode::Dm, Combiner::Concat);
    let g = case.analytic_gradient();
    assert_eq!(g.len(), case.numeric_gradient(1e-5).len());
    assert!(g.iter().any(|x| *x != 0.0));
}
