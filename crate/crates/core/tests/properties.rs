use entrobox::ensemble::{ginibre_density, haar_unitary, trial_rng};
use entrobox::qstate::{
    quantum_strong_subadditivity, quantum_subadditivity, reduce, von_neumann, DensityMatrix,
    ReductionPlan,
};
use entrobox::simplex::{
    admissible_shapes, chain_rule_check, reshape, shannon, strong_subadditivity_gap,
    subadditivity_gap, tsallis, Keep3, ProbVec, TableShape,
};
use entrobox::tomography::{spin_tomogram_axis, tomogram};
use proptest::prelude::*;
use rand::SeedableRng;

fn simplex_point(dim: usize) -> impl Strategy<Value = ProbVec> {
    proptest::collection::vec(0.0f64..1.0, dim).prop_filter_map("zero vector", |raw| {
        let total: f64 = raw.iter().sum();
        (total > 1e-3)
            .then(|| ProbVec::new(&raw.iter().map(|x| x / total).collect::<Vec<_>>(), 0.0).unwrap())
    })
}

fn shape_for(dim: usize) -> impl Strategy<Value = TableShape> {
    let divisors: Vec<usize> = (1..=dim).filter(|d| dim.is_multiple_of(*d)).collect();
    proptest::sample::select(divisors).prop_map(move |a| TableShape::new(&[a, dim / a]).unwrap())
}

proptest! {
    #[test]
    fn reshape_flatten_roundtrip((p, s) in (1usize..=12).prop_flat_map(|d| (simplex_point(d), shape_for(d)))) {
        let t = reshape(&p, &s).unwrap();
        prop_assert_eq!(t.flatten(), p);
    }

    #[test]
    fn marginal_consistency(p in simplex_point(12), which in 0usize..3) {
        let shapes = [[2, 2, 3], [2, 3, 2], [3, 2, 2]];
        let t = reshape(&p, &TableShape::new(&shapes[which]).unwrap()).unwrap();
        let m12 = match t.marginal3(Keep3::First2).unwrap() {
            entrobox::simplex::Marginal::Table(t) => t,
            _ => unreachable!(),
        };
        let via_pair = m12.marginal2(1).unwrap();
        let direct = t.marginal3(Keep3::Middle).unwrap();
        for (a, b) in via_pair.values().iter().zip(direct.entries()) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn entropy_bounds(p in (1usize..=12).prop_flat_map(simplex_point)) {
        let h = shannon(&p).value;
        prop_assert!(h >= 0.0);
        prop_assert!(h <= (p.dim() as f64).ln() + 1e-12);
    }

    #[test]
    fn tsallis_tends_to_shannon(p in (2usize..=8).prop_flat_map(simplex_point)) {
        let h = shannon(&p).value;
        for q in [1.0 - 1e-4, 1.0 + 1e-4] {
            prop_assert!((tsallis(&p, q).unwrap().value - h).abs() <= 1e-3);
        }
    }

    #[test]
    fn subadditivity_on_every_shape(p in (4usize..=12).prop_flat_map(simplex_point)) {
        for s in admissible_shapes(p.dim(), 2).unwrap() {
            prop_assert!(subadditivity_gap(&p, &s).unwrap().gap >= -1e-9);
        }
        for s in admissible_shapes(p.dim(), 3).unwrap() {
            prop_assert!(strong_subadditivity_gap(&p, &s).unwrap().gap >= -1e-9);
        }
    }
}

#[test]
fn entropy_equality_cases() {
    for d in 1..=8 {
        assert_eq!(shannon(&ProbVec::delta(d, d - 1).unwrap()).value, 0.0);
        assert!((shannon(&ProbVec::uniform(d).unwrap()).value - (d as f64).ln()).abs() < 1e-14);
    }
}

#[test]
fn reduction_preserves_trace_and_positivity() {
    for i in 0..200 {
        let rho = ginibre_density(8, &mut trial_rng(700, i)).unwrap();
        for kept in [vec![0, 1], vec![1, 2], vec![1]] {
            let red = reduce(&rho, &ReductionPlan::new(&[2, 2, 2], &kept).unwrap()).unwrap();
            assert!((red.matrix().trace().re - 1.0).abs() < 1e-14);
            let raw = entrobox::linalg::hermitian_eigen(red.matrix()).unwrap();
            assert!(raw.values.iter().all(|&l| l >= -1e-10));
        }
    }
}

#[test]
fn von_neumann_is_unitarily_invariant_and_padding_invariant() {
    for i in 0..200 {
        let mut rng = trial_rng(701, i);
        let d = 2 + (i as usize % 5);
        let rho = ginibre_density(d, &mut rng).unwrap();
        let u = haar_unitary(d, &mut rng).unwrap();
        let rotated =
            DensityMatrix::new(u.matrix() * rho.matrix() * u.matrix().adjoint(), 1e-12).unwrap();
        let s = von_neumann(&rho).unwrap().value;
        assert!((von_neumann(&rotated).unwrap().value - s).abs() <= 1e-10);
        assert!((von_neumann(&rho.pad(d + 3).unwrap()).unwrap().value - s).abs() <= 1e-12);
    }
}

#[test]
fn quantum_inequalities_on_random_states() {
    for i in 0..500 {
        let mut rng = trial_rng(702, i);
        let rho4 = ginibre_density(4, &mut rng).unwrap();
        assert!(quantum_subadditivity(&rho4, [2, 2]).unwrap().passed);
        let rho6 = ginibre_density(6, &mut rng).unwrap();
        assert!(quantum_subadditivity(&rho6, [2, 3]).unwrap().passed);
        assert!(quantum_subadditivity(&rho6, [3, 2]).unwrap().passed);
        assert!(
            quantum_strong_subadditivity(&rho6, [2, 2, 2])
                .unwrap()
                .passed
        );
    }
}

#[test]
fn tomograms_are_probability_vectors() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(703);
    for _ in 0..2000 {
        let rho = ginibre_density(4, &mut rng).unwrap();
        let u = haar_unitary(4, &mut rng).unwrap();
        let t = tomogram(&rho, &u).unwrap();
        assert!(t.probabilities.values().iter().all(|&w| w >= 0.0));
        assert!((t.probabilities.values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn spin_three_halves_tomograms_obey_subadditivity_and_chain_rule() {
    let rho = ginibre_density(4, &mut trial_rng(704, 0)).unwrap();
    let mut rng = trial_rng(704, 1);
    let two_two = TableShape::new(&[2, 2]).unwrap();
    for _ in 0..1000 {
        let theta = rand::Rng::random_range(&mut rng, 0.0..=std::f64::consts::PI);
        let phi = rand::Rng::random_range(&mut rng, 0.0..2.0 * std::f64::consts::PI);
        let w = spin_tomogram_axis(&rho, theta, phi).unwrap().probabilities;
        assert!(subadditivity_gap(&w, &two_two).unwrap().gap >= -1e-9);
        assert!(chain_rule_check(&w).unwrap().passed);
    }
}
