use mabbob::calibration::{calibrate, CalibrationConfig};
use mabbob::seeding::rng_from;
use mabbob::{
    combine_pairwise, Aggregator, ComponentProblem, FunctionId, InstanceId, ManyAffineProblem, ScaleTable, Term,
    WeightVector, NUM_FUNCTIONS,
};
use rand::Rng;

fn points(seed: u64, n: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut rng = rng_from(&[seed]);
    (0..n)
        .map(|_| (0..dim).map(|_| rng.random_range(-5.0..=5.0)).collect())
        .collect()
}

/// Indices sorted by value, ties broken by index.
fn order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    idx
}

fn assert_same_weak_order(a: &[f64], b: &[f64]) {
    let oa = order(a);
    for w in oa.windows(2) {
        let (i, j) = (w[0], w[1]);
        if a[i] < a[j] {
            assert!(
                b[i] <= b[j],
                "order differs at {i},{j}: {} {} vs {} {}",
                a[i],
                a[j],
                b[i],
                b[j]
            );
        } else {
            assert_eq!(b[i], b[j], "tie differs at {i},{j}");
        }
    }
}

#[test]
fn two_term_problem_orders_points_like_pairwise() {
    let dim = 3;
    let pts = points(10, 1000, dim);
    let mut rng = rng_from(&[11]);
    let scale = ScaleTable::equal();
    for _ in 0..10 {
        let (f1, f2) = loop {
            let (a, b) = (rng.random_range(1..=24u32), rng.random_range(1..=24u32));
            if a != b {
                break (a, b);
            }
        };
        let (i1, i2) = (rng.random_range(1..=50u32), rng.random_range(1..=50u32));
        let w: f64 = rng.random_range(0.05..0.95);
        let first = ComponentProblem::from_ids(f1, i1, dim).unwrap();
        let terms = vec![
            Term {
                fid: FunctionId::new(f1).unwrap(),
                iid: InstanceId::new(i1).unwrap(),
                weight: w,
            },
            Term {
                fid: FunctionId::new(f2).unwrap(),
                iid: InstanceId::new(i2).unwrap(),
                weight: 1.0 - w,
            },
        ];
        let many = ManyAffineProblem::from_terms(terms, first.optimum_location(), dim, &scale).unwrap();
        let pair = combine_pairwise(f1, i1, f2, i2, w, dim).unwrap();
        let a: Vec<f64> = pts.iter().map(|x| many.evaluate(x).unwrap()).collect();
        let b: Vec<f64> = pts.iter().map(|x| pair.evaluate(x).unwrap()).collect();
        assert_same_weak_order(&a, &b);
        assert_same_weak_order(&b, &a);
    }
}

#[test]
fn single_component_preserves_the_component_order() {
    let dim = 2;
    let pts = points(12, 1000, dim);
    let table = ScaleTable::paper();
    for fid in FunctionId::all() {
        let iid = InstanceId::new(3).unwrap();
        let component = ComponentProblem::new(fid, iid, dim).unwrap();
        let x_opt = component.optimum_location().to_vec();
        let problem =
            ManyAffineProblem::new(&WeightVector::single(fid), &[iid; NUM_FUNCTIONS], &x_opt, dim, &table).unwrap();
        let many: Vec<f64> = pts.iter().map(|x| problem.evaluate(x).unwrap()).collect();
        let raw: Vec<f64> = pts
            .iter()
            .map(|x| component.evaluate_raw(x).unwrap().max(1e-8))
            .collect();
        assert_same_weak_order(&raw, &many);
        assert_eq!(order(&many)[0], order(&raw)[0], "{fid}");
    }
}

#[test]
fn calibration_is_reproducible() {
    let config = CalibrationConfig {
        dims: vec![2, 3],
        n_samples: 2000,
        seed: 5,
        ..Default::default()
    };
    let a = calibrate(&config).unwrap();
    let b = calibrate(&config).unwrap();
    assert_eq!(a.table, b.table);
    assert_eq!(a.per_dim, b.per_dim);
}

/// Factors at 5, 10 and 20 dimensions stay within 25% of each other.
#[test]
fn factors_are_stable_across_dimensions() {
    let config = CalibrationConfig {
        dims: vec![5, 10, 20],
        n_samples: 20_000,
        seed: 1,
        aggregator: Aggregator::MidRange,
        ..Default::default()
    };
    let calibration = calibrate(&config).unwrap();
    let mut unstable = Vec::new();
    for (fid, row) in FunctionId::all().zip(&calibration.per_dim) {
        let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi > 1.25 * lo {
            unstable.push(format!("{fid} {row:.2?}"));
        }
    }
    assert!(unstable.is_empty(), "drifting more than 25%: {}", unstable.join("; "));
}
