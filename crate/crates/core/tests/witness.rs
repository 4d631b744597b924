use linchrom_core::colorings::centre_of;
use linchrom_core::gridcore::{delete_lines, random_spec, Axis, RandomSpecParams};
use linchrom_core::seed::{rng_from, split_seed};
use linchrom_core::witness::{build_witness, default_d, verify_witness_path, WitnessError, WitnessParams};
use linchrom_core::{Colouring, Pseudogrid};

#[test]
fn tiny_instances_fail_cleanly() {
    let mut rng = rng_from(1);
    for k in 1..=4 {
        let pg = Pseudogrid::build(&random_spec(&RandomSpecParams::square(k), &mut rng).unwrap()).unwrap();
        let phi = Colouring::random(pg.vertex_count(), 2, &mut rng);
        let params = WitnessParams { r: 9, d: 1, budget: 4, seed: 0 };
        let err = build_witness(&pg, &phi, &params).unwrap_err();
        assert!(matches!(err, WitnessError::TooManyColours { .. }), "{err}");
    }
}

#[test]
fn telemetry_respects_the_pruning_bound() {
    for t in 0..6u64 {
        let seed = split_seed(2, &[t]);
        let k = 96;
        let pg = Pseudogrid::build(&random_spec(&RandomSpecParams::square(k), &mut rng_from(seed)).unwrap()).unwrap();
        // One colour is rare, so pruning must remove lines.
        let mut phi: Vec<u32> = Colouring::random(pg.vertex_count(), 2, &mut rng_from(seed ^ 1)).colours().to_vec();
        phi[pg.vertex_count() / 2] = 2;
        let phi = Colouring::from_colours(phi);
        let d = default_d(k, 3, 9);
        let report = build_witness(&pg, &phi, &WitnessParams { r: 9, d, budget: 32, seed }).unwrap();
        let tele = report.telemetry;
        assert!(tele.k_prime as i64 >= k as i64 - 3 * (d as i64 + 18));
        assert!(tele.k_prime < k as u64);
        // Two surviving colours, two members each.
        assert_eq!(tele.s, 4);
        assert!(verify_witness_path(&pg, &phi, &report.path));
        assert!(!report.path.iter().any(|&v| phi.colour(v) == 2));
    }
}

#[test]
fn witness_on_a_pseudogrid_with_deleted_lines_uses_its_ids() {
    let base = Pseudogrid::plain(90, 90).unwrap();
    let rows = delete_lines(&base, Axis::Row, &[10, 40, 41]).unwrap();
    let pg = delete_lines(&rows, Axis::Column, &[5, 60, 70]).unwrap();
    assert_eq!(pg.grid().width(), 87);
    let phi = Colouring::random(pg.vertex_count(), 2, &mut rng_from(4));
    let params = WitnessParams { r: 9, d: default_d(87, 2, 9), budget: 16, seed: 4 };
    let report = build_witness(&pg, &phi, &params).unwrap();
    assert!(pg.graph().is_simple_path(&report.path));
    assert!(centre_of(&phi, &report.path).is_none());
}
