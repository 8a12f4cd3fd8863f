//! End-to-end drive of the public API: weights in from JSON, biorthogonal
//! family out, kernels evaluated, a correlation number produced, and the
//! Monte Carlo lane cross-checking it. Everything here goes through the
//! crate surface only.

use cauchy_core::bimoments::bimoment_table_exact;
use cauchy_core::bops::{build_family, recurrence_coeffs};
use cauchy_core::correlations::{h_kernels, partition_function, KernelRoute};
use cauchy_core::measures::Weight;
use cauchy_core::montecarlo::{harnad_orlov_check, laguerre_partition_mc, sample_gas};
use cauchy_core::scalar::{Bf, Cx};

#[test]
fn weights_to_correlations_to_sampler() {
    let alpha = Weight::from_json_str(r#"{"power": 0, "poly": ["0", "1"], "support": [["0", null]]}"#)
        .expect("weight parses");
    let beta = alpha.clone();

    // exact channel: partition function ladder from the bimoment minors
    let table = bimoment_table_exact(&alpha, &beta, 3).expect("table builds");
    let z2 = partition_function(&table, 2).expect("Z_2");
    assert!((z2.to_f64() - 1.0 / 6.0).abs() < 1e-12, "Z_2 = {}", z2.to_f64());

    // family and kernels at N = 2, both evaluation routes
    let ma = alpha.moments_exact(3).expect("alpha moments");
    let mb = beta.moments_exact(3).expect("beta moments");
    let mut fam = build_family(&table, 3, &ma, &mb).expect("family builds");
    recurrence_coeffs(&mut fam, &table).expect("recurrence ladder");
    let x = Cx::from_f64s(0.9, 0.0);
    let y = Cx::from_f64s(1.4, 0.0);
    let sum = h_kernels(&fam, &alpha, &beta, 2, KernelRoute::Sum).expect("sum engine");
    let gamma = h_kernels(&fam, &alpha, &beta, 2, KernelRoute::Gamma).expect("gamma engine");
    let a = sum.h00(&x, &y).expect("h00 sum");
    let b = gamma.h00(&x, &y).expect("h00 gamma");
    assert!((&a - &b).abs().to_f64() < 1e-12);

    // a correlation number and its Monte Carlo cross-check
    let r = sum
        .correlation(&[Bf::from_f64(0.9)], &[Bf::from_f64(1.4)])
        .expect("R^(1,1)")
        .to_f64();
    assert!(r > 0.0);
    let (z_mc, se) = laguerre_partition_mc(2, 300, 1500, 19).expect("MC partition estimate");
    assert!((z_mc - 1.0 / 6.0).abs() < 3.0 * se, "MC Z_2 = {z_mc} ± {se}");

    // sampler stream is usable and positive
    let samples = sample_gas(&alpha, &beta, 2, 500, 3).expect("chain runs");
    assert_eq!(samples.len(), 450);
    assert!(samples.iter().all(|s| s.x.iter().chain(&s.y).all(|&v| v > 0.0)));

    // unitary-group reduction at desk scale
    let check = harnad_orlov_check(&[1.0, 2.0], &[1.0, 3.0], 20_000, 8).expect("haar check");
    assert!(check.pass, "gap {} vs se {}", check.rel_gap, check.std_error);
}
