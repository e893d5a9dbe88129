use std::f64::consts::LN_2;

use subshift_core::bigmath::ln_biguint;
use subshift_core::enumeration::{bicolored_bound, bicolored_count, count_dp, count_layers, entropy_estimate};
use subshift_core::pressure::{base_pressure, partition_function, required_tau, Potential};
use subshift_core::{ShiftParams, Tau};

fn p(nu: u32, tau: Tau, colors: u32) -> ShiftParams {
    ShiftParams::new(nu, tau, colors).unwrap()
}

#[test]
fn entropy_approaches_log_nu_above_threshold() {
    for params in [p(2, Tau::integer(2), 2), p(2, Tau::integer(3), 3)] {
        let e = entropy_estimate(500, &params).unwrap();
        assert!(e.rate >= LN_2 && e.rate <= LN_2 + 0.05, "{params:?}: {}", e.rate);
    }
}

#[test]
fn entropy_exceeds_log_nu_below_threshold() {
    let e = entropy_estimate(500, &p(2, Tau::new(1, 4).unwrap(), 2)).unwrap();
    assert!(e.rate > LN_2 + 0.1, "{}", e.rate);
}

#[test]
fn bicolored_growth() {
    let params = p(2, Tau::integer(2), 2);
    let layers = count_layers(400, &params);
    let bound = bicolored_bound(&params).unwrap();
    for n in [100usize, 200, 400] {
        let nf = n as f64;
        let rate = ln_biguint(&layers.multi[n]) / nf;
        assert!(rate <= bound + 5.0 * nf.ln() / nf, "n = {n}: {rate}");
        assert_eq!(layers.multi[n], bicolored_count(n, &params));
        assert_eq!(layers.total[n], count_dp(n, &params));
    }
}

#[test]
fn pressure_on_the_shift() {
    let params = p(3, Tau::new(3, 2).unwrap(), 2);
    let f = Potential::new(3, 1, vec![0.0, -0.05, -0.1]).unwrap();
    assert!(Tau::new(3, 2).unwrap().ratio() >= required_tau(&f, 3).unwrap().ratio());
    let p1 = base_pressure(&f).value;
    let r = partition_function(400, &f, &params).unwrap();
    assert!(r.rate >= p1 && r.rate <= p1 + 0.05, "{} vs {p1}", r.rate);
    assert!(r.stratum_residual < 1e-9);
    let nf = 400.0f64;
    assert!(r.log_z_multi / nf <= r.sup_f + bicolored_bound(&params).unwrap() + 5.0 * nf.ln() / nf);
}
