//! Independent oracles for the region generators and the projection.

use proptest::prelude::*;
use rand::Rng;
use rand_pcg::Pcg64;

use cyclic_ic::fourier_motzkin::{
    eliminate_variable, polymatroid_system, project_in_order, remove_redundant, to_rate_system,
    FmSystem,
};
use cyclic_ic::polyhedra::{maximize, prune, row_is_redundant};
use cyclic_ic::sampling::{rng, weak_instance, weak_instance_unit_inr};
use cyclic_ic::*;

fn etw(ch: &ChannelInstance) -> HkParams {
    hk_params(ch, &etw_split(ch)).unwrap()
}

fn fm_rows(sys: &FmSystem) -> Vec<(&[i32], f64)> {
    sys.rows
        .iter()
        .map(|r| (r.coeffs.as_slice(), r.rhs))
        .collect()
}

/// Random points of an FM system: LP vertices and their convex mixes.
fn points_in(sys: &FmSystem, r: &mut Pcg64, n: usize) -> Vec<Vec<f64>> {
    let dim = sys.dim();
    let rows = fm_rows(sys);
    let mut verts = Vec::new();
    for _ in 0..(3 * dim + 10) {
        let dir: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..1.0)).collect();
        let res = maximize(dim, &rows, &dir);
        if res.is_optimal() {
            verts.push(res.witness);
        }
    }
    assert!(!verts.is_empty());
    (0..n)
        .map(|t| {
            if t < verts.len() {
                return verts[t].clone();
            }
            let a = &verts[r.random_range(0..verts.len())];
            let b = &verts[r.random_range(0..verts.len())];
            let w: f64 = r.random_range(0.0..1.0);
            a.iter()
                .zip(b)
                .map(|(x, y)| w * x + (1.0 - w) * y)
                .collect()
        })
        .collect()
}

/// Feasible interval of variable `v` at `x` (the value at `v` ignored).
fn interval(sys: &FmSystem, v: usize, x: &[f64]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for row in &sys.rows {
        let rest: f64 = row
            .coeffs
            .iter()
            .zip(x)
            .enumerate()
            .filter(|(j, _)| *j != v)
            .map(|(_, (&c, &xi))| c as f64 * xi)
            .sum();
        let c = row.coeffs[v] as f64;
        let slack = row.rhs - rest;
        if c > 0.0 {
            hi = hi.min(slack / c);
        } else if c < 0.0 {
            lo = lo.max(slack / c);
        } else if slack < -1e-9 {
            return (1.0, 0.0);
        }
    }
    (lo, hi)
}

#[test]
fn lift_and_project_at_every_step() {
    let mut r = rng(11);
    for k in [2, 3, 4] {
        for _ in 0..3 {
            let hk = etw(&weak_instance(&mut r, k));
            let mut sys = polymatroid_system(&hk, k).unwrap();
            for t in 0..k {
                let name = format!("T_{}", t + 1);
                let v = sys.var_index(&name).unwrap();
                let next = remove_redundant(&eliminate_variable(&sys, &name).unwrap());
                // soundness: feasible points stay feasible once the variable is dropped
                for p in points_in(&sys, &mut r, 1000) {
                    assert!(sys.contains(&p, 1e-9));
                    let mut q = p.clone();
                    q.remove(v);
                    assert!(next.contains(&q, 1e-8), "projection lost a point");
                }
                // completeness: feasible points of the projection lift
                for q in points_in(&next, &mut r, 1000) {
                    let mut p = q.clone();
                    p.insert(v, 0.0);
                    let (lo, hi) = interval(&sys, v, &p);
                    assert!(lo <= hi + 1e-8, "no lift for {name}: [{lo}, {hi}]");
                }
                assert_eq!(next.vars.len() + 1, sys.vars.len());
                sys = next;
            }
        }
    }
}

#[test]
fn elimination_order_does_not_matter() {
    let mut r = rng(12);
    let perms3 = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for _ in 0..5 {
        let hk = etw(&weak_instance(&mut r, 3));
        let base = to_rate_system(&project_in_order(&hk, 3, &perms3[0]).unwrap());
        for p in &perms3[1..] {
            let other = to_rate_system(&project_in_order(&hk, 3, p).unwrap());
            assert!(regions_equal(&base, &other).unwrap(), "order {p:?}");
        }
    }
    for _ in 0..5 {
        let hk = etw(&weak_instance(&mut r, 5));
        let base = to_rate_system(&project_in_order(&hk, 5, &[0, 1, 2, 3, 4]).unwrap());
        let other = to_rate_system(&project_in_order(&hk, 5, &[3, 0, 4, 2, 1]).unwrap());
        assert!(regions_equal(&base, &other).unwrap());
    }
}

#[test]
fn all_private_slice_is_a_box() {
    let hk = etw(&make_channel(3, &[100.0, 40.0, 10.0], &[20.0, 5.0, 2.0]).unwrap());
    let sys = polymatroid_system(&hk, 3).unwrap();
    for i in 0..3 {
        let cap = hk.a[i].min(hk.d[i]).min(hk.e[i]).min(hk.g[i]);
        let mut obj = vec![0.0; 6];
        obj[i] = 1.0;
        // pin every T_j to zero
        let mut rows = fm_rows(&sys);
        let pins: Vec<Vec<i32>> = (0..3)
            .map(|j| {
                let mut c = vec![0; 6];
                c[3 + j] = 1;
                c
            })
            .collect();
        rows.extend(pins.iter().map(|c| (c.as_slice(), 0.0)));
        let res = maximize(6, &rows, &obj);
        assert!((res.value - cap).abs() < 1e-9);
    }
}

#[test]
fn closed_form_families_are_facets_for_generic_instances() {
    let mut r = rng(13);
    for _ in 0..20 {
        let hk = etw(&weak_instance_unit_inr(&mut r, 3));
        let sys = achievable_region(&hk, 3).unwrap();
        let pruned = prune(&sys);
        assert!(regions_equal(&sys, &pruned).unwrap());
        // every family keeps at least its tightest row, unless implied
        for c in sys.families() {
            if pruned.min_rhs(c).is_none() {
                let idx = sys.rows.iter().position(|row| row.coeffs == c).unwrap();
                assert!(row_is_redundant(&sys, idx));
            }
        }
    }
}

#[test]
fn partial_order_and_gap_zero_on_equal_regions() {
    let mut r = rng(14);
    for _ in 0..30 {
        let ch = weak_instance(&mut r, 3);
        let hk = etw(&ch);
        let ach = achievable_region(&hk, 3).unwrap();
        let ts = ts_region_3(&hk).unwrap();
        let out = outer_region(&outer_params(&ch), 3).unwrap();
        for s in [&ach, &ts, &out] {
            assert!(region_includes(s, s).unwrap());
        }
        assert!(region_includes(&ts, &ach).unwrap());
        assert!(region_includes(&out, &ts).unwrap());
        assert!(region_includes(&out, &ach).unwrap());
        let fm = cyclic_ic::fourier_motzkin::project_to_rates(&hk, 3).unwrap();
        assert!(certified_gap(&fm, &ach).unwrap() <= 1e-7);
        assert!(certified_gap(&ach, &ach).unwrap() <= 1e-9);
    }
}

#[test]
fn lp_duality_on_generated_regions() {
    let mut r = rng(15);
    for _ in 0..50 {
        let k = r.random_range(2..=5);
        let ch = weak_instance(&mut r, k);
        let sys = outer_region(&outer_params(&ch), k).unwrap();
        let c: Vec<f64> = (0..k).map(|_| r.random_range(0.0..2.0)).collect();
        let res = lp_max(&sys, &c).unwrap();
        assert!(res.is_optimal());
        let by: f64 = sys
            .rows
            .iter()
            .zip(&res.dual)
            .map(|(row, y)| row.rhs * y)
            .sum();
        assert!((by - res.value).abs() < 1e-7);
        for (j, cj) in c.iter().enumerate() {
            let aty: f64 = sys
                .rows
                .iter()
                .zip(&res.dual)
                .map(|(row, y)| row.coeffs[j] as f64 * y)
                .sum();
            assert!((aty - cj).abs() < 1e-7);
        }
        assert!(contains_point(&sys, &res.witness).unwrap());
        let ones = vec![1.0; k];
        let sym = symmetric_max(&sys).unwrap();
        assert!(sym <= lp_max(&sys, &ones).unwrap().value / k as f64 + 1e-9);
    }
}

#[test]
fn families_are_closed_under_cyclic_relabeling() {
    let mut r = rng(16);
    for k in 2..=6 {
        let hk = etw(&weak_instance(&mut r, k));
        let sys = achievable_region(&hk, k).unwrap();
        let shifted = sys.cyclic_shift();
        let mut a: Vec<Vec<i32>> = sys.families().iter().map(|c| c.to_vec()).collect();
        let mut b: Vec<Vec<i32>> = shifted.families().iter().map(|c| c.to_vec()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn small_region_examples() {
    let two = make_channel(2, &[15.0, 15.0], &[3.0, 3.0]).unwrap();
    let hk = etw(&two);
    let sys = achievable_region(&hk, 2).unwrap();
    let want = (hk.e[0] + hk.e[1]).min(hk.r[0]).min(hk.r[1]);
    assert!((lp_max(&sys, &[1.0, 1.0]).unwrap().value - want).abs() < 1e-9);
    let strong = strong_region(&make_channel(3, &[10.0; 3], &[10.0; 3]).unwrap()).unwrap();
    let want = 11f64.log2().min(21f64.log2() / 2.0);
    assert!((symmetric_max(&strong).unwrap() - want).abs() < 1e-12);
    let out = outer_region(&outer_params(&two), 2).unwrap();
    assert!(!contains_point(&out, &[outer_params(&two).lambda[0] + 1.0, 0.0]).unwrap());
    assert!(contains_point(&sys, &[0.0, 0.0]).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // With every INR >= 1 the ETW private part sits at the noise floor, so
    // each quantity loses exactly one bit to the doubled noise.
    #[test]
    fn etw_matches_unit_noise_forms(seed in any::<u64>(), k in 2usize..7) {
        let ch = weak_instance_unit_inr(&mut rng(seed), k);
        let hk = etw(&ch);
        for i in 0..k {
            let n = (i + 1) % k;
            let (s, inr) = (ch.snr()[i], ch.inr()[n]);
            let sp = s / ch.inr()[i];
            let a = (2.0 + sp).log2() - 1.0;
            let d = (2.0 + s).log2() - 1.0;
            let e = (1.0 + inr + sp).log2() - 1.0;
            let g = (1.0 + inr + s).log2() - 1.0;
            prop_assert!((hk.a[i] - a).abs() <= 1e-12);
            prop_assert!((hk.d[i] - d).abs() <= 1e-12);
            prop_assert!((hk.e[i] - e).abs() <= 1e-12);
            prop_assert!((hk.g[i] - g).abs() <= 1e-12);
        }
    }

    #[test]
    fn d_and_g_grow_with_snr(seed in any::<u64>(), k in 2usize..6, bump in 1e-3f64..10.0) {
        let ch = weak_instance(&mut rng(seed), k);
        let split = etw_split(&ch);
        let base = hk_params(&ch, &split).unwrap();
        for i in 0..k {
            let mut snr = ch.snr().to_vec();
            snr[i] *= 1.0 + bump;
            let up = make_channel(k, &snr, ch.inr()).unwrap();
            let hk = hk_params(&up, &split).unwrap();
            prop_assert!(hk.d[i] > base.d[i]);
            prop_assert!(hk.g[i] > base.g[i]);
        }
    }

    #[test]
    fn projection_matches_closed_form(seed in any::<u64>(), k in 2usize..5) {
        let hk = etw(&weak_instance(&mut rng(seed), k));
        let fm = cyclic_ic::fourier_motzkin::project_to_rates(&hk, k).unwrap();
        prop_assert!(regions_equal(&fm, &achievable_region(&hk, k).unwrap()).unwrap());
    }

    #[test]
    fn interior_points_survive_tiny_perturbation(seed in any::<u64>(), k in 2usize..5) {
        let mut r = rng(seed);
        let ch = weak_instance(&mut r, k);
        let sys = achievable_region(&etw(&ch), k).unwrap();
        let sym = symmetric_max(&sys).unwrap();
        let x: Vec<f64> = (0..k).map(|_| sym * r.random_range(0.1..0.9)).collect();
        prop_assert!(contains_point(&sys, &x).unwrap());
        let y: Vec<f64> = x.iter().map(|v| v + 1e-10).collect();
        prop_assert!(contains_point(&sys, &y).unwrap());
    }

    #[test]
    fn inclusion_is_transitive_on_sampled_triples(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ch = weak_instance(&mut r, 3);
        let hk = etw(&ch);
        let private = hk_params(&ch, &PowerSplit::private_only(&ch)).unwrap();
        let triple = [
            achievable_region(&private, 3).unwrap(),
            achievable_region(&hk, 3).unwrap(),
            ts_region_3(&hk).unwrap(),
            outer_region(&outer_params(&ch), 3).unwrap(),
        ];
        for a in &triple {
            for b in &triple {
                for c in &triple {
                    if region_includes(b, a).unwrap() && region_includes(c, b).unwrap() {
                        prop_assert!(region_includes(c, a).unwrap());
                    }
                }
            }
        }
    }
}
