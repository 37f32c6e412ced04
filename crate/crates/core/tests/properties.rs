mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rado_core::coloring::Source;
use rado_core::*;

fn nonzero(max: i64) -> impl Strategy<Value = i64> {
    (1..=max).prop_flat_map(|m| prop_oneof![Just(m), Just(-m)])
}

fn coeffs(len: std::ops::RangeInclusive<usize>, max: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(nonzero(max), len)
}

fn explicit(r: u32, colors: &[u32]) -> Coloring {
    Coloring::explicit(r, colors.to_vec()).unwrap()
}

fn first_zero_subset(a: &[i64]) -> Option<Vec<usize>> {
    (1u32..1 << a.len())
        .map(|mask| (0..a.len()).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().map(|&i| a[i] as i128).sum::<i128>() == 0)
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn regularity_matches_subset_enumeration(a in coeffs(2..=10, 30)) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let reg = is_regular(&eq);
        prop_assert_eq!(reg.regular, common::regular_brute(&a));
        // canonical form only divides by a positive gcd, so subsets carry over
        prop_assert_eq!(reg.subset, first_zero_subset(&a));
    }

    #[test]
    fn canonical_form_is_scale_invariant(a in coeffs(2..=6, 50), k in 1i64..20) {
        let base = LinearEquation::from_integers(&a).unwrap();
        let scaled: Vec<i64> = a.iter().map(|c| c * k).collect();
        let other = LinearEquation::from_integers(&scaled).unwrap();
        prop_assert_eq!(base.coeffs(), other.coeffs());
        let g = base.coeffs().iter().fold(BigInt::from(0), |g, c| num_integer::Integer::gcd(&g, c));
        prop_assert_eq!(g, BigInt::from(1));
        let plain = parse_equation(&base.render()).unwrap();
        let expr = parse_equation(&base.render_expression()).unwrap();
        prop_assert_eq!(plain.coeffs(), base.coeffs());
        prop_assert_eq!(expr.coeffs(), base.coeffs());
    }

    #[test]
    fn enumeration_matches_box_scan(a in coeffs(2..=3, 7), n in 1u64..=12, m in 1u64..=12) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let got: Vec<Vec<u64>> = enumerate_solutions(&eq, n, None).unwrap().map(|s| s.values).collect();
        prop_assert_eq!(&got, &common::box_solutions(&a, n));
        let with_max: Vec<Vec<u64>> = enumerate_solutions(&eq, n, Some(m)).unwrap().map(|s| s.values).collect();
        let expect: Vec<Vec<u64>> = common::box_solutions(&a, n)
            .into_iter()
            .filter(|s| s.iter().max() == Some(&m))
            .collect();
        prop_assert_eq!(with_max, expect);
    }

    #[test]
    fn verify_avoiding_matches_brute(a in coeffs(2..=3, 5), colors in prop::collection::vec(0u32..2, 1..=30)) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let n = colors.len() as u64;
        let c = explicit(2, &colors);
        let mut sols = common::box_solutions(&a, n);
        sols.sort_by_key(|s| *s.iter().max().unwrap());
        let first = sols
            .into_iter()
            .find(|s| s.iter().all(|&v| colors[v as usize - 1] == colors[s[0] as usize - 1]));
        match verify_avoiding(&c, &eq, n).unwrap() {
            Verdict::Avoiding => prop_assert!(first.is_none()),
            Verdict::Violated(s) => prop_assert_eq!(Some(s.values), first),
        }
    }

    #[test]
    fn progression_search_matches_brute(colors in prop::collection::vec(0u32..2, 1..=50), h in 0u64..=3) {
        let n = colors.len() as u64;
        let c = explicit(2, &colors);
        let got = find_monochromatic_ap(&c, 2 * h + 1, n).unwrap();
        let brute = if h == 0 { Some((1, 1)) } else { common::ap_brute(&colors, h, n) };
        prop_assert_eq!(got.as_ref().map(|w| (w.step, w.center)), brute);
        if let Some(w) = got {
            w.verify(&c).unwrap();
        }
    }

    #[test]
    fn search_matches_enumeration(a in coeffs(2..=3, 5), n in 1u64..=16) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let cert = search_avoiding(&eq, 2, n, &SearchOptions::default()).unwrap();
        prop_assert_eq!(cert.is_exhausted(), !common::two_coloring_avoids(&a, n, false));
        cert.verify().unwrap();
    }

    #[test]
    fn symmetry_breaking_keeps_completeness(a in coeffs(2..=3, 4), r in 1u32..=3, n in 1u64..=7) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let plain = SearchOptions { symmetry_breaking: false, ..SearchOptions::default() };
        let with = search_avoiding(&eq, r, n, &SearchOptions::default()).unwrap();
        let without = search_avoiding(&eq, r, n, &plain).unwrap();
        prop_assert_eq!(with.is_exhausted(), without.is_exhausted());
        prop_assert_eq!(with.is_exhausted(), !common::coloring_avoids(&a, r, n));
    }

    #[test]
    fn distinct_search_matches_enumeration(a in coeffs(3..=3, 4), n in 1u64..=14) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let opts = SearchOptions { distinct_values: true, ..SearchOptions::default() };
        let cert = search_avoiding(&eq, 2, n, &opts).unwrap();
        prop_assert_eq!(cert.is_exhausted(), !common::two_coloring_avoids(&a, n, true));
        cert.verify().unwrap();
    }

    #[test]
    fn parallel_search_agrees(a in coeffs(3..=3, 4), n in 1u64..=20) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let seq = search_avoiding(&eq, 3, n, &SearchOptions::default()).unwrap();
        let par = search_avoiding(&eq, 3, n, &SearchOptions { threads: 3, ..SearchOptions::default() }).unwrap();
        prop_assert_eq!(seq.outcome, par.outcome);
    }

    #[test]
    fn theorem42_has_at_most_one_flip(a in coeffs(2..=6, 9), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = LinearEquation::from_integers(&a).unwrap();
        let len = a.len();
        let i = rng.gen_range(0..len - 1);
        let j = rng.gen_range(i + 1..len);
        let d = rng.gen_range(1..=20u64);
        let k = rng.gen_range(1..=2000u64);
        match build_theorem42_solution(&eq, i, j, k, d) {
            Ok(sol) => {
                prop_assert!(sol.flips.iter().filter(|&&f| f == -1).count() <= 1);
                sol.verify(&eq).unwrap();
            }
            Err(Error::Precondition(msg)) => prop_assert!(msg.contains("k must be at least")),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn theorem41_extends_solutions(
        a in coeffs(3..=3, 4),
        extra in prop::collection::vec((-6i64..=6, 1i64..=3), 1..=3),
        d in 1u64..=6,
    ) {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let Some(base) = enumerate_solutions(&eq, 40, None).unwrap().last() else {
            return Ok(());
        };
        let extra: Vec<BigRational> = extra.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect();
        match build_theorem41_solution(&eq, &base, &extra, d) {
            Ok(sol) => {
                prop_assert!(num_traits::Zero::is_zero(&sol.residual()));
                prop_assert!(sol.tuple.values.iter().all(|&x| x >= 1));
                prop_assert_eq!(&sol.tuple.values[1..a.len()], &base.values[1..]);
            }
            Err(Error::NonIntegral(_) | Error::NonPositive { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn product_coloring_iff(colors in prop::collection::vec(0u32..3, 8..=120), r in 1u64..=4) {
        let c = explicit(3, &colors);
        let pc = product_coloring(&c, r).unwrap();
        let Source::Explicit(pcol) = pc.coloring.source() else { unreachable!() };
        let sig = |a: usize| (1..=r as usize).map(|i| colors[a * i - 1]).collect::<Vec<_>>();
        for x in 1..=pcol.len() {
            prop_assert_eq!(&pc.signatures[pcol[x - 1] as usize], &sig(x));
            for y in x..=pcol.len() {
                prop_assert_eq!(pcol[x - 1] == pcol[y - 1], sig(x) == sig(y));
            }
        }
    }

    #[test]
    fn lemma_traces_verify(p in 1usize..=6, seed in any::<u64>(), radius in 1u64..=2, r in 2u64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let colors = common::periodic_colors(&mut rng, 2, p, 3000);
        let c = explicit(2, &colors);
        let family = HomogeneousFamily::power_pairs(2).unwrap();
        if let Ok(t) = lemma22_demonstrate(&c, &family, radius, r, &LemmaBudget::default()) {
            t.verify(&c).unwrap();
            let k = radius * r;
            for &m in &t.multipliers {
                prop_assert!(radius * (t.lcm / m) <= k);
            }
            prop_assert_eq!(t.step, t.ap.step * t.lcm);
        }
    }
}

#[test]
fn pigeonhole_never_fails_with_few_colors() {
    for n in 2..=5u32 {
        let r = n - 1;
        let top = 1usize << (n - 1);
        for code in 0..r.pow(n) {
            let mut colors = vec![0u32; top];
            let mut rest = code;
            for t in 0..n {
                colors[(1usize << t) - 1] = rest % r;
                rest /= r;
            }
            let c = explicit(r, &colors);
            let w = pigeonhole_powers(&c, n).unwrap();
            w.verify(&c).unwrap();
            let (x, y) = (w.x as usize, w.partner() as usize);
            assert_eq!(colors[x - 1], colors[y - 1]);
        }
    }
}

/// Brute-force fan scan over pairs `(2b, b)` in the documented order.
fn fan_brute(colors: &[u32], radius: u64, q: u64, max_d: u64) -> Option<(u64, u64)> {
    let n = colors.len() as i64;
    let color = |x: i64| (1..=n).contains(&x).then(|| colors[x as usize - 1]);
    for d in 1..=max_d as i64 {
        let target = color(q as i64 * d)?;
        for b in 1..=n {
            let ok = [2 * b, b].iter().all(|&base| {
                (-(radius as i64)..=radius as i64).all(|l| color(base + l * d) == Some(target))
            });
            if ok {
                return Some((d as u64, b as u64));
            }
        }
    }
    None
}

#[test]
fn fan_search_matches_scan() {
    // all color 0 except multiples of 7
    let colors: Vec<u32> = (1..=100u32).map(|x| u32::from(x % 7 == 0)).collect();
    let c = explicit(2, &colors);
    let family = HomogeneousFamily::power_pairs(2).unwrap();
    let fan = find_fan(&c, &family, 1, 1, FanBudget::default()).unwrap();
    assert_eq!(fan_brute(&colors, 1, 1, 256), Some((fan.step, fan.base[1])));
    assert_ne!(fan.step % 7, 0);
    for x in 1..=100 {
        if fan.contains(x) {
            assert_ne!(x % 7, 0, "{x} in fan");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in 2..=6 {
        let colors = common::periodic_colors(&mut rng, 2, p, 400);
        let c = explicit(2, &colors);
        for radius in 0..=3 {
            let brute = fan_brute(&colors, radius, 2, 32);
            let got = find_fan(&c, &family, radius, 2, FanBudget { max_step: 32, max_scale: u64::MAX });
            assert_eq!(got.ok().map(|f| (f.step, f.base[1])), brute, "p = {p}, radius {radius}");
        }
    }
}

#[test]
fn nu2_fans_have_one_parity() {
    let c = Coloring::of_family(Family::Nu2Mod(2), 4096).unwrap();
    // 2b and b always differ in parity of the 2-adic valuation
    let two = HomogeneousFamily::power_pairs(2).unwrap();
    assert!(find_fan(&c, &two, 2, 1, FanBudget::default()).unwrap_err().is_budget_exhausted());
    for n in 3..=4 {
        let family = HomogeneousFamily::power_pairs(n).unwrap();
        let fan = find_fan(&c, &family, 2, 1, FanBudget::default()).unwrap();
        let parity = fan.base[0].trailing_zeros() % 2;
        for x in (1..=4096).filter(|&x| fan.contains(x)) {
            assert_eq!(x.trailing_zeros() % 2, parity);
        }
    }
}

#[test]
fn rado_value_brackets() {
    for a in [[1i64, 1, -1], [1, 2, -4], [1, 1, -2], [2, 1, -1], [3, 1, -2]] {
        let eq = LinearEquation::from_integers(&a).unwrap();
        let rep = rado_number(&eq, 2, 40, &SearchOptions::default()).unwrap();
        let v = rep.value().unwrap();
        assert_eq!(Some(v), common::two_color_rado_brute(&a, 22), "{a:?}");
        assert!(search_avoiding(&eq, 2, v, &SearchOptions::default()).unwrap().is_exhausted());
        if v > 1 {
            let below = search_avoiding(&eq, 2, v - 1, &SearchOptions::default()).unwrap();
            assert_eq!(below.witness(), rep.witness.as_ref());
        }
    }
}

#[test]
fn theorem1_pipeline_is_monochromatic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in 1..=8 {
        let colors = common::periodic_colors(&mut rng, 2, p, 4096);
        let c = explicit(2, &colors);
        for n in 3..=4 {
            if let Ok(proof) = prove_theorem1(&c, n, FanBudget::default()) {
                let mut a: Vec<i64> = (0..n - 1).map(|i| 1i64 << i).collect();
                a.push(-(1i64 << (n - 1)));
                assert_eq!(common::residual(&a, &proof.tuple.values), 0);
                let k = colors[proof.tuple.values[0] as usize - 1];
                assert!(proof.tuple.values.iter().all(|&x| colors[x as usize - 1] == k));
                assert!(proof.tuple.values.iter().all(|&x| proof.fan.contains(x)));
            }
        }
    }
}

#[test]
fn traces_round_trip_through_json() {
    let c = Coloring::of_family(Family::Mod(2), 512).unwrap();
    let proof = prove_theorem1(&c, 3, FanBudget::default()).unwrap();
    let back: Theorem1Proof = serde_json::from_str(&serde_json::to_string(&proof).unwrap()).unwrap();
    assert_eq!(back, proof);
    back.verify(&c).unwrap();

    let cert = search_avoiding(&LinearEquation::from_integers(&[1, 1, -1]).unwrap(), 3, 13, &SearchOptions::default())
        .unwrap();
    let back: SearchCertificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(back, cert);

    let rep = dor_report(&LinearEquation::from_integers(&[1, -2]).unwrap(), 2, 30, &SearchOptions::default()).unwrap();
    let back: DorReport = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn coloring_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let c = explicit(3, &[0, 1, 2, 2, 1, 0, 0]);
    c.store(&path).unwrap();
    assert_eq!(Coloring::load(&path).unwrap(), c);
    let spec: ColoringSpec = format!("file:{}", path.display()).parse().unwrap();
    assert_eq!(spec.resolve(None, None).unwrap(), c);
}
