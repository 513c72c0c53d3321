use altpoly::families::{
    bannai_ito, bannai_ito_family, bannai_ito_g, big_jacobi_coefficients, big_m1_jacobi_direct, big_m1_jacobi_family,
    cbi_base, cbi_base_in_y, cbi_companion, cbi_companion_in_y, comp_bannai_ito, family_moments, jacobi_kernel_ratio,
    jacobi_value_at_one, m1_meixner_pollaczek_direct, shifted_jacobi, shifted_jacobi_companion, shifted_laguerre,
    BannaiItoParams, FamilyKind, FamilyParams, JacobiParams, LaguerreParams, MomentKind,
};
use altpoly::{
    alternating_pullback, christoffel_step, geronimus_functional, geronimus_step, gram_check, int, mops_from_functional,
    pochhammer, ratio, recurrence_fit, MassSeed, MonicOps, QPoly, Rational,
};
use num_traits::{One, Zero};

fn jacobi(a: (i64, i64), b: (i64, i64), l: (i64, i64)) -> JacobiParams {
    JacobiParams::new(ratio(a.0, a.1), ratio(b.0, b.1), ratio(l.0, l.1)).unwrap()
}

fn bi_point() -> BannaiItoParams {
    BannaiItoParams::new(int(0), int(1), ratio(1, 5), ratio(1, 7))
}

fn x_minus(c: Rational) -> QPoly {
    QPoly::linear(c)
}

// 2F1(-n, b; c; z) summed term by term at a number.
fn f21(n: usize, b: &Rational, c: &Rational, z: &Rational) -> Rational {
    let minus_n = int(-(n as i64));
    (0..=n).fold(Rational::zero(), |acc, k| {
        let fact = (1..=k).fold(Rational::one(), |f, i| f * int(i as i64));
        acc + pochhammer(&minus_n, k) * pochhammer(b, k) / (pochhammer(c, k) * fact) * num_traits::pow(z.clone(), k)
    })
}

// 4F3 at 1 with the x-dependent pair evaluated at a number.
fn f43_at(n: usize, top: &Rational, shift: &Rational, x: &Rational, lower: &[Rational; 3]) -> Rational {
    let minus_n = int(-(n as i64));
    (0..=n).fold(Rational::zero(), |acc, k| {
        let fact = (1..=k).fold(Rational::one(), |f, i| f * int(i as i64));
        let num = pochhammer(&minus_n, k)
            * pochhammer(top, k)
            * pochhammer(&(shift.clone() + x.clone()), k)
            * pochhammer(&(shift.clone() - x.clone()), k);
        let den = lower.iter().fold(fact, |d, l| d * pochhammer(l, k));
        acc + num / den
    })
}

#[test]
fn jacobi_ratio_two_routes() {
    for p in [jacobi((1, 2), (1, 2), (1, 2)), jacobi((3, 4), (-1, 3), (2, 5)), jacobi((2, 1), (5, 2), (-1, 3))] {
        for n in 0..=10 {
            let r = shifted_jacobi(&p, n).unwrap();
            let next = shifted_jacobi(&p, n + 1).unwrap();
            assert_eq!(r.eval(&int(1)), jacobi_value_at_one(&p, n));
            assert_eq!(next.eval(&int(1)) / r.eval(&int(1)), jacobi_kernel_ratio(&p, n));
        }
    }
    let p = jacobi((1, 2), (1, 2), (1, 2));
    assert_eq!(jacobi_kernel_ratio(&p, 1), ratio(9, 32));
}

#[test]
fn jacobi_moments_reproduce_closed_form() {
    for p in [jacobi((1, 2), (1, 2), (1, 2)), jacobi((3, 4), (-1, 3), (2, 5))] {
        let n = 6;
        let v = family_moments(&MomentKind::ShiftedJacobi(p.clone()), 2 * n + 2);
        let ops = mops_from_functional(&v, n).unwrap();
        for m in 0..=n {
            assert_eq!(ops.polys[m], shifted_jacobi(&p, m).unwrap(), "n = {m}");
        }
    }
}

#[test]
fn laguerre_moments_reproduce_closed_form() {
    for p in [LaguerreParams::new(ratio(1, 2), int(1)), LaguerreParams::new(ratio(3, 4), ratio(1, 3))] {
        let n = 6;
        let v = family_moments(&MomentKind::ShiftedLaguerre(p.clone()), 2 * n + 2);
        let ops = mops_from_functional(&v, n).unwrap();
        for m in 0..=n {
            let r = shifted_laguerre(&p, m).unwrap();
            assert_eq!(ops.polys[m], r);
            let g2 = p.gamma.clone() * p.gamma.clone();
            let sign = if m % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(r.eval(&g2), sign * pochhammer(&(p.alpha.clone() + ratio(1, 2)), m));
        }
    }
}

#[test]
fn jacobi_companion_is_christoffel_transform() {
    let p = jacobi((3, 4), (-1, 3), (2, 5));
    let base = MonicOps::fitted((0..=7).map(|n| shifted_jacobi(&p, n).unwrap()).collect()).unwrap();
    let comp = christoffel_step(&base, &int(1), 6).unwrap();
    for n in 0..=6 {
        assert_eq!(comp.polys[n], shifted_jacobi_companion(&p, n).unwrap());
    }
}

#[test]
fn big_jacobi_pipeline_matches_closed_form() {
    let p = JacobiParams::from_cd(ratio(1, 2), int(2), int(0)).unwrap();
    let v = family_moments(&MomentKind::ShiftedJacobi(p.clone()), 12);
    let alt = alternating_pullback(&v, &int(1), 4).unwrap();
    let coeffs = big_jacobi_coefficients(&p, 9).unwrap();
    let b = geronimus_step(&alt.family, &coeffs).unwrap();
    for n in 0..=8 {
        assert_eq!(b[n], big_m1_jacobi_direct(&p, n).unwrap(), "n = {n}");
    }
    assert_eq!(b[1], QPoly::new(vec![ratio(1, 8), int(1)]));
    assert_eq!(b[2], &alt.family[2] - &alt.family[1].scale(&ratio(1, 6)));

    let w = geronimus_functional(&alt.functional, &coeffs.point, MassSeed::Auto(b[1].clone())).unwrap();
    assert!(gram_check(&w, &b, 8).unwrap().is_empty());
    let (_, gamma) = recurrence_fit(&b).unwrap();
    assert!(gamma[1..].iter().all(|g| !g.is_zero()));
}

#[test]
fn big_jacobi_second_point() {
    let p = jacobi((1, 3), (2, 7), (-2, 5));
    let fam = big_m1_jacobi_family(&p, 9).unwrap();
    for n in 0..=9 {
        assert_eq!(fam[n], big_m1_jacobi_direct(&p, n).unwrap(), "n = {n}");
    }
}

#[test]
fn meixner_pollaczek_pipeline_matches_closed_form() {
    for p in [LaguerreParams::new(ratio(1, 2), int(1)), LaguerreParams::new(ratio(3, 4), ratio(1, 3))] {
        let v = family_moments(&MomentKind::ShiftedLaguerre(p.clone()), 12);
        let alt = alternating_pullback(&v, &p.gamma, 4).unwrap();
        for n in 0..=8 {
            assert_eq!(alt.family[n], m1_meixner_pollaczek_direct(&p, n).unwrap(), "n = {n}");
        }
    }
    let p = LaguerreParams::new(ratio(1, 2), int(1));
    assert_eq!(m1_meixner_pollaczek_direct(&p, 1).unwrap(), x_minus(int(1)));
}

#[test]
fn big_jacobi_direct_formula_matches_hypergeometric_evaluation() {
    // even/odd displays summed at sample points, no polynomial algebra
    let p = JacobiParams::from_cd(ratio(1, 2), int(2), int(0)).unwrap();
    let (c, d, l) = (p.c(), p.d(), p.lambda.clone());
    let s = int(1) - l.clone() * l.clone();
    for n in 0..=7usize {
        let m = n / 2;
        let mm = int(m as i64);
        let top = (int(2) * mm.clone() + c.clone() + d.clone() + int(2)) / int(2);
        let lower1 = (c.clone() + int(1)) / int(2);
        let lower3 = (c.clone() + int(3)) / int(2);
        let kappa = if n % 2 == 0 {
            num_traits::pow(s.clone(), m) * pochhammer(&lower1, m) / pochhammer(&top, m)
        } else {
            (int(1) + l.clone()) * num_traits::pow(s.clone(), m) * pochhammer(&lower1, m + 1) / pochhammer(&top, m + 1)
        };
        let direct = big_m1_jacobi_direct(&p, n).unwrap();
        for xs in [ratio(1, 3), ratio(-2, 5), int(2)] {
            let z = (int(1) - xs.clone() * xs.clone()) / s.clone();
            let one_minus_x = int(1) - xs.clone();
            let denom = (int(1) + l.clone()) * (c.clone() + int(1));
            let value = if n % 2 == 0 {
                let second = if m == 0 {
                    int(0)
                } else {
                    f21(m - 1, &top, &lower3, &z) * int(2) * mm.clone() * one_minus_x / denom
                };
                kappa.clone() * (f21(m, &top, &lower1, &z) + second)
            } else {
                let top4 = (int(2) * mm.clone() + c.clone() + d.clone() + int(4)) / int(2);
                let coef = (int(2) * mm.clone() + c.clone() + d.clone() + int(2)) * one_minus_x / denom;
                kappa.clone() * (f21(m, &top, &lower1, &z) - coef * f21(m, &top4, &lower3, &z))
            };
            assert_eq!(direct.eval(&xs), value, "n = {n}");
        }
    }
}

#[test]
fn complementary_bannai_ito_parity() {
    let p = bi_point();
    for n in 0..=6 {
        let pn = comp_bannai_ito(&p, n).unwrap();
        assert_eq!(pn.degree(), Some(n));
        assert!(pn.is_monic());
        if n % 2 == 0 {
            assert!(pn.is_even());
        } else {
            let (head, q) = pn.tau_decompose(&p.b);
            assert!(head.is_zero());
            assert_eq!(q, cbi_companion_in_y(&p, n / 2).unwrap());
            assert_eq!(pn.div_linear(&p.b).unwrap(), cbi_companion(&p, n / 2).unwrap());
        }
    }
}

#[test]
fn bannai_ito_4f3_expansion_matches_pointwise_sums() {
    let p = bi_point();
    let half = ratio(1, 2);
    let shift = p.a.clone() + p.b.clone() - p.c.clone() - p.d.clone();
    for n in 0..=5usize {
        let r = cbi_base_in_y(&p, n).unwrap();
        let s = cbi_companion_in_y(&p, n).unwrap();
        let lower1 = [
            p.a.clone() + p.b.clone() + int(1),
            p.b.clone() - p.c.clone() + half.clone(),
            p.b.clone() - p.d.clone() + half.clone(),
        ];
        let lower2 = lower1.clone().map(|l| l + int(1));
        let k1 = pochhammer(&lower1[0], n) * pochhammer(&lower1[1], n) * pochhammer(&lower1[2], n)
            / pochhammer(&(int(n as i64) + shift.clone() + int(1)), n);
        let k2 = pochhammer(&lower2[0], n) * pochhammer(&lower2[1], n) * pochhammer(&lower2[2], n)
            / pochhammer(&(int(n as i64) + shift.clone() + int(2)), n);
        // n + 1 distinct values of y = x^2 pin down a degree-n polynomial in y
        for i in 0..=n as i64 {
            let xs = ratio(2 * i + 1, 3);
            let y = xs.clone() * xs.clone();
            let top1 = int(n as i64) + shift.clone() + int(1);
            let top2 = top1.clone() + int(1);
            assert_eq!(r.eval(&y), k1.clone() * f43_at(n, &top1, &p.b, &xs, &lower1));
            assert_eq!(s.eval(&y), k2.clone() * f43_at(n, &top2, &(p.b.clone() + int(1)), &xs, &lower2));
        }
    }
}

#[test]
fn complementary_bannai_ito_is_alternating_output() {
    // S_n is the Christoffel companion of R_n at b^2
    let p = bi_point();
    let base = MonicOps::fitted((0..=6).map(|n| cbi_base_in_y(&p, n).unwrap()).collect()).unwrap();
    let comp = christoffel_step(&base, &(p.b.clone() * p.b.clone()), 5).unwrap();
    for n in 0..=5 {
        assert_eq!(comp.polys[n], cbi_companion_in_y(&p, n).unwrap(), "n = {n}");
    }
}

#[test]
fn bannai_ito_favard_certificate() {
    let p = bi_point();
    let fam = bannai_ito_family(&p, 8).unwrap();
    let (_, gamma) = recurrence_fit(&fam).unwrap();
    assert_eq!(gamma.len(), 8);
    assert!(gamma[1..].iter().all(|g| !g.is_zero()));
    for n in 0..=8 {
        assert_eq!(bannai_ito(&p, n).unwrap(), fam[n]);
    }
}

#[test]
fn bannai_ito_displays_match_geronimus_step() {
    // even and odd B_n summed pointwise from the 4F3 displays
    let p = bi_point();
    let half = ratio(1, 2);
    let shift = p.a.clone() + p.b.clone() - p.c.clone() - p.d.clone();
    let lower1 = [
        p.a.clone() + p.b.clone() + int(1),
        p.b.clone() - p.c.clone() + half.clone(),
        p.b.clone() - p.d.clone() + half,
    ];
    let lower2 = lower1.clone().map(|l| l + int(1));
    let kappa = |m: usize, lower: &[Rational; 3], off: i64| {
        lower.iter().fold(Rational::one(), |acc, l| acc * pochhammer(l, m))
            / pochhammer(&(int(m as i64) + shift.clone() + int(off)), m)
    };
    let r_at = |m: usize, x: &Rational| {
        kappa(m, &lower1, 1) * f43_at(m, &(int(m as i64) + shift.clone() + int(1)), &p.b, x, &lower1)
    };
    let s_at = |m: usize, x: &Rational| {
        kappa(m, &lower2, 2) * f43_at(m, &(int(m as i64) + shift.clone() + int(2)), &(p.b.clone() + int(1)), x, &lower2)
    };
    let fam = bannai_ito_family(&p, 8).unwrap();
    for n in 0..=8usize {
        let m = n / 2;
        let nn = int(n as i64);
        for xs in [ratio(1, 2), ratio(-3, 4), int(2)] {
            let value = if n == 0 {
                int(1)
            } else if n % 2 == 0 {
                let mm = int(m as i64);
                let coef = mm.clone() * (mm.clone() - p.c.clone() - p.d.clone())
                    / (int(2) * mm - p.c.clone() - p.d.clone() + p.a.clone() + p.b.clone());
                r_at(m, &xs) + coef * (xs.clone() - p.b.clone()) * s_at(m - 1, &xs)
            } else {
                let coef = (nn.clone() - int(2) * p.d.clone() + int(2) * p.b.clone())
                    * (nn.clone() - int(2) * p.c.clone() + int(2) * p.b.clone())
                    / (int(4) * (nn.clone() - p.c.clone() - p.d.clone() + p.a.clone() + p.b.clone()));
                (xs.clone() - p.b.clone()) * s_at(m, &xs) + coef * r_at(m, &xs)
            };
            assert_eq!(fam[n].eval(&xs), value, "n = {n}");
        }
        if n >= 1 {
            assert_eq!(fam[n], &comp_bannai_ito(&p, n).unwrap() - &comp_bannai_ito(&p, n - 1).unwrap().scale(&bannai_ito_g(&p, n)));
        }
    }
}

#[test]
fn bannai_ito_first_members() {
    let p = BannaiItoParams::new(int(0), int(1), int(0), int(0));
    assert_eq!(cbi_base(&p, 1).unwrap(), QPoly::new(vec![ratio(1, 2), int(0), int(1)]));
    assert_eq!(bannai_ito_g(&p, 1), ratio(-9, 8));
    // B_1 = (x - 1) + 9/8
    assert_eq!(bannai_ito(&p, 1).unwrap(), QPoly::new(vec![ratio(1, 8), int(1)]));
}

#[test]
fn generators_are_monic_and_screened() {
    let points = [
        FamilyParams::Jacobi(FamilyKind::ShiftedJacobi, jacobi((1, 2), (1, 2), (1, 2))),
        FamilyParams::Jacobi(FamilyKind::BigM1Jacobi, jacobi((1, 2), (1, 2), (1, 2))),
        FamilyParams::Laguerre(FamilyKind::ShiftedLaguerre, LaguerreParams::new(ratio(1, 2), int(1))),
        FamilyParams::Laguerre(FamilyKind::M1MeixnerPollaczek, LaguerreParams::new(ratio(1, 2), int(1))),
        FamilyParams::BannaiIto(FamilyKind::CompBannaiIto, bi_point()),
        FamilyParams::BannaiIto(FamilyKind::BannaiIto, bi_point()),
    ];
    for fp in points {
        let fam = fp.generate(8).unwrap();
        assert_eq!(fam.len(), 9);
        for (n, p) in fam.iter().enumerate() {
            assert_eq!(p.degree(), Some(n), "{}", fp.kind());
            assert!(p.is_monic(), "{} n = {n}", fp.kind());
        }
        assert_eq!(fp.generate(0).unwrap(), vec![QPoly::one()]);
    }
}
