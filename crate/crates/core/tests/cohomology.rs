mod common;

use common::*;
use poisson_deform_core::cohomology::*;
use poisson_deform_core::error::Error;
use poisson_deform_core::multivector::{schouten, MultiDer, Vec3};
use poisson_deform_core::poly::{rat, Monomial, Poly, Rational, WeightSystem};
use proptest::prelude::*;

#[test]
fn milnor_numbers_match_weight_formula_and_dense_count() {
    for (name, phi, w) in corpus() {
        let m = milnor(&phi, &w).unwrap();
        let d = phi.weighted_degree(&w).unwrap().unwrap();
        // mu = prod (d / w_i - 1)
        let mut mu = Rational::from_integer(1.into());
        for i in 0..3 {
            mu *= Rational::new((d - w.weight(i)).into(), w.weight(i).into());
        }
        assert_eq!(Rational::from_integer(m.mu.into()), mu, "{name}");
        let top = *m.degrees.iter().max().unwrap();
        for deg in 0..=top + 2 {
            let count = m.degrees.iter().filter(|&&x| x == deg).count();
            assert_eq!(count, jacobian_quotient_dim(&phi, &w, deg), "{name} degree {deg}");
        }
        assert_eq!(m.basis[0], Monomial::new(&[0, 0, 0]).unwrap());
    }
}

#[test]
fn fermat_cubic_basis_order() {
    let m = context("fermat3").milnor().clone();
    let names: Vec<String> = (0..m.mu).map(|j| m.u(j).to_string()).collect();
    assert_eq!(names, ["1", "x", "y", "z", "x*y", "x*z", "y*z", "x*y*z"]);
}

#[test]
fn mu_is_invariant_under_variable_permutation() {
    let ctx = context("D4");
    let phi = p("y^2*x - x^3 + z^2");
    let w = WeightSystem::new(&[2, 2, 3]).unwrap();
    assert_eq!(milnor(&phi, &w).unwrap().mu, ctx.milnor().mu);
    let phi = p("x^2 + y^5 + z^2");
    let w = WeightSystem::new(&[5, 2, 5]).unwrap();
    assert_eq!(milnor(&phi, &w).unwrap().mu, context("A4").milnor().mu);
}

#[test]
fn rejected_inputs() {
    let w = WeightSystem::standard(3);
    assert!(matches!(PhiContext::new(p("x^2 + y^3"), w.clone()), Err(Error::NotHomogeneous)));
    assert!(matches!(PhiContext::new(p("x^2 + y^2"), w.clone()), Err(Error::NotIsolatedSingularity)));
    assert!(matches!(PhiContext::new(p("x"), w.clone()), Err(Error::NoSingularity)));
    assert!(PhiContext::new(p("x*y*z"), w).is_err());
}

#[test]
fn coboundaries_agree_with_schouten_oracle() {
    let mut r = rng(11);
    for (name, _, _) in corpus() {
        let ctx = context(name);
        let pi0 = ctx.pi0();
        for deg in 0..3 {
            for _ in 0..3 {
                let m = random_multider(&mut r, deg, 3, 3);
                let expected = -&schouten_oracle(&m, &pi0);
                assert_eq!(delta(&m, &ctx), expected, "{name} degree {deg}");
            }
        }
    }
}

#[test]
fn delta_squares_to_zero() {
    let mut r = rng(12);
    for (name, _, _) in corpus() {
        let ctx = context(name);
        for deg in 0..2 {
            for _ in 0..4 {
                let m = random_multider(&mut r, deg, 5, 4);
                assert!(delta(&delta(&m, &ctx), &ctx).is_zero(), "{name}");
            }
        }
    }
}

#[test]
fn casimirs_are_polynomials_in_phi() {
    // the kernel of d0 in each weighted degree is spanned by powers of phi
    for (name, phi, w) in corpus() {
        let ctx = context(name);
        let d = ctx.degree();
        for deg in 0..=2 * d {
            let ms = w.monomials_of_degree(deg);
            let images: Vec<MultiDer> = ms
                .iter()
                .map(|m| delta0(&Poly::term(3, *m, rat(1)), &ctx))
                .collect();
            let mut keys: Vec<(usize, Monomial)> = Vec::new();
            for im in &images {
                for (k, part) in im.parts().iter().enumerate() {
                    for (m, _) in part.terms() {
                        if !keys.contains(&(k, *m)) {
                            keys.push((k, *m));
                        }
                    }
                }
            }
            // columns are the images; kernel = #monomials - rank
            let rows: Vec<Vec<Rational>> = keys
                .iter()
                .map(|(k, m)| images.iter().map(|im| im.parts()[*k].coeff(m)).collect())
                .collect();
            let kernel = ms.len() - if rows.is_empty() { 0 } else { dense_rank(rows) };
            let expected = usize::from(deg % d == 0);
            assert_eq!(kernel, expected, "{name} degree {deg}");
            if deg % d == 0 {
                assert!(delta0(&phi.pow((deg / d) as u32), &ctx).is_zero());
            }
        }
    }
}

#[test]
fn h2_sizes_and_independence() {
    let sizes: Vec<(&str, usize)> = corpus()
        .iter()
        .map(|(n, _, _)| (*n, h2_basis(&context(n), 1).unwrap().len()))
        .collect();
    for (name, len) in sizes {
        let ctx = context(name);
        let m = ctx.milnor();
        assert_eq!(len, 2 * m.e_phi.len() + m.mu - 1, "{name}");
        let basis = h2_basis(&ctx, 2).unwrap();
        assert!(classes_independent(&ctx, &basis), "{name}");
        for b in &basis {
            assert!(delta2(&b.realized, &ctx).is_zero());
            assert_eq!(b.realized.weight(ctx.weights()).unwrap(), Some(b.kind.weight(&ctx)));
        }
    }
    assert!(h1_is_zero(&context("A4")));
    assert!(!h1_is_zero(&context("fermat3")));
}

#[test]
fn euler_identity_holds_on_corpus() {
    for (name, _, _) in corpus() {
        let ctx = context(name);
        for j in 0..ctx.milnor().mu {
            for i in 0..2 {
                assert!(delta1_euler_identity(&ctx, i, j).unwrap(), "{name} {i} {j}");
            }
        }
        assert!(delta1_euler_identity(&ctx, 0, ctx.milnor().mu).is_err());
    }
}

#[test]
fn decomposition_examples() {
    let ctx = context("A4");
    let basis = h2_basis(&ctx, 1).unwrap();
    let dec = cocycle_decompose(&MultiDer::Bivector(Vec3::grad(&p("z^2"))), &ctx, &basis).unwrap();
    for (b, a) in basis.iter().zip(&dec.coeffs) {
        let expected = if b.kind == (H2Kind::GradU { r: 2 }) { rat(1) } else { rat(0) };
        assert_eq!(*a, expected);
    }
    let not_closed = MultiDer::Bivector(Vec3::new(p("x*z"), p("0"), p("0")));
    assert!(matches!(cocycle_decompose(&not_closed, &ctx, &basis), Err(Error::NotACocycle)));
    let j = ctx.milnor().e_phi[0];
    let high = H2Kind::PhiPow { l: 2, j }.realize(&ctx);
    assert!(matches!(
        cocycle_decompose(&high, &ctx, &h2_basis(&ctx, 0).unwrap()),
        Err(Error::NotInSpan { bound: 0 })
    ));
    assert_eq!(required_phi_power(&high, &ctx), 2);
}

#[test]
fn solve_coboundary_inverts_delta1() {
    let mut r = rng(5);
    let ctx = context("A4");
    for _ in 0..5 {
        let v = random_vector_field(&mut r, ctx.weights(), 8, 2);
        let b = delta1(&v, &ctx);
        let xi = solve_coboundary(&b, &ctx).unwrap();
        assert_eq!(delta1(&xi, &ctx), b);
    }
    let class = H2Kind::GradU { r: 1 }.realize(&ctx);
    assert!(solve_coboundary(&class, &ctx).is_none());
}

#[test]
fn plane_curve_dimensions() {
    let w = WeightSystem::standard(2);
    assert_eq!(h2_dim_plane(&poisson_deform_core::poly::parse_poly("x*y", 2).unwrap(), &w).unwrap(), (1, 1));
    let w = WeightSystem::new(&[3, 2]).unwrap();
    assert_eq!(h2_dim_plane(&poisson_deform_core::poly::parse_poly("x^2 - y^3", 2).unwrap(), &w).unwrap(), (0, 2));
    let w = WeightSystem::standard(2);
    assert!(matches!(
        h2_dim_plane(&poisson_deform_core::poly::parse_poly("x^2", 2).unwrap(), &w),
        Err(Error::NotSquareFree)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_round_trip(seed in any::<u64>(), which in 0usize..5) {
        let (name, _, _) = corpus()[which].clone();
        let ctx = context(name);
        let mut r = rng(seed);
        let basis = h2_basis(&ctx, 1).unwrap();
        let mut target = MultiDer::zero(2);
        let mut coeffs = vec![rat(0); basis.len()];
        use rand::Rng;
        for (k, b) in basis.iter().enumerate() {
            if r.gen_bool(0.4) {
                coeffs[k] = rat(r.gen_range(-3i64..=3));
                target += &b.realized.scale(&coeffs[k]);
            }
        }
        let v = random_vector_field(&mut r, ctx.weights(), 6, 2);
        target += &delta1(&v, &ctx);
        let dec = cocycle_decompose(&target, &ctx, &basis).unwrap();
        prop_assert_eq!(&dec.coeffs, &coeffs);
        let mut rebuilt = delta1(&dec.xi, &ctx);
        for (b, a) in basis.iter().zip(&dec.coeffs) {
            rebuilt += &b.realized.scale(a);
        }
        prop_assert_eq!(rebuilt, target);
    }

    #[test]
    fn delta_is_minus_bracket_with_pi0(seed in any::<u64>(), deg in 0usize..3) {
        let ctx = context("D4");
        let mut r = rng(seed);
        let m = random_multider(&mut r, deg, 4, 3);
        prop_assert_eq!(delta(&m, &ctx), -&schouten(&m, &ctx.pi0()).unwrap());
    }
}
