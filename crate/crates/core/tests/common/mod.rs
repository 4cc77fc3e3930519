//! Test oracles and random generators shared by the integration tests.
//!
//! The Schouten oracle evaluates the shuffle-sum definition literally on
//! coordinate functions, without using any of the closed formulas of the
//! library.

#![allow(dead_code)]

use poisson_deform_core::multivector::{MultiDer, Vec3};
use poisson_deform_core::poly::{parse_poly, rat, Monomial, Poly, WeightSystem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn p(s: &str) -> Poly {
    parse_poly(s, 3).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Corpus polynomials with their weights.
pub fn corpus() -> Vec<(&'static str, Poly, WeightSystem)> {
    vec![
        ("A1", p("x^2 + y^2 + z^2"), WeightSystem::new(&[1, 1, 1]).unwrap()),
        ("A4", p("x^2 + y^2 + z^5"), WeightSystem::new(&[5, 5, 2]).unwrap()),
        ("fermat3", p("x^3 + y^3 + z^3"), WeightSystem::new(&[1, 1, 1]).unwrap()),
        ("fermat5", p("x^5 + y^5 + z^5"), WeightSystem::new(&[1, 1, 1]).unwrap()),
        ("D4", p("x^2*y - y^3 + z^2"), WeightSystem::new(&[2, 2, 3]).unwrap()),
    ]
}

pub fn random_poly(r: &mut ChaCha8Rng, max_degree: u32, max_terms: usize) -> Poly {
    let n = r.gen_range(0..=max_terms);
    let mut out = Poly::zero(3);
    for _ in 0..n {
        let a = r.gen_range(0..=max_degree);
        let b = r.gen_range(0..=max_degree - a);
        let c = r.gen_range(0..=max_degree - a - b);
        let coeff = r.gen_range(-5i64..=5);
        out.add_term(Monomial::new(&[a, b, c]).unwrap(), rat(coeff));
    }
    out
}

pub fn random_multider(r: &mut ChaCha8Rng, degree: usize, max_degree: u32, max_terms: usize) -> MultiDer {
    let n = if degree == 0 || degree == 3 { 1 } else { 3 };
    let parts = (0..n).map(|_| random_poly(r, max_degree, max_terms)).collect();
    MultiDer::zero(degree).with_parts(parts)
}

/// Weight-homogeneous random polynomial of the given weighted degree.
pub fn random_homogeneous(r: &mut ChaCha8Rng, w: &WeightSystem, degree: i64, max_terms: usize) -> Poly {
    let ms = w.monomials_of_degree(degree);
    let mut out = Poly::zero(3);
    if ms.is_empty() {
        return out;
    }
    for _ in 0..r.gen_range(1..=max_terms) {
        let m = ms[r.gen_range(0..ms.len())];
        out.add_term(m, rat(r.gen_range(-4i64..=4)));
    }
    out
}

fn permutation_sign(seq: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                s = -s;
            }
        }
    }
    s
}

/// Value of a multiderivation on the coordinate functions `x_{i_1}, ...`.
fn on_coordinates(m: &MultiDer, idx: &[usize]) -> Poly {
    assert_eq!(idx.len(), m.degree());
    match m {
        MultiDer::Function(f) => f.clone(),
        MultiDer::Vector(v) => v.0[idx[0]].clone(),
        MultiDer::Bivector(b) => {
            let s = permutation_sign(idx);
            if s == 0 {
                return Poly::zero(3);
            }
            let missing = 3 - idx[0] - idx[1];
            // (y,z) (z,x) (x,y) are the positive orientations
            let positive = (idx[0] + 1) % 3 == idx[1];
            let c = b.0[missing].clone();
            if positive { c } else { -&c }
        }
        MultiDer::Trivector(t) => t.scale_int(permutation_sign(idx)),
    }
}

/// `m[F_1, ..., F_k]` by the Leibniz rule in every slot.
pub fn evaluate(m: &MultiDer, args: &[Poly]) -> Poly {
    let k = m.degree();
    assert_eq!(args.len(), k);
    let mut out = Poly::zero(3);
    let mut idx = vec![0usize; k];
    loop {
        let coord = on_coordinates(m, &idx);
        if !coord.is_zero() {
            let mut term = coord;
            for (slot, &i) in idx.iter().enumerate() {
                term = &term * &args[slot].partial(i);
            }
            out += &term;
        }
        // odometer over {0,1,2}^k
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < 3 {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// All (k,l)-shuffles of `0..k+l` as (first block, second block, sign).
fn shuffles(k: usize, l: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let n = k + l;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let first: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let second: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        let seq: Vec<usize> = first.iter().chain(&second).copied().collect();
        out.push((first, second, permutation_sign(&seq)));
    }
    out
}

fn one_side(p: &MultiDer, q: &MultiDer, args: &[Poly]) -> Poly {
    let (dp, dq) = (p.degree(), q.degree());
    let mut out = Poly::zero(3);
    if dp == 0 {
        return out;
    }
    for (first, second, sign) in shuffles(dq, dp - 1) {
        let inner_args: Vec<Poly> = first.iter().map(|&i| args[i].clone()).collect();
        let mut outer_args = vec![evaluate(q, &inner_args)];
        outer_args.extend(second.iter().map(|&i| args[i].clone()));
        out += &evaluate(p, &outer_args).scale_int(sign);
    }
    out
}

/// `[P,Q]_S[F_1..F_{p+q-1}]` by the shuffle-sum definition.
pub fn schouten_on(p: &MultiDer, q: &MultiDer, args: &[Poly]) -> Poly {
    let (dp, dq) = (p.degree() as i64, q.degree() as i64);
    let sign = if ((dp - 1) * (dq - 1)).rem_euclid(2) == 0 { 1 } else { -1 };
    &one_side(p, q, args) - &one_side(q, p, args).scale_int(sign)
}

fn coordinate_slots(degree: usize) -> Vec<Vec<usize>> {
    match degree {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![1, 2], vec![2, 0], vec![0, 1]],
        3 => vec![vec![0, 1, 2]],
        _ => unreachable!(),
    }
}

fn repackage(degree: usize, f: impl Fn(&[Poly]) -> Poly) -> MultiDer {
    let parts = coordinate_slots(degree)
        .into_iter()
        .map(|slots| {
            let args: Vec<Poly> = slots.iter().map(|&i| Poly::var(3, i)).collect();
            f(&args)
        })
        .collect();
    MultiDer::zero(degree).with_parts(parts)
}

/// Schouten bracket computed from the shuffle-sum definition.
pub fn schouten_oracle(p: &MultiDer, q: &MultiDer) -> MultiDer {
    let d = p.degree() + q.degree() - 1;
    repackage(d, |args| schouten_on(p, q, args))
}

/// Wedge product from the shuffle definition (result degree at most 3).
pub fn wedge_oracle(p: &MultiDer, q: &MultiDer) -> MultiDer {
    let (dp, dq) = (p.degree(), q.degree());
    repackage(dp + dq, |args| {
        let mut out = Poly::zero(3);
        for (first, second, sign) in shuffles(dp, dq) {
            let a: Vec<Poly> = first.iter().map(|&i| args[i].clone()).collect();
            let b: Vec<Poly> = second.iter().map(|&i| args[i].clone()).collect();
            out += &(&evaluate(p, &a) * &evaluate(q, &b)).scale_int(sign);
        }
        out
    })
}

/// Componentwise gradient bivector `f grad g`.
pub fn fgrad(f: &Poly, g: &Poly) -> MultiDer {
    MultiDer::Bivector(Vec3::grad(g).mul_poly(f))
}

use poisson_deform_core::cohomology::PhiContext;
use poisson_deform_core::deformation::{CoeffTable, GaugeElement};
use num_traits::Zero;
use poisson_deform_core::poly::{ratio, Rational};
use std::sync::Arc;

pub fn context(name: &str) -> Arc<PhiContext> {
    let (_, phi, w) = corpus().into_iter().find(|c| c.0 == name).expect("corpus entry");
    Arc::new(PhiContext::new(phi, w).unwrap())
}

fn small_rational(r: &mut ChaCha8Rng) -> poisson_deform_core::poly::Rational {
    let mut n = 0;
    while n == 0 {
        n = r.gen_range(-4i64..=4);
    }
    ratio(n, r.gen_range(1i64..=3))
}

/// Random table with up to `entries` nonzero entries of order at most
/// `order` and phi powers at most `max_l`.
pub fn random_table(r: &mut ChaCha8Rng, ctx: &PhiContext, order: usize, entries: usize, max_l: usize) -> CoeffTable {
    let m = ctx.milnor();
    let mut t = CoeffTable::default();
    for _ in 0..r.gen_range(1..=entries) {
        let k = r.gen_range(1..=order);
        let pick_c = m.mu == 1 || r.gen_bool(0.5);
        if pick_c && !m.e_phi.is_empty() {
            let i = m.e_phi[r.gen_range(0..m.e_phi.len())];
            t.set_c(k, r.gen_range(0..=max_l), i, small_rational(r));
        } else if m.mu > 1 {
            t.set_cbar(k, r.gen_range(1..m.mu), small_rational(r));
        }
    }
    t
}

/// Random derivation whose components have weighted degree at most
/// `max_degree`.
pub fn random_vector_field(r: &mut ChaCha8Rng, w: &WeightSystem, max_degree: i64, terms: usize) -> MultiDer {
    let parts = (0..3)
        .map(|_| {
            let mut out = Poly::zero(3);
            for _ in 0..terms {
                let d = r.gen_range(0..=max_degree);
                out += &random_homogeneous(r, w, d, 1);
            }
            out
        })
        .collect();
    MultiDer::zero(1).with_parts(parts)
}

pub fn random_gauge(r: &mut ChaCha8Rng, w: &WeightSystem, order: usize, max_degree: i64) -> GaugeElement {
    GaugeElement::new(
        (0..order)
            .map(|_| random_vector_field(r, w, max_degree, 2))
            .collect(),
    )
    .unwrap()
}

/// Rank of a dense matrix by plain Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let v = &rows[rank][k] * &f;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the degree-`d` part of the Jacobian algebra, from the span
/// of `m * dphi/dx_i` over all monomials `m` of the right degree.
pub fn jacobian_quotient_dim(phi: &Poly, w: &WeightSystem, d: i64) -> usize {
    let target = w.monomials_of_degree(d);
    let mut rows = Vec::new();
    for i in 0..3 {
        let g = phi.partial(i);
        let Some(gd) = g.terms().next().map(|(m, _)| w.degree(m)) else {
            continue;
        };
        for m in w.monomials_of_degree(d - gd) {
            let prod = &g * &Poly::term(3, m, rat(1));
            rows.push(target.iter().map(|t| prod.coeff(t)).collect());
        }
    }
    target.len() - dense_rank(rows)
}

