//! Skew-symmetric multiderivations of `Q[x,y,z]`.
//!
//! A k-derivation is stored through its values on coordinates:
//!
//! | degree | body  | meaning                                  |
//! |--------|-------|------------------------------------------|
//! | 0      | Poly  | the function itself                      |
//! | 1      | Vec3  | `(V[x], V[y], V[z])`                     |
//! | 2      | Vec3  | `(P[y,z], P[z,x], P[x,y])`               |
//! | 3      | Poly  | `P[x,y,z]`                               |
//!
//! With these conventions a bivector `B` acts by `B[F,G] = B . (grad F x grad G)`
//! and the bracket of `phi` is the bivector `grad phi`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, WeightSystem};

/// Triple of polynomials in three variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vec3(pub [Poly; 3]);

impl Vec3 {
    pub fn new(a: Poly, b: Poly, c: Poly) -> Self {
        for p in [&a, &b, &c] {
            assert_eq!(p.arity(), 3, "vector components live in three variables");
        }
        Vec3([a, b, c])
    }

    pub fn zero() -> Self {
        Vec3([Poly::zero(3), Poly::zero(3), Poly::zero(3)])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(i: usize) -> Self {
        let mut v = Vec3::zero();
        v.0[i] = Poly::one(3);
        v
    }

    pub fn grad(p: &Poly) -> Self {
        Vec3([p.partial(0), p.partial(1), p.partial(2)])
    }

    pub fn components(&self) -> &[Poly; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn dot(&self, other: &Vec3) -> Poly {
        let mut out = Poly::zero(3);
        for i in 0..3 {
            out += &(&self.0[i] * &other.0[i]);
        }
        out
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        let (a, b) = (&self.0, &other.0);
        Vec3([
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ])
    }

    pub fn curl(&self) -> Vec3 {
        let a = &self.0;
        Vec3([
            &a[2].partial(1) - &a[1].partial(2),
            &a[0].partial(2) - &a[2].partial(0),
            &a[1].partial(0) - &a[0].partial(1),
        ])
    }

    pub fn div(&self) -> Poly {
        let mut out = self.0[0].partial(0);
        out += &self.0[1].partial(1);
        out += &self.0[2].partial(2);
        out
    }

    /// Directional derivative `self . grad p`.
    pub fn apply(&self, p: &Poly) -> Poly {
        self.dot(&Vec3::grad(p))
    }

    pub fn mul_poly(&self, p: &Poly) -> Vec3 {
        Vec3(self.0.clone().map(|c| &c * p))
    }

    pub fn scale(&self, c: &Rational) -> Vec3 {
        Vec3(self.0.clone().map(|p| p.scale(c)))
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Vec3 {
        Vec3(self.0.each_ref().map(f))
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vec3{self}")
    }
}

impl Add<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3([
            &self.0[0] + &rhs.0[0],
            &self.0[1] + &rhs.0[1],
            &self.0[2] + &rhs.0[2],
        ])
    }
}

impl Sub<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3([
            &self.0[0] - &rhs.0[0],
            &self.0[1] - &rhs.0[1],
            &self.0[2] - &rhs.0[2],
        ])
    }
}

impl AddAssign<&Vec3> for Vec3 {
    fn add_assign(&mut self, rhs: &Vec3) {
        for i in 0..3 {
            self.0[i] += &rhs.0[i];
        }
    }
}

impl SubAssign<&Vec3> for Vec3 {
    fn sub_assign(&mut self, rhs: &Vec3) {
        for i in 0..3 {
            self.0[i] -= &rhs.0[i];
        }
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.each_ref().map(|p| -p))
    }
}

/// A skew-symmetric k-derivation, `k = 0..=3`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MultiDer {
    Function(Poly),
    Vector(Vec3),
    Bivector(Vec3),
    Trivector(Poly),
}

impl MultiDer {
    pub fn zero(degree: usize) -> Self {
        match degree {
            0 => MultiDer::Function(Poly::zero(3)),
            1 => MultiDer::Vector(Vec3::zero()),
            2 => MultiDer::Bivector(Vec3::zero()),
            3 => MultiDer::Trivector(Poly::zero(3)),
            _ => panic!("multiderivation degree {degree} does not exist in three variables"),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            MultiDer::Function(_) => 0,
            MultiDer::Vector(_) => 1,
            MultiDer::Bivector(_) => 2,
            MultiDer::Trivector(_) => 3,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MultiDer::Function(p) | MultiDer::Trivector(p) => p.is_zero(),
            MultiDer::Vector(v) | MultiDer::Bivector(v) => v.is_zero(),
        }
    }

    /// Body of a degree 0 or 3 element.
    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            MultiDer::Function(p) | MultiDer::Trivector(p) => Some(p),
            _ => None,
        }
    }

    /// Body of a degree 1 or 2 element.
    pub fn as_vec3(&self) -> Option<&Vec3> {
        match self {
            MultiDer::Vector(v) | MultiDer::Bivector(v) => Some(v),
            _ => None,
        }
    }

    /// Components as a list of polynomials (one or three entries).
    pub fn parts(&self) -> Vec<&Poly> {
        match self {
            MultiDer::Function(p) | MultiDer::Trivector(p) => vec![p],
            MultiDer::Vector(v) | MultiDer::Bivector(v) => v.0.iter().collect(),
        }
    }

    /// Rebuilds an element of the same degree from new components.
    pub fn with_parts(&self, parts: Vec<Poly>) -> MultiDer {
        let mut it = parts.into_iter();
        let mut next = || it.next().expect("enough components");
        match self {
            MultiDer::Function(_) => MultiDer::Function(next()),
            MultiDer::Trivector(_) => MultiDer::Trivector(next()),
            MultiDer::Vector(_) => MultiDer::Vector(Vec3([next(), next(), next()])),
            MultiDer::Bivector(_) => MultiDer::Bivector(Vec3([next(), next(), next()])),
        }
    }

    pub fn map(&self, mut f: impl FnMut(&Poly) -> Poly) -> MultiDer {
        self.with_parts(self.parts().into_iter().map(&mut f).collect())
    }

    pub fn scale(&self, c: &Rational) -> MultiDer {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly) -> MultiDer {
        self.map(|p| p * f)
    }

    fn check_same_degree(&self, other: &MultiDer) {
        assert_eq!(
            self.degree(),
            other.degree(),
            "multiderivations of different degree combined"
        );
    }

    /// Weighted degree shift of component `i` under the grading convention:
    /// a k-derivation of weight `d` has component `i` of polynomial degree
    /// `d + shift(i)`.
    pub fn component_shift(degree: usize, i: usize, w: &WeightSystem) -> i64 {
        match degree {
            0 => 0,
            1 => w.weight(i),
            2 => w.weight_sum() - w.weight(i),
            3 => w.weight_sum(),
            _ => unreachable!(),
        }
    }

    /// Splits into weight-homogeneous pieces keyed by weight.
    pub fn graded_parts(&self, w: &WeightSystem) -> BTreeMap<i64, MultiDer> {
        let k = self.degree();
        let mut out: BTreeMap<i64, Vec<Poly>> = BTreeMap::new();
        let parts = self.parts();
        let n = parts.len();
        for (i, p) in parts.into_iter().enumerate() {
            let shift = Self::component_shift(k, if n == 1 { 0 } else { i }, w);
            for (d, piece) in p.graded_parts(w) {
                out.entry(d - shift)
                    .or_insert_with(|| vec![Poly::zero(3); n])[i] = piece;
            }
        }
        out.into_iter()
            .map(|(d, ps)| (d, self.with_parts(ps)))
            .collect()
    }

    /// The weight when homogeneous, `None` for zero, error otherwise.
    pub fn weight(&self, w: &WeightSystem) -> Result<Option<i64>> {
        let parts = self.graded_parts(w);
        match parts.len() {
            0 => Ok(None),
            1 => Ok(parts.keys().next().copied()),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Monomial basis of the weight-`d` component of k-derivations:
    /// pairs (component index, monomial).
    pub fn graded_basis(degree: usize, d: i64, w: &WeightSystem) -> Vec<(usize, Monomial)> {
        let n = if degree == 0 || degree == 3 { 1 } else { 3 };
        let mut out = Vec::new();
        for i in 0..n {
            let shift = Self::component_shift(degree, i, w);
            for m in w.monomials_of_degree(d + shift) {
                out.push((i, m));
            }
        }
        out
    }

    /// Single-term element with `monomial` in component `i`.
    pub fn basis_element(degree: usize, i: usize, m: Monomial) -> MultiDer {
        let mut parts = vec![Poly::zero(3); if degree == 0 || degree == 3 { 1 } else { 3 }];
        parts[i] = Poly::term(3, m, Rational::from_integer(1.into()));
        MultiDer::zero(degree).with_parts(parts)
    }
}

impl fmt::Display for MultiDer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiDer::Function(p) | MultiDer::Trivector(p) => write!(f, "{p}"),
            MultiDer::Vector(v) | MultiDer::Bivector(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for MultiDer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiDer<{}>({self})", self.degree())
    }
}

impl Add<&MultiDer> for &MultiDer {
    type Output = MultiDer;
    fn add(self, rhs: &MultiDer) -> MultiDer {
        self.check_same_degree(rhs);
        let r = rhs.parts();
        self.with_parts(self.parts().iter().zip(r).map(|(a, b)| *a + b).collect())
    }
}

impl Sub<&MultiDer> for &MultiDer {
    type Output = MultiDer;
    fn sub(self, rhs: &MultiDer) -> MultiDer {
        self.check_same_degree(rhs);
        let r = rhs.parts();
        self.with_parts(self.parts().iter().zip(r).map(|(a, b)| *a - b).collect())
    }
}

impl AddAssign<&MultiDer> for MultiDer {
    fn add_assign(&mut self, rhs: &MultiDer) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&MultiDer> for MultiDer {
    fn sub_assign(&mut self, rhs: &MultiDer) {
        *self = &*self - rhs;
    }
}

impl Neg for &MultiDer {
    type Output = MultiDer;
    fn neg(self) -> MultiDer {
        self.map(|p| -p)
    }
}

/// The Euler derivation `(w1 x, w2 y, w3 z)`.
pub fn euler_field(w: &WeightSystem) -> MultiDer {
    assert_eq!(w.arity(), 3);
    let c = |i: usize| Poly::var(3, i).scale_int(w.weight(i));
    MultiDer::Vector(Vec3([c(0), c(1), c(2)]))
}

/// The bivector of `{x,y} = phi_z, {y,z} = phi_x, {z,x} = phi_y`.
pub fn poisson_from_poly(phi: &Poly) -> MultiDer {
    MultiDer::Bivector(Vec3::grad(phi))
}

/// `B[F, G]` for a bivector body `B`.
pub fn bivector_apply(b: &Vec3, f: &Poly, g: &Poly) -> Poly {
    b.dot(&Vec3::grad(f).cross(&Vec3::grad(g)))
}

/// Lie derivative of a bivector body along a vector field.
fn lie_bivector(v: &Vec3, a: &Vec3) -> Vec3 {
    let dv: Vec<Vec3> = v.0.iter().map(Vec3::grad).collect();
    let mut out = Vec3::zero();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        // [V,A][x_j, x_k] = V(A_i) - A[V_j, x_k] - A[x_j, V_k]
        let mut c = v.apply(&a.0[i]);
        c -= &a.dot(&dv[j].cross(&Vec3::unit(k)));
        c -= &a.dot(&Vec3::unit(j).cross(&dv[k]));
        out.0[i] = c;
    }
    out
}

/// Schouten bracket. Fails when the result degree `p + q - 1` falls outside
/// `0..=3`.
pub fn schouten(p: &MultiDer, q: &MultiDer) -> Result<MultiDer> {
    use MultiDer::*;
    let (dp, dq) = (p.degree(), q.degree());
    if dp + dq == 0 || dp + dq > 4 {
        return Err(Error::DegreeOutOfRange { p: dp, q: dq });
    }
    Ok(match (p, q) {
        (Function(f), Vector(v)) => Function(-&v.apply(f)),
        (Vector(v), Function(f)) => Function(v.apply(f)),
        (Function(f), Bivector(a)) | (Bivector(a), Function(f)) => {
            Vector(a.cross(&Vec3::grad(f)))
        }
        (Function(f), Trivector(t)) => Bivector(Vec3::grad(f).mul_poly(&-t)),
        (Trivector(t), Function(f)) => Bivector(Vec3::grad(f).mul_poly(t)),
        (Vector(v), Vector(u)) => {
            let c = |i: usize| &v.apply(&u.0[i]) - &u.apply(&v.0[i]);
            Vector(Vec3([c(0), c(1), c(2)]))
        }
        (Vector(v), Bivector(a)) => Bivector(lie_bivector(v, a)),
        (Bivector(a), Vector(v)) => Bivector(-&lie_bivector(v, a)),
        (Vector(v), Trivector(t)) => Trivector(&v.apply(t) - &(t * &v.div())),
        (Trivector(t), Vector(v)) => Trivector(&(t * &v.div()) - &v.apply(t)),
        (Bivector(a), Bivector(b)) => Trivector(&a.dot(&b.curl()) + &b.dot(&a.curl())),
        _ => unreachable!("degree range checked above"),
    })
}

/// `[F grad L, G grad H]_S = F grad L . (grad G x grad H) + G grad H . (grad F x grad L)`.
pub fn schouten_gradpair(f: &Poly, l: &Poly, g: &Poly, h: &Poly) -> Poly {
    let (gf, gl, gg, gh) = (Vec3::grad(f), Vec3::grad(l), Vec3::grad(g), Vec3::grad(h));
    let a = f * &gl.dot(&gg.cross(&gh));
    let b = g * &gh.dot(&gf.cross(&gl));
    &a + &b
}

/// `[pi, pi]_S`, zero exactly when `pi` satisfies the Jacobi identity.
pub fn jacobi_defect(pi: &MultiDer) -> Result<MultiDer> {
    if pi.degree() != 2 {
        return Err(Error::Precondition("Jacobi defect needs a bivector".into()));
    }
    schouten(pi, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 3).unwrap()
    }

    fn v(a: &str, b: &str, c: &str) -> Vec3 {
        Vec3::new(p(a), p(b), p(c))
    }

    #[test]
    fn vector_calculus() {
        assert_eq!(Vec3::unit(0).cross(&Vec3::unit(1)), Vec3::unit(2));
        let f = p("x^3*y - 2*y*z^2 + x*z");
        assert!(Vec3::grad(&f).curl().is_zero());
        let g = p("x*y*z + z^3");
        assert!(Vec3::grad(&f).cross(&Vec3::grad(&g)).div().is_zero());
        assert!(v("x*y", "z^2", "x^3").curl().div().is_zero());
    }

    #[test]
    fn bracket_of_phi() {
        let phi = p("x*y*z");
        assert_eq!(
            poisson_from_poly(&phi),
            MultiDer::Bivector(v("y*z", "x*z", "x*y"))
        );
        let pi = poisson_from_poly(&phi);
        let b = pi.as_vec3().unwrap();
        assert_eq!(bivector_apply(b, &p("x"), &p("y")), p("x*y"));
        assert_eq!(bivector_apply(b, &p("y"), &p("z")), p("y*z"));
    }

    #[test]
    fn jacobi_for_gradient_structures() {
        let phi = p("x^2 + y^2 + z^2");
        assert!(jacobi_defect(&poisson_from_poly(&phi)).unwrap().is_zero());
        let chi = p("1 + x*y - z^3");
        let pi = MultiDer::Bivector(Vec3::grad(&phi).mul_poly(&chi));
        assert!(jacobi_defect(&pi).unwrap().is_zero());
        let bad = MultiDer::Bivector(v("y", "0", "x"));
        assert!(!jacobi_defect(&bad).unwrap().is_zero());
    }

    #[test]
    fn gradpair_example() {
        // [x grad y, grad z]_S is the constant 1
        let a = MultiDer::Bivector(Vec3::grad(&p("y")).mul_poly(&p("x")));
        let b = MultiDer::Bivector(Vec3::grad(&p("z")));
        assert_eq!(schouten(&a, &b).unwrap(), MultiDer::Trivector(Poly::one(3)));
        assert_eq!(schouten_gradpair(&p("x"), &p("y"), &p("1"), &p("z")), Poly::one(3));
        assert!(schouten_gradpair(&p("1"), &p("x"), &p("1"), &p("y")).is_zero());
    }

    #[test]
    fn degree_range() {
        let t = MultiDer::Trivector(p("x"));
        let b = MultiDer::Bivector(v("x", "y", "z"));
        assert!(matches!(
            schouten(&t, &b),
            Err(Error::DegreeOutOfRange { p: 3, q: 2 })
        ));
        let f = MultiDer::Function(p("x"));
        assert!(schouten(&f, &f).is_err());
    }

    #[test]
    fn grading_convention() {
        let w = WeightSystem::new(&[5, 5, 2]).unwrap();
        let e = euler_field(&w);
        assert_eq!(e.weight(&w).unwrap(), Some(0));
        let pi = poisson_from_poly(&p("x^2 + y^2 + z^5"));
        // component i has degree 10 - w_i = d + 12 - w_i, so d = -2
        assert_eq!(pi.weight(&w).unwrap(), Some(-2));
        let basis = MultiDer::graded_basis(2, -2, &w);
        assert_eq!(basis.len(), 2 + 2 + 1);
    }
}
