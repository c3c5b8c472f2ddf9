//! Multivariate polynomial GCD over the rationals.
//!
//! The heuristic evaluation method (GCDHEU) is tried first: evaluate one
//! variable at an integer, recurse, rebuild the candidate by xi-adic
//! expansion and accept it only if it divides both inputs. The evaluation
//! point always exceeds `2 min(|a|, |b|) + 2`, which makes an accepted
//! candidate the true gcd. When the heuristic gives up, recursive primitive
//! pseudo-remainder sequences finish the job.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Atom, Poly};

const HEURISTIC_TRIES: usize = 6;
const MAX_XI_BITS: u64 = 6000;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    integer_gcd(&integral(a), &integral(b)).monic()
}

/// Rescales to coprime integer coefficients with a positive leading one.
fn integral(p: &Poly) -> Poly {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Poly::zero();
    }
    if p.leading().is_some_and(|(_, c)| c.is_negative()) {
        num = -num;
    }
    p.scale(&BigRational::new(den, num))
}

fn integer_content(p: &Poly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

/// Gcd in Z[atoms] of integer-coefficient polynomials, including the
/// integer content, normalized to a positive leading coefficient.
fn integer_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        let p = if a.is_zero() { b } else { a };
        return if p.leading().is_some_and(|(_, c)| c.is_negative()) { p.neg() } else { p.clone() };
    }
    let (ca, cb) = (integer_content(a), integer_content(b));
    let c = BigRational::from_integer(ca.gcd(&cb));
    if a.is_constant() || b.is_constant() {
        return Poly::constant(c);
    }
    let (pa, pb) = (integral(a), integral(b));
    let h = heuristic_gcd(&pa, &pb).unwrap_or_else(|| integral(&prs_gcd(&pa, &pb)));
    h.scale(&c)
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// Substitutes the integer `xi` for `v`.
fn evaluate(p: &Poly, v: &Atom, xi: &BigInt) -> Poly {
    let xi = BigRational::from_integer(xi.clone());
    p.to_univariate(v)
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| acc.scale(&xi).add(c))
}

/// Symmetric residue of `n` modulo `m`.
fn symmetric_mod(n: &BigInt, m: &BigInt) -> BigInt {
    let r = n.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Inverts evaluation at `xi`, reading integer coefficients in balanced
/// base `xi`.
fn reconstruct(mut h: Poly, v: &Atom, xi: &BigInt) -> Poly {
    let mut digits = Vec::new();
    let xr = BigRational::from_integer(xi.clone()).recip();
    while !h.is_zero() {
        let mut digit = Poly::zero();
        for (m, c) in h.terms() {
            let d = symmetric_mod(c.numer(), xi);
            if !d.is_zero() {
                digit = digit.add(&Poly::term(m.clone(), BigRational::from_integer(d)));
            }
        }
        h = h.sub(&digit).scale(&xr);
        digits.push(digit);
    }
    Poly::from_univariate(&digits, v)
}

fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut atoms = a.atoms();
    atoms.extend(b.atoms());
    let v = atoms.into_iter().next()?;
    let bound: BigInt = max_norm(a).min(max_norm(b)) * 2 + 2;
    let mut xi = bound.clone();
    for _ in 0..HEURISTIC_TRIES {
        if xi.bits() > MAX_XI_BITS {
            return None;
        }
        let (ea, eb) = (evaluate(a, &v, &xi), evaluate(b, &v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let g = reconstruct(integer_gcd(&ea, &eb), &v, &xi);
            if !g.is_zero() {
                let h = integral(&g);
                if a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                    return Some(h);
                }
            }
        }
        // Growth factor from the original method, about 2.73 * xi^(5/4).
        xi = &xi * 73794u32 * xi.sqrt().sqrt() / 27011u32 + 1u32;
        debug_assert!(xi.sign() == Sign::Plus);
    }
    None
}

/// Gcd by recursive primitive pseudo-remainder sequences, monic.
fn prs_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let va = a.atoms();
    let vb = b.atoms();
    if let Some(v) = va.symmetric_difference(&vb).next() {
        return if va.contains(v) {
            gcd(&content(&a.to_univariate(v)), b)
        } else {
            gcd(a, &content(&b.to_univariate(v)))
        };
    }
    // Shared variable of least degree keeps the remainder sequence short.
    let Some(v) = va.iter().min_by_key(|v| max_degree(a, v).max(max_degree(b, v))).cloned() else {
        return Poly::one();
    };
    let ua = a.to_univariate(&v);
    let ub = b.to_univariate(&v);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd(&ca, &cb);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);
    let g = univariate_primitive_gcd(pa, pb);
    c.mul(&Poly::from_univariate(&g, &v)).monic()
}

fn max_degree(p: &Poly, v: &Atom) -> u32 {
    p.terms().map(|(m, _)| m.degree_in(v)).max().unwrap_or(0)
}

/// Gcd of the coefficients of a univariate view, smallest first.
fn content(coeffs: &[Poly]) -> Poly {
    let mut sorted: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    sorted.sort_by_key(|c| c.terms().count());
    let mut g = Poly::zero();
    for c in sorted {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coeffs(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
}

fn degree(v: &[Poly]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn primitive_part(v: &[Poly]) -> Vec<Poly> {
    let c = content(v);
    if c.is_zero() {
        return Vec::new();
    }
    clear_rational_content(divide_coeffs(v, &c))
}

/// Scales so the rational coefficients are coprime integers. `content`
/// works up to units of Q, so without this the pseudo-remainders grow
/// exponentially in size.
fn clear_rational_content(v: Vec<Poly>) -> Vec<Poly> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in v.iter().flat_map(|p| p.terms()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return v;
    }
    let s = BigRational::new(den, num);
    v.iter().map(|p| p.scale(&s)).collect()
}

fn pseudo_remainder(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lb)).collect();
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            next[i + shift] = next[i + shift].sub(&lr.mul(bi));
        }
        trim(&mut next);
        r = next;
    }
    r
}

fn univariate_primitive_gcd(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    trim(&mut a);
    trim(&mut b);
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while degree(&b).is_some() {
        if degree(&b) == Some(0) {
            return vec![Poly::one()];
        }
        let r = pseudo_remainder(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    primitive_part(&a)
}

/// Gcd of a numerator that may contain opaque atoms with a coordinate-only
/// denominator.
pub fn gcd_with_coordinate_poly(numer: &Poly, denom: &Poly) -> Poly {
    if !numer.has_opaque() {
        return gcd(numer, denom);
    }
    let mut g = denom.monic();
    for coeff in numer.opaque_coefficients().values() {
        g = gcd(&g, coeff);
        if g.is_one() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn c(n: i64) -> Poly {
        Poly::constant(BigRational::from_integer(n.into()))
    }
    fn x() -> Poly {
        Poly::atom(Atom::coord("x"))
    }
    fn y() -> Poly {
        Poly::atom(Atom::coord("y"))
    }

    #[test]
    fn gcd_of_products() {
        let a = x().add(&y()).mul(&x().sub(&c(1)));
        let b = x().add(&y()).mul(&y().add(&c(2)));
        assert_eq!(gcd(&a, &b), x().add(&y()));
    }

    #[test]
    fn coprime_is_one() {
        let a = x().mul(&x()).add(&c(1));
        let b = x().add(&y());
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn repeated_factor() {
        let q = c(1).add(&x().mul(&x())).add(&y().mul(&y()));
        let a = q.pow(3).mul(&x());
        let b = q.pow(2).mul(&y());
        assert_eq!(gcd(&a, &b), q.pow(2).monic());
    }

    #[test]
    fn remainder_coefficients_stay_small() {
        let z = Poly::atom(Atom::coord("z"));
        let m = |v: &[&Poly]| v.iter().fold(c(1), |acc, p| acc.mul(p));
        let a = m(&[&c(-2), &x(), &x(), &y(), &z, &z])
            .add(&m(&[&c(2), &x(), &x(), &z]))
            .sub(&m(&[&c(2), &x(), &z, &z]))
            .sub(&m(&[&c(3), &x(), &z]));
        let b = m(&[&c(3), &x(), &y(), &z, &z]).sub(&m(&[&c(4), &x()])).sub(&m(&[&c(2), &y()]));
        let num = a.partial("y").mul(&b).sub(&a.mul(&b.partial("y")));
        assert!(gcd(&num, &b.mul(&b)).is_one());
    }

    #[test]
    fn heuristic_and_remainder_sequence_agree() {
        let z = Poly::atom(Atom::coord("z"));
        let f = x().mul(&y()).sub(&c(3)).mul(&z.add(&c(1)));
        let g = x().mul(&x()).add(&y().mul(&z)).sub(&c(2));
        let h = y().mul(&y()).sub(&x().mul(&z).scale(&BigRational::new(2.into(), 3.into())));
        for (a, b) in [(f.mul(&g), f.mul(&h)), (g.mul(&h).mul(&h), h.mul(&f)), (f.pow(2), f.mul(&g))] {
            let heu = gcd(&a, &b);
            assert_eq!(heu, prs_gcd(&a, &b));
            assert!(a.div_exact(&heu).is_some() && b.div_exact(&heu).is_some());
        }
    }

    #[test]
    fn with_opaque_numerator() {
        let f = Poly::atom(Atom::opaque("f"));
        let q = c(1).add(&x().mul(&x()));
        let n = f.mul(&q).add(&q.mul(&y()));
        assert_eq!(gcd_with_coordinate_poly(&n, &q.pow(2)), q.monic());
    }
}
