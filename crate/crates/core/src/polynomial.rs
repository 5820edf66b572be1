//! Exact univariate polynomial arithmetic over the rationals: characteristic
//! polynomials of adjacency matrices, square-free decomposition, Sturm chains
//! and bisection-based real root isolation.
//!
//! All eigenvalues of an adjacency matrix are real, so Sturm counting plus
//! bisection pins each one to any requested width without floating-point
//! noise. This backs the spectral immunity certificates for small graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graph::Graph;

/// Dense polynomial, coefficients ascending (index = power).
pub type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

pub fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn eval(p: &Poly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c * BigRational::from(BigInt::from(i)));
    }
    out
}

/// Remainder of `a / b`.
fn rem(a: &Poly, b: &Poly) -> Poly {
    assert!(!is_zero_poly(b), "division by zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    let db = degree(b);
    let lead = b[db].clone();
    while !is_zero_poly(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let factor = &r[dr] / &lead;
        for i in 0..=db {
            let idx = dr - db + i;
            let sub = &factor * &b[i];
            r[idx] -= sub;
        }
        trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    trim(&mut r);
    r
}

/// Quotient of `a / b` (exact division not required; this is Euclidean).
fn quot(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let db = degree(b);
    let lead = b[db].clone();
    if degree(&r) < db || is_zero_poly(&r) {
        return vec![BigRational::zero()];
    }
    let mut q = vec![BigRational::zero(); degree(&r) - db + 1];
    while !is_zero_poly(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let factor = &r[dr] / &lead;
        q[dr - db] = factor.clone();
        for i in 0..=db {
            let idx = dr - db + i;
            let sub = &factor * &b[i];
            r[idx] -= sub;
        }
        trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    q
}

/// Monic gcd by the Euclidean algorithm.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if is_zero_poly(&x) {
        return x;
    }
    let lead = x[degree(&x)].clone();
    x.iter().map(|c| c / &lead).collect()
}

/// Yun's square-free decomposition: returns `(factor, multiplicity)` pairs
/// with distinct roots per factor and the product of factor^multiplicity
/// equal to the input up to a constant.
pub fn square_free_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let dp = derivative(p);
    let a0 = gcd(p, &dp);
    if degree(&a0) == 0 {
        out.push((p.clone(), 1));
        return out;
    }
    let mut b = quot(p, &a0);
    let mut c = quot(&dp, &a0);
    let mut i = 1;
    loop {
        let db = derivative(&b);
        let d: Poly = {
            let mut d = c.clone();
            let len = d.len().max(db.len());
            d.resize(len, BigRational::zero());
            for (k, coeff) in db.iter().enumerate() {
                d[k] -= coeff;
            }
            trim(&mut d);
            d
        };
        let a = gcd(&b, &d);
        if degree(&a) > 0 {
            out.push((a.clone(), i));
        }
        b = quot(&b, &a);
        c = quot(&d, &a);
        i += 1;
        if degree(&b) == 0 {
            break;
        }
    }
    out
}

/// Sturm chain of a square-free polynomial.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let k = chain.len();
        let r = rem(&chain[k - 2], &chain[k - 1]);
        if is_zero_poly(&r) {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &BigRational) -> usize {
    let mut variations = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = eval(p, x);
        if v.is_zero() {
            continue;
        }
        let sign = v.is_positive();
        if let Some(prev) = last {
            if prev != sign {
                variations += 1;
            }
        }
        last = Some(sign);
    }
    variations
}

/// Number of distinct real roots of the chain's polynomial in `(lo, hi]`.
pub fn count_roots_in(chain: &[Poly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// All real roots of a square-free polynomial within `(lo, hi]`, each located
/// to an interval of width at most `width`. Returns interval midpoints,
/// ascending.
pub fn isolate_roots(p: &Poly, lo: BigRational, hi: BigRational, width: &BigRational) -> Vec<BigRational> {
    let chain = sturm_chain(p);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    let two = BigRational::from(BigInt::from(2));
    while let Some((a, b)) = stack.pop() {
        let count = count_roots_in(&chain, &a, &b);
        if count == 0 {
            continue;
        }
        if count == 1 && (&b - &a) <= *width {
            out.push((&a + &b) / &two);
            continue;
        }
        let mid = (&a + &b) / &two;
        // Push left first so the right half is processed first; output is
        // sorted at the end anyway.
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort();
    out
}

/// Characteristic polynomial `det(xI - A)` of the adjacency matrix, exact,
/// by the Faddeev–LeVerrier recurrence.
pub fn adjacency_char_poly(g: &Graph) -> Poly {
    let n = g.n();
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|u| (0..n).map(|v| BigInt::from(u8::from(u != v && g.has_edge(u, v)))).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // m starts as A; c_{n-k} = -tr(m)/k; then m <- A (m + c I).
    let mut m = a.clone();
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| m[i][i].clone()).sum();
        let c = -tr / BigInt::from(k);
        coeffs[n - k] = c.clone();
        if k == n {
            break;
        }
        for i in 0..n {
            m[i][i] += &c;
        }
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if a[i][j].is_zero() {
                    continue;
                }
                for (l, nl) in next[i].iter_mut().enumerate() {
                    *nl += &a[i][j] * &m[j][l];
                }
            }
        }
        m = next;
    }
    coeffs.into_iter().map(BigRational::from).collect()
}

/// All eigenvalues of the adjacency matrix, descending, with multiplicity,
/// each within `tol` of the true value. Exact-arithmetic route; practical for
/// small `n`.
pub fn adjacency_eigenvalues_exact(g: &Graph, tol: f64) -> Vec<f64> {
    let n = g.n();
    let p = adjacency_char_poly(g);
    let width = BigRational::new(BigInt::from((tol * 1e18) as i128), BigInt::from(1_000_000_000_000_000_000u64));
    let lo = BigRational::from(BigInt::from(-(n as i64) - 1));
    let hi = BigRational::from(BigInt::from(n as i64 + 1));
    let mut eigen: Vec<(BigRational, usize)> = Vec::new();
    for (factor, mult) in square_free_decomposition(&p) {
        if degree(&factor) == 0 {
            continue;
        }
        for root in isolate_roots(&factor, lo.clone(), hi.clone(), &width) {
            eigen.push((root, mult));
        }
    }
    eigen.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = Vec::with_capacity(n);
    for (root, mult) in eigen {
        let val = rational_to_f64(&root);
        for _ in 0..mult {
            out.push(val);
        }
    }
    out
}

/// Exact count of adjacency eigenvalues (with multiplicity) in `(lo, hi]`.
pub fn count_adjacency_eigenvalues_in(g: &Graph, lo: &BigRational, hi: &BigRational) -> usize {
    let p = adjacency_char_poly(g);
    let mut total = 0;
    for (factor, mult) in square_free_decomposition(&p) {
        if degree(&factor) == 0 {
            continue;
        }
        let chain = sturm_chain(&factor);
        total += mult * count_roots_in(&chain, lo, hi);
    }
    total
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    // Scale through a fixed denominator; adjacency eigenvalues are tiny
    // numbers so this is lossless enough for reporting.
    let scale = BigInt::from(1_000_000_000_000_000_000u64);
    let scaled = (x.numer() * &scale) / x.denom();
    let as_f: f64 = scaled.to_string().parse().unwrap_or(f64::NAN);
    as_f / 1e18
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named, NamedGraph};

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn char_poly_of_k4() {
        // det(xI - A) for K_4 is (x-3)(x+1)^3 = x^4 - 6x^2 - 8x - 3.
        let k4 = make_named(NamedGraph::Complete(4)).unwrap();
        let p = adjacency_char_poly(&k4);
        let expect: Vec<i64> = vec![-3, -8, -6, 0, 1];
        assert_eq!(p.len(), 5);
        for (c, e) in p.iter().zip(expect) {
            assert_eq!(*c, rational(e, 1));
        }
    }

    #[test]
    fn k4_eigenvalues() {
        let k4 = make_named(NamedGraph::Complete(4)).unwrap();
        let ev = adjacency_eigenvalues_exact(&k4, 1e-12);
        assert_eq!(ev.len(), 4);
        assert!((ev[0] - 3.0).abs() < 1e-9);
        for &v in &ev[1..] {
            assert!((v + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn c4_eigenvalues() {
        let c4 = make_named(NamedGraph::Cycle(4)).unwrap();
        let ev = adjacency_eigenvalues_exact(&c4, 1e-12);
        let expect = [2.0, 0.0, 0.0, -2.0];
        for (got, want) in ev.iter().zip(expect) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn eigenvalue_count_in_interval() {
        let k4 = make_named(NamedGraph::Complete(4)).unwrap();
        // No eigenvalue strictly above -1 and below 3: (−1, 3−ε] is empty...
        assert_eq!(count_adjacency_eigenvalues_in(&k4, &rational(-1, 1), &rational(2, 1)), 0);
        // (−2, 3] holds all four: the triple −1 and the simple 3.
        assert_eq!(count_adjacency_eigenvalues_in(&k4, &rational(-2, 1), &rational(3, 1)), 4);
    }

    #[test]
    fn sturm_counts_path_spectrum() {
        // P_3 has eigenvalues -sqrt(2), 0, sqrt(2).
        let p3 = make_named(NamedGraph::Path(3)).unwrap();
        let p = adjacency_char_poly(&p3);
        let chain = sturm_chain(&p);
        assert_eq!(count_roots_in(&chain, &rational(-2, 1), &rational(2, 1)), 3);
        assert_eq!(count_roots_in(&chain, &rational(1, 1), &rational(2, 1)), 1);
    }
}
