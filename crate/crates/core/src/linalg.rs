//! Exact dense linear algebra over the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Default modulus for randomized sampling.
pub const DEFAULT_PRIME: u64 = 1_000_003;

/// Integer range used when drawing random rationals.
const RATIONAL_SAMPLE_BOUND: i64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("denominator of {0} is not invertible modulo {1}")]
    NonInvertible(String, u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn default_prime() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, LinalgError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(LinalgError::NonInvertible(q.to_string(), p));
                }
                Ok(Scalar::Prime {
                    value: mul_mod(num, inv_mod(den, p), p),
                    p,
                })
            }
        }
    }

    /// Parses an integer or a fraction such as `-3/7`.
    pub fn parse(self, text: &str) -> Result<Scalar, LinalgError> {
        let err = || LinalgError::Parse(text.to_string());
        let t = text.trim();
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| err())?),
        };
        self.from_rational(&q)
    }

    /// A uniformly random element of F_p, or a random integer in a small range over Q.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND)),
            Field::Prime(p) => Scalar::Prime {
                value: rng.gen_range(0..p),
                p,
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, p } => Scalar::Prime {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    /// Rational representative; residues map to the symmetric range around zero.
    pub fn lift(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Prime { value, p } => {
                let v = if *value > p / 2 {
                    *value as i128 - *p as i128
                } else {
                    *value as i128
                };
                BigRational::from_integer(BigInt::from(v))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn same_field(a: &Scalar, b: &Scalar) -> u64 {
    match (a, b) {
        (Scalar::Prime { p, .. }, Scalar::Prime { p: q, .. }) if p == q => *p,
        (Scalar::Rational(_), Scalar::Rational(_)) => 0,
        _ => panic!("scalars from different fields: {} and {}", a.field(), b.field()),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: (a + b) % p,
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: mul_mod(*a, *b, p),
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, p } => Scalar::Prime {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Entries {
    Rational(Vec<BigRational>),
    Prime(u64, Vec<u64>),
}

/// Field arithmetic on raw entries, shared by both storage variants.
trait Ops: Copy {
    type E: Clone + PartialEq;
    fn zero(self) -> Self::E;
    fn is_zero(self, a: &Self::E) -> bool;
    fn add(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(self, a: &Self::E) -> Self::E;
    fn inv(self, a: &Self::E) -> Self::E;
    /// a − b·c
    fn sub_mul(self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
    fn wrap(self, v: Vec<Self::E>) -> Entries;
    fn view(self, e: &Entries) -> &[Self::E];
    fn embed_scalar(self, s: &Scalar) -> Self::E;
    fn to_scalar(self, e: &Self::E) -> Scalar;
}

#[derive(Clone, Copy)]
struct RatOps;

#[derive(Clone, Copy)]
struct PrimeOps(u64);

impl Ops for RatOps {
    type E = BigRational;
    fn zero(self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_mul(self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
    fn wrap(self, v: Vec<BigRational>) -> Entries {
        Entries::Rational(v)
    }
    fn view(self, e: &Entries) -> &[BigRational] {
        match e {
            Entries::Rational(v) => v,
            Entries::Prime(p, _) => panic!("expected a rational matrix, found one over F_{p}"),
        }
    }
    fn embed_scalar(self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            other => panic!("expected a rational scalar, found one over {}", other.field()),
        }
    }
    fn to_scalar(self, e: &BigRational) -> Scalar {
        Scalar::Rational(e.clone())
    }
}

impl Ops for PrimeOps {
    type E = u64;
    fn zero(self) -> u64 {
        0
    }
    fn is_zero(self, a: &u64) -> bool {
        *a == 0
    }
    fn add(self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn mul(self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn neg(self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn sub_mul(self, a: &u64, b: &u64, c: &u64) -> u64 {
        let bc = mul_mod(*b, *c, self.0);
        if *a >= bc {
            a - bc
        } else {
            a + self.0 - bc
        }
    }
    fn wrap(self, v: Vec<u64>) -> Entries {
        Entries::Prime(self.0, v)
    }
    fn view(self, e: &Entries) -> &[u64] {
        match e {
            Entries::Prime(p, v) if *p == self.0 => v,
            Entries::Prime(p, _) => panic!("mixing F_{} and F_{p}", self.0),
            Entries::Rational(_) => panic!("expected a matrix over F_{}, found a rational one", self.0),
        }
    }
    fn embed_scalar(self, s: &Scalar) -> u64 {
        match s {
            Scalar::Prime { value, p } if *p == self.0 => *value,
            other => panic!("expected a scalar over F_{}, found one over {}", self.0, other.field()),
        }
    }
    fn to_scalar(self, e: &u64) -> Scalar {
        Scalar::Prime { value: *e, p: self.0 }
    }
}

macro_rules! dispatch {
    ($entries:expr, $o:ident, $v:ident => $body:expr) => {
        match $entries {
            Entries::Rational($v) => {
                let $o = RatOps;
                $body
            }
            Entries::Prime(p, $v) => {
                let $o = PrimeOps(*p);
                $body
            }
        }
    };
}

/// Row echelon form in place; returns the pivot columns. With `reduced`, entries
/// above pivots are cleared as well and pivots are normalized to one.
fn echelon<O: Ops>(o: O, a: &mut [O::E], rows: usize, cols: usize, reduced: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !o.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = o.inv(&a[r * cols + c]);
        for j in c..cols {
            a[r * cols + j] = o.mul(&a[r * cols + j], &inv);
        }
        let start = if reduced { 0 } else { r + 1 };
        for i in start..rows {
            if i == r || o.is_zero(&a[i * cols + c]) {
                continue;
            }
            let f = a[i * cols + c].clone();
            for j in c..cols {
                let v = o.sub_mul(&a[i * cols + j], &f, &a[r * cols + j]);
                a[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A dense matrix over a single exact field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let entries = match field {
            Field::Rational => Entries::Rational(vec![BigRational::zero(); rows * cols]),
            Field::Prime(p) => Entries::Prime(p, vec![0; rows * cols]),
        };
        Matrix { rows, cols, entries }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds a matrix from row-major integer entries.
    pub fn from_i64(field: Field, rows: usize, cols: usize, data: &[i64]) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix::from_fn(field, rows, cols, |r, c| field.from_i64(data[r * cols + c]))
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>], cols: usize) -> Result<Matrix, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::Shape(format!("row of length {} in a matrix with {cols} columns", bad.len())));
        }
        Ok(Matrix::from_fn(field, rows.len(), cols, |r, c| rows[r][c].clone()))
    }

    /// A single column holding `v`.
    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_fn(field, v.len(), 1, |r, _| v[r].clone())
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        match &self.entries {
            Entries::Rational(_) => Field::Rational,
            Entries::Prime(p, _) => Field::Prime(*p),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let i = r * self.cols + c;
        dispatch!(&self.entries, o, v => o.to_scalar(&v[i]))
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let i = r * self.cols + c;
        match &mut self.entries {
            Entries::Rational(v) => v[i] = RatOps.embed_scalar(&value),
            Entries::Prime(p, v) => v[i] = PrimeOps(*p).embed_scalar(&value),
        }
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(&self.entries, o, v => v.iter().all(|x| o.is_zero(x)))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }

    /// Entries of column `c`.
    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    fn with_entries(&self, rows: usize, cols: usize, entries: Entries) -> Matrix {
        Matrix { rows, cols, entries }
    }

    #[allow(clippy::clone_on_copy)] // the body is shared by u64 and BigRational entries
    pub fn transpose(&self) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        let entries = dispatch!(&self.entries, o, v => {
            let mut out = Vec::with_capacity(r * c);
            for j in 0..c {
                for i in 0..r {
                    out.push(v[i * c + j].clone());
                }
            }
            o.wrap(out)
        });
        self.with_entries(c, r, entries)
    }

    fn check_field(&self, other: &Matrix) {
        assert_eq!(self.field(), other.field(), "matrices over different fields");
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in addition");
        let entries = dispatch!(&self.entries, o, a => {
            let b = o.view(&other.entries);
            o.wrap(a.iter().zip(b).map(|(x, y)| o.add(x, y)).collect())
        });
        self.with_entries(self.rows, self.cols, entries)
    }

    pub fn neg(&self) -> Matrix {
        let entries = dispatch!(&self.entries, o, a => o.wrap(a.iter().map(|x| o.neg(x)).collect()));
        self.with_entries(self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let entries = dispatch!(&self.entries, o, a => {
            let s = o.embed_scalar(s);
            o.wrap(a.iter().map(|x| o.mul(x, &s)).collect())
        });
        self.with_entries(self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let entries = dispatch!(&self.entries, o, a => {
            let b = o.view(&other.entries);
            let mut out = vec![o.zero(); m * n];
            for i in 0..m {
                for l in 0..k {
                    let x = &a[i * k + l];
                    if o.is_zero(x) {
                        continue;
                    }
                    for j in 0..n {
                        let y = &b[l * n + j];
                        if !o.is_zero(y) {
                            out[i * n + j] = o.add(&out[i * n + j], &o.mul(x, y));
                        }
                    }
                }
            }
            o.wrap(out)
        });
        self.with_entries(m, n, entries)
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mul(&Matrix::column_vector(self.field(), v)).column(0)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field(), self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let entries = dispatch!(&self.entries, o, a => {
            let b = o.view(&other.entries);
            let cols = c1 * c2;
            let mut out = vec![o.zero(); r1 * r2 * cols];
            for i in 0..r1 {
                for j in 0..c1 {
                    let x = &a[i * c1 + j];
                    if o.is_zero(x) {
                        continue;
                    }
                    for k in 0..r2 {
                        for l in 0..c2 {
                            out[(i * r2 + k) * cols + j * c2 + l] = o.mul(x, &b[k * c2 + l]);
                        }
                    }
                }
            }
            o.wrap(out)
        });
        self.with_entries(r1 * r2, c1 * c2, entries)
    }

    /// Overwrites the block starting at (`r0`, `c0`) with `block`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        self.check_field(block);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        let cols = self.cols;
        match &mut self.entries {
            Entries::Rational(v) => {
                let b = RatOps.view(&block.entries);
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        v[(r0 + i) * cols + c0 + j] = b[i * block.cols + j].clone();
                    }
                }
            }
            Entries::Prime(p, v) => {
                let b = PrimeOps(*p).view(&block.entries);
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        v[(r0 + i) * cols + c0 + j] = b[i * block.cols + j];
                    }
                }
            }
        }
    }

    /// Adds `block` into the block starting at (`r0`, `c0`).
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        let current = self.block(r0, c0, block.rows, block.cols);
        self.set_block(r0, c0, &current.add(block));
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let sc = self.cols;
        let entries = dispatch!(&self.entries, o, v => {
            let mut out = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                out.extend_from_slice(&v[(r0 + i) * sc + c0..(r0 + i) * sc + c0 + cols]);
            }
            o.wrap(out)
        });
        self.with_entries(rows, cols, entries)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.rows, idx.len());
        for (j, &c) in idx.iter().enumerate() {
            m.set_block(0, j, &self.block(0, c, self.rows, 1));
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            m.set_block(i, 0, &self.block(r, 0, 1, self.cols));
        }
        m
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "row mismatch in hstack");
            out.set_block(0, c, m);
            c += m.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "column mismatch in vstack");
            out.set_block(r, 0, m);
            r += m.rows;
        }
        out
    }

    /// Block diagonal matrix.
    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    /// Reinterprets a column vector of length rows·cols (column-major) as a matrix.
    pub fn reshape_col_major(field: Field, v: &[Scalar], rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.len(), rows * cols, "length does not match shape");
        Matrix::from_fn(field, rows, cols, |r, c| v[c * rows + r].clone())
    }

    /// Stacks the columns into one vector.
    pub fn vec_col_major(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let pivots = match &mut m.entries {
            Entries::Rational(v) => echelon(RatOps, v, rows, cols, true),
            Entries::Prime(p, v) => echelon(PrimeOps(*p), v, rows, cols, true),
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        // Eliminating along the shorter side is cheaper; rank is transpose-invariant.
        if rows > cols {
            m = m.transpose();
            return m.rank();
        }
        match &mut m.entries {
            Entries::Rational(v) => echelon(RatOps, v, rows, cols, false).len(),
            Entries::Prime(p, v) => echelon(PrimeOps(*p), v, rows, cols, false).len(),
        }
    }

    /// Right null space as the columns of a cols × nullity matrix.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let field = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, field.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                if !v.is_zero() {
                    k.set(pc, j, -v);
                }
            }
        }
        k
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.kernel().columns()
    }

    /// Some x with self·x = b, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        self.solve_matrix(&Matrix::column_vector(self.field(), b)).map(|x| x.column(0))
    }

    /// Some X with self·X = b, if one exists.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows, "right-hand side has wrong row count");
        let field = self.field();
        let aug = Matrix::hstack(field, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            x.set_block(pc, 0, &r.block(i, self.cols, 1, b.cols));
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() || self.rank() != self.rows {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.field(), self.rows))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Linearly independent columns spanning the column space.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Standard basis vectors completing the column space to the whole space.
    pub fn complement_columns(&self) -> Matrix {
        let field = self.field();
        let aug = Matrix::hstack(field, self.rows, &[self, &Matrix::identity(field, self.rows)]);
        let (_, pivots) = aug.rref();
        let extra: Vec<usize> = pivots.into_iter().filter(|&c| c >= self.cols).map(|c| c - self.cols).collect();
        Matrix::identity(field, self.rows).select_columns(&extra)
    }

    /// Rows y with y·self = 0, as the rows of a matrix.
    pub fn left_annihilator(&self) -> Matrix {
        self.transpose().kernel().transpose()
    }

    /// Converts entries to another field: reduction modulo p or symmetric lifting to Q.
    pub fn to_field(&self, field: Field) -> Result<Matrix, LinalgError> {
        if field == self.field() {
            return Ok(self.clone());
        }
        let mut m = Matrix::zeros(field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, field.from_rational(&self.get(r, c).lift())?);
            }
        }
        Ok(m)
    }

    /// Entries as strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.to_string()).collect())
            .collect()
    }

    /// Largest absolute numerator or denominator, for reporting rational growth.
    pub fn height(&self) -> BigInt {
        let mut h = BigInt::zero();
        for row in self.to_rows() {
            for s in row {
                let q = s.lift();
                h = h.max(q.numer().abs()).max(q.denom().abs());
            }
        }
        h
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(q(), 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(q(), 4).rank(), 4);
        assert_eq!(Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 2).kernel_basis().is_empty());
        let k = Matrix::zeros(q(), 2, 2).kernel();
        assert_eq!(k.cols(), 2);
        assert_eq!(k.rank(), 2);
        let v = Matrix::from_i64(q(), 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(v.len(), 1);
        assert_eq!(&v[0][0] + &v[0][1], q().zero());
        assert!(!v[0][0].is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().from_i64(5), q().from_i64(-7)];
        assert_eq!(Matrix::identity(q(), 2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(q(), 2, 2).solve(&b), None);
        let d = Matrix::from_i64(q(), 2, 2, &[2, 0, 0, 3]);
        let x = d.solve(&[q().from_i64(4), q().from_i64(9)]).unwrap();
        assert_eq!(x, vec![q().from_i64(2), q().from_i64(3)]);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.parse("1/3").unwrap(), f.from_i64(5));
        assert!(Field::prime(1_000_001).is_err());
        assert!(is_prime(DEFAULT_PRIME));
        assert!(f.parse("1/7").is_err());
        let m = Matrix::from_i64(f, 2, 2, &[1, 2, 3, 4]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
    }

    #[test]
    fn parse_and_lift() {
        let s = q().parse("-3/6").unwrap();
        assert_eq!(s.to_string(), "-1/2");
        let f = Field::prime(11).unwrap();
        assert_eq!(f.from_i64(10).lift(), BigRational::from_integer(BigInt::from(-1)));
        assert!(q().parse("x").is_err());
        assert!(q().parse("1/0").is_err());
    }

    #[test]
    fn complement_and_annihilator() {
        let a = Matrix::from_i64(q(), 3, 1, &[1, 1, 0]);
        let c = a.complement_columns();
        assert_eq!(c.cols(), 2);
        assert_eq!(Matrix::hstack(q(), 3, &[&a, &c]).rank(), 3);
        let ann = a.left_annihilator();
        assert_eq!(ann.rows(), 2);
        assert!(ann.mul(&a).is_zero());
    }

    #[test]
    fn kron_vectorization_identity() {
        // vec(A X B) = (Bᵀ ⊗ A) vec(X)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::default_prime();
        let a = Matrix::random(f, 2, 3, &mut rng);
        let x = Matrix::random(f, 3, 4, &mut rng);
        let b = Matrix::random(f, 4, 2, &mut rng);
        let lhs = a.mul(&x).mul(&b).vec_col_major();
        let rhs = b.transpose().kron(&a).apply(&x.vec_col_major());
        assert_eq!(lhs, rhs);
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (0usize..6, 0usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| Matrix::from_i64(field, r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_matrix(Field::Rational)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in small_matrix(Field::Prime(5))) {
            prop_assert_eq!(m.cols(), m.rank() + m.kernel_basis().len());
            let k = m.kernel();
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn solve_is_exact(m in small_matrix(Field::Rational), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b: Vec<Scalar> = (0..m.rows()).map(|_| Field::Rational.random(&mut rng)).collect();
            if let Some(x) = m.solve(&b) {
                prop_assert_eq!(m.apply(&x), b);
            }
            let y: Vec<Scalar> = (0..m.cols()).map(|_| Field::Rational.random(&mut rng)).collect();
            let b2 = m.apply(&y);
            let x2 = m.solve(&b2);
            prop_assert!(x2.is_some());
            prop_assert_eq!(m.apply(&x2.unwrap()), b2);
        }
    }
}
