//! Exact arithmetic in the ring Z[√2, 1/2].
//!
//! Every value is `(a + b·√2) / 2^k` with big-integer `a`, `b` and a
//! non-negative exponent `k`, kept in canonical form: when `k > 0`, `a` and
//! `b` are not both even. The ring is closed under the 1/√2 scalings of the
//! matrix construction, and under addition and multiplication, so every
//! quantity in the pipeline (matrix entries, eigenvector components, inner
//! products) stays exactly representable. Values carry an implicit factor
//! of λ where relevant; all ring computation fixes λ = 1.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    a: BigInt,
    b: BigInt,
    k: u32,
}

impl ExactScalar {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, k: u32) -> Self {
        let mut s = ExactScalar {
            a: a.into(),
            b: b.into(),
            k,
        };
        s.reduce();
        s
    }

    pub fn zero() -> Self {
        ExactScalar::new(0, 0, 0)
    }

    pub fn one() -> Self {
        ExactScalar::new(1, 0, 0)
    }

    pub fn from_int(v: i64) -> Self {
        ExactScalar::new(v, 0, 0)
    }

    /// 1/√2 = √2 / 2.
    pub fn inv_sqrt2() -> Self {
        ExactScalar::new(0, 1, 1)
    }

    /// Canonical components `(a, b, k)` of `(a + b√2) / 2^k`.
    pub fn parts(&self) -> (&BigInt, &BigInt, u32) {
        (&self.a, &self.b, self.k)
    }

    fn reduce(&mut self) {
        if self.a.is_zero() && self.b.is_zero() {
            self.k = 0;
            return;
        }
        let two = BigInt::from(2);
        while self.k > 0 && (&self.a % &two).is_zero() && (&self.b % &two).is_zero() {
            self.a /= &two;
            self.b /= &two;
            self.k -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let k = self.k.max(rhs.k);
        let sl = BigInt::one() << (k - self.k);
        let sr = BigInt::one() << (k - rhs.k);
        ExactScalar::new(&self.a * &sl + &rhs.a * &sr, &self.b * &sl + &rhs.b * &sr, k)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        ExactScalar {
            a: -&self.a,
            b: -&self.b,
            k: self.k,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // (a1 + b1√2)(a2 + b2√2) = (a1 a2 + 2 b1 b2) + (a1 b2 + a2 b1)√2
        ExactScalar::new(
            &self.a * &rhs.a + 2 * &self.b * &rhs.b,
            &self.a * &rhs.b + &rhs.a * &self.b,
            self.k + rhs.k,
        )
    }

    /// Division by √2: `(a + b√2)/√2 = (2b + a√2)/2`.
    pub fn div_sqrt2(&self) -> Self {
        ExactScalar::new(2 * &self.b, self.a.clone(), self.k + 1)
    }

    /// Numeric value at a given λ, round-to-nearest.
    pub fn to_f64(&self, lambda: f64) -> f64 {
        let a = self.a.to_f64().expect("coefficient out of f64 range");
        let b = self.b.to_f64().expect("coefficient out of f64 range");
        lambda * (a + b * std::f64::consts::SQRT_2) / (2f64).powi(self.k as i32)
    }
}

/// Symmetric matrix over [`ExactScalar`], row-major, 0-indexed internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zero(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![ExactScalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n);
        for i in 0..n {
            *m.get_mut(i, i) = ExactScalar::one();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut ExactScalar {
        &mut self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.entries[i * self.n + j] = v.clone();
        self.entries[j * self.n + i] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = ExactMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ExactScalar::zero();
                for l in 0..n {
                    let p = self.get(i, l).mul(rhs.get(l, j));
                    if !p.is_zero() {
                        acc = acc.add(&p);
                    }
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }

    /// `self − c·I` for an integer `c`.
    pub fn sub_scalar_diag(&self, c: i64) -> Self {
        let mut m = self.clone();
        let c = ExactScalar::from_int(c);
        for i in 0..self.n {
            *m.get_mut(i, i) = self.get(i, i).sub(&c);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Exact matrix-vector product.
    pub fn matvec(&self, x: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = ExactScalar::zero();
                for j in 0..self.n {
                    let p = self.get(i, j).mul(&x[j]);
                    if !p.is_zero() {
                        acc = acc.add(&p);
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    ///
    /// Denominators are cleared first so elimination runs over Z[√2], where
    /// Bareiss quotients are exact. Pivot choice is the first nonzero entry
    /// in column order; rank is independent of that choice.
    pub fn rank(&self) -> usize {
        let kmax = self.entries.iter().map(|e| e.k).max().unwrap_or(0);
        let mut m: Vec<Vec<ZSqrt2>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let e = self.get(i, j);
                        let s = BigInt::one() << (kmax - e.k);
                        ZSqrt2 {
                            a: &e.a * &s,
                            b: &e.b * &s,
                        }
                    })
                    .collect()
            })
            .collect();
        bareiss_rank(&mut m)
    }
}

/// An element a + b√2 of Z[√2], for use inside Bareiss elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ZSqrt2 {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZSqrt2 {
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, rhs: &Self) -> Self {
        ZSqrt2 {
            a: &self.a * &rhs.a + 2 * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &rhs.a * &self.b,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        ZSqrt2 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }

    /// Exact division, valid when the quotient lies in Z[√2] (as Bareiss
    /// guarantees). `x / (a + b√2) = x (a − b√2) / (a² − 2b²)`.
    fn exact_div(&self, rhs: &Self) -> Self {
        let norm: BigInt = &rhs.a * &rhs.a - 2 * &rhs.b * &rhs.b;
        assert!(!norm.is_zero(), "division by zero in elimination");
        let conj = ZSqrt2 {
            a: rhs.a.clone(),
            b: -&rhs.b,
        };
        let num = self.mul(&conj);
        debug_assert!(
            (&num.a % &norm).is_zero() && (&num.b % &norm).is_zero(),
            "non-exact division in fraction-free elimination"
        );
        ZSqrt2 {
            a: num.a / &norm,
            b: num.b / norm,
        }
    }
}

fn bareiss_rank(m: &mut [Vec<ZSqrt2>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = ZSqrt2 {
        a: BigInt::one(),
        b: BigInt::zero(),
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let t = m[rank][col].mul(&m[i][j]).sub(&m[i][col].mul(&m[rank][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][col] = ZSqrt2 {
                a: BigInt::zero(),
                b: BigInt::zero(),
            };
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact inner product of two vectors.
pub fn inner_product(x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
    assert_eq!(x.len(), y.len());
    let mut acc = ExactScalar::zero();
    for (a, b) in x.iter().zip(y) {
        let p = a.mul(b);
        if !p.is_zero() {
            acc = acc.add(&p);
        }
    }
    acc
}
